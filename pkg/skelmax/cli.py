"""
skelmax

Usage:
    skelmax field [--weight=<spec>] [--input=<csv>] [--operator=<op>] [options]
    skelmax apconst --class=<class> [--weight=<spec>] [options]
    skelmax select [--strategy=<s>] [--count=<int>] [--constant=<C>] [options]
    skelmax verify --check=<check> [--weight=<spec>] [--constant=<C>] [options]
    skelmax scaling [--deltas=<list>] [--weight=<spec>] [options]
    skelmax (-h | --help)
    skelmax --version

Options:
    -h --help                 Show this screen.
    --version                 Show version.
    --class=<class>           Constant class: cubic, skeleton, skeleton-local, a1, nonlinear
    --check=<check>           Check: local-domination, duality, sufficient-local, sufficient,
                              necessary, embedding, buckley, buckley-family, monotone,
                              a1-limit, selection
    --weight=<spec>           Weight: kind name, kind:key=value,..., JSON descriptor or file
    --input=<csv>             Grid CSV of the field to sample
    --operator=<op>           Operator applied to the field: none, skeleton, hl
    --strategy=<s>            Face selection strategy: greedy, random
    --p=<p>                   Exponent p, e.g. 2 or 3/2
    --p-list=<list>           Ascending exponents for the monotone check, e.g. 4/3,3/2,2
    --delta=<1/m>             Scale delta, the reciprocal of a positive integer
    --deltas=<list>           Scales for the scaling fit, e.g. 1/4,1/8,1/16
    --z=<point>               Integer lower corner of the unit cube, e.g. 0,0
    --n=<n>                   Dimension
    --k=<k>                   Skeleton dimension
    --constant=<C>            Constant of the bound being checked
    --count=<int>             Skeletons in the selection family
    --samples=<int>           Random instances per check
    --seed=<int>              Seed of every random choice
    --threads=<int>           Worker threads, SKELMAX_THREADS when not given
    --refinement=<int>        Quadrature cells per delta, as a power of two
    --config=<file>           JSON or YAML config file, .j2 templates are rendered first
    --out=<path>              Report file, stdout when not given
    --format=<f>              Report format: csv, json
    --timing                  Fill the seconds column of the ledger
"""

import sys

from docopt import DocoptExit, docopt

from skelmax import __version__ as VERSION
from skelmax.config import EXIT_INVALID
from skelmax.errors import SkelmaxError
from skelmax.oprint import Oprint
from skelmax.run_config import RunConfig


def main(argv=None):
    """Call Commands"""
    try:
        args = docopt(__doc__, argv=argv, version=VERSION)
    except DocoptExit as e:
        sys.stderr.write('{}\n'.format(e))
        return EXIT_INVALID

    try:
        run_config = RunConfig(args)
    except SkelmaxError as e:
        Oprint.err(e, 'config', exit=False)
        return EXIT_INVALID

    # Call the right client to handle
    if args.get('field'):
        from skelmax.cmds.field.field_client import FieldClient
        client_factory = FieldClient(run_config)
    elif args.get('apconst'):
        from skelmax.cmds.apconst.apconst_client import ApconstClient
        client_factory = ApconstClient(run_config)
    elif args.get('select'):
        from skelmax.cmds.select.select_client import SelectClient
        client_factory = SelectClient(run_config)
    elif args.get('verify'):
        from skelmax.cmds.verify.verify_client import VerifyClient
        client_factory = VerifyClient(run_config)
    else:
        from skelmax.cmds.scaling.scaling_client import ScalingClient
        client_factory = ScalingClient(run_config)

    return client_factory.execute()
