"""
Empirical operator norms: the largest ratio ||op f|| / ||f|| over a family.
These are lower bounds for the true norms.
"""

from collections import namedtuple

from skelmax.errors import SkelmaxError
from skelmax.geometry import CellLattice
from skelmax.grid import lp_norm
from skelmax.operators import CubeFamily, hl_maximal, skeleton_maximal
from skelmax.progress import JobProgress
from skelmax.utils import as_delta, as_exponent
from skelmax.workers import ordered_map

OPERATORS = ['skeleton', 'hl']


class NormEstimate(namedtuple('NormEstimate', ['value', 'member', 'ratios', 'localized'])):
    """
    Largest ratio, the member attaining it, every member's ratio and the
    best (member, ratio) among members that are not periodic
    """
    __slots__ = ()

    bound = 'lower'


def member_ratio(op, member, w, p, delta, z, k=1, cube_family=None):
    """||op f||_{L^p(w)} / ||f||_{L^p(w)} for one family member, None when f vanishes"""
    f = member.field
    if op == 'skeleton':
        lattice = CellLattice(z, delta)
        numerator = skeleton_maximal(f, delta, lattice, k=k).norm(w, p)
        region = lattice.square if member.periodic else None
    else:
        numerator = hl_maximal(f, cube_family=cube_family).norm(w, p)
        region = None

    denominator = lp_norm(f, w, p, region)
    if denominator == 0:
        return None
    return numerator / denominator


def empirical_opnorm(op, w, p, delta, family, z, k=1, threads=1, cube_family=None, progress=None):
    """
    op 'skeleton': M_delta f on the delta-cells of Q_z against ||f|| on the
    whole grid (over Q_z for periodic members).
    op 'hl': the Hardy-Littlewood operator of a cube family on the whole grid.
    """
    if op not in OPERATORS:
        raise SkelmaxError('Unknown operator', op=op, operators=','.join(OPERATORS))
    p = as_exponent(p)
    delta = as_delta(delta)
    if op == 'hl' and cube_family is None:
        cube_family = CubeFamily(w.spec)

    progress = progress or JobProgress('{} norm'.format(op), len(family))

    def job(member):
        ratio = member_ratio(op, member, w, p, delta, z, k, cube_family)
        progress()
        return member.name, ratio, member.periodic

    ratios = []
    batch = []
    for member in family:
        batch.append(member)
        if len(batch) >= max(threads, 1):
            ratios.extend(ordered_map(job, batch, threads))
            batch = []
    ratios.extend(ordered_map(job, batch, threads))

    ratios = [item for item in ratios if item[1] is not None]
    if not ratios:
        raise SkelmaxError('Every family member vanishes', op=op)

    best_name, best = _largest(ratios)
    localized = _largest([item for item in ratios if not item[2]])
    return NormEstimate(float(best), best_name, dict((name, ratio) for name, ratio, _ in ratios), localized)


def _largest(ratios):
    """First (name, ratio) with the largest ratio, None for no ratios"""
    if not ratios:
        return None
    best_name, best = ratios[0][:2]
    for name, ratio, _ in ratios[1:]:
        if ratio > best:
            best_name, best = name, ratio
    return best_name, float(best)
