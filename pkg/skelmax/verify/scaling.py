"""
Delta-scaling of empirical skeleton maximal norms
"""

import numpy as np

from skelmax.config import (DEFAULT_DELTAS, DEFAULT_SEED, SCALING_MAX_RESIDUAL, SCALING_MIN_POINTS,
                            SCALING_REFINEMENT, SCALING_SLACK, STABILITY_FACTOR)
from skelmax.errors import InsufficientDataError
from skelmax.grid import SampledField
from skelmax.utils import as_delta, as_exponent
from skelmax.verify.duality import sufficiency_exponent, unweighted_exponent
from skelmax.verify.family import FunctionFamily
from skelmax.verify.norms import empirical_opnorm
from skelmax.verify.reports import LocalizedProfile, ScalingReport
from skelmax.weights import (WeightSpec, a1_skeleton, ap_skeleton_global, conjugate_is_integer, default_z_set,
                             weight_field_for)


def loglog_fit(deltas, norms):
    """Least squares slope, intercept and RMS residual of log(norm) against log(1/delta)"""
    x = np.log([1.0 / float(delta) for delta in deltas])
    y = np.log(np.asarray(norms, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return float(slope), float(intercept), residual


def is_unweighted(weight):
    if isinstance(weight, SampledField):
        return bool(np.all(weight.values == weight.values.flat[0]))
    return WeightSpec.parse(weight).kind == 'constant'


def scaling_experiment(p, deltas=None, weight='constant', z=None, seed=DEFAULT_SEED, refinement=SCALING_REFINEMENT,
                       threads=1, k=1, family_options=None, slack=SCALING_SLACK, max_residual=SCALING_MAX_RESIDUAL,
                       factor=STABILITY_FACTOR, n=2):
    """
    Empirical ||M_delta||_{L^p(w)} for each delta with a log-log fit. The
    slope must stay below (n - k)/(2np) + slack for the unweighted operator;
    for p = 1 or an integer p' the sufficiency constant fitted per delta must
    vary by at most `factor`. The best member that is not periodic gets its
    own fit, since the constant member caps the estimate at desk scale.
    """
    p = as_exponent(p)
    deltas = [as_delta(delta) for delta in (deltas or DEFAULT_DELTAS)]
    if len(deltas) < SCALING_MIN_POINTS:
        raise InsufficientDataError('A scaling fit needs at least {} deltas'.format(SCALING_MIN_POINTS),
                                    deltas=len(deltas))

    z = tuple(z) if z is not None else default_z_set(weight, None, n)[0]
    n = len(z)
    options = family_options or {}
    admissible = conjugate_is_integer(p)

    norms = []
    members = []
    localized = []
    constants = []
    for delta in deltas:
        w = weight_field_for(weight, z, delta, refinement)
        family = FunctionFamily(w.spec, z, delta, w=w, p=p, seed=seed, k=k, **options)
        estimate = empirical_opnorm('skeleton', w, p, delta, family, z, k=k, threads=threads)
        norms.append(estimate.value)
        members.append(estimate.member)
        localized.append(estimate.localized)

        if admissible:
            if p == 1:
                constant = a1_skeleton(w, delta, z_set=[z], k=k).value
            else:
                constant = ap_skeleton_global(w, p, delta, z_set=[z], k=k, lower=False).value
            scale = float(delta) ** sufficiency_exponent(n, k, p) * constant ** (1.0 / p)
            constants.append(estimate.value / scale)

    slope, intercept, residual = loglog_fit(deltas, norms)
    exponent = unweighted_exponent(n, k, p)
    profile = None
    if all(item is not None for item in localized):
        profile = LocalizedProfile([name for name, _ in localized], [value for _, value in localized],
                                   loglog_fit(deltas, [value for _, value in localized])[0])

    passed = residual <= max_residual
    if is_unweighted(weight):
        passed = passed and slope <= exponent + slack
    if constants:
        passed = passed and max(constants) <= factor * min(constants)

    params = {'weight': 'field' if isinstance(weight, SampledField) else WeightSpec.parse(weight).to_descriptor(),
              'z': list(z), 'seed': seed, 'refinement': refinement, 'family': FunctionFamily.version}
    return ScalingReport(p, deltas, norms, slope, intercept, residual, exponent, passed,
                         constants or None, params, members=members, profile=profile)
