"""
Global checks: sufficiency, the necessity chain, the cubic embedding,
Buckley's bound and the selection bound
"""

import numpy as np

from skelmax.config import (BUCKLEY_CONSTANT, BUCKLEY_REGION_SIDE, DEFAULT_REFINEMENT, DEFAULT_SEED,
                            EMBEDDING_BASE, NECESSARY_SAMPLES, RELATIVE_TOLERANCE, SELECTION_CONSTANT,
                            SELECTION_FAMILY_SIZES, STABILITY_FACTOR, SUFFICIENT_CONSTANT)
from skelmax.errors import InvalidExponentError, SkelmaxError
from skelmax.geometry import containment_4delta, enumerate_radii, face_box_bounds
from skelmax.grid import Box, GridSpec, SampledField
from skelmax.operators import CubeFamily, skeleton_maximal
from skelmax.progress import JobProgress
from skelmax.selection import random_lattice_family, select_faces, selection_exponent
from skelmax.utils import as_delta, as_exponent
from skelmax.verify.duality import sufficiency_exponent
from skelmax.verify.family import FunctionFamily
from skelmax.verify.norms import empirical_opnorm
from skelmax.verify.reports import CheckReport, worst_report
from skelmax.weights import (WeightSpec, a1_skeleton, ap_cubic, ap_skeleton_global, conjugate_is_integer,
                             cube_constant, default_z_set, dual_power, nonlinear_terms, weight_field_for)

WIDE_SCALE = 9


def _z_for(weight, z, n=2):
    return tuple(z) if z is not None else default_z_set(weight, None, n)[0]


def _describe(weight):
    if isinstance(weight, SampledField):
        return 'field'
    return WeightSpec.parse(weight).to_descriptor()


def check_sufficient(weight, p, delta, family=None, C=SUFFICIENT_CONSTANT, z=None, refinement=DEFAULT_REFINEMENT,
                     seed=DEFAULT_SEED, threads=1, k=1, tol=RELATIVE_TOLERANCE, n=2):
    """
    Empirical ||M_delta||_{L^p(w)} against C delta**e [w]_{A^S_p}**(1/p), the
    upper bracket of the skeleton constant ([w]_{A^S_1} for p = 1)
    """
    delta = as_delta(delta)
    p = as_exponent(p)
    if not conjugate_is_integer(p):
        raise InvalidExponentError("Sufficiency is stated for p = 1 or an integer p' only", p=p)

    z = _z_for(weight, z, n)
    w = weight_field_for(weight, z, delta, refinement)
    family = family or FunctionFamily(w.spec, z, delta, w=w, p=p, seed=seed, k=k)
    estimate = empirical_opnorm('skeleton', w, p, delta, family, z, k=k, threads=threads)

    if p == 1:
        constant = a1_skeleton(w, delta, z_set=[z], k=k).value
    else:
        constant = ap_skeleton_global(w, p, delta, z_set=[z], k=k, lower=False).value

    scale = float(delta) ** sufficiency_exponent(len(z), k, p) * constant ** (1.0 / p)
    params = {'p': p, 'delta': str(delta), 'z': list(z), 'C': C, 'weight': _describe(weight), 'seed': seed,
              'family': family.version}
    extras = {'constant': constant, 'fitted_constant': estimate.value / scale, 'member': estimate.member,
              'bound': 'lower'}
    return CheckReport('sufficient', params, estimate.value, C * scale, tol, extras=extras)


def _node_sample(rng, z, h, nodes, radii, count):
    index = rng.integers(0, nodes, size=(count, len(z)))
    points = np.asarray(z, dtype=float) + index * h
    return points, rng.choice(np.asarray(radii), size=count)


def necessary_instance(w, p, delta, x_tilde, r, k=1, tol=RELATIVE_TOLERANCE):
    """
    One step of the necessity chain at (x_tilde, r) with f = w**(-p'/p) on
    S_delta(x_tilde, r):
        w(Q_delta(x_tilde)) m**p <= kappa**p int_{Q_delta(x_tilde)} (M_{4 delta} f)**p w
    with m the smallest face average and kappa the largest snapped face
    measure ratio between the 4delta and delta skeletons
    """
    spec = w.spec
    n = len(x_tilde)
    width = float(delta)
    half = width / 2.0
    h = spec.h

    cells = int(round(width / h))
    cube_spec = GridSpec([c - half for c in x_tilde], h, [cells] * n)
    nodes = cube_spec.cell_lower_corners()
    contained = all(containment_4delta(x_tilde, node, r, delta, k) for node in nodes)

    g = dual_power(w, p)
    lower, upper = face_box_bounds(x_tilde, r, width, n, k)
    mask = np.zeros(spec.dims, dtype=bool)
    for lo, hi in zip(lower, upper):
        mask[spec.slices(Box(lo, hi))] = True
    f = SampledField(spec, np.where(mask, g.values, 0.0))

    inner = g.table().box_measures(lower, upper)
    wide_lower, wide_upper = face_box_bounds(nodes, r, 4.0 * width, n, k)
    kappa = float((g.table().box_measures(wide_lower, wide_upper) / inner).max())

    values, _ = nonlinear_terms(w, p, delta, [x_tilde], [r], k)
    nonlinear = float(values[0])
    support = float(np.sum(g.values[mask]) * spec.cell_volume)
    smallest = float(g.table().box_averages(lower, upper).min())
    cube_mass = float(w.table().box_sum(Box.cube(x_tilde, half)))

    maximal = skeleton_maximal(f, delta, cube_spec, k=k, radii=enumerate_radii(delta), width=4.0 * width)
    lhs = cube_mass * smallest ** p / support
    rhs = kappa ** p * maximal.norm(w, p) ** p / support
    extras = {
        'x': [float(c) for c in x_tilde],
        'r': float(r),
        'contained': contained,
        'kappa': kappa,
        'C_emp': (maximal.norm(w, p) ** p / support) ** (1.0 / p),
        'nonlinear': nonlinear,
        'nonlinear_agrees': abs(nonlinear - lhs) <= 1e-9 * max(abs(lhs), 1e-300),
    }
    passed = contained and lhs <= rhs + tol * abs(rhs)
    return CheckReport('necessary', {}, lhs, rhs, tol, extras=extras, passed=passed)


def check_necessary_chain(weight, p, delta, samples=NECESSARY_SAMPLES, seed=DEFAULT_SEED, z=None,
                          refinement=DEFAULT_REFINEMENT, k=1, tol=RELATIVE_TOLERANCE, n=2):
    """Containment and the necessity inequality at sampled (x_tilde, r)"""
    delta = as_delta(delta)
    p = as_exponent(p)
    if p <= 1:
        raise InvalidExponentError('The necessity chain needs p > 1', p=p)

    z = _z_for(weight, z, n)
    w = weight_field_for(weight, z, delta, refinement, scale=WIDE_SCALE)
    rng = np.random.default_rng(seed)
    nodes = delta.denominator * 2 ** int(refinement)
    points, radii = _node_sample(rng, z, w.spec.h, nodes, enumerate_radii(delta), samples)

    progress = JobProgress('necessary', samples)
    reports = []
    for x_tilde, r in zip(points, radii):
        reports.append(necessary_instance(w, p, delta, tuple(x_tilde), r, k, tol))
        progress()

    params = {'p': p, 'delta': str(delta), 'z': list(z), 'samples': samples, 'seed': seed,
              'weight': _describe(weight)}
    extras = {
        'contained': all(report.extras['contained'] for report in reports),
        'nonlinear_agrees': all(report.extras['nonlinear_agrees'] for report in reports),
        'C_emp': max(report.extras['C_emp'] for report in reports) if reports else None,
    }
    return worst_report('necessary', params, reports, tol, extras)


def check_ap_embedding(weight, p, delta, samples=NECESSARY_SAMPLES, seed=DEFAULT_SEED, z=None,
                       refinement=DEFAULT_REFINEMENT, k=1, tol=RELATIVE_TOLERANCE, n=2):
    """
    Nonlinear skeleton quantity at sampled (x_tilde, r) against
    4**(2p) / delta**p times the cubic constant of the cube C(x_tilde, 2r)
    """
    delta = as_delta(delta)
    p = as_exponent(p)
    if p <= 1:
        raise InvalidExponentError('The embedding check needs p > 1', p=p)

    z = _z_for(weight, z, n)
    w = weight_field_for(weight, z, delta, refinement, scale=WIDE_SCALE)
    rng = np.random.default_rng(seed)
    nodes = delta.denominator * 2 ** int(refinement)
    points, radii = _node_sample(rng, z, w.spec.h, nodes, enumerate_radii(delta), samples)

    factor = EMBEDDING_BASE ** (2 * p) / float(delta) ** p
    values, _ = nonlinear_terms(w, p, delta, points, radii, k)
    reports = []
    for x_tilde, r, value in zip(points, radii, values):
        cubic = cube_constant(w, p, Box.cube(x_tilde, 2.0 * r))
        reports.append(CheckReport('embedding', {}, value, factor * cubic, tol,
                                   extras={'x': [float(c) for c in x_tilde], 'r': float(r), 'cubic': cubic}))

    params = {'p': p, 'delta': str(delta), 'z': list(z), 'samples': samples, 'seed': seed,
              'weight': _describe(weight)}
    extras = {'factor': factor, 'nonlinear': float(np.max(values)) if len(values) else None}
    return worst_report('embedding', params, reports, tol, extras)


def buckley_family(spec, region_side=BUCKLEY_REGION_SIDE):
    """Lattice cubes of side at most region_side"""
    limit = min(int(round(region_side / spec.h)), min(spec.dims))
    return CubeFamily(spec, sides=range(1, limit + 1))


def buckley_fit(weight, p, delta, family=None, z=None, refinement=DEFAULT_REFINEMENT, seed=DEFAULT_SEED,
                threads=1, n=2):
    """Empirical Hardy-Littlewood norm over [w]_{A_p}**(1/(p-1)), with both factors"""
    delta = as_delta(delta)
    z = _z_for(weight, z, n)
    w = weight_field_for(weight, z, delta, refinement)
    cubes = buckley_family(w.spec)
    family = family or FunctionFamily(w.spec, z, delta, w=w, p=p, seed=seed)
    estimate = empirical_opnorm('hl', w, p, delta, family, z, threads=threads, cube_family=cubes)
    constant = ap_cubic(w, p, cubes).value
    return estimate.value / constant ** (1.0 / (p - 1.0)), estimate, constant


def check_buckley(weight, p, delta, family=None, C=BUCKLEY_CONSTANT, z=None, refinement=DEFAULT_REFINEMENT,
                  seed=DEFAULT_SEED, threads=1, tol=RELATIVE_TOLERANCE, n=2):
    """||HL||_{L^p(w)} / [w]_{A_p}**(1/(p-1)) <= C"""
    p = as_exponent(p)
    if p <= 1:
        raise InvalidExponentError("Buckley's bound needs p > 1", p=p)

    fitted, estimate, constant = buckley_fit(weight, p, delta, family, z, refinement, seed, threads, n)
    params = {'p': p, 'delta': str(as_delta(delta)), 'C': C, 'weight': _describe(weight), 'seed': seed}
    extras = {'norm': estimate.value, 'member': estimate.member, 'constant': constant, 'fitted_constant': fitted,
              'bound': 'lower'}
    return CheckReport('buckley', params, fitted, C, tol, extras=extras)


def buckley_stability(weights, p, delta, z=None, refinement=DEFAULT_REFINEMENT, seed=DEFAULT_SEED, threads=1,
                      factor=STABILITY_FACTOR, tol=RELATIVE_TOLERANCE, n=2):
    """max C_fit / min C_fit over the weights, at most `factor`"""
    p = as_exponent(p)
    if p <= 1:
        raise InvalidExponentError("Buckley's bound needs p > 1", p=p)
    weights = list(weights)
    if not weights:
        raise SkelmaxError('Buckley stability needs at least one weight')

    fits = []
    for weight in weights:
        fitted, _, _ = buckley_fit(weight, p, delta, None, z, refinement, seed, threads, n)
        fits.append(fitted)

    spread = max(fits) / min(fits)
    params = {'p': p, 'delta': str(as_delta(delta)), 'weights': [_describe(weight) for weight in weights],
              'seed': seed}
    return CheckReport('buckley-family', params, spread, factor, tol, extras={'fitted_constants': fits})


def check_selection(sizes=SELECTION_FAMILY_SIZES, families=NECESSARY_SAMPLES, seed=DEFAULT_SEED, n=2, k=1,
                    C=SELECTION_CONSTANT, tol=RELATIVE_TOLERANCE):
    """
    Greedy plane loads on seeded random lattice families against C u**e,
    and greedy mean max load against random selection
    """
    exponent = selection_exponent(n, k)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes) * families)
    progress = JobProgress('selection', len(seeds))

    worst = 0.0
    greedy_mean = []
    random_mean = []
    position = 0
    for u in sizes:
        greedy_loads = []
        random_loads = []
        for _ in range(families):
            family_seed = seeds[position]
            position += 1
            skeletons, delta = random_lattice_family(None, family_seed, z=(0,) * n, n=n, k=k, count=u)
            greedy = select_faces(skeletons, delta, 'greedy')
            random = select_faces(skeletons, delta, 'random', seed=family_seed.spawn(1)[0])
            greedy_loads.append(greedy.max_load)
            random_loads.append(random.max_load)
            worst = max(worst, greedy.max_load / float(u) ** exponent)
            progress()
        greedy_mean.append(float(np.mean(greedy_loads)))
        random_mean.append(float(np.mean(random_loads)))

    params = {'sizes': list(sizes), 'families': families, 'seed': seed, 'n': n, 'k': k, 'C': C}
    extras = {'exponent': exponent, 'greedy_mean': greedy_mean, 'random_mean': random_mean}
    dominated = all(g <= r for g, r in zip(greedy_mean, random_mean))
    passed = worst <= C * (1 + tol) and dominated
    return CheckReport('selection', params, worst, C, tol, extras=extras, passed=passed)
