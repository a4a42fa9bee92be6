"""
Duality and local sufficiency checks for the linearized skeleton operator
"""

import numpy as np

from skelmax.config import RELATIVE_TOLERANCE, SUFFICIENT_CONSTANT
from skelmax.errors import InvalidExponentError, SelectionError, SkelmaxError
from skelmax.grid import SampledField, lp_norm
from skelmax.operators import check_support, linearized_maximal, seven_cube
from skelmax.selection import orientation_classes
from skelmax.utils import as_delta, as_exponent, conjugate
from skelmax.verify.reports import CheckReport, worst_report
from skelmax.weights import SkeletonTerms, conjugate_is_integer, dual_power


def duality_coefficients(a, p):
    """b_i = a_i**(p-1) / ||a||_p**(p-1): sum b**p' = 1 and sum a b = ||a||_p"""
    a = np.asarray(a, dtype=float)
    if (a < 0).any():
        raise SkelmaxError('Duality coefficients need a nonnegative vector')
    if not (a > 0).any():
        raise SkelmaxError('Duality coefficients need a nonzero vector')

    p = float(p)
    if p <= 1:
        raise InvalidExponentError('Duality coefficients need p > 1', p=p)

    top = a.max()
    scaled = a / top
    norm = np.sum(scaled ** p) ** (1.0 / p)
    return (scaled / norm) ** (p - 1.0)


def indicator_sum_norm(t, faces, w, p, region=None):
    """||sum t_i 1_{l_i}||_{L^p'(region, w**(1 - p'))}"""
    t = np.asarray(t, dtype=float)
    if len(t) != len(faces):
        raise SkelmaxError('One coefficient per face is needed', coefficients=len(t), faces=len(faces))
    if (t < 0).any():
        raise SkelmaxError('Indicator coefficients must be nonnegative')

    values = np.zeros(w.spec.dims)
    for coefficient, face in zip(t, faces):
        values[w.spec.slices(face.box)] += coefficient

    return lp_norm(SampledField(w.spec, values), dual_power(w, p), conjugate(p), region)


def ordered_classes(sel):
    """Orientation classes with the vertical class first"""
    classes = list(orientation_classes(sel).items())
    if not classes:
        return []
    n = sel.skeletons[0].n
    vertical = [item for item in classes if item[0] == (n - 1,)]
    others = [item for item in classes if item[0] != (n - 1,)]
    return vertical + others


def check_duality_prop(f, w, p, rho, sel, z, delta=None, tol=RELATIVE_TOLERANCE):
    """
    Per orientation class E: ||M~ f||_{L^p(cells of E, w)} <= K ||f||_{L^p(7Q_z, w)}
    with K the indicator-sum norm of the Hoelder-extremal coefficients
    """
    lattice = rho.lattice
    delta = lattice.delta if delta is None else as_delta(delta)
    p = as_exponent(p)
    if p <= 1:
        raise InvalidExponentError('Duality needs p > 1', p=p)
    if len(sel) != lattice.u:
        raise SelectionError('Face selection does not match the radius assignment', choices=len(sel), u=lattice.u)

    region = seven_cube(z)
    check_support(f, region)
    f = f.abs()
    params = {'p': p, 'delta': str(delta), 'z': list(z)}
    f_norm = lp_norm(f, w, p, region)
    if f_norm == 0:
        return CheckReport('duality', params, 0.0, 0.0, tol, extras={'vacuous': True}, passed=True)

    linear = linearized_maximal(f, rho, sel, delta)
    masses = w.table().box_sums(lattice.lower_corners(), lattice.upper_corners())
    faces = sel.faces
    measures = np.array([w.spec.snapped_measure(face.box) for face in faces])

    reports = []
    for orientation, members in ordered_classes(sel):
        members = np.asarray(members, dtype=np.int64)
        if members.size == 0:
            continue
        a = linear.values[members] * masses[members] ** (1.0 / p)
        lhs = float(np.sum(a ** p)) ** (1.0 / p)
        if lhs == 0:
            continue
        b = duality_coefficients(a, p)
        t = b / measures[members] * masses[members] ** (1.0 / p)
        k_norm = indicator_sum_norm(t, [faces[i] for i in members], w, p, region)
        reports.append(CheckReport('duality', params, lhs, k_norm * f_norm, tol,
                                   extras={'orientation': list(orientation), 'cells': int(members.size),
                                           'K': k_norm}))

    return worst_report('duality', params, reports, tol)


def sufficiency_exponent(n, k, p):
    """(1/p)((n - k)(2n - 1)/(2n) - n); -5/(4p) for n=2, k=1"""
    return ((n - k) * (2.0 * n - 1.0) / (2.0 * n) - n) / float(p)


def unweighted_exponent(n, k, p):
    """(n - k)/(2np)"""
    return (n - k) / (2.0 * n * float(p))


def check_sufficient_local(f, w, p, rho, sel, z, delta=None, C=SUFFICIENT_CONSTANT, tol=RELATIVE_TOLERANCE, k=1):
    """
    ||M~ f||_{L^p(Q_z, w)} <= C delta**e [w]_{A^S_{p,rho,z}}**(1/p) ||f||_{L^p(7Q_z, w)}
    for p = 1 or an integer p'
    """
    lattice = rho.lattice
    delta = lattice.delta if delta is None else as_delta(delta)
    p = as_exponent(p)
    if not conjugate_is_integer(p):
        raise InvalidExponentError("Local sufficiency needs p = 1 or an integer p'", p=p)

    region = seven_cube(z)
    check_support(f, region)
    f = f.abs()
    choices = sel.choices if hasattr(sel, 'choices') else list(sel)

    lhs = linearized_maximal(f, rho, choices, delta, k=k).norm(w, p)
    constant = float(SkeletonTerms(w, lattice, k).local_values(p, rho, choices).max())
    f_norm = lp_norm(f, w, p, region)
    scale = float(delta) ** sufficiency_exponent(lattice.n, k, p) * constant ** (1.0 / p) * f_norm
    params = {'p': p, 'delta': str(delta), 'z': list(z), 'C': C}
    extras = {'constant': constant, 'fitted_constant': lhs / scale if scale > 0 else None, 'vacuous': f_norm == 0}
    if hasattr(sel, 'faces'):
        extras['max_overlap'] = int(overlap_counts(sel.faces).max()) if len(sel) else 0
        extras['overlap_bound'] = 3 * sel.max_load
    return CheckReport('sufficient-local', params, lhs, C * scale, tol, extras=extras)


def overlap_counts(faces):
    """Per face, the faces of its orientation class whose boxes meet it, itself included"""
    if not faces:
        return np.zeros(0, dtype=np.int64)

    lower = np.array([face.box.lower for face in faces])
    upper = np.array([face.box.upper for face in faces])
    orientation = [tuple(face.orientation) for face in faces]
    labels = {key: index for index, key in enumerate(sorted(set(orientation)))}
    classes = np.array([labels[key] for key in orientation])

    counts = np.zeros(len(faces), dtype=np.int64)
    for start in range(0, len(faces), 512):
        stop = min(start + 512, len(faces))
        meets = (np.maximum(lower[start:stop, None, :], lower[None, :, :]) <
                 np.minimum(upper[start:stop, None, :], upper[None, :, :])).all(axis=-1)
        same = classes[start:stop, None] == classes[None, :]
        counts[start:stop] = (meets & same).sum(axis=1)
    return counts
