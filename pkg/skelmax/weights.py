"""
Weight generators and the A_p-type constants of cubic and skeleton classes

All skeleton-class constants share one term per (cell i, radius r, face j):

    w(Q_z(i)) / |face| * F(face)

where F is the power mean (avg over the face of w**(1 - p'))**(p - 1) for
p > 1 and the maximum of 1/w over the face cells for p = 1. Every measure is
a snapped-cell measure.
"""

import json
import math
import os

import numpy as np

from skelmax.config import (DEFAULT_REFINEMENT, DEFAULT_SEED, FILE_LOADER_CONFIG_ALLOWED_EXT, LIMIT_GAP, RANDOM_RHO_COUNT,
                            RELATIVE_TOLERANCE, UNDERFLOW_FLOOR, WITNESS_TOLERANCE)
from skelmax.errors import ConfigError, DegenerateBoxError, DegenerateWeightError, FieldError, InvalidExponentError
from skelmax.geometry import CellLattice, Skeleton, enumerate_radii, face_box_bounds
from skelmax.geometry import union_snapped_measures, union_sums
from skelmax.grid import Box, PrefixTable, RangeMax, SampledField, build_field, local_grid, read_grid_csv
from skelmax.operators import RhoAssignment, check_margin, greedy_rho
from skelmax.selection import select_faces
from skelmax.utils import as_delta, conjugate, parse_fraction
from skelmax.verify.reports import ScanTable

WEIGHT_KINDS = ['constant', 'power', 'twovalue', 'checkerboard', 'skeleton_bump', 'grid']

DEFAULT_PARAMS = {
    'constant': {'value': 1.0},
    'power': {'alpha': 1.0, 'center': None},
    'twovalue': {'K': 4.0, 'axis': 0, 'split': 0.0},
    'checkerboard': {'K': 4.0, 'period': 0.25},
    'skeleton_bump': {'center': (0.5, 0.5), 'r': 1.0, 'height': 1.0, 'delta': '1/8'},
    'grid': {'file': None},
}

INTEGER_PARAMS = ['axis']
POINT_PARAMS = ['center']
TEXT_PARAMS = ['file', 'delta']


class WeightSpec(object):
    """A weight generator: kind plus named parameters"""

    def __init__(self, kind, params=None):
        if kind not in WEIGHT_KINDS:
            raise ConfigError('Unknown weight kind', kind=kind, kinds=','.join(WEIGHT_KINDS))

        merged = dict(DEFAULT_PARAMS[kind])
        for key, value in (params or {}).items():
            if key not in merged:
                raise ConfigError('Unknown weight parameter', kind=kind, param=key)
            merged[key] = WeightSpec._coerce(key, value)

        self._kind = kind
        self._params = merged
        self.validate()

    @staticmethod
    def _coerce(key, value):
        if value is None:
            return None
        if key in POINT_PARAMS:
            if isinstance(value, str):
                value = [item for item in value.replace(';', ' ').split() if item]
            return tuple(float(parse_fraction(item)) for item in value)
        if key in INTEGER_PARAMS:
            return int(value)
        if key in TEXT_PARAMS:
            return str(value)
        return float(parse_fraction(value))

    @property
    def kind(self):
        return self._kind

    @property
    def params(self):
        return dict(self._params)

    def get(self, key):
        return self._params.get(key)

    def validate(self):
        params = self._params
        if self._kind == 'constant' and not params['value'] > 0:
            raise DegenerateWeightError('Constant weight must be positive', value=params['value'])
        if self._kind == 'power' and not params['alpha'] > -2:
            raise DegenerateWeightError('Power weight needs alpha > -2', alpha=params['alpha'])
        if self._kind in ('twovalue', 'checkerboard') and not params['K'] > 0:
            raise DegenerateWeightError('Weight contrast K must be positive', K=params['K'])
        if self._kind == 'checkerboard' and not params['period'] > 0:
            raise DegenerateWeightError('Checkerboard period must be positive', period=params['period'])
        if self._kind == 'skeleton_bump':
            if not params['height'] > -1:
                raise DegenerateWeightError('Bump height must exceed -1', height=params['height'])
            Skeleton(params['center'], params['r'])
            as_delta(params['delta'])
        if self._kind == 'grid' and not params['file']:
            raise ConfigError('Grid weight needs a file')

    @classmethod
    def parse(cls, value):
        """
        Accepts a WeightSpec, a descriptor dict, inline JSON, a descriptor or
        grid file path, a kind name or `kind:key=value,...`
        """
        if isinstance(value, WeightSpec):
            return value
        if isinstance(value, dict):
            return cls.from_descriptor(value)
        if value is None:
            return cls('constant')

        text = str(value).strip()
        if text.startswith('{'):
            try:
                return cls.from_descriptor(json.loads(text))
            except ValueError as e:
                raise ConfigError('Weight descriptor is not valid JSON', reason=str(e))

        if os.path.isfile(text):
            if text.endswith('.csv'):
                return cls('grid', {'file': text})
            from skelmax.file_loader import FileLoader
            _, descriptor = FileLoader(text, allowed_ext=FILE_LOADER_CONFIG_ALLOWED_EXT).process()
            return cls.from_descriptor(descriptor)

        kind, _, rest = text.partition(':')
        params = {}
        for item in [entry for entry in rest.split(',') if entry.strip()]:
            if '=' not in item:
                raise ConfigError('Weight parameters must read key=value', entry=item)
            key, raw = item.split('=', 1)
            params[key.strip()] = raw.strip()

        try:
            return cls(kind.strip(), params)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError('Weight parameter is not a number', weight=text, reason=str(e))

    @classmethod
    def from_descriptor(cls, descriptor):
        if not isinstance(descriptor, dict) or 'kind' not in descriptor:
            raise ConfigError('Weight descriptor needs a kind')
        return cls(descriptor['kind'], descriptor.get('params') or {})

    def to_descriptor(self):
        params = {}
        for key, value in sorted(self._params.items()):
            params[key] = list(value) if isinstance(value, tuple) else value
        return {'kind': self._kind, 'params': params}

    def __repr__(self):
        return 'WeightSpec({!r}, {!r})'.format(self._kind, self.to_descriptor()['params'])

    def __eq__(self, other):
        return isinstance(other, WeightSpec) and self.to_descriptor() == other.to_descriptor()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(json.dumps(self.to_descriptor(), sort_keys=True))

    def sampler(self, n=2):
        """Vectorized sampler(x0, x1, ...)"""
        params = self._params
        kind = self._kind

        if kind == 'constant':
            value = params['value']
            return lambda *x: np.full(np.shape(x[0]), value)

        if kind == 'power':
            center = params['center'] or (0.0,) * n
            alpha = params['alpha']

            def power(*x):
                radius = np.sqrt(sum((axis - c) ** 2 for axis, c in zip(x, center)))
                return radius ** alpha
            return power

        if kind == 'twovalue':
            axis, split, contrast = params['axis'], params['split'], params['K']
            return lambda *x: np.where(x[axis] < split, 1.0, contrast)

        if kind == 'checkerboard':
            period, contrast = params['period'], params['K']

            def checkerboard(*x):
                parity = sum(np.floor(axis / period) for axis in x) % 2
                return np.where(parity == 0, 1.0, contrast)
            return checkerboard

        if kind == 'skeleton_bump':
            skeleton = Skeleton(params['center'], params['r'])
            boxes = [face.box for face in skeleton.faces(as_delta(params['delta']))]
            height = params['height']

            def bump(*x):
                inside = np.zeros(np.shape(x[0]), dtype=bool)
                for box in boxes:
                    member = np.ones(np.shape(x[0]), dtype=bool)
                    for axis, lo, hi in zip(x, box.lower, box.upper):
                        member &= (axis >= lo) & (axis < hi)
                    inside |= member
                return 1.0 + height * inside
            return bump

        source = read_grid_csv(params['file'])

        def lookup(*x):
            points = np.stack([np.ravel(axis) for axis in x], axis=-1)
            cells = source.spec.cell_of(points)
            if ((cells < 0) | (cells >= np.asarray(source.spec.dims))).any():
                raise FieldError('Grid weight does not cover the requested grid', file=params['file'])
            values = source.values[tuple(cells[:, j] for j in range(cells.shape[1]))]
            return values.reshape(np.shape(x[0]))
        return lookup

    def unit_periodic(self):
        """True when the weight is 1-periodic on every axis"""
        if self._kind == 'constant':
            return True
        if self._kind == 'checkerboard':
            cycles = 1.0 / (2.0 * self._params['period'])
            return abs(cycles - round(cycles)) < 1e-12 and round(cycles) >= 1
        return False

    def region_of_interest(self, n=2):
        """Lattice points z whose squares carry the weight's structure"""
        params = self._params
        if self._kind == 'power':
            center = params['center'] or (0.0,) * n
            base = [int(math.floor(c)) for c in center]
            corners = [[base[axis] - ((index >> axis) & 1) for axis in range(n)] for index in range(2 ** n)]
            return sorted(tuple(corner) for corner in corners)
        if self._kind == 'twovalue':
            split = int(math.floor(params['split']))
            result = []
            for offset in (-1, 0):
                z = [0] * n
                z[params['axis']] = split + offset
                result.append(tuple(z))
            return result
        if self._kind == 'skeleton_bump':
            return [tuple(int(math.floor(c)) for c in params['center'])]
        if self._kind == 'grid':
            bounds = read_grid_csv(params['file']).spec.bounds
            return [tuple(int(math.floor(c)) for c in bounds.center)]
        return [(0,) * n]


def make_weight(spec, grid):
    """Sample a weight at cell midpoints; every value must be positive"""
    spec = WeightSpec.parse(spec)
    field = build_field(grid, spec.sampler(grid.n))
    check_positive(field)
    return field


def check_positive(w):
    if not (w.values > 0).all():
        index = tuple(int(i) for i in np.argwhere(~(w.values > 0))[0])
        raise DegenerateWeightError('Weight must be positive', cell=index)


def default_z_set(weight, z_set, n=2):
    """The given squares, or the weight's region of interest"""
    if z_set:
        return [tuple(int(c) for c in z) for z in z_set]
    if isinstance(weight, SampledField):
        return [(0,) * weight.spec.n]
    return WeightSpec.parse(weight).region_of_interest(n)


def weight_field_for(weight, z, delta, refinement=DEFAULT_REFINEMENT, scale=7):
    """The weight on the quadrature grid around 7Q_z, or the given field itself"""
    if isinstance(weight, SampledField):
        check_positive(weight)
        return weight
    return make_weight(weight, local_grid(z, delta, refinement, scale))


def dual_power(w, p):
    """w**(-p'/p) = w**(1 - p') as a field"""
    with np.errstate(over='ignore'):
        values = np.power(w.values, -1.0 / (p - 1.0))
    if not np.isfinite(values).all():
        raise DegenerateWeightError('w**(1 - p\') overflows', p=p)
    return SampledField(w.spec, values)


class FaceFactor(object):
    """
    (avg over a box of w**(1 - p'))**(p - 1), the power mean of 1/w with
    exponent s = 1/(p - 1), taken on 1/w divided by its maximum. Boxes whose
    powered sum underflows are recomputed directly. p = 1 gives the maximum
    of 1/w.
    """

    def __init__(self, w, p):
        check_positive(w)
        if p < 1:
            raise InvalidExponentError('p must be at least 1', p=p)

        inverse = 1.0 / w.values
        self._spec = w.spec
        self._p = float(p)
        self._peak = float(inverse.max())
        self._normalised = inverse / self._peak

        if self._p == 1.0:
            self._range = RangeMax(inverse)
        else:
            self._s = 1.0 / (self._p - 1.0)
            with np.errstate(under='ignore'):
                self._table = PrefixTable(w.spec, self._normalised ** self._s)

    @property
    def p(self):
        return self._p

    def index_values(self, lo, hi):
        if self._p == 1.0:
            return self._range.index_max(lo, hi)

        lo = np.asarray(lo)
        hi = np.asarray(hi)
        counts = np.prod(hi - lo, axis=-1).astype(float)
        if (counts <= 0).any():
            raise DegenerateBoxError('degenerate box', boxes=int((counts <= 0).sum()))

        means = np.array(self._table.index_sums(lo, hi, refine=True) / counts, dtype=float)
        low = (means < UNDERFLOW_FLOOR).reshape(-1)
        result = (np.maximum(means, 0.0) ** (1.0 / self._s)).reshape(-1)
        if low.any():
            flat_lo = lo.reshape(-1, lo.shape[-1])
            flat_hi = hi.reshape(-1, hi.shape[-1])
            for index in np.nonzero(low)[0]:
                window = tuple(slice(a, b) for a, b in zip(flat_lo[index], flat_hi[index]))
                result[index] = _direct_power_mean(self._normalised[window], self._s)

        return self._peak * result.reshape(means.shape)

    def box_values(self, lower, upper):
        lo, hi = self._spec.snap(lower, upper)
        return self.index_values(lo, hi)


def _direct_power_mean(values, s):
    top = values.max()
    with np.errstate(under='ignore'):
        return top * np.mean((values / top) ** s) ** (1.0 / s)


class ApReport(object):
    """An A_p-type constant with the witness attaining it"""

    def __init__(self, cls, p, delta, value, witness, bracket=None, params=None):
        self.cls = cls
        self.p = p
        self.delta = delta
        self.value = float(value)
        self.witness = witness
        self.bracket = bracket
        self.params = params or {}

    def to_dict(self):
        data = {
            'class': self.cls,
            'p': self.p,
            'delta': None if self.delta is None else str(self.delta),
            'value': self.value,
            'witness': self.witness,
            'bracket': None if self.bracket is None else {'lower': self.bracket[0], 'upper': self.bracket[1]},
        }
        data.update(self.params)
        return data

    def csv_rows(self):
        header = ['class', 'p', 'delta', 'value', 'lower', 'upper']
        lower, upper = self.bracket if self.bracket is not None else ('', '')
        return header, [[self.cls, self.p, '' if self.delta is None else str(self.delta), self.value, lower, upper]]


class SkeletonTerms(object):
    """Snapped face boxes for every (cell, radius, face) of one lattice"""

    def __init__(self, w, lattice, k=1, width=None):
        self._w = w
        self._lattice = lattice
        self._k = k
        self._radii = np.asarray(enumerate_radii(lattice.delta))
        width = float(lattice.delta) if width is None else float(width)

        check_margin(w.spec, lattice.centers, self._radii[-1] + width)
        lower, upper = face_box_bounds(lattice.centers[:, None, :], self._radii[None, :], width, lattice.n, k)
        self._lo, self._hi = w.spec.snap(lower, upper)
        self._measures = np.prod(self._hi - self._lo, axis=-1) * w.spec.cell_volume
        if (self._measures <= 0).any():
            raise DegenerateBoxError('zero snapped face measure')

        self._masses = w.table().box_sums(lattice.lower_corners(), lattice.upper_corners())
        self._factors = {}

    @property
    def lattice(self):
        return self._lattice

    @property
    def radii(self):
        return self._radii

    def factors(self, p):
        key = float(p)
        if key not in self._factors:
            self._factors[key] = FaceFactor(self._w, key).index_values(self._lo, self._hi)
        return self._factors[key]

    def values(self, p):
        """(u, R, F) terms"""
        return self._masses[:, None, None] / self._measures * self.factors(p)

    def radius_index(self, rho):
        return np.round((rho.radii - 1.0) * self._lattice.m).astype(np.int64)

    def local_values(self, p, rho, choices):
        """Per-cell terms for one radius assignment and face selection"""
        rows = np.arange(self._lattice.u)
        return self.values(p)[rows, self.radius_index(rho), np.asarray(choices)]

    def witness(self, flat_index, shape):
        i, r_index, face = np.unravel_index(flat_index, shape)
        return {'z': list(self._lattice.z), 'i': int(i), 'r': float(self._radii[r_index]), 'face': int(face)}


def ap_skeleton_local(w, rho, sel, p, delta=None, k=1):
    """max_i w(Q_z(i)) / |l_i| * (avg over l_i of w**(1 - p'))**(p - 1)"""
    lattice = rho.lattice
    delta = lattice.delta if delta is None else as_delta(delta)
    if p <= 1:
        raise InvalidExponentError('skeleton A_p needs p > 1', p=p)

    choices = sel.choices if hasattr(sel, 'choices') else list(sel)
    terms = SkeletonTerms(w, lattice, k)
    values = terms.local_values(p, rho, choices)
    i = int(np.argmax(values))
    witness = {'z': list(lattice.z), 'i': i, 'r': float(rho.radii[i]), 'face': int(choices[i])}
    return ApReport('skeleton-local', float(p), delta, values[i], witness)


def shared_rho_family(w, lattice, p, seed=DEFAULT_SEED, random_count=RANDOM_RHO_COUNT, k=1):
    """
    Radius assignments for lower estimates: greedy radii on w**(1 - p'),
    every constant radius, and seeded random assignments, each paired with
    its greedy face selection
    """
    inverse = 1.0 / w.values
    normalised = inverse / inverse.max()
    with np.errstate(under='ignore'):
        target = normalised if p == 1 else normalised ** (1.0 / (p - 1.0))
    rhos = [greedy_rho(SampledField(w.spec, target), lattice, k=k)]
    rhos.extend(RhoAssignment.constant(lattice, r) for r in enumerate_radii(lattice.delta))
    rng = np.random.default_rng(seed)
    rhos.extend(RhoAssignment.random(lattice, rng) for _ in range(random_count))

    family = []
    for rho in rhos:
        sel = select_faces(rho.skeletons(k), lattice.delta, 'greedy')
        family.append((rho, sel.choices))
    return family


def _global_constant(cls, weight, p, delta, z_set, refinement, seed, random_count, k, lower, n):
    delta = as_delta(delta)
    z_set = default_z_set(weight, z_set, n)

    upper_value, upper_witness = -np.inf, None
    lower_value = -np.inf
    for z in z_set:
        w = weight_field_for(weight, z, delta, refinement)
        terms = SkeletonTerms(w, CellLattice(z, delta), k)
        values = terms.values(p)
        index = int(np.argmax(values))
        if values.flat[index] > upper_value:
            upper_value = float(values.flat[index])
            upper_witness = terms.witness(index, values.shape)

        if lower:
            for rho, choices in shared_rho_family(w, terms.lattice, p, seed, random_count, k):
                lower_value = max(lower_value, float(terms.local_values(p, rho, choices).max()))

    bracket = (lower_value, upper_value) if lower else None
    return ApReport(cls, float(p), delta, upper_value, upper_witness, bracket)


def ap_skeleton_global(weight, p, delta, z_set=None, refinement=DEFAULT_REFINEMENT, seed=DEFAULT_SEED,
                       random_count=RANDOM_RHO_COUNT, k=1, lower=True, n=2):
    """
    Bracket for the sup over z, rho and selections: the lower estimate uses
    explicit radius assignments with greedy selections, the upper estimate
    takes every cell, radius and face. The reported value is the upper one.
    """
    if p <= 1:
        raise InvalidExponentError('skeleton A_p needs p > 1', p=p)
    return _global_constant('skeleton', weight, p, delta, z_set, refinement, seed, random_count, k, lower, n)


def a1_skeleton(weight, delta, z_set=None, refinement=DEFAULT_REFINEMENT, seed=DEFAULT_SEED,
                random_count=RANDOM_RHO_COUNT, k=1, lower=False, n=2):
    """Skeleton A_1: the face factor is the largest value of 1/w on the face"""
    return _global_constant('a1', weight, 1.0, delta, z_set, refinement, seed, random_count, k, lower, n)


def cube_family_terms(w, family, p):
    """Largest (avg w)(avg w**(1 - p'))**(p - 1) per cube side with its corner"""
    factor = FaceFactor(w, p)
    table = w.table()
    best = (-np.inf, None, None)
    for side in family.sides:
        starts = family.starts(side)
        ends = starts + side
        averages = table.index_sums(starts, ends) / float(side ** w.spec.n)
        values = averages * factor.index_values(starts, ends)
        index = int(np.argmax(values))
        if values[index] > best[0]:
            best = (float(values[index]), starts[index], side)
    return best


def ap_cubic(w, p, cube_family):
    """Classical A_p over a family of lattice cubes, with the witness cube"""
    if p <= 1:
        raise InvalidExponentError('cubic A_p needs p > 1', p=p)
    check_positive(w)

    value, start, side = cube_family_terms(w, cube_family, p)
    lower = [o + w.spec.h * s for o, s in zip(w.spec.origin, start)]
    witness = {'lower': lower, 'side': side * w.spec.h}
    return ApReport('cubic', float(p), None, value, witness)


def cube_constant(w, p, box):
    """(avg over box of w)(avg of w**(1 - p'))**(p - 1) for one snapped box"""
    lo, hi = w.spec.snap(box.lower, box.upper)
    average = float(w.table().index_sums(lo, hi)) / float(np.prod(hi - lo))
    return average * float(FaceFactor(w, p).index_values(lo, hi))


def nonlinear_terms(w, p, delta, points, radii, k=1):
    """
    Per sample (x, r): w(Q_delta(x)) / |S| * (avg over l of g)**p / (avg over S of g)
    with g = w**(-p'/p) and l the face of smallest average, plus that face
    """
    delta = as_delta(delta)
    if p <= 1:
        raise InvalidExponentError('nonlinear skeleton class needs p > 1', p=p)

    points = np.atleast_2d(np.asarray(points, dtype=float))
    radii = np.asarray(radii, dtype=float).reshape(-1)
    width = float(delta)
    n = points.shape[1]

    check_margin(w.spec, points, float(radii.max()) + width)
    g = dual_power(w, p)
    table = g.table()
    lower, upper = face_box_bounds(points, radii, width, n, k)
    face_averages = table.box_averages(lower, upper, refine=True)
    chosen = np.argmin(face_averages, axis=1)
    smallest = face_averages[np.arange(points.shape[0]), chosen]

    union_integral = np.asarray(union_sums(table, lower, upper), dtype=float)
    union_measure = np.asarray(union_snapped_measures(w.spec, lower, upper), dtype=float)
    if (union_integral <= 0).any() or (union_measure <= 0).any():
        raise DegenerateWeightError('degenerate weight on skeleton')

    half = width / 2.0
    cube_mass = w.table().box_sums(points - half, points + half)
    values = cube_mass * smallest ** p / union_integral
    return values, chosen


def ap_nonlinear(w, p, delta, sample, k=1):
    """Max of the nonlinear skeleton quantity over samples of (x, r)"""
    sample = list(sample)
    points = [x for x, _ in sample]
    radii = [r for _, r in sample]
    values, chosen = nonlinear_terms(w, p, delta, points, radii, k)
    index = int(np.argmax(values))
    witness = {'x': [float(c) for c in points[index]], 'r': float(radii[index]), 'face': int(chosen[index])}
    return ApReport('nonlinear', float(p), as_delta(delta), values[index], witness)


def lattice_sample(z_set, delta):
    """Every delta-cell centre of the squares in z_set paired with every radius"""
    sample = []
    radii = enumerate_radii(delta)
    for z in z_set:
        for center in CellLattice(z, delta).centers:
            sample.extend((tuple(center), r) for r in radii)
    return sample


def ap_nonlinear_global(weight, p, delta, z_set=None, refinement=DEFAULT_REFINEMENT, k=1, n=2):
    delta = as_delta(delta)
    z_set = default_z_set(weight, z_set, n)

    best = None
    for z in z_set:
        w = weight_field_for(weight, z, delta, refinement)
        report = ap_nonlinear(w, p, delta, lattice_sample([z], delta), k)
        if best is None or report.value > best.value:
            best = report
    return best


def evaluate_witness(report, weight, refinement=DEFAULT_REFINEMENT, k=1):
    """Recompute the term a report's witness points at"""
    witness = report.witness
    p = report.p

    if report.cls == 'cubic':
        w = weight if isinstance(weight, SampledField) else None
        if w is None:
            raise FieldError('Cubic witnesses are evaluated on a sampled weight')
        side = witness['side']
        return cube_constant(w, p, Box(witness['lower'], [c + side for c in witness['lower']]))

    if report.cls == 'nonlinear':
        x = tuple(witness['x'])
        z = tuple(int(math.floor(c)) for c in x)
        w = weight_field_for(weight, z, report.delta, refinement)
        values, _ = nonlinear_terms(w, p, report.delta, [x], [witness['r']], k)
        return float(values[0])

    z = tuple(witness['z'])
    w = weight_field_for(weight, z, report.delta, refinement)
    lattice = CellLattice(z, report.delta)
    center = lattice.centers[witness['i']]
    lower, upper = face_box_bounds(center, witness['r'], float(report.delta), lattice.n, k)
    face = witness['face']
    lo, hi = w.spec.snap(lower[face], upper[face])
    measure = float(np.prod(hi - lo)) * w.spec.cell_volume
    mass = float(w.table().box_sum(lattice.cell(witness['i'])))
    return mass / measure * float(FaceFactor(w, p).index_values(lo, hi))


def witness_agrees(report, weight, tol=WITNESS_TOLERANCE, **kwargs):
    value = evaluate_witness(report, weight, **kwargs)
    return abs(value - report.value) <= tol * max(abs(report.value), 1e-300)


def _nonincreasing(values, tol):
    return all(later <= earlier * (1 + tol) for earlier, later in zip(values, values[1:]))


def check_p_monotone(weight, p_list, delta, z_set=None, refinement=DEFAULT_REFINEMENT, seed=DEFAULT_SEED,
                     random_count=RANDOM_RHO_COUNT, k=1, tol=RELATIVE_TOLERANCE, n=2):
    """
    Skeleton constants for ascending p on one shared family: the all-faces
    upper estimate and the lower estimate over one fixed list of radius
    assignments and selections. Both columns must be nonincreasing.
    """
    delta = as_delta(delta)
    p_list = [float(parse_fraction(p)) for p in p_list]
    if any(p <= 1 for p in p_list) or p_list != sorted(p_list):
        raise InvalidExponentError('p list must be ascending with every p > 1', p_list=p_list)

    z_set = default_z_set(weight, z_set, n)

    uppers = [-np.inf] * len(p_list)
    lowers = [-np.inf] * len(p_list)
    for z in z_set:
        w = weight_field_for(weight, z, delta, refinement)
        terms = SkeletonTerms(w, CellLattice(z, delta), k)
        family = shared_rho_family(w, terms.lattice, p_list[0], seed, random_count, k)
        for index, p in enumerate(p_list):
            uppers[index] = max(uppers[index], float(terms.values(p).max()))
            for rho, choices in family:
                lowers[index] = max(lowers[index], float(terms.local_values(p, rho, choices).max()))

    passed = _nonincreasing(uppers, tol) and _nonincreasing(lowers, tol)
    rows = [[p, upper, lower] for p, upper, lower in zip(p_list, uppers, lowers)]
    return ScanTable('monotone', ['p', 'upper', 'lower'], rows, passed, {'delta': str(delta)})


def limit_sequence(count):
    """p_j = 1 + 2**-j"""
    return [1.0 + 2.0 ** -j for j in range(1, count + 1)]


def a1_limit_scan(weight, delta, p_sequence, z_set=None, refinement=DEFAULT_REFINEMENT, k=1,
                  gap=LIMIT_GAP, tol=RELATIVE_TOLERANCE, n=2):
    """
    Skeleton A_p constants along p -> 1+ against the A_1 constant. Every A_p
    must stay below A_1 and the last gap within `gap` of A_1.
    """
    delta = as_delta(delta)
    p_sequence = [float(parse_fraction(p)) for p in p_sequence]
    if any(p <= 1 for p in p_sequence) or any(b >= a for a, b in zip(p_sequence, p_sequence[1:])):
        raise InvalidExponentError('p sequence must decrease strictly towards 1', p_sequence=p_sequence)

    z_set = default_z_set(weight, z_set, n)

    constants = [-np.inf] * len(p_sequence)
    a1 = -np.inf
    for z in z_set:
        w = weight_field_for(weight, z, delta, refinement)
        terms = SkeletonTerms(w, CellLattice(z, delta), k)
        a1 = max(a1, float(terms.values(1.0).max()))
        for index, p in enumerate(p_sequence):
            constants[index] = max(constants[index], float(terms.values(p).max()))

    gaps = [abs(a1 - value) for value in constants]
    below = all(value <= a1 * (1 + tol) for value in constants)
    passed = below and gaps[-1] <= gap * a1
    rows = [[p, value, a1, g] for p, value, g in zip(p_sequence, constants, gaps)]
    return ScanTable('a1-limit', ['p', 'constant', 'a1', 'gap'], rows, passed, {'delta': str(delta)})


def conjugate_is_integer(p, tol=1e-9):
    """p = 1 or p' a natural number"""
    if p == 1:
        return True
    q = conjugate(p)
    return abs(q - round(q)) < tol and round(q) >= 2
