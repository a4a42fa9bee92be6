"""
Sampled fields on uniform grids, prefix tables and weighted norms

A field stores one value per cell, sampled at the cell midpoint. Arrays are
indexed [i_0, i_1, ...] with axis 0 the x axis. Flat orderings, CSV rows and
cell lattices all let the x index vary fastest.
"""

import math
from collections import namedtuple
from itertools import product

import numpy as np

from skelmax.config import CANCELLATION_RATIO, GRID_HEADER_PREFIX
from skelmax.errors import DegenerateBoxError, FieldError
from skelmax.utils import as_delta

# Snapped coordinates closer than this to an integer are treated as integers
SNAP_TOLERANCE = 1e-9


class Box(namedtuple('Box', ['lower', 'upper'])):
    """Axis-aligned box, half-open [lower, upper) for cell membership"""
    __slots__ = ()

    def __new__(cls, lower, upper):
        lower = tuple(float(value) for value in lower)
        upper = tuple(float(value) for value in upper)
        if len(lower) != len(upper):
            raise FieldError('Box corners differ in dimension', lower=lower, upper=upper)
        if any(lo > hi for lo, hi in zip(lower, upper)):
            raise FieldError('Box lower corner exceeds upper corner', lower=lower, upper=upper)

        return super(Box, cls).__new__(cls, lower, upper)

    @classmethod
    def cube(cls, center, half_side):
        return cls([c - half_side for c in center], [c + half_side for c in center])

    @property
    def n(self):
        return len(self.lower)

    @property
    def measure(self):
        return float(np.prod([hi - lo for lo, hi in zip(self.lower, self.upper)]))

    @property
    def center(self):
        return tuple((lo + hi) / 2.0 for lo, hi in zip(self.lower, self.upper))

    def contains(self, point):
        return all(lo <= x < hi for x, lo, hi in zip(point, self.lower, self.upper))

    def contains_box(self, other, tol=0.0):
        return all(lo - tol <= olo and ohi <= hi + tol
                   for lo, hi, olo, ohi in zip(self.lower, self.upper, other.lower, other.upper))

    def intersect(self, other):
        """Intersection or None when it has no interior"""
        lower = [max(a, b) for a, b in zip(self.lower, other.lower)]
        upper = [min(a, b) for a, b in zip(self.upper, other.upper)]
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            return None

        return Box(lower, upper)


class GridSpec(object):
    """Uniform axis-aligned grid: origin, spacing h and cells per axis"""

    def __init__(self, origin, h, dims):
        self._origin = tuple(float(value) for value in origin)
        self._h = float(h)
        self._dims = tuple(int(value) for value in dims)

        if not self._h > 0 or not math.isfinite(self._h):
            raise FieldError('Grid spacing must be positive', h=h)
        if len(self._origin) != len(self._dims):
            raise FieldError('Grid origin and dims differ in dimension', origin=origin, dims=dims)
        if any(value < 1 for value in self._dims):
            raise FieldError('Grid needs at least one cell per axis', dims=dims)

    @property
    def origin(self):
        return self._origin

    @property
    def h(self):
        return self._h

    @property
    def dims(self):
        return self._dims

    @property
    def n(self):
        return len(self._dims)

    @property
    def size(self):
        return int(np.prod(self._dims))

    @property
    def cell_volume(self):
        return self._h ** self.n

    @property
    def bounds(self):
        return Box(self._origin, [o + self._h * d for o, d in zip(self._origin, self._dims)])

    def __eq__(self, other):
        return isinstance(other, GridSpec) and \
            (self._origin, self._h, self._dims) == (other.origin, other.h, other.dims)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._origin, self._h, self._dims))

    def __repr__(self):
        return 'GridSpec(origin={}, h={}, dims={})'.format(self._origin, self._h, self._dims)

    def axis_midpoints(self, axis):
        return self._origin[axis] + self._h * (np.arange(self._dims[axis]) + 0.5)

    def coordinates(self):
        """Midpoint coordinate arrays, one per axis, each shaped dims"""
        axes = [self.axis_midpoints(axis) for axis in range(self.n)]
        return np.meshgrid(*axes, indexing='ij')

    def cell_indices(self):
        """(size, n) integer cell indices, x fastest"""
        return np.indices(self._dims).reshape(self.n, -1, order='F').T

    def cell_lower_corners(self):
        """(size, n) lower-left nodes of every cell, x fastest"""
        return np.asarray(self._origin) + self._h * self.cell_indices()

    def cell_of(self, points):
        """Index of the cell containing each point"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        scaled = (points - np.asarray(self._origin)) / self._h
        return np.floor(_clean(scaled)).astype(np.int64)

    def snap(self, lower, upper):
        """
        Convert box corners into half-open cell index ranges: a cell belongs to
        the box iff its midpoint lies in [lower, upper). Works on arrays of
        corners shaped (..., n) and clips to the grid.
        """
        origin = np.asarray(self._origin)
        dims = np.asarray(self._dims)
        lo = np.ceil(_clean((np.asarray(lower, dtype=float) - origin) / self._h) - 0.5).astype(np.int64)
        hi = np.ceil(_clean((np.asarray(upper, dtype=float) - origin) / self._h) - 0.5).astype(np.int64)
        lo = np.clip(lo, 0, dims)
        hi = np.clip(hi, 0, dims)
        return lo, np.maximum(hi, lo)

    def snap_box(self, box):
        lo, hi = self.snap(box.lower, box.upper)
        return tuple(int(v) for v in lo), tuple(int(v) for v in hi)

    def slices(self, box):
        lo, hi = self.snap_box(box)
        return tuple(slice(a, b) for a, b in zip(lo, hi))

    def snapped_measure(self, box):
        lo, hi = self.snap_box(box)
        return float(np.prod([b - a for a, b in zip(lo, hi)])) * self.cell_volume

    def to_header(self):
        return '{} origin={} h={} dims={}'.format(
            GRID_HEADER_PREFIX,
            ','.join(repr(value) for value in self._origin),
            repr(self._h),
            ','.join(str(value) for value in self._dims))

    @classmethod
    def from_header(cls, line):
        text = line.strip()
        if not text.startswith(GRID_HEADER_PREFIX):
            raise FieldError('Grid file header must start with {}'.format(GRID_HEADER_PREFIX), header=line)

        fields = {}
        for item in text[len(GRID_HEADER_PREFIX):].split():
            if '=' not in item:
                raise FieldError('Malformed grid header entry', entry=item)
            key, value = item.split('=', 1)
            fields[key] = value

        try:
            origin = [float(value) for value in fields['origin'].split(',')]
            h = float(fields['h'])
            dims = [int(value) for value in fields['dims'].split(',')]
        except (KeyError, ValueError):
            raise FieldError('Grid header needs origin, h and dims', header=line)

        return cls(origin, h, dims)


def _clean(scaled):
    """Snap values within SNAP_TOLERANCE of an integer onto it"""
    nearest = np.round(scaled)
    return np.where(np.abs(scaled - nearest) < SNAP_TOLERANCE, nearest, scaled)


def local_grid(z, delta, refinement=2, scale=7):
    """
    Quadrature grid around the unit square Q_z: the concentric cube of side
    `scale` (7 gives 7Q_z) with spacing h = delta / 2**refinement
    """
    delta = as_delta(delta)
    if refinement < 1:
        raise FieldError('Quadrature refinement must be at least 1', refinement=refinement)

    cells_per_unit = delta.denominator * 2 ** int(refinement)
    origin = [value - (scale - 1) / 2.0 for value in z]
    return GridSpec(origin, 1.0 / cells_per_unit, [scale * cells_per_unit] * len(z))


class SampledField(object):
    """Immutable field of finite values on a GridSpec"""

    def __init__(self, spec, values):
        values = np.array(values, dtype=float)
        if values.shape != spec.dims:
            raise FieldError('Field shape does not match the grid', shape=values.shape, dims=spec.dims)

        bad = ~np.isfinite(values)
        if bad.any():
            index = tuple(int(i) for i in np.argwhere(bad)[0])
            raise FieldError('Field value is not finite', cell=index)

        values.setflags(write=False)
        self._spec = spec
        self._values = values
        self._table = None

    @property
    def spec(self):
        return self._spec

    @property
    def values(self):
        return self._values

    def table(self):
        """Cached prefix table"""
        if self._table is None:
            self._table = PrefixTable(self._spec, self._values)
        return self._table

    def abs(self):
        if (self._values >= 0).all():
            return self
        return SampledField(self._spec, np.abs(self._values))

    def with_values(self, values):
        return SampledField(self._spec, values)

    def power(self, exponent):
        return SampledField(self._spec, np.power(self._values, exponent))

    def scaled(self, factor):
        return SampledField(self._spec, self._values * factor)

    def __eq__(self, other):
        return isinstance(other, SampledField) and self._spec == other.spec \
            and np.array_equal(self._values, other.values)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None


def build_field(spec, sampler):
    """Sample a vectorized sampler(x0, x1, ...) at every cell midpoint"""
    coordinates = spec.coordinates()
    with np.errstate(all='ignore'):
        values = np.broadcast_to(np.asarray(sampler(*coordinates), dtype=float), spec.dims)

    bad = ~np.isfinite(values)
    if bad.any():
        index = tuple(np.argwhere(bad)[0])
        point = tuple(float(axis[index]) for axis in coordinates)
        raise FieldError('Sampler is not finite', point=point)

    return SampledField(spec, values)


def constant_field(spec, value=1.0):
    return SampledField(spec, np.full(spec.dims, float(value)))


def indicator_field(spec, boxes):
    """1 on cells whose midpoints lie in any of the boxes"""
    values = np.zeros(spec.dims)
    for box in boxes:
        values[spec.slices(box)] = 1.0
    return SampledField(spec, values)


class PrefixTable(object):
    """
    Summed-area table padded with a leading zero plane on every axis, so the
    sum over cells [lo, hi) is an alternating sum over the 2**n corners.
    Real-valued fields are accumulated around their mean so corner
    magnitudes stay near the box sums; integer-valued fields sum exactly.
    """

    def __init__(self, spec, values):
        values = np.asarray(values, dtype=float)
        offset = 0.0 if np.array_equal(values, np.round(values)) else float(np.mean(values))
        table = values - offset
        for axis in range(spec.n):
            table = np.cumsum(table, axis=axis)
        table = np.pad(table, [(1, 0)] * spec.n, mode='constant')
        table.setflags(write=False)

        self._spec = spec
        self._values = values
        self._offset = offset
        self._table = table
        self._corners = [(np.array(bits, dtype=bool), (-1) ** (spec.n - sum(bits)))
                         for bits in product((0, 1), repeat=spec.n)]

    @property
    def spec(self):
        return self._spec

    @property
    def values(self):
        return self._values

    def index_sums(self, lo, hi, refine=False):
        """
        Raw cell sums over [lo, hi) for index arrays shaped (..., n).
        With refine, boxes whose inclusion-exclusion result is tiny against
        the corner magnitudes are summed directly.
        """
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.maximum(np.asarray(hi, dtype=np.int64), lo)
        n = self._spec.n

        counts = np.prod(hi - lo, axis=-1).astype(float)
        total = np.zeros(lo.shape[:-1])
        scale = np.abs(self._offset * counts)
        for bits, sign in self._corners:
            corner = np.where(bits, hi, lo)
            value = self._table[tuple(corner[..., axis] for axis in range(n))]
            total = total + sign * value
            if refine:
                scale = np.maximum(scale, np.abs(value))
        total = total + self._offset * counts

        empty = (hi <= lo).any(axis=-1)
        total = np.where(empty, 0.0, total)

        if refine:
            suspect = (~empty & (np.abs(total) < CANCELLATION_RATIO * scale)).reshape(-1)
            if suspect.any():
                total = np.array(total, dtype=float).reshape(-1)
                flat_lo = lo.reshape(-1, n)
                flat_hi = hi.reshape(-1, n)
                for index in np.nonzero(suspect)[0]:
                    window = tuple(slice(a, b) for a, b in zip(flat_lo[index], flat_hi[index]))
                    total[index] = np.sum(self._values[window])
                total = total.reshape(lo.shape[:-1])

        return total

    def index_counts(self, lo, hi):
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.maximum(np.asarray(hi, dtype=np.int64), lo)
        return np.prod(hi - lo, axis=-1).astype(float)

    def box_sums(self, lower, upper, refine=False):
        """Integrals over boxes given as corner arrays shaped (..., n)"""
        lo, hi = self._spec.snap(lower, upper)
        return self.index_sums(lo, hi, refine) * self._spec.cell_volume

    def box_measures(self, lower, upper):
        lo, hi = self._spec.snap(lower, upper)
        return self.index_counts(lo, hi) * self._spec.cell_volume

    def box_averages(self, lower, upper, refine=False):
        lo, hi = self._spec.snap(lower, upper)
        counts = self.index_counts(lo, hi)
        if (counts <= 0).any():
            raise DegenerateBoxError('degenerate box', boxes=int((counts <= 0).sum()))
        return self.index_sums(lo, hi, refine) / counts

    def box_sum(self, box):
        return float(self.box_sums(box.lower, box.upper))

    def box_measure(self, box):
        return float(self.box_measures(box.lower, box.upper))

    def box_average(self, box):
        measure = self.box_measure(box)
        if measure <= 0:
            raise DegenerateBoxError('degenerate box', lower=box.lower, upper=box.upper)
        return self.box_sum(box) / measure


def box_sum(table, box, flag=False):
    """
    h**n times the sum of cells whose midpoints lie in the box. With flag the
    result is (value, empty) where empty marks a box that catches no cell.
    """
    value = table.box_sum(box)
    if flag:
        return value, table.box_measure(box) == 0
    return value


def box_average(table, box):
    return table.box_average(box)


def lp_norm(f, w, p, region=None):
    """(sum over cells in region of |f|**p * w * h**n)**(1/p); w None means 1"""
    if p < 1:
        raise FieldError('Norm exponent must be at least 1', p=p)
    if w is not None and f.spec != w.spec:
        raise FieldError('Field and weight live on different grids', field=f.spec, weight=w.spec)

    window = f.spec.slices(region) if region is not None else tuple(slice(None) for _ in f.spec.dims)
    integrand = np.abs(f.values[window]) ** p
    if w is not None:
        integrand = integrand * w.values[window]

    return float(np.sum(integrand) * f.spec.cell_volume) ** (1.0 / p)


def write_grid_csv(field, path=None, stream=None):
    """Header line, then one line per x-row of values"""
    spec = field.spec
    flat = field.values.reshape(-1, order='F')
    rows = flat.reshape(-1, spec.dims[0])

    lines = [spec.to_header()]
    lines.extend(','.join(repr(float(value)) for value in row) for row in rows)
    text = '\n'.join(lines) + '\n'

    if stream is not None:
        stream.write(text)
    else:
        with open(path, 'w') as fh:
            fh.write(text)

    return text


def read_grid_csv(path):
    try:
        with open(path, 'r') as fh:
            header = fh.readline()
            body = fh.read()
    except (IOError, OSError) as e:
        raise FieldError('Cannot read grid file', path=path, reason=str(e))

    spec = GridSpec.from_header(header)
    try:
        flat = np.array([float(item) for line in body.splitlines() if line.strip()
                         for item in line.split(',')])
    except ValueError:
        raise FieldError('Grid file holds a non-numeric value', path=path)

    if flat.size != spec.size:
        raise FieldError('Grid file value count does not match its header', path=path,
                         values=flat.size, expected=spec.size)

    return SampledField(spec, flat.reshape(spec.dims, order='F'))


def _axis_slice(a, axis, start, stop):
    index = [slice(None)] * a.ndim
    index[axis] = slice(start, stop)
    return a[tuple(index)]


def sliding_max(a, size, axis=0):
    """Max over every window [i, i + size) along axis, by doubling spans"""
    length = a.shape[axis]
    if size < 1 or size > length:
        raise FieldError('Window does not fit the array', size=size, length=length)

    current = a
    span = 1
    while span * 2 <= size:
        current = np.maximum(_axis_slice(current, axis, 0, -span),
                             _axis_slice(current, axis, span, None))
        span *= 2

    count = length - size + 1
    return np.maximum(_axis_slice(current, axis, 0, count),
                      _axis_slice(current, axis, size - span, size - span + count))


class RangeMax(object):
    """Exact maxima of a field over cell ranges, windowed per box shape"""

    def __init__(self, values):
        self._values = np.asarray(values, dtype=float)
        self._windows = {}

    def _window_max(self, shape):
        if shape not in self._windows:
            current = self._values
            for axis, size in enumerate(shape):
                current = sliding_max(current, size, axis)
            self._windows[shape] = current
        return self._windows[shape]

    def index_max(self, lo, hi):
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        extent = hi - lo
        if (extent <= 0).any():
            raise DegenerateBoxError('degenerate box', boxes=int((extent <= 0).any(axis=-1).sum()))

        flat_lo = lo.reshape(-1, lo.shape[-1])
        flat_extent = extent.reshape(-1, extent.shape[-1])
        result = np.empty(flat_lo.shape[0])

        shapes, inverse = np.unique(flat_extent, axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        for position, shape in enumerate(shapes):
            members = np.nonzero(inverse == position)[0]
            window = self._window_max(tuple(int(s) for s in shape))
            corners = flat_lo[members]
            result[members] = window[tuple(corners[:, axis] for axis in range(corners.shape[1]))]

        return result.reshape(lo.shape[:-1])
