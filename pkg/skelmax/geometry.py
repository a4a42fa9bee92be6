"""
Cube skeletons, their fattened faces and the delta lattice of centres

A skeleton S_k(x, r) is the union of the k-dimensional faces of the cube
x + [-r, r]^n. Fattening uses the sup metric, so every fattened face is a box
whose k free axes span [x - r - w, x + r + w] and whose n - k normal axes
span [x +- r - w, x +- r + w] for a fattening width w.
"""

import math
from collections import namedtuple
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from skelmax.errors import SkelmaxError, UnquantizablePlaneError
from skelmax.grid import Box, GridSpec
from skelmax.utils import as_delta

# Keeps r in [1, 2] robust to decimal input such as 1.9999999999999998
RADIUS_TOLERANCE = 1e-12
PLANE_TOLERANCE = 1e-9
MAX_DIMENSION = 3


def face_orientations(n, k):
    """Coordinate k-planes as tuples of free axes, lexicographic"""
    return list(combinations(range(n), k))


def face_layout(n, k):
    """
    (orientation, normal_axes, signs) for every face in face-index order:
    orientations lexicographic, then signs in product((-1, 1)) order.
    For n=2, k=1 this is bottom, top, left, right.
    """
    layout = []
    for free in face_orientations(n, k):
        normal = tuple(axis for axis in range(n) if axis not in free)
        for signs in product((-1, 1), repeat=len(normal)):
            layout.append((free, normal, signs))
    return layout


def face_count(n, k):
    return math.comb(n, k) * 2 ** (n - k)


def _layout_arrays(n, k):
    layout = face_layout(n, k)
    sign = np.zeros((len(layout), n))
    free = np.zeros((len(layout), n))
    for index, (orientation, normal, signs) in enumerate(layout):
        free[index, list(orientation)] = 1.0
        if normal:
            sign[index, list(normal)] = signs
    return sign, free


def face_box_bounds(centers, radii, width, n, k):
    """
    Face box corners by broadcasting: centers (..., n) against radii (...)
    give lower and upper arrays shaped (..., F, n)
    """
    sign, free = _layout_arrays(n, k)
    c = np.asarray(centers, dtype=float)[..., None, :]
    r = np.asarray(radii, dtype=float)[..., None, None]
    lower = c + r * (sign - free) - width
    upper = c + r * (sign + free) + width
    return lower, upper


class Skeleton(namedtuple('Skeleton', ['center', 'r', 'k'])):
    """k-skeleton of the cube center + [-r, r]^n, 1 <= r <= 2"""
    __slots__ = ()

    def __new__(cls, center, r, k=1):
        center = tuple(float(value) for value in center)
        r = float(r)
        k = int(k)
        n = len(center)

        if not 1 <= n <= MAX_DIMENSION:
            raise SkelmaxError('Skeletons are supported up to dimension {}'.format(MAX_DIMENSION), n=n)
        if not 0 <= k < n:
            raise SkelmaxError('Face dimension must satisfy 0 <= k < n', n=n, k=k)
        if not 1 - RADIUS_TOLERANCE <= r <= 2 + RADIUS_TOLERANCE:
            raise SkelmaxError('Skeleton half-side must lie in [1, 2]', r=r)

        return super(Skeleton, cls).__new__(cls, center, r, k)

    @property
    def n(self):
        return len(self.center)

    @property
    def face_count(self):
        return face_count(self.n, self.k)

    def faces(self, delta, width=None):
        """Fattened faces; width defaults to delta, the lattice stays delta"""
        return faces(self, delta, width)


class PlaneKey(namedtuple('PlaneKey', ['orientation', 'offsets'])):
    """
    Affine coordinate k-plane: the free axes plus integer offsets of the
    normal axes on the delta/2-shifted delta lattice
    """
    __slots__ = ()

    @property
    def normal_axes(self):
        n = len(self.orientation) + len(self.offsets)
        return tuple(axis for axis in range(n) if axis not in self.orientation)

    def __str__(self):
        if not self.offsets:
            return '*'
        return ';'.join('{}:{}'.format(axis, offset) for axis, offset in zip(self.normal_axes, self.offsets))


class FattenedFace(namedtuple('FattenedFace', ['box', 'orientation', 'normal_axes', 'face_index', 'delta'])):
    __slots__ = ()

    @property
    def plane(self):
        return face_plane(self)

    @property
    def vertical(self):
        """Parallel to the last axis (n=2, k=1: the left and right faces)"""
        return self.orientation == (len(self.box.lower) - 1,)


def faces(skeleton, delta, width=None):
    """Fattened faces of a skeleton in face-index order"""
    if delta is None or float(delta) <= 0:
        raise SkelmaxError('Fattening delta must be positive', delta=delta)

    width = float(delta) if width is None else float(width)
    if width <= 0:
        raise SkelmaxError('Fattening width must be positive', width=width)

    lower, upper = face_box_bounds(skeleton.center, skeleton.r, width, skeleton.n, skeleton.k)
    result = []
    for index, (orientation, normal, _) in enumerate(face_layout(skeleton.n, skeleton.k)):
        result.append(FattenedFace(Box(lower[index], upper[index]), orientation, normal, index, delta))
    return result


def face_plane(face):
    """Integer key of the affine plane the face lies in"""
    delta = float(face.delta)
    offsets = []
    for axis in face.normal_axes:
        middle = (face.box.lower[axis] + face.box.upper[axis]) / 2.0
        scaled = (middle - delta / 2.0) / delta
        nearest = round(scaled)
        if abs(scaled - nearest) > PLANE_TOLERANCE:
            raise UnquantizablePlaneError('unquantizable plane', face=face.face_index, axis=axis, position=middle)
        offsets.append(int(nearest))

    return PlaneKey(tuple(face.orientation), tuple(offsets))


def _union_terms(lower, upper, reducer):
    """
    Inclusion-exclusion over face boxes with arrays shaped (..., F, n),
    extending a subset only while its intersection is non-empty somewhere
    """
    count = lower.shape[-2]
    total = 0.0

    def extend(start, lo, hi, sign):
        acc = 0.0
        for j in range(start, count):
            new_lo = np.maximum(lo, lower[..., j, :])
            new_hi = np.minimum(hi, upper[..., j, :])
            if not (new_hi > new_lo).all(axis=-1).any():
                continue
            acc = acc + sign * reducer(new_lo, new_hi)
            acc = acc + extend(j + 1, new_lo, new_hi, -sign)
        return acc

    for i in range(count):
        lo = lower[..., i, :]
        hi = upper[..., i, :]
        total = total + reducer(lo, hi)
        total = total + extend(i + 1, lo, hi, -1)

    return total


def union_measure(boxes):
    """Exact Lebesgue measure of a union of boxes"""
    if not boxes:
        return 0.0

    lower = np.array([box.lower for box in boxes])
    upper = np.array([box.upper for box in boxes])

    def measure(lo, hi):
        return np.prod(np.maximum(hi - lo, 0.0), axis=-1)

    return float(_union_terms(lower, upper, measure))


def union_sums(table, lower, upper):
    """Integral over the union of face boxes, vectorized over leading axes"""

    def integral(lo, hi):
        return table.box_sums(lo, hi)

    return _union_terms(np.asarray(lower), np.asarray(upper), integral)


def union_snapped_measures(spec, lower, upper):
    """Snapped-cell measure of the union of face boxes"""

    def measure(lo, hi):
        index_lo, index_hi = spec.snap(lo, hi)
        return np.prod(index_hi - index_lo, axis=-1) * spec.cell_volume

    return _union_terms(np.asarray(lower), np.asarray(upper), measure)


def union_sum(table, boxes):
    lower = np.array([box.lower for box in boxes])
    upper = np.array([box.upper for box in boxes])
    return float(union_sums(table, lower, upper))


def skeleton_measure(skeleton, delta, width=None):
    """|S_delta(x, r)|: measure of the union of the fattened faces"""
    return union_measure([face.box for face in faces(skeleton, delta, width)])


def enumerate_radii(delta):
    """[1, 2] intersected with delta Z, ascending"""
    m = as_delta(delta).denominator
    return [float(Fraction(m + j, m)) for j in range(m + 1)]


class CellLattice(object):
    """
    The delta-cells Q_z(1..u) of the unit cube with lower corner z,
    indexed with the x index fastest
    """

    def __init__(self, z, delta):
        self._z = tuple(int(value) for value in z)
        self._delta = as_delta(delta)
        self._m = self._delta.denominator
        n = len(self._z)
        if not 1 <= n <= MAX_DIMENSION:
            raise SkelmaxError('Lattices are supported up to dimension {}'.format(MAX_DIMENSION), n=n)

        indices = np.indices((self._m,) * n).reshape(n, -1, order='F').T
        self._indices = indices
        self._centers = np.asarray(self._z, dtype=float) + (indices + 0.5) / self._m

    @property
    def z(self):
        return self._z

    @property
    def delta(self):
        return self._delta

    @property
    def m(self):
        return self._m

    @property
    def n(self):
        return len(self._z)

    @property
    def u(self):
        return self._m ** self.n

    @property
    def indices(self):
        """(u, n) integer cell offsets"""
        return self._indices

    @property
    def centers(self):
        return self._centers

    @property
    def square(self):
        return Box(self._z, [value + 1 for value in self._z])

    def lower_corners(self):
        return np.asarray(self._z, dtype=float) + self._indices / float(self._m)

    def upper_corners(self):
        return np.asarray(self._z, dtype=float) + (self._indices + 1) / float(self._m)

    def cell(self, i):
        lower = [value + index / float(self._m) for value, index in zip(self._z, self._indices[i])]
        upper = [value + (index + 1) / float(self._m) for value, index in zip(self._z, self._indices[i])]
        return Box(lower, upper)

    def index_of(self, point):
        """Index of the cell whose half-open box holds the point"""
        offsets = [int(math.floor((x - value) * self._m)) for x, value in zip(point, self._z)]
        if any(not 0 <= offset < self._m for offset in offsets):
            raise SkelmaxError('Point lies outside the unit cube', point=tuple(point), z=self._z)
        return sum(offset * self._m ** axis for axis, offset in enumerate(offsets))

    def psi(self, point):
        """Centre of the cell containing the point"""
        return tuple(float(value) for value in self._centers[self.index_of(point)])

    def skeletons(self, radii, k=1):
        return [Skeleton(center, r, k) for center, r in zip(self._centers, radii)]

    def grid_spec(self):
        return GridSpec(self._z, 1.0 / self._m, (self._m,) * self.n)


def cell_lattice(z, delta):
    return CellLattice(z, delta)


def faces_contained(x_tilde, x, r, delta, factor=4, k=1):
    """Every face box of (x_tilde, r, delta) lies in the matching box of (x, r, factor * delta)"""
    n = len(x_tilde)
    inner_lo, inner_hi = face_box_bounds(x_tilde, r, float(delta), n, k)
    outer_lo, outer_hi = face_box_bounds(x, r, factor * float(delta), n, k)
    tol = PLANE_TOLERANCE * float(delta)
    return bool(((outer_lo <= inner_lo + tol) & (inner_hi <= outer_hi + tol)).all())


def containment_4delta(x_tilde, x, r, delta, k=1):
    """
    S_delta(x_tilde, r) inside S_4delta(x, r) for x in the delta-cube
    around x_tilde; false whenever |x - x_tilde|_inf > delta / 2
    """
    distance = max(abs(a - b) for a, b in zip(x, x_tilde))
    if distance > float(delta) / 2.0 * (1 + PLANE_TOLERANCE):
        return False
    return faces_contained(x_tilde, x, r, delta, factor=4, k=k)


def write_skeletons(skeletons, stream):
    """CSV rows cx, cy[, cz], r"""
    if not skeletons:
        return
    n = skeletons[0].n
    axes = ['cx', 'cy', 'cz'][:n]
    stream.write(','.join(axes + ['r']) + '\n')
    for skeleton in skeletons:
        stream.write(','.join(repr(value) for value in skeleton.center + (skeleton.r,)) + '\n')


def read_skeletons(stream, k=1):
    lines = [line.strip() for line in stream if line.strip()]
    if not lines:
        return []
    result = []
    for line in lines[1:]:
        values = [float(item) for item in line.split(',')]
        result.append(Skeleton(values[:-1], values[-1], k))
    return result
