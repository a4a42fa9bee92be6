"""
Skeleton maximal operator, its linearized form and the Hardy-Littlewood baseline
"""

import numpy as np

from skelmax.config import LOCAL_DOMINATION_FACTOR, POINTS_PER_JOB, RELATIVE_TOLERANCE
from skelmax.errors import DegenerateBoxError, MarginError, SelectionError, SkelmaxError, SupportError
from skelmax.geometry import CellLattice, enumerate_radii, face_box_bounds
from skelmax.grid import Box, GridSpec, SampledField, sliding_max
from skelmax.utils import as_delta, as_exponent
from skelmax.workers import chunked, ordered_map

MARGIN_TOLERANCE = 1e-9


class MaximalField(object):
    """
    Operator values at evaluation points. When `spec` is set, point j stands
    for cell j of that grid (x index fastest) and the field can be exported
    or integrated against a weight.
    """

    def __init__(self, points, values, spec=None, radii=None):
        self._points = np.asarray(points, dtype=float)
        self._values = np.asarray(values, dtype=float)
        self._spec = spec
        self._radii = None if radii is None else np.asarray(radii, dtype=float)
        if spec is not None and spec.size != self._values.size:
            raise SkelmaxError('Operator values do not match their grid', values=self._values.size, cells=spec.size)

    @property
    def points(self):
        return self._points

    @property
    def values(self):
        return self._values

    @property
    def spec(self):
        return self._spec

    @property
    def radii(self):
        """Maximizing radius per point, when the operator has one"""
        return self._radii

    def to_field(self):
        if self._spec is None:
            raise SkelmaxError('Operator values carry no grid to export')
        return SampledField(self._spec, self._values.reshape(self._spec.dims, order='F'))

    def cell_masses(self, w=None):
        """w(cell) for every represented cell; the measure when w is None"""
        if self._spec is None:
            raise SkelmaxError('Operator values carry no cells to integrate over')

        lower = self._spec.cell_lower_corners()
        upper = lower + self._spec.h
        if w is None:
            return np.full(lower.shape[0], self._spec.cell_volume)
        return w.table().box_sums(lower, upper)

    def norm(self, w, p, mask=None):
        """(sum of v**p * w(cell))**(1/p), optionally over a subset of cells"""
        values = np.abs(self._values) ** p * self.cell_masses(w)
        if mask is not None:
            values = values[np.asarray(mask)]
        return float(np.sum(values)) ** (1.0 / p)


def _face_averages(table, points, radii, width, k, refine=False):
    """(P, R, F) face averages of the table's field"""
    n = points.shape[-1]
    lower, upper = face_box_bounds(points[:, None, :], np.asarray(radii)[None, :], width, n, k)
    lo, hi = table.spec.snap(lower, upper)
    counts = table.index_counts(lo, hi)
    if (counts <= 0).any():
        raise DegenerateBoxError('degenerate box', width=width)
    return table.index_sums(lo, hi, refine) / counts


def check_margin(spec, points, reach):
    """Every point must sit at least `reach` inside the grid"""
    bounds = spec.bounds
    points = np.atleast_2d(points)
    slack = MARGIN_TOLERANCE * spec.h
    low = np.asarray(bounds.lower) + reach - slack
    high = np.asarray(bounds.upper) - reach + slack
    outside = ((points < low) | (points > high)).any(axis=1)
    if outside.any():
        point = tuple(float(value) for value in points[np.argmax(outside)])
        raise MarginError('Evaluation point too close to the grid edge', point=point, reach=reach)


def evaluation_points(target):
    """
    Points and grid for a target: a CellLattice gives its cell centres, a
    GridSpec gives the lower-left node of every cell (dense mode), an array
    is used as is
    """
    if isinstance(target, CellLattice):
        return target.centers, target.grid_spec()
    if isinstance(target, GridSpec):
        return target.cell_lower_corners(), target
    return np.atleast_2d(np.asarray(target, dtype=float)), None


def skeleton_maximal(f, delta, eval_points, k=1, radii=None, width=None, threads=1):
    """
    max over radii of the min over faces of the average of |f| on the fattened
    face, at every evaluation point
    """
    delta = as_delta(delta)
    radii = enumerate_radii(delta) if radii is None else [float(r) for r in radii]
    width = float(delta) if width is None else float(width)
    points, spec = evaluation_points(eval_points)

    check_margin(f.spec, points, max(radii) + width)
    table = f.abs().table()
    radius_grid = np.asarray(radii)

    def job(chunk):
        averages = _face_averages(table, chunk, radius_grid, width, k)
        minima = averages.min(axis=2)
        return minima.max(axis=1), radius_grid[np.argmax(minima, axis=1)]

    results = ordered_map(job, chunked(points, POINTS_PER_JOB), threads)
    values = np.concatenate([result[0] for result in results]) if results else np.zeros(0)
    best = np.concatenate([result[1] for result in results]) if results else np.zeros(0)
    return MaximalField(points, values, spec, best)


class RhoAssignment(object):
    """Radius per delta-cell, every radius in [1, 2] on the delta grid"""

    def __init__(self, lattice, radii):
        radii = np.asarray(radii, dtype=float).reshape(-1)
        if radii.size != lattice.u:
            raise SelectionError('Radius assignment does not cover the lattice', radii=radii.size, u=lattice.u)

        steps = radii * lattice.m
        if (np.abs(steps - np.round(steps)) > 1e-9).any() or (radii < 1 - 1e-12).any() or (radii > 2 + 1e-12).any():
            raise SkelmaxError('Radii must lie in [1, 2] on the delta grid', delta=str(lattice.delta))

        self._lattice = lattice
        self._radii = np.round(steps) / lattice.m

    @classmethod
    def constant(cls, lattice, r=1.0):
        return cls(lattice, np.full(lattice.u, float(r)))

    @classmethod
    def random(cls, lattice, rng):
        choices = np.asarray(enumerate_radii(lattice.delta))
        return cls(lattice, rng.choice(choices, size=lattice.u))

    @property
    def lattice(self):
        return self._lattice

    @property
    def radii(self):
        return self._radii

    def skeletons(self, k=1):
        return self._lattice.skeletons(self._radii, k)

    def __eq__(self, other):
        return isinstance(other, RhoAssignment) and np.array_equal(self._radii, other.radii)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None


def greedy_rho(f, lattice, delta=None, k=1, width=None):
    """Per cell, the radius maximizing the min-over-faces average; ties go to the smallest"""
    delta = lattice.delta if delta is None else as_delta(delta)
    radii = np.asarray(enumerate_radii(delta))
    width = float(delta) if width is None else float(width)
    points = lattice.centers

    check_margin(f.spec, points, radii[-1] + width)
    minima = _face_averages(f.abs().table(), points, radii, width, k).min(axis=2)
    return RhoAssignment(lattice, radii[np.argmax(minima, axis=1)])


def selected_face_bounds(rho, choices, width, k=1):
    lattice = rho.lattice
    lower, upper = face_box_bounds(lattice.centers, rho.radii, width, lattice.n, k)
    rows = np.arange(lattice.u)
    choices = np.asarray(choices)
    return lower[rows, choices], upper[rows, choices]


def linearized_maximal(f, rho, sel, delta=None, width=None, k=1):
    """
    Average of f over the selected fattened face of the skeleton
    S(x_i, rho(x_i)), constant on each cell Q_z(i)
    """
    lattice = rho.lattice
    delta = lattice.delta if delta is None else as_delta(delta)
    width = float(delta) if width is None else float(width)
    choices = sel.choices if hasattr(sel, 'choices') else sel
    if len(choices) != lattice.u:
        raise SelectionError('Face selection does not match the radius assignment', choices=len(choices), u=lattice.u)

    check_margin(f.spec, lattice.centers, float(np.max(rho.radii)) + width)
    lower, upper = selected_face_bounds(rho, choices, width, k)
    averages = f.table().box_averages(lower, upper)
    return MaximalField(lattice.centers, averages, lattice.grid_spec(), rho.radii)


def max_face_choices(f, rho, width, k=1):
    """Per cell, the face with the largest average; ties go to the smallest index"""
    lattice = rho.lattice
    lower, upper = face_box_bounds(lattice.centers, rho.radii, width, lattice.n, k)
    averages = f.abs().table().box_averages(lower, upper)
    return np.argmax(averages, axis=1)


def seven_cube(z):
    """7Q_z, the concentric cube of side 7"""
    return Box([value - 3 for value in z], [value + 4 for value in z])


def check_support(f, region):
    outside = np.ones(f.spec.dims, dtype=bool)
    outside[f.spec.slices(region)] = False
    if (f.values[outside] != 0).any():
        index = tuple(int(i) for i in np.argwhere(outside & (f.values != 0))[0])
        raise SupportError('f is not supported in 7Q_z', cell=index)


def check_local_domination(f, w, p, z, delta, k=1, threads=1, tol=RELATIVE_TOLERANCE, dense=False):
    """
    ||M_delta f||_{L^p(Q_z, w)} against 3 ||M~_{rho, 3 delta} f||_{L^p(Q_z, w)}
    with the greedy radii and the largest-average face per cell. M_delta is
    taken at the delta-cell centres, or at the lower-left node of every
    quadrature cell of Q_z when `dense` is set.
    """
    from skelmax.verify.reports import CheckReport

    delta = as_delta(delta)
    p = as_exponent(p)
    check_support(f, seven_cube(z))
    lattice = CellLattice(z, delta)

    target = lattice
    if dense:
        h = f.spec.h
        target = GridSpec(z, h, [int(round(1.0 / h))] * len(z))
    maximal = skeleton_maximal(f, delta, target, k=k, threads=threads)
    lhs = maximal.norm(w, p)

    rho = greedy_rho(f, lattice, delta, k=k)
    wide = LOCAL_DOMINATION_FACTOR * float(delta)
    choices = max_face_choices(f, rho, wide, k)
    linear = linearized_maximal(f.abs(), rho, choices, delta, width=wide, k=k)
    rhs = LOCAL_DOMINATION_FACTOR * linear.norm(w, p)

    params = {'p': p, 'delta': str(delta), 'z': list(z), 'k': k, 'mode': 'dense' if dense else 'centres'}
    return CheckReport('local-domination', params, lhs, rhs, tolerance=tol)


class CubeFamily(object):
    """
    Axis-parallel cubes with corners on the quadrature lattice of `spec`,
    side lengths given in cells, lying inside the grid
    """

    def __init__(self, spec, sides=None, region=None):
        limit = min(spec.dims)
        sides = list(range(1, limit + 1)) if sides is None else sorted(set(int(s) for s in sides))
        if not sides or sides[0] < 1 or sides[-1] > limit:
            raise SkelmaxError('Cube sides must fit the grid', sides=sides, limit=limit)

        self._spec = spec
        self._sides = sides
        self._region = spec.bounds if region is None else region

    @property
    def spec(self):
        return self._spec

    @property
    def sides(self):
        return self._sides

    @property
    def region(self):
        return self._region

    def starts(self, side):
        """(N, n) lower corner indices of every cube with this side"""
        shape = [d - side + 1 for d in self._spec.dims]
        return np.indices(shape).reshape(len(shape), -1, order='F').T

    def cube_averages(self, table, side, refine=False):
        """Averages of every cube with this side, shaped by their lower corners"""
        shape = tuple(d - side + 1 for d in self._spec.dims)
        lo = np.indices(shape)
        lo = np.moveaxis(lo, 0, -1)
        return table.index_sums(lo, lo + side, refine) / float(side ** self._spec.n)

    def boxes(self):
        h = self._spec.h
        origin = np.asarray(self._spec.origin)
        for side in self._sides:
            for start in self.starts(side):
                lower = origin + h * start
                yield Box(lower, lower + h * side)

    def __len__(self):
        return int(sum(np.prod([d - s + 1 for d in self._spec.dims]) for s in self._sides))


def _padded_window_max(values, side):
    """Per cell, max over the cubes of this side containing it"""
    result = values
    for axis in range(values.ndim):
        pad = [(0, 0)] * values.ndim
        pad[axis] = (side - 1, side - 1)
        padded = np.pad(result, pad, mode='constant', constant_values=-np.inf)
        result = sliding_max(padded, side, axis)
    return result


def hl_maximal(f, eval_points=None, cube_family=None):
    """
    Sup over family cubes containing each evaluation cell of the average of
    |f|, by sliding maxima of per-side cube averages
    """
    family = CubeFamily(f.spec) if cube_family is None else cube_family
    spec = f.spec
    table = f.abs().table()

    best = np.full(spec.dims, -np.inf)
    for side in family.sides:
        best = np.maximum(best, _padded_window_max(family.cube_averages(table, side), side))

    if eval_points is None:
        lo, hi = spec.snap_box(family.region)
        window = tuple(slice(a, b) for a, b in zip(lo, hi))
        region_spec = GridSpec([o + spec.h * a for o, a in zip(spec.origin, lo)], spec.h,
                               [b - a for a, b in zip(lo, hi)])
        values = best[window].reshape(-1, order='F')
        return MaximalField(region_spec.cell_lower_corners() + spec.h / 2.0, values, region_spec)

    points = np.atleast_2d(np.asarray(eval_points, dtype=float))
    cells = spec.cell_of(points)
    if ((cells < 0) | (cells >= np.asarray(spec.dims))).any():
        raise MarginError('Evaluation point outside the grid')
    values = best[tuple(cells[:, axis] for axis in range(spec.n))]
    return MaximalField(points, values)
