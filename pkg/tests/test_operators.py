from fractions import Fraction
from unittest import TestCase

import numpy as np

from skelmax.errors import MarginError, SelectionError, SkelmaxError, SupportError
from skelmax.geometry import CellLattice, Skeleton
from skelmax.grid import GridSpec, SampledField, constant_field, indicator_field, local_grid
from skelmax.operators import (CubeFamily, RhoAssignment, check_local_domination, check_support, greedy_rho,
                               hl_maximal, linearized_maximal, max_face_choices, seven_cube, skeleton_maximal)

DELTA = Fraction(1, 4)


class TestSkeletonMaximal(TestCase):
    def setUp(self):
        self.spec = local_grid((0, 0), DELTA, refinement=1)
        self.lattice = CellLattice((0, 0), DELTA)

    def test_constant_field_is_fixed(self):
        maximal = skeleton_maximal(constant_field(self.spec, 3.0), DELTA, self.lattice)
        np.testing.assert_allclose(maximal.values, 3.0)
        self.assertEqual(maximal.to_field().spec, self.lattice.grid_spec())

    def test_norm_of_constant(self):
        maximal = skeleton_maximal(constant_field(self.spec, 2.0), DELTA, self.lattice)
        self.assertAlmostEqual(maximal.norm(None, 2), 2.0)
        self.assertAlmostEqual(maximal.norm(constant_field(self.spec, 4.0), 1), 8.0)

    def test_skeleton_indicator_peaks_at_its_centre(self):
        center = tuple(self.lattice.centers[5])
        boxes = [face.box for face in Skeleton(center, 1.5).faces(DELTA)]
        f = indicator_field(self.spec, boxes)
        maximal = skeleton_maximal(f, DELTA, self.lattice)
        self.assertAlmostEqual(maximal.values[5], 1.0)
        self.assertEqual(maximal.radii[5], 1.5)
        self.assertTrue((maximal.values <= 1.0 + 1e-12).all())

    def test_threads_do_not_change_values(self):
        rng = np.random.default_rng(3)
        f = SampledField(self.spec, rng.random(self.spec.dims))
        single = skeleton_maximal(f, DELTA, self.lattice, threads=1)
        pooled = skeleton_maximal(f, DELTA, self.lattice, threads=4)
        np.testing.assert_array_equal(single.values, pooled.values)

    def test_margin(self):
        small = GridSpec((0.0, 0.0), 0.125, (8, 8))
        with self.assertRaises(MarginError):
            skeleton_maximal(constant_field(small), DELTA, self.lattice)


class TestRhoAssignment(TestCase):
    def setUp(self):
        self.lattice = CellLattice((0, 0), DELTA)

    def test_constant(self):
        rho = RhoAssignment.constant(self.lattice, 1.25)
        self.assertEqual(rho.radii.tolist(), [1.25] * 16)

    def test_radius_off_the_grid(self):
        with self.assertRaises(SkelmaxError):
            RhoAssignment(self.lattice, [1.1] * 16)

    def test_wrong_length(self):
        with self.assertRaises(SelectionError):
            RhoAssignment(self.lattice, [1.0] * 3)

    def test_random_is_seeded(self):
        first = RhoAssignment.random(self.lattice, np.random.default_rng(5))
        second = RhoAssignment.random(self.lattice, np.random.default_rng(5))
        self.assertEqual(first, second)


class TestLinearizedMaximal(TestCase):
    def setUp(self):
        self.spec = local_grid((0, 0), DELTA, refinement=1)
        self.lattice = CellLattice((0, 0), DELTA)

    def test_constant_field(self):
        rho = RhoAssignment.constant(self.lattice, 2.0)
        linear = linearized_maximal(constant_field(self.spec, 5.0), rho, [0] * 16)
        np.testing.assert_allclose(linear.values, 5.0)

    def test_selection_length(self):
        rho = RhoAssignment.constant(self.lattice)
        with self.assertRaises(SelectionError):
            linearized_maximal(constant_field(self.spec), rho, [0, 1])

    def test_dominated_by_the_maximal_function(self):
        rng = np.random.default_rng(11)
        f = SampledField(self.spec, rng.random(self.spec.dims))
        rho = greedy_rho(f, self.lattice)
        maximal = skeleton_maximal(f, DELTA, self.lattice)
        np.testing.assert_array_equal(rho.radii, maximal.radii)

        choices = max_face_choices(f, rho, float(DELTA))
        linear = linearized_maximal(f, rho, choices)
        self.assertTrue((maximal.values <= linear.values + 1e-12).all())


class TestLocalDomination(TestCase):
    def setUp(self):
        self.spec = local_grid((0, 0), DELTA, refinement=1)

    def test_constant_field(self):
        report = check_local_domination(constant_field(self.spec), constant_field(self.spec), 2, (0, 0), DELTA)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.lhs, 1.0)
        self.assertAlmostEqual(report.rhs, 3.0)

    def test_random_field(self):
        rng = np.random.default_rng(7)
        f = SampledField(self.spec, rng.random(self.spec.dims))
        w = SampledField(self.spec, 0.5 + rng.random(self.spec.dims))
        self.assertTrue(check_local_domination(f, w, 2, (0, 0), DELTA).passed)

    def test_dense_constant_field(self):
        report = check_local_domination(constant_field(self.spec), constant_field(self.spec), 2, (0, 0), DELTA,
                                        dense=True)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.lhs, 1.0)
        self.assertAlmostEqual(report.rhs, 3.0)
        self.assertEqual(report.params['mode'], 'dense')

    def test_dense_random_field(self):
        rng = np.random.default_rng(11)
        f = SampledField(self.spec, rng.random(self.spec.dims))
        w = SampledField(self.spec, 0.5 + rng.random(self.spec.dims))
        centres = check_local_domination(f, w, 2, (0, 0), DELTA)
        dense = check_local_domination(f, w, 2, (0, 0), DELTA, dense=True)
        self.assertTrue(dense.passed)
        self.assertEqual(centres.params['mode'], 'centres')
        self.assertAlmostEqual(dense.rhs, centres.rhs)

    def test_support_outside_seven_cube(self):
        wide = local_grid((0, 0), DELTA, refinement=1, scale=9)
        with self.assertRaises(SupportError):
            check_support(constant_field(wide), seven_cube((0, 0)))


class TestHardyLittlewood(TestCase):
    def test_single_spike(self):
        spec = GridSpec((0.0,), 1.0, (5,))
        f = SampledField(spec, [0.0, 0.0, 1.0, 0.0, 0.0])
        values = hl_maximal(f).values
        np.testing.assert_allclose(values, [1 / 3.0, 1 / 2.0, 1.0, 1 / 2.0, 1 / 3.0])

    def test_matches_brute_force_in_two_dimensions(self):
        spec = GridSpec((0.0, 0.0), 1.0, (4, 3))
        values = np.arange(12, dtype=float).reshape(4, 3) % 5
        f = SampledField(spec, values)
        family = CubeFamily(spec)

        expected = np.zeros((4, 3))
        for i in range(4):
            for j in range(3):
                best = 0.0
                for side in family.sides:
                    for a in range(max(0, i - side + 1), min(i, 4 - side) + 1):
                        for b in range(max(0, j - side + 1), min(j, 3 - side) + 1):
                            best = max(best, values[a:a + side, b:b + side].mean())
                expected[i, j] = best

        np.testing.assert_allclose(hl_maximal(f, cube_family=family).to_field().values, expected)

    def test_at_points(self):
        spec = GridSpec((0.0,), 1.0, (5,))
        f = SampledField(spec, [0.0, 0.0, 1.0, 0.0, 0.0])
        self.assertAlmostEqual(float(hl_maximal(f, eval_points=[[1.5]]).values[0]), 0.5)
        with self.assertRaises(MarginError):
            hl_maximal(f, eval_points=[[7.0]])

ORACLE_DELTA = Fraction(1, 8)


def loop_cells(spec, lower, upper):
    """Cells whose midpoints lie in [lower, upper), one axis at a time"""
    h = spec.h
    xs = [i for i in range(spec.dims[0]) if lower[0] <= spec.origin[0] + h * (i + 0.5) < upper[0]]
    ys = [j for j in range(spec.dims[1]) if lower[1] <= spec.origin[1] + h * (j + 0.5) < upper[1]]
    return xs, ys


def loop_average(rows, spec, lower, upper):
    xs, ys = loop_cells(spec, lower, upper)
    total = 0.0
    for i in xs:
        for j in ys:
            total += rows[i][j]
    return total / (len(xs) * len(ys))


def loop_faces(cx, cy, r, width):
    """Bottom, top, left and right fattened sides of the square of half-side r"""
    return [((cx - r - width, cy - r - width), (cx + r + width, cy - r + width)),
            ((cx - r - width, cy + r - width), (cx + r + width, cy + r + width)),
            ((cx - r - width, cy - r - width), (cx - r + width, cy + r + width)),
            ((cx + r - width, cy - r - width), (cx + r + width, cy + r + width))]


def loop_centres(m):
    """Cell centres of the unit square at z = 0, x index fastest"""
    return [((a + 0.5) / m, (b + 0.5) / m) for b in range(m) for a in range(m)]


class TestLoopOracles(TestCase):
    """Operators against nested loops over cells, radii and faces at h = 1/32"""

    def setUp(self):
        self.spec = local_grid((0, 0), ORACLE_DELTA, refinement=2)
        self.lattice = CellLattice((0, 0), ORACLE_DELTA)
        self.rng = np.random.default_rng(29)
        self.f = SampledField(self.spec, self.rng.random(self.spec.dims))
        self.rows = self.f.values.tolist()
        self.width = float(ORACLE_DELTA)

    def test_grid_spacing(self):
        self.assertEqual(self.spec.h, 1 / 32.0)

    def test_skeleton_maximal(self):
        m = ORACLE_DELTA.denominator
        radii = [1 + j / float(m) for j in range(m + 1)]
        expected = []
        for cx, cy in loop_centres(m):
            best = -1.0
            for r in radii:
                smallest = min(loop_average(self.rows, self.spec, lower, upper)
                               for lower, upper in loop_faces(cx, cy, r, self.width))
                best = max(best, smallest)
            expected.append(best)

        maximal = skeleton_maximal(self.f, ORACLE_DELTA, self.lattice)
        np.testing.assert_allclose(maximal.values, expected, rtol=1e-12, atol=0)

    def test_linearized_maximal(self):
        rho = RhoAssignment.random(self.lattice, self.rng)
        choices = self.rng.integers(0, 4, size=self.lattice.u)
        expected = []
        for (cx, cy), r, choice in zip(loop_centres(ORACLE_DELTA.denominator), rho.radii, choices):
            lower, upper = loop_faces(cx, cy, float(r), self.width)[choice]
            expected.append(loop_average(self.rows, self.spec, lower, upper))

        linear = linearized_maximal(self.f, rho, choices)
        np.testing.assert_allclose(linear.values, expected, rtol=1e-12, atol=0)

    def test_linearized_maximal_wide_faces(self):
        rho = RhoAssignment.random(self.lattice, self.rng)
        choices = self.rng.integers(0, 4, size=self.lattice.u)
        wide = 3 * self.width
        expected = []
        for (cx, cy), r, choice in zip(loop_centres(ORACLE_DELTA.denominator), rho.radii, choices):
            lower, upper = loop_faces(cx, cy, float(r), wide)[choice]
            expected.append(loop_average(self.rows, self.spec, lower, upper))

        linear = linearized_maximal(self.f, rho, choices, width=wide)
        np.testing.assert_allclose(linear.values, expected, rtol=1e-12, atol=0)
