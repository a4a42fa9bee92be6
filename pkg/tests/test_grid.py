import io
import os
import shutil
import tempfile
from unittest import TestCase

import numpy as np
from hypothesis import given, settings, strategies as st

from skelmax.errors import DegenerateBoxError, FieldError, InvalidDeltaError
from skelmax.grid import (Box, GridSpec, PrefixTable, RangeMax, SampledField, box_sum, build_field, constant_field,
                          indicator_field, local_grid, lp_norm, read_grid_csv, sliding_max, write_grid_csv)


def brute_window_sum(values, lo, hi):
    return sum(values[i, j] for i in range(lo[0], hi[0]) for j in range(lo[1], hi[1]))


@st.composite
def arrays_and_ranges(draw):
    nx = draw(st.integers(min_value=1, max_value=6))
    ny = draw(st.integers(min_value=1, max_value=6))
    values = draw(st.lists(st.integers(min_value=-50, max_value=50), min_size=nx * ny, max_size=nx * ny))
    x = sorted(draw(st.lists(st.integers(min_value=0, max_value=nx), min_size=2, max_size=2)))
    y = sorted(draw(st.lists(st.integers(min_value=0, max_value=ny), min_size=2, max_size=2)))
    return np.array(values, dtype=float).reshape(nx, ny), (x[0], y[0]), (x[1], y[1])


class TestBox(TestCase):
    def test_cube_and_measure(self):
        box = Box.cube((1.0, 2.0), 0.5)
        self.assertEqual(box.lower, (0.5, 1.5))
        self.assertEqual(box.upper, (1.5, 2.5))
        self.assertAlmostEqual(box.measure, 1.0)
        self.assertEqual(box.center, (1.0, 2.0))

    def test_half_open_membership(self):
        box = Box((0, 0), (1, 1))
        self.assertTrue(box.contains((0.0, 0.5)))
        self.assertFalse(box.contains((1.0, 0.5)))

    def test_intersect_without_interior_is_none(self):
        self.assertIsNone(Box((0, 0), (1, 1)).intersect(Box((1, 0), (2, 1))))
        self.assertEqual(Box((0, 0), (2, 2)).intersect(Box((1, 1), (3, 3))), Box((1, 1), (2, 2)))

    def test_inverted_corners_raise(self):
        with self.assertRaises(FieldError):
            Box((1, 0), (0, 1))


class TestGridSpec(TestCase):
    def test_rejects_bad_spacing_and_dims(self):
        with self.assertRaises(FieldError):
            GridSpec((0, 0), 0, (2, 2))
        with self.assertRaises(FieldError):
            GridSpec((0, 0), 0.5, (0, 2))

    def test_snap_uses_cell_midpoints(self):
        spec = GridSpec((0.0,), 0.25, (4,))
        self.assertEqual(spec.snap_box(Box((0.1,), (0.6,))), ((0,), (2,)))
        self.assertEqual(spec.snap_box(Box((0.0,), (0.125,))), ((0,), (0,)))
        self.assertAlmostEqual(spec.snapped_measure(Box((0.1,), (0.6,))), 0.5)

    def test_snap_clips_to_the_grid(self):
        spec = GridSpec((0.0, 0.0), 0.5, (2, 2))
        self.assertEqual(spec.snap_box(Box((-3, -3), (9, 9))), ((0, 0), (2, 2)))

    def test_header_round_trip(self):
        spec = GridSpec((-3.0, -3.0), 0.125, (56, 56))
        self.assertEqual(GridSpec.from_header(spec.to_header()), spec)

    def test_bad_header(self):
        with self.assertRaises(FieldError):
            GridSpec.from_header('origin=0 h=1')

    def test_cell_order_is_x_fastest(self):
        spec = GridSpec((0.0, 0.0), 1.0, (2, 3))
        corners = spec.cell_lower_corners()
        self.assertEqual(corners[1].tolist(), [1.0, 0.0])
        self.assertEqual(corners[2].tolist(), [0.0, 1.0])


class TestLocalGrid(TestCase):
    def test_seven_cube_around_square(self):
        spec = local_grid((0, 0), '1/2', refinement=1)
        self.assertEqual(spec.origin, (-3.0, -3.0))
        self.assertAlmostEqual(spec.h, 0.25)
        self.assertEqual(spec.dims, (28, 28))

    def test_rejects_bad_delta(self):
        with self.assertRaises(InvalidDeltaError):
            local_grid((0, 0), '2/7')


class TestSampledField(TestCase):
    def test_values_are_read_only(self):
        field = constant_field(GridSpec((0, 0), 0.5, (2, 2)), 3.0)
        with self.assertRaises(ValueError):
            field.values[0, 0] = 1.0

    def test_shape_mismatch(self):
        with self.assertRaises(FieldError):
            SampledField(GridSpec((0, 0), 0.5, (2, 2)), np.zeros((3, 2)))

    def test_non_finite_sampler(self):
        with self.assertRaises(FieldError):
            build_field(GridSpec((0.0,), 0.25, (4,)), lambda x: np.log(x - 0.5))

    def test_indicator_field(self):
        spec = GridSpec((0, 0), 0.5, (4, 4))
        field = indicator_field(spec, [Box((0, 0), (1, 0.5))])
        self.assertEqual(field.values.sum(), 2.0)


class TestPrefixTable(TestCase):
    @given(arrays_and_ranges())
    @settings(max_examples=60, deadline=None)
    def test_index_sums_match_direct_sums(self, case):
        values, lo, hi = case
        spec = GridSpec((0.0, 0.0), 1.0, values.shape)
        table = PrefixTable(spec, values)
        self.assertEqual(float(table.index_sums(lo, hi)), brute_window_sum(values, lo, hi))

    def test_box_sum_scales_by_cell_volume(self):
        spec = GridSpec((0.0, 0.0), 0.5, (4, 4))
        field = constant_field(spec, 2.0)
        self.assertAlmostEqual(field.table().box_sum(Box((0, 0), (1, 1))), 2.0)
        self.assertAlmostEqual(field.table().box_average(Box((0, 0), (1, 1))), 2.0)

    def test_empty_box_flag(self):
        field = constant_field(GridSpec((0.0, 0.0), 0.5, (4, 4)))
        value, empty = box_sum(field.table(), Box((0.1, 0.1), (0.2, 0.2)), flag=True)
        self.assertEqual(value, 0.0)
        self.assertTrue(empty)

    def test_degenerate_average_raises(self):
        field = constant_field(GridSpec((0.0, 0.0), 0.5, (4, 4)))
        with self.assertRaises(DegenerateBoxError):
            field.table().box_average(Box((0.1, 0.1), (0.2, 0.2)))

    def test_refine_recovers_cancelled_sums(self):
        values = np.full((4, 4), 1e12)
        values[3, 3] = 1.0
        table = PrefixTable(GridSpec((0.0, 0.0), 1.0, (4, 4)), values)
        self.assertEqual(float(table.index_sums((3, 3), (4, 4), refine=True)), 1.0)

    def test_small_boxes_of_a_large_real_field(self):
        values = np.random.RandomState(3).uniform(0.5, 2.0, size=(224, 224))
        table = PrefixTable(GridSpec((0.0, 0.0), 1.0, values.shape), values)
        for lo in [(96, 96), (120, 100), (200, 210)]:
            hi = (lo[0] + 4, lo[1] + 4)
            direct = float(np.sum(values[lo[0]:hi[0], lo[1]:hi[1]]))
            self.assertLess(abs(float(table.index_sums(lo, hi)) / direct - 1.0), 1e-13)


class TestLpNorm(TestCase):
    def test_constant_field(self):
        spec = GridSpec((0.0, 0.0), 0.25, (4, 4))
        self.assertAlmostEqual(lp_norm(constant_field(spec, 2.0), None, 2), 2.0)
        self.assertAlmostEqual(lp_norm(constant_field(spec, 2.0), constant_field(spec, 4.0), 2), 4.0)

    def test_region(self):
        spec = GridSpec((0.0, 0.0), 0.5, (4, 4))
        self.assertAlmostEqual(lp_norm(constant_field(spec), None, 1, Box((0, 0), (1, 1))), 1.0)

    def test_mismatched_grids(self):
        with self.assertRaises(FieldError):
            lp_norm(constant_field(GridSpec((0, 0), 0.5, (2, 2))), constant_field(GridSpec((0, 0), 0.25, (2, 2))), 2)


class TestGridCsv(TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def test_file_round_trip(self):
        spec = GridSpec((-1.0, 0.5), 0.25, (3, 2))
        field = SampledField(spec, np.arange(6, dtype=float).reshape(3, 2) / 7.0)
        path = os.path.join(self.tmp, 'grid.csv')
        write_grid_csv(field, path)
        self.assertEqual(read_grid_csv(path), field)

    def test_rows_run_along_x(self):
        spec = GridSpec((0.0, 0.0), 1.0, (2, 2))
        text = write_grid_csv(SampledField(spec, [[1.0, 3.0], [2.0, 4.0]]), stream=io.StringIO())
        self.assertEqual(text.splitlines()[1:], ['1.0,2.0', '3.0,4.0'])

    def test_value_count_mismatch(self):
        path = os.path.join(self.tmp, 'short.csv')
        with open(path, 'w') as fh:
            fh.write(GridSpec((0.0,), 1.0, (3,)).to_header() + '\n1.0,2.0\n')
        with self.assertRaises(FieldError):
            read_grid_csv(path)


class TestSlidingMax(TestCase):
    @given(st.lists(st.integers(min_value=-100, max_value=100), min_size=1, max_size=30), st.data())
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, values, data):
        size = data.draw(st.integers(min_value=1, max_value=len(values)))
        expected = [max(values[i:i + size]) for i in range(len(values) - size + 1)]
        self.assertEqual(sliding_max(np.array(values, dtype=float), size).tolist(), expected)

    def test_window_too_large(self):
        with self.assertRaises(FieldError):
            sliding_max(np.zeros(3), 4)

    def test_range_max(self):
        values = np.arange(20, dtype=float).reshape(4, 5) % 7
        ranges = RangeMax(values)
        lo = np.array([[0, 0], [1, 2], [2, 1]])
        hi = np.array([[4, 5], [3, 4], [3, 2]])
        expected = [values[a:c, b:d].max() for (a, b), (c, d) in zip(lo, hi)]
        self.assertEqual(ranges.index_max(lo, hi).tolist(), expected)

    def test_range_max_rejects_empty(self):
        with self.assertRaises(DegenerateBoxError):
            RangeMax(np.ones((2, 2))).index_max(np.array([[1, 1]]), np.array([[1, 2]]))
