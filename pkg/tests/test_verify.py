from fractions import Fraction
from unittest import TestCase

import numpy as np
from hypothesis import given, settings, strategies as st

from skelmax.cmds.verify.check_runner import CheckRunner
from skelmax.errors import InvalidExponentError, SelectionError, SkelmaxError
from skelmax.geometry import CellLattice, enumerate_radii
from skelmax.grid import SampledField, constant_field, local_grid, lp_norm
from skelmax.operators import RhoAssignment, greedy_rho
from skelmax.run_config import RunConfig
from skelmax.selection import select_faces
from skelmax.verify.checks import (buckley_stability, check_ap_embedding, check_buckley, check_necessary_chain,
                                   check_selection, check_sufficient)
from skelmax.verify.duality import (check_duality_prop, check_sufficient_local, duality_coefficients,
                                    ordered_classes, overlap_counts, sufficiency_exponent, unweighted_exponent)
from skelmax.verify.family import FunctionFamily, plane_modulus, residue_cover, shared_plane_radii
from skelmax.verify.norms import empirical_opnorm
from skelmax.verify.reports import CheckReport, ScanTable, worst_report
from skelmax.weights import make_weight

DELTA = Fraction(1, 4)


def small_family(w, p=None, seed=7):
    return FunctionFamily(w.spec, (0, 0), DELTA, w=w, p=p, seed=seed, skeletons=4, boxes=2, fields=2)


class TestReports(TestCase):
    def test_pass_within_tolerance(self):
        report = CheckReport('duality', {'p': 2.0}, 1.0 + 1e-12, 1.0)
        self.assertTrue(report.passed)
        self.assertFalse(CheckReport('duality', {}, 1.1, 1.0).passed)

    def test_ledger_row(self):
        report = CheckReport('duality', {'p': 2.0}, 1.0, 3.0)
        check, digest, lhs, rhs, slack, passed, seconds = report.ledger_row()
        self.assertEqual(check, 'duality')
        self.assertEqual(len(digest), 12)
        self.assertEqual((lhs, rhs, slack, passed, seconds), ('1.0', '3.0', '2.0', 'true', ''))

        report.seconds = 0.5
        self.assertEqual(report.ledger_row()[-1], '0.500')

    def test_digest_ignores_key_order(self):
        first = CheckReport('x', {'p': 2.0, 'delta': '1/8'}, 0, 1)
        second = CheckReport('x', {'delta': '1/8', 'p': 2.0}, 0, 1)
        self.assertEqual(first.digest, second.digest)

    def test_worst_of_several(self):
        reports = [CheckReport('x', {}, 1.0, 4.0), CheckReport('x', {}, 2.0, 2.5), CheckReport('x', {}, 3.0, 2.0)]
        folded = worst_report('x', {}, reports)
        self.assertFalse(folded.passed)
        self.assertEqual(folded.extras['worst'], 2)
        self.assertEqual(folded.extras['failures'], 1)
        self.assertEqual((folded.lhs, folded.rhs), (3.0, 2.0))

    def test_empty_is_vacuous(self):
        folded = worst_report('x', {}, [])
        self.assertTrue(folded.passed)
        self.assertTrue(folded.extras['vacuous'])
        self.assertEqual(folded.extras['instances'], 0)

    def test_scan_table(self):
        table = ScanTable('monotone', ['p', 'constant'], [[2.0, 0.1], [3.0, 0.05]], True, {'delta': '1/4'})
        self.assertEqual(table.column('constant'), [0.1, 0.05])
        self.assertEqual(table.to_dict()['delta'], '1/4')


class TestDualityCoefficients(TestCase):
    @given(st.lists(st.floats(min_value=0.0, max_value=1e6), min_size=1, max_size=20).filter(lambda a: max(a) > 0),
           st.sampled_from([1.25, 1.5, 2.0, 3.0, 7.0]))
    @settings(max_examples=80, deadline=None)
    def test_extremal_pair(self, a, p):
        a = np.asarray(a)
        b = duality_coefficients(a, p)
        q = p / (p - 1.0)
        self.assertAlmostEqual(float(np.sum(b ** q)), 1.0, places=9)
        top = a.max()
        norm = float(np.sum((a / top) ** p) ** (1.0 / p))
        self.assertAlmostEqual(float(np.sum(a / top * b)) / norm, 1.0, places=9)

    def test_subnormal_entries(self):
        for p in (1.25, 3.0):
            b = duality_coefficients([2.2250738585072014e-308], p)
            self.assertAlmostEqual(float(b[0]), 1.0)
            b = duality_coefficients([5e-324, 5e-324], p)
            self.assertAlmostEqual(float(np.sum(b ** (p / (p - 1.0)))), 1.0)

    def test_rejects_bad_vectors(self):
        with self.assertRaises(SkelmaxError):
            duality_coefficients([1.0, -1.0], 2)
        with self.assertRaises(SkelmaxError):
            duality_coefficients([0.0, 0.0], 2)
        with self.assertRaises(InvalidExponentError):
            duality_coefficients([1.0], 1)

    def test_exponents(self):
        self.assertAlmostEqual(sufficiency_exponent(2, 1, 2), -5 / 8.0)
        self.assertAlmostEqual(sufficiency_exponent(2, 1, 1), -5 / 4.0)
        self.assertAlmostEqual(unweighted_exponent(2, 1, 2), 1 / 8.0)


class TestDualityProposition(TestCase):
    def setUp(self):
        self.spec = local_grid((0, 0), DELTA, refinement=1)
        self.lattice = CellLattice((0, 0), DELTA)
        rng = np.random.default_rng(13)
        self.f = SampledField(self.spec, rng.random(self.spec.dims))
        self.w = SampledField(self.spec, rng.uniform(0.5, 2.0, self.spec.dims))
        self.rho = RhoAssignment.random(self.lattice, rng)
        self.sel = select_faces(self.rho.skeletons(), DELTA)

    def test_vertical_class_first(self):
        classes = ordered_classes(self.sel)
        self.assertEqual(classes[0][0], (1,))
        self.assertEqual(sum(len(members) for _, members in classes), self.lattice.u)

    def test_random_instance_holds(self):
        report = check_duality_prop(self.f, self.w, 2, self.rho, self.sel, (0, 0))
        self.assertTrue(report.passed)
        self.assertGreater(report.extras['instances'], 0)

    def test_holds_for_other_exponents(self):
        for p in (1.5, 3.0):
            self.assertTrue(check_duality_prop(self.f, self.w, p, self.rho, self.sel, (0, 0)).passed)

    def test_zero_function_is_vacuous(self):
        report = check_duality_prop(constant_field(self.spec, 0.0), self.w, 2, self.rho, self.sel, (0, 0))
        self.assertTrue(report.passed)
        self.assertTrue(report.extras['vacuous'])

    def test_selection_length_mismatch(self):
        short = select_faces(self.rho.skeletons()[:3], DELTA)
        with self.assertRaises(SelectionError):
            check_duality_prop(self.f, self.w, 2, self.rho, short, (0, 0))

    def test_rejects_p_one(self):
        with self.assertRaises(InvalidExponentError):
            check_duality_prop(self.f, self.w, 1, self.rho, self.sel, (0, 0))


class TestLocalSufficiency(TestCase):
    def setUp(self):
        self.spec = local_grid((0, 0), DELTA, refinement=1)
        self.lattice = CellLattice((0, 0), DELTA)
        rng = np.random.default_rng(17)
        self.f = SampledField(self.spec, rng.random(self.spec.dims))
        self.w = make_weight('constant', self.spec)

    def test_constant_weight(self):
        rho = greedy_rho(self.f, self.lattice)
        sel = select_faces(rho.skeletons(), DELTA)
        report = check_sufficient_local(self.f, self.w, 2, rho, sel, (0, 0))
        self.assertTrue(report.passed)
        self.assertLessEqual(report.extras['max_overlap'], report.extras['overlap_bound'])

    def test_needs_integer_conjugate(self):
        rho = RhoAssignment.constant(self.lattice)
        sel = select_faces(rho.skeletons(), DELTA)
        with self.assertRaises(InvalidExponentError):
            check_sufficient_local(self.f, self.w, 3, rho, sel, (0, 0))

    def test_overlap_of_identical_faces(self):
        rho = RhoAssignment.constant(self.lattice, 1.0)
        faces = select_faces([rho.skeletons()[0]] * 5, DELTA).faces
        self.assertEqual(overlap_counts(faces).tolist(), [2, 1, 1, 1, 2])
        self.assertEqual(len(overlap_counts([])), 0)


class TestFunctionFamily(TestCase):
    def setUp(self):
        self.w = make_weight('constant', local_grid((0, 0), DELTA, refinement=1))

    def test_member_order(self):
        family = small_family(self.w, p=2)
        names = family.names()
        self.assertEqual(len(names), len(family))
        self.assertEqual(len(family), 1 + 1 + 4 + 2 + 2 + 3)
        self.assertEqual(names[:3], ['constant', 'union', 'skeleton-0'])
        self.assertEqual(names[-3:], ['dual-1', 'dual-2', 'dual-4'])

    def test_no_dual_members_without_p(self):
        family = small_family(self.w)
        self.assertFalse(any(name.startswith('dual') for name in family.names()))
        self.assertEqual(len(family), 10)

    def test_seeded(self):
        first = [member.field for member in small_family(self.w, seed=3)]
        second = [member.field for member in small_family(self.w, seed=3)]
        self.assertEqual(first, second)

    def test_whole_lattice_when_it_is_small(self):
        family = FunctionFamily(self.w.spec, (0, 0), DELTA, skeletons=100, boxes=0, fields=0)
        self.assertEqual(len(family), 1 + 1 + 16)

    def test_union_covers_every_skeleton_face(self):
        union = next(member for member in small_family(self.w) if member.name == 'union')
        self.assertFalse(union.periodic)
        self.assertEqual(set(np.unique(union.field.values).tolist()), {0.0, 1.0})
        self.assertGreater(lp_norm(union.field, None, 1), 1.0)


class TestSharedPlanes(TestCase):
    def test_plane_modulus(self):
        self.assertEqual([plane_modulus(m) for m in [1, 2, 4, 8, 16, 64, 256]], [1, 1, 2, 2, 4, 8, 8])
        self.assertEqual(plane_modulus(256, cap=16), 16)

    def test_residue_cover(self):
        for q in [2, 4, 8]:
            members, good = residue_cover(q, 2)
            for i in range(q):
                for j in range(q):
                    self.assertTrue(any(all((c + s) % q in members and (c - s) % q in members for c in (i, j))
                                        for s in range(q)))
            self.assertEqual(good.shape, (q, q))

    def test_face_planes_share_residues(self):
        lattice = CellLattice((0, 0), Fraction(1, 16))
        radii, residues = shared_plane_radii(lattice)
        q = plane_modulus(lattice.m)
        self.assertEqual(len(radii), lattice.u)
        steps = np.round(radii * lattice.m).astype(int)
        self.assertTrue(set(steps.tolist()) <= {int(r * 16) for r in enumerate_radii(Fraction(1, 16))})
        steps = steps[:, None]
        for offsets in (lattice.indices + steps, lattice.indices - steps):
            self.assertTrue(set((offsets % q).ravel().tolist()) <= set(residues))


class TestEmpiricalNorm(TestCase):
    def setUp(self):
        self.w = make_weight('constant', local_grid((0, 0), DELTA, refinement=1))

    def test_constant_member_gives_one(self):
        estimate = empirical_opnorm('skeleton', self.w, 2, DELTA, small_family(self.w, p=2), (0, 0))
        self.assertAlmostEqual(estimate.ratios['constant'], 1.0)
        self.assertGreaterEqual(estimate.value, estimate.ratios['constant'])
        self.assertEqual(estimate.bound, 'lower')

    def test_union_member_ratio(self):
        family = small_family(self.w, p=2)
        union = next(member for member in family if member.name == 'union')
        estimate = empirical_opnorm('skeleton', self.w, 2, DELTA, family, (0, 0))
        inside = lp_norm(constant_field(self.w.spec, 1.0), self.w, 2, CellLattice((0, 0), DELTA).square)
        self.assertAlmostEqual(estimate.ratios['union'] * lp_norm(union.field, self.w, 2), inside, places=9)
        self.assertLess(estimate.ratios['union'], 1.0)

    def test_localized_excludes_periodic_members(self):
        estimate = empirical_opnorm('skeleton', self.w, 2, DELTA, small_family(self.w, p=2), (0, 0))
        name, ratio = estimate.localized
        self.assertNotEqual(name, 'constant')
        self.assertEqual(ratio, max(value for key, value in estimate.ratios.items() if key != 'constant'))
        self.assertEqual(estimate.member, 'constant')

    def test_threads_do_not_change_the_estimate(self):
        family = small_family(self.w)
        single = empirical_opnorm('skeleton', self.w, 2, DELTA, family, (0, 0), threads=1)
        pooled = empirical_opnorm('skeleton', self.w, 2, DELTA, family, (0, 0), threads=3)
        self.assertEqual(single, pooled)

    def test_unknown_operator(self):
        with self.assertRaises(SkelmaxError):
            empirical_opnorm('fractional', self.w, 2, DELTA, small_family(self.w), (0, 0))


class TestGlobalChecks(TestCase):
    def test_sufficient_constant_weight(self):
        w = make_weight('constant', local_grid((0, 0), DELTA, refinement=1))
        report = check_sufficient('constant', 2, DELTA, family=small_family(w, p=2), refinement=1)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.extras['constant'], 0.05)
        self.assertEqual(report.params['family'], 'skeleton-family/2')

    def test_sufficient_needs_integer_conjugate(self):
        with self.assertRaises(InvalidExponentError):
            check_sufficient('constant', 3, DELTA, refinement=1)

    def test_necessary_chain(self):
        report = check_necessary_chain('constant', 2, DELTA, samples=2, refinement=1)
        self.assertTrue(report.extras['contained'])
        self.assertTrue(report.passed)
        self.assertEqual(report.extras['instances'], 2)

    def test_necessary_needs_p_above_one(self):
        with self.assertRaises(InvalidExponentError):
            check_necessary_chain('constant', 1, DELTA, samples=1, refinement=1)

    def test_embedding(self):
        report = check_ap_embedding('constant', 2, DELTA, samples=3, refinement=1)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.extras['factor'], 4 ** 4 / DELTA ** 2)

    def test_buckley_constant_weight(self):
        w = make_weight('constant', local_grid((0, 0), DELTA, refinement=1))
        report = check_buckley('constant', 2, DELTA, family=small_family(w, p=2), refinement=1)
        self.assertAlmostEqual(report.extras['constant'], 1.0)
        self.assertGreaterEqual(report.lhs, 1.0 - 1e-9)

    def test_buckley_stability_arguments(self):
        with self.assertRaises(SkelmaxError):
            buckley_stability([], 2, DELTA)
        with self.assertRaises(InvalidExponentError):
            buckley_stability(['constant'], 1, DELTA)

    def test_selection(self):
        report = check_selection(sizes=[4, 9], families=3, seed=1)
        self.assertLessEqual(report.lhs, 4.0)
        self.assertEqual(len(report.extras['greedy_mean']), 2)
        self.assertEqual(report.params['sizes'], [4, 9])

    def test_default_square_follows_the_dimension(self):
        report = check_ap_embedding('constant', 2, DELTA, samples=2, refinement=1, n=2, k=0)
        self.assertEqual(report.params['z'], [0, 0])
        report = check_necessary_chain('constant', 2, DELTA, samples=2, refinement=1, n=2, k=0)
        self.assertEqual(report.params['z'], [0, 0])


class TestAcceptanceRuns(TestCase):
    """Default-sized runs of the checks at delta = 1/8"""

    def test_duality_fifty_instances(self):
        for p in ['2', '3/2']:
            config = RunConfig.from_dict('verify', {'check': 'duality', 'samples': 50, 'delta': '1/8', 'p': p},
                                         environ={})
            report = CheckRunner(config).duality()
            self.assertTrue(report.passed)
            self.assertEqual(report.extras['instances'], 50)
            self.assertEqual(report.extras['failures'], 0)

    def test_necessary_chain(self):
        for weight in ['twovalue:K=4', 'power:alpha=1']:
            report = check_necessary_chain(weight, 2, Fraction(1, 8))
            self.assertTrue(report.passed)
            self.assertTrue(report.extras['contained'])
            self.assertEqual(report.extras['instances'], 100)

    def test_embedding(self):
        for weight in ['twovalue:K=4', 'power:alpha=1']:
            report = check_ap_embedding(weight, 2, Fraction(1, 8))
            self.assertTrue(report.passed)
            self.assertEqual(report.extras['instances'], 100)

    def test_selection(self):
        report = check_selection()
        self.assertTrue(report.passed)
        self.assertLessEqual(report.lhs, 4.0)
        self.assertEqual(report.params['sizes'], [64, 256, 1024])
        self.assertEqual(len(report.extras['greedy_mean']), 3)
