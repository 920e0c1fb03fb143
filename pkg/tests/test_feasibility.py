#!/usr/bin/env python3
"""
Test cases for the counting conditions and the elimination engine.
"""

import os
import sys
import unittest

from sympy import isprime

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.arith import FactoredInteger
from src.errors import MalformedRow, NonDivisible, NotPrime
from src.feasibility import (DesignParams, EliminationRow, VerdictKind, block_size_candidates,
                             coprime_test, derive_params, enumerate_feasible, evaluate_row,
                             evaluate_rows, large_test, primitive_divisor_candidates)
from src.groups import psl


def _row(x, h, printed, u_r, **extra):
    return EliminationRow(
        source_table='T', class_label='S', group_label='X',
        group_order=FactoredInteger.from_int(x), stabilizer_label='H',
        stabilizer_order=None if h is None else FactoredInteger.from_int(h),
        printed_v=FactoredInteger.from_int(printed), u_r=u_r, **extra)


class TestDesignParams(unittest.TestCase):
    """Test cases for the parameter tuple."""

    def test_identities_hold(self):
        self.assertEqual(DesignParams(7, 7, 3, 3, 1).violations(), [])
        self.assertEqual(DesignParams(12, 22, 11, 6, 5).violations(), [])

    def test_violations_reported(self):
        problems = DesignParams(7, 8, 3, 3, 1).violations()
        self.assertIn("bk != vr", problems)
        self.assertIn("not 2 < k < v-1", DesignParams(5, 10, 4, 2, 1).violations())

    def test_to_dict(self):
        self.assertEqual(DesignParams(7, 7, 3, 3, 1).to_dict(),
                         {'v': 7, 'b': 7, 'r': 3, 'k': 3, 'lambda': 1})
        self.assertEqual(str(DesignParams(7, 7, 3, 3, 1)), "(7,7,3,3,1)")


class TestDeriveParams(unittest.TestCase):
    """Test cases for derive_params and enumerate_feasible."""

    def test_v120_r17(self):
        found = {p.as_tuple() for p in derive_params(120, 17)}
        self.assertEqual(found, {(120, 255, 17, 8, 1), (120, 136, 17, 15, 2)})

    def test_r_must_divide_v_minus_one(self):
        self.assertEqual(derive_params(10, 7), [])

    def test_composite_r(self):
        with self.assertRaises(NotPrime):
            derive_params(10, 9)

    def test_block_size_candidates(self):
        self.assertEqual(block_size_candidates(7, 3), [3])
        self.assertIn(8, block_size_candidates(120, 17))
        self.assertIn(15, block_size_candidates(120, 17))

    def test_small_table_rows(self):
        rows = {p.as_tuple() for p in enumerate_feasible(20, 5)}
        self.assertIn((12, 22, 11, 6, 5), rows)
        self.assertIn((7, 7, 3, 3, 1), rows)
        self.assertIn((11, 11, 5, 5, 2), rows)
        self.assertEqual(enumerate_feasible(5, 1), [])

    def test_wbs_parameters_listed(self):
        rows = {p.as_tuple() for p in enumerate_feasible(130, 2)}
        self.assertIn((120, 255, 17, 8, 1), rows)
        self.assertIn((120, 136, 17, 15, 2), rows)

    def test_enumeration_matches_brute_force(self):
        expected = set()
        for v in range(4, 51):
            for r in range(2, v):
                if not isprime(r) or (v - 1) % r:
                    continue
                for k in range(3, v - 1):
                    for lam in range(1, 4):
                        if r * (k - 1) != lam * (v - 1) or (v * r) % k:
                            continue
                        if lam * v < r * r and k <= r:
                            expected.add((v, v * r // k, r, k, lam))
        found = [p.as_tuple() for p in enumerate_feasible(50, 3)]
        self.assertEqual(len(found), len(set(found)))
        self.assertEqual(set(found), expected)


class TestSubgroupTests(unittest.TestCase):
    """Test cases for the large and coprime tests."""

    def test_large(self):
        self.assertTrue(large_test(FactoredInteger.from_int(168), FactoredInteger.from_int(21)))
        self.assertFalse(large_test(FactoredInteger.from_int(20160), FactoredInteger.from_int(21)))
        with self.assertRaises(NonDivisible):
            large_test(FactoredInteger.from_int(168), FactoredInteger.from_int(5))

    def test_coprime(self):
        x, h = FactoredInteger.from_int(168), FactoredInteger.from_int(21)
        self.assertTrue(coprime_test(x, h, 7))
        self.assertFalse(coprime_test(FactoredInteger.from_int(20160), h, 7))
        with self.assertRaises(NotPrime):
            coprime_test(x, h, 6)


class TestEvaluateRow(unittest.TestCase):
    """Test cases for verdicts."""

    def test_eliminated(self):
        verdict = evaluate_row(_row(20160, 21, 960, 7))
        self.assertIs(verdict.kind, VerdictKind.ELIMINATED)
        self.assertEqual(verdict.to_dict(), {'kind': 'Eliminated'})

    def test_survives_to_params(self):
        verdict = evaluate_row(_row(168, 21, 8, 7, coprime_pool=False))
        self.assertIs(verdict.kind, VerdictKind.SURVIVES)
        self.assertEqual([p.as_tuple() for p in verdict.tuples], [(8, 14, 7, 4, 3)])

    def test_coprime_pool_empties_candidates(self):
        row = _row(168, 21, 8, 7, group=psl(2, 7))
        verdict = evaluate_row(row)
        self.assertIs(verdict.kind, VerdictKind.SURVIVES)
        self.assertEqual(verdict.tuples, [])
        self.assertIsNotNone(verdict.note)

    def test_annotation_closes(self):
        verdict = evaluate_row(_row(168, 21, 8, 7, coprime_pool=False, annotation="closed"))
        self.assertIs(verdict.kind, VerdictKind.ANNOTATED)
        self.assertEqual(verdict.annotation, "closed")

    def test_lower_bound_rows(self):
        row = _row(10 ** 6, None, 30, 7, exact_printed=False)
        verdict = evaluate_row(row)
        self.assertIs(verdict.kind, VerdictKind.SURVIVES)
        self.assertEqual(verdict.tuples, [])
        half = _row(10 ** 6, None, 99, 7, exact_printed=False, v_denominator=2)
        self.assertIs(evaluate_row(half).kind, VerdictKind.ELIMINATED)

    def test_malformed(self):
        with self.assertRaises(MalformedRow):
            _row(168, 5, 8, 7)
        with self.assertRaises(MalformedRow):
            _row(168, 21, 8, 1)
        with self.assertRaises(MalformedRow):
            evaluate_row("not a row")

    def test_printed_check(self):
        self.assertEqual(_row(168, 21, 8, 7).check_printed()['status'], 'match')
        self.assertEqual(_row(168, 21, 9, 7).check_printed()['status'], 'mismatch')
        self.assertEqual(_row(168, 21, 9, 7, erratum="typo").check_printed()['status'], 'erratum')
        self.assertEqual(_row(168, None, 9, 7).check_printed()['status'], 'unchecked')

    def test_parallel_keeps_order(self):
        rows = [_row(20160, 21, 960, 7), _row(168, 21, 8, 7, coprime_pool=False)] * 3
        serial = evaluate_rows(rows, threads=1)
        parallel = evaluate_rows(rows, threads=4)
        self.assertEqual([v.kind for _, v in serial], [v.kind for _, v in parallel])


class TestPrimitiveDivisorCandidates(unittest.TestCase):
    """Point-hyperplane candidates."""

    def test_projective_planes(self):
        found = primitive_divisor_candidates(3, 4)
        self.assertEqual([(r, [p.as_tuple() for p in ps]) for r, ps in found],
                         [(5, [(21, 21, 5, 5, 1)])])
        found = primitive_divisor_candidates(3, 2)
        self.assertEqual([(r, [p.as_tuple() for p in ps]) for r, ps in found],
                         [(3, [(7, 7, 3, 3, 1)])])

    def test_bad_dimension(self):
        with self.assertRaises(ValueError):
            primitive_divisor_candidates(2, 4)


def create_test_suite():
    """Create and return test suite."""
    loader = unittest.defaultTestLoader
    suite = unittest.TestSuite()
    for case in (TestDesignParams, TestDeriveParams, TestSubgroupTests, TestEvaluateRow,
                 TestPrimitiveDivisorCandidates):
        suite.addTest(loader.loadTestsFromTestCase(case))
    return suite


def run_tests():
    """Run all tests."""
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(create_test_suite())
    return result.wasSuccessful()


if __name__ == '__main__':
    sys.exit(0 if run_tests() else 1)
