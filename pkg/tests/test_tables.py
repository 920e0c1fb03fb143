#!/usr/bin/env python3
"""
Test cases for the embedded subgroup tables.
"""

import io
import os
import sys
import unittest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import Unsupported
from src.feasibility import VerdictKind, evaluate_rows
from src.tables import (CSV_HEADER, DEFAULT_Q_GRID, check_rows, check_table2, evaluate_table,
                        export_rows_csv, rows_for, sp44_case, table3_rows, table4_rows,
                        table5_rows, table6_rows, table7_rows)


def _by_kind(evaluated, kind):
    return [(row, verdict) for row, verdict in evaluated if verdict.kind is kind]


class TestTable2(unittest.TestCase):
    """Minimal degrees."""

    def test_all_rows_match(self):
        report = check_table2()
        self.assertTrue(report)
        self.assertEqual([r for r in report if r['status'] != 'match'], [])


class TestTable3(unittest.TestCase):
    """Large maximal subgroups of classical groups."""

    @classmethod
    def setUpClass(cls):
        cls.evaluated = evaluate_rows(table3_rows(DEFAULT_Q_GRID))

    def test_exactly_three_survivors(self):
        survivors = {(row.group_label, row.stabilizer_label)
                     for row, verdict in self.evaluated if verdict.kind is not VerdictKind.ELIMINATED}
        self.assertEqual(survivors, {('PSL(4,2)', 'Alt7'), ('PSU(3,3)', 'PSL(2,7)'),
                                     ('PSp(4,2)', 'Alt5')})

    def test_survivors_are_closed(self):
        survivors = {row.group_label: verdict for row, verdict in self.evaluated
                     if verdict.kind is not VerdictKind.ELIMINATED}
        for verdict in survivors.values():
            self.assertIs(verdict.kind, VerdictKind.ANNOTATED)
            self.assertTrue(verdict.annotation)
        self.assertEqual([p.as_tuple() for p in survivors['PSL(4,2)'].tuples], [(8, 14, 7, 4, 3)])
        self.assertEqual([p.as_tuple() for p in survivors['PSU(3,3)'].tuples], [(36, 42, 7, 6, 1)])
        self.assertEqual(survivors['PSp(4,2)'].tuples, [])

    def test_printed_columns(self):
        entries, mismatches = check_rows(self.evaluated)
        self.assertEqual(mismatches, [])
        errata = [e for e in entries if e['check']['status'] == 'erratum']
        self.assertEqual([(e['group'], e['stabilizer']) for e in errata],
                         [('PSU(6,2)', 'PSU4(3).2')])
        self.assertEqual(errata[0]['check']['computed'], 1408)

    def test_symbolic_rows_need_their_q(self):
        sz_rows = [r for r in table3_rows((2, 4, 8)) if r.stabilizer_label.startswith('Sz')]
        self.assertEqual([r.q for r in sz_rows], [8])


class TestTable4(unittest.TestCase):
    """Small almost simple groups."""

    def test_indices(self):
        rows = table4_rows()
        self.assertEqual(sorted({row.v.value for row in rows}), [21, 28, 36, 45, 55, 66])
        for row in rows:
            self.assertEqual(row.check_printed()['status'], 'match')

    def test_all_eliminated(self):
        for row, verdict in evaluate_rows(table4_rows()):
            self.assertIs(verdict.kind, VerdictKind.ELIMINATED, row.describe())


class TestTable5(unittest.TestCase):
    """C3 subgroups of linear groups."""

    def test_psl33_closed(self):
        evaluated = evaluate_rows(table5_rows((3,)))
        closed = _by_kind(evaluated, VerdictKind.ANNOTATED)
        self.assertEqual(len(closed), 1)
        row, verdict = closed[0]
        self.assertEqual(row.v.value, 144)
        self.assertEqual([p.as_tuple() for p in verdict.tuples], [(144, 156, 13, 12, 1)])

    def test_q2_has_no_psl3_row(self):
        labels = [row.group_label for row in table5_rows((2,))]
        self.assertNotIn('PSL(3,2)', labels)


class TestTable6(unittest.TestCase):
    """C2 and C5 subgroups of orthogonal groups."""

    def test_lower_bounds_hold(self):
        _, mismatches = check_rows(evaluate_rows(table6_rows((2, 3), (8, 9, 10))))
        self.assertEqual(mismatches, [])

    def test_half_integer_bounds(self):
        rows = [r for r in table6_rows((3,), (8,)) if r.stabilizer_label == 'GL_{n/2}(q)']
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0].v_denominator, 2)
        self.assertFalse(rows[0].v_is_exact)


class TestTable7(unittest.TestCase):
    """Large non-parabolic subgroups of exceptional groups."""

    def test_small_grid_eliminated(self):
        evaluated = evaluate_rows(table7_rows((2, 4, 8)))
        self.assertEqual([row.describe() for row, _ in evaluated
                          if _.kind is not VerdictKind.ELIMINATED], [])

    def test_default_grid_eliminated(self):
        rows = table7_rows()
        self.assertEqual({r.q for r in rows if r.q is not None}, set(DEFAULT_Q_GRID))
        survivors = [row.describe() for row, verdict in evaluate_rows(rows, threads=2)
                     if verdict.kind is not VerdictKind.ELIMINATED]
        self.assertEqual(survivors, [])

    def test_sz8(self):
        row = next(r for r in table7_rows(()) if r.group_label == 'Sz(8)')
        self.assertEqual(row.v.value, 560)
        self.assertEqual(str(row.printed_v), "2^4*5*7")
        self.assertGreater(row.v.value, 13 ** 2)

    def test_g23_erratum(self):
        row = next(r for r in table7_rows(()) if r.group_label == 'G2(3)')
        check = row.check_printed()
        self.assertEqual(check['status'], 'erratum')
        self.assertEqual(check['computed'], 3159)

    def test_suzuki_symbolic_row_needs_cube_root(self):
        rows = [r for r in table7_rows((8,)) if r.group_label.startswith('Sz')]
        self.assertEqual([r.q for r in rows], [None])


class TestDataset(unittest.TestCase):
    """Dataset access and export."""

    def test_psp44_case(self):
        case = sp44_case()
        self.assertEqual(case['v'], 120)
        self.assertEqual(case['r'], 17)
        tuples = {(p['v'], p['b'], p['r'], p['k'], p['lambda']) for p in case['params']}
        self.assertEqual(tuples, {(120, 255, 17, 8, 1), (120, 136, 17, 15, 2)})
        self.assertTrue(all(p['note'] for p in case['params']))

    def test_unknown_table(self):
        with self.assertRaises(Unsupported):
            rows_for('9')

    def test_export_csv(self):
        buffer = io.StringIO()
        export_rows_csv(evaluate_table('4'), buffer)
        lines = buffer.getvalue().splitlines()
        self.assertEqual(lines[0], ",".join(CSV_HEADER))
        self.assertEqual(len(lines), 1 + len(table4_rows()))
        self.assertTrue(lines[1].startswith('T4,TableFour,PGL2(7),D12,,28,'))


def create_test_suite():
    """Create and return test suite."""
    loader = unittest.defaultTestLoader
    suite = unittest.TestSuite()
    for case in (TestTable2, TestTable3, TestTable4, TestTable5, TestTable6, TestTable7,
                 TestDataset):
        suite.addTest(loader.loadTestsFromTestCase(case))
    return suite


def run_tests():
    """Run all tests."""
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(create_test_suite())
    return result.wasSuccessful()


if __name__ == '__main__':
    sys.exit(0 if run_tests() else 1)
