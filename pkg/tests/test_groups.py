#!/usr/bin/env python3
"""
Test cases for simple group orders, outer automorphisms and minimal degrees.
"""

import os
import sys
import unittest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.catalog import catalog_order, is_known
from src.errors import IllegalId, Unsupported
from src.groups import (Family, alt, exceptional, g2, minimal_degree, normalize, order,
                        out_order, pomega, psl, psp, psu, sporadic, suzuki)


class TestOrders(unittest.TestCase):
    """Orders against the published values."""

    def test_classical(self):
        known = [
            (psl(2, 7), 168),
            (psl(3, 4), 20160),
            (psl(4, 3), 6065280),
            (psu(3, 3), 6048),
            (psu(3, 5), 126000),
            (psu(4, 2), 25920),
            (psp(4, 3), 25920),
            (psp(6, 2), 1451520),
            (pomega(7, 3), 4585351680),
            (pomega(8, 2, 1), 174182400),
            (pomega(8, 2, -1), 197406720),
        ]
        for group, value in known:
            with self.subTest(group=str(group)):
                self.assertEqual(order(group).value, value)

    def test_exceptional(self):
        self.assertEqual(order(suzuki(8)).value, 29120)
        self.assertEqual(order(g2(3)).value, 4245696)
        self.assertEqual(order(g2(4)).value, 251596800)
        self.assertEqual(order(exceptional(Family.STEINBERG_D4, 2)).value, 211341312)
        self.assertEqual(order(exceptional(Family.REE_F4, 2)).value, 35942400)
        self.assertEqual(order(exceptional(Family.F4, 2)).value, 3311126603366400)

    def test_alternating_and_sporadic(self):
        self.assertEqual(order(alt(8)).value, 20160)
        self.assertEqual(order(sporadic('M11')).value, 7920)
        self.assertEqual(order(sporadic('J2')).value, 604800)
        with self.assertRaises(Unsupported):
            order(sporadic('Monster'))

    def test_isomorphisms(self):
        self.assertEqual(normalize(psl(2, 4)), alt(5))
        self.assertEqual(normalize(psl(2, 5)), alt(5))
        self.assertEqual(normalize(psl(3, 2)), psl(2, 7))
        self.assertEqual(normalize(psl(4, 2)), alt(8))
        self.assertEqual(normalize(psp(4, 3)), psu(4, 2))
        self.assertEqual(order(psl(2, 9)), order(alt(6)))
        self.assertEqual(normalize(psl(3, 3)), psl(3, 3))


class TestIllegalIds(unittest.TestCase):
    """Parameters outside the families."""

    def test_rejects(self):
        cases = [
            lambda: psl(2, 2),
            lambda: psl(2, 3),
            lambda: psu(3, 2),
            lambda: psp(5, 3),
            lambda: pomega(7, 2),
            lambda: pomega(8, 3),
            lambda: suzuki(4),
            lambda: g2(2),
            lambda: alt(4),
            lambda: psl(3, 6),
        ]
        for build in cases:
            with self.assertRaises(IllegalId):
                build()


class TestOutOrders(unittest.TestCase):
    """Outer automorphism group orders."""

    def test_values(self):
        self.assertEqual(out_order(alt(6)).value, 4)
        self.assertEqual(out_order(alt(7)).value, 2)
        self.assertEqual(out_order(psl(3, 4)).value, 12)
        self.assertEqual(out_order(psl(2, 8)).value, 3)
        self.assertEqual(out_order(pomega(8, 2, 1)).value, 6)
        self.assertEqual(out_order(sporadic('M11')).value, 1)


class TestMinimalDegree(unittest.TestCase):
    """Minimal permutation degrees, including the listed exceptions."""

    def test_exceptions(self):
        self.assertEqual(minimal_degree(psu(3, 5)), 50)
        self.assertEqual(minimal_degree(psl(2, 9)), 6)
        self.assertEqual(minimal_degree(psp(4, 3)), 27)
        self.assertEqual(minimal_degree(psl(4, 2)), 8)
        self.assertEqual(minimal_degree(psp(6, 2)), 28)
        self.assertEqual(minimal_degree(psl(2, 11)), 11)

    def test_formulas(self):
        self.assertEqual(minimal_degree(psl(3, 3)), 13)
        self.assertEqual(minimal_degree(psu(3, 3)), 28)
        self.assertEqual(minimal_degree(psu(6, 2)), 672)
        self.assertEqual(minimal_degree(pomega(7, 3)), 351)
        self.assertEqual(minimal_degree(pomega(8, 2, 1)), 120)
        self.assertEqual(minimal_degree(pomega(10, 2, -1)), 495)
        self.assertEqual(minimal_degree(alt(9)), 9)

    def test_exceptional_unsupported(self):
        with self.assertRaises(Unsupported):
            minimal_degree(g2(3))


class TestCatalog(unittest.TestCase):
    """Labelled subgroup orders."""

    def test_labels(self):
        self.assertEqual(catalog_order('PSp4(2)').value, 720)
        self.assertEqual(catalog_order('S10').value, 3628800)
        self.assertEqual(catalog_order('Alt7').value, 2520)
        self.assertEqual(catalog_order('D20').value, 20)
        self.assertEqual(catalog_order('2^4.Alt6').value, 5760)
        self.assertEqual(catalog_order('7:3').value, 21)

    def test_unknown(self):
        self.assertFalse(is_known('Nonsense(3)'))
        with self.assertRaises(Unsupported):
            catalog_order('Nonsense(3)')


def create_test_suite():
    """Create and return test suite."""
    loader = unittest.defaultTestLoader
    suite = unittest.TestSuite()
    for case in (TestOrders, TestIllegalIds, TestOutOrders, TestMinimalDegree, TestCatalog):
        suite.addTest(loader.loadTestsFromTestCase(case))
    return suite


def run_tests():
    """Run all tests."""
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(create_test_suite())
    return result.wasSuccessful()


if __name__ == '__main__':
    sys.exit(0 if run_tests() else 1)
