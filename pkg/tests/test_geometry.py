#!/usr/bin/env python3
"""
Test cases for finite fields, projective spaces and the hyperoval construction.
"""

import os
import sys
import unittest
from itertools import combinations, product

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.arith import divisors
from src.designs import verify_2design
from src.errors import (BadDimension, DivisionByZero, FieldTooLarge, NotCharacteristicTwo,
                        NotClosed, NotPrime, SingularMatrix)
from src.geometry import (ALT7_IN_GL42, DEFAULT_MAX_FIELD_ORDER, GaloisField, field_arithmetic,
                          get_field, gl_generators, hyperoval, induced_action, max_field_order,
                          normalize, pg_flats, pg_points, rank, set_max_field_order,
                          sl_generators, wbs_design)

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


class TestGaloisField(unittest.TestCase):
    """Field axioms and table construction."""

    def test_axioms(self):
        for q in FIELD_ORDERS:
            field = get_field(q)
            elements = list(field.elements())
            with self.subTest(q=q):
                for x, y in product(elements, repeat=2):
                    self.assertEqual(field.add(x, y), field.add(y, x))
                    self.assertEqual(field.mul(x, y), field.mul(y, x))
                    self.assertEqual(field.sub(field.add(x, y), y), x)
                for x, y, z in product(elements[:6], repeat=3):
                    self.assertEqual(field.mul(x, field.add(y, z)),
                                     field.add(field.mul(x, y), field.mul(x, z)))
                for x in elements[1:]:
                    self.assertEqual(field.mul(x, field.inv(x)), 1)
                    self.assertEqual(field.add(x, field.neg(x)), 0)

    def test_prime_field_is_integers_mod_p(self):
        field = get_field(7)
        for x, y in product(range(7), repeat=2):
            self.assertEqual(field.add(x, y), (x + y) % 7)
            self.assertEqual(field.mul(x, y), (x * y) % 7)

    def test_primitive_element(self):
        for q in FIELD_ORDERS:
            field = get_field(q)
            w = field.primitive_element
            self.assertEqual(field.power(w, q - 1), 1)
            for d in divisors(q - 1)[:-1]:
                self.assertNotEqual(field.power(w, d), 1)

    def test_gf4_modulus(self):
        field = GaloisField(2, 2)
        self.assertEqual(field.modulus, (1, 1, 1))
        self.assertEqual(field.mul(2, 2), 3)
        self.assertEqual(field.basis(), [1, 2])

    def test_field_arithmetic(self):
        self.assertEqual(field_arithmetic(7).inv(3), 5)
        gf4 = field_arithmetic(2, 2)
        self.assertEqual(gf4.mul(2, 2), gf4.add(2, 1))
        gf16 = field_arithmetic(2, 4)
        self.assertTrue(all(gf16.power(x, 15) == 1 for x in range(1, 16)))
        self.assertIs(field_arithmetic(3, 2), get_field(9))

    def test_configured_order_limit(self):
        self.addCleanup(set_max_field_order, DEFAULT_MAX_FIELD_ORDER)
        set_max_field_order(8)
        self.assertEqual(max_field_order(), 8)
        self.assertEqual(get_field(8).order, 8)
        with self.assertRaises(FieldTooLarge):
            get_field(9)
        with self.assertRaises(FieldTooLarge):
            pg_points(2, 16)
        self.assertEqual(field_arithmetic(3, 2, max_order=9).order, 9)
        with self.assertRaises(ValueError):
            set_max_field_order(1)

    def test_errors(self):
        with self.assertRaises(NotPrime):
            GaloisField(6)
        with self.assertRaises(FieldTooLarge):
            GaloisField(2, 17)
        with self.assertRaises(DivisionByZero):
            get_field(5).inv(0)
        with self.assertRaises(DivisionByZero):
            get_field(4).power(0, -1)
        self.assertEqual(get_field(4).power(0, 0), 1)


class TestProjectiveSpaces(unittest.TestCase):
    """Points and flats of PG(d, q)."""

    def test_point_counts(self):
        for d, q in ((1, 4), (2, 2), (2, 3), (2, 9), (3, 2), (3, 3)):
            self.assertEqual(len(pg_points(d, q)), (q ** (d + 1) - 1) // (q - 1))

    def test_points_are_normalized(self):
        field = get_field(5)
        for pt in pg_points(2, 5):
            self.assertEqual(normalize(field, pt), pt)
        self.assertIsNone(normalize(field, (0, 0, 0)))
        self.assertEqual(normalize(field, (0, 2, 4)), (0, 1, 2))

    def test_flats(self):
        lines = pg_flats(2, 3, 1)
        self.assertEqual(len(lines), 13)
        self.assertTrue(all(len(line) == 4 for line in lines))
        self.assertEqual(len(pg_flats(3, 2, 1)), 35)
        planes = pg_flats(3, 2, 2)
        self.assertEqual(len(planes), 15)
        self.assertTrue(all(len(plane) == 7 for plane in planes))

    def test_lines_meet_in_one_point(self):
        lines = [set(line) for line in pg_flats(2, 4, 1)]
        self.assertEqual(len(lines), 21)
        for a, b in combinations(lines, 2):
            self.assertEqual(len(a & b), 1)

    def test_bad_dimensions(self):
        with self.assertRaises(BadDimension):
            pg_points(0, 2)
        with self.assertRaises(BadDimension):
            pg_flats(2, 2, 2)
        with self.assertRaises(BadDimension):
            pg_flats(3, 2, 0)

    def test_rank(self):
        field = get_field(3)
        self.assertEqual(rank(field, [(1, 0, 0), (0, 1, 0), (1, 1, 0)]), 2)
        self.assertEqual(rank(field, [(1, 2, 0), (2, 1, 0), (0, 0, 1)]), 2)
        self.assertEqual(rank(field, [(1, 0), (0, 1)]), 2)


class TestHyperoval(unittest.TestCase):
    """The regular hyperoval and W(q)."""

    def test_no_three_collinear(self):
        for q in (4, 8):
            oval = hyperoval(q)
            self.assertEqual(len(oval), q + 2)
            field = get_field(q)
            for triple in combinations(oval, 3):
                self.assertEqual(rank(field, triple), 3)

    def test_needs_even_order(self):
        for q in (2, 3, 9):
            with self.assertRaises(NotCharacteristicTwo):
                hyperoval(q)
            with self.assertRaises(NotCharacteristicTwo):
                wbs_design(q)

    def test_wbs_parameters(self):
        for q in (8, 16):
            with self.subTest(q=q):
                result = verify_2design(wbs_design(q))
                self.assertFalse(result.trivial)
                self.assertEqual(result.params.as_tuple(),
                                 (q * (q - 1) // 2, q * q - 1, q + 1, q // 2, 1))

    def test_wbs4_is_trivial(self):
        result = verify_2design(wbs_design(4))
        self.assertTrue(result.trivial)
        self.assertEqual(result.structure.num_points, 6)


class TestInducedAction(unittest.TestCase):
    """Matrix groups acting on points."""

    def test_gl32_on_fano_points(self):
        g = induced_action(gl_generators(3, 2), pg_points(2, 2), 2)
        self.assertEqual(g.degree, 7)
        self.assertEqual(g.order().value, 168)
        self.assertEqual(g.subdegrees(), [1, 6])

    def test_sl24_on_projective_line(self):
        g = induced_action(sl_generators(2, 4), pg_points(1, 4), 4)
        self.assertEqual(g.order().value, 60)

    def test_alt7_on_pg32(self):
        g = induced_action(ALT7_IN_GL42, pg_points(3, 2), 2)
        self.assertEqual(g.order().value, 2520)
        self.assertEqual(g.subdegrees(), [1, 14])

    def test_singular_matrix(self):
        with self.assertRaises(SingularMatrix):
            induced_action([((1, 1), (1, 1))], pg_points(1, 2), 2)

    def test_not_closed(self):
        with self.assertRaises(NotClosed):
            induced_action([((1, 1), (0, 1))], [(0, 1), (1, 0)], 2)


def create_test_suite():
    """Create and return test suite."""
    loader = unittest.defaultTestLoader
    suite = unittest.TestSuite()
    for case in (TestGaloisField, TestProjectiveSpaces, TestHyperoval, TestInducedAction):
        suite.addTest(loader.loadTestsFromTestCase(case))
    return suite


def run_tests():
    """Run all tests."""
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(create_test_suite())
    return result.wasSuccessful()


if __name__ == '__main__':
    sys.exit(0 if run_tests() else 1)
