#!/usr/bin/env python3
"""
Test cases for design verification, orbit designs and the catalog of examples.
"""

import os
import sys
import unittest
from itertools import combinations

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.designs import (action_on_blocks, find_base_block, is_flag_transitive, orbit_design,
                         subdegree_report, table1_catalog, verify_2design, verify_catalog,
                         verify_catalog_entry)
from src.errors import NotADesign, NotAnAutomorphismGroup, NotTransitive, PointOutOfRange
from src.geometry import gl_generators, induced_action, pg_flats, pg_points
from src.incidence import IncidenceStructure
from src.permgroup import Permutation, PermutationGroup


def _cyclic(n):
    return PermutationGroup([Permutation.from_cycles([tuple(range(n))], n)], n)


def _fano():
    return IncidenceStructure.from_blocks(7, pg_flats(2, 2, 1))


class TestVerify(unittest.TestCase):
    """Test cases for verify_2design."""

    def test_fano(self):
        result = verify_2design(_fano())
        self.assertEqual(result.params.as_tuple(), (7, 7, 3, 3, 1))
        self.assertFalse(result.trivial)
        self.assertTrue(result.simple)
        self.assertTrue(result.r_prime)
        self.assertEqual(result.to_dict()['params']['lambda'], 1)

    def test_complete_design_is_trivial(self):
        structure = IncidenceStructure.from_blocks(5, combinations(range(5), 2))
        result = verify_2design(structure)
        self.assertTrue(result.trivial)
        self.assertEqual(result.params.as_tuple(), (5, 10, 4, 2, 1))
        self.assertFalse(result.r_prime)

    def test_corrupted_block(self):
        blocks = [list(b) for b in pg_flats(2, 2, 1)]
        blocks[0] = [0, 1, 6]
        with self.assertRaises(NotADesign):
            verify_2design(IncidenceStructure.from_blocks(7, blocks))

    def test_unequal_block_sizes(self):
        with self.assertRaises(NotADesign):
            verify_2design(IncidenceStructure.from_blocks(5, [[0, 1, 2], [2, 3], [3, 4, 0]]))

    def test_structure_validation(self):
        with self.assertRaises(PointOutOfRange):
            IncidenceStructure.from_blocks(3, [[0, 3]])
        with self.assertRaises(NotADesign):
            IncidenceStructure.from_blocks(4, [[0, 1], [1, 0]])
        repeated = IncidenceStructure.from_blocks(4, [[0, 1], [1, 0]], multiset=True)
        self.assertFalse(repeated.is_simple())


class TestOrbitDesigns(unittest.TestCase):
    """Orbit designs and the base block search."""

    def test_paley_design(self):
        structure = orbit_design(_cyclic(11), [1, 3, 4, 5, 9])
        self.assertEqual(verify_2design(structure).params.as_tuple(), (11, 11, 5, 5, 2))

    def test_orbit_design_ignores_choice_of_base_block(self):
        for group, base in ((_cyclic(11), [1, 3, 4, 5, 9]),
                            (induced_action(gl_generators(3, 2), pg_points(2, 2), 2), [0, 1, 2])):
            design = orbit_design(group, base)
            for element in list(group.elements())[:12]:
                with self.subTest(degree=group.degree, element=str(element)):
                    self.assertEqual(orbit_design(group, element.image_of_set(base)), design)

    def test_orbit_design_errors(self):
        with self.assertRaises(NotTransitive):
            orbit_design(PermutationGroup([Permutation.from_cycles([(0, 1)], 4)]), [0, 2])
        with self.assertRaises(PointOutOfRange):
            orbit_design(_cyclic(5), [0, 7])
        with self.assertRaises(NotADesign):
            orbit_design(_cyclic(5), range(5))
        with self.assertRaises(NotADesign):
            orbit_design(_cyclic(5), [])

    def test_find_base_block(self):
        self.assertEqual(find_base_block(_cyclic(7), 3, 1), (0, 1, 3))

    def test_find_base_block_not_found(self):
        self.assertIsNone(find_base_block(_cyclic(5), 3, 3))
        self.assertIsNone(find_base_block(_cyclic(7), 2, 1))
        self.assertIsNone(find_base_block(_cyclic(13), 4, 1, max_candidates=0))

    def test_candidate_limit_is_logged(self):
        with self.assertLogs('src.designs', level='WARNING') as logs:
            self.assertIsNone(find_base_block(_cyclic(13), 4, 1, max_candidates=0))
        self.assertIn('stopped after 0 candidates', logs.output[0])

    def test_find_base_block_needs_transitivity(self):
        with self.assertRaises(NotTransitive):
            find_base_block(PermutationGroup([Permutation.from_cycles([(0, 1)], 7)]), 3, 1)


class TestFlagTransitivity(unittest.TestCase):
    """Actions on blocks and flags."""

    def setUp(self):
        self.gl32 = induced_action(gl_generators(3, 2), pg_points(2, 2), 2)
        self.fano = _fano()

    def test_gl32_on_fano(self):
        self.assertTrue(is_flag_transitive(self.gl32, self.fano))
        on_blocks = action_on_blocks(self.gl32, self.fano)
        self.assertEqual(on_blocks.degree, 7)
        self.assertEqual(on_blocks.order().value, 168)

    def test_cyclic_group_is_not_flag_transitive(self):
        c7 = _cyclic(7)
        self.assertFalse(is_flag_transitive(c7, orbit_design(c7, [0, 1, 3])))

    def test_unequal_blocks_are_not_flag_transitive(self):
        structure = IncidenceStructure.from_blocks(4, [[0, 1], [2, 3], [0, 1, 2, 3]])
        group = PermutationGroup([Permutation.from_cycles([(0, 1)], 4),
                                  Permutation.from_cycles([(0, 2), (1, 3)], 4)])
        self.assertFalse(is_flag_transitive(group, structure))

    def test_not_an_automorphism(self):
        design = orbit_design(_cyclic(7), [0, 1, 3])
        swap = PermutationGroup([Permutation.from_cycles([(0, 1)], 7)])
        with self.assertRaises(NotAnAutomorphismGroup):
            is_flag_transitive(swap, design)
        with self.assertRaises(NotAnAutomorphismGroup):
            action_on_blocks(_cyclic(8), design)

    def test_subdegree_report(self):
        report = subdegree_report(self.gl32, 3)
        self.assertEqual(report, {'subdegrees': [1, 6], 'r_divides_subdegrees': True})
        self.assertFalse(subdegree_report(self.gl32, 5)['r_divides_subdegrees'])


class TestCatalog(unittest.TestCase):
    """The eight small examples."""

    @classmethod
    def setUpClass(cls):
        cls.entries = table1_catalog()
        cls.checks = verify_catalog(cls.entries, threads=2)

    def test_lines(self):
        self.assertEqual([e.line for e in self.entries], list(range(1, 9)))
        self.assertEqual([c.entry.line for c in self.checks], list(range(1, 9)))

    def test_every_line_verifies(self):
        for check in self.checks:
            with self.subTest(line=check.entry.line):
                self.assertTrue(check.ok, check.to_dict())
                self.assertTrue(check.verified.r_prime)
                self.assertEqual(check.verified.params.violations(), [])
                self.assertEqual(check.order, check.entry.group_order)

    def test_searched_lines_have_base_blocks(self):
        searched = [c for c in self.checks if c.entry.blocks is None]
        self.assertEqual([c.entry.line for c in searched], [1, 3, 4, 5])
        for check in searched:
            self.assertEqual(check.base_block[0], 0)
            self.assertEqual(len(check.base_block), check.entry.k)

    def test_snapshot_drift(self):
        entry = self.entries[0]
        check = verify_catalog_entry(entry, frozen_block=(5, 4, 3))
        self.assertTrue(check.snapshot_drift)
        self.assertTrue(check.ok)
        self.assertFalse(verify_catalog_entry(entry, frozen_block=check.base_block).snapshot_drift)

    def test_candidate_limit(self):
        check = verify_catalog_entry(self.entries[4], max_candidates=0)
        self.assertIsNone(check.base_block)
        self.assertFalse(check.ok)


def create_test_suite():
    """Create and return test suite."""
    loader = unittest.defaultTestLoader
    suite = unittest.TestSuite()
    for case in (TestVerify, TestOrbitDesigns, TestFlagTransitivity, TestCatalog):
        suite.addTest(loader.loadTestsFromTestCase(case))
    return suite


def run_tests():
    """Run all tests."""
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(create_test_suite())
    return result.wasSuccessful()


if __name__ == '__main__':
    sys.exit(0 if run_tests() else 1)
