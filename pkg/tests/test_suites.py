"""morphologic - Property suite tests

Copyright (c) 2024 morphologic developers
"""

from os.path import join
from unittest import TestCase

from mock import patch

from morphologic.bundle import load_bundle
from morphologic.exceptions import InputError
from morphologic.logic import Model, ModelUniverse
from morphologic.morphology import (
    dilation,
    erosion,
    neighborhood_from_element,
)
from morphologic.suites import element_checks, run_suite, subobject_scope
from morphologic.sublattice import bottom, neg, top
from tests import BUNDLES, TEST_SEED
from tests.conftest import coin_universe, element, finite_set, line_world


class ScopeTest(TestCase):
    def test_exhaustive(self):
        subs, note = subobject_scope(finite_set(3))
        self.assertEqual(len(subs), 8)
        self.assertEqual(note, 'exhaustive over 8 subobjects')

    def test_sampled(self):
        presheaf, _ = line_world()
        subs, note = subobject_scope(presheaf, cap=16, samples=10,
                                     seed=TEST_SEED)
        self.assertIn(top(presheaf), subs)
        self.assertIn(bottom(presheaf), subs)
        self.assertLessEqual(len(subs), 12)
        self.assertTrue(note.startswith('sampled'))
        again, _ = subobject_scope(presheaf, cap=16, samples=10,
                                   seed=TEST_SEED)
        self.assertEqual(subs, again)


class MorphologySuiteTest(TestCase):
    def test_shipped_universe(self):
        universe = load_bundle(join(BUNDLES, 'two-models.json')).universe
        result = run_suite('morphology', universe)
        self.assertTrue(result.passed, result.failures())
        self.assertIn('N0/structuring', result.checks)
        self.assertIn('N0/element/adjunction', result.checks)
        self.assertNotIn('N1/structuring', result.checks)
        self.assertEqual(result.notes, ['exhaustive over 4 subobjects'])

    def test_graph(self):
        universe = load_bundle(join(BUNDLES, 'graph.json')).universe
        result = run_suite('morphology', universe)
        self.assertTrue(result.passed, result.failures())
        self.assertTrue(result.checks['N0/interior'])

    def test_non_transitive_element(self):
        presheaf = finite_set(3)
        b = element(presheaf, lambda x: [x, x + 1])
        universe = ModelUniverse([
            Model(presheaf, neighborhood_from_element(b), {}, name='chain'),
        ])
        result = run_suite('morphology', universe)
        self.assertFalse(result.checks['N0/adjunction'])
        self.assertFalse(result.checks['N0/topological'])
        self.assertIn('N0/adjunction', result.informational)
        self.assertNotIn('N0/interior', result.checks)
        self.assertTrue(result.passed, result.failures())
        self.assertTrue(result.to_dict()['passed'])


class ElementChecksTest(TestCase):
    def test_reflexivity_witness(self):
        presheaf = finite_set(3)
        subs, note = subobject_scope(presheaf)
        shift = element(presheaf, lambda x: [x + 1])
        report = element_checks(shift, subs, note)['reflexivity']
        self.assertTrue(report.passed)
        y, = report.witness
        self.assertFalse(
            erosion(shift, y) <= y <= dilation(shift, y), y.as_dict(),
        )
        self.assertEqual(report.notes[-1], note)

    def test_reflexive_element_has_no_witness(self):
        presheaf, b = line_world(4)
        subs, note = subobject_scope(presheaf)
        report = element_checks(b, subs, note)['reflexivity']
        self.assertTrue(report.passed)
        self.assertEqual(report.witness, ())


class LogicSuiteTest(TestCase):
    def test_graph(self):
        universe = load_bundle(join(BUNDLES, 'graph.json')).universe
        result = run_suite('logic', universe, depth=1, seed=TEST_SEED,
                           tuple_cap=300, workers=1)
        self.assertTrue(result.passed, result.failures())
        self.assertTrue(result.checks['M0/soundness'])
        self.assertEqual(
            result.checks['double-negation'].notes, ('refuted in M0', ),
        )
        self.assertEqual(
            result.checks['M0/double-negation'].notes,
            ('exhaustive over 5 subobjects', 'refuted by 1 of 5'),
        )
        self.assertNotIn('M0/double-negation', result.informational)

    def test_boolean_models_never_refute_double_negation(self):
        result = run_suite('logic', coin_universe(), depth=0, workers=1)
        self.assertTrue(result.passed, result.failures())
        for name in ('M1', 'M2', 'M3', 'M4'):
            report = result.checks['{}/double-negation'.format(name)]
            self.assertTrue(report)
            self.assertEqual(report.notes[-1], 'Sub(X) is Boolean')

    def test_unrefuted_double_negation_fails(self):
        universe = load_bundle(join(BUNDLES, 'graph.json')).universe
        with patch('morphologic.suites.sequent_valid', return_value=True):
            result = run_suite('logic', universe, depth=0, workers=1)
        report = result.checks['M0/double-negation']
        self.assertFalse(report)
        self.assertEqual(report.law, 'double-negation')
        name, y = report.witness
        self.assertEqual(name, 'M0')
        self.assertNotEqual(neg(neg(y)), y)
        self.assertFalse(result.passed)


class ReasoningSuiteTest(TestCase):
    def setUp(self):
        self.universe = coin_universe()

    def test_agm(self):
        result = run_suite('agm', self.universe, depth=1, seed=TEST_SEED,
                           tuple_cap=2000, workers=1)
        dilation, tau = result.postulates
        self.assertEqual(dilation.operator, 'dilation')
        self.assertFalse(dilation.verdicts['G1'])
        self.assertTrue(tau.passed)
        self.assertFalse(result.passed)
        self.assertEqual(len(result.to_dict()['postulates']), 2)

    def test_abduction(self):
        result = run_suite('abduction', self.universe, depth=0, workers=1)
        self.assertEqual(
            [report.operator for report in result.postulates],
            ['lcr', 'lnr'],
        )

    def test_unknown_suite(self):
        with self.assertRaises(InputError):
            run_suite('vote', self.universe, depth=0)
