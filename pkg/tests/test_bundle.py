"""morphologic - Model bundle tests

Copyright (c) 2024 morphologic developers
"""

import json
from os.path import join
from unittest import TestCase

from morphologic.bundle import load_bundle, parse_bundle
from morphologic.exceptions import BundleError
from morphologic.formula import Var
from morphologic.rcc8 import classify
from tests import BUNDLES


def document(**changes):
    data = {
        'backend': 'set',
        'elements': ['0', '1'],
        'structuring': {'element': 'full'},
        'valuation': {'p': ['0']},
    }
    data.update(changes)
    return json.dumps(data)


class ShippedBundleTest(TestCase):
    def test_line(self):
        bundle = load_bundle(join(BUNDLES, 'line.json'))
        self.assertEqual(bundle.name, 'line world')
        self.assertEqual(len(bundle.universe), 6)
        for model in bundle.universe:
            self.assertEqual(
                classify(model, Var('p'), Var('q')).relation, model.name,
            )

    def test_graph(self):
        bundle = load_bundle(join(BUNDLES, 'graph.json'))
        self.assertFalse(bundle.model.boolean)
        self.assertEqual(bundle.model.name, 'M0')
        self.assertEqual(bundle.presheaf.restrict('t', 'e'), 'v')
        self.assertEqual(len(bundle.universe), 1)

    def test_universes(self):
        two = load_bundle(join(BUNDLES, 'two-models.json'))
        self.assertEqual([m.name for m in two.universe], ['M1', 'M2'])
        every = load_bundle(join(BUNDLES, 'all-valuations.json'))
        self.assertEqual(len(every.universe), 4)

    def test_missing_file(self):
        with self.assertRaises(BundleError):
            load_bundle(join(BUNDLES, 'missing.json'))


class BundleFormatTest(TestCase):
    def test_integer_ids(self):
        bundle = parse_bundle(document(elements=[0, 1], valuation={'p': [1]}))
        self.assertEqual(bundle.valuation['p'].at('*'), frozenset(['1']))
        self.assertEqual(bundle.name, None)

    def test_reflexive_closure(self):
        bundle = parse_bundle(document(structuring={
            'element': [['0', '1']], 'reflexive_closure': True,
        }))
        self.assertEqual(bundle.neighborhood.kind, 'derived')

    def test_families(self):
        bundle = parse_bundle(document(structuring={
            'families': {'0': [['0'], ['0', '1']], '1': [['0', '1']]},
        }))
        self.assertEqual(bundle.neighborhood.kind, 'explicit')

    def test_overlays_keep_the_base_valuation(self):
        bundle = parse_bundle(document(
            valuation={'p': ['0'], 'q': []},
            universe=[{'valuation': {'q': ['1']}}],
        ))
        model, = bundle.universe
        self.assertEqual(model.name, 'M1')
        self.assertEqual(model.valuation['p'], bundle.valuation['p'])


class BundleErrorTest(TestCase):
    def assertLocation(self, text, location):
        with self.assertRaises(BundleError) as context:
            parse_bundle(text)
        self.assertEqual(context.exception.location, location)
        self.assertTrue(str(context.exception))

    def test_locations(self):
        self.assertLocation('{', '')
        self.assertLocation(document(version=2), 'version')
        self.assertLocation(document(backend='graph'), 'backend')
        self.assertLocation(document(elements=['0', True]), 'elements.1')
        self.assertLocation(document(structuring=None), 'structuring')
        self.assertLocation(document(valuation={'p': ['9']}), 'valuation.p')
        self.assertLocation(
            document(structuring={'element': [['0', '1']]}), 'structuring',
        )
        self.assertLocation(
            document(universe=[{'valuation': {'r': []}}, {}]), 'universe',
        )
        self.assertLocation(
            document(universe={'all_valuations': []}),
            'universe.all_valuations',
        )

    def test_presheaf_locations(self):
        with open(join(BUNDLES, 'graph.json')) as fp:
            data = json.load(fp)
        data['actions']['s'] = {'e': 'w'}
        self.assertLocation(json.dumps(data), 'actions')
        del data['category']['objects']
        self.assertLocation(json.dumps(data), 'category.objects')

    def test_category_object_ids(self):
        with open(join(BUNDLES, 'graph.json')) as fp:
            data = json.load(fp)
        data['category']['objects'] = ['V', None]
        self.assertLocation(json.dumps(data), 'category.objects.1')
        data['category']['objects'] = ['V', 'E']
        data['category']['morphisms']['s'] = ['V', 2.5]
        self.assertLocation(json.dumps(data), 'category.morphisms.s.1')

    def test_reserved_variable_names(self):
        self.assertLocation(document(valuation={'T': ['0']}), 'valuation.T')
        self.assertLocation(
            document(universe={'all_valuations': ['p', 'F']}),
            'universe.all_valuations',
        )


class IntegerObjectTest(TestCase):
    def test_integer_objects(self):
        bundle = parse_bundle(json.dumps({
            'backend': 'presheaf',
            'category': {
                'objects': [0, 1],
                'morphisms': {'s': [0, 1], 't': [0, 1]},
            },
            'carriers': {'0': ['u', 'v'], '1': ['e']},
            'actions': {'s': {'e': 'u'}, 't': {'e': 'v'}},
            'structuring': {'element': 'full'},
            'valuation': {'p': {'0': ['u'], '1': []}},
        }))
        self.assertEqual(bundle.presheaf.category.objects, ('0', '1'))
        self.assertEqual(bundle.presheaf.category.identities['0'], '10')
        self.assertEqual(bundle.presheaf.restrict('t', 'e'), 'v')
