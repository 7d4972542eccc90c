"""morphologic - Derivation checker tests

Copyright (c) 2024 morphologic developers
"""

import json
from itertools import product as cartesian
from os.path import join
from unittest import TestCase

from morphologic.calculus import (
    RULES,
    Derivation,
    axiom_instances,
    check_derivation,
    distr_instances,
)
from morphologic.exceptions import BundleError
from morphologic.formula import format_sequent, parse_sequent
from morphologic.logic import Model, ModelUniverse, sequent_valid
from morphologic.morphology import (
    StructuringElement,
    diagonal,
    full_relation,
    neighborhood_from_element,
)
from morphologic.reasoning import generate_corpus
from morphologic.sublattice import generated_by
from tests import BUNDLES, TEST_SEED
from tests.conftest import (
    element,
    finite_set,
    formulas,
    generic_edge,
    graph,
    line_model,
    random_element,
    random_graph_element,
    rng_for,
    subgraph,
)


def leaf(rule, sequent):
    return Derivation(rule, parse_sequent(sequent))


def node(rule, sequent, *children):
    return Derivation(rule, parse_sequent(sequent), tuple(children))


class RuleTest(TestCase):
    def test_axioms(self):
        for rule, sequent in (
            ('Axiom-T', '[]p |- p'),
            ('Axiom-T', 'p |- <>p'),
            ('Axiom-K', '[](p -> q) |- []p -> []q'),
            ('Axiom-Duality', '[]~p |- ~<>p'),
            ('Axiom-Distributivity', '[](p & q) |- []p & []q'),
            ('Axiom-Distributivity', '<>p | <>q |- <>(p | q)'),
            ('Axiom-Preservation', '[]T |- T'),
            ('Distr', 'p & (q | r) |- p & q | p & r'),
            ('Neg', '~p |- p -> F'),
            ('Inconsistency', 'F |- []p'),
        ):
            self.assertTrue(
                check_derivation(leaf(rule, sequent)), (rule, sequent),
            )

    def test_misused_axioms(self):
        for rule, sequent in (
            ('Axiom-T', 'p |- []p'),
            ('Axiom-Distributivity', '<>(p | q) |- <>p | <>q'),
            ('Axiom-Duality', '~<>p |- []p'),
            ('Conj-Comm', 'p & q |- p & q'),
        ):
            report = check_derivation(leaf(rule, sequent))
            self.assertFalse(report, (rule, sequent))
            self.assertEqual(report.law, 'rejected')
            self.assertEqual(report.witness[0], 'root')

    def test_gated_axioms(self):
        s4 = leaf('Axiom-S4', '[]p |- [][]p')
        report = check_derivation(s4)
        self.assertEqual(report.law, 'not-allowed')
        self.assertTrue(check_derivation(s4, allow_s4=True))
        classical = leaf('Axiom-Classical', '~~p |- p')
        self.assertFalse(check_derivation(classical))
        self.assertTrue(check_derivation(classical, allow_classical=True))

    def test_unknown_rule_and_arity(self):
        self.assertEqual(
            check_derivation(leaf('Modus', 'p |- p')).law, 'unknown-rule',
        )
        self.assertEqual(
            check_derivation(leaf('Cut', 'p |- p')).law, 'arity',
        )

    def test_every_rule_has_a_schema(self):
        for name, registered in RULES.items():
            self.assertEqual(registered.name, name)
            self.assertTrue(registered.schema)


class DerivationTest(TestCase):
    def test_nested(self):
        tree = node(
            'Cut', '[]p |- <>(p | q)',
            leaf('Axiom-T', '[]p |- p'),
            node(
                'Cut', 'p |- <>(p | q)',
                leaf('Disj-IntroL', 'p |- p | q'),
                leaf('Axiom-T', 'p | q |- <>(p | q)'),
            ),
        )
        self.assertTrue(check_derivation(tree))

    def test_failure_path(self):
        tree = node(
            'Conj-Intro', 'p & q |- q & p',
            leaf('Conj-ElimR', 'p & q |- q'),
            leaf('Conj-ElimR', 'p & q |- p'),
        )
        report = check_derivation(tree)
        self.assertEqual(report.law, 'rejected')
        self.assertEqual(report.witness[:2], ('root.1', 'Conj-ElimR'))

    def test_double_line_rules(self):
        down = node(
            'Imp', 'p |- q -> p & q',
            leaf('Identity', 'p & q |- p & q'),
        )
        up = node('Imp', 'p & q |- p & q', down)
        wrong = node(
            'Imp', 'p |- q -> p',
            leaf('Identity', 'p & q |- p & q'),
        )
        self.assertTrue(check_derivation(down))
        self.assertTrue(check_derivation(up))
        self.assertEqual(check_derivation(wrong).law, 'rejected')

    def test_shipped_derivation(self):
        with open(join(BUNDLES, 'derivation.json')) as fp:
            tree = Derivation.from_dict(json.load(fp))
        self.assertEqual(tree.rule, 'Mod-Box')
        self.assertTrue(check_derivation(tree))
        self.assertEqual(Derivation.from_dict(tree.to_dict()), tree)

    def test_malformed_documents(self):
        with self.assertRaises(BundleError) as context:
            Derivation.from_dict({'rule': 'Identity'})
        self.assertEqual(context.exception.location, 'root')
        with self.assertRaises(BundleError) as context:
            Derivation.from_dict({
                'rule': 'Mod-Box',
                'sequent': '[]p |- []p',
                'children': [{'rule': 'Identity', 'sequent': 'p |-'}],
            })
        self.assertEqual(
            context.exception.location, 'root.children.0.sequent',
        )
        with self.assertRaises(BundleError):
            Derivation.from_dict([])


class SoundnessTest(TestCase):
    def setUp(self):
        self.corpus = formulas('p', 'q', '[]p', '~q', 'p -> q', '<>(p & q)')
        self.pairs = list(cartesian(self.corpus, repeat=2))

    def instances(self):
        yield from axiom_instances(self.corpus, self.pairs)
        yield from distr_instances(cartesian(self.corpus, repeat=3))

    def test_boolean_model(self):
        model = line_model((0, 1, 2), (2, 3, 4, 5))
        for rule, sequent in self.instances():
            if rule == 'Axiom-S4':
                continue
            self.assertTrue(sequent_valid(model, sequent), (rule, sequent))

    def test_presheaf_model(self):
        edge = generic_edge()
        model = Model(edge, neighborhood_from_element(diagonal(edge)), {
            'p': subgraph(edge, ['u', 'v']),
            'q': subgraph(edge, ['u']),
        })
        refuted = set()
        for rule, sequent in self.instances():
            if not sequent_valid(model, sequent):
                refuted.add(rule)
        self.assertEqual(refuted, {'Axiom-Classical'})


class MixedUniverseSoundnessTest(TestCase):
    """Depth-2 axiom instances over Set and graph models of every kind"""

    def model(self, index, rng):
        if index % 2 == 0:
            presheaf = finite_set(3)
            chain = element(presheaf, lambda x: [x, x + 1])
        else:
            presheaf = graph(['u', 'v', 'w'], {
                'e': ('u', 'v'), 'f': ('v', 'w'), 'g': ('w', 'w'),
            })
            chain = StructuringElement.from_pairs(presheaf, {
                'V': [(x, x) for x in 'uvw'] + [('u', 'v'), ('v', 'w')],
                'E': [(x, x) for x in 'efg'],
            })
        b = [
            diagonal(presheaf),
            full_relation(presheaf),
            chain,
            random_element(presheaf, rng, reflexive=True)
            if presheaf.is_set_backend else
            random_graph_element(presheaf, rng, reflexive=True),
        ][(index // 2) % 4]

        def pick():
            return generated_by(presheaf, {
                c: [x for x in presheaf.at(c) if rng.random() < 0.5]
                for c in presheaf.category.objects
            })

        return Model(presheaf, neighborhood_from_element(b), {
            'p': pick(), 'q': pick(),
        }, name='M{}'.format(index))

    def test_depth_two_corpus(self):
        rng = rng_for(TEST_SEED, 'mixed-universe')
        universe = ModelUniverse(self.model(i, rng) for i in range(20))
        self.assertEqual({m.boolean for m in universe}, {True, False})
        self.assertEqual({m.topological for m in universe}, {True, False})

        corpus = generate_corpus(['p', 'q'], 2, cap=120)
        pairs = [tuple(rng.sample(corpus, 2)) for _ in range(400)]
        triples = [tuple(rng.sample(corpus, 3)) for _ in range(100)]
        instances = list(axiom_instances(corpus, pairs))
        instances.extend(distr_instances(triples))

        failures = []
        for model in universe:
            for rule, sequent in instances:
                if rule == 'Axiom-S4' and not model.topological:
                    continue
                if rule == 'Axiom-Classical' and not model.boolean:
                    continue
                if not sequent_valid(model, sequent):
                    failures.append(
                        (model.name, rule, format_sequent(sequent)),
                    )
        self.assertEqual(failures, [])
