"""morphologic - Formula syntax tests

Copyright (c) 2024 morphologic developers
"""

from unittest import TestCase

from morphologic.exceptions import InputError, ParseError
from morphologic.formula import (
    BOT,
    TOP,
    And,
    Box,
    Dia,
    Imp,
    Not,
    Or,
    Sequent,
    Var,
    conjunction,
    depth,
    disjunction,
    format_formula,
    format_sequent,
    parse_formula,
    parse_sequent,
    variables,
)
from tests import TEST_SEED
from tests.conftest import rng_for

p, q, r = Var('p'), Var('q'), Var('r')


def random_formula(rng, size):
    if size <= 0:
        return rng.choice([TOP, BOT, p, q, r])
    kind = rng.choice([Not, Box, Dia, And, Or, Imp])
    if kind in (Not, Box, Dia):
        return kind(random_formula(rng, size - 1))
    split = rng.randrange(size)
    return kind(
        random_formula(rng, split), random_formula(rng, size - 1 - split),
    )


class ParseTest(TestCase):
    def test_constants_and_variables(self):
        self.assertEqual(parse_formula('T'), TOP)
        self.assertEqual(parse_formula('F'), BOT)
        self.assertEqual(parse_formula('Tx'), Var('Tx'))
        self.assertEqual(parse_formula('q_1'), Var('q_1'))

    def test_precedence(self):
        self.assertEqual(
            parse_formula('~p & q | r -> p'),
            Imp(Or(And(Not(p), q), r), p),
        )
        self.assertEqual(
            parse_formula('[]p & <>~q'), And(Box(p), Dia(Not(q))),
        )
        self.assertEqual(parse_formula('[]<>p'), Box(Dia(p)))

    def test_associativity(self):
        self.assertEqual(parse_formula('p -> q -> r'), Imp(p, Imp(q, r)))
        self.assertEqual(parse_formula('p & q & r'), And(And(p, q), r))
        self.assertEqual(parse_formula('p | q | r'), Or(Or(p, q), r))
        self.assertEqual(parse_formula('(p -> q) -> r'), Imp(Imp(p, q), r))

    def test_sequent(self):
        self.assertEqual(
            parse_sequent('[]p |- p | q'), Sequent(Box(p), Or(p, q)),
        )
        self.assertEqual(parse_sequent('p|-q'), Sequent(p, q))

    def test_errors(self):
        with self.assertRaises(ParseError) as context:
            parse_formula('p & & q')
        self.assertIn(context.exception.position, (3, 4))
        self.assertIn('Expected formula', context.exception.message)
        self.assertNotIn('Forward', str(context.exception))
        with self.assertRaises(ParseError):
            parse_formula('(p')
        with self.assertRaises(ParseError):
            parse_formula('p q')
        with self.assertRaises(ParseError):
            parse_formula('p |- q')
        with self.assertRaises(ParseError):
            parse_sequent('p')

    def test_deep_nesting(self):
        for text in ('~' * 3000 + 'p', '(' * 400 + 'p' + ')' * 400):
            with self.assertRaises(ParseError) as context:
                parse_formula(text)
            self.assertEqual(context.exception.position, 0)
            self.assertIn('nested too deeply', str(context.exception))
        with self.assertRaises(ParseError):
            parse_sequent('p |- ' + '[]' * 3000 + 'p')

    def test_reserved_names(self):
        for name in ('T', 'F'):
            with self.assertRaises(InputError):
                Var(name)


class FormatTest(TestCase):
    def test_fewest_parentheses(self):
        for text in (
            'p & q | r',
            'p | q & r',
            '(p | q) & r',
            'p -> q -> r',
            '(p -> q) -> r',
            '~(p & q)',
            '[]<>p -> <>[]p',
            'p & (q & r)',
            '~T | F',
        ):
            self.assertEqual(format_formula(parse_formula(text)), text)

    def test_sequent(self):
        self.assertEqual(
            format_sequent(Sequent(Imp(p, q), Box(p))), 'p -> q |- []p',
        )

    def test_random_formulas_parse_back(self):
        rng = rng_for(TEST_SEED, 'formulas')
        for _ in range(1000):
            formula = random_formula(rng, rng.randrange(8))
            self.assertEqual(parse_formula(format_formula(formula)), formula)


class HelperTest(TestCase):
    def test_variables_and_depth(self):
        formula = parse_formula('[](p -> ~q) & T')
        self.assertEqual(variables(formula), frozenset(['p', 'q']))
        self.assertEqual(depth(formula), 4)
        self.assertEqual(depth(p), 0)
        self.assertEqual(variables(TOP), frozenset())

    def test_folds(self):
        self.assertEqual(conjunction([]), TOP)
        self.assertEqual(disjunction([]), BOT)
        self.assertEqual(conjunction([p]), p)
        self.assertEqual(conjunction([p, q, r]), And(And(p, q), r))
        self.assertEqual(disjunction([p, q]), Or(p, q))

    def test_hashable(self):
        self.assertEqual(
            len({parse_formula('[]p'), Box(Var('p')), Dia(p)}), 2,
        )
