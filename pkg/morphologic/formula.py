"""morphologic - Modal formulas

The ASCII syntax is

    T | F | ident | ~f | f & g | f | g | f -> g | []f | <>f | (f)

with the unary operators binding tightest, then &, then |, then the right
associative ->.  Sequents are written "f |- g".

Copyright (c) 2024 morphologic developers
"""

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable

from pyparsing import (
    Forward,
    Keyword,
    Literal,
    Optional,
    ParseBaseException,
    ParserElement,
    Regex,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
)

from morphologic.exceptions import InputError, ParseError

ParserElement.enable_packrat()

# Spelled like variables, parsed as constants
RESERVED_NAMES = frozenset(['T', 'F'])


class Formula(object):
    """Base class of the formula nodes"""

    arity = 0
    precedence = 5

    def children(self):
        return ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash('T'))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Bot(Formula):
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash('F'))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Var(Formula):
    name: str
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if self.name in RESERVED_NAMES:
            raise InputError(
                '"{}" is a constant, not a variable name'.format(self.name)
            )
        object.__setattr__(self, '_hash', hash(('var', self.name)))

    def __hash__(self):
        return self._hash


class Unary(Formula):
    arity = 1
    precedence = 4
    symbol = None

    def children(self):
        return (self.arg, )

    def __post_init__(self):
        object.__setattr__(self, '_hash', hash((self.symbol, self.arg)))

    def __hash__(self):
        return self._hash


class Binary(Formula):
    arity = 2
    symbol = None

    def children(self):
        return (self.left, self.right)

    def __post_init__(self):
        object.__setattr__(
            self, '_hash', hash((self.symbol, self.left, self.right)),
        )

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Not(Unary):
    arg: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '~'

    __hash__ = Unary.__hash__


@dataclass(frozen=True)
class Box(Unary):
    arg: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '[]'

    __hash__ = Unary.__hash__


@dataclass(frozen=True)
class Dia(Unary):
    arg: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '<>'

    __hash__ = Unary.__hash__


@dataclass(frozen=True)
class And(Binary):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '&'
    precedence = 3

    __hash__ = Binary.__hash__


@dataclass(frozen=True)
class Or(Binary):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '|'
    precedence = 2

    __hash__ = Binary.__hash__


@dataclass(frozen=True)
class Imp(Binary):
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False, default=0)
    symbol = '->'
    precedence = 1

    __hash__ = Binary.__hash__


TOP = Top()
BOT = Bot()

UNARY = {'~': Not, '[]': Box, '<>': Dia}


@dataclass(frozen=True)
class Sequent:
    """phi |- psi"""
    left: Formula
    right: Formula

    def __str__(self):
        return format_sequent(self)


def _fold_left(cls):
    def action(tokens):
        return reduce(cls, tokens)
    return action


def _build_grammar():
    formula = Forward()
    unary = Forward()

    ident = Word(alphas + '_', alphanums + '_').set_name('variable')
    ident.set_parse_action(lambda t: Var(t[0]))
    atom = (
        Keyword('T').set_parse_action(lambda: TOP) |
        Keyword('F').set_parse_action(lambda: BOT) |
        ident |
        Suppress('(') - formula + Suppress(')')
    ).set_name('formula')
    prefix = Literal('~') | Literal('[]') | Literal('<>')
    unary <<= (
        (prefix - unary).set_parse_action(lambda t: UNARY[t[0]](t[1])) |
        atom
    ).set_name('formula')
    conj = (unary + ZeroOrMore(Suppress('&') - unary))
    conj.set_parse_action(_fold_left(And))
    disj = (conj + ZeroOrMore(Suppress(Regex(r'\|(?!-)')) - conj))
    disj.set_parse_action(_fold_left(Or))
    formula <<= disj + Optional(Suppress('->') - formula)
    formula.set_parse_action(_fold_left(Imp))
    formula.set_name('formula')

    sequent = formula + Suppress('|-') - formula
    sequent.set_parse_action(lambda t: Sequent(t[0], t[1]))
    sequent.set_name('sequent')
    return formula + StringEnd(), sequent + StringEnd()


FORMULA_GRAMMAR, SEQUENT_GRAMMAR = _build_grammar()


def _parse(grammar, text):
    try:
        return grammar.parse_string(text, parse_all=True)[0]
    except ParseBaseException as error:
        raise ParseError(text, error.loc, error.msg)
    except RecursionError:
        raise ParseError(text, 0, 'formula nested too deeply')


def parse_formula(text: str) -> Formula:
    return _parse(FORMULA_GRAMMAR, text)


def parse_sequent(text: str) -> Sequent:
    return _parse(SEQUENT_GRAMMAR, text)


def format_formula(formula: Formula) -> str:
    """Print with the fewest parentheses that still parse back the same"""
    if isinstance(formula, Top):
        return 'T'
    if isinstance(formula, Bot):
        return 'F'
    if isinstance(formula, Var):
        return formula.name
    if isinstance(formula, Unary):
        return formula.symbol + _wrap(formula.arg, Unary.precedence)
    if isinstance(formula, Imp):
        # -> groups to the right
        return '{} -> {}'.format(
            _wrap(formula.left, Or.precedence),
            _wrap(formula.right, Imp.precedence),
        )
    # & and | group to the left
    return '{} {} {}'.format(
        _wrap(formula.left, formula.precedence),
        formula.symbol,
        _wrap(formula.right, formula.precedence + 1),
    )


def _wrap(formula, needed):
    text = format_formula(formula)
    if formula.precedence < needed:
        return '(' + text + ')'
    return text


def format_sequent(sequent: Sequent) -> str:
    return '{} |- {}'.format(
        format_formula(sequent.left), format_formula(sequent.right),
    )


def variables(formula: Formula) -> frozenset:
    if isinstance(formula, Var):
        return frozenset([formula.name])
    return frozenset().union(*(variables(c) for c in formula.children()))


def depth(formula: Formula) -> int:
    """Nesting depth of connectives, 0 for atoms"""
    if not formula.arity:
        return 0
    return 1 + max(depth(c) for c in formula.children())


def conjunction(formulas: Iterable[Formula]) -> Formula:
    """T for no formula, the formula itself for one, else a left fold"""
    formulas = list(formulas)
    if not formulas:
        return TOP
    return reduce(And, formulas)


def disjunction(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return BOT
    return reduce(Or, formulas)
