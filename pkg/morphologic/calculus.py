"""morphologic - Derivation checker for the modal sequent calculus

Derivations are trees of sequents, each node tagged with the rule that
produced it.  Checking only matches every node against its rule; there is no
proof search.  Double-line rules are accepted in both directions.

Copyright (c) 2024 morphologic developers
"""

import logging
from collections import namedtuple
from dataclasses import dataclass
from typing import Iterable, Tuple

from morphologic.exceptions import BundleError, ParseError
from morphologic.formula import (
    BOT,
    TOP,
    And,
    Box,
    Dia,
    Formula,
    Imp,
    Not,
    Or,
    Sequent,
    format_sequent,
    parse_sequent,
)
from morphologic.reports import Report

log = logging.getLogger(__name__)

Rule = namedtuple('Rule', ['name', 'arity', 'schema', 'matches'])

RULES = {}

# Leaf rules only admitted on request
S4_RULES = {'Axiom-S4'}
CLASSICAL_RULES = {'Axiom-Classical'}


def rule(name, arity, schema):
    """Register a rule; the function decides an instance from
    (conclusion, premises)"""
    def decorator(fn):
        RULES[name] = Rule(name, arity, schema, fn)
        return fn
    return decorator


@dataclass(frozen=True)
class Derivation:
    rule: str
    sequent: Sequent
    children: Tuple['Derivation', ...] = ()

    @classmethod
    def from_dict(cls, data, location='root'):
        if not isinstance(data, dict):
            raise BundleError(location, 'Derivation node must be an object')
        for key in ('rule', 'sequent'):
            if not isinstance(data.get(key), str):
                raise BundleError(location, 'Missing string "{}"'.format(key))
        children = data.get('children', [])
        if not isinstance(children, list):
            raise BundleError(location, '"children" must be a list')
        try:
            sequent = parse_sequent(data['sequent'])
        except ParseError as error:
            raise BundleError(location + '.sequent', str(error))
        return cls(
            rule=data['rule'],
            sequent=sequent,
            children=tuple(
                cls.from_dict(child, '{}.children.{}'.format(location, index))
                for index, child in enumerate(children)
            ),
        )

    def to_dict(self):
        return {
            'rule': self.rule,
            'sequent': format_sequent(self.sequent),
            'children': [child.to_dict() for child in self.children],
        }


def _is(formula, cls):
    return isinstance(formula, cls)


@rule('Identity', 0, 'phi |- phi')
def _identity(s, premises):
    return s.left == s.right


@rule('Axiom-Preservation', 0, '[]T -||- T, <>F -||- F')
def _preservation(s, premises):
    return (s.left, s.right) in {
        (Box(TOP), TOP), (TOP, Box(TOP)), (Dia(BOT), BOT), (BOT, Dia(BOT)),
    }


@rule('Axiom-Duality', 0, '[]~phi |- ~<>phi')
def _duality(s, premises):
    return (
        _is(s.left, Box) and _is(s.left.arg, Not) and
        s.right == Not(Dia(s.left.arg.arg))
    )


@rule(
    'Axiom-Distributivity', 0,
    '[](phi & psi) -||- []phi & []psi, <>phi | <>psi |- <>(phi | psi)',
)
def _distributivity(s, premises):
    def split_box(boxed, conj):
        return (
            _is(boxed, Box) and _is(boxed.arg, And) and
            conj == And(Box(boxed.arg.left), Box(boxed.arg.right))
        )
    if split_box(s.left, s.right) or split_box(s.right, s.left):
        return True
    return (
        _is(s.right, Dia) and _is(s.right.arg, Or) and
        s.left == Or(Dia(s.right.arg.left), Dia(s.right.arg.right))
    )


@rule('Axiom-K', 0, '[](phi -> psi) |- []phi -> []psi')
def _k(s, premises):
    return (
        _is(s.left, Box) and _is(s.left.arg, Imp) and
        s.right == Imp(Box(s.left.arg.left), Box(s.left.arg.right))
    )


@rule('Axiom-T', 0, '[]phi |- phi, phi |- <>phi')
def _t(s, premises):
    return s.left == Box(s.right) or s.right == Dia(s.left)


@rule('Axiom-S4', 0, '[]phi |- [][]phi, <><>phi |- <>phi')
def _s4(s, premises):
    return (
        (_is(s.left, Box) and s.right == Box(s.left)) or
        (_is(s.right, Dia) and s.left == Dia(s.right))
    )


@rule('Axiom-Classical', 0, '~~phi |- phi')
def _classical(s, premises):
    return s.left == Not(Not(s.right))


@rule('Inconsistency', 0, 'F |- psi')
def _inconsistency(s, premises):
    return s.left == BOT


@rule('Tautology', 0, 'phi |- T')
def _tautology(s, premises):
    return s.right == TOP


@rule('Cut', 2, 'phi |- psi, psi |- chi / phi |- chi')
def _cut(s, premises):
    first, second = premises
    return (
        first.left == s.left and first.right == second.left and
        second.right == s.right
    )


@rule('Conj-ElimL', 0, 'phi & psi |- phi')
def _conj_elim_left(s, premises):
    return _is(s.left, And) and s.left.left == s.right


@rule('Conj-ElimR', 0, 'phi & psi |- psi')
def _conj_elim_right(s, premises):
    return _is(s.left, And) and s.left.right == s.right


@rule('Conj-Idem', 0, 'phi & phi -||- phi')
def _conj_idem(s, premises):
    return s.left == And(s.right, s.right) or s.right == And(s.left, s.left)


@rule('Conj-Comm', 0, 'phi & psi |- psi & phi')
def _conj_comm(s, premises):
    return (
        _is(s.left, And) and s.right == And(s.left.right, s.left.left)
    )


@rule('Conj-Intro', 2, 'phi |- psi, phi |- chi / phi |- psi & chi')
def _conj_intro(s, premises):
    first, second = premises
    return (
        first.left == s.left and second.left == s.left and
        s.right == And(first.right, second.right)
    )


@rule('Disj-IntroL', 0, 'phi |- phi | psi')
def _disj_intro_left(s, premises):
    return _is(s.right, Or) and s.right.left == s.left


@rule('Disj-IntroR', 0, 'psi |- phi | psi')
def _disj_intro_right(s, premises):
    return _is(s.right, Or) and s.right.right == s.left


@rule('Disj-Comm', 0, 'phi | psi |- psi | phi')
def _disj_comm(s, premises):
    return _is(s.left, Or) and s.right == Or(s.left.right, s.left.left)


@rule('Disj-Elim', 2, 'phi |- chi, psi |- chi / phi | psi |- chi')
def _disj_elim(s, premises):
    first, second = premises
    return (
        first.right == s.right and second.right == s.right and
        s.left == Or(first.left, second.left)
    )


@rule('Disj-Split', 1, 'phi | psi |- chi / phi |- chi (or psi |- chi)')
def _disj_split(s, premises):
    premise, = premises
    return (
        _is(premise.left, Or) and premise.right == s.right and
        s.left in (premise.left.left, premise.left.right)
    )


@rule('Distr', 0, 'phi & (psi | chi) -||- (phi & psi) | (phi & chi)')
def _distr(s, premises):
    def distributed(factored, spread):
        return (
            _is(factored, And) and _is(factored.right, Or) and
            spread == Or(
                And(factored.left, factored.right.left),
                And(factored.left, factored.right.right),
            )
        )
    return distributed(s.left, s.right) or distributed(s.right, s.left)


@rule('Imp', 1, 'phi & psi |- chi //- phi |- psi -> chi')
def _imp(s, premises):
    premise, = premises

    def curried(below, above):
        return (
            _is(below.left, And) and _is(above.right, Imp) and
            above.left == below.left.left and
            above.right == Imp(below.left.right, below.right)
        )
    return curried(premise, s) or curried(s, premise)


@rule('Neg', 0, '~phi -||- phi -> F')
def _neg(s, premises):
    return (
        (_is(s.left, Not) and s.right == Imp(s.left.arg, BOT)) or
        (_is(s.right, Not) and s.left == Imp(s.right.arg, BOT))
    )


@rule('Mod-Box', 1, 'phi |- psi / []phi |- []psi')
def _mod_box(s, premises):
    premise, = premises
    return s.left == Box(premise.left) and s.right == Box(premise.right)


@rule('Mod-Dia', 1, 'phi |- psi / <>phi |- <>psi')
def _mod_dia(s, premises):
    premise, = premises
    return s.left == Dia(premise.left) and s.right == Dia(premise.right)


AXIOMS = [
    'Identity',
    'Axiom-Preservation',
    'Axiom-Duality',
    'Axiom-Distributivity',
    'Axiom-K',
    'Axiom-T',
    'Axiom-S4',
    'Axiom-Classical',
    'Inconsistency',
    'Tautology',
    'Conj-ElimL',
    'Conj-ElimR',
    'Conj-Idem',
    'Conj-Comm',
    'Disj-IntroL',
    'Disj-IntroR',
    'Disj-Comm',
    'Distr',
    'Neg',
]


def check_derivation(
    derivation: Derivation, allow_s4=False, allow_classical=False,
) -> Report:
    """Check every node of the tree against its rule

    The first rejected node is reported with its path (child indices from
    the root) and the schema it should have matched.
    """
    name = 'derivation'
    stack = [(derivation, 'root')]
    while stack:
        node, path = stack.pop()
        try:
            registered = RULES[node.rule]
        except KeyError:
            return Report.fail(name, 'unknown-rule', path, node.rule)
        if node.rule in S4_RULES and not allow_s4:
            return Report.fail(
                name, 'not-allowed', path, node.rule, registered.schema,
                notes=['S4 axioms need topological models'],
            )
        if node.rule in CLASSICAL_RULES and not allow_classical:
            return Report.fail(
                name, 'not-allowed', path, node.rule, registered.schema,
                notes=['the classical axiom needs the Set backend'],
            )
        if len(node.children) != registered.arity:
            return Report.fail(
                name, 'arity', path, node.rule, registered.schema,
            )
        premises = [child.sequent for child in node.children]
        if not registered.matches(node.sequent, premises):
            log.debug('Rejected {} at {}'.format(node.rule, path))
            return Report.fail(
                name, 'rejected', path, node.rule, registered.schema,
            )
        for index in reversed(range(len(node.children))):
            stack.append(
                (node.children[index], '{}.{}'.format(path, index))
            )
    return Report.ok(name)


def axiom_instances(formulas: Iterable[Formula], pairs: Iterable = ()):
    """Yield (rule, sequent) for leaf axiom schemas over given formulas

    Schemas with one metavariable range over formulas, those with two over
    pairs.
    """
    for phi in formulas:
        yield 'Identity', Sequent(phi, phi)
        yield 'Axiom-Duality', Sequent(Box(Not(phi)), Not(Dia(phi)))
        yield 'Axiom-T', Sequent(Box(phi), phi)
        yield 'Axiom-T', Sequent(phi, Dia(phi))
        yield 'Axiom-S4', Sequent(Box(phi), Box(Box(phi)))
        yield 'Axiom-S4', Sequent(Dia(Dia(phi)), Dia(phi))
        yield 'Axiom-Classical', Sequent(Not(Not(phi)), phi)
        yield 'Inconsistency', Sequent(BOT, phi)
        yield 'Tautology', Sequent(phi, TOP)
        yield 'Conj-Idem', Sequent(And(phi, phi), phi)
        yield 'Conj-Idem', Sequent(phi, And(phi, phi))
        yield 'Neg', Sequent(Not(phi), Imp(phi, BOT))
        yield 'Neg', Sequent(Imp(phi, BOT), Not(phi))
    yield 'Axiom-Preservation', Sequent(Box(TOP), TOP)
    yield 'Axiom-Preservation', Sequent(TOP, Box(TOP))
    yield 'Axiom-Preservation', Sequent(Dia(BOT), BOT)
    yield 'Axiom-Preservation', Sequent(BOT, Dia(BOT))
    for phi, psi in pairs:
        yield 'Axiom-Distributivity', Sequent(
            Box(And(phi, psi)), And(Box(phi), Box(psi)),
        )
        yield 'Axiom-Distributivity', Sequent(
            And(Box(phi), Box(psi)), Box(And(phi, psi)),
        )
        yield 'Axiom-Distributivity', Sequent(
            Or(Dia(phi), Dia(psi)), Dia(Or(phi, psi)),
        )
        yield 'Axiom-K', Sequent(
            Box(Imp(phi, psi)), Imp(Box(phi), Box(psi)),
        )
        yield 'Conj-ElimL', Sequent(And(phi, psi), phi)
        yield 'Conj-ElimR', Sequent(And(phi, psi), psi)
        yield 'Conj-Comm', Sequent(And(phi, psi), And(psi, phi))
        yield 'Disj-IntroL', Sequent(phi, Or(phi, psi))
        yield 'Disj-IntroR', Sequent(psi, Or(phi, psi))
        yield 'Disj-Comm', Sequent(Or(phi, psi), Or(psi, phi))


def distr_instances(triples: Iterable):
    """Distributivity instances over (phi, psi, chi) triples"""
    for phi, psi, chi in triples:
        yield 'Distr', Sequent(
            And(phi, Or(psi, chi)), Or(And(phi, psi), And(phi, chi)),
        )
        yield 'Distr', Sequent(
            Or(And(phi, psi), And(phi, chi)), And(phi, Or(psi, chi)),
        )
