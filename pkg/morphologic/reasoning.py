"""morphologic - Revision, contraction, merging and abduction

Every notion that quantifies over models is computed relative to a finite
ModelUniverse.  The tau and zeta chains stop at a fixpoint of rho or kappa,
detected either on the syntax tree or on the denotations in every model of
the universe.

Copyright (c) 2024 morphologic developers
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional

from morphologic.exceptions import (
    AbductionUndefinedError,
    InputError,
    MergeUnreachableError,
    RevisionUnreachableError,
    UniverseError,
)
from morphologic.formula import (
    BOT,
    TOP,
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Not,
    Or,
    Top,
    Var,
    conjunction,
)
from morphologic.logic import ModelUniverse
from morphologic.settings import (
    CORPUS_CAP,
    DEFAULT_FIXPOINT_MODE,
    FIXPOINT_MODES,
    REVISION_OPERATORS,
    SEMANTIC_STEP_CAP,
    SYNTACTIC_STEP_CAP,
)

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def rho(formula: Formula) -> Formula:
    """Weaken the formula one step, turning boxes into diamonds"""
    if isinstance(formula, (Top, Bot, Var)):
        return formula
    if isinstance(formula, Imp):
        return Or(
            Imp(kappa(formula.left), formula.right),
            Imp(formula.left, rho(formula.right)),
        )
    if isinstance(formula, (And, Or)):
        cls = type(formula)
        return Or(
            cls(rho(formula.left), formula.right),
            cls(formula.left, rho(formula.right)),
        )
    if isinstance(formula, Not):
        return Not(kappa(formula.arg))
    if isinstance(formula, Box):
        return Dia(formula.arg)
    return Dia(rho(formula.arg))


@lru_cache(maxsize=None)
def kappa(formula: Formula) -> Formula:
    """Strengthen the formula one step, turning diamonds into boxes"""
    if isinstance(formula, (Top, Bot, Var)):
        return formula
    if isinstance(formula, Imp):
        return Or(
            Imp(formula.left, kappa(formula.right)),
            Imp(rho(formula.left), formula.right),
        )
    if isinstance(formula, (And, Or)):
        cls = type(formula)
        return Or(
            cls(kappa(formula.left), formula.right),
            cls(formula.left, kappa(formula.right)),
        )
    if isinstance(formula, Not):
        return Not(rho(formula.arg))
    if isinstance(formula, Box):
        return Box(kappa(formula.arg))
    return Box(formula.arg)


def rho_kappa(which: str, formula: Formula) -> Formula:
    if which == 'rho':
        return rho(formula)
    if which == 'kappa':
        return kappa(formula)
    raise ValueError('Unknown transform "{}"'.format(which))


def _check_mode(mode, universe):
    if mode not in FIXPOINT_MODES:
        raise InputError('Unknown fixpoint mode "{}"'.format(mode))
    if mode == 'semantic' and universe is None:
        raise UniverseError('Semantic fixpoints need a universe')


def _fixed(formula, image, mode, universe):
    if mode == 'syntactic':
        return image == formula
    return universe.same_denotation(image, formula)


def tau(formula: Formula, mode=DEFAULT_FIXPOINT_MODE,
        universe: Optional[ModelUniverse] = None) -> Formula:
    _check_mode(mode, universe)
    image = rho(formula)
    if _fixed(formula, image, mode, universe):
        return TOP
    return image


def zeta(formula: Formula, mode=DEFAULT_FIXPOINT_MODE,
         universe: Optional[ModelUniverse] = None) -> Formula:
    _check_mode(mode, universe)
    image = kappa(formula)
    if _fixed(formula, image, mode, universe):
        return BOT
    return image


def tau_zeta(which: str, formula: Formula, mode=DEFAULT_FIXPOINT_MODE,
             universe=None) -> Formula:
    if which == 'tau':
        return tau(formula, mode, universe)
    if which == 'zeta':
        return zeta(formula, mode, universe)
    raise ValueError('Unknown mapping "{}"'.format(which))


def _step_cap(mode):
    return SYNTACTIC_STEP_CAP if mode == 'syntactic' else SEMANTIC_STEP_CAP


@dataclass(frozen=True)
class Revision:
    """Result of a revision or contraction, with the witness n"""
    formula: Formula
    n: int


@dataclass(frozen=True)
class Merge:
    formula: Formula
    n: int
    parts: tuple = ()


def revise_dilation(universe: ModelUniverse, phi: Formula,
                    psi: Formula) -> Revision:
    """Dilate phi until it meets psi: <>^n phi & psi with n minimal"""
    if not universe.consistent(psi):
        raise RevisionUnreachableError(
            'Cannot revise by the inconsistent "{}"'.format(psi)
        )
    current = phi
    for n in range(SEMANTIC_STEP_CAP + 1):
        candidate = And(current, psi)
        if universe.consistent(candidate):
            log.debug('Dilation revision found at n={}'.format(n))
            return Revision(candidate, n)
        dilated = Dia(current)
        # Mod(<>^k phi) grows with k and stops once the denotations do
        if universe.same_denotation(dilated, current):
            break
        current = dilated
    raise RevisionUnreachableError(
        'Dilations of "{}" never meet "{}"'.format(phi, psi)
    )


def revise_tau(universe: ModelUniverse, phi: Formula, psi: Formula,
               mode=DEFAULT_FIXPOINT_MODE) -> Revision:
    """tau^n(phi) & psi with n minimal"""
    _check_mode(mode, universe)
    if not universe.consistent(psi):
        raise RevisionUnreachableError(
            'Cannot revise by the inconsistent "{}"'.format(psi)
        )
    current = phi
    for n in range(_step_cap(mode) + 1):
        candidate = And(current, psi)
        if universe.consistent(candidate):
            log.debug('Tau revision found at n={}'.format(n))
            return Revision(candidate, n)
        following = tau(current, mode, universe)
        if following == current:
            break
        current = following
    raise RevisionUnreachableError(
        'No tau step of "{}" is consistent with "{}" ({} mode)'.format(
            phi, psi, mode,
        )
    )


def revise(universe: ModelUniverse, phi: Formula, psi: Formula,
           operator='tau', mode=DEFAULT_FIXPOINT_MODE) -> Revision:
    if operator == 'dilation':
        return revise_dilation(universe, phi, psi)
    if operator == 'tau':
        return revise_tau(universe, phi, psi, mode)
    raise InputError('Unknown revision operator "{}", choose from {}'.format(
        operator, ', '.join(REVISION_OPERATORS),
    ))


def contract(universe: ModelUniverse, phi: Formula, psi: Formula,
             operator='tau', mode=DEFAULT_FIXPOINT_MODE) -> Revision:
    """Harper contraction (phi * ~psi) | phi"""
    revision = revise(universe, phi, Not(psi), operator, mode)
    return Revision(Or(revision.formula, phi), revision.n)


def merge(universe: ModelUniverse, formulas: Iterable[Formula],
          operator='tau', mode=DEFAULT_FIXPOINT_MODE) -> Merge:
    """Weaken every formula n times, n minimal for a consistent conjunction

    The tau operator weakens syntactically; the dilation operator wraps
    every formula into n diamonds instead.
    """
    current = list(formulas)
    if not current:
        raise InputError('Nothing to merge')
    if operator not in REVISION_OPERATORS:
        raise InputError('Unknown merging operator "{}"'.format(operator))
    if operator == 'tau':
        _check_mode(mode, universe)
        cap = _step_cap(mode)
    else:
        cap = SEMANTIC_STEP_CAP
    for n in range(cap + 1):
        candidate = conjunction(current)
        if universe.consistent(candidate):
            return Merge(candidate, n, tuple(current))
        if operator == 'tau':
            following = [tau(f, mode, universe) for f in current]
            stuck = following == current
        else:
            following = [Dia(f) for f in current]
            stuck = all(
                universe.same_denotation(a, b)
                for a, b in zip(following, current)
            )
        if stuck:
            break
        current = following
    raise MergeUnreachableError('No common weakening is consistent')


@dataclass(frozen=True)
class Abduction:
    """The last retraction of a theory that stays consistent with an
    observation, and the explanations it admits"""
    variant: str
    theory: Formula
    observation: Formula
    n: int
    cut: Formula
    mods: frozenset
    chain: tuple = ()
    universe: ModelUniverse = field(default=None, compare=False, repr=False)

    def explains(self, psi: Formula) -> bool:
        """psi explains the observation when T & psi is consistent and its
        models lie in the cut"""
        mods = self.universe.mod_set(And(self.theory, psi))
        return bool(mods) and mods <= self.mods


def abduce(universe: ModelUniverse, theory: Iterable[Formula], phi: Formula,
           variant='lcr', mode=DEFAULT_FIXPOINT_MODE) -> Abduction:
    _check_mode(mode, universe)
    conj = conjunction(theory)
    if not universe.consistent(And(conj, phi)):
        raise AbductionUndefinedError(
            'Theory and observation "{}" are inconsistent'.format(phi)
        )
    if variant == 'lcr':
        start = conj

        def cut(retracted):
            return And(retracted, phi)
    elif variant == 'lnr':
        start = And(conj, phi)

        def cut(retracted):
            return retracted
    else:
        raise InputError('Unknown abduction variant "{}"'.format(variant))

    chain = [start]
    current = start
    for _ in range(_step_cap(mode)):
        following = zeta(current, mode, universe)
        if not universe.mod_set(cut(following)):
            break
        chain.append(following)
        current = following
    else:
        raise AbductionUndefinedError(
            'The retraction chain of "{}" does not vanish within the step '
            'cap ({} mode)'.format(conj, mode)
        )
    n = len(chain) - 1
    formula = cut(current)
    log.debug('Abduction ({}) stops at n={}'.format(variant, n))
    return Abduction(
        variant=variant,
        theory=conj,
        observation=phi,
        n=n,
        cut=formula,
        mods=universe.mod_set(formula),
        chain=tuple(chain),
        universe=universe,
    )


def generate_corpus(names: Iterable[str], depth: int,
                    cap=None) -> List[Formula]:
    """Every formula up to the given depth, in a stable order

    A corpus of depth d is a prefix of the corpus of depth d + 1.
    """
    cap = CORPUS_CAP if cap is None else cap
    corpus = [TOP, BOT] + [Var(name) for name in sorted(set(names))]
    seen = set(corpus)
    corpus = corpus[:cap]

    def add(formula):
        if formula not in seen:
            seen.add(formula)
            corpus.append(formula)
        return len(corpus) >= cap

    for _ in range(depth):
        if len(corpus) >= cap:
            break
        previous = list(corpus)
        full = False
        for formula in previous:
            if full:
                break
            for unary in (Not, Box, Dia):
                full = add(unary(formula))
                if full:
                    break
        for left in previous:
            if full:
                break
            for right in previous:
                if full:
                    break
                for binary in (And, Or, Imp):
                    full = add(binary(left, right))
                    if full:
                        break
    log.debug('Corpus of depth {} has {} formulas'.format(depth, len(corpus)))
    return corpus
