"""morphologic - Rationality postulates by brute force

Postulates quantify over formulas; here they range over a finite corpus,
and over a seeded sample of corpus tuples when there are too many.  A pass
therefore always means a pass on the corpus the report names.

Copyright (c) 2024 morphologic developers
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List

from morphologic.exceptions import OperatorError
from morphologic.formula import (
    TOP,
    And,
    Formula,
    Or,
    conjunction,
    format_formula,
)
from morphologic.logic import ModelUniverse
from morphologic.reasoning import abduce, contract, revise
from morphologic.reports import Report, first_failure
from morphologic.settings import (
    ABDUCTION_POSTULATES,
    AGM_POSTULATES,
    CONTRACTION_POSTULATES,
    DEFAULT_FIXPOINT_MODE,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    EXPECTED_POSTULATES,
    KNOWN_DEVIATIONS,
    MINIMALITY_CHECKS,
    POSTULATE_TUPLE_CAP,
)
from morphologic.utils import fingerprint, parallel

log = logging.getLogger(__name__)


@dataclass
class PostulateReport:
    suite: str
    operator: str
    verdicts: Dict[str, Report]
    expected: List[str]
    corpus_size: int
    corpus_fingerprint: str
    universe_fingerprint: str
    skipped: int = 0
    notes: List[str] = field(default_factory=list)
    deviations: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Whether every postulate the operator is claimed to satisfy holds"""
        return all(
            self.verdicts[name].passed
            for name in self.expected if name in self.verdicts
        )

    def to_dict(self):
        return {
            'suite': self.suite,
            'operator': self.operator,
            'passed': self.passed,
            'corpus_size': self.corpus_size,
            'corpus_fingerprint': self.corpus_fingerprint,
            'universe_fingerprint': self.universe_fingerprint,
            'skipped': self.skipped,
            'notes': list(self.notes),
            'postulates': {
                name: {
                    'passed': report.passed,
                    'expected': name in self.expected,
                    'deviation': self.deviations.get(name),
                    'counterexample': list(report.witness),
                    'notes': list(report.notes),
                }
                for name, report in self.verdicts.items()
            },
        }


class OperatorTable(object):
    """Memoized operator results; undefined results are stored as None"""

    def __init__(self, fn):
        self.fn = fn
        self._results = {}

    def __call__(self, *args):
        try:
            return self._results[args]
        except KeyError:
            pass
        try:
            result = self.fn(*args)
        except OperatorError as error:
            log.debug('Undefined on {}: {}'.format(args, error))
            result = None
        self._results[args] = result
        return result

    @property
    def undefined(self) -> int:
        return sum(1 for r in self._results.values() if r is None)


class Context(object):
    """Universe, corpus and tuple sampling shared by the postulate checks"""

    def __init__(self, universe: ModelUniverse, corpus: List[Formula],
                 seed=DEFAULT_SEED, tuple_cap=POSTULATE_TUPLE_CAP):
        if not corpus:
            raise ValueError('Postulates need a nonempty corpus')
        self.universe = universe
        self.corpus = list(corpus)
        self.seed = seed
        self.tuple_cap = tuple_cap
        self.notes = []
        self._representatives = {}

    def mods(self, formula):
        return self.universe.mod_set(formula)

    def consistent(self, formula):
        return self.universe.consistent(formula)

    def tuples(self, arity):
        total = len(self.corpus) ** arity
        if total <= self.tuple_cap:
            return list(cartesian(self.corpus, repeat=arity))
        rng = random.Random('{}:{}'.format(self.seed, arity))
        note = 'sampled {} of {} corpus {}-tuples'.format(
            self.tuple_cap, total, arity,
        )
        if note not in self.notes:
            self.notes.append(note)
        return [
            tuple(rng.choice(self.corpus) for _ in range(arity))
            for _ in range(self.tuple_cap)
        ]

    def representative(self, formula, context=TOP):
        """First corpus formula with the same models as formula, both taken
        together with the context"""
        key = context
        if key not in self._representatives:
            table = {}
            for candidate in self.corpus:
                table.setdefault(self.mods(And(context, candidate)), candidate)
            self._representatives[key] = table
        return self._representatives[key].get(
            self.mods(And(context, formula)), formula,
        )

    def model_name(self, indices):
        if not indices:
            return None
        return _name(self.universe, min(indices))


def _name(universe, index):
    return universe.models[index].name or 'M{}'.format(index + 1)


def _show(*formulas):
    return tuple(format_formula(f) for f in formulas)


def _fail(name, *formulas, model=None):
    witness = _show(*formulas)
    if model is not None:
        witness += (model, )
    return Report.fail(name, name, *witness)


def _report(suite, operator, ctx, verdicts, skipped, extra_notes=()):
    expected = EXPECTED_POSTULATES.get((suite, operator), [])
    deviations = KNOWN_DEVIATIONS.get((suite, operator), {})
    return PostulateReport(
        suite=suite,
        operator=operator,
        verdicts=verdicts,
        expected=list(expected),
        corpus_size=len(ctx.corpus),
        corpus_fingerprint=fingerprint(
            [format_formula(f) for f in ctx.corpus]
        ),
        universe_fingerprint=fingerprint(ctx.universe.describe()),
        skipped=skipped,
        notes=list(ctx.notes) + list(extra_notes),
        deviations={
            name: cause for name, cause in deviations.items()
            if name in verdicts and not verdicts[name].passed
        },
    )


def _run(checks, names, workers):
    results = parallel(
        lambda name: checks[name](),
        workers=workers,
        identifiers=names,
        args=[[name] for name in names],
    )
    return {name: results[name] for name in names}


def check_agm(universe, corpus, operator='tau', mode=DEFAULT_FIXPOINT_MODE,
              seed=DEFAULT_SEED, tuple_cap=POSTULATE_TUPLE_CAP,
              workers=DEFAULT_WORKERS) -> PostulateReport:
    ctx = Context(universe, corpus, seed, tuple_cap)
    revision = OperatorTable(
        lambda phi, psi: revise(universe, phi, psi, operator, mode)
    )
    pairs = ctx.tuples(2)
    triples = ctx.tuples(3)

    def g1():
        for phi, psi in pairs:
            if not ctx.consistent(psi):
                continue
            result = revision(phi, psi)
            if result is None or not ctx.consistent(result.formula):
                return _fail('G1', phi, psi)
        return Report.ok('G1')

    def g2():
        for phi, psi in pairs:
            result = revision(phi, psi)
            if result is None:
                continue
            outside = ctx.mods(result.formula) - ctx.mods(psi)
            if outside:
                return _fail('G2', phi, psi, model=ctx.model_name(outside))
        return Report.ok('G2')

    def g3():
        for phi, psi in pairs:
            conj = And(phi, psi)
            if not ctx.consistent(conj):
                continue
            result = revision(phi, psi)
            if result is None or ctx.mods(result.formula) != ctx.mods(conj):
                return _fail('G3', phi, psi)
        return Report.ok('G3')

    def g4():
        # Comparing with class representatives covers every equivalent pair
        for phi, psi in pairs:
            other = ctx.representative(phi), ctx.representative(psi)
            left, right = revision(phi, psi), revision(*other)
            if left is None or right is None:
                continue
            if ctx.mods(left.formula) != ctx.mods(right.formula):
                return _fail('G4', phi, psi, *other)
        return Report.ok('G4')

    def g4_prime():
        for phi, psi in pairs:
            other = ctx.representative(psi)
            left, right = revision(phi, psi), revision(phi, other)
            if left is None or right is None:
                continue
            if ctx.mods(left.formula) != ctx.mods(right.formula):
                return _fail("G4'", phi, psi, other)
        return Report.ok("G4'")

    def g5():
        for phi, psi, chi in triples:
            result = revision(phi, psi)
            if result is None:
                continue
            restricted = And(result.formula, chi)
            if not ctx.consistent(restricted):
                continue
            joint = revision(phi, And(psi, chi))
            if joint is None or \
                    ctx.mods(joint.formula) != ctx.mods(restricted):
                return _fail('G5', phi, psi, chi)
        return Report.ok('G5')

    checks = {
        'G1': g1, 'G2': g2, 'G3': g3, 'G4': g4, "G4'": g4_prime, 'G5': g5,
    }
    verdicts = _run(checks, AGM_POSTULATES, workers)
    return _report('agm', operator, ctx, verdicts, revision.undefined, [
        'undefined revisions are skipped except by G1',
    ])


def check_contraction(universe, corpus, operator='tau',
                      mode=DEFAULT_FIXPOINT_MODE, seed=DEFAULT_SEED,
                      tuple_cap=POSTULATE_TUPLE_CAP,
                      workers=DEFAULT_WORKERS) -> PostulateReport:
    ctx = Context(universe, corpus, seed, tuple_cap)
    contraction = OperatorTable(
        lambda phi, psi: contract(universe, phi, psi, operator, mode)
    )
    everything = universe.everything
    pairs = ctx.tuples(2)
    triples = ctx.tuples(3)

    def defined_pairs():
        for phi, psi in pairs:
            result = contraction(phi, psi)
            if result is not None:
                yield phi, psi, ctx.mods(result.formula)

    def c1():
        for phi, psi, mods in defined_pairs():
            if not ctx.mods(phi) <= mods:
                return _fail('C1', phi, psi)
        return Report.ok('C1')

    def c2():
        for phi, psi, mods in defined_pairs():
            if ctx.mods(phi) <= ctx.mods(psi):
                continue
            outside = mods - ctx.mods(phi)
            if outside:
                return _fail('C2', phi, psi, model=ctx.model_name(outside))
        return Report.ok('C2')

    def c3():
        for phi, psi, mods in defined_pairs():
            if mods <= ctx.mods(psi) and ctx.mods(psi) != everything:
                return _fail('C3', phi, psi)
        return Report.ok('C3')

    def c4():
        for phi, psi, mods in defined_pairs():
            if not ctx.mods(phi) <= ctx.mods(psi):
                continue
            result = contraction(phi, psi)
            outside = ctx.mods(And(result.formula, psi)) - ctx.mods(phi)
            if outside:
                return _fail('C4', phi, psi, model=ctx.model_name(outside))
        return Report.ok('C4')

    def c5():
        for phi, psi, mods in defined_pairs():
            other = ctx.representative(psi)
            result = contraction(phi, other)
            if result is not None and ctx.mods(result.formula) != mods:
                return _fail('C5', phi, psi, other)
        return Report.ok('C5')

    def c6():
        for phi, psi, beta in triples:
            joint = contraction(phi, And(psi, beta))
            left, right = contraction(phi, psi), contraction(phi, beta)
            if joint is None or left is None or right is None:
                continue
            split = Or(left.formula, right.formula)
            if not ctx.mods(joint.formula) <= ctx.mods(split):
                return _fail('C6', phi, psi, beta)
        return Report.ok('C6')

    def c7():
        for phi, psi, beta in triples:
            joint = contraction(phi, And(psi, beta))
            single = contraction(phi, psi)
            if joint is None or single is None:
                continue
            if ctx.mods(joint.formula) <= ctx.mods(psi):
                continue
            if not ctx.mods(single.formula) <= ctx.mods(joint.formula):
                return _fail('C7', phi, psi, beta)
        return Report.ok('C7')

    checks = {
        'C1': c1, 'C2': c2, 'C3': c3, 'C4': c4, 'C5': c5, 'C6': c6, 'C7': c7,
    }
    verdicts = _run(checks, CONTRACTION_POSTULATES, workers)
    return _report(
        'contraction', operator, ctx, verdicts, contraction.undefined,
        ['undefined contractions are skipped'],
    )


def check_abduction(universe, corpus, theory=(), variant='lcr',
                    mode=DEFAULT_FIXPOINT_MODE, seed=DEFAULT_SEED,
                    tuple_cap=POSTULATE_TUPLE_CAP,
                    workers=DEFAULT_WORKERS) -> PostulateReport:
    """The explanation postulates, with "|-" taken relative to the theory

    alpha is an observation and gamma, gamma', delta candidate explanations.
    E-C-Cut quantifies over the corpus only.
    """
    ctx = Context(universe, corpus, seed, tuple_cap)
    theory = list(theory)
    abduction = OperatorTable(
        lambda alpha: abduce(universe, theory, alpha, variant, mode)
    )
    sigma = conjunction(theory)
    explained = {}

    def explains(alpha, gamma):
        result = abduction(alpha)
        return result is not None and result.explains(gamma)

    def explanations(alpha):
        if alpha not in explained:
            explained[alpha] = [d for d in ctx.corpus if explains(alpha, d)]
        return explained[alpha]

    def entails(gamma, beta):
        return ctx.mods(And(sigma, gamma)) <= ctx.mods(beta)

    pairs = ctx.tuples(2)
    triples = ctx.tuples(3)

    def lle():
        for alpha, gamma in pairs:
            other = ctx.representative(alpha, sigma)
            if explains(alpha, gamma) != explains(other, gamma):
                return _fail('LLE', alpha, other, gamma)
        return Report.ok('LLE')

    def rle():
        for alpha, gamma in pairs:
            other = ctx.representative(gamma, sigma)
            if explains(alpha, gamma) != explains(alpha, other):
                return _fail('RLE', alpha, gamma, other)
        return Report.ok('RLE')

    def rs():
        for alpha, gamma, stronger in triples:
            if not explains(alpha, gamma):
                continue
            mods = ctx.mods(And(sigma, stronger))
            if mods and mods <= ctx.mods(gamma) and \
                    not explains(alpha, stronger):
                return _fail('RS', alpha, gamma, stronger)
        return Report.ok('RS')

    def e_con():
        for alpha in ctx.corpus:
            result = abduction(alpha)
            found = result is not None and (
                result.explains(result.cut) or
                any(explains(alpha, gamma) for gamma in ctx.corpus)
            )
            if ctx.consistent(And(sigma, alpha)) != found:
                return _fail('E-Con', alpha)
        return Report.ok('E-Con')

    def ror():
        for alpha, gamma, delta in triples:
            if explains(alpha, gamma) and explains(alpha, delta) and \
                    not explains(alpha, Or(gamma, delta)):
                return _fail('ROR', alpha, gamma, delta)
        return Report.ok('ROR')

    def e_reflexivity():
        for alpha, gamma in pairs:
            if explains(alpha, gamma) and not explains(gamma, gamma):
                return _fail('E-Reflexivity', alpha, gamma)
        return Report.ok('E-Reflexivity')

    def e_cm():
        for alpha, gamma, beta in triples:
            if explains(alpha, gamma) and entails(gamma, beta) and \
                    not explains(And(alpha, beta), gamma):
                return _fail('E-CM', alpha, gamma, beta)
        return Report.ok('E-CM')

    def e_c_cut():
        for alpha, beta, gamma in triples:
            if not explains(And(alpha, beta), gamma):
                continue
            if not all(entails(d, beta) for d in explanations(alpha)):
                continue
            if not explains(alpha, gamma):
                return _fail('E-C-Cut', alpha, beta, gamma)
        return Report.ok('E-C-Cut', notes=[
            'the quantifier over explanations ranges over the corpus',
        ])

    checks = {
        'LLE': lle,
        'RLE': rle,
        'RS': rs,
        'E-Con': e_con,
        'ROR': ror,
        'E-Reflexivity': e_reflexivity,
        'E-CM': e_cm,
        'E-C-Cut': e_c_cut,
    }
    verdicts = _run(checks, ABDUCTION_POSTULATES, workers)
    return _report('abduction', variant, ctx, verdicts, abduction.undefined, [
        'observations inconsistent with the theory have no explanation',
    ])


@dataclass
class Assignment:
    """The preorder built from the revisions of phi, and its verdicts"""
    phi: Formula
    relation: frozenset
    reports: List[Report]
    skipped: int = 0

    @property
    def passed(self):
        return all(self.reports)


def faithful_assignment(universe: ModelUniverse, corpus, operator='tau',
                        phi: Formula = TOP, mode=DEFAULT_FIXPOINT_MODE
                        ) -> Assignment:
    """Build the preorder of phi and check it is faithful and minimizing

    M is below M' for psi when both are models of psi, and M is a model of
    the revision of phi by psi while M' is not.  The preorder of phi is the
    union over the corpus and T.
    """
    revision = OperatorTable(
        lambda psi: revise(universe, phi, psi, operator, mode)
    )
    mods = universe.mod_set
    targets = list(dict.fromkeys([TOP] + list(corpus)))
    relation = set()
    revised = {}
    for psi in targets:
        result = revision(psi)
        if result is None:
            continue
        inside = mods(result.formula)
        revised[psi] = inside
        relation.update(
            (m, n) for m in inside for n in mods(psi) - inside
        )
    relation = frozenset(relation)

    def below(m, n):
        return (m, n) in relation and (n, m) not in relation

    models_of_phi = mods(phi)
    others = universe.everything - models_of_phi
    reports = []

    report = Report.ok('FA1')
    for m in sorted(models_of_phi):
        for n in sorted(models_of_phi):
            if below(m, n):
                report = Report.fail(
                    'FA1', 'FA1', format_formula(phi),
                    _name(universe, m), _name(universe, n),
                )
                break
        if not report:
            break
    reports.append(report)

    report = Report.ok('FA2')
    if not models_of_phi or not others:
        report = report.with_notes('vacuous: phi splits no pair of models')
    for m in sorted(models_of_phi):
        for n in sorted(others):
            if not below(m, n):
                report = Report.fail(
                    'FA2', 'FA2', format_formula(phi),
                    _name(universe, m), _name(universe, n),
                )
                break
        if not report:
            break
    reports.append(report)

    report = Report.ok('Min')
    for psi, inside in revised.items():
        candidates = mods(psi)
        minimal = frozenset(
            m for m in candidates
            if not any(below(n, m) for n in candidates)
        )
        if minimal != inside:
            report = Report.fail(
                'Min', 'Min', format_formula(phi), format_formula(psi),
            )
            break
    reports.append(report)

    return Assignment(phi, relation, reports, revision.undefined)


def check_minimality(universe, corpus, operator='tau',
                     mode=DEFAULT_FIXPOINT_MODE, seed=DEFAULT_SEED,
                     tuple_cap=POSTULATE_TUPLE_CAP,
                     workers=DEFAULT_WORKERS) -> PostulateReport:
    """Run the faithful assignment for every corpus formula as phi"""
    ctx = Context(universe, corpus, seed, tuple_cap)
    phis = ctx.corpus
    budget = max(1, tuple_cap // len(ctx.corpus))
    if len(phis) > budget:
        phis = random.Random(seed).sample(phis, budget)
        ctx.notes.append('sampled {} of {} formulas as phi'.format(
            budget, len(ctx.corpus),
        ))
    assignments = parallel(
        faithful_assignment,
        workers=workers,
        args=[[universe, ctx.corpus, operator, phi, mode] for phi in phis],
    )
    verdicts = {
        name: first_failure(name, [a.reports[index] for a in assignments])
        for index, name in enumerate(MINIMALITY_CHECKS)
    }
    return _report(
        'minimality', operator, ctx, verdicts,
        sum(a.skipped for a in assignments),
        ['undefined revisions are left out of the preorder'],
    )
