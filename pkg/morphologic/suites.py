"""morphologic - Property suites

The suites behind the "suite" command.  The morphology and logic suites
check the laws of the operators and the soundness of the calculus on the
models of a universe; the reasoning suites run the postulate checks for
every operator of their family.

Copyright (c) 2024 morphologic developers
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List

from morphologic.calculus import axiom_instances, distr_instances
from morphologic.exceptions import InputError, SizeCapExceededError
from morphologic.formula import Imp, Not, Sequent, Var, format_sequent
from morphologic.logic import Model, ModelUniverse, satisfies, sequent_valid
from morphologic.morphology import (
    DerivedNeighborhood,
    check_adjunction,
    dilation,
    erosion,
    is_reflexive,
    transpose,
)
from morphologic.postulates import (
    Context,
    PostulateReport,
    check_abduction,
    check_agm,
    check_contraction,
    check_minimality,
)
from morphologic.reasoning import generate_corpus
from morphologic.reports import Report
from morphologic.settings import (
    ABDUCTION_VARIANTS,
    DEFAULT_DEPTH,
    DEFAULT_FIXPOINT_MODE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    POSTULATE_TUPLE_CAP,
    REVISION_OPERATORS,
)
from morphologic.sublattice import (
    bottom,
    enumerate_subobjects,
    generated_by,
    neg,
    top,
)
from morphologic.utils import fingerprint, parallel, progress

log = logging.getLogger(__name__)

SUITES = (
    'morphology', 'logic', 'agm', 'contraction', 'abduction', 'minimality',
)


@dataclass
class SuiteResult:
    """Verdicts of one suite

    Checks named in informational are reported but never fail the suite.
    """
    suite: str
    checks: Dict[str, Report] = field(default_factory=dict)
    informational: List[str] = field(default_factory=list)
    postulates: List[PostulateReport] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(
            report.passed
            for name, report in self.checks.items()
            if name not in self.informational
        ) and all(report.passed for report in self.postulates)

    def failures(self):
        return [
            report for name, report in self.checks.items()
            if not report.passed and name not in self.informational
        ]

    def to_dict(self):
        return {
            'suite': self.suite,
            'passed': self.passed,
            'notes': list(self.notes),
            'checks': {
                name: {
                    'passed': report.passed,
                    'required': name not in self.informational,
                    'law': report.law,
                    'witness': [_plain(w) for w in report.witness],
                    'notes': list(report.notes),
                }
                for name, report in self.checks.items()
            },
            'postulates': [report.to_dict() for report in self.postulates],
        }


def _plain(value):
    """Witnesses in JSON form"""
    if hasattr(value, 'as_dict'):
        return value.as_dict()
    if isinstance(value, (list, tuple, frozenset, set)):
        items = [_plain(v) for v in value]
        if isinstance(value, (frozenset, set)):
            items.sort(key=str)
        return items
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def subobject_scope(presheaf, cap=None, samples=DEFAULT_SAMPLES,
                    seed=DEFAULT_SEED):
    """Sub(X) when it fits under the cap, else a seeded random sample

    Samples are generated by random selections and always contain the top
    and bottom subobjects.
    """
    try:
        subs = list(enumerate_subobjects(presheaf, cap))
        return subs, 'exhaustive over {} subobjects'.format(len(subs))
    except SizeCapExceededError:
        pass
    rng = random.Random(seed)
    chosen = {top(presheaf), bottom(presheaf)}
    for _ in range(samples):
        chosen.add(generated_by(presheaf, {
            c: [x for x in presheaf.at(c) if rng.random() < 0.5]
            for c in presheaf.category.objects
        }))
    subs = sorted(chosen, key=lambda s: repr(s.as_dict()))
    return subs, 'sampled {} subobjects (seed {})'.format(len(subs), seed)


def _law(name, holds, *witness):
    if holds:
        return Report.ok(name)
    return Report.fail(name, name, *witness)


def _first(name, cases):
    """Report the first case whose verdict is false"""
    for verdict, witness in cases:
        if not verdict:
            return Report.fail(name, name, *witness)
    return Report.ok(name)


def element_checks(element, subs, note):
    """Laws of the erosion and dilation by a structuring element"""
    presheaf = element.base
    transposed = transpose(element)
    eroded = {y: erosion(element, y) for y in subs}
    dilated = {y: dilation(element, y) for y in subs}
    checks = {}

    checks['adjunction'] = check_adjunction(
        lambda y: dilated[y], lambda z: eroded[z], presheaf, samples=subs,
    )
    checks['units'] = _law(
        'units',
        erosion(element, top(presheaf)) == top(presheaf) and
        dilation(element, bottom(presheaf)) == bottom(presheaf),
    )
    violating = next(
        (y for y in subs if not eroded[y] <= y <= dilated[y]), None,
    )
    reflexive = is_reflexive(element)
    # Without reflexivity a violating Y must turn up in scope
    if reflexive and violating is not None:
        checks['reflexivity'] = Report.fail(
            'reflexivity', 'reflexivity', violating,
        )
    elif not reflexive and violating is None:
        checks['reflexivity'] = Report.fail(
            'reflexivity', 'reflexivity', 'no violating subobject in scope',
        )
    elif violating is not None:
        checks['reflexivity'] = Report(
            name='reflexivity', passed=True, witness=(violating, ),
            notes=('not reflexive, extensivity fails at the witness', ),
        )
    else:
        checks['reflexivity'] = Report.ok('reflexivity')
    checks['duality'] = _first('duality', (
        (erosion(element, neg(y)) == neg(dilation(transposed, y)), (y, ))
        for y in subs
    ))
    inclusion = ((dilation(transposed, neg(y)) <= neg(eroded[y]), (y, ))
                 for y in subs)
    if presheaf.is_set_backend:
        inclusion = ((dilation(transposed, neg(y)) == neg(eroded[y]), (y, ))
                     for y in subs)
    checks['co-duality'] = _first('co-duality', inclusion)

    def composites(y):
        opening = dilation(element, eroded[y])
        closing = erosion(element, dilated[y])
        return (
            opening <= y <= closing and
            erosion(element, dilation(element, eroded[y])) == eroded[y] and
            dilation(element, erosion(element, dilated[y])) == dilated[y] and
            dilation(element, erosion(element, opening)) == opening and
            erosion(element, dilation(element, closing)) == closing
        )

    checks['opening-closing'] = _first('opening-closing', (
        (composites(y), (y, )) for y in subs
    ))
    return {name: report.with_notes(note) for name, report in checks.items()}


def neighborhood_checks(neighborhood, subs, note):
    """Laws of the erosion and dilation by a structuring neighborhood"""
    presheaf = neighborhood.base
    eroded = {y: neighborhood.erode(y) for y in subs}
    dilated = {y: neighborhood.dilate(y) for y in subs}
    checks = {
        'structuring': neighborhood.structuring_report,
        'topological': neighborhood.topological_report,
    }
    checks['units'] = _law(
        'units',
        neighborhood.erode(top(presheaf)) == top(presheaf) and
        neighborhood.dilate(bottom(presheaf)) == bottom(presheaf),
    )
    checks['extensivity'] = _first('extensivity', (
        (eroded[y] <= y <= dilated[y], (y, )) for y in subs
    ))
    checks['meets-joins'] = _first('meets-joins', (
        (neighborhood.erode(a & b) == eroded[a] & eroded[b] and
         neighborhood.dilate(a | b) >= dilated[a] | dilated[b], (a, b))
        for a, b in cartesian(subs, repeat=2)
    ))
    checks['duality'] = _first('duality', (
        (neighborhood.erode(neg(y)) <= neg(dilated[y]), (y, ))
        for y in subs
    ))
    checks['join-distributivity'] = _first('join-distributivity', (
        (neighborhood.dilate(a | b) == dilated[a] | dilated[b], (a, b))
        for a, b in cartesian(subs, repeat=2)
    ))
    adjunction = check_adjunction(
        lambda y: dilated[y], lambda z: eroded[z], presheaf, samples=subs,
    )
    checks['adjunction'] = adjunction
    opens = frozenset(y for y in subs if eroded[y] == y)
    closeds = frozenset(y for y in subs if dilated[y] == y)
    report = _law(
        'open-closed',
        not adjunction.passed or opens == closeds,
        sorted(opens ^ closeds, key=lambda s: repr(s.as_dict())),
    )
    if not adjunction.passed and opens == closeds:
        report = report.with_notes(
            'open and closed sets coincide without the adjunction',
        )
    checks['open-closed'] = report
    if neighborhood.topological_report:
        checks['interior'] = _first('interior', (
            (neighborhood.erode(eroded[y]) == eroded[y] and
             neighborhood.dilate(dilated[y]) == dilated[y], (y, ))
            for y in subs
        ))
    if isinstance(neighborhood, DerivedNeighborhood):
        transposed = neighborhood.transposed
        checks['derived'] = _first('derived', (
            (eroded[y] == erosion(neighborhood.element, y) and
             dilated[y] == dilation(transposed, y), (y, ))
            for y in subs
        ))
    return {name: report.with_notes(note) for name, report in checks.items()}


# Neighborhood laws that may fail without anything being wrong
NEIGHBORHOOD_INFORMATIONAL = ('topological', 'join-distributivity',
                              'adjunction')


def morphology_suite(universe: ModelUniverse, cap=None,
                     samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED):
    """Morphological laws for every neighborhood used in the universe"""
    result = SuiteResult('morphology')
    neighborhoods = []
    for model in universe:
        if not any(model.neighborhood is n for n in neighborhoods):
            neighborhoods.append(model.neighborhood)
    presheaf = universe.models[0].presheaf
    subs, note = subobject_scope(presheaf, cap, samples, seed)
    result.notes.append(note)

    for index, neighborhood in enumerate(
        progress(neighborhoods, 'neighborhoods', len(neighborhoods))
    ):
        label = 'N{}'.format(index)
        log.debug('Checking {} = {!r}'.format(label, neighborhood))
        for name, report in neighborhood_checks(
            neighborhood, subs, note,
        ).items():
            result.checks['{}/{}'.format(label, name)] = report
            if name in NEIGHBORHOOD_INFORMATIONAL:
                result.informational.append('{}/{}'.format(label, name))
        if isinstance(neighborhood, DerivedNeighborhood):
            for name, report in element_checks(
                neighborhood.element, subs, note,
            ).items():
                result.checks['{}/element/{}'.format(label, name)] = report
    return result


def _soundness(model, instances):
    name = 'soundness'
    for rule, sequent in instances:
        if rule == 'Axiom-S4' and not model.topological:
            continue
        if rule == 'Axiom-Classical' and not model.boolean:
            continue
        if not sequent_valid(model, sequent):
            return Report.fail(
                name, rule, format_sequent(sequent), model.name,
            )
    return Report.ok(name)


def _implication(model, pairs):
    name = 'implication'
    for phi, psi in pairs:
        if satisfies(model, Imp(phi, psi)) != sequent_valid(
            model, Sequent(phi, psi),
        ):
            return Report.fail(
                name, name, format_sequent(Sequent(phi, psi)), model.name,
            )
    return Report.ok(name)


def _double_negation(model, cap=None, samples=DEFAULT_SAMPLES,
                     seed=DEFAULT_SEED):
    """~~p |- p is refuted under p := Y exactly when ~~Y differs from Y

    Boolean models never refute it; the other models are checked over
    Sub(X), so a non-Boolean Sub(X) must produce a refutation.
    """
    name = 'double-negation'
    p = Var('p')
    sequent = Sequent(Not(Not(p)), p)
    subs, note = subobject_scope(model.presheaf, cap, samples, seed)
    refutations = 0
    for y in subs:
        rebound = Model(model.presheaf, model.neighborhood, {'p': y},
                        name=model.name)
        refuted = not sequent_valid(rebound, sequent)
        expected = not model.boolean and neg(neg(y)) != y
        if refuted != expected:
            return Report.fail(name, name, model.name, y, notes=[note])
        refutations += refuted
    if refutations:
        return Report.ok(name, notes=[note, 'refuted by {} of {}'.format(
            refutations, len(subs),
        )])
    return Report.ok(name, notes=[note, 'Sub(X) is Boolean'])


def logic_suite(universe: ModelUniverse, depth=DEFAULT_DEPTH,
                seed=DEFAULT_SEED, tuple_cap=POSTULATE_TUPLE_CAP,
                workers=DEFAULT_WORKERS, cap=None, samples=DEFAULT_SAMPLES):
    """Soundness of every axiom instance over the corpus in every model"""
    result = SuiteResult('logic')
    corpus = generate_corpus(universe.variables, depth)
    ctx = Context(universe, corpus, seed, tuple_cap)
    pairs = ctx.tuples(2)
    instances = list(axiom_instances(corpus, pairs))
    instances.extend(distr_instances(ctx.tuples(3)))
    result.notes.append('{} instances over {} formulas'.format(
        len(instances), len(corpus),
    ))
    result.notes.extend(ctx.notes)

    soundness = parallel(
        _soundness,
        workers=workers,
        args=[[model, instances] for model in universe],
    )
    implication = parallel(
        _implication,
        workers=workers,
        args=[[model, pairs] for model in universe],
    )
    for model, sound, lemma in zip(universe, soundness, implication):
        result.checks['{}/soundness'.format(model.name)] = sound
        result.checks['{}/implication'.format(model.name)] = lemma
        result.checks['{}/double-negation'.format(model.name)] = (
            _double_negation(model, cap, samples, seed)
        )

    # Double negation is refuted outside Boolean models
    refuted = [
        model.name for model in universe
        if any(
            not sequent_valid(model, Sequent(Not(Not(Var(v))), Var(v)))
            for v in sorted(universe.variables)
        )
    ]
    name = 'double-negation'
    result.checks[name] = Report.ok(name, notes=[
        'refuted in {}'.format(', '.join(refuted)) if refuted else
        'valid in every model',
    ])
    result.informational.append(name)
    return result


def reasoning_suite(suite, universe: ModelUniverse, depth=DEFAULT_DEPTH,
                    mode=DEFAULT_FIXPOINT_MODE, seed=DEFAULT_SEED,
                    tuple_cap=POSTULATE_TUPLE_CAP, workers=DEFAULT_WORKERS,
                    theory=()):
    """Postulate checks for every operator of the suite's family"""
    checkers = {
        'agm': check_agm,
        'contraction': check_contraction,
        'minimality': check_minimality,
    }
    result = SuiteResult(suite)
    corpus = generate_corpus(universe.variables, depth)
    universe.prepare(corpus)
    result.notes.append('corpus of depth {} with {} formulas ({})'.format(
        depth, len(corpus), fingerprint([str(f) for f in corpus])[:12],
    ))
    if suite == 'abduction':
        for variant in ABDUCTION_VARIANTS:
            result.postulates.append(check_abduction(
                universe, corpus, theory, variant, mode, seed, tuple_cap,
                workers,
            ))
        return result
    try:
        checker = checkers[suite]
    except KeyError:
        raise InputError('Unknown suite "{}", choose from {}'.format(
            suite, ', '.join(SUITES),
        ))
    for operator in REVISION_OPERATORS:
        log.info('Checking {} postulates of the {} operator'.format(
            suite, operator,
        ))
        result.postulates.append(checker(
            universe, corpus, operator, mode, seed, tuple_cap, workers,
        ))
    return result


def run_suite(suite, universe: ModelUniverse, depth=DEFAULT_DEPTH,
              seed=DEFAULT_SEED, cap=None, samples=DEFAULT_SAMPLES,
              mode=DEFAULT_FIXPOINT_MODE, tuple_cap=POSTULATE_TUPLE_CAP,
              workers=DEFAULT_WORKERS, theory=()) -> SuiteResult:
    if suite == 'morphology':
        return morphology_suite(universe, cap, samples, seed)
    if suite == 'logic':
        return logic_suite(
            universe, depth, seed, tuple_cap, workers, cap, samples,
        )
    return reasoning_suite(
        suite, universe, depth, mode, seed, tuple_cap, workers, theory,
    )
