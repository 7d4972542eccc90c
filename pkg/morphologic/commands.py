"""morphologic - Command Routines

Every routine prints its report and returns the exit code: 0 on success,
1 when a verdict fails.  Input errors propagate to the command line, which
maps them to exit code 2.

Copyright (c) 2024 morphologic developers
"""

import json
import logging
from typing import List, Optional

from jinja2 import Environment, PackageLoader

from morphologic.bundle import load_bundle
from morphologic.calculus import Derivation, check_derivation
from morphologic.exceptions import BundleError, InputError
from morphologic.formula import (
    format_formula,
    format_sequent,
    parse_formula,
    parse_sequent,
)
from morphologic.logic import sequent_valid
from morphologic.postulates import PostulateReport
from morphologic.rcc8 import classify
from morphologic.reasoning import abduce, contract, merge, revise
from morphologic.settings import (
    DEFAULT_DEPTH,
    DEFAULT_FIXPOINT_MODE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    POSTULATE_TUPLE_CAP,
)
from morphologic.suites import run_suite
from morphologic.utils import to_json

log = logging.getLogger(__name__)


def _render(template, **context):
    jenv = Environment(
        loader=PackageLoader('morphologic', 'templates'),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    return jenv.get_template(template).render(**context)


def _emit(json_output, document, template, **context):
    if json_output:
        print(to_json(document))
    else:
        print(_render(template, **context), end='')


def _pick_model(bundle, model_name):
    if model_name is None:
        return bundle.model
    for model in bundle.universe:
        if model.name == model_name:
            return model
    if bundle.model.name == model_name:
        return bundle.model
    raise InputError('No model named "{}" in {}'.format(
        model_name, bundle.source,
    ))


def _model_names(universe, indices):
    return [universe.models[i].name for i in sorted(indices)]


def bundle_validate(bundle: str, json_output: bool = False):
    """Load a model bundle and report what it describes

    Loading already validates the category, the presheaf, the structuring
    neighborhood and every model, so reaching the report means the bundle is
    valid.
    """
    loaded = load_bundle(bundle)
    model = loaded.model
    neighborhood = loaded.neighborhood
    category = loaded.presheaf.category
    document = {
        'bundle': loaded.name,
        'backend': 'set' if category.is_set_backend else 'presheaf',
        'objects': list(category.objects),
        'carriers': {
            c: len(loaded.presheaf.at(c)) for c in category.objects
        },
        'neighborhood': neighborhood.kind,
        'structuring': neighborhood.structuring_report.passed,
        'topological': model.topological,
        'boolean': model.boolean,
        'variables': sorted(loaded.universe.variables),
        'universe': len(loaded.universe),
    }
    topological = neighborhood.topological_report
    _emit(json_output, document, 'validate.txt', report=document,
          topological=topological)
    return 0


def formula_eval(bundle: str, formula: str, model_name: Optional[str] = None,
                 json_output: bool = False):
    """Evaluate a formula in a model of the bundle

    Prints the subobject the formula denotes and whether it is valid, that
    is whether it denotes all of X.
    """
    model = _pick_model(load_bundle(bundle), model_name)
    parsed = parse_formula(formula)
    value = model.evaluate(parsed)
    document = {
        'model': model.name,
        'formula': format_formula(parsed),
        'value': value.as_dict(),
        'valid': value.is_top,
    }
    _emit(json_output, document, 'eval.txt', report=document)
    return 0


def sequent_check(bundle: str, sequent: str, model_name: Optional[str] = None,
                  every_model: bool = False, json_output: bool = False):
    """Check whether a sequent "phi |- psi" is valid in a model

    With --every-model the sequent is checked in every model of the
    universe, and the first model refuting it is reported.
    """
    loaded = load_bundle(bundle)
    parsed = parse_sequent(sequent)
    if every_model:
        models = list(loaded.universe)
    else:
        models = [_pick_model(loaded, model_name)]
    refuted = None
    for model in models:
        if not sequent_valid(model, parsed):
            refuted = model
            break
    document = {
        'sequent': format_sequent(parsed),
        'checked': [model.name for model in models],
        'valid': refuted is None,
        'counterexample': None,
    }
    if refuted is not None:
        document['counterexample'] = {
            'model': refuted.name,
            'left': refuted.evaluate(parsed.left).as_dict(),
            'right': refuted.evaluate(parsed.right).as_dict(),
        }
    _emit(json_output, document, 'sequent.txt', report=document)
    return 0 if refuted is None else 1


def derivation_check(derivation: str, s4: bool = False,
                     classical: bool = False, json_output: bool = False):
    """Check a derivation tree of the sequent calculus

    The derivation is a JSON document of nodes {rule, sequent, children}.
    The S4 axioms are only accepted with --s4, the classical axiom only with
    --classical.
    """
    try:
        with open(derivation) as fd:
            data = json.load(fd)
    except OSError as error:
        raise BundleError('', 'Cannot read {}: {}'.format(derivation, error))
    except ValueError as error:
        raise BundleError('', 'Invalid JSON in {}: {}'.format(
            derivation, error,
        ))
    tree = Derivation.from_dict(data)
    report = check_derivation(tree, allow_s4=s4, allow_classical=classical)
    document = {
        'derivation': derivation,
        'conclusion': format_sequent(tree.sequent),
        'accepted': report.passed,
        'reason': report.law,
        'witness': list(report.witness),
        'notes': list(report.notes),
    }
    _emit(json_output, document, 'derivation.txt', report=document)
    return 0 if report else 1


def belief_revise(universe: str, phi: str, psi: str, operator: str = 'tau',
                  fixpoint: str = DEFAULT_FIXPOINT_MODE,
                  json_output: bool = False):
    """Revise phi by psi over the models of the universe

    The tau operator weakens phi step by step until it is consistent with
    psi; the dilation operator wraps phi into diamonds instead.  The number
    of steps is reported as n.
    """
    models = load_bundle(universe).universe
    result = revise(
        models, parse_formula(phi), parse_formula(psi), operator, fixpoint,
    )
    return _emit_revision('revision', models, result, operator, fixpoint,
                          json_output)


def belief_contract(universe: str, phi: str, psi: str, operator: str = 'tau',
                    fixpoint: str = DEFAULT_FIXPOINT_MODE,
                    json_output: bool = False):
    """Contract psi from phi with the Harper identity

    The contraction is the revision of phi by not psi, joined with phi.
    """
    models = load_bundle(universe).universe
    result = contract(
        models, parse_formula(phi), parse_formula(psi), operator, fixpoint,
    )
    return _emit_revision('contraction', models, result, operator, fixpoint,
                          json_output)


def _emit_revision(kind, models, result, operator, fixpoint, json_output):
    document = {
        'kind': kind,
        'operator': operator,
        'fixpoint': fixpoint,
        'formula': format_formula(result.formula),
        'n': result.n,
        'models': _model_names(models, models.mod_set(result.formula)),
    }
    _emit(json_output, document, 'revision.txt', report=document)
    return 0


def belief_merge(universe: str, formulas: List[str], operator: str = 'tau',
                 fixpoint: str = DEFAULT_FIXPOINT_MODE,
                 json_output: bool = False):
    """Merge several formulas into one consistent formula

    Every formula is weakened the same number n of times, n minimal so that
    the conjunction becomes consistent.
    """
    models = load_bundle(universe).universe
    result = merge(
        models, [parse_formula(f) for f in formulas], operator, fixpoint,
    )
    document = {
        'kind': 'merge',
        'operator': operator,
        'fixpoint': fixpoint,
        'formula': format_formula(result.formula),
        'n': result.n,
        'parts': [format_formula(f) for f in result.parts],
        'models': _model_names(models, models.mod_set(result.formula)),
    }
    _emit(json_output, document, 'revision.txt', report=document)
    return 0


def belief_abduce(universe: str, observation: str,
                  theory: Optional[List[str]] = None, variant: str = 'lcr',
                  fixpoint: str = DEFAULT_FIXPOINT_MODE,
                  explain: Optional[List[str]] = None,
                  json_output: bool = False):
    """Compute the explanatory cut of a theory for an observation

    The theory is retracted until one more step would lose consistency
    (lcr) or non-triviality (lnr).  Candidates given with --explain are
    checked against the cut.
    """
    models = load_bundle(universe).universe
    result = abduce(
        models,
        [parse_formula(f) for f in theory or []],
        parse_formula(observation),
        variant,
        fixpoint,
    )
    explanations = {
        format_formula(parse_formula(c)): result.explains(parse_formula(c))
        for c in explain or []
    }
    document = {
        'variant': variant,
        'fixpoint': fixpoint,
        'theory': format_formula(result.theory),
        'observation': format_formula(result.observation),
        'n': result.n,
        'cut': format_formula(result.cut),
        'chain': [format_formula(f) for f in result.chain],
        'models': _model_names(models, result.mods),
        'explains': explanations,
    }
    _emit(json_output, document, 'abduction.txt', report=document)
    return 0


def region_classify(bundle: str, phi: str, psi: str,
                    model_name: Optional[str] = None,
                    json_output: bool = False):
    """Classify the RCC-8 relation between two regions of a model

    Regions are formulas; every relation that holds is flagged and the most
    specific one is named.
    """
    model = _pick_model(load_bundle(bundle), model_name)
    report = classify(model, parse_formula(phi), parse_formula(psi))
    if json_output:
        print(to_json(dict(report.flags)))
    else:
        print(_render(
            'rcc8.txt', report=report.to_dict(), model=model.name,
            phi=phi, psi=psi,
        ), end='')
    return 0


def suite_run(universe: str, suite: str = 'agm', depth: int = DEFAULT_DEPTH,
              seed: int = DEFAULT_SEED, cap: Optional[int] = None,
              samples: int = DEFAULT_SAMPLES,
              tuple_cap: int = POSTULATE_TUPLE_CAP,
              workers: int = DEFAULT_WORKERS,
              fixpoint: str = DEFAULT_FIXPOINT_MODE,
              theory: Optional[List[str]] = None,
              json_output: bool = False):
    """Run a property or postulate suite over the models of the universe

    The morphology suite checks the operator laws of every neighborhood,
    the logic suite the soundness of the calculus, and the agm, contraction,
    abduction and minimality suites the postulates of every operator over a
    generated corpus of formulas.
    """
    models = load_bundle(universe).universe
    result = run_suite(
        suite,
        models,
        depth=depth,
        seed=seed,
        cap=cap,
        samples=samples,
        mode=fixpoint,
        tuple_cap=tuple_cap,
        workers=workers,
        theory=[parse_formula(f) for f in theory or []],
    )
    if not result.passed:
        for report in result.failures():
            log.warning('{} fails {} at {}'.format(
                report.name, report.law, list(report.witness),
            ))
        for postulates in result.postulates:
            if not postulates.passed:
                log.warning('{} postulates of {} fail'.format(
                    postulates.suite, postulates.operator,
                ))
    _emit(
        json_output, result.to_dict(), 'suite.txt',
        report=result.to_dict(),
        matrix=_matrix(result.postulates),
    )
    return 0 if result.passed else 1


def _matrix(reports: List[PostulateReport]):
    """Rows of postulates against columns of operators"""
    names = []
    for report in reports:
        for name in report.verdicts:
            if name not in names:
                names.append(name)
    return {
        'operators': [report.operator for report in reports],
        'rows': [
            {
                'name': name,
                'cells': [
                    _cell(report, name) for report in reports
                ],
            }
            for name in names
        ],
    }


def _cell(report, name):
    if name not in report.verdicts:
        return ''
    mark = 'pass' if report.verdicts[name].passed else 'FAIL'
    if name in report.deviations:
        mark = '{}*'.format(mark)
    elif name not in report.expected:
        mark = '({})'.format(mark)
    return mark
