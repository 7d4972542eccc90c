"""morphologic - The command line interface

Copyright (c) 2024 morphologic developers
"""

from argparse import ArgumentParser, _SubParsersAction
from logging import StreamHandler, getLogger, root as root_logger

from morphologic.commands import (
    belief_abduce,
    belief_contract,
    belief_merge,
    belief_revise,
    bundle_validate,
    derivation_check,
    formula_eval,
    region_classify,
    sequent_check,
    suite_run,
)
from morphologic.exceptions import InputError, OperatorError
from morphologic.settings import (
    ABDUCTION_VARIANTS,
    DEFAULT_DEPTH,
    DEFAULT_FIXPOINT_MODE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    FIXPOINT_MODES,
    POSTULATE_TUPLE_CAP,
    REVISION_OPERATORS,
)
from morphologic.suites import SUITES

log = getLogger('morphologic')


class ColorFormatters():
    BOLD = '\033[1m{}\033[0m'
    WARNING = '\033[1;33m{}\033[0m'
    ERROR = '\033[1;31m{}\033[0m'
    CRITICAL = '\033[1;41m{}\033[0m'


class MorphologicArgumentParser(ArgumentParser):
    def format_help(self):
        if not any(isinstance(a, _SubParsersAction) for a in self._actions):
            return super(MorphologicArgumentParser, self).format_help()

        out = []
        out.append(ColorFormatters.BOLD.format(__doc__))
        out.append('Available commands:\n')

        subparsers_actions = [
            action for action in self._actions
            if isinstance(action, _SubParsersAction)
        ]
        for subparsers_action in subparsers_actions:
            for choice, subparser in subparsers_action.choices.items():
                out.append(ColorFormatters.BOLD.format(choice))
                if subparser.get_default('func').__doc__:
                    out.append('\n'.join(
                        '\t{}'.format(line.strip()) for line in subparser
                        .get_default('func').__doc__.strip().splitlines()
                    ))
                out.append('\n\t{}'.format(subparser.format_usage()))

        return '\n'.join(out)


class MorphologicLogHandler(StreamHandler):
    """Extend StreamHandler to format messages short-cutting Formatters"""

    def __init__(self, *args, **kwargs):
        super(MorphologicLogHandler, self).__init__(*args, **kwargs)
        self.isatty = self.stream.isatty()

    def format(self, record):
        level = record.levelname
        msg = '{}: {}: {}'.format(level, record.name, record.getMessage())
        if self.isatty and level in vars(ColorFormatters):
            msg = getattr(ColorFormatters, level).format(msg)
        return msg


def _add_command(subparsers, name, func):
    subparser = subparsers.add_parser(name, description=func.__doc__)
    subparser.set_defaults(func=func)
    subparser.add_argument(
        '--json',
        dest='json_output',
        action='store_true',
        help='Print the report as JSON',
    )
    return subparser


def _add_model(subparser):
    subparser.add_argument(
        '--model',
        dest='model_name',
        help='Name of the universe model to use instead of the bundle model',
    )


def _add_operator(subparser):
    subparser.add_argument(
        '--op',
        dest='operator',
        choices=REVISION_OPERATORS,
        default='tau',
        help='Weakening operator (default: tau)',
    )
    _add_fixpoint(subparser)


def _add_fixpoint(subparser):
    subparser.add_argument(
        '--fixpoint',
        choices=FIXPOINT_MODES,
        default=DEFAULT_FIXPOINT_MODE,
        help='How fixpoints of the weakening steps are detected (default: '
             '{})'.format(DEFAULT_FIXPOINT_MODE),
    )


def parse_args(argv=None):  # NOQA: C901
    top_parser = MorphologicArgumentParser('morphologic')
    top_parser.add_argument('--silent', '-s', action='count', default=0)
    top_parser.add_argument('--verbose', '-v', action='count', default=0)

    subparsers = top_parser.add_subparsers(help='Actions')
    subparsers.required = True

    subparser = _add_command(subparsers, 'validate', bundle_validate)
    subparser.add_argument('bundle', help='Model bundle (JSON)')

    subparser = _add_command(subparsers, 'eval', formula_eval)
    subparser.add_argument('bundle', help='Model bundle (JSON)')
    subparser.add_argument('formula', help='Formula, e.g. "[]p -> p"')
    _add_model(subparser)

    subparser = _add_command(subparsers, 'sequent', sequent_check)
    subparser.add_argument('bundle', help='Model bundle (JSON)')
    subparser.add_argument('sequent', help='Sequent, e.g. "[]p |- p"')
    _add_model(subparser)
    subparser.add_argument(
        '--every-model',
        action='store_true',
        help='Check the sequent in every model of the universe',
    )

    subparser = _add_command(subparsers, 'prove-check', derivation_check)
    subparser.add_argument('derivation', help='Derivation tree (JSON)')
    subparser.add_argument(
        '--s4',
        action='store_true',
        help='Accept the S4 axioms',
    )
    subparser.add_argument(
        '--classical',
        action='store_true',
        help='Accept the classical axiom',
    )

    subparser = _add_command(subparsers, 'revise', belief_revise)
    subparser.add_argument('universe', help='Bundle with a universe (JSON)')
    subparser.add_argument('phi', help='Belief to revise')
    subparser.add_argument('psi', help='New information')
    _add_operator(subparser)

    subparser = _add_command(subparsers, 'contract', belief_contract)
    subparser.add_argument('universe', help='Bundle with a universe (JSON)')
    subparser.add_argument('phi', help='Belief to contract')
    subparser.add_argument('psi', help='Formula to give up')
    _add_operator(subparser)

    subparser = _add_command(subparsers, 'merge', belief_merge)
    subparser.add_argument('universe', help='Bundle with a universe (JSON)')
    subparser.add_argument('formulas', nargs='+', help='Formulas to merge')
    _add_operator(subparser)

    subparser = _add_command(subparsers, 'abduce', belief_abduce)
    subparser.add_argument('universe', help='Bundle with a universe (JSON)')
    subparser.add_argument('observation', help='Observation to explain')
    subparser.add_argument(
        '--theory',
        action='append',
        help='Formula of the background theory, may be repeated',
    )
    subparser.add_argument(
        '--variant',
        choices=ABDUCTION_VARIANTS,
        default='lcr',
        help='Cutting of the retraction chain (default: lcr)',
    )
    subparser.add_argument(
        '--explain',
        action='append',
        help='Candidate explanation to check, may be repeated',
    )
    _add_fixpoint(subparser)

    subparser = _add_command(subparsers, 'rcc8', region_classify)
    subparser.add_argument('bundle', help='Model bundle (JSON)')
    subparser.add_argument('phi', help='First region')
    subparser.add_argument('psi', help='Second region')
    _add_model(subparser)

    subparser = _add_command(subparsers, 'suite', suite_run)
    subparser.add_argument('universe', help='Bundle with a universe (JSON)')
    subparser.add_argument(
        '--suite',
        choices=SUITES,
        default='agm',
        help='Suite to run (default: agm)',
    )
    subparser.add_argument(
        '--depth',
        type=int,
        default=DEFAULT_DEPTH,
        help='Depth of the generated formula corpus',
    )
    subparser.add_argument(
        '--seed',
        type=int,
        default=DEFAULT_SEED,
        help='Seed for every sample the suite draws',
    )
    subparser.add_argument(
        '--cap',
        type=int,
        help='Cap on enumerated subobjects',
    )
    subparser.add_argument(
        '--samples',
        type=int,
        default=DEFAULT_SAMPLES,
        help='Subobjects to sample when Sub(X) exceeds the cap',
    )
    subparser.add_argument(
        '--tuple-cap',
        type=int,
        default=POSTULATE_TUPLE_CAP,
        help='Corpus tuples per postulate before sampling',
    )
    subparser.add_argument(
        '--workers',
        type=int,
        default=DEFAULT_WORKERS,
        help='Worker threads',
    )
    subparser.add_argument(
        '--theory',
        action='append',
        help='Background theory of the abduction suite, may be repeated',
    )
    _add_fixpoint(subparser)

    return vars(top_parser.parse_args(argv))


def main(argv=None):
    args = parse_args(argv)
    configure_root_logger(args.pop('silent'), args.pop('verbose'))

    try:
        return args.pop('func')(**args)
    except InputError as error:
        log.error('{}: {}'.format(error.code, error))
        return 2
    except OperatorError as error:
        log.error('{}: {}'.format(error.code, error))
        return 1


def configure_root_logger(silent, verbose):
    root_logger.addHandler(MorphologicLogHandler())

    # Silent and verbose are summed up; using both is not meaningful, but
    # not worth an error either.
    level = 20 + (silent - verbose) * 10
    root_logger.setLevel(level)
