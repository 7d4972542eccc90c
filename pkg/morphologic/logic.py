"""morphologic - Models and their semantics

A model is a presheaf X, a structuring neighborhood N on it and a valuation
of propositional variables into Sub(X).  Formulas denote subobjects of X,
with the modalities read as erosion and dilation by N.

Copyright (c) 2024 morphologic developers
"""

import logging
from functools import cached_property
from itertools import product as cartesian
from typing import Iterable, Mapping, Optional

from morphologic.exceptions import (
    ModelError,
    SizeCapExceededError,
    UniverseError,
    UnknownVariableError,
)
from morphologic.fincat import Presheaf
from morphologic.formula import (
    RESERVED_NAMES,
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Not,
    Or,
    Sequent,
    Top,
    Var,
    variables,
)
from morphologic.morphology import StructuringNeighborhood
from morphologic.settings import SUBOBJECT_CAP
from morphologic.sublattice import (
    Subpresheaf,
    bottom,
    enumerate_subobjects,
    implies,
    neg,
    top,
)
from morphologic.utils import progress

log = logging.getLogger(__name__)


class Model(object):
    """The triple (X, N, valuation)

    The structuring check of N is run on construction; the topological flag
    is computed from N on first use.
    """

    def __init__(
        self,
        presheaf: Presheaf,
        neighborhood: StructuringNeighborhood,
        valuation: Mapping[str, Subpresheaf],
        name: Optional[str] = None,
    ) -> None:
        if neighborhood.base != presheaf:
            raise ModelError('Neighborhood lives on another presheaf')
        if not presheaf.size:
            raise ModelError('Models need a non-empty presheaf')
        for variable, value in valuation.items():
            if variable in RESERVED_NAMES:
                raise ModelError(
                    '"{}" cannot name a variable'.format(variable)
                )
            if value.parent != presheaf:
                raise ModelError(
                    'Value of "{}" is not a subobject of X'.format(variable)
                )
        report = neighborhood.structuring_report
        if not report:
            raise ModelError(
                'Not a structuring neighborhood: {} fails at {!r}'.format(
                    report.law, report.witness,
                )
            )
        self.presheaf = presheaf
        self.neighborhood = neighborhood
        self.valuation = dict(valuation)
        self.name = name
        self._cache = {}

    def __repr__(self):
        return 'Model({})'.format(self.name or id(self))

    @property
    def variables(self) -> frozenset:
        return frozenset(self.valuation)

    @property
    def boolean(self) -> bool:
        return self.presheaf.is_set_backend

    @cached_property
    def topological(self) -> bool:
        return bool(self.neighborhood.topological_report)

    def evaluate(self, formula: Formula) -> Subpresheaf:
        """The subobject of X denoted by the formula"""
        try:
            return self._cache[formula]
        except KeyError:
            pass
        value = self._evaluate(formula)
        self._cache[formula] = value
        return value

    def _evaluate(self, formula):
        if isinstance(formula, Top):
            return top(self.presheaf)
        if isinstance(formula, Bot):
            return bottom(self.presheaf)
        if isinstance(formula, Var):
            try:
                return self.valuation[formula.name]
            except KeyError:
                raise UnknownVariableError(
                    'Variable "{}" has no value in {!r}'.format(
                        formula.name, self,
                    )
                )
        if isinstance(formula, Not):
            return neg(self.evaluate(formula.arg))
        if isinstance(formula, Box):
            return self.neighborhood.erode(self.evaluate(formula.arg))
        if isinstance(formula, Dia):
            return self.neighborhood.dilate(self.evaluate(formula.arg))
        left = self.evaluate(formula.left)
        right = self.evaluate(formula.right)
        if isinstance(formula, And):
            return left & right
        if isinstance(formula, Or):
            return left | right
        if isinstance(formula, Imp):
            return implies(left, right)
        raise TypeError('Not a formula: {!r}'.format(formula))

    def describe(self):
        """JSON-able summary, used for fingerprints and counterexamples"""
        return {
            'name': self.name,
            'backend': 'set' if self.boolean else 'presheaf',
            'neighborhood': self.neighborhood.kind,
            'valuation': {
                variable: value.as_dict()
                for variable, value in sorted(self.valuation.items())
            },
        }


def evaluate(model: Model, formula: Formula) -> Subpresheaf:
    return model.evaluate(formula)


def satisfies(model: Model, formula: Formula) -> bool:
    return model.evaluate(formula).is_top


def satisfies_at(model: Model, stage: Subpresheaf, formula: Formula) -> bool:
    """Local satisfaction: the formula holds on the part stage of X"""
    return stage <= model.evaluate(formula)


def sequent_valid(model: Model, sequent: Sequent) -> bool:
    return satisfies_at(model, model.evaluate(sequent.left), sequent.right)


class ModelUniverse(object):
    """A finite list of models over one set of variables

    Consistency and every class-of-models notion of the reasoning operators
    are computed relative to it.
    """

    def __init__(self, models: Iterable[Model]) -> None:
        self.models = tuple(models)
        if not self.models:
            raise UniverseError('A universe needs at least one model')
        shared = self.models[0].variables
        for model in self.models[1:]:
            if model.variables != shared:
                raise UniverseError(
                    'Model {!r} has variables {} instead of {}'.format(
                        model, sorted(model.variables), sorted(shared),
                    )
                )
        self.variables = shared
        self.everything = frozenset(range(len(self.models)))
        self._mods = {}

    def __len__(self):
        return len(self.models)

    def __iter__(self):
        return iter(self.models)

    @classmethod
    def all_valuations(
        cls,
        presheaf: Presheaf,
        neighborhood: StructuringNeighborhood,
        names: Iterable[str],
        cap=None,
    ):
        """One model for every valuation of the variables into Sub(X)"""
        names = sorted(names)
        subs = list(enumerate_subobjects(presheaf, cap))
        size = len(subs) ** len(names)
        cap = SUBOBJECT_CAP if cap is None else cap
        if size > cap:
            raise SizeCapExceededError('universe', size, cap)
        log.debug('Building {} models over {}'.format(size, names))
        return cls(
            Model(
                presheaf,
                neighborhood,
                dict(zip(names, values)),
                name='M{}'.format(index + 1),
            )
            for index, values in enumerate(cartesian(subs, repeat=len(names)))
        )

    def mod_set(self, formula: Formula) -> frozenset:
        """Indices of the models where the formula denotes all of X"""
        try:
            return self._mods[formula]
        except KeyError:
            pass
        unknown = variables(formula) - self.variables
        if unknown:
            raise UnknownVariableError('Unknown variables {}'.format(
                ', '.join(sorted(unknown))
            ))
        if isinstance(formula, Top):
            mods = self.everything
        elif isinstance(formula, And):
            mods = self.mod_set(formula.left) & self.mod_set(formula.right)
        else:
            mods = frozenset(
                index for index, model in enumerate(self.models)
                if satisfies(model, formula)
            )
        self._mods[formula] = mods
        return mods

    def consistent(self, formula: Formula) -> bool:
        return bool(self.mod_set(formula))

    def equivalent(self, left: Formula, right: Formula) -> bool:
        return self.mod_set(left) == self.mod_set(right)

    def entails(self, left: Formula, right: Formula) -> bool:
        return self.mod_set(left) <= self.mod_set(right)

    def same_denotation(self, left: Formula, right: Formula) -> bool:
        """Whether both formulas denote the same subobject in every model"""
        return all(
            model.evaluate(left) == model.evaluate(right)
            for model in self.models
        )

    def models_of(self, formula: Formula):
        return [self.models[index] for index in sorted(self.mod_set(formula))]

    def describe(self):
        return [model.describe() for model in self.models]

    def prepare(self, formulas: Iterable[Formula]):
        """Evaluate formulas up front with a progress bar"""
        formulas = list(formulas)
        for formula in progress(formulas, 'evaluating', len(formulas)):
            self.mod_set(formula)


def mod_set(universe: ModelUniverse, formula: Formula) -> frozenset:
    return universe.mod_set(formula)


def consistent(universe: ModelUniverse, formula: Formula) -> bool:
    return universe.consistent(formula)
