"""morphologic - RCC-8 relations between regions of a model

Regions are formulas; a relation holds when its defining formulas are
non-empty (intersections) or valid (inclusions) in the model.

Copyright (c) 2024 morphologic developers
"""

from dataclasses import dataclass, field
from typing import Dict, Optional

from morphologic.formula import (
    And,
    Box,
    Dia,
    Formula,
    Imp,
    Not,
    format_formula,
)
from morphologic.logic import Model
from morphologic.settings import RCC8_PRIORITY, RCC8_RELATIONS

SWAPPED = {
    'TPP': 'TPPi',
    'TPPi': 'TPP',
    'NTPP': 'NTPPi',
    'NTPPi': 'NTPP',
}


@dataclass(frozen=True)
class Rcc8Report:
    flags: Dict[str, bool]
    witnesses: Dict[str, dict] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.flags[name]

    @property
    def relation(self) -> Optional[str]:
        """The most specific relation that holds"""
        for name in RCC8_PRIORITY:
            if self.flags[name]:
                return name
        return None

    def swapped(self) -> Dict[str, bool]:
        """Flags of the report with the arguments exchanged"""
        return {
            SWAPPED.get(name, name): value
            for name, value in self.flags.items()
        }

    def to_dict(self):
        return {
            'relations': dict(self.flags),
            'relation': self.relation,
            'witnesses': self.witnesses,
        }


def _proper_part(model, phi, psi):
    """TPP and NTPP of phi in psi"""
    inside = model.evaluate(Imp(phi, psi)).is_top
    tangential = not model.evaluate(And(Dia(phi), Not(psi))).is_bottom
    deep = model.evaluate(Imp(phi, Box(psi))).is_top
    return inside and tangential, inside and deep


def disconnected(model: Model, phi: Formula, psi: Formula,
                 form='bottom') -> bool:
    """DC, read as phi & psi = F or as ~(phi & psi) = T

    Both readings agree in every Heyting algebra.
    """
    if form == 'bottom':
        return model.evaluate(And(phi, psi)).is_bottom
    if form == 'negation':
        return model.evaluate(Not(And(phi, psi))).is_top
    raise ValueError('Unknown form "{}"'.format(form))


def classify(model: Model, phi: Formula, psi: Formula) -> Rcc8Report:
    def meets(formula):
        return not model.evaluate(formula).is_bottom

    flags = dict.fromkeys(RCC8_RELATIONS, False)
    flags['DC'] = disconnected(model, phi, psi)
    flags['C'] = not flags['DC']
    flags['EC'] = (
        flags['DC'] and
        meets(And(Dia(phi), psi)) and
        meets(And(phi, Dia(psi)))
    )
    flags['PO'] = (
        flags['C'] and
        meets(And(phi, Not(psi))) and
        meets(And(Not(phi), psi))
    )
    flags['TPP'], flags['NTPP'] = _proper_part(model, phi, psi)
    flags['TPPi'], flags['NTPPi'] = _proper_part(model, psi, phi)
    flags['EQ'] = model.evaluate(phi) == model.evaluate(psi)

    witnesses = {
        format_formula(formula): model.evaluate(formula).as_dict()
        for formula in (phi, psi, And(phi, psi), Dia(phi), Dia(psi))
    }
    return Rcc8Report(flags, witnesses)
