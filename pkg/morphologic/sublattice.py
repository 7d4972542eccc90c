"""morphologic - Subobject lattices and power objects

Subobjects of a finite presheaf X are represented by their selections: a
subset A(c) of X(c) per object, closed under the restriction maps.  They
form a Heyting algebra with stage-wise meet and join; the implication is
computed with its Kripke-Joyal clause.

Copyright (c) 2024 morphologic developers
"""

import logging
from collections import namedtuple
from functools import reduce
from itertools import combinations, product as cartesian
from typing import Iterator, Mapping

from morphologic.exceptions import (
    ParentMismatchError,
    SizeCapExceededError,
    SubobjectError,
)
from morphologic.fincat import Presheaf, product, yoneda
from morphologic.reports import Report
from morphologic.settings import SUBOBJECT_CAP
from morphologic.utils import element_key

log = logging.getLogger(__name__)

LatticeCore = namedtuple('LatticeCore', ['leq', 'meet', 'join'])


class Subpresheaf(object):
    """A restriction-closed selection A(c) of X(c) for every object c"""

    def __init__(self, parent: Presheaf, selection: Mapping, check=True):
        self.parent = parent
        objects = parent.category.objects
        if check:
            for c in selection:
                parent.category.check_object(c)
        self._selection = {
            c: frozenset(selection.get(c, ())) for c in objects
        }
        self._hash = hash((parent, tuple(self._selection[c] for c in objects)))
        if check:
            self._check()

    def _check(self):
        category = self.parent.category
        for c, chosen in self._selection.items():
            stray = chosen - self.parent.members(c)
            if stray:
                raise SubobjectError('{!r} is not part of X({})'.format(
                    sorted(stray, key=element_key)[0], c,
                ))
        for f in sorted(category.morphisms):
            below = self._selection[category.dom(f)]
            for x in self._selection[category.cod(f)]:
                if self.parent.restrict(f, x) not in below:
                    raise SubobjectError(
                        'Selection is not closed under "{}" at {!r}'
                        .format(f, x)
                    )

    def at(self, c) -> frozenset:
        return self._selection[c]

    def items(self):
        for c in self.parent.category.objects:
            yield c, self._selection[c]

    def as_dict(self):
        """Per-object sorted element lists, the serialized form"""
        return {
            c: sorted(chosen, key=element_key) for c, chosen in self.items()
        }

    def __repr__(self):
        return 'Subpresheaf({})'.format(', '.join(
            '{}: {}'.format(c, sorted(chosen, key=element_key))
            for c, chosen in self.items()
        ))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Subpresheaf):
            return NotImplemented
        return (
            self._hash == other._hash and
            self.parent == other.parent and
            self._selection == other._selection
        )

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        _check_parent(self, other)
        return all(
            chosen <= other._selection[c]
            for c, chosen in self._selection.items()
        )

    def __and__(self, other):
        _check_parent(self, other)
        return Subpresheaf(self.parent, {
            c: chosen & other._selection[c]
            for c, chosen in self._selection.items()
        }, check=False)

    def __or__(self, other):
        _check_parent(self, other)
        return Subpresheaf(self.parent, {
            c: chosen | other._selection[c]
            for c, chosen in self._selection.items()
        }, check=False)

    @property
    def is_bottom(self) -> bool:
        return not any(self._selection.values())

    @property
    def is_top(self) -> bool:
        return all(
            chosen == self.parent.members(c)
            for c, chosen in self._selection.items()
        )


def _check_parent(*subobjects):
    parent = subobjects[0].parent
    for subobject in subobjects[1:]:
        if subobject.parent != parent:
            raise ParentMismatchError('Subobjects of different presheaves')


def top(presheaf: Presheaf) -> Subpresheaf:
    return Subpresheaf(presheaf, {
        c: presheaf.at(c) for c in presheaf.category.objects
    }, check=False)


def bottom(presheaf: Presheaf) -> Subpresheaf:
    return Subpresheaf(presheaf, {}, check=False)


def lattice_core(a: Subpresheaf, b: Subpresheaf) -> LatticeCore:
    return LatticeCore(leq=a <= b, meet=a & b, join=a | b)


def implies(a: Subpresheaf, b: Subpresheaf) -> Subpresheaf:
    """Heyting implication

    x is in (A => B)(c) when every restriction of x that lands in A also
    lands in B.
    """
    _check_parent(a, b)
    presheaf = a.parent
    category = presheaf.category
    selection = {}
    for c in category.objects:
        arrows = [(f, category.dom(f)) for f in category.arrows_into(c)]
        selection[c] = frozenset(
            x for x in presheaf.at(c)
            if all(
                presheaf.restrict(f, x) not in a.at(d) or
                presheaf.restrict(f, x) in b.at(d)
                for f, d in arrows
            )
        )
    return Subpresheaf(presheaf, selection, check=False)


def neg(a: Subpresheaf) -> Subpresheaf:
    return implies(a, bottom(a.parent))


def generated_by(presheaf: Presheaf, selection: Mapping) -> Subpresheaf:
    """The smallest subobject containing the given selection"""
    category = presheaf.category
    closed = {c: set() for c in category.objects}
    for c, chosen in selection.items():
        category.check_object(c)
        for x in chosen:
            for f in category.arrows_into(c):
                closed[category.dom(f)].add(presheaf.restrict(f, x))
    return Subpresheaf(presheaf, closed)


def count_candidates(presheaf: Presheaf) -> int:
    return 2 ** presheaf.size


def _check_cap(presheaf, cap, what):
    cap = SUBOBJECT_CAP if cap is None else cap
    size = count_candidates(presheaf)
    if size > cap:
        raise SizeCapExceededError(what, size, cap)


def enumerate_subobjects(presheaf: Presheaf,
                         cap=None) -> Iterator[Subpresheaf]:
    """Yield every subobject of X exactly once

    Selections are generated stage by stage from the smallest to the largest
    subset, so the first subobject is the bottom and the last one the top.
    """
    _check_cap(presheaf, cap, 'Sub({!r})'.format(presheaf))
    category = presheaf.category
    per_stage = []
    for c in category.objects:
        carrier = presheaf.at(c)
        per_stage.append([
            frozenset(chosen)
            for size in range(len(carrier) + 1)
            for chosen in combinations(carrier, size)
        ])
    checks = [
        (category.objects.index(category.cod(f)),
         category.objects.index(category.dom(f)), f)
        for f in sorted(category.morphisms)
    ]
    for choice in cartesian(*per_stage):
        if all(
            presheaf.restrict(f, x) in choice[dom]
            for cod, dom, f in checks
            for x in choice[cod]
        ):
            yield Subpresheaf(
                presheaf, dict(zip(category.objects, choice)), check=False,
            )


def join_all(presheaf: Presheaf, subobjects) -> Subpresheaf:
    return reduce(lambda a, b: a | b, subobjects, bottom(presheaf))


def check_heyting_laws(presheaf: Presheaf, cap=None) -> Report:
    """Exhaustively check the Heyting algebra laws of Sub(X)

    The adjunction A & C <= B iff C <= (A => B), distributivity of meet over
    join, and agreement of the implication clause with the join of all C
    such that A & C <= B.
    """
    name = 'heyting'
    subs = list(enumerate_subobjects(presheaf, cap))
    log.debug('Checking Heyting laws over {} subobjects'.format(len(subs)))
    arrows = {(a, b): implies(a, b) for a in subs for b in subs}

    for (a, b), a_implies_b in arrows.items():
        oracle = join_all(presheaf, (c for c in subs if a & c <= b))
        if oracle != a_implies_b:
            return Report.fail(name, 'implication-oracle', a, b)
        for c in subs:
            if (a & c <= b) != (c <= a_implies_b):
                return Report.fail(name, 'adjunction', a, b, c)
            if a & (b | c) != (a & b) | (a & c):
                return Report.fail(name, 'distributivity', a, b, c)

    return Report.ok(name, notes=['{} subobjects'.format(len(subs))])


class PowerObject(object):
    """PX, with PX(c) = Sub(y(c) x X) and the membership relation

    The action of f: c' -> c pulls a subobject of y(c) x X back along
    precomposition with f.  (x, A) is in the membership relation at c when
    (id_c, x) belongs to A.
    """

    def __init__(self, base: Presheaf, cap=None):
        category = base.category
        self.base = base
        self.ambient = {
            c: product(yoneda(category, c), base) for c in category.objects
        }
        stages = {
            c: tuple(enumerate_subobjects(self.ambient[c], cap))
            for c in category.objects
        }
        log.debug('Power object stages: {}'.format(
            {c: len(members) for c, members in stages.items()}
        ))
        actions = {
            f: {a: self._pullback(f, a) for a in stages[category.cod(f)]}
            for f in category.morphisms
        }
        self.presheaf = Presheaf(category, stages, actions)
        self.pairs = product(base, self.presheaf)
        self.membership = Subpresheaf(self.pairs, {
            c: [
                (x, a) for x, a in self.pairs.at(c)
                if self.contains(c, x, a)
            ]
            for c in category.objects
        }, check=False)

    def _pullback(self, f, a: Subpresheaf) -> Subpresheaf:
        category = self.base.category
        ambient = self.ambient[category.dom(f)]
        return Subpresheaf(ambient, {
            d: [
                (h, x) for h, x in ambient.at(d)
                if (category.compose(f, h), x) in a.at(d)
            ]
            for d in category.objects
        }, check=False)

    def members(self, c):
        return self.presheaf.at(c)

    def restrict(self, f, a: Subpresheaf) -> Subpresheaf:
        return self.presheaf.restrict(f, a)

    def contains(self, c, x, a: Subpresheaf) -> bool:
        return (self.base.category.identity(c), x) in a.at(c)

    def top(self, c) -> Subpresheaf:
        return top(self.ambient[c])

    def name(self, subobject: Subpresheaf, c) -> Subpresheaf:
        """The stage-c name of a global subobject Y

        It collects (f, z) for every f: c' -> c and every z in Y(c').
        """
        if subobject.parent != self.base:
            raise ParentMismatchError('Subobject of another presheaf')
        category = self.base.category
        return Subpresheaf(self.ambient[c], {
            d: [(h, z) for h in category.hom(d, c) for z in subobject.at(d)]
            for d in category.objects
        }, check=False)


def power_object(presheaf: Presheaf, cap=None) -> PowerObject:
    return PowerObject(presheaf, cap)
