"""morphologic - Morphological operators

Structuring elements are relations R_b of X x X, read as b(x) = {y | (x, y)
in R_b}.  Structuring neighborhoods come in two kinds: derived from a
reflexive structuring element (never materialized), or explicit, stored
transposed as a subobject of X x PX.

Copyright (c) 2024 morphologic developers
"""

import abc
import logging
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Mapping, Optional

from morphologic.exceptions import (
    BackendMismatchError,
    NotReflexiveError,
    ParentMismatchError,
    SizeCapExceededError,
)
from morphologic.fincat import Presheaf, product
from morphologic.reports import Report
from morphologic.settings import SET_OBJECT, SUBOBJECT_CAP
from morphologic.sublattice import (
    PowerObject,
    Subpresheaf,
    enumerate_subobjects,
    generated_by,
    top,
)

log = logging.getLogger(__name__)


class StructuringElement(object):
    """A structuring element b, stored as its relation R_b in X x X"""

    def __init__(self, base: Presheaf, relation: Subpresheaf) -> None:
        if relation.parent != product(base, base):
            raise ParentMismatchError('Relation is not a subobject of X x X')
        self.base = base
        self.relation = relation

    def __repr__(self):
        return 'StructuringElement({!r})'.format(self.relation)

    def __eq__(self, other):
        if not isinstance(other, StructuringElement):
            return NotImplemented
        return self.relation == other.relation

    def __hash__(self):
        return hash(self.relation)

    @classmethod
    def from_pairs(cls, base: Presheaf, pairs: Mapping[str, Iterable]):
        """Build b from per-stage (x, y) pairs, closing them downwards"""
        square = product(base, base)
        relation = generated_by(square, {
            c: [tuple(pair) for pair in stage_pairs]
            for c, stage_pairs in pairs.items()
        })
        return cls(base, relation)

    @classmethod
    def from_function(cls, base: Presheaf, fn: Callable):
        """Build b on the Set backend from x -> b(x)"""
        if not base.is_set_backend:
            raise BackendMismatchError('from_function needs a finite set')
        return cls.from_pairs(base, {
            SET_OBJECT: [(x, y) for x in base.at(SET_OBJECT) for y in fn(x)],
        })

    @cached_property
    def _images(self):
        images = {
            c: {x: set() for x in self.base.at(c)}
            for c in self.base.category.objects
        }
        for c, chosen in self.relation.items():
            for x, y in chosen:
                images[c][x].add(y)
        return {
            c: {x: frozenset(ys) for x, ys in table.items()}
            for c, table in images.items()
        }

    @cached_property
    def _preimages(self):
        preimages = {
            c: {y: set() for y in self.base.at(c)}
            for c in self.base.category.objects
        }
        for c, chosen in self.relation.items():
            for x, y in chosen:
                preimages[c][y].add(x)
        return {
            c: {y: frozenset(xs) for y, xs in table.items()}
            for c, table in preimages.items()
        }

    def image(self, x, c) -> frozenset:
        """b(x) at stage c"""
        return self._images[c][x]

    def preimage(self, y, c) -> frozenset:
        """The transpose b(y) at stage c, i.e. every x with y in b(x)"""
        return self._preimages[c][y]


def diagonal(base: Presheaf) -> StructuringElement:
    return StructuringElement.from_pairs(base, {
        c: [(x, x) for x in base.at(c)] for c in base.category.objects
    })


def full_relation(base: Presheaf) -> StructuringElement:
    return StructuringElement(base, top(product(base, base)))


def _check_base(element, subobject):
    if subobject.parent != element.base:
        raise ParentMismatchError('Subobject of another presheaf')


def transpose(element: StructuringElement) -> StructuringElement:
    square = element.relation.parent
    return StructuringElement(element.base, Subpresheaf(square, {
        c: [(y, x) for x, y in chosen]
        for c, chosen in element.relation.items()
    }, check=False))


def erosion(element: StructuringElement,
            subobject: Subpresheaf) -> Subpresheaf:
    """x is kept at c when b(x . f) lies in Y for every f into c"""
    _check_base(element, subobject)
    base = element.base
    category = base.category
    selection = {}
    for c in category.objects:
        arrows = [(f, category.dom(f)) for f in category.arrows_into(c)]
        selection[c] = [
            x for x in base.at(c)
            if all(
                element.image(base.restrict(f, x), d) <= subobject.at(d)
                for f, d in arrows
            )
        ]
    return Subpresheaf(base, selection, check=False)


def dilation(element: StructuringElement,
             subobject: Subpresheaf) -> Subpresheaf:
    """x is kept at c when some y of Y(c) has x in b(y)"""
    _check_base(element, subobject)
    base = element.base
    return Subpresheaf(base, {
        c: [
            x for x in base.at(c)
            if element.preimage(x, c) & subobject.at(c)
        ]
        for c in base.category.objects
    }, check=False)


def opening_closing(element: StructuringElement, subobject: Subpresheaf):
    """Return (opening, closing) of Y"""
    opening = dilation(element, erosion(element, subobject))
    closing = erosion(element, dilation(element, subobject))
    return opening, closing


def is_reflexive(element: StructuringElement) -> bool:
    return all(
        (x, x) in element.relation.at(c)
        for c, x in element.base.elements()
    )


def is_filter(
    family: Iterable[Subpresheaf],
    ambient: Presheaf,
    members: Optional[Iterable[Subpresheaf]] = None,
    inhabited: Optional[Callable] = None,
    cap=None,
) -> Report:
    """Check the four filter axioms on a family of subobjects of ambient

    members defaults to all of Sub(ambient) and is what upper closure is
    checked against.  inhabited decides strictness; by default a member must
    be non-empty at every stage, which fails on a presheaf with an empty
    stage.
    """
    name = 'filter'
    family = frozenset(family)
    notes = []
    if inhabited is None:
        empty = [c for c in ambient.category.objects if not ambient.at(c)]
        if empty:
            notes.append('empty stages {}: strictness read literally'.format(
                ', '.join(empty)
            ))

        def inhabited(a):
            return all(a.at(c) for c in ambient.category.objects)
    if members is None:
        members = enumerate_subobjects(ambient, cap)
    members = list(members)
    ordered = [a for a in members if a in family]
    ordered.extend(a for a in family if a not in set(ordered))

    for a, b in combinations(ordered, 2):
        if a & b not in family:
            return Report.fail(name, 'meets', a, b, notes=notes)
    for a in ordered:
        for b in members:
            if a <= b and b not in family:
                return Report.fail(name, 'upper', a, b, notes=notes)
    if top(ambient) not in family:
        return Report.fail(name, 'top', notes=notes)
    for a in ordered:
        if not inhabited(a):
            return Report.fail(name, 'strict', a, notes=notes)
    return Report.ok(name, notes=notes)


class StructuringNeighborhood(abc.ABC):
    """The base class of both neighborhood kinds"""

    kind = None

    def __init__(self, base: Presheaf) -> None:
        self.base = base

    @abc.abstractmethod
    def erode(self, subobject: Subpresheaf) -> Subpresheaf:
        """x is kept when Y is a neighborhood of x"""

    @abc.abstractmethod
    def dilate(self, subobject: Subpresheaf) -> Subpresheaf:
        """x is kept when every neighborhood of x meets Y"""

    @abc.abstractmethod
    def check(self) -> Report:
        """Check that every N(x) is a filter containing only sets with x"""

    @abc.abstractmethod
    def check_topological(self) -> Report:
        """Check the interiority condition of topological neighborhoods"""

    @abc.abstractmethod
    def global_family(self, x) -> frozenset:
        """N(x) as subobjects of X, on the Set backend"""

    @cached_property
    def structuring_report(self) -> Report:
        return self.check()

    @cached_property
    def topological_report(self) -> Report:
        return self.check_topological()

    def _check_subobject(self, subobject):
        if subobject.parent != self.base:
            raise ParentMismatchError('Subobject of another presheaf')

    def _check_set_backend(self):
        if not self.base.is_set_backend:
            raise BackendMismatchError('Only defined on the Set backend')


class DerivedNeighborhood(StructuringNeighborhood):
    """N_b(x) = {Y | b(x) <= Y}, decided without building the family"""

    kind = 'derived'

    def __init__(self, element: StructuringElement) -> None:
        super(DerivedNeighborhood, self).__init__(element.base)
        self.element = element

    def __repr__(self):
        return 'DerivedNeighborhood({!r})'.format(self.element)

    @cached_property
    def transposed(self):
        return transpose(self.element)

    def contains(self, c, x, subobject: Subpresheaf) -> bool:
        """Y in N_b(x) at stage c"""
        self._check_subobject(subobject)
        category = self.base.category
        return all(
            self.element.image(self.base.restrict(f, x), category.dom(f)) <=
            subobject.at(category.dom(f))
            for f in category.arrows_into(c)
        )

    def erode(self, subobject):
        self._check_subobject(subobject)
        return erosion(self.element, subobject)

    def dilate(self, subobject):
        self._check_subobject(subobject)
        return dilation(self.transposed, subobject)

    def check(self):
        name = 'structuring-neighborhood'
        for c, x in self.base.elements():
            if not self.element.image(x, c):
                return Report.fail(name, 'strict', c, x)
            if x not in self.element.image(x, c):
                return Report.fail(
                    name, 'membership', c, x, self.element.image(x, c),
                )
        return Report.ok(name)

    def check_topological(self):
        name = 'topological-neighborhood'
        report = self.check()
        if not report:
            return Report.fail(name, report.law, *report.witness)
        # With B = b(x), the condition is transitivity at every stage;
        # restricted pairs stay in R_b and are checked at their own stage.
        for c, x in self.base.elements():
            reach = self.element.image(x, c)
            for y in sorted(reach, key=repr):
                if not self.element.image(y, c) <= reach:
                    return Report.fail(name, 'interiority', c, x, reach)
        return Report.ok(name)

    def global_family(self, x):
        self._check_set_backend()
        return frozenset(
            a for a in enumerate_subobjects(self.base)
            if self.contains(SET_OBJECT, x, a)
        )

    def materialize(self, cap=None) -> 'ExplicitNeighborhood':
        """The transpose of N_b as an explicit subobject of X x PX"""
        power = PowerObject(self.base, cap)
        category = self.base.category
        element = self.element

        def holds(c, x, a):
            for f in category.arrows_into(c):
                d = category.dom(f)
                for y in element.image(self.base.restrict(f, x), d):
                    if (f, y) not in a.at(d):
                        return False
            return True

        relation = Subpresheaf(power.pairs, {
            c: [(x, a) for x, a in power.pairs.at(c) if holds(c, x, a)]
            for c in category.objects
        }, check=False)
        return ExplicitNeighborhood(power, relation)


class ExplicitNeighborhood(StructuringNeighborhood):
    """N stored transposed, as a subobject of X x PX"""

    kind = 'explicit'

    def __init__(self, power: PowerObject, relation: Subpresheaf) -> None:
        super(ExplicitNeighborhood, self).__init__(power.base)
        if relation.parent != power.pairs:
            raise ParentMismatchError('Relation is not a subobject of X x PX')
        self.power = power
        self.relation = relation
        self._families = {}

    def __repr__(self):
        return 'ExplicitNeighborhood({!r})'.format(self.relation)

    @classmethod
    def from_families(cls, base: Presheaf, families: Mapping, cap=None):
        """Build N on the Set backend from x -> list of subsets of X"""
        if not base.is_set_backend:
            raise BackendMismatchError('Families need a finite set')
        power = PowerObject(base, cap)
        pairs = []
        for x, family in families.items():
            for chosen in family:
                subobject = Subpresheaf(base, {SET_OBJECT: chosen})
                pairs.append((x, power.name(subobject, SET_OBJECT)))
        relation = Subpresheaf(power.pairs, {SET_OBJECT: pairs})
        return cls(power, relation)

    def family(self, c, x):
        """Members A of PX(c) with (x, A) in N(c)"""
        key = (c, x)
        if key not in self._families:
            chosen = self.relation.at(c)
            self._families[key] = tuple(
                a for a in self.power.members(c) if (x, a) in chosen
            )
        return self._families[key]

    def erode(self, subobject):
        self._check_subobject(subobject)
        return Subpresheaf(self.base, {
            c: [
                x for x in self.base.at(c)
                if (x, self.power.name(subobject, c)) in self.relation.at(c)
            ]
            for c in self.base.category.objects
        }, check=False)

    def _dilated(self, c, x, subobject):
        category = self.base.category
        for f in category.arrows_into(c):
            d = category.dom(f)
            for a in self.family(d, self.base.restrict(f, x)):
                if not any(
                    self.power.contains(d, y, a) for y in subobject.at(d)
                ):
                    return False
        return True

    def dilate(self, subobject):
        self._check_subobject(subobject)
        return Subpresheaf(self.base, {
            c: [x for x in self.base.at(c) if self._dilated(c, x, subobject)]
            for c in self.base.category.objects
        }, check=False)

    def check(self):
        name = 'structuring-neighborhood'
        for c, x in self.base.elements():
            family = self.family(c, x)
            stage = self.base.at(c)

            def inhabited(a, c=c, stage=stage):
                return any(self.power.contains(c, y, a) for y in stage)

            report = is_filter(
                family,
                self.power.ambient[c],
                members=self.power.members(c),
                inhabited=inhabited,
            )
            if not report:
                return Report.fail(name, report.law, c, x, *report.witness)
            for a in family:
                if not self.power.contains(c, x, a):
                    return Report.fail(name, 'membership', c, x, a)
        return Report.ok(name)

    def _interior(self, c, x, a, b):
        """Whether a stays a neighborhood of every y in b"""
        category = self.base.category
        for f in category.arrows_into(c):
            d = category.dom(f)
            restricted = self.power.restrict(f, a)
            for y in self.base.at(d):
                if (f, y) not in b.at(d):
                    continue
                if (y, restricted) not in self.relation.at(d):
                    return False
        return True

    def check_topological(self):
        name = 'topological-neighborhood'
        report = self.check()
        if not report:
            return Report.fail(name, report.law, *report.witness)
        for c, x in self.base.elements():
            family = self.family(c, x)
            for a in family:
                if not any(self._interior(c, x, a, b) for b in family):
                    return Report.fail(name, 'interiority', c, x, a)
        return Report.ok(name)

    def global_family(self, x):
        self._check_set_backend()
        return frozenset(
            Subpresheaf(self.base, {
                SET_OBJECT: [z for _, z in a.at(SET_OBJECT)],
            }, check=False)
            for a in self.family(SET_OBJECT, x)
        )


def neighborhood_from_element(element: StructuringElement):
    if not is_reflexive(element):
        raise NotReflexiveError('Structuring element is not reflexive')
    return DerivedNeighborhood(element)


def erosion_by_neighborhood(neighborhood, subobject):
    return neighborhood.erode(subobject)


def dilation_by_neighborhood(neighborhood, subobject):
    return neighborhood.dilate(subobject)


def is_structuring_neighborhood(neighborhood) -> Report:
    return neighborhood.check()


def is_topological_neighborhood(neighborhood) -> Report:
    return neighborhood.check_topological()


def open_closed(neighborhood, subobject):
    """Return (open, closed) flags of Y"""
    return (
        neighborhood.erode(subobject) == subobject,
        neighborhood.dilate(subobject) == subobject,
    )


def check_adjunction(dilate, erode, presheaf: Presheaf, cap=None,
                     samples=None) -> Report:
    """Check dilate(Y) <= Z iff Y <= erode(Z) over all pairs in scope

    The scope is Sub(X) when it fits under the cap, else the given samples.
    """
    name = 'adjunction'
    if samples is None:
        samples = list(enumerate_subobjects(presheaf, cap))
        notes = ['exhaustive over {} subobjects'.format(len(samples))]
    else:
        samples = list(samples)
        notes = ['sampled over {} subobjects'.format(len(samples))]
    dilated = {y: dilate(y) for y in samples}
    eroded = {z: erode(z) for z in samples}
    for y in samples:
        for z in samples:
            if (dilated[y] <= z) != (y <= eroded[z]):
                return Report.fail(name, 'adjunction', y, z, notes=notes)
    return Report.ok(name, notes=notes)


def enumerate_filters(presheaf: Presheaf, cap=None):
    """Every filter of Sub(X) on the Set backend, by brute force"""
    if not presheaf.is_set_backend:
        raise BackendMismatchError('Filters are enumerated on finite sets')
    subs = list(enumerate_subobjects(presheaf, cap))
    cap = SUBOBJECT_CAP if cap is None else cap
    if 2 ** len(subs) > cap:
        raise SizeCapExceededError('filters', 2 ** len(subs), cap)
    for size in range(1, len(subs) + 1):
        for family in combinations(subs, size):
            if is_filter(family, presheaf, members=subs):
                yield frozenset(family)


def dilation_by_filters(neighborhood, subobject, filters=None):
    """The existential form of the neighborhood dilation

    x is kept when some filter holds Y together with all of N(x).  Only on
    the Set backend, where filters can be listed.
    """
    base = neighborhood.base
    if filters is None:
        filters = list(enumerate_filters(base))
    kept = []
    for x in base.at(SET_OBJECT):
        family = neighborhood.global_family(x)
        if any(subobject in f and family <= f for f in filters):
            kept.append(x)
    return Subpresheaf(base, {SET_OBJECT: kept}, check=False)


def check_join_distributivity(neighborhood, presheaf, cap=None) -> Report:
    """Whether the dilation commutes with binary joins

    Neighborhood dilations only grant one inclusion; this reports whether
    the other one holds too for the given neighborhood.
    """
    name = 'join-distributivity'
    subs = list(enumerate_subobjects(presheaf, cap))
    dilated = {y: neighborhood.dilate(y) for y in subs}
    for a, b in combinations(subs, 2):
        if neighborhood.dilate(a | b) != dilated[a] | dilated[b]:
            return Report.fail(name, 'join', a, b)
    return Report.ok(name)
