"""morphologic - Finite categories and presheaves

A presheaf X over a finite category C gives a finite carrier X(c) for every
object c and, for every morphism f: c' -> c, an action X(f): X(c) -> X(c').
The Set backend is the one-object category whose only morphism is the
identity; a finite set is a presheaf over it.

Copyright (c) 2024 morphologic developers
"""

import logging
from collections import namedtuple
from functools import cached_property
from typing import Dict, Hashable, Iterable, Mapping, Tuple

from morphologic.exceptions import (
    BackendMismatchError,
    CarrierMissingError,
    CategoryError,
    UnknownObjectError,
)
from morphologic.reports import Report
from morphologic.settings import SET_IDENTITY, SET_OBJECT

log = logging.getLogger(__name__)

StageElement = namedtuple('StageElement', ['stage', 'elem'])


class FiniteCategory(object):
    """A finite category given by explicit tables

    Morphisms map their id to a (dom, cod) pair.  The composition table maps
    (g, f) to the id of g . f and is defined exactly when cod(f) = dom(g).
    Nothing is inferred: a missing composite is a validation failure.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, Tuple[str, str]],
        identities: Mapping[str, str],
        composition: Mapping[Tuple[str, str], str],
    ) -> None:
        self.objects = tuple(objects)
        self.morphisms = {f: tuple(ends) for f, ends in morphisms.items()}
        self.identities = dict(identities)
        self.composition = {tuple(k): h for k, h in composition.items()}

    def __repr__(self):
        return 'FiniteCategory(objects={}, morphisms={})'.format(
            list(self.objects), sorted(self.morphisms),
        )

    @cached_property
    def _key(self):
        return (
            self.objects,
            tuple(sorted(self.morphisms.items())),
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.composition.items())),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @classmethod
    def point(cls):
        """The one-object, identity-only category of the Set backend"""
        return cls(
            objects=[SET_OBJECT],
            morphisms={SET_IDENTITY: (SET_OBJECT, SET_OBJECT)},
            identities={SET_OBJECT: SET_IDENTITY},
            composition={(SET_IDENTITY, SET_IDENTITY): SET_IDENTITY},
        )

    @classmethod
    def graph_index(cls):
        """Index category of directed graphs: s, t: V -> E

        A presheaf over it has vertices X(V), edges X(E), and sends an edge
        to its source and target through X(s) and X(t).
        """
        return cls(
            objects=['V', 'E'],
            morphisms={
                '1V': ('V', 'V'),
                '1E': ('E', 'E'),
                's': ('V', 'E'),
                't': ('V', 'E'),
            },
            identities={'V': '1V', 'E': '1E'},
            composition={
                ('1V', '1V'): '1V',
                ('1E', '1E'): '1E',
                ('s', '1V'): 's',
                ('t', '1V'): 't',
                ('1E', 's'): 's',
                ('1E', 't'): 't',
            },
        )

    @property
    def is_set_backend(self) -> bool:
        return len(self.objects) == 1 and len(self.morphisms) == 1

    @cached_property
    def _object_set(self):
        return frozenset(self.objects)

    def check_object(self, c):
        if c not in self._object_set:
            raise UnknownObjectError('Unknown object "{}"'.format(c))

    def dom(self, f):
        return self.morphisms[f][0]

    def cod(self, f):
        return self.morphisms[f][1]

    def identity(self, c):
        self.check_object(c)
        return self.identities[c]

    def compose(self, g, f):
        """Return g . f"""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(
                'No composite for ({}, {}) in the table'.format(g, f)
            )

    @cached_property
    def _hom(self):
        hom = {}
        for f, (dom, cod) in self.morphisms.items():
            hom.setdefault((dom, cod), []).append(f)
        return {k: tuple(sorted(v)) for k, v in hom.items()}

    def hom(self, a, b) -> Tuple[str, ...]:
        self.check_object(a)
        self.check_object(b)
        return self._hom.get((a, b), ())

    @cached_property
    def _into(self):
        into = {c: [] for c in self.objects}
        for f, (_, cod) in sorted(self.morphisms.items()):
            into.setdefault(cod, []).append(f)
        return {c: tuple(fs) for c, fs in into.items()}

    def arrows_into(self, c) -> Tuple[str, ...]:
        """All morphisms with codomain c, identity included"""
        self.check_object(c)
        return self._into.get(c, ())

    def composable_pairs(self):
        for f, (_, cod_f) in sorted(self.morphisms.items()):
            for g, (dom_g, _) in sorted(self.morphisms.items()):
                if cod_f == dom_g:
                    yield g, f


def validate_category(category: FiniteCategory) -> Report:
    """Check the identity, typing and associativity laws of a category"""
    name = 'category'
    morphisms = category.morphisms

    for c in category.objects:
        ident = category.identities.get(c)
        if ident is None or morphisms.get(ident) != (c, c):
            return Report.fail(name, 'identity-missing', c)

    for f, (dom, cod) in sorted(morphisms.items()):
        if dom not in category.objects or cod not in category.objects:
            return Report.fail(name, 'morphism-type', f)

    pairs = set(category.composable_pairs())
    for g, f in sorted(category.composition):
        if (g, f) not in pairs:
            return Report.fail(name, 'composition-domain', g, f)
    for g, f in sorted(pairs):
        if (g, f) not in category.composition:
            return Report.fail(name, 'composition-total', g, f)
        h = category.composition[(g, f)]
        if morphisms.get(h) != (category.dom(f), category.cod(g)):
            return Report.fail(name, 'composition-type', g, f)

    for f in sorted(morphisms):
        left = category.identities[category.cod(f)]
        if category.composition[(left, f)] != f:
            return Report.fail(name, 'left-identity', left, f)
        right = category.identities[category.dom(f)]
        if category.composition[(f, right)] != f:
            return Report.fail(name, 'right-identity', f, right)

    for g, f in sorted(pairs):
        for h in sorted(morphisms):
            if category.dom(h) != category.cod(g):
                continue
            lhs = category.compose(category.compose(h, g), f)
            rhs = category.compose(h, category.compose(g, f))
            if lhs != rhs:
                return Report.fail(name, 'associativity', h, g, f)

    return Report.ok(name)


class Presheaf(object):
    """A finite presheaf, given by its carriers and contravariant actions

    carriers maps an object c to the element ids of X(c).  actions maps a
    morphism f: c' -> c to the table of X(f): X(c) -> X(c').  Element ids are
    opaque; products use pairs of ids.
    """

    def __init__(
        self,
        category: FiniteCategory,
        carriers: Mapping[str, Iterable[Hashable]],
        actions: Mapping[str, Mapping[Hashable, Hashable]],
    ) -> None:
        self.category = category
        self.carriers = {
            c: tuple(dict.fromkeys(elems)) for c, elems in carriers.items()
        }
        self.actions = {f: dict(table) for f, table in actions.items()}

    def __repr__(self):
        return 'Presheaf({})'.format(', '.join(
            '{}: {}'.format(c, len(self.carriers.get(c, ())))
            for c in self.category.objects
        ))

    @classmethod
    def from_set(cls, elements: Iterable[Hashable]):
        """A finite set as a presheaf over the one-object category"""
        elements = tuple(elements)
        return cls(
            FiniteCategory.point(),
            {SET_OBJECT: elements},
            {SET_IDENTITY: {x: x for x in elements}},
        )

    @cached_property
    def _key(self):
        return (
            self.category,
            frozenset(
                (c, frozenset(elems)) for c, elems in self.carriers.items()
            ),
            frozenset(
                (f, frozenset(table.items()))
                for f, table in self.actions.items()
            ),
        )

    @cached_property
    def _hash(self):
        return hash(self._key)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Presheaf):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    @property
    def is_set_backend(self) -> bool:
        return self.category.is_set_backend

    def at(self, c) -> Tuple[Hashable, ...]:
        self.category.check_object(c)
        try:
            return self.carriers[c]
        except KeyError:
            raise CarrierMissingError('No carrier for object "{}"'.format(c))

    @cached_property
    def _members(self) -> Dict[str, frozenset]:
        return {c: frozenset(elems) for c, elems in self.carriers.items()}

    def members(self, c) -> frozenset:
        self.at(c)
        return self._members[c]

    def restrict(self, f, x):
        """Return x . f, the restriction of x in X(cod f) along f"""
        return self.actions[f][x]

    def elements(self):
        for c in self.category.objects:
            for x in self.at(c):
                yield StageElement(c, x)

    @property
    def size(self) -> int:
        return sum(len(self.at(c)) for c in self.category.objects)


def validate_presheaf(category: FiniteCategory, presheaf: Presheaf) -> Report:
    """Check that the carriers and actions form a contravariant functor

    Missing carriers or actions raise CarrierMissingError; broken laws come
    back as a failed report.
    """
    name = 'presheaf'
    if presheaf.category != category:
        raise BackendMismatchError('Presheaf lives over another category')

    for c in category.objects:
        if c not in presheaf.carriers:
            raise CarrierMissingError('No carrier for object "{}"'.format(c))
    for f in sorted(category.morphisms):
        if f not in presheaf.actions:
            raise CarrierMissingError('No action for morphism "{}"'.format(f))
        table = presheaf.actions[f]
        for x in presheaf.at(category.cod(f)):
            if x not in table:
                raise CarrierMissingError(
                    'Action of "{}" misses element "{}"'.format(f, x)
                )
            if table[x] not in presheaf.members(category.dom(f)):
                return Report.fail(name, 'action-type', f, x)

    for c in category.objects:
        ident = category.identities[c]
        for x in presheaf.at(c):
            if presheaf.restrict(ident, x) != x:
                return Report.fail(name, 'identity', ident, x)

    for (g, f), h in sorted(category.composition.items()):
        for x in presheaf.at(category.cod(g)):
            composite = presheaf.restrict(f, presheaf.restrict(g, x))
            if presheaf.restrict(h, x) != composite:
                return Report.fail(name, 'functoriality', g, f, x)

    return Report.ok(name)


def _same_category(*presheaves):
    category = presheaves[0].category
    for presheaf in presheaves[1:]:
        if presheaf.category != category:
            raise BackendMismatchError(
                'Presheaves live over different index categories'
            )
    return category


def product(left: Presheaf, right: Presheaf) -> Presheaf:
    """Binary product, computed stage-wise on pairs of ids"""
    category = _same_category(left, right)
    carriers = {
        c: [(x, y) for x in left.at(c) for y in right.at(c)]
        for c in category.objects
    }
    actions = {}
    for f in category.morphisms:
        cod = category.cod(f)
        actions[f] = {
            (x, y): (left.restrict(f, x), right.restrict(f, y))
            for x in left.at(cod)
            for y in right.at(cod)
        }
    return Presheaf(category, carriers, actions)


def terminal(category: FiniteCategory) -> Presheaf:
    return Presheaf(
        category,
        {c: ['*'] for c in category.objects},
        {f: {'*': '*'} for f in category.morphisms},
    )


def yoneda(category: FiniteCategory, c) -> Presheaf:
    """The representable presheaf y(c) = Hom(-, c), acting by precomposition"""
    category.check_object(c)
    carriers = {d: category.hom(d, c) for d in category.objects}
    actions = {}
    for f, (dom, cod) in category.morphisms.items():
        actions[f] = {h: category.compose(h, f) for h in carriers[cod]}
    return Presheaf(category, carriers, actions)


class PresheafMorphism(object):
    """A family of maps X(c) -> Y(c), one per object"""

    def __init__(self, source: Presheaf, target: Presheaf, components):
        _same_category(source, target)
        self.source = source
        self.target = target
        self.components = {c: dict(m) for c, m in components.items()}

    def __call__(self, c, x):
        return self.components[c][x]

    def is_natural(self) -> Report:
        category = self.source.category
        for f, (dom, cod) in sorted(category.morphisms.items()):
            for x in self.source.at(cod):
                lhs = self(dom, self.source.restrict(f, x))
                rhs = self.target.restrict(f, self(cod, x))
                if lhs != rhs:
                    return Report.fail('naturality', 'naturality', f, x)
        return Report.ok('naturality')

    def is_iso(self) -> Report:
        report = self.is_natural()
        if not report:
            return report
        for c in self.source.category.objects:
            image = [self(c, x) for x in self.source.at(c)]
            if len(set(image)) != len(image):
                return Report.fail('iso', 'injective', c)
            if set(image) != self.target.members(c):
                return Report.fail('iso', 'surjective', c)
        return Report.ok('iso')


def swap(left: Presheaf, right: Presheaf) -> PresheafMorphism:
    """The canonical map X x Y -> Y x X"""
    source = product(left, right)
    return PresheafMorphism(source, product(right, left), {
        c: {(x, y): (y, x) for x, y in source.at(c)}
        for c in source.category.objects
    })


def associator(first, second, third) -> PresheafMorphism:
    """The canonical re-bracketing (X x Y) x Z -> X x (Y x Z)"""
    source = product(product(first, second), third)
    target = product(first, product(second, third))
    return PresheafMorphism(source, target, {
        c: {((x, y), z): (x, (y, z)) for (x, y), z in source.at(c)}
        for c in source.category.objects
    })


def unit_projection(presheaf: Presheaf) -> PresheafMorphism:
    """The projection X x 1 -> X, an isomorphism"""
    source = product(presheaf, terminal(presheaf.category))
    return PresheafMorphism(source, presheaf, {
        c: {(x, one): x for x, one in source.at(c)}
        for c in source.category.objects
    })
