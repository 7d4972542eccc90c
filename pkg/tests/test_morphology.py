"""morphologic - Morphological operator tests

Copyright (c) 2024 morphologic developers
"""

from itertools import product as cartesian
from unittest import TestCase

from morphologic.exceptions import NotReflexiveError, ParentMismatchError
from morphologic.morphology import (
    DerivedNeighborhood,
    ExplicitNeighborhood,
    StructuringElement,
    check_adjunction,
    check_join_distributivity,
    diagonal,
    dilation,
    dilation_by_filters,
    dilation_by_neighborhood,
    enumerate_filters,
    erosion,
    erosion_by_neighborhood,
    full_relation,
    is_filter,
    is_reflexive,
    is_structuring_neighborhood,
    is_topological_neighborhood,
    neighborhood_from_element,
    open_closed,
    opening_closing,
    transpose,
)
from morphologic.settings import SET_OBJECT
from morphologic.sublattice import bottom, enumerate_subobjects, neg, top
from tests import RANDOM_ELEMENTS, TEST_SEED
from tests.conftest import (
    element,
    finite_set,
    generic_edge,
    graph,
    random_element,
    random_graph_element,
    rng_for,
    subgraph,
    subset,
)


def preorder_closure(presheaf, b):
    """Reflexive transitive closure of a Set backend structuring element"""
    ids = presheaf.at(SET_OBJECT)
    reach = {x: set(b.image(x, SET_OBJECT)) | {x} for x in ids}
    for k in ids:
        for x in ids:
            if k in reach[x]:
                reach[x] |= reach[k]
    return StructuringElement.from_pairs(presheaf, {
        SET_OBJECT: [(x, y) for x in ids for y in reach[x]],
    })


def small_square():
    return graph(['a', 'b'], {'x': ('a', 'b'), 'y': ('b', 'b')})


class StructuringElementTest(TestCase):
    def setUp(self):
        self.points = finite_set(4)
        self.b = element(self.points, lambda x: [x, x + 1])

    def test_transpose(self):
        transposed = transpose(self.b)
        self.assertEqual(transposed.image('0', '*'), frozenset(['0']))
        self.assertEqual(transposed.image('1', '*'), frozenset(['0', '1']))
        self.assertEqual(transposed.image('3', '*'), frozenset(['2', '3']))
        self.assertEqual(transpose(transposed), self.b)
        self.assertEqual(transpose(diagonal(self.points)),
                         diagonal(self.points))

    def test_erosion_and_dilation(self):
        self.assertEqual(
            erosion(self.b, subset(self.points, 1, 2, 3)),
            subset(self.points, 1, 2, 3),
        )
        self.assertEqual(
            dilation(self.b, subset(self.points, 2)),
            subset(self.points, 2, 3),
        )
        self.assertEqual(erosion(self.b, top(self.points)), top(self.points))
        self.assertEqual(
            dilation(self.b, bottom(self.points)), bottom(self.points),
        )

    def test_opening_closing(self):
        self.assertEqual(erosion(self.b, subset(self.points, 0, 1)),
                         subset(self.points, 0))
        opening, closing = opening_closing(self.b, subset(self.points, 0, 1))
        self.assertEqual(opening, subset(self.points, 0, 1))
        self.assertTrue(subset(self.points, 0, 1) <= closing)
        opening, _ = opening_closing(self.b, bottom(self.points))
        self.assertEqual(opening, bottom(self.points))
        _, closing = opening_closing(self.b, top(self.points))
        self.assertEqual(closing, top(self.points))

    def test_diagonal_is_the_identity(self):
        ident = diagonal(self.points)
        for y in enumerate_subobjects(self.points):
            self.assertEqual(erosion(ident, y), y)
            self.assertEqual(dilation(ident, y), y)

    def test_reflexivity(self):
        self.assertTrue(is_reflexive(self.b))
        self.assertTrue(is_reflexive(full_relation(self.points)))
        successor = element(self.points, lambda x: [x + 1])
        self.assertFalse(is_reflexive(successor))
        self.assertEqual(
            erosion(successor, bottom(self.points)), subset(self.points, 3),
        )

    def test_parent_mismatch(self):
        with self.assertRaises(ParentMismatchError):
            erosion(self.b, subset(finite_set(3), 0))


class RandomElementTest(TestCase):
    """Laws every structuring element satisfies, on random samples"""

    def samples(self, reflexive=None):
        """Random elements on both backends, half of them forced reflexive
        unless reflexive is given"""
        for index in range(RANDOM_ELEMENTS):
            rng = rng_for(TEST_SEED, 'element', index, reflexive)
            forced = index % 4 < 2 if reflexive is None else reflexive
            if index % 2:
                presheaf = small_square()
                b = random_graph_element(presheaf, rng, reflexive=forced)
            else:
                presheaf = finite_set(4)
                b = random_element(presheaf, rng, reflexive=forced)
            yield presheaf, b

    def test_adjunction(self):
        for presheaf, b in self.samples():
            report = check_adjunction(
                lambda y: dilation(b, y), lambda z: erosion(b, z), presheaf,
            )
            self.assertTrue(report, (b, report))

    def test_reflexivity_iff_extensivity(self):
        for presheaf, b in self.samples():
            subs = list(enumerate_subobjects(presheaf))
            extensive = all(
                erosion(b, y) <= y <= dilation(b, y) for y in subs
            )
            self.assertEqual(is_reflexive(b), extensive, b)

    def test_duality(self):
        for presheaf, b in self.samples():
            transposed = transpose(b)
            for y in enumerate_subobjects(presheaf):
                self.assertEqual(
                    erosion(b, neg(y)), neg(dilation(transposed, y)),
                )
                inner = dilation(transposed, neg(y))
                outer = neg(erosion(b, y))
                self.assertTrue(inner <= outer)
                if presheaf.is_set_backend:
                    self.assertEqual(inner, outer)

    def test_opening_closing_laws(self):
        for presheaf, b in self.samples():
            for y in enumerate_subobjects(presheaf):
                eroded = erosion(b, y)
                dilated = dilation(b, y)
                opening, closing = opening_closing(b, y)
                self.assertTrue(opening <= y <= closing)
                self.assertEqual(erosion(b, dilation(b, eroded)), eroded)
                self.assertEqual(dilation(b, erosion(b, dilated)), dilated)
                self.assertEqual(opening_closing(b, opening)[0], opening)
                self.assertEqual(opening_closing(b, closing)[1], closing)

    def test_monotony(self):
        for presheaf, b in self.samples():
            subs = list(enumerate_subobjects(presheaf))
            for y, z in cartesian(subs, repeat=2):
                self.assertEqual(
                    erosion(b, y & z), erosion(b, y) & erosion(b, z),
                )
                self.assertEqual(
                    dilation(b, y | z), dilation(b, y) | dilation(b, z),
                )

    def test_derived_neighborhood_agrees(self):
        count = 0
        for presheaf, b in self.samples(reflexive=True):
            self.assertTrue(is_reflexive(b))
            count += 1
            neighborhood = neighborhood_from_element(b)
            transposed = transpose(b)
            for y in enumerate_subobjects(presheaf):
                self.assertEqual(
                    erosion_by_neighborhood(neighborhood, y), erosion(b, y),
                )
                self.assertEqual(
                    dilation_by_neighborhood(neighborhood, y),
                    dilation(transposed, y),
                )
        self.assertEqual(count, RANDOM_ELEMENTS)

    def test_transposed_neighborhoods_are_adjoint(self):
        for presheaf, b in self.samples(reflexive=True):
            report = check_adjunction(
                neighborhood_from_element(transpose(b)).dilate,
                neighborhood_from_element(b).erode,
                presheaf,
            )
            self.assertTrue(report, (b, report))


class PresheafDualityTest(TestCase):
    def test_strict_inequality_on_a_graph(self):
        edge = generic_edge()
        full = full_relation(edge)
        y = subgraph(edge, ['u'])
        inner = dilation(transpose(full), neg(y))
        outer = neg(erosion(full, y))
        self.assertEqual(inner, subgraph(edge, ['u', 'v']))
        self.assertEqual(outer, top(edge))
        self.assertNotEqual(inner, outer)


class FilterTest(TestCase):
    def setUp(self):
        self.points = finite_set(2)

    def test_principal_filter(self):
        family = [subset(self.points, 0), subset(self.points, 0, 1)]
        self.assertTrue(is_filter(family, self.points))

    def test_strictness(self):
        family = list(enumerate_subobjects(self.points))
        report = is_filter(family, self.points)
        self.assertFalse(report)
        self.assertEqual(report.law, 'strict')

    def test_top_alone(self):
        self.assertTrue(is_filter([top(self.points)], self.points))

    def test_upper_closure(self):
        points = finite_set(3)
        report = is_filter([subset(points, 0), top(points)], points)
        self.assertFalse(report)
        self.assertEqual(report.law, 'upper')

    def test_missing_top(self):
        report = is_filter([], self.points)
        self.assertFalse(report)
        self.assertEqual(report.law, 'top')


class NeighborhoodTest(TestCase):
    def setUp(self):
        self.points = finite_set(3)
        # Not transitive: 0 sees 1, 1 sees 2, 0 does not see 2
        self.b = element(self.points, lambda x: [x, x + 1] if x < 2 else [x])
        self.neighborhood = neighborhood_from_element(self.b)

    def test_membership(self):
        points = finite_set(4)
        n = neighborhood_from_element(element(points, lambda x: [x, x + 1]))
        self.assertTrue(n.contains('*', '0', subset(points, 0, 1, 2)))
        self.assertFalse(n.contains('*', '0', subset(points, 0, 2)))

    def test_not_reflexive(self):
        successor = element(self.points, lambda x: [x + 1])
        with self.assertRaises(NotReflexiveError):
            neighborhood_from_element(successor)
        report = DerivedNeighborhood(successor).check()
        self.assertFalse(report)
        self.assertEqual(report.law, 'membership')
        self.assertEqual(report.witness[:2], ('*', '0'))

    def test_erosion(self):
        self.assertEqual(
            self.neighborhood.erode(subset(self.points, 0, 1)),
            subset(self.points, 0),
        )

    def test_structuring_but_not_topological(self):
        self.assertTrue(is_structuring_neighborhood(self.neighborhood))
        report = is_topological_neighborhood(self.neighborhood)
        self.assertFalse(report)
        self.assertEqual(report.law, 'interiority')
        self.assertEqual(report.witness,
                         ('*', '0', frozenset(['0', '1'])))

    def test_adjunction_fails_and_opens_differ_from_closeds(self):
        n = self.neighborhood
        self.assertFalse(check_adjunction(n.dilate, n.erode, self.points))
        subs = list(enumerate_subobjects(self.points))
        opens = {y for y in subs if open_closed(n, y)[0]}
        closeds = {y for y in subs if open_closed(n, y)[1]}
        self.assertEqual(opens, {
            bottom(self.points),
            subset(self.points, 2),
            subset(self.points, 1, 2),
            top(self.points),
        })
        self.assertNotEqual(opens, closeds)
        self.assertIn(subset(self.points, 0), closeds)

    def test_partition_opens_are_closeds(self):
        points = finite_set(4)
        blocks = element(points, lambda x: [x - x % 2, x - x % 2 + 1])
        n = neighborhood_from_element(blocks)
        self.assertTrue(check_adjunction(n.dilate, n.erode, points))
        for y in enumerate_subobjects(points):
            is_open, is_closed = open_closed(n, y)
            self.assertEqual(is_open, is_closed)

    def test_preorder(self):
        points = finite_set(4)
        n = neighborhood_from_element(element(points, lambda x: range(x, 4)))
        self.assertTrue(is_topological_neighborhood(n))
        self.assertEqual(open_closed(n, subset(points, 2, 3))[0], True)
        self.assertEqual(open_closed(n, subset(points, 0)), (False, True))
        self.assertEqual(open_closed(n, subset(points, 3))[1], False)
        self.assertEqual(open_closed(n, top(points)), (True, True))

    def test_random_preorders_are_interior_operators(self):
        points = finite_set(4)
        subs = list(enumerate_subobjects(points))
        for index in range(20):
            rng = rng_for(TEST_SEED, 'preorder', index)
            b = preorder_closure(points, random_element(points, rng))
            n = neighborhood_from_element(b)
            self.assertTrue(is_topological_neighborhood(n), b)
            for y in subs:
                interior = n.erode(y)
                self.assertTrue(interior <= y)
                self.assertEqual(n.erode(interior), interior)
                self.assertEqual(n.dilate(n.dilate(y)), n.dilate(y))
                for z in subs:
                    self.assertEqual(n.erode(y & z), interior & n.erode(z))
            self.assertEqual(n.erode(top(points)), top(points))

    def test_non_transitive_idempotence_fails(self):
        n = self.neighborhood
        y = subset(self.points, 0, 1)
        self.assertNotEqual(n.erode(n.erode(y)), n.erode(y))

    def test_join_distributivity(self):
        self.assertTrue(
            check_join_distributivity(self.neighborhood, self.points)
        )


class ExplicitNeighborhoodTest(TestCase):
    def test_principal_families(self):
        points = finite_set(3)
        families = {
            x: [
                list(a.at('*')) for a in enumerate_subobjects(points)
                if x in a.at('*')
            ]
            for x in points.at('*')
        }
        n = ExplicitNeighborhood.from_families(points, families)
        self.assertTrue(is_structuring_neighborhood(n))
        self.assertTrue(is_topological_neighborhood(n))
        for y in enumerate_subobjects(points):
            self.assertEqual(n.erode(y), y)
            self.assertEqual(n.dilate(y), y)
            self.assertEqual(open_closed(n, y), (True, True))

    def test_family_without_its_point(self):
        points = finite_set(2)
        n = ExplicitNeighborhood.from_families(points, {
            '0': [['1'], ['0', '1']],
            '1': [['1'], ['0', '1']],
        })
        report = is_structuring_neighborhood(n)
        self.assertFalse(report)
        self.assertEqual(report.law, 'membership')

    def test_materialized_agrees_on_sets(self):
        points = finite_set(3)
        derived = neighborhood_from_element(
            element(points, lambda x: [x, x + 1] if x < 2 else [x])
        )
        explicit = derived.materialize()
        self.assertTrue(is_structuring_neighborhood(explicit))
        self.assertFalse(is_topological_neighborhood(explicit))
        for y in enumerate_subobjects(points):
            self.assertEqual(explicit.erode(y), derived.erode(y))
            self.assertEqual(explicit.dilate(y), derived.dilate(y))

    def test_materialized_agrees_on_a_graph(self):
        edge = generic_edge()
        for b in (full_relation(edge), diagonal(edge)):
            derived = neighborhood_from_element(b)
            explicit = derived.materialize()
            self.assertTrue(is_structuring_neighborhood(explicit))
            self.assertTrue(is_topological_neighborhood(explicit))
            for y in enumerate_subobjects(edge):
                self.assertEqual(explicit.erode(y), derived.erode(y))
                self.assertEqual(explicit.dilate(y), derived.dilate(y))


class FilterDilationTest(TestCase):
    def test_existential_form_agrees(self):
        points = finite_set(3)
        filters = list(enumerate_filters(points))
        for b in (
            element(points, lambda x: [x, x + 1] if x < 2 else [x]),
            element(points, lambda x: range(x, 3)),
            diagonal(points),
        ):
            n = neighborhood_from_element(b)
            for y in enumerate_subobjects(points):
                self.assertEqual(
                    dilation_by_filters(n, y, filters), n.dilate(y),
                )
