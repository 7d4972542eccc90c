"""morphologic - Shared builders for the tests

Copyright (c) 2024 morphologic developers
"""

import random

from morphologic.fincat import FiniteCategory, Presheaf
from morphologic.formula import parse_formula
from morphologic.logic import Model, ModelUniverse
from morphologic.morphology import (
    StructuringElement,
    full_relation,
    neighborhood_from_element,
)
from morphologic.settings import SET_OBJECT
from morphologic.sublattice import Subpresheaf


def finite_set(size):
    """The Set backend on the ids 0 to size - 1, as strings"""
    return Presheaf.from_set([str(i) for i in range(size)])


def subset(presheaf, *elements):
    """A subobject of a Set backend presheaf, elements given as ints"""
    return Subpresheaf(presheaf, {SET_OBJECT: [str(e) for e in elements]})


def element(presheaf, fn):
    """A structuring element on the Set backend from int -> ints"""
    size = len(presheaf.at(SET_OBJECT))
    return StructuringElement.from_function(
        presheaf,
        lambda x: [str(y) for y in fn(int(x)) if 0 <= y < size],
    )


def graph(vertices, edges):
    """A directed graph as a presheaf, edges given as id -> (source, target)"""
    return Presheaf(
        FiniteCategory.graph_index(),
        {'V': list(vertices), 'E': list(edges)},
        {
            '1V': {v: v for v in vertices},
            '1E': {e: e for e in edges},
            's': {e: st[0] for e, st in edges.items()},
            't': {e: st[1] for e, st in edges.items()},
        },
    )


def generic_edge():
    """The graph u -> v"""
    return graph(['u', 'v'], {'e': ('u', 'v')})


def subgraph(presheaf, vertices=(), edges=()):
    return Subpresheaf(presheaf, {'V': list(vertices), 'E': list(edges)})


def line_world(size=8):
    """Points on a line, every point seeing its neighbours"""
    presheaf = finite_set(size)
    return presheaf, element(presheaf, lambda x: [x - 1, x, x + 1])


def line_model(p, q, size=8):
    presheaf, b = line_world(size)
    return Model(presheaf, neighborhood_from_element(b), {
        'p': subset(presheaf, *p),
        'q': subset(presheaf, *q),
    }, name='line')


def two_models():
    """X = {0, 1} seen as one blob; M1: p = X, q empty; M2: p = {1}, q = X"""
    presheaf = finite_set(2)
    neighborhood = neighborhood_from_element(full_relation(presheaf))
    return ModelUniverse([
        Model(presheaf, neighborhood, {
            'p': subset(presheaf, 0, 1),
            'q': subset(presheaf),
        }, name='M1'),
        Model(presheaf, neighborhood, {
            'p': subset(presheaf, 1),
            'q': subset(presheaf, 0, 1),
        }, name='M2'),
    ])


def coin_universe():
    """Every valuation of p over X = {0, 1} seen as one blob"""
    presheaf = finite_set(2)
    neighborhood = neighborhood_from_element(full_relation(presheaf))
    return ModelUniverse.all_valuations(presheaf, neighborhood, ['p'])


def model_where(universe, variable, *elements):
    """Index of the model whose valuation of variable is the given set"""
    wanted = frozenset(str(e) for e in elements)
    for index, model in enumerate(universe.models):
        if model.valuation[variable].at(SET_OBJECT) == wanted:
            return index
    raise LookupError(wanted)


def random_element(presheaf, rng, reflexive=False, density=0.3):
    """A random structuring element on the Set backend"""
    ids = presheaf.at(SET_OBJECT)
    pairs = [
        (x, y) for x in ids for y in ids
        if (reflexive and x == y) or rng.random() < density
    ]
    return StructuringElement.from_pairs(presheaf, {SET_OBJECT: pairs})


def random_graph_element(presheaf, rng, reflexive=False, density=0.3):
    """A random structuring element on a graph, closed under restriction"""
    pairs = {
        c: [
            (x, y) for x in presheaf.at(c) for y in presheaf.at(c)
            if (reflexive and x == y) or rng.random() < density
        ]
        for c in presheaf.category.objects
    }
    return StructuringElement.from_pairs(presheaf, pairs)


def rng_for(seed, *salt):
    return random.Random('{}:{}'.format(seed, ':'.join(map(str, salt))))


def formulas(*texts):
    return [parse_formula(text) for text in texts]
