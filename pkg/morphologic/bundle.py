"""morphologic - Model bundles

A bundle is the JSON document every command reads: a presheaf, a
structuring neighborhood on it, a valuation, and optionally a universe of
further models.  docs/bundle-schema.md describes the format.  Errors name
the dotted path of the offending part of the document.

Copyright (c) 2024 morphologic developers
"""

import json
import logging
from typing import Optional

from morphologic.exceptions import BundleError, InputError
from morphologic.fincat import (
    FiniteCategory,
    Presheaf,
    validate_category,
    validate_presheaf,
)
from morphologic.formula import RESERVED_NAMES
from morphologic.logic import Model, ModelUniverse
from morphologic.morphology import (
    ExplicitNeighborhood,
    StructuringElement,
    diagonal,
    full_relation,
    neighborhood_from_element,
)
from morphologic.settings import BUNDLE_VERSION, SET_OBJECT
from morphologic.sublattice import Subpresheaf

log = logging.getLogger(__name__)

BACKENDS = ('set', 'presheaf')


def _ids(values, location):
    if not isinstance(values, list):
        raise BundleError(location, 'Expected a list of element ids')
    ids = []
    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise BundleError(
                '{}.{}'.format(location, index), 'Element ids are strings',
            )
        ids.append(str(value))
    return ids


def _mapping(data, location):
    if not isinstance(data, dict):
        raise BundleError(location, 'Expected an object')
    return data


def _category(data, location):
    data = _mapping(data, location)
    objects = data.get('objects')
    if not isinstance(objects, list) or not objects:
        raise BundleError(location + '.objects', 'Expected objects')
    objects = _ids(objects, location + '.objects')
    morphisms = {}
    for f, ends in _mapping(
        data.get('morphisms', {}), location + '.morphisms',
    ).items():
        if not isinstance(ends, list) or len(ends) != 2:
            raise BundleError(
                '{}.morphisms.{}'.format(location, f), 'Expected [dom, cod]',
            )
        morphisms[f] = tuple(
            _ids(ends, '{}.morphisms.{}'.format(location, f))
        )
    identities = {
        c: str(f) for c, f in _mapping(
            data.get('identities', {}), location + '.identities',
        ).items()
    }
    for c in objects:
        if c not in identities:
            identities[c] = '1' + c
        morphisms.setdefault(identities[c], (c, c))

    composition = {}
    for index, triple in enumerate(data.get('composition', [])):
        if not isinstance(triple, list) or len(triple) != 3:
            raise BundleError(
                '{}.composition.{}'.format(location, index),
                'Expected [g, f, g.f]',
            )
        g, f, h = triple
        composition[(g, f)] = h
    # Composites with identities may be left out of the document
    for f, (dom, cod) in morphisms.items():
        if cod in identities:
            composition.setdefault((identities[cod], f), f)
        if dom in identities:
            composition.setdefault((f, identities[dom]), f)

    category = FiniteCategory(objects, morphisms, identities, composition)
    report = validate_category(category)
    if not report:
        raise BundleError(location, 'Category fails {} at {}'.format(
            report.law, list(report.witness),
        ))
    return category


def _presheaf(data, location):
    backend = data.get('backend')
    if backend not in BACKENDS:
        raise BundleError(location + 'backend', 'Backend must be one of {}'
                          .format(', '.join(BACKENDS)))
    if backend == 'set':
        elements = data.get('elements')
        if elements is None:
            elements = _mapping(
                data.get('carriers', {}), location + 'carriers',
            ).get(SET_OBJECT)
        return Presheaf.from_set(_ids(elements, location + 'elements'))

    category = _category(data.get('category'), location + 'category')
    carriers = {
        c: _ids(values, '{}carriers.{}'.format(location, c))
        for c, values in _mapping(
            data.get('carriers'), location + 'carriers',
        ).items()
    }
    actions = {}
    for f, table in _mapping(
        data.get('actions', {}), location + 'actions',
    ).items():
        table = _mapping(table, '{}actions.{}'.format(location, f))
        actions[f] = {str(x): str(y) for x, y in table.items()}
    for c in category.objects:
        ident = category.identities[c]
        if ident not in actions:
            actions[ident] = {x: x for x in carriers.get(c, [])}
    presheaf = Presheaf(category, carriers, actions)
    try:
        report = validate_presheaf(category, presheaf)
    except InputError as error:
        raise BundleError(location + 'carriers', str(error))
    if not report:
        raise BundleError(location + 'actions', 'Presheaf fails {} at {}'
                          .format(report.law, list(report.witness)))
    return presheaf


def _subobject(presheaf, data, location):
    """A subobject, given per object or as a plain list on the Set backend"""
    if presheaf.is_set_backend and isinstance(data, list):
        data = {SET_OBJECT: data}
    data = _mapping(data, location)
    try:
        return Subpresheaf(presheaf, {
            c: _ids(values, '{}.{}'.format(location, c))
            for c, values in data.items()
        })
    except InputError as error:
        raise BundleError(location, str(error))


def _pairs(data, location):
    if not isinstance(data, list):
        raise BundleError(location, 'Expected a list of pairs')
    pairs = []
    for index, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise BundleError(
                '{}.{}'.format(location, index), 'Expected [x, y]',
            )
        pairs.append(tuple(_ids(pair, '{}.{}'.format(location, index))))
    return pairs


def _neighborhood(presheaf, data, location):
    data = _mapping(data, location)
    try:
        if 'families' in data:
            families = {
                str(x): [
                    _ids(subset, '{}.families.{}.{}'.format(location, x, i))
                    for i, subset in enumerate(family)
                ]
                for x, family in _mapping(
                    data['families'], location + '.families',
                ).items()
            }
            return ExplicitNeighborhood.from_families(presheaf, families)
        element = data.get('element')
        if element == 'diagonal':
            element = diagonal(presheaf)
        elif element == 'full':
            element = full_relation(presheaf)
        elif isinstance(element, list) and presheaf.is_set_backend:
            element = StructuringElement.from_pairs(presheaf, {
                SET_OBJECT: _pairs(element, location + '.element'),
            })
        elif isinstance(element, dict):
            element = StructuringElement.from_pairs(presheaf, {
                c: _pairs(pairs, '{}.element.{}'.format(location, c))
                for c, pairs in element.items()
            })
        else:
            raise BundleError(
                location, 'Expected "element" or "families"',
            )
        if data.get('reflexive_closure'):
            element = StructuringElement(
                presheaf, element.relation | diagonal(presheaf).relation,
            )
        return neighborhood_from_element(element)
    except BundleError:
        raise
    except InputError as error:
        raise BundleError(location, str(error))


def _valuation(presheaf, data, location):
    for name in _mapping(data or {}, location):
        if name in RESERVED_NAMES:
            raise BundleError(
                '{}.{}'.format(location, name), 'T and F are constants',
            )
    return {
        name: _subobject(presheaf, value, '{}.{}'.format(location, name))
        for name, value in _mapping(data or {}, location).items()
    }


def _model(presheaf, neighborhood, valuation, name, location):
    try:
        return Model(presheaf, neighborhood, valuation, name=name)
    except InputError as error:
        raise BundleError(location, str(error))


class Bundle(object):
    """A decoded bundle: the presheaf, its neighborhood, the base model and
    the universe"""

    def __init__(self, data, source=None):
        self.source = source
        data = _mapping(data, '')
        version = data.get('version', BUNDLE_VERSION)
        if version != BUNDLE_VERSION:
            raise BundleError('version', 'Unsupported version {}'.format(
                version,
            ))
        self.name = data.get('name', source)
        self.presheaf = _presheaf(data, '')
        self.neighborhood = _neighborhood(
            self.presheaf, data.get('structuring'), 'structuring',
        )
        self.valuation = _valuation(
            self.presheaf, data.get('valuation'), 'valuation',
        )
        self.model = _model(
            self.presheaf,
            self.neighborhood,
            self.valuation,
            data.get('model_name', 'M0'),
            'valuation',
        )
        self.universe = self._universe(data.get('universe'))

    def _universe(self, data):
        if data is None:
            return ModelUniverse([self.model])
        if isinstance(data, dict) and 'all_valuations' in data:
            names = data['all_valuations']
            if not isinstance(names, list) or not names or \
                    RESERVED_NAMES.intersection(map(str, names)):
                raise BundleError(
                    'universe.all_valuations', 'Expected variable names',
                )
            try:
                return ModelUniverse.all_valuations(
                    self.presheaf, self.neighborhood, names,
                )
            except InputError as error:
                raise BundleError('universe', str(error))
        if not isinstance(data, list) or not data:
            raise BundleError('universe', 'Expected a list of overlays')
        models = []
        for index, overlay in enumerate(data):
            location = 'universe.{}'.format(index)
            overlay = _mapping(overlay, location)
            neighborhood = self.neighborhood
            if 'structuring' in overlay:
                neighborhood = _neighborhood(
                    self.presheaf, overlay['structuring'],
                    location + '.structuring',
                )
            valuation = dict(self.valuation)
            valuation.update(_valuation(
                self.presheaf, overlay.get('valuation'),
                location + '.valuation',
            ))
            models.append(_model(
                self.presheaf,
                neighborhood,
                valuation,
                overlay.get('name', 'M{}'.format(index + 1)),
                location,
            ))
        try:
            return ModelUniverse(models)
        except InputError as error:
            raise BundleError('universe', str(error))


def load_bundle(path: str) -> Bundle:
    try:
        with open(path) as fd:
            data = json.load(fd)
    except OSError as error:
        raise BundleError('', 'Cannot read {}: {}'.format(path, error))
    except ValueError as error:
        raise BundleError('', 'Invalid JSON in {}: {}'.format(path, error))
    log.debug('Loaded bundle {}'.format(path))
    return Bundle(data, source=path)


def parse_bundle(text: str, source: Optional[str] = None) -> Bundle:
    try:
        data = json.loads(text)
    except ValueError as error:
        raise BundleError('', 'Invalid JSON: {}'.format(error))
    return Bundle(data, source=source)
