"""morphologic - Tests

Copyright (c) 2024 morphologic developers
"""
from os import environ, path

# Seed of the randomized tests, overridable to shake out unlucky samples
if environ.get('MORPHOLOGIC_TEST_SEED'):
    TEST_SEED = int(environ['MORPHOLOGIC_TEST_SEED'])
else:
    TEST_SEED = 20240

# How many random structuring elements the property tests draw
RANDOM_ELEMENTS = int(environ.get('MORPHOLOGIC_TEST_ELEMENTS', 50))

BUNDLES = path.join(path.dirname(path.dirname(__file__)), 'bundles')
