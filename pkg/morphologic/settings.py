"""morphologic - Settings

Copyright (c) 2024 morphologic developers
"""

from os import environ

# Brute-force enumerations of Sub(X) refuse to go past this many candidate
# selections.
SUBOBJECT_CAP = int(environ.get('MORPHOLOGIC_SUBOBJECT_CAP', 2 ** 16))

# Generated corpora are truncated at this many formulas.
CORPUS_CAP = int(environ.get('MORPHOLOGIC_CORPUS_CAP', 10 ** 4))

DEFAULT_DEPTH = int(environ.get('MORPHOLOGIC_DEPTH', 2))
DEFAULT_SEED = int(environ.get('MORPHOLOGIC_SEED', 0))
DEFAULT_WORKERS = int(environ.get('MORPHOLOGIC_WORKERS', 4))

# Sample size for pair-wise law checks when Sub(X) is too large to enumerate
DEFAULT_SAMPLES = int(environ.get('MORPHOLOGIC_SAMPLES', 64))

# Bounds of the tau, zeta and dilation chains.  Semantic chains terminate on
# finite universes anyway, the cap only guards against runaway input.
SYNTACTIC_STEP_CAP = int(environ.get('MORPHOLOGIC_SYNTACTIC_STEPS', 16))
SEMANTIC_STEP_CAP = int(environ.get('MORPHOLOGIC_SEMANTIC_STEPS', 4096))

FIXPOINT_MODES = ('semantic', 'syntactic')
DEFAULT_FIXPOINT_MODE = 'semantic'

REVISION_OPERATORS = ('dilation', 'tau')
ABDUCTION_VARIANTS = ('lcr', 'lnr')

AGM_POSTULATES = ['G1', 'G2', 'G3', 'G4', "G4'", 'G5']
CONTRACTION_POSTULATES = ['C1', 'C2', 'C3', 'C4', 'C5', 'C6', 'C7']
ABDUCTION_POSTULATES = [
    'LLE',
    'RLE',
    'RS',
    'E-Con',
    'ROR',
    'E-Reflexivity',
    'E-CM',
    'E-C-Cut',
]
MINIMALITY_CHECKS = ['FA1', 'FA2', 'Min']

# Postulates each operator is claimed to satisfy.  A suite fails when one of
# these fails; the others are reported for information only.
EXPECTED_POSTULATES = {
    ('agm', 'dilation'): ['G1', 'G2', 'G3', 'G4', 'G5'],
    ('agm', 'tau'): ['G1', 'G2', 'G3', "G4'", 'G5'],
    ('contraction', 'dilation'): [],
    ('contraction', 'tau'): ['C1', 'C3', 'C4', 'C6'],
    ('abduction', 'lcr'): [
        'LLE', 'RLE', 'RS', 'E-Con', 'E-Reflexivity', 'E-CM', 'E-C-Cut',
    ],
    ('abduction', 'lnr'): ['RLE', 'RS', 'E-Con'],
    ('minimality', 'dilation'): MINIMALITY_CHECKS,
    ('minimality', 'tau'): MINIMALITY_CHECKS,
}

# Postulates an operator is known to break once Mod means global validity
# over a finite universe, with the cause.  They are reported as deviations
# and never fail a suite.
_NOT_CONSISTENT = (
    'phi |/- psi leaves phi & ~psi without models when psi fails only '
    'locally'
)
_SPELLING = (
    'the result depends on how psi is written: []p and p share their '
    'models but contract differently'
)
_DISJUNCTION = (
    'Mod(g | d) can be larger than the union of Mod(g) and Mod(d)'
)
_RETRACTION = (
    'the retraction chain of the theory and alpha depends on how alpha is '
    'written, not only on its models'
)
KNOWN_DEVIATIONS = {
    ('contraction', 'tau'): {
        'C2': _NOT_CONSISTENT,
        'C5': _SPELLING,
        'C7': _NOT_CONSISTENT,
    },
    ('abduction', 'lcr'): {
        'ROR': _DISJUNCTION,
    },
    ('abduction', 'lnr'): {
        'LLE': _RETRACTION,
        'ROR': _DISJUNCTION,
        'E-Reflexivity': _RETRACTION,
        'E-C-Cut': _RETRACTION,
    },
}

RCC8_RELATIONS = [
    'C', 'DC', 'EC', 'PO', 'TPP', 'TPPi', 'NTPP', 'NTPPi', 'EQ',
]
# Most specific relation first
RCC8_PRIORITY = ['EQ', 'NTPP', 'NTPPi', 'TPP', 'TPPi', 'PO', 'EC', 'DC']

BUNDLE_VERSION = 1
SET_OBJECT = '*'
SET_IDENTITY = '1'

# Postulates quantifying over more corpus tuples than this are checked on a
# seeded sample of that many tuples.
POSTULATE_TUPLE_CAP = int(environ.get('MORPHOLOGIC_TUPLE_CAP', 20000))
