"""morphologic - Exceptions

Copyright (c) 2024 morphologic developers
"""


class MorphologicError(Exception):
    code = 'ERROR'


class InputError(MorphologicError):
    """The given data cannot be turned into a valid value."""
    pass


class CategoryError(InputError):
    """A finite category is malformed beyond what a report can express."""
    code = 'CATEGORY_INVALID'


class CarrierMissingError(InputError):
    """A presheaf lacks the carrier of an object or the action of a
    morphism."""
    code = 'CARRIER_MISSING'


class BackendMismatchError(InputError):
    """Two presheaves live over different index categories."""
    code = 'BACKEND_MISMATCH'


class UnknownObjectError(InputError):
    code = 'UNKNOWN_OBJECT'


class ParentMismatchError(InputError):
    """Two subobjects do not share their parent presheaf."""
    code = 'PARENT_MISMATCH'


class SizeCapExceededError(InputError):
    """A brute-force enumeration would exceed the configured cap."""
    code = 'SIZE_CAP_EXCEEDED'

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap

    def __str__(self):
        return '{} needs {} candidates, cap is {}'.format(
            self.what, self.size, self.cap,
        )


class NotReflexiveError(InputError):
    """A structuring element misses part of the diagonal."""
    code = 'NOT_REFLEXIVE'


class ParseError(InputError):
    code = 'PARSE_ERROR'

    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        self.message = message

    def __str__(self):
        return 'Cannot parse "{}" at offset {}: {}'.format(
            self.text, self.position, self.message,
        )


class UnknownVariableError(InputError):
    code = 'UNKNOWN_VARIABLE'


class ModelError(InputError):
    """The triple (X, N, valuation) does not form a model."""
    code = 'MODEL_INVALID'


class UniverseError(InputError):
    """Models of a universe do not share their propositional variables."""
    code = 'UNIVERSE_INVALID'


class BundleError(InputError):
    """A model bundle document is malformed."""
    code = 'BUNDLE_INVALID'

    def __init__(self, location, message):
        self.location = location
        self.message = message

    def __str__(self):
        return '{}: {}'.format(self.location or '<root>', self.message)


class OperatorError(MorphologicError):
    """A reasoning operator has no result on the given input."""
    pass


class RevisionUnreachableError(OperatorError):
    code = 'REVISION_UNREACHABLE'


class MergeUnreachableError(OperatorError):
    code = 'MERGE_UNREACHABLE'


class AbductionUndefinedError(OperatorError):
    code = 'ABDUCTION_UNDEFINED'


class SubobjectError(InputError):
    """A selection is not a restriction-closed part of its parent."""
    code = 'SUBOBJECT_INVALID'
