"""Exception hierarchy for relweyl."""


class RelWeylError(Exception):
    pass


class UnsupportedType(RelWeylError, ValueError):
    pass


class NotARoot(RelWeylError, ValueError):
    pass


class TooLarge(RelWeylError):
    pass


class BraidInconsistency(RelWeylError):
    """Two reduced words of one element gave different divided differences."""


class NonIntegralEntry(RelWeylError):
    pass


class DimensionMismatch(RelWeylError):
    pass


class NotPrime(RelWeylError, ValueError):
    pass


class FactorizationFailure(RelWeylError):
    pass


class NotOneDimensional(RelWeylError):
    pass


class NotMultiplicative(RelWeylError):
    pass
