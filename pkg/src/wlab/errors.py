"""Exception types raised across the toolkit."""


class WLabError(ValueError):
    """Base class for every validation failure in this package."""


class ZeroVector(WLabError):
    pass


class LengthMismatch(WLabError):
    pass


class UnknownQubit(WLabError):
    pass


class DimensionMismatch(WLabError):
    pass


class NullOutcome(WLabError):
    """A projective outcome whose probability is below the zero-branch cutoff."""


class BadParams(WLabError):
    pass


class BadDensity(WLabError):
    pass


class BadPairing(WLabError):
    pass


class Ambiguous(WLabError):
    """Two decoding outcomes are equally likely, so no message can be chosen."""
