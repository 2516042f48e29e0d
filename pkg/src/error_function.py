"""
Exceptions raised by the superjordan modules.

Every error derives from ``ValueError`` through ``SuperJordanError`` so that callers can keep a
single ``except ValueError`` around parameter validation.
"""


class SuperJordanError(ValueError):
    """Base class of every domain error."""


class DimensionMismatch(SuperJordanError):
    pass


class BadPrime(SuperJordanError):
    """The modulus is not a prime > 3, or a denominator vanishes modulo it."""


class TooLarge(SuperJordanError):
    """A size guard refused the request."""


class NotGraded(SuperJordanError):
    pass


class GradingViolation(SuperJordanError):
    """A structure constant pairs basis elements whose parities do not add up."""


class NotAssociative(SuperJordanError):
    pass


class InvalidSuperinvolution(SuperJordanError):
    pass


class NotIdempotent(SuperJordanError):
    pass


class NotPeirceDecomposable(SuperJordanError):
    pass


class NoRealization(SuperJordanError):
    pass


class NotAnIdeal(SuperJordanError):
    pass


class NotNilpotent(SuperJordanError):
    pass


class ZeroParameter(SuperJordanError):
    pass


class EmptyForm(SuperJordanError):
    pass


class AlreadyUnital(SuperJordanError):
    pass


class DegenerateForm(SuperJordanError):
    pass


class BadParameter(SuperJordanError):
    pass


class BadBlocks(SuperJordanError):
    pass


class NotASubalgebra(SuperJordanError):
    pass


class SideConditionViolated(SuperJordanError):
    """A corner algebra is too small for its hermitian part to generate it."""


class CatalogSpecError(SuperJordanError):
    """Unknown catalog name or malformed parameters."""


class AlgebraFileError(SuperJordanError):
    pass
