"""Exception hierarchy shared by every module of the package."""


class QHAError(ValueError):
    """Base class for all domain errors raised by qhalab."""


class DimensionMismatch(QHAError):
    pass


class LengthMismatch(DimensionMismatch):
    pass


class NotHermitian(QHAError):
    pass


class NotPositive(QHAError):
    pass


class InvalidExponent(QHAError):
    pass


class DomainError(QHAError):
    """An eigenvalue fell outside the domain declared by a scalar map."""


class SingularFrame(QHAError):
    pass


class NotAFrame(QHAError):
    pass


class NotDensityOperator(QHAError):
    pass


class NegativeWeight(QHAError):
    pass


class EmptyRegion(QHAError):
    pass


class NonTilingBoxes(QHAError):
    pass


class NonDivisorLattice(QHAError):
    pass


class BadDelta(QHAError):
    pass


class FourierWignerZero(QHAError):
    """The Fourier-Wigner transform of the window vanishes somewhere."""


class ConfigError(QHAError):
    pass


class FormatError(QHAError):
    """Malformed QHAOP container."""
