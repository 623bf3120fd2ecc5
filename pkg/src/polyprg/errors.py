"""Exception types shared across the package."""


class PolyPRGError(Exception):
    """Base class for all errors raised by polyprg."""


class DivisionByZero(PolyPRGError, ZeroDivisionError):
    pass


class DescriptorMismatch(PolyPRGError, TypeError):
    """Operands live in different fields (or towers)."""


SpecMismatch = DescriptorMismatch


class BudgetExceeded(PolyPRGError):
    """An enumeration would exceed the configured budget."""


class ArityMismatch(PolyPRGError, ValueError):
    pass


class NonMultilinearSubstituent(PolyPRGError, ValueError):
    pass


class BothConstant(PolyPRGError, ValueError):
    pass


class ZeroPolynomial(PolyPRGError, ValueError):
    pass


class PrimeFieldInput(PolyPRGError, ValueError):
    pass


class NonMonic(PolyPRGError, ValueError):
    pass


class CharacteristicTwo(PolyPRGError, ValueError):
    pass


class SeedOutOfRange(PolyPRGError, ValueError):
    pass


class InsufficientRandomness(PolyPRGError, ValueError):
    pass


class InvalidParams(PolyPRGError, ValueError):
    reason = "InvalidParams"


class CharTooSmall(InvalidParams):
    reason = "CharTooSmall"


class NoValidK(InvalidParams):
    reason = "NoValidK"


class PrimeFieldParams(InvalidParams):
    reason = "PrimeFieldParams"


class RejectionTimeout(PolyPRGError):
    pass


class OracleInconsistency(PolyPRGError):
    """Two independent computations disagreed; indicates a bug."""
