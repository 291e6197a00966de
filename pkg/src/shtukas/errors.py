"""Exception hierarchy shared by every module of the package."""


class ShtukaError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(ShtukaError, ValueError):
    pass


class EvenCharacteristic(ShtukaError, ValueError):
    pass


class ReducibleModulus(ShtukaError, ValueError):
    pass


class SpecMismatch(ShtukaError, ValueError):
    pass


class DivisionByZero(ShtukaError, ZeroDivisionError):
    pass


class VarMismatch(ShtukaError, ValueError):
    pass


class NonUnit(ShtukaError, ArithmeticError):
    pass


class NonUnitLeadingCoefficient(NonUnit):
    pass


class ZeroInput(ShtukaError, ArithmeticError):
    pass


class PrecisionExhausted(ShtukaError, ArithmeticError):
    """Raised when a result cannot be certified within the available precision."""


class ResidueNotSolvable(ShtukaError, ArithmeticError):
    """The residue equations have no solution in the requested extension.

    ``minimal_ext`` holds the smallest extension degree that does work, or
    ``None`` when the search bound was reached without success.
    """

    def __init__(self, message, minimal_ext=None):
        super().__init__(message)
        self.minimal_ext = minimal_ext


class NotPPower(ShtukaError, ValueError):
    pass


class BaseMismatch(ShtukaError, ValueError):
    pass


class ReduciblePlace(ShtukaError, ValueError):
    pass


class CharacteristicMismatch(ShtukaError, ValueError):
    pass


class SizeLimit(ShtukaError, RuntimeError):
    pass
