"""Exception hierarchy shared by every module of the package."""


class FlexencError(Exception):
    """Base class for all errors raised by flexenc."""


class SpecError(FlexencError, ValueError):
    """Malformed user input: curve specs, family specs, numbers."""


# -- field ------------------------------------------------------------------

class NotPrime(SpecError):
    pass


class BadCharacteristic(SpecError):
    pass


class ModulusMismatch(FlexencError, TypeError):
    pass


class DivisionByZero(FlexencError, ZeroDivisionError):
    pass


class CapabilityError(FlexencError):
    """Operation needs p = 2 mod 3 (cube roots) or p = 1 mod 3 (zeta3)."""


# -- polynomials --------------------------------------------------------------

class BothZero(FlexencError, ValueError):
    pass


class NotASquare(FlexencError, ValueError):
    """Raised by the exact square roots.

    ``witness`` is the monic product of the odd-multiplicity factors.  It is
    the constant 1 when the only obstruction is a non-square leading
    coefficient.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# -- cubic solver -------------------------------------------------------------

class BadWitness(FlexencError, ValueError):
    """The supplied delta does not square to the twisted discriminant."""


# -- curves -------------------------------------------------------------------

class SingularCurve(SpecError):
    pass


class NotOnCurve(FlexencError, ValueError):
    pass


class DegenerateDirection(FlexencError, ValueError):
    """The direction point of a back-map lies on the curve."""


class NoValidSpan(FlexencError, ValueError):
    pass


# -- families -----------------------------------------------------------------

class UnknownFamily(SpecError):
    pass


class ModelMismatch(SpecError):
    pass


class IcartRequiresNonzeroA(SpecError):
    pass


class DegenerateFamily(SpecError):
    pass


class NotEven(FlexencError):
    """The line family's discriminant is not a square in k(t)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalBadWitness(FlexencError, RuntimeError):
    """A compiled plan produced a delta that fails the solver post-check."""


class SingularParameterSet(SpecError):
    pass
