"""Exception hierarchy shared by all jacwalk modules."""


class JacwalkError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatchError(JacwalkError, ValueError):
    """Operands live in different fields (different modulus or non-residue)."""


class CharacteristicError(JacwalkError, ValueError):
    """The modulus is not an odd prime inside the supported range."""


class SingularCurveError(JacwalkError, ValueError):
    """f(X) has a repeated root, so Y^2 = f(X) is singular."""


class CurveMismatchError(JacwalkError, ValueError):
    """Divisors or points attached to different curves were combined."""


class InvalidDivisorError(JacwalkError, ValueError):
    """A pair [u, v] violates one of the Mumford conditions."""


class NotReducedError(InvalidDivisorError):
    """A point multiset contains P and -P (P != -P), or a doubled 2-torsion point."""


class ResourceLimitError(JacwalkError):
    """A size guard for exhaustive enumeration was exceeded."""


class ChartError(JacwalkError, ValueError):
    """A Grant point was given in the wrong chart for the requested operation."""


class FormulaDomainError(JacwalkError, ArithmeticError):
    """Inputs fall outside the domain of the explicit Grant addition law."""


class SearchExhaustedError(JacwalkError):
    """Curve search ran out of attempts."""


class InvariantViolation(JacwalkError):
    """An empirical check of a proven bound failed; carries the counterexample."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
