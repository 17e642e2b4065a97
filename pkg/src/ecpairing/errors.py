"""Exception hierarchy for the pairing library."""


class PairingError(Exception):
    """Base class for every error raised by this package."""


# -- fields -----------------------------------------------------------------

class CompositeModulus(PairingError, ValueError):
    pass


class IrreducibleSearchExhausted(PairingError, RuntimeError):
    pass


class DivisionByZero(PairingError, ZeroDivisionError):
    pass


class FieldMismatch(PairingError, TypeError):
    pass


class NoRoot(PairingError, ValueError):
    pass


class ZeroInput(PairingError, ValueError):
    pass


class NotARoot(PairingError, ValueError):
    pass


# -- curves -----------------------------------------------------------------

class SingularCurve(PairingError, ValueError):
    pass


class NotOnCurve(PairingError, ValueError):
    pass


class CurveMismatch(PairingError, ValueError):
    pass


class FieldTooLarge(PairingError, ValueError):
    pass


class UnsupportedShape(PairingError, ValueError):
    pass


class BadResidueStructure(PairingError, ValueError):
    pass


class UnsupportedCurve(PairingError, ValueError):
    pass


class HashFailure(PairingError, RuntimeError):
    pass


# -- functions and divisors -------------------------------------------------

class ZeroFunction(PairingError, ValueError):
    pass


class SupportCollision(PairingError, ArithmeticError):
    """A line (or the function itself) vanishes or has a pole at an evaluation point."""

    def __init__(self, message, point=None, multiple=None):
        super().__init__(message)
        self.point = point
        self.multiple = multiple


class NotPrincipal(PairingError, ValueError):
    pass


# -- Miller -----------------------------------------------------------------

class UnreachableTarget(PairingError, ValueError):
    pass


class RandomizationExhausted(PairingError, RuntimeError):
    pass


# -- pairings ---------------------------------------------------------------

class InvalidParameters(PairingError, ValueError):
    pass


class NotTorsion(PairingError, ValueError):
    pass


class Def1Infeasible(PairingError, ValueError):
    pass


class NotInjective(PairingError, ValueError):
    pass


class MissingTwist(PairingError, ValueError):
    pass


class BadDecomposition(PairingError, ValueError):
    pass


class NotRootOfUnity(PairingError, ValueError):
    pass


class NotInLatticeKernel(PairingError, ValueError):
    pass


class DivisibilityViolation(PairingError, ValueError):
    pass


# -- lattices and families --------------------------------------------------

class RankDeficient(PairingError, ValueError):
    pass


class NoInstanceInRange(PairingError, ValueError):
    pass


class CurveSearchFailed(PairingError, RuntimeError):
    pass
