"""Exception hierarchy shared by every pencilkit module.

Each error carries the name of the module that raised it so the CLI can print
a one-line diagnostic of the form ``<module>.<ErrorName>: message``.
"""

from __future__ import annotations


class PencilkitError(Exception):
    """Base class for all errors raised by pencilkit."""

    module = "pencilkit"

    def diagnostic(self) -> str:
        return f"{self.module}.{type(self).__name__}: {self}"


# exact_arith


class ArithmeticFieldError(PencilkitError):
    module = "exact_arith"


class DivisionByZero(ArithmeticFieldError, ZeroDivisionError):
    pass


class FieldMismatch(ArithmeticFieldError, ValueError):
    pass


class UnsupportedPrime(ArithmeticFieldError, ValueError):
    pass


class NotPrime(ArithmeticFieldError, ValueError):
    pass


# polynomials


class PolynomialError(PencilkitError):
    module = "polynomials"


class PolynomialSyntaxError(PolynomialError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CoefficientNotInField(PolynomialError, ValueError):
    pass


class DegreeTooSmall(PolynomialError, ValueError):
    pass


class ZeroPolynomial(PolynomialError, ValueError):
    pass


class CharacteristicTooSmall(PolynomialError, ValueError):
    pass


class NotDivisible(PolynomialError, ArithmeticError):
    pass


class NotHomogeneous(PolynomialError, ValueError):
    pass


# ruppert


class RuppertError(PencilkitError):
    module = "ruppert"


class NuTooSmall(RuppertError, ValueError):
    pass


class DegreeLeakage(RuppertError, AssertionError):
    """An image left the codomain the theory guarantees; an internal bug."""


class InconsistentDegrees(RuppertError, ValueError):
    pass


class FactorsNotCoprime(RuppertError, ValueError):
    pass


# newton


class NewtonError(PencilkitError):
    module = "newton"


class EnvelopeAssertionFailed(NewtonError, AssertionError):
    pass


class EdgeNotGood(NewtonError, ValueError):
    pass


class PolygonMismatch(NewtonError, ValueError):
    pass


class WitnessContainmentFailed(NewtonError, AssertionError):
    pass


# spectrum


class SpectrumError(PencilkitError):
    module = "spectrum"


class CompositeOrNonReduced(SpectrumError, ValueError):
    pass


class InsufficientSamplePoints(SpectrumError, ValueError):
    pass


class KeyEquationMismatch(SpectrumError, AssertionError):
    pass


class DegreeDropPersistent(SpectrumError, RuntimeError):
    module = "bertini"
