"""Exceptions raised by the superelliptic library.

Everything derives from :class:`SuperellipticError` so the CLI can catch the
library's failures in one place and report them by class name.
"""


class SuperellipticError(ValueError):
    pass


class FieldError(SuperellipticError):
    """Bad prime, extension degree out of range, or elements of different fields mixed."""


class WildCover(SuperellipticError):
    """The exponent m is divisible by the characteristic."""


class InseparableModel(SuperellipticError):
    """gcd(f, f') is not 1."""


class InvalidModel(SuperellipticError):
    """The model data itself is out of range: m < 2, or a cubic that is not a cubic mod p."""


class UnsupportedInfinity(SuperellipticError):
    """gcd(m, deg f) is neither 1 nor m."""


class ZeroConstantTerm(SuperellipticError):
    pass


class BudgetExceeded(SuperellipticError):
    def __init__(self, q, budget):
        super().__init__(f"q = {q} exceeds the enumeration budget {budget}")
        self.q = q
        self.budget = budget


class NonIntegralCoefficient(SuperellipticError):
    """Newton recurrence did not divide exactly; the point counts are inconsistent."""


class WeilViolation(SuperellipticError):
    pass


class RamifiedPrime(SuperellipticError):
    pass
