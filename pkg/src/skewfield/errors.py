"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations

from typing import Any


class SkewFieldError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeCharacteristic(SkewFieldError, ValueError):
    pass


class ReducibleModulus(SkewFieldError, ValueError):
    pass


class ShapeMismatch(SkewFieldError, ValueError):
    pass


class AmbientMismatch(SkewFieldError, ValueError):
    pass


class ValidationError(SkewFieldError, ValueError):
    pass


class ParseError(SkewFieldError, ValueError):
    """Malformed document; ``location`` points at the offending field or line."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class Inconclusive(SkewFieldError):
    """A randomized search ran out of budget without a decisive answer."""


class BudgetExhausted(Inconclusive):
    pass


class HypothesisViolation(SkewFieldError):
    """The input is not an instance of the theorem being applied.

    ``claim`` names the step that failed: a roman numeral in parentheses such
    as ``"(i)"`` for the numbered claims of the linearisation proof, or a
    named hypothesis such as ``"irreducibility"``.
    """

    def __init__(self, claim: str, message: str, witness: Any = None, report: Any = None):
        self.claim = claim
        self.message = message
        self.witness = witness
        self.report = report
        super().__init__(f"[{claim}] {message}")
