from __future__ import annotations


class WahlRankError(ValueError):
    """Base class for every input or consistency error raised by wahlrank."""


class ParseError(WahlRankError):
    """Polynomial text does not match the grammar.

    Attributes:
        position: zero-based character offset where parsing stopped
        expected: description of the token that was expected there
    """

    def __init__(self, text: str, position: int, expected: str):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at offset {position}: expected {expected}")


class NotYMonic(WahlRankError):
    """Leading coefficient in y is not a nonzero constant."""


class SingularAtInfinity(WahlRankError):
    """Top-degree form has a repeated linear factor."""


class ProbablySingular(WahlRankError):
    """A resultant used as a necessary smoothness condition vanished."""


class DegreeTooLow(WahlRankError):
    """Plane curve degree below 4."""


class BadPrime(WahlRankError):
    """Prime divides a denominator, or is not a usable prime."""


class DimensionMismatch(WahlRankError):
    """Matrix shapes are incompatible."""


class InternalInconsistency(WahlRankError):
    """Two independent computations of the same quantity disagree."""


class NotInDomain(WahlRankError):
    """Tensor does not vanish to the required order on the diagonal."""


class KBelowTwo(WahlRankError):
    """Product-surface criterion requires k >= 2."""


class NegativeGenus(WahlRankError):
    """Genus formula evaluated to a negative number."""


class ModularDisagreement(WahlRankError):
    """Every screening prime disagreed with the exact rank."""
