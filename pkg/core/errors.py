"""Error taxonomy shared by the library and the CLI exit-code contract."""

from __future__ import annotations


class SobolevError(ValueError):
    """Root of every error raised by the sequence-space library."""

    exit_code: int = 1


class HypothesisError(SobolevError):
    """A precondition or theorem hypothesis does not hold (exit 1)."""

    exit_code = 1


class DivergenceError(SobolevError):
    """A series the computation depends on diverges or cannot be certified (exit 2)."""

    exit_code = 2


class IndexOutsideDomain(HypothesisError):
    pass


class InfimumNotPositive(HypothesisError):
    pass


class DomainMismatch(HypothesisError):
    pass


class InvalidExponents(HypothesisError):
    pass


class NotAHilbertSpace(HypothesisError):
    pass


class NotStrictlySmoother(HypothesisError):
    pass


class HypothesisFailure(HypothesisError):
    pass


class ParameterMismatch(HypothesisError):
    pass


class NotContinuous(HypothesisError):
    pass


class EnvelopeViolated(HypothesisError):
    pass


class InvalidSequenceData(HypothesisError):
    """Malformed sequence, weight-table or operator input."""


class NormOverflow(HypothesisError):
    """A norm or scaled entry is too large to represent as a float."""


class SeriesDiverges(DivergenceError):
    pass


class EnvelopeNotSummable(DivergenceError):
    pass


class SeriesBudgetExceeded(DivergenceError):
    """Certified summation would need more terms than the configured budget."""


__all__ = [
    "SobolevError",
    "HypothesisError",
    "DivergenceError",
    "IndexOutsideDomain",
    "InfimumNotPositive",
    "DomainMismatch",
    "InvalidExponents",
    "NotAHilbertSpace",
    "NotStrictlySmoother",
    "HypothesisFailure",
    "ParameterMismatch",
    "NotContinuous",
    "EnvelopeViolated",
    "InvalidSequenceData",
    "NormOverflow",
    "SeriesDiverges",
    "EnvelopeNotSummable",
    "SeriesBudgetExceeded",
]
