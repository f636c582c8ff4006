"""Numerical tolerance tables."""

from core.numerics.tolerances import DEFAULT_TOLERANCES, NumericTolerances

__all__ = ["DEFAULT_TOLERANCES", "NumericTolerances"]
