from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple

from core.errors import HypothesisFailure, InvalidSequenceData


class IndexDomain(str, Enum):
    """Index set of a sequence space."""

    FULL_LINE = "full"
    HALF_LINE = "half"

    def contains(self, m: int) -> bool:
        return self is IndexDomain.FULL_LINE or m >= 0


class WeightKind(str, Enum):
    """Supported weight families."""

    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"
    GIBBS = "gibbs"
    TABLE = "table"


@dataclass(frozen=True)
class WeightFamily:
    """Positive weight sequence w = (w_m), evaluated in log domain.

    Use the classmethod constructors rather than the raw initializer.
    ``param`` holds c (constant), alpha (polynomial) or beta (gibbs).
    Table families keep their values as a sorted tuple of (index, value)
    pairs so instances stay hashable.
    """

    kind: WeightKind
    domain: IndexDomain = IndexDomain.FULL_LINE
    param: float = 1.0
    table: Tuple[Tuple[int, float], ...] = ()
    lower_bound: Optional[float] = None
    _lookup: Dict[int, float] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.param):
            raise ValueError(f"weight parameter must be finite, got {self.param}")
        if self.kind is WeightKind.CONSTANT and self.param <= 0:
            raise ValueError(f"constant weight must be positive, got {self.param}")
        if self.kind is WeightKind.GIBBS:
            if self.param <= 0:
                raise ValueError(f"Gibbs beta must be positive, got {self.param}")
            if self.domain is not IndexDomain.HALF_LINE:
                raise HypothesisFailure("Gibbs weights are only defined on the half line (m >= 0)")
        if self.kind is WeightKind.TABLE:
            self._validate_table()
            self._lookup.update(dict(self.table))

    def _validate_table(self) -> None:
        if self.lower_bound is None or not self.lower_bound > 0:
            raise InvalidSequenceData(f"table weights need a positive lower_bound, got {self.lower_bound}")
        for m, value in self.table:
            if not (value > 0 and math.isfinite(value)):
                raise InvalidSequenceData(f"table weight at m={m} must be positive, got {value}")
            if value < self.lower_bound:
                raise InvalidSequenceData(
                    f"declared lower_bound {self.lower_bound} exceeds stored weight {value} at m={m}"
                )
            if not self.domain.contains(m):
                raise InvalidSequenceData(f"table index {m} lies outside the {self.domain.value} line")

    @classmethod
    def constant(cls, c: float = 1.0, domain: IndexDomain = IndexDomain.FULL_LINE) -> "WeightFamily":
        return cls(kind=WeightKind.CONSTANT, domain=domain, param=float(c))

    @classmethod
    def polynomial(cls, alpha: float, domain: IndexDomain = IndexDomain.FULL_LINE) -> "WeightFamily":
        """Weight (1+|m|)^alpha."""
        return cls(kind=WeightKind.POLYNOMIAL, domain=domain, param=float(alpha))

    @classmethod
    def gibbs(cls, beta: float) -> "WeightFamily":
        """Gibbs weight exp(beta*m) on m >= 0."""
        return cls(kind=WeightKind.GIBBS, domain=IndexDomain.HALF_LINE, param=float(beta))

    @classmethod
    def from_table(
        cls,
        values: Mapping[int, float],
        lower_bound: float,
        domain: IndexDomain = IndexDomain.FULL_LINE,
    ) -> "WeightFamily":
        pairs = tuple(sorted((int(m), float(v)) for m, v in values.items()))
        return cls(kind=WeightKind.TABLE, domain=domain, table=pairs, lower_bound=float(lower_bound))

    def on(self, domain: IndexDomain) -> "WeightFamily":
        """Same family restricted to (or extended to) ``domain``."""
        if domain is self.domain:
            return self
        if self.kind is WeightKind.TABLE:
            kept = {m: v for m, v in self.table if domain.contains(m)}
            return WeightFamily.from_table(kept, lower_bound=self.lower_bound or 0.0, domain=domain)
        return replace(self, domain=domain)

    def tabulated(self, m: int) -> Optional[float]:
        return self._lookup.get(m)

    def describe(self) -> Dict[str, object]:
        data: Dict[str, object] = {"kind": self.kind.value, "domain": self.domain.value}
        if self.kind is WeightKind.TABLE:
            data["lower_bound"] = self.lower_bound
            data["size"] = len(self.table)
        else:
            data["param"] = self.param
        return data
