from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np

from core.errors import IndexOutsideDomain, InvalidSequenceData
from core.spaces.types import SpaceParams
from core.weights.types import IndexDomain, WeightFamily

EntryFn = Callable[[int, int], complex]


def unweighted_space(s: float, domain: IndexDomain = IndexDomain.FULL_LINE) -> SpaceParams:
    """Plain l^s on ``domain`` (k = 0, w = 1)."""
    return SpaceParams.create(0.0, s, WeightFamily.constant(1.0, domain))


def is_unweighted(sp: SpaceParams) -> bool:
    return sp.k == 0 and sp.w == WeightFamily.constant(1.0, sp.domain)


@dataclass(frozen=True, eq=False)
class FiniteSectionOperator:
    """Truncation of a bounded operator to rows and columns lo..hi.

    ``entries[i, j]`` is the coefficient T[m, n] with m = lo + i, n = lo + j.
    """

    window: Tuple[int, int]
    entries: np.ndarray
    src: SpaceParams
    tgt: SpaceParams

    def __post_init__(self) -> None:
        lo, hi = self.window
        if hi < lo:
            raise InvalidSequenceData(f"empty operator window {self.window}")
        for sp in (self.src, self.tgt):
            if not (sp.domain.contains(lo) and sp.domain.contains(hi)):
                raise IndexOutsideDomain(f"window {self.window} leaves the {sp.domain.value} line")
        matrix = np.asarray(self.entries, dtype=np.complex128)
        size = hi - lo + 1
        if matrix.shape != (size, size):
            raise InvalidSequenceData(f"entries have shape {matrix.shape}, window {self.window} needs {(size, size)}")
        if not np.all(np.isfinite(matrix)):
            raise InvalidSequenceData("operator entries must be finite")
        matrix.setflags(write=False)
        object.__setattr__(self, "entries", matrix)

    @classmethod
    def from_entry_fn(
        cls,
        entry_fn: EntryFn,
        window: Tuple[int, int],
        src: SpaceParams,
        tgt: SpaceParams,
    ) -> "FiniteSectionOperator":
        idx = range(window[0], window[1] + 1)
        matrix = np.array([[entry_fn(m, n) for n in idx] for m in idx], dtype=np.complex128)
        return cls(window=window, entries=matrix, src=src, tgt=tgt)

    @classmethod
    def diagonal(
        cls,
        values: Iterable[complex],
        window: Tuple[int, int],
        src: SpaceParams,
        tgt: SpaceParams,
    ) -> "FiniteSectionOperator":
        return cls(window=window, entries=np.diag(np.asarray(list(values), dtype=np.complex128)), src=src, tgt=tgt)

    @classmethod
    def zeros(cls, window: Tuple[int, int], src: SpaceParams, tgt: SpaceParams) -> "FiniteSectionOperator":
        size = window[1] - window[0] + 1
        return cls(window=window, entries=np.zeros((size, size), dtype=np.complex128), src=src, tgt=tgt)

    @property
    def size(self) -> int:
        return self.window[1] - self.window[0] + 1

    def indices(self) -> np.ndarray:
        return np.arange(self.window[0], self.window[1] + 1, dtype=np.int64)

    def entry(self, m: int, n: int) -> complex:
        lo, hi = self.window
        if not (lo <= m <= hi and lo <= n <= hi):
            return 0j
        return complex(self.entries[m - lo, n - lo])

    def is_diagonal(self) -> bool:
        return bool(np.count_nonzero(self.entries - np.diag(np.diag(self.entries))) == 0)

    def with_spaces(self, entries: np.ndarray, src: SpaceParams, tgt: SpaceParams) -> "FiniteSectionOperator":
        return FiniteSectionOperator(window=self.window, entries=entries, src=src, tgt=tgt)


class EnvelopeKind(str, Enum):
    POWER = "power"
    EXPONENTIAL = "exponential"
    TABLE = "table"


@dataclass(frozen=True)
class DecayEnvelope:
    """Declared majorant bound(m) of the row s'-norms of a conjugated operator.

    PowerDecay: (1+|m|)^(-gamma). ExponentialDecay: exp(-rho |m|).
    Table: explicit values, zero for every index not listed.
    """

    kind: EnvelopeKind
    param: float = 1.0
    table: Tuple[Tuple[int, float], ...] = ()
    _lookup: Dict[int, float] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind is not EnvelopeKind.TABLE and not (self.param > 0 and math.isfinite(self.param)):
            raise ValueError(f"{self.kind.value} envelope needs a positive finite rate, got {self.param}")
        for m, value in self.table:
            if not (value >= 0 and math.isfinite(value)):
                raise InvalidSequenceData(f"envelope value at m={m} must be nonnegative, got {value}")
        self._lookup.update(dict(self.table))

    @classmethod
    def power(cls, gamma: float) -> "DecayEnvelope":
        return cls(kind=EnvelopeKind.POWER, param=float(gamma))

    @classmethod
    def exponential(cls, rho: float) -> "DecayEnvelope":
        return cls(kind=EnvelopeKind.EXPONENTIAL, param=float(rho))

    @classmethod
    def from_table(cls, values: Mapping[int, float]) -> "DecayEnvelope":
        return cls(kind=EnvelopeKind.TABLE, table=tuple(sorted((int(m), float(v)) for m, v in values.items())))

    @classmethod
    def zero(cls) -> "DecayEnvelope":
        return cls.from_table({})

    def bound(self, m: int) -> float:
        if self.kind is EnvelopeKind.POWER:
            return math.exp(-self.param * math.log1p(abs(m)))
        if self.kind is EnvelopeKind.EXPONENTIAL:
            return math.exp(-self.param * abs(m))
        return self._lookup.get(int(m), 0.0)

    def describe(self) -> Dict[str, Any]:
        if self.kind is EnvelopeKind.TABLE:
            return {"kind": self.kind.value, "size": len(self.table)}
        return {"kind": self.kind.value, "param": self.param}


@dataclass(frozen=True)
class WitnessResult:
    """Finite-rank approximation certificate for an envelope-dominated operator."""

    n_eps: int
    certified_error: float
    epsilon: float
    trace: Tuple[Tuple[int, float], ...]
    check_window: Tuple[int, int]
    max_row_ratio: float
    envelope: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_eps": self.n_eps,
            "certified_error": self.certified_error,
            "epsilon": self.epsilon,
            "trace": [[n, bound] for n, bound in self.trace],
            "check_window": list(self.check_window),
            "max_row_ratio": self.max_row_ratio,
            "envelope": self.envelope,
        }
