from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

import numpy as np

from core.errors import DomainMismatch, InvalidExponents, InvalidSequenceData
from core.weights.types import IndexDomain, WeightFamily


def summation_key(m: int) -> Tuple[int, int]:
    """Increasing |m|, negative index first on ties."""
    return abs(m), m


@dataclass(frozen=True)
class SpaceParams:
    """The triple (k, s, w) identifying h^{k,s}_w, plus its index domain."""

    k: float
    s: float
    w: WeightFamily
    domain: IndexDomain = IndexDomain.FULL_LINE

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and math.isfinite(self.s)):
            raise InvalidExponents(f"k and s must be finite, got k={self.k}, s={self.s}")
        if self.s < 1:
            raise InvalidExponents(f"degree of summability must satisfy s >= 1, got {self.s}")
        if self.domain is not self.w.domain:
            raise DomainMismatch(
                f"space domain {self.domain.value} does not match weight domain {self.w.domain.value}"
            )

    @classmethod
    def create(
        cls,
        k: float,
        s: float,
        w: WeightFamily,
        domain: Optional[IndexDomain] = None,
    ) -> "SpaceParams":
        """Build params, moving the weight onto ``domain`` when one is given."""
        domain = domain or w.domain
        return cls(k=float(k), s=float(s), w=w.on(domain), domain=domain)

    def with_order(self, k: float) -> "SpaceParams":
        return SpaceParams(k=float(k), s=self.s, w=self.w, domain=self.domain)

    def with_summability(self, s: float) -> "SpaceParams":
        return SpaceParams(k=self.k, s=float(s), w=self.w, domain=self.domain)

    def to_dict(self) -> Dict[str, object]:
        return {"k": self.k, "s": self.s, "w": self.w.describe(), "domain": self.domain.value}


@dataclass(frozen=True)
class SeqVector:
    """Finite-support complex sequence p = (p_m) in canonical sparse form.

    Entries are stored sorted in summation order and never hold an exact
    zero. Build instances with :meth:`from_mapping` or :meth:`zero`.
    """

    entries: Tuple[Tuple[int, complex], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for m, value in self.entries:
            if m in seen:
                raise InvalidSequenceData(f"duplicate index {m}")
            if value == 0:
                raise InvalidSequenceData(f"entry at index {m} is exactly zero")
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise InvalidSequenceData(f"entry at index {m} is not finite")
            seen.add(m)

    @classmethod
    def zero(cls) -> "SeqVector":
        return cls(())

    @classmethod
    def from_mapping(cls, values: Mapping[int, complex]) -> "SeqVector":
        kept = ((int(m), complex(v)) for m, v in values.items() if v != 0)
        return cls(tuple(sorted(kept, key=lambda item: summation_key(item[0]))))

    @classmethod
    def from_arrays(cls, indices: Iterable[int], values: Iterable[complex]) -> "SeqVector":
        return cls.from_mapping(dict(zip((int(m) for m in indices), values)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Tuple[int, complex]]:
        return iter(self.entries)

    def __getitem__(self, m: int) -> complex:
        return self.as_dict().get(m, 0j)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(m for m, _ in self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def as_dict(self) -> Dict[int, complex]:
        return dict(self.entries)

    def indices(self) -> np.ndarray:
        return np.array(self.support, dtype=np.int64)

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.entries], dtype=np.complex128)

    def max_abs_index(self) -> int:
        return max((abs(m) for m in self.support), default=0)

    def scale(self, alpha: complex) -> "SeqVector":
        return SeqVector.from_mapping({m: alpha * v for m, v in self.entries})

    def add(self, other: "SeqVector") -> "SeqVector":
        merged = self.as_dict()
        for m, v in other.entries:
            merged[m] = merged.get(m, 0j) + v
        return SeqVector.from_mapping(merged)

    def subtract(self, other: "SeqVector") -> "SeqVector":
        return self.add(other.scale(-1))

    def restrict(self, keep) -> "SeqVector":
        """Keep only the entries whose index satisfies ``keep(m)``."""
        return SeqVector(tuple((m, v) for m, v in self.entries if keep(m)))

    def __add__(self, other: "SeqVector") -> "SeqVector":
        return self.add(other)

    def __sub__(self, other: "SeqVector") -> "SeqVector":
        return self.subtract(other)

    def __mul__(self, alpha: complex) -> "SeqVector":
        return self.scale(alpha)

    __rmul__ = __mul__
