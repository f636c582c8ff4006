"""JSON codec for FiniteSectionOperator.

    {"window": [lo, hi], "src": {...}, "tgt": {...}, "entries": [[re, im], ...]}

``entries`` is row-major over the window; src/tgt carry k, s, domain and
the full weight description (table weights include their values).
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from core.errors import InvalidSequenceData
from core.operators.types import FiniteSectionOperator
from core.spaces.types import SpaceParams
from core.weights.types import IndexDomain, WeightFamily, WeightKind


class WeightSpec(BaseModel):
    kind: WeightKind
    param: float = 1.0
    lower_bound: Optional[float] = None
    values: Optional[Dict[int, float]] = None

    def build(self, domain: IndexDomain) -> WeightFamily:
        if self.kind is WeightKind.CONSTANT:
            return WeightFamily.constant(self.param, domain)
        if self.kind is WeightKind.POLYNOMIAL:
            return WeightFamily.polynomial(self.param, domain)
        if self.kind is WeightKind.GIBBS:
            return WeightFamily.gibbs(self.param).on(domain)
        if self.lower_bound is None or self.values is None:
            raise InvalidSequenceData("table weight needs lower_bound and values")
        return WeightFamily.from_table(self.values, self.lower_bound, domain)

    @classmethod
    def of(cls, w: WeightFamily) -> "WeightSpec":
        if w.kind is WeightKind.TABLE:
            return cls(kind=w.kind, lower_bound=w.lower_bound, values=dict(w.table))
        return cls(kind=w.kind, param=w.param)


class SpaceSpec(BaseModel):
    k: float
    s: float
    domain: IndexDomain = IndexDomain.FULL_LINE
    w: WeightSpec

    def build(self) -> SpaceParams:
        return SpaceParams.create(self.k, self.s, self.w.build(self.domain), self.domain)

    @classmethod
    def of(cls, sp: SpaceParams) -> "SpaceSpec":
        return cls(k=sp.k, s=sp.s, domain=sp.domain, w=WeightSpec.of(sp.w))


class OperatorFile(BaseModel):
    window: Tuple[int, int]
    src: SpaceSpec
    tgt: SpaceSpec
    entries: List[Tuple[float, float]]


def operator_to_dict(A: FiniteSectionOperator) -> Dict[str, Any]:
    flat = A.entries.reshape(-1)
    return {
        "window": list(A.window),
        "src": SpaceSpec.of(A.src).model_dump(mode="json"),
        "tgt": SpaceSpec.of(A.tgt).model_dump(mode="json"),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def operator_to_json(A: FiniteSectionOperator, indent: Optional[int] = None) -> str:
    return json.dumps(operator_to_dict(A), indent=indent)


def operator_from_json(data: Union[str, bytes, Dict[str, Any]]) -> FiniteSectionOperator:
    try:
        if isinstance(data, dict):
            parsed = OperatorFile.model_validate(data)
        else:
            parsed = OperatorFile.model_validate_json(data)
    except ValidationError as exc:
        raise InvalidSequenceData(f"invalid operator document: {exc.errors()[0]['msg']}") from exc
    lo, hi = parsed.window
    size = hi - lo + 1
    if size < 1 or len(parsed.entries) != size * size:
        raise InvalidSequenceData(f"window {parsed.window} needs {max(size, 0) ** 2} entries, got {len(parsed.entries)}")
    matrix = np.array([complex(re, im) for re, im in parsed.entries], dtype=np.complex128).reshape(size, size)
    return FiniteSectionOperator(
        window=(lo, hi),
        entries=matrix,
        src=parsed.src.build(),
        tgt=parsed.tgt.build(),
    )
