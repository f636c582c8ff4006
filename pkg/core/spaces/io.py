"""JSON Lines codec for SeqVector: one {"m", "re", "im"} object per line."""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Dict, Iterable, Union

from pydantic import BaseModel, ValidationError, model_validator

from core.errors import InvalidSequenceData
from core.spaces.types import SeqVector


class SeqEntry(BaseModel):
    m: int
    re: float
    im: float = 0.0

    @model_validator(mode="after")
    def reject_zero(self) -> "SeqEntry":
        if self.re == 0 and self.im == 0:
            raise ValueError(f"entry at m={self.m} is zero; zero entries are not stored")
        return self


def parse_jsonl_lines(lines: Iterable[str]) -> SeqVector:
    values: Dict[int, complex] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            entry = SeqEntry.model_validate_json(line)
        except ValidationError as exc:
            raise InvalidSequenceData(f"line {lineno}: {exc.errors()[0]['msg']}") from exc
        if entry.m in values:
            raise InvalidSequenceData(f"line {lineno}: duplicate index {entry.m}")
        values[entry.m] = complex(entry.re, entry.im)
    return SeqVector.from_mapping(values)


def read_jsonl(source: Union[str, Path, IO[str]]) -> SeqVector:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as f:
            return parse_jsonl_lines(f)
    return parse_jsonl_lines(source)


def to_jsonl(p: SeqVector) -> str:
    return "".join(
        json.dumps({"m": m, "re": v.real, "im": v.imag}) + "\n" for m, v in p.entries
    )


def write_jsonl(p: SeqVector, target: Union[str, Path, IO[str]]) -> None:
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as f:
            f.write(to_jsonl(p))
    else:
        target.write(to_jsonl(p))
