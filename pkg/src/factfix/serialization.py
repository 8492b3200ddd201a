"""Line-delimited JSON serialization for all domain types.

One record per line, snake_case field names straight from the pydantic
models. Round-trip stable: ``loads(cls, dumps(x)) == x``.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Iterable, Iterator, Type, TypeVar

from pydantic import BaseModel

M = TypeVar("M", bound=BaseModel)


def dumps(value: BaseModel) -> str:
    """Serialize a model to a single JSON line (no trailing newline)."""
    return value.model_dump_json()


def loads(cls: Type[M], line: str) -> M:
    return cls.model_validate_json(line)


def write_jsonl(path: str | Path, values: Iterable[BaseModel]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    n = 0
    with path.open("w", encoding="utf-8") as fp:
        for value in values:
            fp.write(dumps(value) + "\n")
            n += 1
    return n


def read_jsonl(cls: Type[M], path: str | Path) -> Iterator[M]:
    with Path(path).open("r", encoding="utf-8") as fp:
        for line in fp:
            line = line.strip()
            if line:
                yield loads(cls, line)


def file_digest(path: str | Path) -> str:
    """Hex sha256 of a file's bytes, used to fingerprint datasets."""
    h = hashlib.sha256()
    with Path(path).open("rb") as fp:
        for block in iter(lambda: fp.read(65536), b""):
            h.update(block)
    return h.hexdigest()
