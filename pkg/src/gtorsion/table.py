"""Loading witness tables: JSON arrays of ``{p, q, n, x, y}`` or ``{p, q, status: "unknown"}``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


class TableRowError(ValueError):
    pass


@dataclass(frozen=True)
class TableRow:
    p: int
    q: int
    n: int | None = None
    x: tuple[int, ...] | None = None
    y: tuple[int, ...] | None = None

    @property
    def filled(self) -> bool:
        return self.n is not None

    def to_dict(self) -> dict:
        if not self.filled:
            return {"p": self.p, "q": self.q, "status": "unknown"}
        return {"p": self.p, "q": self.q, "n": self.n, "x": list(self.x), "y": list(self.y)}


def _int(doc: dict, key: str) -> int:
    val = doc.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise TableRowError(f"field {key!r} must be an integer, got {val!r}")
    return val


def _perm(doc: dict, key: str, size: int) -> tuple[int, ...]:
    val = doc.get(key)
    if not isinstance(val, list) or not all(isinstance(i, int) for i in val):
        raise TableRowError(f"field {key!r} must be a list of integers")
    if len(val) != size:
        raise TableRowError(f"field {key!r} has {len(val)} entries, expected {size}")
    return tuple(val)


def parse_row(doc) -> TableRow:
    if not isinstance(doc, dict):
        raise TableRowError(f"row must be an object, got {type(doc).__name__}")
    p, q = _int(doc, "p"), _int(doc, "q")
    if doc.get("status") == "unknown":
        return TableRow(p, q)
    n = _int(doc, "n")
    if n < 1:
        raise TableRowError(f"degree must be positive, got {n}")
    return TableRow(p, q, n, _perm(doc, "x", n + 1), _perm(doc, "y", n + 1))


def read_table_json(path: str | Path | None = None) -> list:
    """Raw row documents; the bundled table when ``path`` is ``None``."""
    if path is None:
        text = resources.files("gtorsion.data").joinpath("witness_table.json").read_text()
    else:
        text = Path(path).read_text()
    doc = json.loads(text)
    if not isinstance(doc, list):
        raise ValueError("a table file must hold a JSON array")
    return doc


def load_table(path: str | Path | None = None) -> list[TableRow]:
    return [parse_row(d) for d in read_table_json(path)]
