"""Invariants and homeomorphism decisions read off from the twist parameters ``(p, q)``."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union


def _require_nonzero(*values: int) -> None:
    if any(v == 0 for v in values):
        raise ValueError(f"parameters must be non-zero, got {values}")


@dataclass(frozen=True)
class AlexanderPoly:
    """Coefficients of ``c0 + c1 t + c2 t^2``."""

    c0: int
    c1: int
    c2: int

    def __post_init__(self) -> None:
        if self.c0 != self.c2 or self.c0 + self.c1 + self.c2 != 1:
            raise ValueError("not a symmetric polynomial with value 1 at t = 1")

    def coefficients(self) -> list[int]:
        return [self.c0, self.c1, self.c2]

    def at(self, t: int) -> int:
        return self.c0 + self.c1 * t + self.c2 * t * t


def alexander(p: int, q: int) -> AlexanderPoly:
    _require_nonzero(p, q)
    pq = p * q
    return AlexanderPoly(-pq, 2 * pq + 1, -pq)


@dataclass(frozen=True)
class SeifertPiece:
    """``M(k)``: ``k``-surgery on one component of the ``(2, 4)`` torus link."""

    k: int

    def __post_init__(self) -> None:
        _require_nonzero(self.k)

    def __str__(self) -> str:
        return f"M({self.k})"


@dataclass(frozen=True)
class SeifertNoTori:
    kind = "SeifertNoTori"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pieces": []}


@dataclass(frozen=True)
class OneTorus:
    piece: SeifertPiece
    kind = "OneTorus"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pieces": [str(self.piece)]}


@dataclass(frozen=True)
class TwoTori:
    pieces: frozenset[SeifertPiece]
    kind = "TwoTori"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "pieces": sorted(str(pc) for pc in self.pieces)}


JsjDescriptor = Union[SeifertNoTori, OneTorus, TwoTori]


def jsj(p: int, q: int) -> JsjDescriptor:
    _require_nonzero(p, q)
    if (p, q) in {(1, -1), (-1, 1)}:
        return SeifertNoTori()
    if abs(p) == 1 or abs(q) == 1:
        return OneTorus(SeifertPiece(p * q))
    return TwoTori(frozenset({SeifertPiece(p), SeifertPiece(-q)}))


def m_homeo(k1: int, k2: int) -> bool:
    _require_nonzero(k1, k2)
    return abs(k1) == abs(k2)


def homeo_class(p: int, q: int) -> frozenset[tuple[int, int]]:
    _require_nonzero(p, q)
    return frozenset({(p, q), (q, p), (-p, -q), (-q, -p)})


def canonicalize(p: int, q: int) -> tuple[int, int]:
    """Representative of the homeomorphism class with ``p > 0``, lexicographically least."""
    return min(pair for pair in homeo_class(p, q) if pair[0] > 0)


def zero_surgery_homeo(p: int, q: int, p2: int, q2: int) -> bool:
    _require_nonzero(p2, q2)
    return (p2, q2) in homeo_class(p, q)


class KnotRelation(enum.Enum):
    ISOTOPIC = "Isotopic"
    MIRROR = "Mirror"
    NEITHER = "Neither"


def knot_relation(p: int, q: int, p2: int, q2: int) -> KnotRelation:
    _require_nonzero(p, q, p2, q2)
    if (p2, q2) in {(p, q), (-q, -p)}:
        return KnotRelation.ISOTOPIC
    if (p2, q2) in {(-p, -q), (q, p)}:
        return KnotRelation.MIRROR
    return KnotRelation.NEITHER


def factor_pairs(N: int) -> list[tuple[int, int]]:
    """All ordered ``(p, q)`` with ``pq = N``."""
    _require_nonzero(N)
    out = []
    for d in range(1, abs(N) + 1):
        if N % d == 0:
            out.append((d, N // d))
            out.append((-d, -(N // d)))
    return out


def theorem1_pairs(N: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of non-homeomorphic 0-surgeries with equal ``pq = N``, one canonical pair per class pair."""
    reps = sorted({canonicalize(p, q) for p, q in factor_pairs(N)})
    pairs = []
    for i, (p, q) in enumerate(reps):
        for p2, q2 in reps[i + 1:]:
            if abs(p) in {abs(p2), abs(q2)}:
                continue
            pairs.append(((p, q), (p2, q2)))
    return pairs
