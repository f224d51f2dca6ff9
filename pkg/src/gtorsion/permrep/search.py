"""Witness search: homomorphisms ``G_{p,q} -> S_{n+1}`` that keep a candidate non-trivial.

The pruned search assigns ``y(0), y(1), ...`` in order.  The search space
is split into shards by the value of ``y(0)``; inside a shard, all partial
assignments of one depth are extended together as a numpy batch, and
rows are dropped as soon as

* the partial map stops being injective,
* ``y`` closes a cycle that ``x`` cannot match (the first relator makes
  ``y`` conjugate to ``x^-1``, so both have the same cycle type), or
* some relator, evaluated as a partial permutation, moves a point it
  fully determines.

Rows are kept in lexicographic order throughout, so the first surviving
leaf whose candidate image is non-trivial is the lexicographically minimal
witness.  ``search_exhaustive_oracle`` enumerates all ``(n+1)!`` images of
``y`` letter by letter and shares none of this machinery.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from ..presentations import (TWO_GEN, CandidateElement, DoubleTwistParams, as_params, candidate,
                             surgery_group_two_gen)
from ..words import Word
from . import program as prog
from .perm import PermAssignment, Permutation, evaluate, is_homomorphism

ORACLE_MAX_DEGREE = 9
_DTYPE = np.int16


class SearchBudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class WitnessRecord:
    params: DoubleTwistParams
    degree: int
    x: Permutation
    y: Permutation
    candidate_label: str
    candidate_word: Word
    candidate_image: Permutation
    extra_relators: tuple[Word, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not verify_witness(self):
            raise ValueError(f"not a witness: {self.to_dict()}")

    def to_dict(self) -> dict:
        return {
            "p": self.params.p,
            "q": self.params.q,
            "n": self.degree,
            "x": list(self.x.images),
            "y": list(self.y.images),
            "candidate": self.candidate_label,
            "candidate_word": str(self.candidate_word),
            "candidate_image": list(self.candidate_image.images),
            "candidate_cycle_type": list(self.candidate_image.cycle_type()),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> WitnessRecord:
        params = DoubleTwistParams(doc["p"], doc["q"])
        word = TWO_GEN.word(doc["candidate_word"])
        return cls(params, doc["n"], Permutation.of(doc["x"]), Permutation.of(doc["y"]),
                   doc["candidate"], word, Permutation.of(doc["candidate_image"]))


def verify_witness(rec: WitnessRecord) -> bool:
    """Relators of the two-generator surgery presentation hold and the candidate survives."""
    try:
        asg = PermAssignment(rec.degree, {"x": rec.x, "y": rec.y})
    except ValueError:
        return False
    pres = surgery_group_two_gen(rec.params)
    if not is_homomorphism(pres, asg):
        return False
    if any(not evaluate(r, asg).is_identity() for r in rec.extra_relators):
        return False
    image = evaluate(rec.candidate_word, asg)
    return not image.is_identity() and image == rec.candidate_image


def witness_from_images(params, x: Sequence[int], y: Sequence[int],
                        cand: CandidateElement | None = None) -> WitnessRecord:
    pr = as_params(params)
    cand = cand or candidate("[xy,yx]")
    xp, yp = Permutation.of(x), Permutation.of(y)
    asg = PermAssignment(xp.degree, {"x": xp, "y": yp})
    return WitnessRecord(pr, xp.degree, xp, yp, cand.label, cand.word, evaluate(cand.word, asg))


# -- pruned search ------------------------------------------------------------

def _cycle_type_counts(perm: Permutation) -> np.ndarray:
    counts = np.zeros(len(perm) + 1, dtype=np.int64)
    for c in perm.cycle_type():
        counts[c] += 1
    return counts


def _extend(Y: np.ndarray, used: np.ndarray, closed: np.ndarray, d: int, m: int,
            allowed: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All children of the rows in ``Y`` obtained by assigning ``y(d)``, in lexicographic order."""
    rows = Y.shape[0]
    values = np.arange(m)
    ok = ~used
    # length of the cycle closed by y(d) = v, or 0 if it stays open
    cur = np.broadcast_to(values, (rows, m)).copy()
    length = np.ones((rows, m), dtype=np.int64)
    closes = cur == d
    open_ = ~closes
    r_idx = np.arange(rows)[:, None]
    for _ in range(d):
        nxt = Y[r_idx, cur]
        step = open_ & (nxt != m)
        if not step.any():
            break
        cur = np.where(step, nxt, cur)
        length = length + step
        hit = step & (cur == d)
        closes |= hit
        open_ &= ~hit & step
    cyc_len = np.where(closes, length, 0)
    # a closed cycle of length L is legal only while x still has an unmatched L-cycle
    have = np.take_along_axis(closed, cyc_len, axis=1)
    ok &= ~closes | (have < allowed[cyc_len])
    parent, value = np.nonzero(ok)
    newY = Y[parent].copy()
    newY[:, d] = value
    newUsed = used[parent].copy()
    newUsed[np.arange(len(parent)), value] = True
    newClosed = closed[parent].copy()
    lens = cyc_len[parent, value]
    mark = lens > 0
    newClosed[np.nonzero(mark)[0], lens[mark]] += 1
    return newY, newUsed, newClosed


def _search_shard(params: DoubleTwistParams, x_images: tuple[int, ...], first: int,
                  extra: tuple[Word, ...], cand: Word | None, find_all: bool) -> list[tuple[int, ...]]:
    """Leaves of the shard ``y(0) = first`` satisfying every relator (and the candidate test)."""
    m = len(x_images)
    X = np.array(list(x_images) + [m], dtype=_DTYPE)[None, :]
    programs = list(prog.two_gen_programs(params)) + [prog.from_word(r) for r in extra]
    allowed = _cycle_type_counts(Permutation(x_images))

    Y = np.full((1, m + 1), m, dtype=_DTYPE)
    used = np.zeros((1, m), dtype=bool)
    closed = np.zeros((1, m + 1), dtype=np.int64)
    Y, used, closed = _extend(Y, used, closed, 0, m, allowed)
    keep = Y[:, 0] == first
    Y, used, closed = Y[keep], used[keep], closed[keep]
    for d in range(1, m + 1):
        if Y.shape[0] == 0:
            return []
        env = {"x": X, "y": Y}
        bad = np.zeros(Y.shape[0], dtype=bool)
        for res in prog.run_all(programs, env):
            bad |= prog.violates(res)
        Y, used, closed = Y[~bad], used[~bad], closed[~bad]
        if d == m or Y.shape[0] == 0:
            break
        Y, used, closed = _extend(Y, used, closed, d, m, allowed)
    if Y.shape[0] == 0:
        return []
    if cand is not None:
        img = prog.run(prog.from_word(cand), {"x": X, "y": Y})
        Y = Y[prog.nontrivial(img)]
        if not find_all:
            Y = Y[:1]
    return [tuple(int(v) for v in row[:m]) for row in Y]


def _shard_task(args):
    return _search_shard(*args)


def _run_shards(params: DoubleTwistParams, x: Permutation, extra: tuple[Word, ...],
                cand: Word | None, find_all: bool, workers: int) -> Iterator[list[tuple[int, ...]]]:
    m = len(x)
    tasks = [(params, x.images, v, extra, cand, find_all) for v in range(m)]
    if workers <= 1:
        for t in tasks:
            yield _shard_task(t)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_shard_task, tasks)


def search_witness(params, n: int, cand: CandidateElement | None = None,
                   x_image: Sequence[int] | None = None, extra_relators: Sequence[Word] = (),
                   workers: int = 1) -> WitnessRecord | None:
    """Lexicographically minimal ``y`` making the candidate a non-trivial image, or ``None``.

    ``x`` defaults to the full cycle ``[1, 2, ..., n, 0]``.
    """
    if n < 1:
        raise ValueError("degree n must be at least 1")
    pr = as_params(params)
    cand = cand or candidate("[xy,yx]")
    x = Permutation.of(x_image) if x_image is not None else Permutation.full_cycle(n)
    if x.degree != n:
        raise ValueError(f"x has degree {x.degree}, expected {n}")
    extra = tuple(extra_relators)
    best = None
    for found in _run_shards(pr, x, extra, cand.word, False, workers):
        if found:
            row = found[0]
            if best is None or row < best:
                best = row
            if workers <= 1:
                break
    if best is None:
        return None
    return _record(pr, x, best, cand, extra)


def iter_models(params, n: int, x_image: Sequence[int] | None = None,
                extra_relators: Sequence[Word] = ()) -> Iterator[Permutation]:
    """Every ``y`` (lexicographic order) for which all relators hold with ``x`` fixed."""
    pr = as_params(params)
    x = Permutation.of(x_image) if x_image is not None else Permutation.full_cycle(n)
    for found in _run_shards(pr, x, tuple(extra_relators), None, True, 1):
        for row in found:
            yield Permutation(row)


def search_unconstrained(params, n: int, cand: CandidateElement | None = None) -> WitnessRecord | None:
    """Drop the full-cycle constraint: try one representative ``x`` per cycle type.

    Every homomorphism is conjugate to one whose ``x`` is the representative
    of its cycle type, so this is complete at degree ``n``.  Cycle types are
    tried from the full cycle downwards.
    """
    m = n + 1
    for parts in _partitions(m):
        images, start = [], 0
        for length in parts:
            images.extend(range(start + 1, start + length))
            images.append(start)
            start += length
        rec = search_witness(params, n, cand, x_image=images)
        if rec is not None:
            return rec
    return None


def _partitions(m: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def search_range(params, n_max: int, cand: CandidateElement | None = None,
                 budget: int = ORACLE_MAX_DEGREE, workers: int = 1) -> list[WitnessRecord]:
    """First witness per degree for ``n = 1..n_max``."""
    if n_max > budget:
        raise SearchBudgetExceeded(f"n_max={n_max} exceeds the degree budget {budget}")
    out = []
    for n in range(1, n_max + 1):
        rec = search_witness(params, n, cand, workers=workers)
        if rec is not None:
            out.append(rec)
    return out


def _record(pr: DoubleTwistParams, x: Permutation, y: Sequence[int], cand: CandidateElement,
            extra: tuple[Word, ...]) -> WitnessRecord:
    yp = Permutation.of(y)
    asg = PermAssignment(x.degree, {"x": x, "y": yp})
    return WitnessRecord(pr, x.degree, x, yp, cand.label, cand.word, evaluate(cand.word, asg), extra)


# -- independent oracle -------------------------------------------------------

def _eval_word_batch(w: Word, X: np.ndarray, Y: np.ndarray, ypows: dict) -> np.ndarray:
    """Letter-by-letter image of ``w`` for every row of ``Y`` (complete permutations)."""
    names = w.alphabet.names
    rows, m = Y.shape
    cur = np.broadcast_to(np.arange(m), (rows, m))
    for g, e in w.syllables:
        if names[g] == "x":
            step = X[np.arange(m)]
            for _ in range(abs(e)):
                cur = cur[:, step] if e > 0 else cur[:, np.argsort(step)]
        else:
            one = ypows[1] if e > 0 else ypows[-1]
            for _ in range(abs(e)):
                cur = np.take_along_axis(cur, one, axis=1)
    return cur


def search_exhaustive_oracle(params, n: int, cand: CandidateElement | None = None,
                             x_image: Sequence[int] | None = None,
                             extra_relators: Sequence[Word] = (),
                             chunk: int = 200_000) -> WitnessRecord | None:
    """Same contract as ``search_witness``, by brute force over all ``(n+1)!`` images of ``y``."""
    if n > ORACLE_MAX_DEGREE:
        raise SearchBudgetExceeded(f"oracle limited to n <= {ORACLE_MAX_DEGREE}, got {n}")
    if n < 1:
        raise ValueError("degree n must be at least 1")
    pr = as_params(params)
    cand = cand or candidate("[xy,yx]")
    x = Permutation.of(x_image) if x_image is not None else Permutation.full_cycle(n)
    m = n + 1
    X = np.array(x.images)
    words = list(surgery_group_two_gen(pr).relators) + list(extra_relators)
    perms = itertools.permutations(range(m))
    total = factorial(m)
    done = 0
    while done < total:
        block = np.array(list(itertools.islice(perms, chunk)), dtype=np.int64)
        done += len(block)
        ypows = {1: block, -1: np.argsort(block, axis=1)}
        ok = np.ones(len(block), dtype=bool)
        for w in words:
            img = _eval_word_batch(w, X, block, ypows)
            ok &= (img == np.arange(m)).all(axis=1)
        if not ok.any():
            continue
        sel = block[ok]
        img = _eval_word_batch(cand.word, X, sel, {1: sel, -1: np.argsort(sel, axis=1)})
        hits = np.nonzero((img != np.arange(m)).any(axis=1))[0]
        if len(hits):
            return _record(pr, x, sel[hits[0]].tolist(), cand, tuple(extra_relators))
    return None
