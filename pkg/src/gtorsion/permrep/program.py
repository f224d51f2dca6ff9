"""Straight-line programs for relator words, evaluated on batches of partial permutations.

A batch is an ``int`` array of shape ``(rows, m + 1)`` over the points
``0..m-1`` plus a sentinel column ``m`` meaning "undefined".  Every array
maps the sentinel to itself, so composing partial injections by plain
fancy indexing propagates undefined points automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..presentations import as_params
from ..words import Alphabet, Word, power, product


class Expr:
    def __mul__(self, other: Expr) -> Expr:
        return Mul((self, other))

    def __pow__(self, k: int) -> Expr:
        return Pow(self, k)


@dataclass(frozen=True, eq=False)
class Gen(Expr):
    name: str


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True, eq=False)
class Pow(Expr):
    base: Expr
    k: int


def from_word(w: Word) -> Expr:
    names = w.alphabet.names
    return Mul(tuple(Pow(Gen(names[g]), e) for g, e in w.syllables))


def expand(expr: Expr, alphabet: Alphabet, _memo: dict | None = None) -> Word:
    memo = {} if _memo is None else _memo
    key = id(expr)
    if key in memo:
        return memo[key]
    if isinstance(expr, Gen):
        out = alphabet.gen(expr.name)
    elif isinstance(expr, Mul):
        out = product((expand(f, alphabet, memo) for f in expr.factors), alphabet)
    else:
        out = power(expand(expr.base, alphabet, memo), expr.k)
    memo[key] = out
    return out


# -- batch arithmetic ---------------------------------------------------------

def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise ``a o b`` (``b`` first).  Either side may be a single shared row."""
    if a.shape[0] == 1:
        return a[0][b]
    if b.shape[0] == 1:
        return a[:, b[0]]
    return np.take_along_axis(a, b, axis=1)


def inverse(a: np.ndarray) -> np.ndarray:
    rows, width = a.shape
    m = width - 1
    inv = np.full_like(a, m)
    inv[np.arange(rows)[:, None], a] = np.arange(width, dtype=a.dtype)[None, :]
    inv[:, m] = m
    return inv


def identity(rows: int, m: int, dtype=np.int16) -> np.ndarray:
    return np.broadcast_to(np.arange(m + 1, dtype=dtype), (rows, m + 1)).copy()


def batch_power(a: np.ndarray, k: int) -> np.ndarray:
    if k < 0:
        a, k = inverse(a), -k
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    if result is None:
        return identity(a.shape[0], a.shape[1] - 1, a.dtype)
    return result


def run(expr: Expr, env: Mapping[str, np.ndarray], _memo: dict | None = None) -> np.ndarray:
    memo = {} if _memo is None else _memo
    key = id(expr)
    if key in memo:
        return memo[key]
    if isinstance(expr, Gen):
        out = env[expr.name]
    elif isinstance(expr, Mul):
        out = None
        for f in expr.factors:
            val = run(f, env, memo)
            out = val if out is None else compose(out, val)
        if out is None:
            any_arr = next(iter(env.values()))
            out = identity(1, any_arr.shape[1] - 1, any_arr.dtype)
    else:
        out = batch_power(run(expr.base, env, memo), expr.k)
    memo[key] = out
    return out


def run_all(exprs, env: Mapping[str, np.ndarray]) -> list[np.ndarray]:
    memo: dict = {}
    return [run(e, env, memo) for e in exprs]


def violates(result: np.ndarray) -> np.ndarray:
    """Rows where some defined point is not fixed."""
    m = result.shape[1] - 1
    body = result[:, :m]
    return ((body != m) & (body != np.arange(m, dtype=body.dtype))).any(axis=1)


def nontrivial(result: np.ndarray) -> np.ndarray:
    m = result.shape[1] - 1
    return (result[:, :m] != np.arange(m, dtype=result.dtype)).any(axis=1)


# -- the two relators of the two-generator surgery presentation ---------------

def two_gen_programs(params) -> tuple[Expr, Expr]:
    """Programs for ``x L^p y L^-p`` and ``L'^p L^p`` sharing ``yx``, ``xy``, ``L``, ``L^p``."""
    pr = as_params(params)
    x, y = Gen("x"), Gen("y")
    yx = Mul((y, x))
    xy = Mul((x, y))
    yx_q = Pow(yx, pr.q)
    xy_q = Pow(xy, pr.q)
    L = Mul((yx_q, Pow(xy_q, -1)))
    Lprime = Mul((Pow(yx_q, -1), xy_q))
    L_p = Pow(L, pr.p)
    r1 = Mul((x, L_p, y, Pow(L_p, -1)))
    r2 = Mul((Pow(Lprime, pr.p), L_p))
    return r1, r2

