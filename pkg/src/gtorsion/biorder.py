"""The group ``K = R^2 x| Z`` over ``Q(sqrt D)`` and a bi-order on it pulled back along ``phi``.

``phi`` sends a word over ``{a, b, t}`` (with ``a = t^-1 b^q t b^-q``) to
``(r(g t^-rho(g)), rho(g))``, where ``r`` sends ``x_d = t^d b t^-d`` to
``A^d (0, 1)``.  Elements of ``K`` are compared lexicographically by
level, then by the ``V+`` and ``V-`` eigen-coordinates of the vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from math import isqrt

from .certificates import Matrix2
from .presentations import STD, DoubleTwistParams, as_params
from .words import Word, power, product, substitute


class ContextMismatch(ValueError):
    pass


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @property
    def label(self) -> str:
        return self.name.capitalize()


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
@dataclass(frozen=True)
class QuadExt:
    """``a + b sqrt(D)`` with rational ``a, b``; square ``D`` is folded into ``a``."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        if self.D < 1:
            raise ValueError("D must be a positive integer")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        s = isqrt(self.D)
        if s * s == self.D and self.b:
            object.__setattr__(self, "a", self.a + self.b * s)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def rational(cls, a, D: int) -> QuadExt:
        return cls(Fraction(a), Fraction(0), D)

    @classmethod
    def sqrt(cls, D: int) -> QuadExt:
        return cls(Fraction(0), Fraction(1), D)

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ContextMismatch(f"sqrt({self.D}) and sqrt({other.D}) do not mix")
            return other
        return QuadExt(Fraction(other), Fraction(0), self.D)

    def __add__(self, other) -> QuadExt:
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b, self.D)

    def __sub__(self, other) -> QuadExt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadExt:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadExt:
        o = self._coerce(other)
        return QuadExt(self.a * o.a + self.b * o.b * self.D, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadExt(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other) -> QuadExt:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> QuadExt:
        return self._coerce(other) * self.inverse()

    def sign(self) -> int:
        """Exact sign, decided by comparing ``a^2`` with ``b^2 D`` when the signs differ."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        return sa * _sign(self.a * self.a - self.b * self.b * self.D)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self.D == other.D and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.D))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"{self.b}*sqrt({self.D})" if self.b != 1 else f"sqrt({self.D})"
        return rad if self.a == 0 else f"{self.a} + {rad}"


Vector = tuple[QuadExt, QuadExt]


def _apply(A: Matrix2, v: Vector) -> Vector:
    return (v[0] * A.a + v[1] * A.b, v[0] * A.c + v[1] * A.d)


@dataclass(frozen=True)
class Eigenbasis:
    lam_plus: QuadExt
    lam_minus: QuadExt
    v_plus: Vector
    v_minus: Vector


def positive_matrix(p: int, q: int) -> Matrix2:
    """``[[1, -1/q], [-1/p, 1 + 1/(pq)]]`` for ``p, q >= 1``."""
    if p < 1 or q < 1:
        raise ValueError("the bi-order is defined for p, q >= 1")
    return Matrix2.of(1, Fraction(-1, q), Fraction(-1, p), 1 + Fraction(1, p * q))


def eigenbasis(p: int, q: int) -> Eigenbasis:
    positive_matrix(p, q)
    pq = p * q
    D = 4 * pq + 1
    r = QuadExt.sqrt(D)
    lam_p = (r + (2 * pq + 1)) / (2 * pq)
    lam_m = (-r + (2 * pq + 1)) / (2 * pq)
    scale = (r * 2).inverse()
    v_p = (QuadExt.rational(-2 * p, D) * scale, (r + 1) * scale)
    v_m = (QuadExt.rational(-2 * p, D) * scale, (-r + 1) * scale)
    return Eigenbasis(lam_p, lam_m, v_p, v_m)


@dataclass(frozen=True)
class KContext:
    """Parameters of ``K`` plus positive rescalings of the eigenvectors (``1`` gives the standard ones)."""

    p: int
    q: int
    scale_plus: Fraction = Fraction(1)
    scale_minus: Fraction = Fraction(1)
    A: Matrix2 = field(init=False, repr=False, compare=False)
    basis: Eigenbasis = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.scale_plus <= 0 or self.scale_minus <= 0:
            raise ValueError("eigenvector rescalings must be positive")
        object.__setattr__(self, "A", positive_matrix(self.p, self.q))
        object.__setattr__(self, "basis", eigenbasis(self.p, self.q))
        object.__setattr__(self, "_powers", {0: Matrix2.identity()})

    @classmethod
    def of(cls, params) -> KContext:
        pr = as_params(params)
        return cls(pr.p, pr.q)

    @property
    def D(self) -> int:
        return 4 * self.p * self.q + 1

    @property
    def params(self) -> DoubleTwistParams:
        return DoubleTwistParams(self.p, self.q)

    def A_power(self, k: int) -> Matrix2:
        cache = self._powers
        if k not in cache:
            cache[k] = self.A ** k
        return cache[k]

    def zero(self) -> Vector:
        z = QuadExt.rational(0, self.D)
        return (z, z)

    def to_eigen(self, v: Vector) -> Vector:
        """Coefficients ``(alpha, beta)`` with ``v = alpha V+ + beta V-`` (rescaled basis)."""
        D, p = self.D, self.p
        r = QuadExt.sqrt(D)
        s = -(r * v[0]) / p            # alpha + beta
        d = v[1] * 2 + v[0] / p        # alpha - beta
        alpha = (s + d) / 2
        beta = (s - d) / 2
        return (alpha / self.scale_plus, beta / self.scale_minus)

    def from_eigen(self, coeffs: Vector) -> Vector:
        vp, vm = self.basis.v_plus, self.basis.v_minus
        al = coeffs[0] * self.scale_plus
        be = coeffs[1] * self.scale_minus
        return (vp[0] * al + vm[0] * be, vp[1] * al + vm[1] * be)


@dataclass(frozen=True)
class KElement:
    """``(v, level)`` in ``K``; ``eigen`` gives the ``V+, V-`` coefficients of ``v``."""

    ctx: KContext
    v: Vector
    level: int

    def __post_init__(self) -> None:
        D = self.ctx.D
        v = tuple(x if isinstance(x, QuadExt) else QuadExt.rational(x, D) for x in self.v)
        object.__setattr__(self, "v", v)

    @cached_property
    def eigen(self) -> Vector:
        return self.ctx.to_eigen(self.v)

    @classmethod
    def identity(cls, ctx: KContext) -> KElement:
        return cls(ctx, ctx.zero(), 0)

    @classmethod
    def from_eigen(cls, ctx: KContext, coeffs, level: int) -> KElement:
        D = ctx.D
        c = tuple(x if isinstance(x, QuadExt) else QuadExt.rational(x, D) for x in coeffs)
        out = cls(ctx, ctx.from_eigen(c), level)
        out.__dict__["eigen"] = c
        return out

    def __mul__(self, other: KElement) -> KElement:
        return k_multiply(self, other)

    def inverse(self) -> KElement:
        back = self.ctx.A_power(-self.level)
        w = _apply(back, self.v)
        return KElement(self.ctx, (-w[0], -w[1]), -self.level)

    def is_identity(self) -> bool:
        return self.level == 0 and self.v[0] == 0 and self.v[1] == 0

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "vector": [str(x) for x in self.v],
            "eigen": {"V+": str(self.eigen[0]), "V-": str(self.eigen[1])},
        }


def k_multiply(e1: KElement, e2: KElement) -> KElement:
    """``(v1 + A^n1 v2, n1 + n2)``."""
    if e1.ctx != e2.ctx:
        raise ContextMismatch("elements belong to different groups K")
    w = _apply(e1.ctx.A_power(e1.level), e2.v)
    return KElement(e1.ctx, (e1.v[0] + w[0], e1.v[1] + w[1]), e1.level + e2.level)


def k_compare(e1: KElement, e2: KElement) -> Ordering:
    if e1.ctx != e2.ctx:
        raise ContextMismatch("elements belong to different groups K")
    if e1.level != e2.level:
        return Ordering.LESS if e1.level < e2.level else Ordering.GREATER
    for c1, c2 in zip(e1.eigen, e2.eigen):
        s = (c1 - c2).sign()
        if s:
            return Ordering(s)
    return Ordering.EQUAL


# -- from words to K ------------------------------------------------------------

@dataclass(frozen=True)
class XWord:
    """Product of ``x_depth^exponent`` followed by ``t^level``."""

    syllables: tuple[tuple[int, int], ...]
    level: int = 0

    def kernel_part(self) -> XWord:
        return XWord(self.syllables, 0)


def rho(w: Word) -> int:
    """Exponent sum of ``t``; ``a`` and ``b`` contribute nothing."""
    return w.exponent_sum("t") if "t" in w.alphabet else 0


def expand_a(w: Word, q: int) -> Word:
    a, b, t = STD.gens()
    a_image = product((power(t, -1), power(b, q), t, power(b, -q)))
    return substitute(w, {"a": a_image, "b": b, "t": t}, STD)


def to_xword(w: Word) -> XWord:
    names = w.alphabet.names
    depth = 0
    out: list[tuple[int, int]] = []
    for g, e in w.syllables:
        name = names[g]
        if name == "t":
            depth += e
        elif name == "b":
            if out and out[-1][0] == depth:
                merged = out[-1][1] + e
                out.pop()
                if merged:
                    out.append((depth, merged))
            else:
                out.append((depth, e))
        else:
            raise ValueError(f"to_xword expects a word over b, t; found {name!r}")
    return XWord(tuple(out), depth)


def r_map(xw: XWord, ctx: KContext) -> Vector:
    if xw.level != 0:
        raise ValueError(f"r is defined on the kernel of rho; residual level is {xw.level}")
    s0, s1 = Fraction(0), Fraction(0)
    for d, e in xw.syllables:
        M = ctx.A_power(d)
        s0 += e * M.b
        s1 += e * M.d
    return (QuadExt.rational(s0, ctx.D), QuadExt.rational(s1, ctx.D))


def phi(w: Word, ctx: KContext) -> KElement:
    if w.alphabet != STD:
        raise ValueError("phi is defined on words over a, b, t")
    xw = to_xword(expand_a(w, ctx.q))
    return KElement(ctx, r_map(xw.kernel_part(), ctx), xw.level)


def word_sign(w: Word, ctx: KContext) -> Ordering:
    return k_compare(phi(w, ctx), KElement.identity(ctx))
