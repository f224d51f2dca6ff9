"""Exact certificates: products of conjugates and the matrix identity behind the pq < 0 torsion.

Conjugate-product expansions
----------------------------
All expansions come from one step.  Suppose ``u v`` is already written as
a product of conjugates ``prod_i base^(c_i)`` (with ``g^h = h^-1 g h``).
Then

    u^n v^n = (uv)^(u^-(n-1)) (uv)^(u^-(n-2)) ... (uv)

and conjugating a product of conjugates by ``c`` multiplies every
conjugator on the right by ``c``.  ``lift`` performs this step.

* ``[g^n, h^m]`` in terms of ``[g, h]``: write ``[g,h] = u v`` with
  ``u = g^-1``, ``v = h^-1 g h``; lifting by ``n`` gives
  ``g^-n h^-1 g^n h = u' v'`` with ``u' = g^-n h^-1 g^n``, ``v' = h``;
  lifting that by ``m`` gives ``[g^n, h^m]``.
* the longitude block in terms of ``[gh, hg]``: ``[hg, (gh)^-1]`` is the
  conjugate of ``[gh, hg]`` by ``(gh)^-1``; the commutator route above
  with ``g -> hg``, ``h -> (gh)^-1`` yields ``[(hg)^m, (gh)^-m]``, and a
  final lift by ``n`` gives ``{(hg)^-m (gh)^m}^n {(hg)^m (gh)^-m}^n``.

Every ``ConjugateProduct`` checks by free reduction that its factors
multiply out to the stated target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .presentations import STD, TWO_GEN, DoubleTwistParams, surgery_group_two_gen
from .words import Word, commutator, conjugate, invert, power, product, product_of_conjugates

DEFAULT_K_CAP = 10_000


class ChebyshevCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ConjugateProduct:
    """``target == prod(conjugate(base, conjugator))`` over ``factors``, freely."""

    factors: tuple[tuple[Word, Word], ...]
    target: Word

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("a product of conjugates needs at least one factor")
        if self.expand() != self.target:
            raise ValueError("factors do not reduce to the target")

    def expand(self) -> Word:
        return product_of_conjugates(self.factors, self.target.alphabet)

    def __len__(self) -> int:
        return len(self.factors)

    def conjugated(self, c: Word) -> ConjugateProduct:
        return ConjugateProduct(tuple((cj * c, base) for cj, base in self.factors),
                                conjugate(self.target, c))


def lift(seed: ConjugateProduct, u: Word, v: Word, n: int) -> ConjugateProduct:
    """Expand ``u^n v^n`` given ``seed`` expanding ``u v``."""
    if n < 1:
        raise ValueError("n must be positive")
    if product((u, v)) != seed.target:
        raise ValueError("u v does not match the seed's target")
    factors = []
    for k in range(n - 1, -1, -1):
        c = power(u, -k)
        factors.extend((cj * c, base) for cj, base in seed.factors)
    return ConjugateProduct(tuple(factors), product((power(u, n), power(v, n))))


def expand_power_product(g: Word, h: Word, n: int) -> ConjugateProduct:
    """``g^n h^n`` as a product of ``n`` conjugates of ``gh``."""
    seed = ConjugateProduct(((g.alphabet.identity(), g * h),), g * h)
    return lift(seed, g, h, n)


def _commutator_power_from(seed: ConjugateProduct, g: Word, h: Word, n: int, m: int) -> ConjugateProduct:
    step = lift(seed, invert(g), conjugate(g, h), n)
    u = product((power(g, -n), invert(h), power(g, n)))
    return lift(step, u, h, m)


def expand_commutator_power(g: Word, h: Word, n: int, m: int) -> ConjugateProduct:
    """``[g^n, h^m]`` as a product of ``n*m`` conjugates of ``[g, h]``."""
    base = commutator(g, h)
    seed = ConjugateProduct(((g.alphabet.identity(), base),), base)
    return _commutator_power_from(seed, g, h, n, m)


def expand_longitude(g: Word, h: Word, n: int, m: int) -> ConjugateProduct:
    """``{(hg)^-m (gh)^m}^n {(hg)^m (gh)^-m}^n`` as conjugates of ``[gh, hg]``."""
    gh, hg = g * h, h * g
    base = commutator(gh, hg)
    seed = ConjugateProduct(((invert(gh), base),), commutator(hg, invert(gh)))
    block = _commutator_power_from(seed, hg, invert(gh), m, m)
    u = power(hg, -m) * power(gh, m)
    v = power(hg, m) * power(gh, -m)
    return lift(block, u, v, n)


def longitude_certificate(p: int, q: int) -> ConjugateProduct:
    """The second relator of the two-generator surgery presentation as conjugates of ``[xy, yx]``.

    Needs ``p > 0``; negative ``q`` runs the longitude expansion on
    ``(y^-1, x^-1)`` and rewrites ``[(xy)^-1, (yx)^-1]`` as a conjugate of ``[xy, yx]``.
    """
    if p <= 0 or q == 0:
        raise ValueError("needs p > 0 and q != 0")
    x, y = TWO_GEN.gens()
    if q > 0:
        cp = expand_longitude(x, y, p, q)
    else:
        raw = expand_longitude(invert(y), invert(x), p, -q)
        # [a^-1, b^-1] = [a, b]^((ab)^-1) with a = xy, b = yx
        shift = invert(x * y * y * x)
        cp = ConjugateProduct(tuple((shift * c, commutator(x * y, y * x)) for c, _ in raw.factors),
                              raw.target)
    r2 = surgery_group_two_gen((p, q)).relators[1]
    if cp.target != r2:
        raise AssertionError("longitude expansion does not match the surgery relator")
    return cp


# -- exact 2x2 matrices ---------------------------------------------------------

@dataclass(frozen=True)
class Matrix2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @classmethod
    def of(cls, a, b, c, d) -> Matrix2:
        return cls(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @classmethod
    def identity(cls) -> Matrix2:
        return cls.of(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> Matrix2:
        return cls.of(0, 0, 0, 0)

    def __add__(self, o: Matrix2) -> Matrix2:
        return Matrix2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __mul__(self, o):
        if isinstance(o, Matrix2):
            return Matrix2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                           self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)
        if isinstance(o, tuple):
            return (self.a * o[0] + self.b * o[1], self.c * o[0] + self.d * o[1])
        o = Fraction(o)
        return Matrix2(self.a * o, self.b * o, self.c * o, self.d * o)

    __rmul__ = __mul__

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Fraction:
        return self.a + self.d

    def inverse(self) -> Matrix2:
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, k: int) -> Matrix2:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = Matrix2.identity()
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def rows(self) -> list[list[Fraction]]:
        return [[self.a, self.b], [self.c, self.d]]


def monodromy_matrix(p: int, q: int) -> Matrix2:
    """Action of ``t(.)t^-1`` on ``<a, b>`` in ``G_{p,-q}`` (``p, q >= 1``)."""
    if p < 1 or q < 1:
        raise ValueError("monodromy matrix is defined for p, q >= 1")
    return Matrix2.of(1, Fraction(1, q), Fraction(-1, p), 1 - Fraction(1, p * q))


def chebyshev_eval(k: int, r) -> Fraction:
    """``T_k(r)`` by the three-term recurrence, exactly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    r = Fraction(r)
    prev, cur = Fraction(1), r
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2 * r * cur - prev
    return cur


def find_chebyshev_constants(p: int, q: int, k_cap: int = DEFAULT_K_CAP) -> tuple[int, int, int]:
    """``(k, n, m)``: least ``k`` with ``T_k(Re lambda) < 0`` and ``m/n = -2 T_k`` in lowest terms."""
    if p < 1 or q < 1:
        raise ValueError("needs p, q >= 1")
    pq = p * q
    r = Fraction(2 * pq - 1, 2 * pq)
    prev, cur = Fraction(1), r
    k = 1
    while cur >= 0:
        k += 1
        if k > k_cap:
            raise ChebyshevCapExceeded(f"no negative T_k(Re lambda) for k <= {k_cap}")
        prev, cur = cur, 2 * r * cur - prev
    ratio = -2 * cur
    return k, ratio.denominator, ratio.numerator


def verify_matrix_identity(A: Matrix2, k: int, n: int, m: int) -> bool:
    """``n A^k + m I + n A^-k == 0`` exactly."""
    if A.det() == 0:
        raise ZeroDivisionError("singular matrix")
    total = n * (A ** k) + m * Matrix2.identity() + n * (A ** -k)
    return total == Matrix2.zero()


@dataclass(frozen=True)
class TorsionCertificate:
    """Certificate for ``K_{p,-q}(0)``; ``p, q`` are the positive input parameters."""

    p: int
    q: int
    k: int
    n: int
    m: int
    certificate: Word
    matrix_identity_verified: bool

    @property
    def target_params(self) -> DoubleTwistParams:
        return DoubleTwistParams(self.p, -self.q)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "certificate_word_text": str(self.certificate),
            "matrix_identity_verified": self.matrix_identity_verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def certificate_word(pq: int, k: int, n: int, m: int) -> Word:
    a, _, t = STD.gens()
    e = pq ** k
    tk = power(t, k)
    block = power(a, e)
    left = power(product((tk, block, invert(tk))), n)
    right = power(product((invert(tk), block, tk)), n)
    return product((left, power(a, e * m), right))


def torsion_certificate(p: int, q: int, k_cap: int = DEFAULT_K_CAP) -> TorsionCertificate:
    """``(t^k a^e t^-k)^n a^(e m) (t^-k a^e t^k)^n`` with ``e = (pq)^k``.

    It is the identity in ``G_{p,-q}`` whenever ``a`` and ``b`` commute.
    """
    k, n, m = find_chebyshev_constants(p, q, k_cap)
    ok = verify_matrix_identity(monodromy_matrix(p, q), k, n, m)
    if not ok:
        raise AssertionError(f"matrix identity fails for {(p, q, k, n, m)}")
    return TorsionCertificate(p, q, k, n, m, certificate_word(p * q, k, n, m), ok)


def exponent_vector_after(A: Matrix2, k: int, v: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Exponents of ``a, b`` in ``t^k (a^v0 b^v1) t^-k`` under commuting ``a, b``."""
    return (A ** k) * (Fraction(v[0]), Fraction(v[1]))
