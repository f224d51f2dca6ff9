"""Presentations of the knot and 0-surgery groups of double twist knots.

All families are built verbatim from ``(p, q)``; no mirror or orientation
normalization happens here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .words import (Alphabet, Word, commutator, conjugate, invert, power,
                    product, substitute)

STD = Alphabet.of("a", "b", "t")
TWO_GEN = Alphabet.of("x", "y")
ABT = Alphabet.of("A", "B", "T")
GAMMA = Alphabet.of("a", "b")

# basis labels used by generator_change and candidate
LIN, STD_LABEL, TWO_GEN_LABEL, ABT_LABEL = "lin", "std", "two_gen", "ABT"


@dataclass(frozen=True)
class DoubleTwistParams:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p == 0 or self.q == 0:
            raise ValueError(f"double twist parameters must be non-zero, got ({self.p}, {self.q})")

    @property
    def pq(self) -> int:
        return self.p * self.q


def as_params(params) -> DoubleTwistParams:
    if isinstance(params, DoubleTwistParams):
        return params
    p, q = params
    return DoubleTwistParams(int(p), int(q))


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...]
    label: str
    params: DoubleTwistParams | None = None

    def __post_init__(self) -> None:
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise ValueError(f"relator {r} is not over {self.alphabet.names}")

    def to_json(self) -> str:
        doc = {
            "label": self.label,
            "p": self.params.p if self.params else None,
            "q": self.params.q if self.params else None,
            "alphabet": list(self.alphabet.names),
            "relators": [str(r) for r in self.relators],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> Presentation:
        doc = json.loads(text)
        alphabet = Alphabet(tuple(doc["alphabet"]))
        params = DoubleTwistParams(doc["p"], doc["q"]) if doc.get("p") is not None else None
        return cls(alphabet, tuple(alphabet.word(r) for r in doc["relators"]), doc["label"], params)


def knot_group_lin(params) -> Presentation:
    pr = as_params(params)
    a, b, t = STD.gens()
    ap = power(a, pr.p)
    bq = power(b, -pr.q)
    r1 = product((t, ap, invert(t), invert(product((invert(b), ap)))))
    r2 = product((t, bq, invert(a), invert(t), invert(bq)))
    return Presentation(STD, (r1, r2), "lin", pr)


def longitude_std(params) -> Word:
    pr = as_params(params)
    a, b, _ = STD.gens()
    return commutator(power(b, pr.q), power(a, pr.p))


def surgery_group_std(params) -> Presentation:
    pr = as_params(params)
    lin = knot_group_lin(pr)
    return Presentation(STD, lin.relators + (longitude_std(pr),), "std", pr)


def complement_group(params) -> Presentation:
    pr = as_params(params)
    a, b = GAMMA.gens()
    return Presentation(GAMMA, (commutator(power(b, pr.q), power(a, pr.p)),), "gamma", pr)


def two_gen_blocks(params) -> tuple[Word, Word]:
    """``L = (yx)^q (xy)^-q`` and ``L' = (yx)^-q (xy)^q``."""
    pr = as_params(params)
    x, y = TWO_GEN.gens()
    yx, xy = y * x, x * y
    L = power(yx, pr.q) * power(xy, -pr.q)
    Lp = power(yx, -pr.q) * power(xy, pr.q)
    return L, Lp


def knot_group_two_gen(params) -> Presentation:
    pr = as_params(params)
    x, y = TWO_GEN.gens()
    L, _ = two_gen_blocks(pr)
    Lp = power(L, pr.p)
    r1 = product((x, Lp, y, invert(Lp)))
    return Presentation(TWO_GEN, (r1,), "two_gen_knot", pr)


def surgery_group_two_gen(params) -> Presentation:
    pr = as_params(params)
    L, Lprime = two_gen_blocks(pr)
    r1 = knot_group_two_gen(pr).relators[0]
    r2 = power(Lprime, pr.p) * power(L, pr.p)
    return Presentation(TWO_GEN, (r1, r2), "two_gen", pr)


def surgery_group_ABT(params) -> Presentation:
    pr = as_params(params)
    A, B, T = ABT.gens()
    Aq = power(A, pr.q)
    Bp = power(B, -pr.p)
    r1 = product((T, Aq, invert(T), invert(Aq), B))
    r2 = product((T, Bp, invert(A), invert(T), invert(Bp)))
    r3 = commutator(power(B, pr.p), Aq)
    return Presentation(ABT, (r1, r2, r3), "ABT", pr)


# -- the infinitely presented group H, truncated -----------------------------

def h_alphabet(N: int) -> Alphabet:
    return Alphabet(("tau",) + tuple(f"x_{i}" for i in range(-N, N + 1)))


def h_presentation_window(params, N: int) -> Presentation:
    """Generators ``tau, x_-N..x_N``; every relator whose indices fit the window."""
    pr = as_params(params)
    if N < 1:
        raise ValueError("window size N must be at least 1")
    H = h_alphabet(N)
    tau = H.gen("tau")
    xs = {i: H.gen(f"x_{i}") for i in range(-N, N + 1)}
    rels = []
    for i in range(-N, N + 1):
        for j in range(i + 1, N + 1):
            rels.append(commutator(xs[i], xs[j]))
    for i in range(-N + 1, N):
        rels.append(characteristic_relator(xs[i + 1], xs[i], xs[i - 1], pr.pq))
    for i in range(-N, N):
        rels.append(product((tau, xs[i], invert(tau), invert(xs[i + 1]))))
    return Presentation(H, tuple(rels), "H", pr)


def characteristic_relator(up: Word, mid: Word, down: Word, pq: int) -> Word:
    return product((power(up, pq), power(mid, -(2 * pq + 1)), power(down, pq)))


def h_window_to_std(N: int) -> dict[str, Word]:
    """``tau -> t`` and ``x_i -> t^i b t^-i``."""
    _, b, t = STD.gens()
    images = {"tau": t}
    for i in range(-N, N + 1):
        images[f"x_{i}"] = conjugate(b, power(t, -i))
    return images


# -- generator changes --------------------------------------------------------

def _std_to_two_gen(pr: DoubleTwistParams) -> dict[str, Word]:
    x, y = TWO_GEN.gens()
    b = x * y
    t = invert(y)
    a = product((invert(t), power(b, pr.q), t, power(b, -pr.q)))
    return {"a": a, "b": b, "t": t}


def _two_gen_to_std(pr: DoubleTwistParams) -> dict[str, Word]:
    _, b, t = STD.gens()
    return {"x": b * t, "y": invert(t)}


def _abt_to_std(pr: DoubleTwistParams) -> dict[str, Word]:
    a, b, t = STD.gens()
    return {"A": invert(b), "B": a, "T": invert(a) * invert(t)}


def _std_to_abt(pr: DoubleTwistParams) -> dict[str, Word]:
    A, B, T = ABT.gens()
    return {"a": B, "b": invert(A), "t": invert(T) * invert(B)}


_CHANGES = {
    (STD_LABEL, TWO_GEN_LABEL): _std_to_two_gen,
    (LIN, TWO_GEN_LABEL): _std_to_two_gen,
    (TWO_GEN_LABEL, STD_LABEL): _two_gen_to_std,
    (ABT_LABEL, STD_LABEL): _abt_to_std,
    (STD_LABEL, ABT_LABEL): _std_to_abt,
}

BASIS_ALPHABET = {LIN: STD, STD_LABEL: STD, TWO_GEN_LABEL: TWO_GEN, ABT_LABEL: ABT}


def generator_change(from_label: str, to_label: str, params) -> dict[str, Word]:
    """Substitution map sending each generator of ``from_label`` to a word of ``to_label``.

    Composite routes (``ABT -> two_gen`` and back) go through ``std``.
    """
    pr = as_params(params)
    if (from_label, to_label) in _CHANGES:
        return _CHANGES[(from_label, to_label)](pr)
    if from_label == to_label and from_label in BASIS_ALPHABET:
        return {g.name: BASIS_ALPHABET[from_label].gen(g.name) for g in BASIS_ALPHABET[from_label]}
    if (from_label, to_label) in {(ABT_LABEL, TWO_GEN_LABEL), (TWO_GEN_LABEL, ABT_LABEL)}:
        first = _CHANGES[(from_label, STD_LABEL)](pr)
        second = _CHANGES[(STD_LABEL, to_label)](pr)
        return {k: substitute(v, second) for k, v in first.items()}
    raise ValueError(f"unsupported generator change {from_label} -> {to_label}")


def push(word: Word, from_label: str, to_label: str, params) -> Word:
    return substitute(word, generator_change(from_label, to_label, params), BASIS_ALPHABET[to_label])


# -- candidate elements -------------------------------------------------------

CANDIDATE_LABELS = ("[xy,yx]", "[b,t^{-n}bt^n]", "[B,T^{-n}BT^n]", "a", "b", "[b^{-1},a]")
_NEEDS_N = {"[b,t^{-n}bt^n]", "[B,T^{-n}BT^n]"}


@dataclass(frozen=True)
class CandidateElement:
    word: Word
    label: str
    n: int | None = None
    basis: str = TWO_GEN_LABEL


def _native(label: str, n: int | None) -> tuple[str, Word]:
    if label == "[xy,yx]":
        x, y = TWO_GEN.gens()
        return TWO_GEN_LABEL, commutator(x * y, y * x)
    if label == "[b,t^{-n}bt^n]":
        _, b, t = STD.gens()
        return STD_LABEL, commutator(b, conjugate(b, power(t, n)))
    if label == "[B,T^{-n}BT^n]":
        _, B, T = ABT.gens()
        return ABT_LABEL, commutator(B, conjugate(B, power(T, n)))
    if label == "a":
        return STD_LABEL, STD.gen("a")
    if label == "b":
        return STD_LABEL, STD.gen("b")
    if label == "[b^{-1},a]":
        a, b, _ = STD.gens()
        return STD_LABEL, commutator(invert(b), a)
    raise ValueError(f"unknown candidate label {label!r}")


def candidate(label: str, params=None, n: int | None = None, basis: str = TWO_GEN_LABEL) -> CandidateElement:
    """The candidate word ``label`` written in generator basis ``basis``."""
    if label in _NEEDS_N and n is None:
        raise ValueError(f"candidate {label!r} needs an integer n")
    native, word = _native(label, n)
    if basis != native:
        if params is None:
            raise ValueError(f"moving {label!r} from {native} to {basis} needs (p, q)")
        try:
            word = push(word, native, basis, params)
        except ValueError as exc:
            raise ValueError(f"candidate {label!r} is incompatible with basis {basis!r}") from exc
    return CandidateElement(word, label, n, basis)


def presentation_for(label: str, params) -> Presentation:
    builders = {
        LIN: knot_group_lin,
        STD_LABEL: surgery_group_std,
        TWO_GEN_LABEL: surgery_group_two_gen,
        ABT_LABEL: surgery_group_ABT,
        "two_gen_knot": knot_group_two_gen,
        "gamma": complement_group,
    }
    return builders[label](params)


def pushed_relators(from_label: str, to_label: str, params) -> list[Word]:
    pres = presentation_for(from_label, params)
    images = generator_change(from_label, to_label, params)
    return [substitute(r, images, BASIS_ALPHABET[to_label]) for r in pres.relators]

