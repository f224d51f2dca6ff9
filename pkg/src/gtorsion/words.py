"""Freely reduced words over a finite, named alphabet.

Words are stored run-length encoded as ``(generator index, exponent)``
syllables.  Exponents are plain Python integers, so powers such as
``a^((pq)^k)`` never overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class AlphabetMismatch(ValueError):
    pass


class WordParseError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    id: int
    name: str


@dataclass(frozen=True)
class Alphabet:
    """An ordered tuple of distinct generator names."""

    names: tuple[str, ...]
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if any(not n for n in self.names):
            raise ValueError("generator names must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, *names: str) -> Alphabet:
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[Generator]:
        return (Generator(i, n) for i, n in enumerate(self.names))

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not in alphabet {self.names}") from None

    def gen(self, name: str) -> Word:
        return Word(self, ((self.index(name), 1),))

    def gens(self) -> tuple[Word, ...]:
        return tuple(Word(self, ((i, 1),)) for i in range(len(self.names)))

    def identity(self) -> Word:
        return Word(self, ())

    def word(self, text: str) -> Word:
        return parse_word(text, self)

    def word_from_syllables(self, syllables: Iterable[tuple[str, int]]) -> Word:
        return Word.from_syllables(self, ((self.index(n), e) for n, e in syllables))


def _reduce_into(out: list[tuple[int, int]], syllables: Iterable[tuple[int, int]]) -> None:
    for g, e in syllables:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            e += out[-1][1]
            out.pop()
            if e == 0:
                continue
        out.append((g, e))


def _append_reduced(out: list[tuple[int, int]], syllables: tuple[tuple[int, int], ...]) -> None:
    """Like ``_reduce_into`` for an already reduced word: only the seam can cancel."""
    i, n = 0, len(syllables)
    while i < n and out and out[-1][0] == syllables[i][0]:
        g, e = syllables[i]
        e += out.pop()[1]
        i += 1
        if e:
            out.append((g, e))
            break
    out.extend(syllables[i:])


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    syllables: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_syllables(cls, alphabet: Alphabet, syllables: Iterable[tuple[int, int]]) -> Word:
        out: list[tuple[int, int]] = []
        _reduce_into(out, syllables)
        n = len(alphabet)
        for g, _ in out:
            if not 0 <= g < n:
                raise ValueError(f"generator index {g} outside alphabet {alphabet.names}")
        return cls(alphabet, tuple(out))

    # -- inspection -------------------------------------------------------

    @property
    def length(self) -> int:
        """Letter length (sum of absolute exponents); may exceed ``sys.maxsize``."""
        return sum(abs(e) for _, e in self.syllables)

    def __len__(self) -> int:
        return self.length

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def named_syllables(self) -> list[tuple[str, int]]:
        names = self.alphabet.names
        return [(names[g], e) for g, e in self.syllables]

    def generators_used(self) -> set[str]:
        names = self.alphabet.names
        return {names[g] for g, _ in self.syllables}

    def exponent_sum(self, name: str) -> int:
        i = self.alphabet.index(name)
        return sum(e for g, e in self.syllables if g == i)

    def letters(self) -> Iterator[tuple[int, int]]:
        """Yield ``(generator index, +1/-1)`` one letter at a time."""
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    # -- group operations -------------------------------------------------

    def _check(self, other: Word) -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.names} vs {other.alphabet.names}")

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        return power(self, k)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def concat(u: Word, v: Word) -> Word:
    u._check(v)
    a = list(u.syllables)
    i = 0
    vs = v.syllables
    # only the seam can cancel
    while a and i < len(vs) and a[-1][0] == vs[i][0]:
        e = a[-1][1] + vs[i][1]
        a.pop()
        i += 1
        if e != 0:
            a.append((vs[i - 1][0], e))
            break
    a.extend(vs[i:])
    return Word(u.alphabet, tuple(a))


def product(words: Iterable[Word], alphabet: Alphabet | None = None) -> Word:
    out: list[tuple[int, int]] = []
    alpha = alphabet
    for w in words:
        if alpha is None:
            alpha = w.alphabet
        elif w.alphabet != alpha:
            raise AlphabetMismatch(f"{w.alphabet.names} vs {alpha.names}")
        _append_reduced(out, w.syllables)
    if alpha is None:
        raise ValueError("product of no words needs an explicit alphabet")
    return Word(alpha, tuple(out))


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple((g, -e) for g, e in reversed(w.syllables)))


def power(w: Word, k: int) -> Word:
    if k == 0 or not w.syllables:
        return w.alphabet.identity()
    if k < 0:
        w, k = invert(w), -k
    syl = w.syllables
    if len(syl) == 1:
        g, e = syl[0]
        return Word(w.alphabet, ((g, e * k),))
    # split w = c^-1 core c with core cyclically reduced; w^k = c^-1 core^k c
    lo, hi = 0, len(syl) - 1
    while lo < hi and syl[lo][0] == syl[hi][0] and syl[lo][1] == -syl[hi][1]:
        lo += 1
        hi -= 1
    head, core, tail = syl[:lo], list(syl[lo:hi + 1]), syl[hi + 1:]
    if len(core) == 1:
        out = list(head) + [(core[0][0], core[0][1] * k)] + list(tail)
    elif core[0][0] == core[-1][0]:
        # core = g^e1 ... g^e2 with e1 + e2 != 0: glue the seams
        g, e1 = core[0]
        _, e2 = core[-1]
        middle = core[1:-1]
        body = [(g, e1)] + middle
        for _ in range(k - 1):
            body.append((g, e2 + e1))
            body.extend(middle)
        body.append((g, e2))
        out = list(head) + body + list(tail)
    else:
        out = list(head) + core * k + list(tail)
    return Word(w.alphabet, tuple(out))


def conjugate(g: Word, h: Word) -> Word:
    """``h^-1 g h``."""
    return product((invert(h), g, h), g.alphabet)


def _common_suffix(u: tuple, v: tuple) -> int:
    """Length of the longest common suffix (binary search; matching suffixes are nested)."""
    lo, hi = 0, min(len(u), len(v))
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if u[len(u) - mid:] == v[len(v) - mid:]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _inverse_syllables(syl: tuple) -> tuple:
    return tuple((g, -e) for g, e in reversed(syl))


def product_of_conjugates(pairs: Iterable[tuple[Word, Word]], alphabet: Alphabet) -> Word:
    """``prod conjugate(base, c)`` over ``(c, base)`` pairs.

    Neighbouring conjugators meet as ``c_i c_(i+1)^-1``; a shared suffix of
    the two cancels outright, so only the differing prefixes are walked.
    """
    out: list[tuple[int, int]] = []
    prev: tuple | None = None
    for c, base in pairs:
        if c.alphabet != alphabet or base.alphabet != alphabet:
            raise AlphabetMismatch(f"expected words over {alphabet.names}")
        cs = c.syllables
        if prev is None:
            _append_reduced(out, _inverse_syllables(cs))
        else:
            k = _common_suffix(prev, cs)
            _append_reduced(out, prev[:len(prev) - k])
            _append_reduced(out, _inverse_syllables(cs[:len(cs) - k]))
        _append_reduced(out, base.syllables)
        prev = cs
    if prev is not None:
        _append_reduced(out, prev)
    return Word(alphabet, tuple(out))


def commutator(g: Word, h: Word) -> Word:
    """``g^-1 h^-1 g h``."""
    return product((invert(g), invert(h), g, h), g.alphabet)


def substitute(w: Word, images: Mapping[str, Word], target: Alphabet | None = None) -> Word:
    """Image of ``w`` under the homomorphism sending each generator name to a word."""
    names = w.alphabet.names
    if target is None:
        if not images:
            if w.syllables:
                raise KeyError("no images given")
            return w
        target = next(iter(images.values())).alphabet
    out: list[tuple[int, int]] = []
    cache: dict[tuple[int, int], Word] = {}
    for g, e in w.syllables:
        key = (g, e)
        piece = cache.get(key)
        if piece is None:
            name = names[g]
            if name not in images:
                raise KeyError(f"no image for generator {name!r}")
            img = images[name]
            if img.alphabet != target:
                raise AlphabetMismatch(f"image of {name!r} is over {img.alphabet.names}")
            piece = cache[key] = power(img, e)
        _append_reduced(out, piece.syllables)
    return Word(target, tuple(out))


def rename(w: Word, target: Alphabet, mapping: Mapping[str, str] | None = None) -> Word:
    """Move ``w`` into ``target`` by renaming generators (identity renaming by default)."""
    names = w.alphabet.names
    mapping = mapping or {}
    return Word(target, tuple((target.index(mapping.get(names[g], names[g])), e)
                              for g, e in w.syllables))


# -- text form ------------------------------------------------------------

def format_word(w: Word) -> str:
    if not w.syllables:
        return "1"
    names = w.alphabet.names
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.syllables)


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*(?:_-?\d+)?)|(?P<int>-?\d+)|(?P<sym>[\^\[\](),]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse ``"x y^-2 x^3"``; brackets ``[u,v]`` (commutator) and parentheses are accepted.

    ``"1"`` and the empty string denote the identity.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(value: str | None = None) -> tuple[str, str]:
        nonlocal pos
        tok = peek()
        if tok is None or (value is not None and tok[1] != value):
            raise WordParseError(f"expected {value or 'token'} in {text!r}")
        pos += 1
        return tok

    def expr(stop: tuple[str, ...]) -> Word:
        parts = []
        while True:
            tok = peek()
            if tok is None or (tok[0] == "sym" and tok[1] in stop):
                break
            parts.append(factor())
        return product(parts, alphabet)

    def factor() -> Word:
        kind, val = take()
        if kind == "name":
            if val not in alphabet:
                raise WordParseError(f"unknown generator {val!r} in {text!r}")
            base = alphabet.gen(val)
        elif kind == "int" and val == "1":
            base = alphabet.identity()
        elif kind == "sym" and val == "(":
            base = expr((")",))
            take(")")
        elif kind == "sym" and val == "[":
            u = expr((",",))
            take(",")
            v = expr(("]",))
            take("]")
            base = commutator(u, v)
        else:
            raise WordParseError(f"unexpected {val!r} in {text!r}")
        tok = peek()
        if tok is not None and tok == ("sym", "^"):
            take("^")
            k, e = take()
            if k != "int":
                raise WordParseError(f"bad exponent {e!r} in {text!r}")
            base = power(base, int(e))
        return base

    w = expr(())
    if pos != len(tokens):
        raise WordParseError(f"trailing input in {text!r}")
    return w
