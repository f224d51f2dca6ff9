"""Permutations of ``{0, ..., n}`` and evaluation of words on them.

Composition follows the convention ``(a * b)(i) = a(b(i))``: the right
factor acts first, so ``[2,0,1] * [1,0,2] == [0,2,1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, lcm
from typing import Iterable, Mapping, Sequence

from ..presentations import Presentation
from ..words import Word


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{list(self.images)} is not a bijection of 0..{len(self.images) - 1}")

    @classmethod
    def of(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(int(i) for i in images))

    @classmethod
    def identity(cls, n: int) -> Permutation:
        """Identity of ``S_{n+1}``."""
        return cls(tuple(range(n + 1)))

    @classmethod
    def full_cycle(cls, n: int) -> Permutation:
        """``[1, 2, ..., n, 0]``."""
        return cls(tuple(range(1, n + 1)) + (0,))

    @property
    def degree(self) -> int:
        """``n`` for a permutation of ``{0..n}``."""
        return len(self.images) - 1

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        return perm_compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, a in enumerate(self.images):
            inv[a] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        out = list(range(len(self.images)))
        for cyc in self.cycles():
            L = len(cyc)
            for j, i in enumerate(cyc):
                out[i] = cyc[(j + k) % L]
        return Permutation(tuple(out))

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(cyc)
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return lcm(*self.cycle_type())

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def perm_compose(a: Permutation, b: Permutation) -> Permutation:
    """``i -> a(b(i))``."""
    if len(a.images) != len(b.images):
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    ai = a.images
    return Permutation(tuple(ai[j] for j in b.images))


def symmetric_group_order(n: int) -> int:
    return factorial(n + 1)


@dataclass(frozen=True)
class PermAssignment:
    """Generator name -> permutation, all of the same degree."""

    degree: int
    images: Mapping[str, Permutation]

    def __post_init__(self) -> None:
        for name, perm in self.images.items():
            if perm.degree != self.degree:
                raise DegreeMismatch(f"{name} has degree {perm.degree}, expected {self.degree}")

    @classmethod
    def of(cls, **images: Sequence[int]) -> PermAssignment:
        perms = {k: v if isinstance(v, Permutation) else Permutation.of(v) for k, v in images.items()}
        degree = next(iter(perms.values())).degree
        return cls(degree, perms)

    def __getitem__(self, name: str) -> Permutation:
        return self.images[name]


def evaluate(w: Word, asg: PermAssignment) -> Permutation:
    """Image of ``w`` under the homomorphism determined by ``asg``."""
    names = w.alphabet.names
    cur = list(range(asg.degree + 1))
    for g, e in w.syllables:
        name = names[g]
        if name not in asg.images:
            raise KeyError(f"generator {name!r} has no assigned permutation")
        p = (asg.images[name] ** e).images
        cur = [cur[j] for j in p]
    return Permutation(tuple(cur))


def evaluate_map(images: Mapping[str, Word], asg: PermAssignment) -> PermAssignment:
    """Pull an assignment back along a substitution map."""
    return PermAssignment(asg.degree, {k: evaluate(v, asg) for k, v in images.items()})


def is_homomorphism(pres: Presentation, asg: PermAssignment) -> bool:
    missing = set(pres.alphabet.names) - set(asg.images)
    if missing:
        raise KeyError(f"unassigned generators {sorted(missing)}")
    return all(evaluate(r, asg).is_identity() for r in pres.relators)
