import itertools

import pytest
import sympy
from hypothesis import given

from gtorsion.classify import (AlexanderPoly, KnotRelation, OneTorus, SeifertNoTori,
                               SeifertPiece, TwoTori, alexander, canonicalize,
                               factor_pairs, homeo_class, jsj, knot_relation, m_homeo,
                               theorem1_pairs, zero_surgery_homeo)
from gtorsion.presentations import knot_group_lin

from conftest import nonzero

T = sympy.Symbol("T")


def fox_alexander(p, q):
    """Alexander polynomial from Fox derivatives of the knot group presentation.

    ``a, b`` die in the abelianization and ``t`` maps to ``T``; dropping the
    ``t`` column leaves a square matrix whose determinant is the polynomial
    up to a unit.
    """
    lin = knot_group_lin((p, q))
    names = lin.alphabet.names
    value = {"a": 1, "b": 1, "t": T}
    rows = []
    for r in lin.relators:
        row = []
        for g in ("a", "b"):
            total, prefix = 0, 1
            for idx, s in r.letters():
                name = names[idx]
                if s > 0:
                    if name == g:
                        total += prefix
                    prefix *= value[name]
                else:
                    prefix /= value[name]
                    if name == g:
                        total -= prefix
            row.append(total)
        rows.append(row)
    return normalize(sympy.Matrix(rows).det())


def normalize(expr):
    poly = sympy.Poly(sympy.expand(sympy.cancel(expr * T ** 50)), T)
    coeffs = poly.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if sum(coeffs) < 0:
        coeffs = [-c for c in coeffs]
    return [int(c) for c in coeffs]


@pytest.mark.parametrize("p,q", [(p, q) for p, q in itertools.product([-3, -2, -1, 1, 2, 3], repeat=2)])
def test_alexander_matches_fox_calculus(p, q):
    assert normalize(sum(c * T ** i for i, c in enumerate(alexander(p, q).coefficients()))) == fox_alexander(p, q)


def test_alexander_examples():
    assert alexander(1, 1).coefficients() == [-1, 3, -1]
    assert alexander(1, -1).coefficients() == [1, -1, 1]
    with pytest.raises(ValueError):
        alexander(0, 2)
    with pytest.raises(ValueError):
        AlexanderPoly(1, 2, 3)


@given(nonzero, nonzero)
def test_alexander_normalized(p, q):
    poly = alexander(p, q)
    assert poly.at(1) == 1
    assert poly.c0 == poly.c2


def test_jsj_examples():
    assert jsj(1, -1) == SeifertNoTori()
    assert jsj(-1, 1) == SeifertNoTori()
    assert jsj(3, 1) == OneTorus(SeifertPiece(3))
    assert jsj(1, -4) == OneTorus(SeifertPiece(-4))
    assert jsj(3, 2) == TwoTori(frozenset({SeifertPiece(3), SeifertPiece(-2)}))
    assert jsj(3, 2).to_dict() == {"kind": "TwoTori", "pieces": ["M(-2)", "M(3)"]}
    with pytest.raises(ValueError):
        SeifertPiece(0)


def pieces_match(d1, d2):
    if d1.kind != d2.kind:
        return False
    if isinstance(d1, OneTorus):
        return m_homeo(d1.piece.k, d2.piece.k)
    if isinstance(d1, TwoTori):
        k1 = sorted(abs(pc.k) for pc in d1.pieces)
        k2 = sorted(abs(pc.k) for pc in d2.pieces)
        return k1 == k2
    return True


@given(nonzero, nonzero)
def test_jsj_constant_on_classes(p, q):
    for p2, q2 in homeo_class(p, q):
        assert pieces_match(jsj(p, q), jsj(p2, q2))


def test_m_homeo():
    assert m_homeo(3, -3)
    assert m_homeo(1, -1)
    assert not m_homeo(2, 3)
    with pytest.raises(ValueError):
        m_homeo(0, 1)


def test_zero_surgery_examples():
    assert zero_surgery_homeo(2, 3, 3, 2)
    assert zero_surgery_homeo(2, 3, -2, -3)
    assert zero_surgery_homeo(2, 3, -3, -2)
    assert not zero_surgery_homeo(2, 3, 6, 1)
    with pytest.raises(ValueError):
        zero_surgery_homeo(2, 3, 0, 1)


def test_knot_relation_examples():
    assert knot_relation(1, 1, -1, -1) is KnotRelation.ISOTOPIC
    assert knot_relation(1, -1, -1, 1) is KnotRelation.MIRROR
    assert knot_relation(2, 3, 5, 7) is KnotRelation.NEITHER
    assert knot_relation(2, 3, 3, 2) is KnotRelation.MIRROR
    assert knot_relation(2, 3, -3, -2) is KnotRelation.ISOTOPIC


@given(nonzero, nonzero, nonzero, nonzero)
def test_knot_relation_implies_homeo(p, q, p2, q2):
    if knot_relation(p, q, p2, q2) is not KnotRelation.NEITHER:
        assert zero_surgery_homeo(p, q, p2, q2)
    if zero_surgery_homeo(p, q, p2, q2):
        assert alexander(p, q) == alexander(p2, q2)
        assert canonicalize(p, q) == canonicalize(p2, q2)


def test_canonicalize():
    assert canonicalize(3, 2) == (2, 3)
    assert canonicalize(-2, -3) == (2, 3)
    assert canonicalize(-1, 4) == (1, -4)
    assert canonicalize(3, -1) == (1, -3)


def classes_by_brute_force(N):
    """Group the factorizations of N into classes with explicit pairwise checks."""
    pairs = [(p, N // p) for p in range(-abs(N), abs(N) + 1) if p and N % p == 0]
    classes = []
    for pr in pairs:
        for cl in classes:
            if zero_surgery_homeo(*cl[0], *pr):
                cl.append(pr)
                break
        else:
            classes.append([pr])
    return classes


@pytest.mark.parametrize("N", [n for n in range(-12, 13) if n])
def test_factorization_pairs_count(N):
    classes = classes_by_brute_force(N)
    k = len(classes)
    pairs = theorem1_pairs(N)
    assert len(pairs) == k * (k - 1) // 2
    for u, v in pairs:
        assert u[0] * u[1] == v[0] * v[1] == N
        assert not zero_surgery_homeo(*u, *v)
        assert abs(u[0]) not in {abs(v[0]), abs(v[1])}


def test_factorization_pairs_examples():
    assert ((1, 6), (2, 3)) in theorem1_pairs(6)
    assert theorem1_pairs(1) == []
    assert ((1, 4), (2, 2)) in theorem1_pairs(4)
    assert sorted(factor_pairs(2)) == [(-2, -1), (-1, -2), (1, 2), (2, 1)]
