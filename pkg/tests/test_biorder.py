from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gtorsion.biorder import (ContextMismatch, KContext, KElement, Ordering, QuadExt,
                              XWord, eigenbasis, k_compare, k_multiply, phi, r_map,
                              rho, to_xword, word_sign)
from gtorsion.presentations import (STD, h_presentation_window, h_window_to_std,
                                    surgery_group_std)
from gtorsion.words import Alphabet, commutator, conjugate, substitute

from conftest import std_words, words

a, b, t = STD.gens()
fractions = st.fractions(min_value=-50, max_value=50, max_denominator=40)
contexts = st.builds(KContext, st.integers(1, 4), st.integers(1, 4))


def quad(D):
    return st.builds(lambda u, v: QuadExt(u, v, D), fractions, fractions)


@st.composite
def k_elements(draw, ctx=None):
    ctx = ctx or draw(contexts)
    u, v = draw(fractions), draw(fractions)
    s, r = draw(fractions), draw(fractions)
    vec = (QuadExt(u, s, ctx.D), QuadExt(v, r, ctx.D))
    return KElement(ctx, vec, draw(st.integers(-3, 3)))


# -- quadratic extension ---------------------------------------------------------

def test_quadext_folds_squares():
    assert QuadExt(1, 2, 9) == QuadExt(7, 0, 9)
    assert QuadExt.sqrt(25).b == 0
    r5 = QuadExt.sqrt(5)
    assert r5 * r5 == 5
    assert (r5 + 1) * (r5 - 1) == 4
    assert (r5 + 1) / (r5 + 1) == 1
    with pytest.raises(ContextMismatch):
        r5 + QuadExt.sqrt(13)
    with pytest.raises(ZeroDivisionError):
        QuadExt(0, 0, 5).inverse()


@given(st.sampled_from([2, 5, 9, 13, 17, 21, 25, 97]), fractions, fractions)
def test_quadext_sign_matches_50_digits(D, u, v):
    with mpmath.workdps(50):
        val = mpmath.mpf(u.numerator) / u.denominator + mpmath.mpf(v.numerator) / v.denominator * mpmath.sqrt(D)
        expected = 0 if val == 0 else (1 if val > 0 else -1)
    assert QuadExt(u, v, D).sign() == expected


@given(quad(13), quad(13), quad(13))
def test_quadext_field_laws(u, v, w):
    assert (u + v) * w == u * w + v * w
    assert u * v == v * u
    if u.sign():
        assert u * u.inverse() == 1
    assert (u < v) + (u == v) + (v < u) == 1


# -- K and phi --------------------------------------------------------------------

def test_k_multiply_examples():
    ctx = KContext(2, 3)
    e = KElement.identity(ctx)
    g = KElement(ctx, (0, 1), 0)
    s = KElement(ctx, (0, 0), 1)
    assert k_multiply(e, g) == g == k_multiply(g, e)
    assert k_multiply(g, s) == KElement(ctx, (0, 1), 1)
    assert k_multiply(s, g) == KElement(ctx, (Fraction(-1, 3), 1 + Fraction(1, 6)), 1)
    with pytest.raises(ContextMismatch):
        k_multiply(g, KElement.identity(KContext(1, 1)))


def test_rho_examples():
    assert rho(STD.word("t^3 b^-1")) == 3
    assert rho(a) == 0


@given(std_words, std_words)
def test_rho_additive(u, v):
    assert rho(u * v) == rho(u) + rho(v)


def test_to_xword_examples():
    assert to_xword(b) == XWord(((0, 1),), 0)
    assert to_xword(STD.word("t^-1 b t")) == XWord(((-1, 1),), 0)
    assert to_xword(STD.word("t b^2 t^-3")) == XWord(((1, 2),), -2)
    with pytest.raises(ValueError):
        to_xword(a)


def test_r_map_examples():
    ctx = KContext(2, 1)
    assert r_map(XWord(((0, 1),)), ctx) == (0, 1)
    assert r_map(XWord(((0, 1), (0, -1))), ctx) == (0, 0)
    pq = 2
    for i in range(-3, 4):
        char = XWord(((i + 1, pq), (i, -(2 * pq + 1)), (i - 1, pq)))
        assert r_map(char, ctx) == (0, 0)
    with pytest.raises(ValueError):
        r_map(XWord(((0, 1),), 1), ctx)


def test_phi_examples():
    ctx = KContext(1, 1)
    assert phi(t, ctx) == KElement(ctx, (0, 0), 1)
    img = phi(b, ctx)
    assert img == KElement(ctx, (0, 1), 0)
    assert img.eigen == (1, -1)
    assert phi(commutator(b, conjugate(b, t)), ctx).is_identity()


def test_eigenbasis():
    e = eigenbasis(1, 2)
    assert (e.lam_plus, e.lam_minus) == (2, Fraction(1, 2))
    assert all(c.b == 0 for c in e.v_plus + e.v_minus)
    for p in range(1, 7):
        for q in range(1, 7):
            e = eigenbasis(p, q)
            A = KContext(p, q).A
            assert e.lam_plus * e.lam_minus == 1
            for lam, V in ((e.lam_plus, e.v_plus), (e.lam_minus, e.v_minus)):
                AV = (V[0] * A.a + V[1] * A.b, V[0] * A.c + V[1] * A.d)
                assert AV == (lam * V[0], lam * V[1])
            vp, vm = e.v_plus, e.v_minus
            assert (vp[0] - vm[0], vp[1] - vm[1]) == (0, 1)


def test_compare_examples():
    ctx = KContext(1, 1)
    e = KElement.identity(ctx)
    assert k_compare(phi(t, ctx), phi(b, ctx)) is Ordering.GREATER
    assert k_compare(phi(b, ctx), e) is Ordering.GREATER
    assert k_compare(e, e) is Ordering.EQUAL
    assert word_sign(STD.identity(), ctx) is Ordering.EQUAL
    assert word_sign(t, ctx) is Ordering.GREATER
    assert word_sign(STD.word("b^-1"), ctx) is Ordering.LESS
    assert word_sign(STD.word("t^-1"), ctx) is Ordering.LESS


@given(contexts, std_words, std_words)
def test_phi_is_a_homomorphism(ctx, u, v):
    assert phi(u * v, ctx) == k_multiply(phi(u, ctx), phi(v, ctx))


@pytest.mark.parametrize("p", [1, 2, 3])
@pytest.mark.parametrize("q", [1, 2, 5])
def test_phi_kills_relators(p, q):
    ctx = KContext(p, q)
    for N in (1, 2):
        H = h_presentation_window((p, q), N)
        f = h_window_to_std(N)
        for r in H.relators:
            assert phi(substitute(r, f, STD), ctx).is_identity()
    for r in surgery_group_std((p, q)).relators:
        assert phi(r, ctx).is_identity()


@given(st.data())
def test_bi_invariance(data):
    ctx = data.draw(contexts)
    u, v, w = (data.draw(words(STD, 5, 2)) for _ in range(3))
    fu, fv, fw = phi(u, ctx), phi(v, ctx), phi(w, ctx)
    order = k_compare(fu, fv)
    assert k_compare(fw * fu, fw * fv) is order
    assert k_compare(fu * fw, fv * fw) is order


@given(st.data())
def test_total_order_axioms(data):
    ctx = data.draw(contexts)
    e1, e2, e3 = (data.draw(k_elements(ctx)) for _ in range(3))
    assert k_compare(e1, e1) is Ordering.EQUAL
    assert k_compare(e1, e2) is Ordering(-k_compare(e2, e1))
    if k_compare(e1, e2) is Ordering.EQUAL:
        assert e1 == e2
    if k_compare(e1, e2) is Ordering.LESS and k_compare(e2, e3) is Ordering.LESS:
        assert k_compare(e1, e3) is Ordering.LESS


@given(st.data())
def test_coordinate_change_round_trip(data):
    ctx = data.draw(contexts)
    el = data.draw(k_elements(ctx))
    back = KElement.from_eigen(ctx, el.eigen, el.level)
    assert back == el
    assert back.eigen == el.eigen
    assert ctx.to_eigen(ctx.from_eigen(el.eigen)) == el.eigen


@given(st.integers(1, 4), st.integers(1, 4), fractions.filter(lambda f: f > 0),
       fractions.filter(lambda f: f > 0), st.data())
def test_positive_rescaling_keeps_verdicts(p, q, s1, s2, data):
    plain, scaled = KContext(p, q), KContext(p, q, s1, s2)
    u, v = data.draw(std_words), data.draw(std_words)
    assert k_compare(phi(u, plain), phi(v, plain)) is k_compare(phi(u, scaled), phi(v, scaled))


def test_inverse_element():
    ctx = KContext(2, 2)
    g = phi(STD.word("t^2 b t^-1 a"), ctx)
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()


def test_window_alphabet_names():
    assert h_presentation_window((1, 1), 2).alphabet == Alphabet.of("tau", "x_-2", "x_-1", "x_0", "x_1", "x_2")


def test_parameters_must_be_positive():
    with pytest.raises(ValueError):
        KContext(-1, 2)
