import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dqsym.bases import (
    ExpansionContext,
    expand,
    expand_F,
    expand_G,
    expand_M,
    reconstruct,
    to_G_expansion,
    xf_product,
)
from dqsym.bicomp import ZERO, GenBicomp, enumerate_by_size, enumerate_gb, gb, x, y
from dqsym.polyring import GExpansion, Polynomial

X = [None] + [Polynomial.variable(x(i)) for i in range(1, 7)]
Y = [None] + [Polynomial.variable(y(i)) for i in range(1, 7)]


def brute_M(alpha, n):
    out = Polynomial()
    for pos in itertools.combinations(range(1, n + 1), len(alpha)):
        term = Polynomial.one()
        for i, (t, b) in zip(pos, alpha):
            for _ in range(t):
                term = term * X[i]
            for _ in range(b):
                term = term * Y[i]
        out = out + term
    return out


# --- M and F ---------------------------------------------------------------


def test_M_examples():
    assert expand_M(gb("1;1"), 2) == X[1] * Y[1] + X[2] * Y[2]
    assert expand_M(gb("1,0;0,1"), 3) == X[1] * Y[2] + X[1] * Y[3] + X[2] * Y[3]
    assert expand_M(gb("1,1;1,1"), 1) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_M_matches_brute_force(n):
    for alpha in enumerate_by_size(3, 3, bicompositions_only=True):
        assert expand_M(alpha, n) == brute_M(alpha, n)


def test_M_rejects_zero_columns():
    with pytest.raises(ValueError):
        expand_M(gb("1,0,1;0,0,0"), 3)
    with pytest.raises(ValueError):
        expand_F(gb("1,0,1;0,0,0"), 3)


F22_TERMS = [
    "2;2", "2,0;0,2", "1,1;0,2", "1,1,0;0,0,2",
    "2,0;1,1", "2,0,0;0,1,1", "1,1,0;0,1,1", "1,1,0,0;0,0,1,1",
]


@pytest.mark.parametrize("n", [4, 5])
def test_F22_is_sum_of_eight_M(n):
    expected = Polynomial()
    for t in F22_TERMS:
        expected = expected + brute_M(gb(t), n)
    assert expand_F(gb("2;2"), n) == expected


def test_F_examples():
    assert expand_F(gb("1;0"), 3) == X[1] + X[2] + X[3]
    assert expand_F(gb("1;1"), 2) == X[1] * Y[1] + X[2] * Y[2] + X[1] * Y[2]
    assert expand_F(ZERO, 3) == Polynomial.one()
    assert expand_G(ZERO, 3) == Polynomial.one()


def _sh(p):
    return p.shift()


def f_recursion_rhs(alpha, n):
    """Right side of the first-column recursion for F in n variables, or None if no case applies."""
    a, b = alpha[0]
    rest = GenBicomp(alpha[1:])
    tail_shift = _sh(expand_F(alpha, n - 1))
    if a >= 1 and a + b >= 2:
        return X[1] * expand_F(GenBicomp(((a - 1, b),) + alpha[1:]), n) + tail_shift
    if a == 1 and b == 0:
        return X[1] * _sh(expand_F(rest, n - 1)) + tail_shift
    if a == 0 and b >= 2:
        return Y[1] * expand_F(GenBicomp(((0, b - 1),) + alpha[1:]), n) + tail_shift
    if a == 0 and b == 1:
        return Y[1] * _sh(expand_F(rest, n - 1)) + tail_shift
    return None


F_RECURSION_CASES = [al for s in range(1, 5) for al in enumerate_by_size(s, s, bicompositions_only=True)]


@pytest.mark.parametrize("alpha", F_RECURSION_CASES, ids=str)
def test_F_first_column_recursions(alpha):
    rhs = f_recursion_rhs(alpha, 4)
    assert rhs is not None
    assert expand_F(alpha, 4) == rhs


# --- G ---------------------------------------------------------------------


def test_G_examples():
    assert expand_G(gb("1;0"), 3) == X[1] + X[2] + X[3]
    assert expand_G(gb("0,1;0,0"), 3) == X[2] + X[3]
    assert expand_G(gb("0,0;0,2"), 2) == Y[2] * Y[2]


def test_G_uses_last_zero_column():
    # G(0 1 0 1;0 0 0 0) peels the zero column at position 3 first
    e = gb("0,1,0,1;0,0,0,0")
    n = 4
    assert expand_G(e, n) == expand_G(gb("0,1,1;0,0,0"), n) - X[3] * expand_G(gb("0,1;0,0"), n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_leading_monomial(n):
    for size in range(0, 5):
        for e in enumerate_by_size(size, n):
            assert expand_G(e, n).leading_term() == (e, 1)


@pytest.mark.parametrize("beta", [b for s in range(1, 5) for b in enumerate_by_size(s, 3)], ids=str)
def test_leading_zero_column_is_a_shift(beta):
    n = 4
    e = GenBicomp(((0, 0),) + tuple(beta))
    assert expand_G(e, n) == expand_G(beta, n - 1).shift()


@pytest.mark.parametrize("e", [g for s in range(1, 5) for g in enumerate_by_size(s, 3)
                               if g[0] != (0, 0)], ids=str)
def test_first_column_peeling(e):
    # G_e minus x1 (or y1) times G with that entry lowered involves no x1, y1
    n = 4
    a, b = e[0]
    if a > 0:
        lower, var = (a - 1, b), X[1]
    else:
        lower, var = (a, b - 1), Y[1]
    rest = expand_G(e, n) - var * expand_G(GenBicomp((lower,) + e[1:]), n)
    assert all(m[0] == (0, 0) for m in rest)


# --- change of basis -------------------------------------------------------


def test_to_G_examples():
    assert to_G_expansion(X[1], 2) == GExpansion({gb("1;0"): 1, gb("0,1;0,0"): -1})
    assert to_G_expansion(Polynomial(), 3) == GExpansion()
    e = gb("0,2,0,1;1,0,0,0")
    assert to_G_expansion(expand_G(e, 4), 4) == GExpansion({e: 1})


def test_to_G_rejects_long_monomials():
    with pytest.raises(ValueError):
        to_G_expansion(X[3], 2)


@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 3), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_G_round_trip_in_component(n, a, b, rnd):
    monos = enumerate_gb(a, b, n)
    support = rnd.sample(monos, min(len(monos), rnd.randint(1, 5)))
    p = Polynomial({m: rnd.randint(-4, 4) for m in support})
    assert reconstruct(to_G_expansion(p, n), n) == p


def test_F_and_M_have_integral_G_coefficients():
    for alpha in enumerate_by_size(3, 3, bicompositions_only=True):
        for family in ("M", "F"):
            exp = to_G_expansion(expand(family, alpha, 3), 3)
            assert all(isinstance(c, int) for c in exp.terms.values())


def test_F_is_single_G_term():
    for alpha in enumerate_by_size(3, 3, bicompositions_only=True):
        assert to_G_expansion(expand_F(alpha, 4), 4) == GExpansion({alpha: 1})


def test_expand_dispatch():
    assert expand("f", gb("1;0"), 2) == expand_F(gb("1;0"), 2)
    with pytest.raises(ValueError):
        expand("Q", gb("1;0"), 2)


def test_private_context_agrees_with_default():
    ctx = ExpansionContext()
    e = gb("1,0,1;0,0,1")
    assert expand_G(e, 4, ctx) == expand_G(e, 4)
    ctx.clear()
    assert expand_G(e, 4, ctx) == expand_G(e, 4)


def test_xf_product():
    assert xf_product(gb("0;1"), gb("1;0"), 2) == Y[1] * (X[1] + X[2])
    assert xf_product(gb("0,0,1;0,0,0"), gb("1;0"), 2) == 0
