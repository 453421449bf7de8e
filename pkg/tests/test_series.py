from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import S, nonzero_int, series_st
from tripow.errors import (
    CompositionDomainError,
    DegenerateHError,
    NonInvertibleSeriesError,
    NonUnitBaseError,
    NotCompositionallyInvertibleError,
    OrderMismatchError,
    TruncationExceededError,
)
from tripow.series import (
    Series,
    coeff_deriv_at_zero,
    comp_inverse,
    exp_series,
    iterate,
    log_series,
    pow_int,
    pow_rat,
    series_compose,
    series_derive,
    series_mul,
    series_recip,
    solve_omega,
)


# --- independent oracles ------------------------------------------------

def naive_compose(g, f):
    """sum_i g_i f^i with f^i by repeated multiplication (no Horner)."""
    N = g.order
    out = [F(0)] * (N + 1)
    power = Series.constant(1, N)
    for gi in g:
        for j in range(N + 1):
            out[j] += gi * power[j]
        power = series_mul(power, f)
    return Series(tuple(out))


def binomial_series(r, N):
    """(1+t)^r by generalized binomial coefficients."""
    out, c = [], F(1)
    for n in range(N + 1):
        out.append(c)
        c = c * (r - n) / (n + 1)
    return Series(tuple(out))


# --- spec examples ------------------------------------------------------

def test_mul_examples():
    assert series_mul(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)
    assert series_mul(S(0, 1, 0), S(0, 1, 0)) == S(0, 0, 1)
    # hand convolution: 1 + (2-1) t + (3-2) t^2
    assert series_mul(S(1, 2, 3), S(1, -1, 0)) == S(1, 1, 1)


def test_mul_order_mismatch():
    with pytest.raises(OrderMismatchError):
        series_mul(S(1, 1), S(1, 1, 1))


def test_recip_examples():
    assert series_recip(S(1, -1, 0, 0)) == S(1, 1, 1, 1)
    assert series_recip(S(1, 0, 0, 0)) == S(1, 0, 0, 0)
    assert series_recip(S(1, 1, 0, 0)) == S(1, -1, 1, -1)
    with pytest.raises(NonInvertibleSeriesError):
        series_recip(S(0, 1, 0))


def test_compose_examples():
    geo = S(0, 1, 1, 1)
    assert series_compose(geo, geo) == S(0, 1, 2, 4)
    g = S(2, -1, 3, 5)
    assert series_compose(g, Series.t(3)) == g
    assert series_compose(S(0, 0, 1, 0, 0), S(0, 1, 1, 0, 0)) == S(0, 0, 1, 2, 1)
    with pytest.raises(CompositionDomainError):
        series_compose(g, S(1, 1, 0, 0))


def test_derive_examples():
    assert series_derive(S(0, 0, 1)) == S(0, 2)
    assert series_derive(S(1, 0, 0)) == S(0, 0)
    assert series_derive(S(0, 1, 1, 1)) == S(1, 2, 3)


def test_coeff_deriv_at_zero():
    for n in range(6):
        assert coeff_deriv_at_zero(Series.of([0] * n + [1], 6), n) == factorial(n)
    assert coeff_deriv_at_zero(S(0, 1, 1, 1), 3) == 6
    assert coeff_deriv_at_zero(S(F(7, 3), 1), 0) == F(7, 3)
    with pytest.raises(TruncationExceededError):
        coeff_deriv_at_zero(S(0, 1), 2)


def test_comp_inverse_examples():
    psi = comp_inverse(S(0, 1, 1, 1))
    assert psi == S(0, 1, -1, 1)
    assert series_compose(S(0, 1, 1, 1), psi) == Series.t(3)
    assert comp_inverse(Series.t(4)) == Series.t(4)
    assert comp_inverse(S(0, 2, 0, 0)) == S(0, F(1, 2), 0, 0)
    with pytest.raises(NotCompositionallyInvertibleError):
        comp_inverse(S(0, 0, 1))
    with pytest.raises(NotCompositionallyInvertibleError):
        comp_inverse(S(1, 1, 0))


def test_iterate_examples():
    phi = S(0, 2, 1, 0, 0)
    assert iterate(phi, 0) == Series.t(4)
    assert iterate(phi, 2) == S(0, 4, 6, 4, 1)
    assert iterate(S(0, 1, 1, 1), -1) == S(0, 1, -1, 1)
    with pytest.raises(NotCompositionallyInvertibleError):
        iterate(S(0, 0, 1), -1)


def test_geometric_iterates_in_closed_form():
    # t/(1-bt) iterated s times is t/(1-bst)
    N = 6
    for beta in (1, 2, F(-1, 3)):
        phi = Series.of([0] + [F(beta) ** (i - 1) for i in range(1, N + 1)], N)
        for s in range(-3, 4):
            want = Series.of([0] + [F(beta * s) ** (i - 1) for i in range(1, N + 1)], N)
            assert iterate(phi, s) == want


def test_solve_omega_examples():
    assert solve_omega(Series.constant(1, 5)) == Series.t(5)
    N = 7
    w = solve_omega(S(1, 1, *[0] * (N - 1)))
    assert w == Series.of([0] + [1] * N, N)
    expo = Series.of([F(1, factorial(n)) for n in range(4)], 3)
    assert solve_omega(expo) == S(0, 1, 1, F(3, 2))
    with pytest.raises(DegenerateHError):
        solve_omega(S(0, 1, 1))


def test_solve_omega_tree_function_cayley():
    # tree function: [t^n] w = n^(n-1)/n!
    N = 10
    expo = Series.of([F(1, factorial(n)) for n in range(N + 1)], N)
    w = solve_omega(expo)
    assert list(w) == [0] + [F(n ** (n - 1), factorial(n)) for n in range(1, N + 1)]


def test_pow_rat_examples():
    assert pow_rat(S(1, 1, 0), F(1, 2)) == S(1, F(1, 2), F(-1, 8))
    assert pow_rat(S(1, 3, -2), 0) == S(1, 0, 0)
    assert pow_rat(S(1, 1, 0), 2) == S(1, 2, 1)
    with pytest.raises(NonUnitBaseError):
        pow_rat(S(2, 1, 0), F(1, 2))


@pytest.mark.parametrize("r", [F(1, 2), F(-1, 3), F(5, 2), F(-7, 4), 3, -2])
def test_pow_rat_matches_binomial_series(r):
    assert pow_rat(S(1, 1, *[0] * 7), r) == binomial_series(F(r), 8)


def test_log_exp_domains():
    with pytest.raises(NonUnitBaseError):
        log_series(S(2, 1))
    with pytest.raises(CompositionDomainError):
        exp_series(S(1, 1))
    f = S(1, 2, -1, 3, 0, 5)
    assert exp_series(log_series(f)) == f


# --- properties ---------------------------------------------------------

N = 5


@given(series_st(N), series_st(N), series_st(N))
def test_mul_commutative_associative(a, b, c):
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))


@given(series_st(N, const=nonzero_int))
def test_recip_law(f):
    assert series_mul(f, series_recip(f)) == Series.constant(1, N)


@given(series_st(N), series_st(N, const=0))
def test_compose_matches_naive(g, f):
    assert series_compose(g, f) == naive_compose(g, f)


@given(series_st(N), series_st(N, const=0), series_st(N, const=0))
def test_compose_associative(a, b, c):
    assert series_compose(series_compose(a, b), c) == series_compose(a, series_compose(b, c))


@given(series_st(N, const=0, linear_nonzero=True))
def test_inverse_law(phi):
    psi = comp_inverse(phi)
    t = Series.t(N)
    assert series_compose(phi, psi) == t
    assert series_compose(psi, phi) == t


@settings(max_examples=30, deadline=None)
@given(series_st(4, const=0, linear_nonzero=True),
       st.integers(-4, 4), st.integers(-4, 4))
def test_iteration_semigroup(phi, s1, s2):
    assert iterate(phi, s1 + s2) == series_compose(iterate(phi, s1), iterate(phi, s2))


@given(series_st(N, const=nonzero_int))
def test_omega_fixed_point(h):
    w = solve_omega(h)
    t = Series.t(N)
    assert w == series_mul(t, series_compose(h, w))
    assert w[0] == 0 and w[1] == h[0]


@given(series_st(N, const=1), st.integers(0, 5))
def test_pow_rat_integer_consistency(f, p):
    product = Series.constant(1, N)
    for _ in range(p):
        product = series_mul(product, f)
    assert pow_rat(f, p) == product
    assert pow_int(f, p) == product


@settings(deadline=None)
@given(series_st(N, const=0, linear_nonzero=True), series_st(N, const=nonzero_int))
def test_inverse_of_phi_after_omega(phi, h):
    # (phi o w)^<-1> = psi / (h o psi) with psi = phi^<-1>
    psi = comp_inverse(phi)
    lhs = comp_inverse(series_compose(phi, solve_omega(h)))
    rhs = series_mul(psi, series_recip(series_compose(h, psi)))
    assert lhs == rhs


def test_series_operators_and_immutability():
    f = S(1, 2, 3)
    assert f + 1 == S(2, 2, 3)
    assert 1 - f == S(0, -2, -3)
    assert (f * 2) / 2 == f
    assert f ** -1 == series_recip(f)
    assert f(S(0, 1, 0)) == f
    with pytest.raises(Exception):
        f.coeffs = ()
