from fractions import Fraction as F
from math import comb, factorial

import pytest
from hypothesis import given, settings

from conftest import S, series_st
from tripow.bell import (
    PolyZ,
    bell_partial,
    bell_triangle,
    falling,
    fubini_poly,
    stirling2,
    touchard_poly,
)
from tripow.errors import BellIndexError, CompositionDomainError, TruncationExceededError
from tripow.presets import check_exp_27, check_resolvent_28
from tripow.series import Series, pow_int


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def bell_by_partitions(phi, n, k):
    """Sum over set partitions of {1..n} into k blocks of prod |B|! phi_|B|."""
    total = F(0)
    for part in set_partitions(list(range(n))):
        if len(part) == k:
            term = F(1)
            for block in part:
                term *= factorial(len(block)) * phi[len(block)]
            total += term
    return total


def stirling_explicit(n, k):
    return sum((-1) ** (k - j) * comb(k, j) * j ** n for j in range(k + 1)) // factorial(k)


EXPM1 = Series.of([0] + [F(1, factorial(i)) for i in range(1, 11)], 10)


def test_bell_partial_examples():
    t = Series.t(6)
    for n in range(7):
        for k in range(n + 1):
            assert bell_partial(t, n, k) == (1 if n == k else 0)
    assert bell_partial(EXPM1, 4, 2) == 7
    assert bell_partial(S(0, 1, 1, 1), 3, 1) == 6


def test_bell_partial_errors():
    with pytest.raises(CompositionDomainError):
        bell_partial(S(1, 1, 0), 2, 1)
    with pytest.raises(TruncationExceededError):
        bell_partial(S(0, 1, 0), 3, 1)
    with pytest.raises(BellIndexError):
        bell_partial(S(0, 1, 0), 1, 2)


@pytest.mark.parametrize("coeffs", [(0, 1, 2, -1, 3, 1, -2), (0, -2, 0, 1, 1, -3, 2), (0, F(1, 2), 3, 0, -1, 2, 1)])
def test_bell_partial_matches_set_partition_sum(coeffs):
    phi = Series.of(coeffs, 6)
    for n in range(7):
        for k in range(n + 1):
            assert bell_partial(phi, n, k) == bell_by_partitions(phi, n, k)


def test_bell_triangle_agrees_with_bell_partial():
    phi = S(0, 2, -1, 3, 1, 0)
    tri = bell_triangle(phi)
    for n in range(6):
        for k in range(n + 1):
            assert tri[n][k] == bell_partial(phi, n, k)


def test_bell_of_expm1_is_stirling():
    for n in range(11):
        for k in range(n + 1):
            assert bell_partial(EXPM1, n, k) == stirling2(n, k)


@settings(deadline=None)
@given(series_st(7, const=0))
def test_generating_function_identity(phi):
    N = 7
    for k in range(N + 1):
        egf = Series.of([0] * k + [bell_partial(phi, n, k) / factorial(n) for n in range(k, N + 1)], N)
        assert egf == pow_int(phi, k) / factorial(k)


@given(series_st(6, const=0))
def test_first_and_last_bell(phi):
    for n in range(1, 7):
        assert bell_partial(phi, n, 1) == factorial(n) * phi[n]
        assert bell_partial(phi, n, n) == phi[1] ** n


def test_stirling2():
    assert all(stirling2(n, n) == 1 for n in range(12))
    assert stirling2(3, 0) == 0
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7
    for n in range(40):  # past the default table size
        for k in range(n + 1):
            assert stirling2(n, k) == stirling_explicit(n, k)
    with pytest.raises(BellIndexError):
        stirling2(2, 3)
    with pytest.raises(BellIndexError):
        stirling2(-1, 0)


def test_touchard_and_fubini():
    assert touchard_poly(0) == PolyZ((1,))
    assert touchard_poly(1) == PolyZ((0, 1))
    assert touchard_poly(3) == PolyZ((0, 1, 3, 1))
    assert fubini_poly(0) == PolyZ((1,))
    assert fubini_poly(1) == PolyZ((0, 1))
    assert fubini_poly(3) == PolyZ((0, 1, 6, 6))
    # ordered Bell numbers 1, 1, 3, 13, 75, 541
    assert [fubini_poly(n)(1) for n in range(6)] == [1, 1, 3, 13, 75, 541]
    assert [touchard_poly(n)(1) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_polyz_trims_and_evaluates_on_series():
    p = PolyZ((1, 2, 0, 0))
    assert p.degree == 1
    z = Series.t(3)
    assert p(z) == S(1, 2, 0, 0)


def test_falling():
    assert falling(F(7, 3), 0) == 1
    assert falling(5, 2) == 20
    assert falling(F(1, 2), 2) == F(-1, 4)
    assert falling(3, 5) == 0


@pytest.mark.parametrize("m", range(6))
def test_dobinski_identity(m):
    assert check_exp_27(m, 10, 10).passed
    assert check_exp_27(m, 6, 12).passed


@pytest.mark.parametrize("m", range(6))
def test_geometric_moment_identity(m):
    assert check_resolvent_28(m, 10).passed
