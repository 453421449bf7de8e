from fractions import Fraction as F
from math import comb, factorial

import pytest

from conftest import S
from tripow.bell import bell_partial, falling
from tripow.errors import PresetError
from tripow.expr import series_from_text
from tripow.matrix import TriMatrix, build_matrix, mat_power, special_power
from tripow.presets import (
    PRESET_NAMES,
    PresetId,
    check_exp_27,
    check_power_31,
    check_resolvent_28,
    check_scaling_26,
    eq25_c4_params,
    eq30_spec,
    example_matrix_25,
    example_matrix_30,
    preset_series,
)


def test_preset_series_examples():
    assert preset_series("identity_t", 3) == S(0, 1, 0, 0)
    assert preset_series("geometric(2)", 3) == S(0, 1, 2, 4)
    assert preset_series("geometric:-1/2", 3) == S(0, 1, F(-1, 2), F(1, 4))
    assert preset_series("binomial_minus_one(2)", 3) == S(0, 2, 1, 0)
    assert preset_series("binomial_minus_one(1/2)", 2) == S(0, F(1, 2), F(-1, 8))
    assert preset_series("expm1", 3) == S(0, 1, F(1, 2), F(1, 6))
    assert preset_series("log1p", 3) == S(0, 1, F(-1, 2), F(1, 3))
    assert preset_series("exp_full", 2) == S(1, 1, F(1, 2))
    assert preset_series("const_one", 2) == S(1, 0, 0)


def test_preset_id_parsing():
    assert PresetId.parse("geometric(3)") == PresetId("geometric", (3,))
    assert PresetId.parse(" geometric : -1/2 ") == PresetId("geometric", (F(-1, 2),))
    assert str(PresetId.parse("binomial_minus_one(-1/2)")) == "binomial_minus_one(-1/2)"
    assert str(PresetId.parse("expm1")) == "expm1"
    for bad in ("nope", "geometric", "expm1(2)", "geometric(1/0)", "geometric(x)",
                "binomial_minus_one(0)", "Geometric(1)"):
        with pytest.raises(PresetError):
            PresetId.parse(bad)


@pytest.mark.parametrize("text", ["identity_t", "geometric(2)", "geometric(-1/3)",
                                  "binomial_minus_one(3)", "binomial_minus_one(-1/2)",
                                  "expm1", "log1p", "exp_full", "const_one"])
def test_preset_round_trips_through_expression(text):
    preset = PresetId.parse(text)
    assert preset.name in PRESET_NAMES
    assert series_from_text(preset.expr_text(), 7) == preset_series(preset, 7)


# --- Pascal-like triangle -----------------------------------------------

def test_example_25_entries():
    A = example_matrix_25(F(1, 2), 3, 5)
    assert all(A[n, n] == 1 for n in range(1, 6))
    assert A[1, 2] == 2 * 3 * (F(1, 2) + 1)
    assert example_matrix_25(1, 1, 3)[1, 3] == 18
    assert A[3, 2] == 0


@pytest.mark.parametrize("alpha", [1, 2, F(-1, 2), F(5, 3)])
@pytest.mark.parametrize("beta", [1, 2, F(-1, 3)])
def test_example_25_is_c4_with_negated_alpha(alpha, beta):
    N = 6
    A = example_matrix_25(alpha, beta, N)
    params = eq25_c4_params(alpha, beta, N)
    assert params["alpha"] == -F(alpha)
    assert special_power("C4", 1, N, **params) == A


@pytest.mark.parametrize("alpha", [1, 2, F(-1, 2)])
@pytest.mark.parametrize("beta", [1, 2])
def test_scaling_26(alpha, beta):
    report = check_scaling_26(alpha, beta, 8, 4)
    assert report.passed and report.checked == 4 * 36


def test_scaling_26_hand_value():
    # alpha=beta=1, s=2: (1,3) entry scales by 4
    assert mat_power(example_matrix_25(1, 1, 3), 2)[1, 3] == 4 * 18
    with pytest.raises(PresetError):
        check_scaling_26(1, 1, 4, 0)


# --- moment identities --------------------------------------------------

@pytest.mark.parametrize("m", range(6))
def test_exp_27(m):
    assert check_exp_27(m, 10, 10).passed


def test_exp_27_needs_enough_terms():
    with pytest.raises(PresetError):
        check_exp_27(2, 10, 5)


@pytest.mark.parametrize("m", range(6))
def test_resolvent_28(m):
    assert check_resolvent_28(m, 10).passed


def test_resolvent_28_needs_positive_order():
    with pytest.raises(PresetError):
        check_resolvent_28(1, 0)


@pytest.mark.parametrize("m", range(6))
def test_resolvent_28_with_argument_one_over_one_minus_z(m):
    # evaluating at 1/(1-z) only coincides when m = 0
    assert check_resolvent_28(m, 10, literal=True).passed == (m == 0)


# --- binomial-power Bell triangle ---------------------------------------

def test_example_30_examples():
    assert example_matrix_30(1, 6) == TriMatrix.identity(6)
    A = example_matrix_30(2, 6)
    assert A[1, 2] == 2
    assert A[2, 2] == 4  # alpha^n on the diagonal
    with pytest.raises(PresetError):
        example_matrix_30(0, 3)


@pytest.mark.parametrize("alpha", [2, 3, F(1, 2), F(-2, 3)])
def test_example_30_is_bell_triangle(alpha):
    N = 8
    A = example_matrix_30(alpha, N)
    phi = preset_series(PresetId("binomial_minus_one", (alpha,)), N)
    for k, n, v in A.entries():
        assert v == bell_partial(phi, n, k)
    assert build_matrix(eq30_spec(alpha, N)) == A


def test_example_30_with_subscript_n_minus_k_disagrees():
    N, alpha = 5, F(2)
    shifted = TriMatrix.from_function(
        N,
        lambda k, n: sum((-1) ** (k - j) * comb(k, j) * falling(alpha * j, n - k)
                         for j in range(k + 1)) / factorial(k),
    )
    assert shifted != example_matrix_30(alpha, N)


@pytest.mark.parametrize("alpha", [2, 3, F(1, 2)])
@pytest.mark.parametrize("s", [-1, 0, 1, 2])
def test_power_31(alpha, s):
    assert check_power_31(alpha, s, 8).passed


def test_power_31_hand_value():
    # squaring the alpha=2 triangle gives the alpha=4 triangle: (1,2) entry 4*3 = 12
    assert mat_power(example_matrix_30(2, 3), 2)[1, 2] == 12
