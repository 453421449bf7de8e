"""Named series and the worked examples: the Pascal-like triangle that
scales as ``s**(n-k)`` under powering, its exponential and resolvent
moment identities, and the binomial-power Bell triangle."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .bell import falling, fubini_poly, touchard_poly
from .errors import PresetError
from .matrix import (
    MatrixSpec,
    TriMatrix,
    VerifyReport,
    Weights,
    mat_power,
    power_oracle,
)
from .series import Series, as_fraction, mul_t, pow_rat, series_recip

PRESET_NAMES = (
    "identity_t",
    "geometric",
    "binomial_minus_one",
    "expm1",
    "log1p",
    "exp_full",
    "const_one",
)
_PARAM_COUNT = {"geometric": 1, "binomial_minus_one": 1}


def _fmt(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class PresetId:
    name: str
    params: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.name not in PRESET_NAMES:
            raise PresetError(f"unknown preset {self.name!r}")
        params = tuple(as_fraction(p) for p in self.params)
        want = _PARAM_COUNT.get(self.name, 0)
        if len(params) != want:
            raise PresetError(f"preset {self.name} takes {want} parameter(s), got {len(params)}")
        if self.name == "binomial_minus_one" and params[0] == 0:
            raise PresetError("binomial_minus_one needs alpha != 0")
        object.__setattr__(self, "params", params)

    @classmethod
    def parse(cls, text: str) -> PresetId:
        """``name``, ``name(p)`` or ``name:p`` with ``p`` a rational like ``-1/2``."""
        m = re.fullmatch(r"\s*([a-z_0-9]+)\s*(?:[(:]\s*([-+0-9/ ]+?)\s*\)?)?\s*", text)
        if not m:
            raise PresetError(f"cannot read preset {text!r}")
        name, arg = m.groups()
        try:
            params = (Fraction(arg.replace(" ", "")),) if arg else ()
        except (ValueError, ZeroDivisionError):
            raise PresetError(f"bad preset parameter {arg!r}") from None
        return cls(name, params)

    def expr_text(self) -> str:
        """Printed form in the series-expression syntax."""
        if self.name == "identity_t":
            return "t"
        if self.name == "geometric":
            return f"t/(1-({_fmt(self.params[0])})*t)"
        if self.name == "binomial_minus_one":
            return f"(1+t)^({_fmt(self.params[0])})-1"
        if self.name == "expm1":
            return "exp(t)-1"
        if self.name == "log1p":
            return "log(1+t)"
        if self.name == "exp_full":
            return "exp(t)"
        return "1"

    def __str__(self):
        if self.params:
            return f"{self.name}({','.join(_fmt(p) for p in self.params)})"
        return self.name


def preset_series(preset: PresetId | str, order: int) -> Series:
    if isinstance(preset, str):
        preset = PresetId.parse(preset)
    name, N = preset.name, order
    if name == "identity_t":
        return Series.t(N)
    if name == "geometric":
        beta = preset.params[0]
        return Series.of([0] + [beta ** (i - 1) for i in range(1, N + 1)], N)
    if name == "binomial_minus_one":
        return pow_rat(Series.of([1, 1], N), preset.params[0]) - 1
    if name == "expm1":
        return Series.of([0] + [Fraction(1, factorial(i)) for i in range(1, N + 1)], N)
    if name == "log1p":
        return Series.of([0] + [Fraction((-1) ** (i + 1), i) for i in range(1, N + 1)], N)
    if name == "exp_full":
        return Series.of([Fraction(1, factorial(i)) for i in range(N + 1)], N)
    return Series.constant(1, N)


# --- Pascal-like triangle -----------------------------------------------

def example_matrix_25(alpha, beta, order: int) -> TriMatrix:
    """Entries ``C(n,k) beta^(n-k) (alpha+n-1)_(n-k)``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    return TriMatrix.from_function(
        order, lambda k, n: comb(n, k) * beta ** (n - k) * falling(alpha + n - 1, n - k)
    )


def eq25_c4_params(alpha, beta, order: int) -> dict:
    """Corollary C4 parameters reproducing :func:`example_matrix_25`.

    ``phi = t/(1-beta t)`` with the exponent parameter negated.
    """
    return {
        "phi": preset_series(PresetId("geometric", (beta,)), order),
        "alpha": -as_fraction(alpha),
    }


def check_scaling_26(alpha, beta, order: int, s_max: int) -> VerifyReport:
    """Oracle powers of the triangle scale entrywise by ``s**(n-k)``."""
    if s_max < 1:
        raise PresetError("s_max must be at least 1")
    A = example_matrix_25(alpha, beta, order)
    report = VerifyReport("eq26", f"alpha={alpha},beta={beta},N={order}", tuple(range(1, s_max + 1)))
    for s in range(1, s_max + 1):
        scaled = TriMatrix.from_function(order, lambda k, n: s ** (n - k) * A[k, n])
        report.compare(scaled, mat_power(A, s), s)
    return report


# --- scalar moment identities in z --------------------------------------

def check_exp_27(m: int, M: int, S: int) -> VerifyReport:
    """``sum_{s<=S} s^m z^s / s!`` against ``B_m(z) e^z``, both to order M in z."""
    if S < M:
        raise PresetError("need S >= M")
    lhs = Series.of([Fraction(s ** m, factorial(s)) for s in range(min(S, M) + 1)], M)
    z = Series.t(M)
    rhs = touchard_poly(m)(z) * preset_series(PresetId("exp_full"), M)
    report = VerifyReport("eq27", f"m={m},M={M},S={S}")
    for i in range(M + 1):
        report.compare_values(m, i, None, lhs[i], rhs[i])
    return report


def check_resolvent_28(m: int, M: int, literal: bool = False) -> VerifyReport:
    """``sum_{s<=M} s^m z^s`` against ``F_m(z/(1-z)) / (1-z)`` to order M.

    With ``literal=True`` the Fubini polynomial is evaluated at ``1/(1-z)``
    instead, which only agrees for ``m = 0``.
    """
    if M < 1:
        raise PresetError("need M >= 1")
    lhs = Series.of([s ** m for s in range(M + 1)], M)
    u = series_recip(Series.of([1, -1], M))  # 1/(1-z)
    arg = u if literal else mul_t(u)         # z/(1-z)
    rhs = fubini_poly(m)(arg) * u
    report = VerifyReport("eq28" + ("-literal" if literal else ""), f"m={m},M={M}")
    for i in range(M + 1):
        report.compare_values(m, i, None, lhs[i], rhs[i])
    return report


# --- binomial-power Bell triangle ---------------------------------------

def example_matrix_30(alpha, order: int) -> TriMatrix:
    """``(1/k!) sum_j (-1)^(k-j) C(k,j) (alpha j)_n``, the Bell triangle of (1+t)^alpha - 1."""
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise PresetError("alpha must be nonzero")

    def entry(k, n):
        total = sum(
            (-1) ** (k - j) * comb(k, j) * falling(alpha * j, n) for j in range(k + 1)
        )
        return total / factorial(k)

    return TriMatrix.from_function(order, entry)


def eq30_spec(alpha, order: int) -> MatrixSpec:
    one = Series.constant(1, order)
    phi = preset_series(PresetId("binomial_minus_one", (alpha,)), order)
    return MatrixSpec(phi, one, one, Weights.ones(order))


def check_power_31(alpha, s: int, order: int) -> VerifyReport:
    """Oracle ``s``-th power of the alpha triangle equals the ``alpha**s`` triangle."""
    alpha = as_fraction(alpha)
    report = VerifyReport("eq31", f"alpha={alpha},N={order}", (s,))
    report.compare(example_matrix_30(alpha ** s, order), power_oracle(eq30_spec(alpha, order), s), s)
    return report
