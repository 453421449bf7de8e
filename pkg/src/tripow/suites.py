"""Named, seeded verification suites.

Every suite returns one :class:`~tripow.matrix.VerifyReport` aggregating all
its checks.  Randomness comes from ``random.Random(f"{seed}:{suite}")`` so a
suite's specs depend only on the seed and the suite name.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .bell import bell_partial, bell_triangle, stirling2
from .matrix import (
    MatrixSpec,
    TriMatrix,
    VerifyReport,
    apply_weights,
    build_matrix,
    composed_form_table,
    derivative_form_table,
    mat_power,
    power_closed,
    random_poly,
    random_spec,
    random_weights,
    verify_corollary,
    verify_equiv,
)
from .presets import (
    PresetId,
    check_exp_27,
    check_power_31,
    check_resolvent_28,
    check_scaling_26,
    eq30_spec,
    example_matrix_30,
    preset_series,
)
from .series import Series, pow_int

WEIGHT_POOL = (1, -1, 2, -2, Fraction(1, 2), 3)
C4_RATIONAL_ALPHAS = (Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(1, 3))


def _rng(seed: int, suite: str) -> random.Random:
    return random.Random(f"{seed}:{suite}")


def suite_thm1(order, seed, reps=100, s_range=range(0, 5)) -> VerifyReport:
    rng = _rng(seed, "thm1")
    report = VerifyReport("thm1", s_range=tuple(s_range))
    for _ in range(reps):
        report.merge(verify_equiv(random_spec(rng, order), s_range))
    return report


def suite_thm2(order, seed, reps=100, s_range=range(-1, -5, -1)) -> VerifyReport:
    rng = _rng(seed, "thm2")
    report = VerifyReport("thm2", s_range=tuple(s_range))
    for _ in range(reps):
        spec = random_spec(rng, order)
        report.merge(verify_equiv(spec, s_range, mode="oracle"))
        report.merge(verify_equiv(spec, s_range, mode="pairing"))
    return report


def suite_eq4(order, seed, reps=100, s_range=None) -> VerifyReport:
    rng = _rng(seed, "eq4")
    report = VerifyReport("eq4")
    for _ in range(reps):
        spec = random_spec(rng, order)
        composed = composed_form_table(spec)
        for (k, n), value in derivative_form_table(spec).items():
            report.compare_values(k, n, 1, value, composed[k, n])
    return report


def suite_l0(order, seed, reps=20, s_range=range(-3, 4)) -> VerifyReport:
    """Weight conjugation commutes with powering, on both the oracle and closed sides."""
    rng = _rng(seed, "l0")
    report = VerifyReport("l0", s_range=tuple(s_range))
    for _ in range(reps):
        spec = random_spec(rng, order).unweighted()
        a = random_weights(rng, order, WEIGHT_POOL)
        B = build_matrix(spec)
        weighted = MatrixSpec(spec.phi, spec.g, spec.h, a)
        for s in s_range:
            Bs = mat_power(B, s)
            report.compare(apply_weights(Bs, a), mat_power(apply_weights(B, a), s), s)
            report.compare(apply_weights(Bs, a), power_closed(weighted, s), s)
    return report


def _corollary_params(form: str, rng: random.Random, order: int) -> dict:
    w = random_weights(rng, order)
    phi = random_poly(rng, order, nonzero=(1,), zero=(0,))
    g = random_poly(rng, order, nonzero=(0,))
    h = random_poly(rng, order, nonzero=(0,))
    if form == "C1":
        return {"phi": phi, "g": g, "weights": w}
    if form == "C2":
        return {"g": g, "weights": w}
    if form == "C3":
        return {"phi": phi, "weights": w}
    if form == "C4":
        if rng.random() < 0.5:
            return {"phi": phi, "alpha": rng.randint(-3, 3), "weights": w}
        phi = Series((phi[0], Fraction(1)) + phi.coeffs[2:])
        return {"phi": phi, "alpha": rng.choice(C4_RATIONAL_ALPHAS), "weights": w}
    return {"h": h, "g": g, "weights": w}


def _corollary_suite(form: str) -> Callable[..., VerifyReport]:
    def run(order, seed, reps=20, s_range=range(-3, 4)) -> VerifyReport:
        rng = _rng(seed, form.lower())
        report = VerifyReport(form.lower(), s_range=tuple(s_range))
        for _ in range(reps):
            report.merge(verify_corollary(form, s_range, order, **_corollary_params(form, rng, order)))
        return report

    run.__name__ = f"suite_{form.lower()}"
    return run


def suite_eq26(order, seed=None, reps=None, s_range=range(1, 5)) -> VerifyReport:
    report = VerifyReport("eq26", s_range=tuple(s_range))
    for alpha in (1, 2, Fraction(-1, 2)):
        for beta in (1, 2):
            report.merge(check_scaling_26(alpha, beta, order, max(s_range)))
    return report


def suite_eq27(order, seed=None, reps=None, s_range=None) -> VerifyReport:
    report = VerifyReport("eq27")
    for m in range(6):
        report.merge(check_exp_27(m, order, order))
    return report


def suite_eq28(order, seed=None, reps=None, s_range=None) -> VerifyReport:
    report = VerifyReport("eq28")
    for m in range(6):
        report.merge(check_resolvent_28(m, order))
    return report


def suite_eq30(order, seed=None, reps=None, s_range=None) -> VerifyReport:
    report = VerifyReport("eq30")
    for alpha in (2, 3, Fraction(1, 2)):
        phi = eq30_spec(alpha, order).phi
        bell = TriMatrix.from_function(order, lambda k, n: bell_partial(phi, n, k))
        report.compare(bell, example_matrix_30(alpha, order))
    return report


def suite_eq31(order, seed=None, reps=None, s_range=(-1, 0, 1, 2)) -> VerifyReport:
    report = VerifyReport("eq31", s_range=tuple(s_range))
    for alpha in (2, 3, Fraction(1, 2)):
        for s in s_range:
            report.merge(check_power_31(alpha, s, order))
    return report


def suite_bell(order, seed, reps=50, s_range=None) -> VerifyReport:
    """Stirling numbers from expm1, and the power generating function for random phi."""
    report = VerifyReport("bell")
    stirling = bell_triangle(preset_series(PresetId("expm1"), order))
    for n in range(order + 1):
        for k in range(n + 1):
            report.compare_values(k, n, None, Fraction(stirling2(n, k)), stirling[n][k])
    rng = _rng(seed, "bell")
    for _ in range(reps):
        phi = random_poly(rng, order, zero=(0,))
        for k in range(order + 1):
            power = pow_int(phi, k)
            for n in range(k, order + 1):
                expected = power[n] * factorial(n) / factorial(k)
                report.compare_values(k, n, None, expected, bell_partial(phi, n, k))
    return report


SUITES: dict[str, Callable[..., VerifyReport]] = {
    "thm1": suite_thm1,
    "thm2": suite_thm2,
    "eq4": suite_eq4,
    "l0": suite_l0,
    "c1": _corollary_suite("C1"),
    "c2": _corollary_suite("C2"),
    "c3": _corollary_suite("C3"),
    "c4": _corollary_suite("C4"),
    "c5": _corollary_suite("C5"),
    "eq26": suite_eq26,
    "eq27": suite_eq27,
    "eq28": suite_eq28,
    "eq30": suite_eq30,
    "eq31": suite_eq31,
    "bell": suite_bell,
}


def run_suite(name: str, order: int, seed: int = 0, reps: int | None = None,
              s_range: Sequence[int] | None = None) -> list[VerifyReport]:
    """Run one suite, or every suite for ``name == "all"``."""
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        kwargs = {}
        if reps is not None:
            kwargs["reps"] = reps
        if s_range is not None:
            kwargs["s_range"] = tuple(s_range)
        reports.append(SUITES[n](order, seed, **kwargs))
    return reports
