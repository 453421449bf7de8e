"""Weighted upper-triangular matrices built from three series, their powers
by closed form, and a brute-force linear-algebra oracle to check them against.

Indexing follows the combinatorial convention: rows ``k`` and columns ``n``
run over ``1..N``.  ``TriMatrix.rows[k - 1][n - 1]`` stores entry ``(k, n)``;
entries with ``n < k`` are stored as zero and never written.

The matrix ``A`` of a :class:`MatrixSpec` ``(phi, g, h, a)`` has entries

    (a_k / a_n) * (1/k!) * (d/dt)^(n-1) [ h(t)^n * d/dt (phi(t)^k g(t)) ] at t=0.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Iterator, Sequence

from .bell import bell_triangle
from .errors import (
    InvalidSpecError,
    InvalidWeightsError,
    NonRationalPowerError,
    OrderMismatchError,
    SingularMatrixError,
)
from .series import (
    Series,
    as_fraction,
    coeff_deriv_at_zero,
    comp_inverse,
    div_t,
    iterate,
    pow_int,
    pow_rat,
    series_compose,
    series_derive,
    series_mul,
    series_recip,
    solve_omega,
    truncate,
)

COROLLARY_FORMS = ("C1", "C2", "C3", "C4", "C5")


@dataclass(frozen=True)
class Weights:
    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = tuple(as_fraction(x) for x in self.a)
        if any(x == 0 for x in a):
            raise InvalidWeightsError("weights must all be nonzero")
        object.__setattr__(self, "a", a)

    @classmethod
    def ones(cls, order: int) -> Weights:
        return cls((Fraction(1),) * order)

    @classmethod
    def factorial(cls, order: int) -> Weights:
        return cls(tuple(Fraction(factorial(j)) for j in range(1, order + 1)))

    def __len__(self):
        return len(self.a)

    def __getitem__(self, j: int) -> Fraction:
        """1-based access, ``w[1]`` is the first weight."""
        if j < 1:
            raise IndexError(j)
        return self.a[j - 1]

    def ratio(self, k: int, n: int) -> Fraction:
        return self.a[k - 1] / self.a[n - 1]


@dataclass(frozen=True)
class TriMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        return len(self.rows)

    @classmethod
    def from_function(cls, order: int, entry: Callable[[int, int], Fraction]) -> TriMatrix:
        zero = Fraction(0)
        return cls(tuple(
            tuple(as_fraction(entry(k, n)) if n >= k else zero for n in range(1, order + 1))
            for k in range(1, order + 1)
        ))

    @classmethod
    def identity(cls, order: int) -> TriMatrix:
        return cls.from_function(order, lambda k, n: Fraction(int(k == n)))

    def __getitem__(self, kn: tuple[int, int]) -> Fraction:
        k, n = kn
        if not (1 <= k <= self.order and 1 <= n <= self.order):
            raise IndexError(kn)
        return self.rows[k - 1][n - 1]

    def entries(self) -> Iterator[tuple[int, int, Fraction]]:
        """Upper-triangle entries in row-major order."""
        for k in range(1, self.order + 1):
            for n in range(k, self.order + 1):
                yield k, n, self.rows[k - 1][n - 1]

    def with_entry(self, k: int, n: int, value) -> TriMatrix:
        rows = [list(r) for r in self.rows]
        rows[k - 1][n - 1] = as_fraction(value)
        return TriMatrix(tuple(tuple(r) for r in rows))

    def __matmul__(self, other: TriMatrix) -> TriMatrix:
        return mat_mul(self, other)


@dataclass(frozen=True)
class MatrixSpec:
    phi: Series
    g: Series
    h: Series
    weights: Weights

    def __post_init__(self):
        N = self.phi.order
        if N < 1:
            raise InvalidSpecError("truncation order must be at least 1")
        if self.g.order != N or self.h.order != N:
            raise InvalidSpecError("phi, g and h must share one truncation order")
        if len(self.weights) != N:
            raise InvalidWeightsError(f"need {N} weights, got {len(self.weights)}")
        if self.phi[0] != 0:
            raise InvalidSpecError("phi(0) must be 0")
        if self.phi[1] * self.g[0] * self.h[0] == 0:
            raise InvalidSpecError("phi'(0) g(0) h(0) must be nonzero")

    @property
    def order(self) -> int:
        return self.phi.order

    @classmethod
    def make(cls, phi, g, h, weights=None, order: int | None = None) -> MatrixSpec:
        """Convenience constructor from coefficient lists or series."""
        if order is None:
            order = next(x.order for x in (phi, g, h) if isinstance(x, Series))
        phi, g, h = (x if isinstance(x, Series) else Series.of(x, order) for x in (phi, g, h))
        if weights is None:
            weights = Weights.ones(order)
        elif not isinstance(weights, Weights):
            weights = Weights(tuple(weights))
        return cls(phi, g, h, weights)

    def fingerprint(self) -> str:
        text = "|".join(
            ",".join(str(c) for c in part)
            for part in (self.phi, self.g, self.h, self.weights.a)
        )
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    def unweighted(self) -> MatrixSpec:
        return MatrixSpec(self.phi, self.g, self.h, Weights.ones(self.order))


@dataclass(frozen=True)
class Mismatch:
    k: int
    n: int
    s: int | None
    expected: Fraction
    actual: Fraction

    def __str__(self):
        return f"(k={self.k}, n={self.n}, s={self.s}): expected {self.expected}, got {self.actual}"


@dataclass
class VerifyReport:
    """Outcome of an exact entrywise comparison.

    ``failures`` is empty exactly when the report passes.  For scalar series
    identities the ``k`` slot holds the identity's parameter and ``n`` the
    coefficient index.
    """

    suite: str
    fingerprint: str = ""
    s_range: tuple[int, ...] = ()
    checked: int = 0
    failures: list[Mismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_counterexample(self) -> Mismatch | None:
        return self.failures[0] if self.failures else None

    def compare(self, expected: TriMatrix, actual: TriMatrix, s: int | None = None):
        if expected.order != actual.order:
            raise OrderMismatchError("compared matrices differ in order")
        for k, n, e in expected.entries():
            self.checked += 1
            a = actual[k, n]
            if a != e:
                self.failures.append(Mismatch(k, n, s, e, a))

    def compare_values(self, k, n, s, expected, actual):
        self.checked += 1
        if expected != actual:
            self.failures.append(Mismatch(k, n, s, expected, actual))

    def merge(self, other: VerifyReport):
        self.checked += other.checked
        self.failures.extend(other.failures)
        if not self.fingerprint:
            self.fingerprint = other.fingerprint
        self.s_range = tuple(sorted(set(self.s_range) | set(other.s_range)))

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.suite}: {self.checked} checks"
        if self.s_range:
            line += f", s in [{min(self.s_range)}, {max(self.s_range)}]"
        if self.fingerprint:
            line += f", spec {self.fingerprint}"
        if not self.passed:
            line += f", {len(self.failures)} mismatches; first {self.first_counterexample}"
        return line


# --- plain linear algebra (oracle side) ---------------------------------

def mat_mul(A: TriMatrix, B: TriMatrix) -> TriMatrix:
    if A.order != B.order:
        raise OrderMismatchError(f"matrix orders differ: {A.order} vs {B.order}")
    a, b = A.rows, B.rows
    return TriMatrix.from_function(
        A.order,
        lambda k, n: sum((a[k - 1][j - 1] * b[j - 1][n - 1] for j in range(k, n + 1)), Fraction(0)),
    )


def mat_inverse(A: TriMatrix) -> TriMatrix:
    """Back substitution, one column of the inverse at a time."""
    N = A.order
    if any(A[j, j] == 0 for j in range(1, N + 1)):
        raise SingularMatrixError("triangular matrix has a zero on its diagonal")
    X = [[Fraction(0)] * N for _ in range(N)]
    for n in range(N):
        X[n][n] = 1 / A.rows[n][n]
        for k in range(n - 1, -1, -1):
            acc = sum((A.rows[k][j] * X[j][n] for j in range(k + 1, n + 1)), Fraction(0))
            X[k][n] = -acc / A.rows[k][k]
    return TriMatrix(tuple(tuple(r) for r in X))


def mat_power(A: TriMatrix, s: int) -> TriMatrix:
    """``A**s`` by repeated multiplication; negative ``s`` powers the inverse."""
    if s == 0:
        return TriMatrix.identity(A.order)
    base = mat_inverse(A) if s < 0 else A
    out = base
    for _ in range(abs(s) - 1):
        out = mat_mul(out, base)
    return out


def apply_weights(B: TriMatrix, a: Weights) -> TriMatrix:
    if len(a) != B.order:
        raise InvalidWeightsError(f"need {B.order} weights, got {len(a)}")
    return TriMatrix.from_function(B.order, lambda k, n: a.ratio(k, n) * B[k, n])


# --- the matrix and its powers ------------------------------------------

def build_matrix(spec: MatrixSpec) -> TriMatrix:
    N = spec.order
    # d/dt (phi^k g), order N-1, for every row k
    derivs = {}
    pk = Series.constant(1, N)
    for k in range(1, N + 1):
        pk = series_mul(pk, spec.phi)
        derivs[k] = series_derive(series_mul(pk, spec.g))
    h_low = truncate(spec.h, N - 1)
    h_pow = {n: pow_int(h_low, n) for n in range(1, N + 1)}

    def entry(k, n):
        d = coeff_deriv_at_zero(series_mul(h_pow[n], derivs[k]), n - 1)
        return spec.weights.ratio(k, n) * d / factorial(k)

    return TriMatrix.from_function(N, entry)


def power_oracle(spec: MatrixSpec, s: int) -> TriMatrix:
    return mat_power(build_matrix(spec), s)


def _egf_matrix(order: int, inner: Series, factor: Series, weights: Weights) -> TriMatrix:
    """Entries ``(a_k/a_n) (n!/k!) [t^n] inner^k * factor``."""
    cols = {}
    x = factor
    for k in range(1, order + 1):
        x = series_mul(x, inner)
        cols[k] = x
    return TriMatrix.from_function(
        order,
        lambda k, n: weights.ratio(k, n) * Fraction(factorial(n), factorial(k)) * cols[k][n],
    )


def power_closed(spec: MatrixSpec, s: int) -> TriMatrix:
    """``A**s`` from the closed-form generating functions.

    For ``s >= 0`` with ``w = t h(w)`` and ``Phi = phi o w``:
        [t^n] Phi^<s>(t)^k * prod_{i<s} g(w(Phi^<i>(t)))
    For ``s < 0`` with ``psi = phi^<-1>`` and ``Psi = psi / h(psi)``:
        [t^n] Psi^<|s|>(t)^k / prod_{i<|s|} g(psi(Psi^<i>(t)))
    """
    N = spec.order
    if s == 0:
        return TriMatrix.identity(N)
    if s > 0:
        w = solve_omega(spec.h)
        step = series_compose(spec.phi, w)
        outer = series_compose(spec.g, w)
    else:
        psi = comp_inverse(spec.phi)
        step = series_mul(psi, series_recip(series_compose(spec.h, psi)))
        outer = series_compose(spec.g, psi)
    it = Series.t(N)
    prod = Series.constant(1, N)
    for _ in range(abs(s)):
        prod = series_mul(prod, series_compose(outer, it))
        it = series_compose(it, step)
    if s < 0:
        prod = series_recip(prod)
    return _egf_matrix(N, it, prod, spec.weights)


# --- the Lagrange identity behind s = 1 ---------------------------------

def derivative_form_table(spec: MatrixSpec) -> dict[tuple[int, int], Fraction]:
    """``(n-1)! [t^(n-1)] h^n (phi^k g)'`` for all ``1 <= k <= n <= N``.

    No weights and no ``1/k!``; this is the raw left side of the Lagrange
    identity that makes the ``s = 1`` closed form agree with the definition.
    """
    N = spec.order
    h_low = truncate(spec.h, N - 1)
    h_pow = [None] + [pow_int(h_low, n) for n in range(1, N + 1)]
    out = {}
    pk = Series.constant(1, N)
    for k in range(1, N + 1):
        pk = series_mul(pk, spec.phi)
        d = series_derive(series_mul(pk, spec.g))
        for n in range(k, N + 1):
            out[k, n] = coeff_deriv_at_zero(series_mul(h_pow[n], d), n - 1)
    return out


def composed_form_table(spec: MatrixSpec) -> dict[tuple[int, int], Fraction]:
    """``n! [t^n] (phi o w)^k (g o w)`` with ``w = t h(w)``, all ``k <= n``."""
    N = spec.order
    w = solve_omega(spec.h)
    Phi = series_compose(spec.phi, w)
    x = series_compose(spec.g, w)
    out = {}
    for k in range(1, N + 1):
        x = series_mul(x, Phi)
        for n in range(k, N + 1):
            out[k, n] = coeff_deriv_at_zero(x, n)
    return out


def derivative_form_entry(spec: MatrixSpec, k: int, n: int) -> Fraction:
    N = spec.order
    d = series_derive(series_mul(pow_int(spec.phi, k), spec.g))
    return coeff_deriv_at_zero(series_mul(pow_int(truncate(spec.h, N - 1), n), d), n - 1)


def composed_form_entry(spec: MatrixSpec, k: int, n: int) -> Fraction:
    w = solve_omega(spec.h)
    f = series_mul(pow_int(series_compose(spec.phi, w), k), series_compose(spec.g, w))
    return coeff_deriv_at_zero(f, n)


# --- corollary fast paths -----------------------------------------------

def _weights_or_ones(weights, order):
    if weights is None:
        return Weights.ones(order)
    return weights if isinstance(weights, Weights) else Weights(tuple(weights))


def _check_c4_alpha(phi: Series, alpha: Fraction):
    if alpha.denominator != 1 and phi[1] != 1:
        raise NonRationalPowerError(
            "a non-integer alpha needs phi'(0) = 1 for (t/phi)^alpha to stay rational"
        )


def _unit_power(q: Series, r: Fraction) -> Series:
    if r.denominator == 1:
        return pow_int(q, int(r))
    return pow_rat(q, r)


def special_power(form: str, s: int, order: int, *, phi: Series | None = None,
                  g: Series | None = None, h: Series | None = None, alpha=None,
                  weights=None) -> TriMatrix:
    """``A**s`` through one of the reduced corollary formulas.

    C1 (h = 1): [t^n] phi^<s>^k prod g(phi^<i>), or the psi version for s < 0.
    C2 (h = 1, phi = t): entry ``(a_k/a_n) [t^(n-k)] g^s``, with A = (a_k/a_n) g_(n-k).
    C3 (g = h = 1): ``B_{n,k}(phi^<s>)``.
    C4 (g = (t/phi)^alpha, h = 1): ``C(n,k) (n-k)! [t^(n-k)] (t/phi^<s>)^(alpha-k)``.
    C5 (phi^<-1> solves psi = t h(psi)): ``C(n,k) (n-k)! [t^(n-k)] g(psi)^s``.
    """
    form = form.upper()
    if form not in COROLLARY_FORMS:
        raise InvalidSpecError(f"unknown corollary form {form!r}")
    a = _weights_or_ones(weights, order)
    if len(a) != order:
        raise InvalidWeightsError(f"need {order} weights, got {len(a)}")

    def need(name, value):
        if value is None:
            raise InvalidSpecError(f"form {form} needs parameter {name}")
        if isinstance(value, Series) and value.order != order:
            raise InvalidSpecError(f"parameter {name} has order {value.order}, expected {order}")
        return value

    if form == "C1":
        phi, g = need("phi", phi), need("g", g)
        if phi[0] != 0 or phi[1] == 0 or g[0] == 0:
            raise InvalidSpecError("C1 needs phi(0) = 0, phi'(0) != 0, g(0) != 0")
        base = phi if s >= 0 else comp_inverse(phi)
        it = Series.t(order)
        prod = Series.constant(1, order)
        for _ in range(abs(s)):
            if s > 0:
                prod = series_mul(prod, series_compose(g, it))
                it = series_compose(it, base)
            else:
                it = series_compose(it, base)
                prod = series_mul(prod, series_compose(g, it))
        if s < 0:
            prod = series_recip(prod)
        return _egf_matrix(order, it, prod, a)

    if form == "C2":
        g = need("g", g)
        if g[0] == 0:
            raise InvalidSpecError("C2 needs g(0) != 0")
        gs = pow_int(g, s)
        return TriMatrix.from_function(order, lambda k, n: a.ratio(k, n) * gs[n - k])

    if form == "C3":
        phi = need("phi", phi)
        if phi[0] != 0 or phi[1] == 0:
            raise InvalidSpecError("C3 needs phi(0) = 0 and phi'(0) != 0")
        bell = bell_triangle(iterate(phi, s))
        return TriMatrix.from_function(order, lambda k, n: a.ratio(k, n) * bell[n][k])

    if form == "C4":
        phi = need("phi", phi)
        if alpha is None:
            raise InvalidSpecError("C4 needs parameter alpha")
        alpha = as_fraction(alpha)
        if phi[0] != 0 or phi[1] == 0:
            raise InvalidSpecError("C4 needs phi(0) = 0 and phi'(0) != 0")
        _check_c4_alpha(phi, alpha)
        q = series_recip(div_t(iterate(phi, s)))  # t / phi^<s>, order N-1
        cols = {k: _unit_power(q, alpha - k) for k in range(1, order + 1)}
        return TriMatrix.from_function(
            order,
            lambda k, n: a.ratio(k, n) * comb(n, k) * factorial(n - k) * cols[k][n - k],
        )

    # C5
    h, g = need("h", h), need("g", g)
    if h[0] == 0 or g[0] == 0:
        raise InvalidSpecError("C5 needs h(0) != 0 and g(0) != 0")
    psi = solve_omega(h)
    if phi is not None and comp_inverse(need("phi", phi)) != psi:
        raise InvalidSpecError("C5 needs phi^<-1> to solve psi = t h(psi)")
    gs = pow_int(series_compose(g, psi), s)
    return TriMatrix.from_function(
        order, lambda k, n: a.ratio(k, n) * comb(n, k) * factorial(n - k) * gs[n - k]
    )


def corollary_spec(form: str, order: int, *, phi: Series | None = None,
                   g: Series | None = None, h: Series | None = None, alpha=None,
                   weights=None) -> MatrixSpec:
    """The general spec whose matrix the corollary form describes."""
    form = form.upper()
    a = _weights_or_ones(weights, order)
    one = Series.constant(1, order)
    if form == "C1":
        return MatrixSpec(phi, g, one, a)
    if form == "C2":
        # the corollary's matrix drops the n!/k! of the general entry
        scaled = Weights(tuple(x * factorial(j) for j, x in enumerate(a.a, start=1)))
        return MatrixSpec(Series.t(order), g, one, scaled)
    if form == "C3":
        return MatrixSpec(phi, one, one, a)
    if form == "C4":
        alpha = as_fraction(alpha)
        _check_c4_alpha(phi, alpha)
        g_low = _unit_power(series_recip(div_t(phi)), alpha)
        # g's t^N coefficient never reaches an entry (phi^k g starts at t^k)
        g = Series(g_low.coeffs + (Fraction(0),))
        return MatrixSpec(phi, g, one, a)
    if form == "C5":
        if phi is None:
            phi = comp_inverse(solve_omega(h))
        return MatrixSpec(phi, g, h, a)
    raise InvalidSpecError(f"unknown corollary form {form!r}")


# --- differential testing -----------------------------------------------

def verify_equiv(spec: MatrixSpec, s_range: Iterable[int], mode: str = "oracle",
                 suite: str | None = None,
                 closed: Callable[[MatrixSpec, int], TriMatrix] = power_closed,
                 ) -> VerifyReport:
    """Compare the closed form against a reference for every ``s`` in range.

    ``mode="oracle"`` checks against repeated multiplication / back
    substitution; ``mode="pairing"`` checks ``A^s A^-s = I`` using only the
    closed form.
    """
    s_values = tuple(s_range)
    report = VerifyReport(suite or mode, spec.fingerprint(), s_values)
    N = spec.order
    if mode == "oracle":
        A = build_matrix(spec)
        for s in s_values:
            report.compare(mat_power(A, s), closed(spec, s), s)
    elif mode == "pairing":
        eye = TriMatrix.identity(N)
        for s in s_values:
            report.compare(eye, mat_mul(closed(spec, s), closed(spec, -s)), s)
    else:
        raise ValueError(f"unknown verification mode {mode!r}")
    return report


def verify_corollary(form: str, s_range: Iterable[int], order: int, **params) -> VerifyReport:
    spec = corollary_spec(form, order, **params)
    s_values = tuple(s_range)
    report = VerifyReport(form.lower(), spec.fingerprint(), s_values)
    for s in s_values:
        report.compare(power_closed(spec, s), special_power(form, s, order, **params), s)
    return report


# --- seeded random specs ------------------------------------------------

def _nonzero(rng: random.Random, bound: int) -> int:
    return rng.choice([x for x in range(-bound, bound + 1) if x])


def random_poly(rng: random.Random, order: int, bound: int = 3,
                nonzero: Sequence[int] = (), zero: Sequence[int] = ()) -> Series:
    cs = [rng.randint(-bound, bound) for _ in range(order + 1)]
    for i in nonzero:
        cs[i] = _nonzero(rng, bound)
    for i in zero:
        cs[i] = 0
    return Series.of(cs, order)


def random_weights(rng: random.Random, order: int, pool: Sequence | None = None) -> Weights:
    if pool is None:
        return Weights(tuple(_nonzero(rng, 3) for _ in range(order)))
    return Weights(tuple(as_fraction(rng.choice(pool)) for _ in range(order)))


def random_spec(rng: random.Random, order: int, bound: int = 3) -> MatrixSpec:
    """Coefficients uniform in ``-bound..bound``; phi_1, g_0, h_0 and weights nonzero."""
    phi = random_poly(rng, order, bound, nonzero=(1,), zero=(0,))
    g = random_poly(rng, order, bound, nonzero=(0,))
    h = random_poly(rng, order, bound, nonzero=(0,))
    return MatrixSpec(phi, g, h, random_weights(rng, order))
