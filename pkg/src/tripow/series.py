"""Truncated formal power series with exact rational coefficients.

A :class:`Series` of order ``N`` carries the coefficients of ``t**0 .. t**N``.
Every operation returns coefficients that are exact for the corresponding
operation on infinite series, up to the truncation order.  Operands of binary
operations must share the same order; nothing is silently re-truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Iterable

from .errors import (
    CompositionDomainError,
    DegenerateHError,
    NonInvertibleSeriesError,
    NonUnitBaseError,
    NotCompositionallyInvertibleError,
    OrderMismatchError,
    TruncationExceededError,
)

__all__ = [
    "Series",
    "as_fraction",
    "series_mul",
    "series_recip",
    "series_compose",
    "series_derive",
    "coeff_deriv_at_zero",
    "comp_inverse",
    "iterate",
    "solve_omega",
    "pow_int",
    "pow_rat",
    "exp_series",
    "log_series",
    "truncate",
    "mul_t",
    "div_t",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Series:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable, order: int) -> Series:
        """Build an order-``order`` series from leading coefficients, zero-padded."""
        cs = [as_fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c, order: int) -> Series:
        return cls.of([c], order)

    @classmethod
    def t(cls, order: int) -> Series:
        return cls.of([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            _check_orders(self, other)
            return other
        return Series.constant(as_fraction(other), self.order)

    def __add__(self, other):
        other = self._coerce(other)
        return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        c = as_fraction(other)
        return Series(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return series_mul(self, series_recip(other))
        c = as_fraction(other)
        return Series(tuple(a / c for a in self.coeffs))

    def __rtruediv__(self, other):
        return self._coerce(other) * series_recip(self)

    def __pow__(self, m):
        if isinstance(m, int):
            return pow_int(self, m)
        return pow_rat(self, as_fraction(m))

    def __call__(self, inner: Series) -> Series:
        return series_compose(self, inner)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"Series([{terms}])"


def _check_orders(f: Series, g: Series):
    if f.order != g.order:
        raise OrderMismatchError(f"series orders differ: {f.order} vs {g.order}")


def truncate(f: Series, order: int) -> Series:
    if order > f.order:
        raise TruncationExceededError(f"cannot raise truncation order {f.order} to {order}")
    return Series(f.coeffs[: order + 1])


def mul_t(f: Series) -> Series:
    """``t * f`` at the same order (the top coefficient falls off)."""
    return Series((Fraction(0),) + f.coeffs[:-1])


def div_t(f: Series) -> Series:
    """``f / t`` for ``f(0) = 0``; the result has order ``N - 1``."""
    if f[0] != 0:
        raise NonInvertibleSeriesError("f / t needs f(0) = 0")
    if f.order == 0:
        raise TruncationExceededError("f / t of an order-0 series has no coefficients")
    return Series(f.coeffs[1:])


def series_mul(f: Series, g: Series) -> Series:
    _check_orders(f, g)
    a, b = f.coeffs, g.coeffs
    n = len(a)
    # skip leading zeros of both factors; compositions hit this constantly
    lo_a = next((i for i, c in enumerate(a) if c), n)
    lo_b = next((i for i, c in enumerate(b) if c), n)
    out = [Fraction(0)] * n
    for k in range(lo_a + lo_b, n):
        out[k] = sum(a[i] * b[k - i] for i in range(lo_a, k - lo_b + 1))
    return Series(tuple(out))


def series_recip(f: Series) -> Series:
    c0 = f[0]
    if c0 == 0:
        raise NonInvertibleSeriesError("series with zero constant term has no reciprocal")
    inv0 = 1 / c0
    r = [inv0]
    for k in range(1, len(f)):
        r.append(-inv0 * sum(f[i] * r[k - i] for i in range(1, k + 1)))
    return Series(tuple(r))


def series_compose(g: Series, f: Series) -> Series:
    """``g(f(t))`` by Horner's rule over the truncated series ring."""
    _check_orders(g, f)
    if f[0] != 0:
        raise CompositionDomainError("inner series of a composition must vanish at 0")
    acc = Series.constant(g[-1], g.order)
    for c in reversed(g.coeffs[:-1]):
        acc = series_mul(acc, f)
        acc = Series((acc[0] + c,) + acc.coeffs[1:])
    return acc


def series_derive(f: Series) -> Series:
    if f.order == 0:
        raise TruncationExceededError("derivative of an order-0 series has no coefficients")
    return Series(tuple(i * f[i] for i in range(1, len(f))))


def coeff_deriv_at_zero(f: Series, n: int) -> Fraction:
    """``(d/dt)^n f`` at ``t = 0``, i.e. ``n! [t^n] f``."""
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    if n > f.order:
        raise TruncationExceededError(f"coefficient {n} lies beyond truncation order {f.order}")
    return factorial(n) * f[n]


def pow_int(f: Series, m: int) -> Series:
    if m < 0:
        return pow_int(series_recip(f), -m)
    result = Series.constant(1, f.order)
    base = f
    while m:
        if m & 1:
            result = series_mul(result, base)
        m >>= 1
        if m:
            base = series_mul(base, base)
    return result


def _integrate(f: Series) -> Series:
    """Antiderivative with zero constant term; order grows by one."""
    return Series((Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(f.coeffs)))


def log_series(f: Series) -> Series:
    if f[0] != 1:
        raise NonUnitBaseError("log needs constant term exactly 1")
    if f.order == 0:
        return Series.constant(0, 0)
    return _integrate(series_mul(series_derive(f), truncate(series_recip(f), f.order - 1)))


def exp_series(f: Series) -> Series:
    if f[0] != 0:
        raise CompositionDomainError("exp needs constant term exactly 0")
    # E' = f' E  =>  n e_n = sum_{j=1..n} j f_j e_{n-j}
    e = [Fraction(1)]
    for n in range(1, len(f)):
        e.append(sum(j * f[j] * e[n - j] for j in range(1, n + 1)) / n)
    return Series(tuple(e))


def pow_rat(f: Series, r) -> Series:
    """``f ** r`` for a unit series (``f(0) = 1``) and rational ``r``."""
    r = as_fraction(r)
    if f[0] != 1:
        raise NonUnitBaseError("rational powers need constant term exactly 1")
    return exp_series(r * log_series(f))


def comp_inverse(phi: Series) -> Series:
    """Compositional inverse by Lagrange's coefficient formula.

    ``[t^n] psi = (1/n) [t^(n-1)] (t/phi)^n``.
    """
    if phi[0] != 0:
        raise NotCompositionallyInvertibleError("phi(0) must be 0")
    if phi.order == 0:
        return Series.constant(0, 0)
    if phi[1] == 0:
        raise NotCompositionallyInvertibleError("phi'(0) must be nonzero")
    N = phi.order
    q = series_recip(div_t(phi))  # t/phi, order N-1
    coeffs = [Fraction(0)]
    qn = Series.constant(1, N - 1)
    for n in range(1, N + 1):
        qn = series_mul(qn, q)
        coeffs.append(qn[n - 1] / n)
    return Series(tuple(coeffs))


def iterate(phi: Series, s: int) -> Series:
    """The ``s``-th compositional iterate; negative ``s`` iterates the inverse."""
    if phi[0] != 0:
        raise CompositionDomainError("iterates need phi(0) = 0")
    if s < 0:
        phi = comp_inverse(phi)
        s = -s
    out = Series.t(phi.order)
    for _ in range(s):
        out = series_compose(out, phi)
    return out


def solve_omega(h: Series) -> Series:
    """The unique ``w`` with ``w(0) = 0`` and ``w = t * h(w)``.

    Plain fixed-point iteration from ``w = 0``; each step fixes one more
    coefficient, so ``N + 1`` steps are enough.
    """
    if h[0] == 0:
        raise DegenerateHError("h(0) must be nonzero")
    w = Series.constant(0, h.order)
    for _ in range(h.order + 1):
        w = mul_t(series_compose(h, w))
    return w
