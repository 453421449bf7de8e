"""Partial Bell polynomials of a single series, Stirling numbers, and the
Touchard and Fubini polynomials built from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import BellIndexError, CompositionDomainError, TruncationExceededError
from .series import Series, as_fraction, pow_int

STIRLING_N_MAX = 32


@dataclass(frozen=True)
class PolyZ:
    """Polynomial in a formal variable z; ``coeffs[j]`` multiplies ``z**j``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [as_fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) or (Fraction(0),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        # Horner; z may be a scalar or a Series
        acc = self.coeffs[-1] + 0 * z
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc


def bell_partial(phi: Series, n: int, k: int) -> Fraction:
    """``B_{n,k}(phi) = n! [t^n] phi**k / k!``."""
    if phi[0] != 0:
        raise CompositionDomainError("partial Bell polynomials need phi(0) = 0")
    if not 0 <= k <= n:
        raise BellIndexError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > phi.order:
        raise TruncationExceededError(f"n={n} exceeds truncation order {phi.order}")
    return pow_int(phi, k)[n] * factorial(n) / factorial(k)


def bell_triangle(phi: Series) -> list[list[Fraction]]:
    """All ``B_{n,k}(phi)`` for ``0 <= k <= n <= N``, as ``rows[n][k]``."""
    if phi[0] != 0:
        raise CompositionDomainError("partial Bell polynomials need phi(0) = 0")
    N = phi.order
    rows = [[Fraction(0)] * (n + 1) for n in range(N + 1)]
    power = Series.constant(1, N)
    for k in range(N + 1):
        for n in range(k, N + 1):
            rows[n][k] = power[n] * factorial(n) / factorial(k)
        power = power * phi
    return rows


@lru_cache(maxsize=None)
def _stirling_table(n_max: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for j in range(1, n + 1):
            row[j] = (j * prev[j] if j < n else 0) + prev[j - 1]
        rows.append(tuple(row))
    return tuple(rows)


def stirling2(n: int, j: int, n_max: int = STIRLING_N_MAX) -> int:
    if n < 0 or j < 0 or j > n:
        raise BellIndexError(f"stirling2 needs 0 <= j <= n, got n={n}, j={j}")
    return _stirling_table(max(n_max, n))[n][j]


def touchard_poly(n: int) -> PolyZ:
    return PolyZ(tuple(stirling2(n, j) for j in range(n + 1)))


def fubini_poly(n: int) -> PolyZ:
    return PolyZ(tuple(factorial(j) * stirling2(n, j) for j in range(n + 1)))


def falling(alpha, m: int) -> Fraction:
    """Falling factorial ``alpha (alpha-1) ... (alpha-m+1)``; empty product is 1."""
    if m < 0:
        raise BellIndexError("falling factorial length must be non-negative")
    alpha = as_fraction(alpha)
    out = Fraction(1)
    for i in range(m):
        out *= alpha - i
    return out
