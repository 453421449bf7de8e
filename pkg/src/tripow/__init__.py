"""Exact powers and inverses of weighted upper-triangular matrices defined
through formal power series, with a brute-force oracle to check them."""

from .bell import bell_partial, falling, fubini_poly, stirling2, touchard_poly
from .matrix import (
    MatrixSpec,
    TriMatrix,
    VerifyReport,
    Weights,
    apply_weights,
    build_matrix,
    mat_inverse,
    mat_mul,
    power_closed,
    power_oracle,
    special_power,
    verify_equiv,
)
from .series import (
    Series,
    coeff_deriv_at_zero,
    comp_inverse,
    iterate,
    pow_rat,
    series_compose,
    series_derive,
    series_mul,
    series_recip,
    solve_omega,
)

__version__ = "0.1.0"
