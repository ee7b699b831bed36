from .poly import (
    QPoly,
    SERIES_RING,
    at_minus_one,
    betti_numbers,
    euler_char,
    from_q_coefficients,
    kappa,
    poincare,
    poincare_by_convolution,
    q,
    q_coefficients,
    reduced_poincare,
    render,
    t,
)
from .series import (
    EULER_RING,
    EulerResiduals,
    TruncSeries,
    et,
    euler_series,
    psi_series,
    series_to_dict,
    solve_differential,
    verify_differential,
    verify_euler,
    verify_functional,
)

__all__ = [
    "EULER_RING",
    "EulerResiduals",
    "QPoly",
    "SERIES_RING",
    "TruncSeries",
    "at_minus_one",
    "betti_numbers",
    "et",
    "euler_char",
    "euler_series",
    "from_q_coefficients",
    "kappa",
    "poincare",
    "poincare_by_convolution",
    "psi_series",
    "q",
    "q_coefficients",
    "reduced_poincare",
    "render",
    "series_to_dict",
    "solve_differential",
    "t",
    "verify_differential",
    "verify_euler",
    "verify_functional",
]
