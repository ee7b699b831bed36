"""Truncated t-series: the generating function psi(q,t), its defining
equations, and the Euler-characteristic series eta(t) = psi(-1, t)."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp, rs_log, rs_mul, rs_trunc
from sympy.polys.rings import PolyElement, ring

from ..errors import BadParams
from .poly import SERIES_RING, at_minus_one, kappa, q, q_coefficients, reduced_poincare, t, to_fraction

logger = logging.getLogger(__name__)

EULER_RING, et = ring("t", QQ)


@dataclass(frozen=True)
class TruncSeries:
    """A series in t known through t^order; t is the last ring generator."""

    order: int
    element: PolyElement

    @property
    def is_zero(self) -> bool:
        return not self.element

    def coefficient(self, n: int):
        """Coefficient of t^n: a q-polynomial over QQ[q,t], a Fraction over QQ[t]."""
        ring_ = self.element.ring
        terms = {m[:-1] + (0,): c for m, c in self.element.terms() if m[-1] == n}
        if ring_.ngens == 1:
            return to_fraction(terms.get((0,), QQ(0)))
        return ring_.from_dict(terms)

    def coefficients(self) -> list:
        return [self.coefficient(i) for i in range(self.order + 1)]

    def first_nonzero(self) -> int | None:
        degrees = [m[-1] for m in self.element.monoms()]
        return min(degrees) if degrees else None


def _check(M: int, least: int) -> None:
    if M < least:
        raise BadParams(f"truncation order must be >= {least}, got {M}")


def psi_series(d: int, M: int) -> TruncSeries:
    _check(M, 1)
    element = SERIES_RING.zero
    for n in range(1, M + 1):
        element += reduced_poincare(d, n) * t**n
    return TruncSeries(M, element)


def verify_differential(d: int, M: int) -> TruncSeries:
    """Residual of (1 + q^{2d} t - q^2 kappa_d psi) psi_t - (1 + psi) through t^(M-1)."""
    _check(M, 2)
    psi = psi_series(d, M).element
    factor = 1 + q ** (2 * d) * t - q**2 * kappa(d) * psi
    lhs = rs_mul(factor, psi.diff(t), t, M)
    residual = lhs - rs_trunc(1 + psi, t, M)
    return TruncSeries(M - 1, residual)


def verify_functional(d: int, M: int) -> TruncSeries:
    """Residual of kappa_d (1+psi)^{q^{2d}} against the right-hand side, through t^M.

    The power with exponent q^{2d} is exp(q^{2d} log(1 + psi)) as a formal series.
    """
    _check(M, 2)
    prec = M + 1
    psi = psi_series(d, M).element
    k = kappa(d)
    power = rs_exp(q ** (2 * d) * rs_log(1 + psi, t, prec), t, prec)
    lhs = k * power
    rhs = q ** (2 * d + 2) * k * psi - q ** (2 * d) * (q ** (2 * d) - 1) * t + k
    return TruncSeries(M, rs_trunc(lhs - rhs, t, prec))


def solve_differential(d: int, M: int) -> TruncSeries:
    """Solve the differential equation order by order from psi = t + O(t^2)."""
    _check(M, 1)
    psi = t
    factor_base = 1 + q ** (2 * d) * t
    k = q**2 * kappa(d)
    for n in range(1, M):
        lhs = rs_mul(factor_base - k * psi, psi.diff(t), t, n + 1)
        residual = TruncSeries(n, lhs - rs_trunc(1 + psi, t, n + 1)).coefficient(n)
        psi += -residual * QQ(1, n + 1) * t ** (n + 1)
    return TruncSeries(M, psi)


def euler_series(d: int, M: int) -> TruncSeries:
    _check(M, 1)
    element = EULER_RING.zero
    for n in range(1, M + 1):
        value = at_minus_one(reduced_poincare(d, n))
        element += QQ(value.numerator, value.denominator) * et**n
    return TruncSeries(M, element)


@dataclass(frozen=True)
class EulerResiduals:
    functional: TruncSeries
    differential: TruncSeries

    @property
    def is_zero(self) -> bool:
        return self.functional.is_zero and self.differential.is_zero


def verify_euler(d: int, M: int) -> EulerResiduals:
    """Residuals of d(1+eta)log(1+eta) = (d+1)eta - t and (1+t-d eta) eta_t = 1+eta."""
    _check(M, 2)
    eta = euler_series(d, M).element
    prec = M + 1
    lhs = rs_mul(d * (1 + eta), rs_log(1 + eta, et, prec), et, prec)
    functional = rs_trunc(lhs - ((d + 1) * eta - et), et, prec)
    differential = rs_mul(1 + et - d * eta, eta.diff(et), et, M) - rs_trunc(1 + eta, et, M)
    return EulerResiduals(TruncSeries(M, functional), TruncSeries(M - 1, differential))


def series_to_dict(series: TruncSeries) -> dict:
    coeffs = []
    for c in series.coefficients():
        if isinstance(c, Fraction):
            coeffs.append(str(c))
        else:
            coeffs.append([str(x) for x in q_coefficients(c)])
    return {"order": series.order, "coefficients": coeffs}
