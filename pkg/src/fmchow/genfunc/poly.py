"""Exact q-polynomials: kappa_m and the Poincare polynomials of T_{d,n}."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from ..errors import BadParams

logger = logging.getLogger(__name__)

# One ring for q-polynomials and t-series over them; a QPoly is an element free of t.
SERIES_RING, q, t = ring("q,t", QQ)
QPoly = PolyElement


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def q_coefficients(poly: QPoly) -> list[Fraction]:
    """Coefficients in ascending powers of q, trailing zeros stripped."""
    out: list[Fraction] = []
    for (i, j), c in poly.terms():
        if j:
            raise BadParams("expected a polynomial in q only")
        if i >= len(out):
            out.extend([Fraction(0)] * (i + 1 - len(out)))
        out[i] = to_fraction(c)
    return out


def from_q_coefficients(coeffs: list[Fraction | int]) -> QPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if c:
            terms[(i, 0)] = QQ(c.numerator, c.denominator)
    return SERIES_RING.from_dict(terms)


def at_minus_one(poly: QPoly) -> Fraction:
    return sum((c if i % 2 == 0 else -c for i, c in enumerate(q_coefficients(poly))), Fraction(0))


def render(poly: QPoly) -> str:
    """Human readable form such as 1+5q^2+q^4."""
    parts = []
    for i, c in enumerate(q_coefficients(poly)):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "q" if i == 1 else f"q^{i}"
            if mag == 1:
                body = var
            elif mag.denominator == 1:
                body = f"{mag}{var}"
            else:
                body = f"({mag}){var}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    text = "".join(f"{s}{b}" for s, b in parts)
    return text[1:] if text.startswith("+") else text


def kappa(m: int) -> QPoly:
    """Poincare polynomial of P^(m-1): 1 + q^2 + ... + q^(2(m-1)); zero for m = 0."""
    if m < 0:
        raise BadParams(f"kappa needs m >= 0, got {m}")
    total = SERIES_RING.zero
    for i in range(m):
        total += q ** (2 * i)
    return total


@lru_cache(maxsize=None)
def reduced_poincare(d: int, n: int) -> QPoly:
    """p_n = P_n / n!, from p_1 = 1 and the linear-in-p_n recursion."""
    if n == 1:
        return SERIES_RING.one
    m = n - 1
    conv = SERIES_RING.zero
    for i in range(1, m + 1):
        j = m + 1 - i
        conv += j * reduced_poincare(d, i) * reduced_poincare(d, j)
    value = (1 - m * q ** (2 * d)) * reduced_poincare(d, m) + q**2 * kappa(d) * conv
    return value * QQ(1, m + 1)


def _check(d: int, n: int, least_n: int) -> None:
    if d < 1 or n < least_n:
        raise BadParams(f"need d >= 1 and n >= {least_n}, got d={d} n={n}")


def poincare(d: int, n: int) -> QPoly:
    _check(d, n, 1)
    value = factorial(n) * reduced_poincare(d, n)
    if any(c.denominator != 1 for c in q_coefficients(value)):
        raise ArithmeticError(f"n! p_n has non-integer coefficients for d={d} n={n}")
    return value


@lru_cache(maxsize=None)
def _poincare_binomial(d: int, n: int) -> QPoly:
    if n == 2:
        return kappa(d)
    m = n - 1
    conv = SERIES_RING.zero
    for i in range(2, m):
        conv += comb(m, i) * _poincare_binomial(d, i) * _poincare_binomial(d, m + 1 - i)
    return (kappa(d + 1) + m * q**2 * kappa(d - 1)) * _poincare_binomial(d, m) + q**2 * kappa(d) * conv


def poincare_by_convolution(d: int, n: int) -> QPoly:
    """Same polynomial through the binomial-convolution recursion, based at P_2 = kappa_d."""
    _check(d, n, 2)
    return _poincare_binomial(d, n)


def betti_numbers(d: int, n: int) -> list[int]:
    """Even Betti numbers b_0, b_2, ...: Chow ranks by codimension."""
    coeffs = q_coefficients(poincare(d, n))
    return [int(c) for c in coeffs[::2]]


def euler_char(d: int, n: int) -> int:
    return int(at_minus_one(poincare(d, n)))
