from __future__ import annotations

from fractions import Fraction

import pytest

from fmchow.errors import BadParams
from fmchow.genfunc import (
    at_minus_one,
    betti_numbers,
    euler_char,
    euler_series,
    from_q_coefficients,
    kappa,
    poincare,
    poincare_by_convolution,
    psi_series,
    q_coefficients,
    reduced_poincare,
    render,
    series_to_dict,
    solve_differential,
    verify_differential,
    verify_euler,
    verify_functional,
)


@pytest.mark.parametrize(
    "d, n, expected",
    [
        (1, 2, "1"),
        (2, 2, "1+q^2"),
        (1, 3, "1+q^2"),
        (1, 4, "1+5q^2+q^4"),
        (2, 3, "1+4q^2+4q^4+q^6"),
        (1, 5, "1+16q^2+16q^4+q^6"),
    ],
)
def test_poincare_polynomials(d, n, expected):
    assert render(poincare(d, n)) == expected


@pytest.mark.parametrize("d, n, chi", [(1, 3, 2), (2, 2, 2), (1, 4, 7), (2, 3, 10), (1, 5, 34)])
def test_euler_characteristic(d, n, chi):
    assert euler_char(d, n) == chi
    assert sum(betti_numbers(d, n)) == chi


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_poincare_shape(d, n):
    coeffs = q_coefficients(poincare(d, n))
    assert all(c.denominator == 1 and c >= 0 for c in coeffs)
    assert coeffs == coeffs[::-1]
    assert len(coeffs) - 1 == 2 * (d * (n - 1) - 1)
    assert all(c == 0 for c in coeffs[1::2])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_both_recursions_agree(d):
    for n in range(2, 11):
        assert poincare_by_convolution(d, n) == poincare(d, n)


def test_reduced_coefficients_are_rational():
    assert render(reduced_poincare(1, 2)) == "1/2"
    assert render(reduced_poincare(2, 2)) == "1/2+(1/2)q^2"
    assert reduced_poincare(2, 1) == 1


def test_kappa():
    assert kappa(0) == 0
    assert kappa(1) == 1
    assert render(kappa(3)) == "1+q^2+q^4"


def test_coefficient_helpers():
    poly = from_q_coefficients([1, 0, Fraction(-2, 3)])
    assert q_coefficients(poly) == [1, 0, Fraction(-2, 3)]
    assert at_minus_one(poly) == Fraction(1, 3)
    assert render(poly) == "1-(2/3)q^2"
    assert render(from_q_coefficients([])) == "0"


@pytest.mark.parametrize("d", [1, 2, 3])
def test_differential_equation(d):
    assert verify_differential(d, 8).is_zero


@pytest.mark.parametrize("d", [1, 2, 3])
def test_functional_equation(d):
    assert verify_functional(d, 8).is_zero


@pytest.mark.parametrize("d", [1, 2, 3])
def test_differential_equation_has_unique_solution(d):
    solved = solve_differential(d, 8)
    psi = psi_series(d, 8)
    assert solved.coefficients() == psi.coefficients()


def test_psi_coefficients():
    psi = psi_series(1, 5)
    assert psi.coefficient(3) == reduced_poincare(1, 3)
    assert psi.first_nonzero() == 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_euler_equations(d):
    assert verify_euler(d, 8).is_zero


def test_euler_series_values():
    eta = euler_series(1, 3)
    assert eta.coefficients() == [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3)]


def test_series_to_dict():
    data = series_to_dict(psi_series(1, 2))
    assert data == {"order": 2, "coefficients": [[], ["1"], ["1/2"]]}
    assert series_to_dict(euler_series(2, 2)) == {"order": 2, "coefficients": ["0", "1", "1"]}


def test_order_validation():
    with pytest.raises(BadParams):
        verify_differential(1, 1)
    with pytest.raises(BadParams):
        psi_series(1, 0)
    with pytest.raises(BadParams):
        poincare(0, 3)
