from __future__ import annotations

import pytest

from fmchow.chowring import (
    PairValue,
    conjecture_check,
    curve_class,
    curve_range,
    eta_class,
    expected_pairing,
    is_degenerate_curve,
    nef_report,
    pair,
    pairing_determinant,
    pairing_table,
)
from fmchow.errors import BadParams, BadSubset, DegreeMismatch
from fmchow.setcore import canonical_family, enumerate_nested_families


@pytest.mark.parametrize(
    "d, n, S, T, expected",
    [
        (1, 4, (1, 2, 3), (1, 2, 3), -1),
        (1, 4, (1, 2), (1, 2, 3), 1),
        (1, 4, (1, 2), (1, 3, 4), 0),
        (2, 3, (1, 2), (1, 3), 0),
        (2, 3, (1, 2), (1, 2), 1),
    ],
)
def test_pair_values(presentation, d, n, S, T, expected):
    p = presentation(d, n)
    assert pair(p, S, T) == expected
    assert expected_pairing(d, n, S, T) == expected


def test_curve_class_degree(presentation):
    p = presentation(2, 3)
    c = curve_class(p, (1, 2))
    assert c.degree == p.top_degree - 1
    with pytest.raises(BadSubset):
        curve_class(p, (1, 2, 3))


def test_degenerate_curves(presentation):
    p = presentation(1, 4)
    assert is_degenerate_curve(p, (1, 2))
    assert not is_degenerate_curve(p, (1, 2, 3))
    assert not is_degenerate_curve(presentation(2, 3), (1, 2))
    assert all(len(t) >= 3 for t in curve_range(p))
    assert all(len(t) >= 2 for t in curve_range(presentation(2, 3)))


def test_pair_labels_degenerate_curves(presentation):
    p = presentation(1, 4)
    value = pair(p, (1, 2), (1, 2))
    assert isinstance(value, PairValue)
    assert value.degenerate
    assert value.to_dict() == {"value": int(value), "degenerate": True}
    proper = pair(p, (1, 2, 3), (1, 2, 3))
    assert proper == -1
    assert not proper.degenerate
    assert not pair(presentation(2, 3), (1, 2), (1, 2)).degenerate


@pytest.mark.parametrize("d, n", [(1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2)])
def test_pairing_table_matches_closed_form(presentation, d, n):
    table = pairing_table(presentation(d, n))
    assert table.matches_closed_form, table.mismatches[:1]
    assert abs(pairing_determinant(table)) == 1


@pytest.mark.parametrize("d, n", [(1, 6), (2, 4), (3, 3)])
def test_pairing_table_large(presentation, d, n):
    table = pairing_table(presentation(d, n))
    assert table.matches_closed_form, table.mismatches[:1]
    assert abs(pairing_determinant(table)) == 1


def test_pairing_table_layout(presentation):
    table = pairing_table(presentation(1, 4))
    assert len(table.rows) == 10
    assert table.cols == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert table.entry((1, 2), (1, 2, 3)) == 1
    data = table.to_dict()
    assert data["cols"][0] == [1, 2, 3]
    assert data["mismatches"] == []
    assert pairing_determinant(table) == 1


def test_eta_class(presentation):
    p = presentation(1, 4)
    eta = eta_class(p, (1, 2, 3))
    assert sorted(m.support[0] for m in eta.as_dict()) == [(1, 2, 3), (1, 2, 3, 4)]
    assert eta_class(p, (1, 2, 3, 4)) == p.delta((1, 2, 3, 4))


def test_nef_report_d2_nonnegative(presentation):
    entries = nef_report(presentation(2, 3))
    assert len(entries) == 9
    assert all(e.value >= 0 for e in entries)
    assert not any(e.degenerate for e in entries)


def test_nef_report_flags_negative_d1(presentation):
    entries = {(e.S, e.T): e for e in nef_report(presentation(1, 4))}
    e = entries[((1, 2, 3), (1, 2, 3))]
    assert e.value == -1
    assert e.negative
    assert not e.degenerate
    assert entries[((1, 2), (1, 2))].degenerate


def test_conjecture_empty_family_is_top_class(presentation):
    p = presentation(1, 4)
    report = conjecture_check(p, canonical_family([], 4))
    assert report.integral == 1
    assert report.family == []


@pytest.mark.parametrize("d, n", [(1, 4), (1, 5), (2, 3), (2, 4)])
def test_conjecture_singletons_match_pairing(presentation, d, n):
    p = presentation(d, n)
    for f in enumerate_nested_families(n, max_size=1):
        if len(f.proper) != 1:
            continue
        s = f.proper[0]
        assert conjecture_check(p, f).integral == expected_pairing(d, n, s, s)


@pytest.mark.parametrize("d, n", [(1, 4), (1, 5), (2, 3), (2, 4)])
def test_conjecture_magnitudes(presentation, d, n):
    p = presentation(d, n)
    reports = [conjecture_check(p, f) for f in enumerate_nested_families(n)]
    assert all(r.monomial.degree == p.top_degree for r in reports)
    assert all(r.magnitude_ok for r in reports), [r.to_dict() for r in reports if not r.magnitude_ok][:1]


def test_conjecture_with_exponents(presentation):
    p = presentation(1, 4)
    f = canonical_family([[1, 2, 3]], 4)
    base = conjecture_check(p, f)
    shifted = conjecture_check(p, f, {(1, 2, 3): 1})
    assert shifted.monomial == base.monomial
    assert shifted.integral == base.integral
    with pytest.raises(DegreeMismatch):
        conjecture_check(p, f, {(1, 2, 3): 5})
    with pytest.raises(BadParams):
        conjecture_check(p, f, {(1, 2): 1})
    with pytest.raises(BadParams):
        conjecture_check(p, canonical_family([], 3))


def test_conjecture_report_to_dict(presentation):
    p = presentation(2, 3)
    data = conjecture_check(p, canonical_family([[1, 2]], 3)).to_dict()
    assert data["family"] == [[1, 2]]
    assert data["integral"] == "1"
    assert data["sign"] == 1
    assert data["magnitude_ok"]
