"""Divisor/curve pairing, eta classes and the dual-monomial conjecture checker."""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import Matrix

from ..errors import BadParams, BadSubset, DegreeMismatch, NegativeExponent, NormalizationFailure
from ..setcore import NestedFamily, Subset, chi, make_subset
from .classes import CycleClass, variable_key
from .presentation import RingPresentation

logger = logging.getLogger(__name__)


def _proper(p: RingPresentation, subset) -> Subset:
    s = make_subset(subset, p.n)
    if len(s) < 2 or len(s) >= p.n:
        raise BadSubset(f"{list(s)} must satisfy 2 <= |S| < {p.n}")
    return s


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def curve_class(p: RingPresentation, T) -> CycleClass:
    """C_T = delta_T^(d(|T|-1)-1) * delta_N^(d(n-|T|)-1), a class of degree D - 1."""
    t = _proper(p, T)
    a = p.d * (len(t) - 1) - 1
    b = p.d * (p.n - len(t)) - 1
    if a < 0 or b < 0:
        raise NegativeExponent(f"C_{list(t)} has exponents ({a}, {b})")
    return CycleClass.monomial([(t, a), (p.root, b)])


def is_degenerate_curve(p: RingPresentation, T) -> bool:
    return p.d == 1 and len(tuple(T)) == 2


class PairValue(int):
    """An intersection number delta_S . C_T that remembers whether C_T was degenerate."""

    degenerate: bool

    def __new__(cls, value: int, degenerate: bool = False) -> PairValue:
        obj = super().__new__(cls, value)
        obj.degenerate = degenerate
        return obj

    def to_dict(self) -> dict:
        return {"value": int(self), "degenerate": self.degenerate}


def pair(p: RingPresentation, S, T) -> PairValue:
    s = _proper(p, S)
    value = p.integrate(p.delta(s) * curve_class(p, T))
    if value.denominator != 1:
        raise NormalizationFailure(f"delta_{list(s)} . C_{list(T)} = {value} is not an integer")
    degenerate = is_degenerate_curve(p, T)
    if degenerate:
        logger.debug(f"[ring] C_{list(T)} is degenerate for d=1; closed form not expected")
    return PairValue(int(value), degenerate)


def expected_pairing(d: int, n: int, S: Subset, T: Subset) -> int:
    if S == T:
        return _sign(d * (n - 1))
    if d == 1 and len(S) == 2 and set(S) < set(T):
        return _sign(n - 2)
    return 0


def curve_range(p: RingPresentation) -> list[Subset]:
    """Curve indices used by the dual-basis statement: |T| >= 3 when d = 1."""
    low = 3 if p.d == 1 else 2
    return sorted((s for s in p.variables if low <= len(s) < p.n), key=variable_key)


@dataclass
class PairingTable:
    d: int
    n: int
    rows: list[Subset]
    cols: list[Subset]
    entries: list[list[int]]
    mismatches: list[dict] = field(default_factory=list)

    @property
    def matches_closed_form(self) -> bool:
        return not self.mismatches

    def entry(self, S: Subset, T: Subset) -> int:
        return self.entries[self.rows.index(S)][self.cols.index(T)]

    def to_dict(self) -> dict:
        return {
            "rows": [list(s) for s in self.rows],
            "cols": [list(t) for t in self.cols],
            "entries": self.entries,
            "matches_closed_form": self.matches_closed_form,
            "mismatches": self.mismatches,
        }


def pairing_table(p: RingPresentation) -> PairingTable:
    rows = sorted((s for s in p.variables if len(s) < p.n), key=variable_key)
    cols = curve_range(p)
    entries: list[list[int]] = []
    mismatches: list[dict] = []
    for s in rows:
        line = []
        for t in cols:
            value = pair(p, s, t)
            expected = expected_pairing(p.d, p.n, s, t)
            if value != expected:
                mismatches.append(
                    {"S": list(s), "T": list(t), "computed": int(value), "expected": expected}
                )
            line.append(int(value))
        entries.append(line)
    logger.info(
        f"[ring] pairing table d={p.d} n={p.n}: {len(rows)}x{len(cols)}, "
        f"{len(mismatches)} mismatches"
    )
    return PairingTable(p.d, p.n, rows, cols, entries, mismatches)


def pairing_determinant(table: PairingTable) -> int:
    """Determinant of the square block with rows and columns over the curve range."""
    if not table.cols:
        return 1
    block = Matrix([[table.entry(s, t) for t in table.cols] for s in table.cols])
    return int(block.det())


def eta_class(p: RingPresentation, S) -> CycleClass:
    s = make_subset(S, p.n)
    if len(s) < 2:
        raise BadSubset(f"eta needs |S| >= 2, got {list(s)}")
    total = CycleClass.zero(1)
    for t in p.variables:
        if set(s) <= set(t):
            total = total + p.delta(t)
    return total


@dataclass
class NefEntry:
    S: Subset
    T: Subset
    value: int
    degenerate: bool

    @property
    def negative(self) -> bool:
        return self.value < 0


def nef_report(p: RingPresentation) -> list[NefEntry]:
    proper = sorted((s for s in p.variables if len(s) < p.n), key=variable_key)
    report = []
    for s in proper:
        eta = eta_class(p, s)
        for t in proper:
            value = p.integrate(eta * curve_class(p, t))
            report.append(NefEntry(s, t, int(value), is_degenerate_curve(p, t)))
    negatives = sum(1 for e in report if e.negative)
    if negatives:
        logger.warning(f"[ring] nef check d={p.d} n={p.n}: {negatives} negative pairings")
    return report


@dataclass
class ConjectureReport:
    family: list[Subset]
    chi: dict[Subset, int]
    monomial: CycleClass
    integral: Fraction

    @property
    def sign(self) -> int:
        return (self.integral > 0) - (self.integral < 0)

    @property
    def magnitude_ok(self) -> bool:
        return abs(self.integral) == 1

    def to_dict(self) -> dict:
        return {
            "family": [list(s) for s in self.family],
            "chi": [[list(s), c] for s, c in self.chi.items()],
            "monomial": self.monomial.to_dict(),
            "integral": str(self.integral),
            "sign": self.sign,
            "magnitude_ok": self.magnitude_ok,
        }


def conjecture_check(
    p: RingPresentation,
    f: NestedFamily,
    exponents: Mapping[Subset, int] | None = None,
) -> ConjectureReport:
    """Integrate the dual-pair product attached to a nested family.

    Without exponents this is prod_S delta_S^(d chi(S)) * delta_N^(d chi(N) - 1);
    with exponents n_S it is the product of prod delta_S^(n_S) with its
    proposed dual, which must land in the top degree.
    """
    if f.n != p.n:
        raise BadParams(f"family lives over n={f.n}, presentation over n={p.n}")
    chis = {v: chi(f, v) for v in f.vertices}
    root = p.root
    exps = {tuple(k): int(v) for k, v in (exponents or {}).items()}
    for s, e in exps.items():
        if s not in chis:
            raise BadParams(f"{list(s)} is not a member of the family")
        if e < 1:
            raise BadParams(f"exponent of delta_{list(s)} must be positive, got {e}")

    dual = [(s, p.d * chis[s] - exps.get(s, 0)) for s in f.proper]
    dual.append((root, p.d * chis[root] - exps.get(root, 0) - 1))
    bad = [(list(s), e) for s, e in dual if e < 0]
    if bad:
        raise DegreeMismatch(f"dual exponents negative {bad}; chi bookkeeping {_chi_text(chis)}")

    product = CycleClass.monomial(dual) * CycleClass.monomial(exps.items())
    if product.degree != p.top_degree:
        raise DegreeMismatch(
            f"degree {product.degree} != {p.top_degree}; chi bookkeeping {_chi_text(chis)}"
        )
    integral = p.integrate(product)
    report = ConjectureReport(list(f.proper), chis, product, integral)
    if not report.magnitude_ok:
        logger.warning(f"[ring] family {report.family}: integral {integral} has magnitude != 1")
    return report


def _chi_text(chis: Mapping[Subset, int]) -> str:
    return ", ".join(f"chi({list(s)})={c}" for s, c in chis.items())
