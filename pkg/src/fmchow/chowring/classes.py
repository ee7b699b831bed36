"""Boundary monomials and cycle classes: formal combinations of products of delta_S.

Grading is by codimension: every delta_S sits in degree 1, so a curve class
on T_{d,n} lives in degree D - 1 where D = d(n-1) - 1.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import BadParams, BadSubset, NegativeExponent
from ..setcore import Subset, make_subset, nested


def variable_key(s: Subset) -> tuple[int, Subset]:
    return (len(s), s)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class BoundaryMonomial:
    factors: tuple[tuple[Subset, int], ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Iterable[int], int]]) -> BoundaryMonomial:
        exps: dict[Subset, int] = defaultdict(int)
        for subset, e in pairs:
            s = make_subset(subset)
            if len(s) < 2:
                raise BadSubset(f"delta index {list(s)} needs at least 2 elements")
            if e < 0:
                raise NegativeExponent(f"exponent {e} on delta_{list(s)}")
            if e:
                exps[s] += e
        return cls(tuple(sorted(exps.items(), key=lambda kv: variable_key(kv[0]))))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def support(self) -> tuple[Subset, ...]:
        return tuple(s for s, _ in self.factors)

    @property
    def is_nested(self) -> bool:
        """False means the monomial is zero by the overlap relation."""
        return all(nested(a, b) for a, b in combinations(self.support, 2))

    def __mul__(self, other: BoundaryMonomial) -> BoundaryMonomial:
        return BoundaryMonomial.from_pairs(self.factors + other.factors)

    def to_dict(self) -> dict:
        return {"vars": [list(s) for s in self.support], "exps": [e for _, e in self.factors]}

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for s, e in self.factors:
            name = "d_" + "".join(map(str, s)) if max(s) < 10 else f"d_{{{','.join(map(str, s))}}}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class CycleClass:
    degree: int
    terms: tuple[tuple[BoundaryMonomial, Fraction], ...] = ()

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[BoundaryMonomial, Fraction | int], degree: int | None = None
    ) -> CycleClass:
        cleaned = {m: Fraction(c) for m, c in mapping.items() if c}
        degrees = {m.degree for m in cleaned}
        if len(degrees) > 1:
            raise BadParams(f"cycle class is not homogeneous: degrees {sorted(degrees)}")
        if degree is None:
            if not degrees:
                raise BadParams("degree of the zero class must be given")
            degree = degrees.pop()
        elif degrees and degrees != {degree}:
            raise BadParams(f"monomials have degree {degrees.pop()}, expected {degree}")
        return cls(degree, tuple(sorted(cleaned.items())))

    @classmethod
    def monomial(cls, pairs: Iterable[tuple[Iterable[int], int]], coef: Fraction | int = 1) -> CycleClass:
        m = BoundaryMonomial.from_pairs(pairs)
        return cls.from_mapping({m: coef}, degree=m.degree)

    @classmethod
    def zero(cls, degree: int) -> CycleClass:
        return cls(degree, ())

    def as_dict(self) -> dict[BoundaryMonomial, Fraction]:
        return dict(self.terms)

    @property
    def is_formally_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: CycleClass) -> CycleClass:
        if self.degree != other.degree:
            raise BadParams(f"cannot add classes of degree {self.degree} and {other.degree}")
        acc: dict[BoundaryMonomial, Fraction] = defaultdict(Fraction)
        for m, c in self.terms + other.terms:
            acc[m] += c
        return CycleClass.from_mapping(acc, degree=self.degree)

    def __neg__(self) -> CycleClass:
        return CycleClass(self.degree, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: CycleClass) -> CycleClass:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> CycleClass:
        return CycleClass.from_mapping({m: c * factor for m, c in self.terms}, degree=self.degree)

    def __mul__(self, other: CycleClass) -> CycleClass:
        acc: dict[BoundaryMonomial, Fraction] = defaultdict(Fraction)
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                acc[m1 * m2] += c1 * c2
        return CycleClass.from_mapping(acc, degree=self.degree + other.degree)

    def __pow__(self, e: int) -> CycleClass:
        if e < 0:
            raise NegativeExponent(f"negative power {e}")
        result = CycleClass.monomial([])
        for _ in range(e):
            result = result * self
        return result

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "monomials": [
                {**m.to_dict(), "coef": format_fraction(c)} for m, c in self.terms
            ],
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            str(m) if c == 1 else f"({format_fraction(c)})*{m}" for m, c in self.terms
        )
