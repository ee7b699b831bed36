"""The presented Chow ring Z[delta_S] / I_{d,n} of T_{d,n}.

The ideal is generated by the overlap products delta_S * delta_T (S, T
properly overlapping) and by the powers (Sigma_ij)^d. Working degree by
degree, the overlap relations are absorbed by using only monomials with
pairwise nested support as columns; the degree-k relation rows are the
nested parts of (Sigma_ij)^d * m for nested m of degree k - d. Each graded
piece is reduced with an exact sparse rref over QQ.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial, prod

from sympy.polys.domains import QQ
from sympy.polys.matrices.sdm import SDM

from ..config import DEFAULT_LIMITS, EngineLimits
from ..errors import BadParams, BadSubset, CapExceeded, DegreeOutOfRange, NormalizationFailure
from ..setcore import Subset, ground_set, make_subset
from ..setcore.families import nested_masks, to_mask
from .classes import BoundaryMonomial, CycleClass, variable_key

logger = logging.getLogger(__name__)

# Internal monomial key: ((variable index, exponent), ...) by increasing index.
Key = tuple[tuple[int, int], ...]


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    monomials: tuple[BoundaryMonomial, ...]
    relation_count: int
    matrix_rank: int
    pivots: tuple[int, ...]
    reduced_rows: dict[int, dict[int, object]]

    @property
    def rank(self) -> int:
        return len(self.monomials) - self.matrix_rank

    @property
    def standard_columns(self) -> tuple[int, ...]:
        """Columns not eliminated by a pivot: a basis of the quotient."""
        pivot_set = set(self.pivots)
        return tuple(c for c in range(len(self.monomials)) if c not in pivot_set)

    @property
    def standard_monomials(self) -> tuple[BoundaryMonomial, ...]:
        return tuple(self.monomials[c] for c in self.standard_columns)


class RingPresentation:
    def __init__(self, d: int, n: int, limits: EngineLimits = DEFAULT_LIMITS):
        self.d = d
        self.n = n
        self.limits = limits
        self.variables: tuple[Subset, ...] = tuple(
            sorted(
                (s for k in range(2, n + 1) for s in combinations(range(1, n + 1), k)),
                key=variable_key,
            )
        )
        self._index = {s: i for i, s in enumerate(self.variables)}
        self._masks = [to_mask(s) for s in self.variables]
        self._keys: dict[int, list[Key]] = {}
        self._bases: dict[int, GradedBasis] = {}
        self._columns: dict[int, dict[Key, int]] = {}
        self._sigma_powers: dict[tuple[int, int], list[tuple[Key, int]]] = {}
        self._lock = threading.RLock()

    @property
    def top_degree(self) -> int:
        return self.d * (self.n - 1) - 1

    @property
    def root(self) -> Subset:
        return ground_set(self.n)

    def __repr__(self) -> str:
        return f"RingPresentation(d={self.d}, n={self.n}, variables={len(self.variables)})"

    # -- conversions -------------------------------------------------------

    def key_of(self, m: BoundaryMonomial) -> Key:
        try:
            return tuple(sorted((self._index[s], e) for s, e in m.factors))
        except KeyError as e:
            raise BadSubset(f"delta_{list(e.args[0])} is not a variable for n={self.n}") from None

    def monomial_of(self, key: Key) -> BoundaryMonomial:
        return BoundaryMonomial(tuple((self.variables[i], e) for i, e in key))

    def _key_is_nested(self, key: Key) -> bool:
        masks = [self._masks[i] for i, _ in key]
        return all(nested_masks(a, b) for a, b in combinations(masks, 2))

    # -- class constructors ------------------------------------------------

    def delta(self, subset, exponent: int = 1) -> CycleClass:
        s = make_subset(subset, self.n)
        if s not in self._index:
            raise BadSubset(f"delta_{list(s)} is not a variable for n={self.n}")
        return CycleClass.monomial([(s, exponent)])

    def top_class(self) -> CycleClass:
        return self.delta(self.root, self.top_degree)

    def sigma_class(self, a: int, b: int) -> CycleClass:
        if a == b or not (1 <= a <= self.n and 1 <= b <= self.n):
            raise BadParams(f"Sigma needs two distinct points of 1..{self.n}, got {a}, {b}")
        return CycleClass.from_mapping(
            {BoundaryMonomial(((s, 1),)): 1 for s in self.variables if a in s and b in s},
            degree=1,
        )

    # -- graded pieces -----------------------------------------------------

    def _nested_keys(self, k: int) -> list[Key]:
        with self._lock:
            if k in self._keys:
                return self._keys[k]
            out: list[Key] = []
            masks = self._masks
            cap = self.limits.max_monomials

            def rec(start: int, remaining: int, chosen: list[tuple[int, int]], chosen_masks: list[int]):
                if remaining == 0:
                    out.append(tuple(chosen))
                    if len(out) > cap:
                        raise CapExceeded(f"nested monomials of degree {k}", cap)
                    return
                for idx in range(start, len(masks)):
                    m = masks[idx]
                    if not all(nested_masks(m, c) for c in chosen_masks):
                        continue
                    chosen_masks.append(m)
                    for e in range(1, remaining + 1):
                        chosen.append((idx, e))
                        rec(idx + 1, remaining - e, chosen, chosen_masks)
                        chosen.pop()
                    chosen_masks.pop()

            rec(0, k, [], [])
            nvars = len(masks)

            def dense(key: Key) -> tuple[int, ...]:
                vec = [0] * nvars
                for i, e in key:
                    vec[i] = e
                return tuple(vec)

            # delta_N-heavy monomials sort last, so delta_N^D stays a standard column
            out.sort(key=dense, reverse=True)
            self._keys[k] = out
            return out

    def _sigma_power(self, a: int, b: int) -> list[tuple[Key, int]]:
        """Nested terms of (Sigma_ab)^d with multinomial coefficients."""
        pair = (a, b)
        if pair not in self._sigma_powers:
            idxs = [i for i, s in enumerate(self.variables) if a in s and b in s]
            terms: list[tuple[Key, int]] = []
            for combo in combinations_with_replacement(idxs, self.d):
                counts = Counter(combo)
                key = tuple(sorted(counts.items()))
                if not self._key_is_nested(key):
                    continue
                coef = factorial(self.d) // prod(factorial(e) for e in counts.values())
                terms.append((key, coef))
            self._sigma_powers[pair] = terms
        return self._sigma_powers[pair]

    def _relation_rows(self, k: int, columns: dict[Key, int]) -> Iterator[dict[int, object]]:
        if k < self.d:
            return
        lower = self._nested_keys(k - self.d)
        for a, b in combinations(range(1, self.n + 1), 2):
            sigma = self._sigma_power(a, b)
            for m in lower:
                m_exps = dict(m)
                m_masks = [self._masks[i] for i in m_exps]
                row: dict[int, object] = {}
                for skey, coef in sigma:
                    if not all(
                        nested_masks(self._masks[i], mm)
                        for i, _ in skey
                        if i not in m_exps
                        for mm in m_masks
                    ):
                        continue
                    merged = dict(m_exps)
                    for i, e in skey:
                        merged[i] = merged.get(i, 0) + e
                    col = columns[tuple(sorted(merged.items()))]
                    row[col] = row.get(col, QQ(0)) + QQ(coef)
                row = {c: v for c, v in row.items() if v}
                if row:
                    yield row

    def graded_basis(self, k: int) -> GradedBasis:
        if k < 0:
            raise DegreeOutOfRange(f"degree {k} is negative")
        with self._lock:
            if k in self._bases:
                return self._bases[k]
            keys = self._nested_keys(k)
            columns = {key: c for c, key in enumerate(keys)}
            rows = dict(enumerate(self._relation_rows(k, columns)))
            if rows:
                reduced, pivots = SDM(rows, (len(rows), len(keys)), QQ).rref()
                reduced_rows = {min(r): dict(r) for r in reduced.values() if r}
            else:
                pivots, reduced_rows = [], {}
            basis = GradedBasis(
                degree=k,
                monomials=tuple(self.monomial_of(key) for key in keys),
                relation_count=len(rows),
                matrix_rank=len(pivots),
                pivots=tuple(sorted(pivots)),
                reduced_rows=reduced_rows,
            )
            logger.info(
                f"[ring] d={self.d} n={self.n} k={k}: {len(keys)} monomials, "
                f"{len(rows)} relations, quotient rank {basis.rank}"
            )
            self._bases[k] = basis
            self._columns[k] = columns
            return basis

    def rank(self, k: int) -> int:
        if k > self.top_degree:
            return 0
        return self.graded_basis(k).rank

    def ranks(self) -> list[int]:
        return [self.rank(k) for k in range(self.top_degree + 1)]

    # -- reduction ---------------------------------------------------------

    def _check_degree(self, c: CycleClass) -> None:
        if not 0 <= c.degree <= self.top_degree:
            raise DegreeOutOfRange(
                f"class of degree {c.degree} outside 0..{self.top_degree} for d={self.d} n={self.n}"
            )

    def _reduce(self, c: CycleClass) -> tuple[GradedBasis, dict[int, object]]:
        self._check_degree(c)
        basis = self.graded_basis(c.degree)
        columns = self._columns[c.degree]
        vec: dict[int, object] = {}
        for m, coef in c.terms:
            key = self.key_of(m)
            if not self._key_is_nested(key):
                continue
            col = columns[key]
            vec[col] = vec.get(col, QQ(0)) + _to_qq(coef)
        for p in [col for col in vec if col in basis.reduced_rows]:
            factor = vec.get(p)
            if not factor:
                continue
            for col, v in basis.reduced_rows[p].items():
                vec[col] = vec.get(col, QQ(0)) - factor * v
        return basis, {col: v for col, v in vec.items() if v}

    def normal_form(self, c: CycleClass) -> CycleClass:
        basis, vec = self._reduce(c)
        return CycleClass.from_mapping(
            {basis.monomials[col]: _from_qq(v) for col, v in vec.items()}, degree=c.degree
        )

    def is_zero(self, c: CycleClass) -> bool:
        return not self._reduce(c)[1]

    def integrate(self, c: CycleClass) -> Fraction:
        """Degree map normalized by the integral of delta_N^D being (-1)^D."""
        D = self.top_degree
        if c.degree != D:
            raise DegreeOutOfRange(f"integrand has degree {c.degree}, top degree is {D}")
        basis, top = self._reduce(self.top_class())
        if basis.rank != 1:
            raise NormalizationFailure(f"top graded piece has rank {basis.rank}, expected 1")
        if not top:
            raise NormalizationFailure("delta_N^D reduces to zero")
        (col, mu), = top.items()
        lam = self._reduce(c)[1].get(col, QQ(0))
        sign = -1 if D % 2 else 1
        return _from_qq(lam / mu) * sign


def build_presentation(d: int, n: int, limits: EngineLimits = DEFAULT_LIMITS) -> RingPresentation:
    if d < 1 or n < 2:
        raise BadParams(f"need d >= 1 and n >= 2, got d={d} n={n}")
    if d * n > limits.max_dn:
        raise CapExceeded(f"d*n = {d * n}", limits.max_dn)
    return RingPresentation(d, n, limits)
