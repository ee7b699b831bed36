"""Chow-rank polynomials in the Lefschetz twist L.

The coefficient of L^i is the rank of the codimension-i Chow group. Ranks
of projective bundles and blowups follow the standard decompositions; the
recursions for T_{d,n}, T_{V,n} and X[n] assemble them along the blowup
towers of these spaces.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from sympy.polys.domains import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, ring

from ..errors import BadParams, DivisionFailure, NotCellular

logger = logging.getLogger(__name__)

LEFSCHETZ_RING, L = ring("L", ZZ)
LefschetzPoly = PolyElement


def ranks(poly: LefschetzPoly) -> list[int]:
    out: list[int] = []
    for (i,), c in poly.terms():
        if i >= len(out):
            out.extend([0] * (i + 1 - len(out)))
        out[i] = int(c)
    return out


def from_ranks(values) -> LefschetzPoly:
    return LEFSCHETZ_RING.from_dict({(i,): ZZ(int(c)) for i, c in enumerate(values) if c})


def twist_block(lo: int, hi: int) -> LefschetzPoly:
    """L^lo + ... + L^hi (zero when hi < lo)."""
    total = LEFSCHETZ_RING.zero
    for j in range(lo, hi + 1):
        total += L**j
    return total


def is_palindromic(poly: LefschetzPoly) -> bool:
    r = ranks(poly)
    return r == r[::-1]


def euler_at_one(poly: LefschetzPoly) -> int:
    return sum(ranks(poly))


def proj_bundle(base: LefschetzPoly, r: int) -> LefschetzPoly:
    """Projectivization of a rank-r bundle: base * (1 + L + ... + L^(r-1))."""
    if r < 1:
        raise BadParams(f"bundle rank must be >= 1, got {r}")
    return base * twist_block(0, r - 1)


def blowup(total: LefschetzPoly, center: LefschetzPoly, codim: int) -> LefschetzPoly:
    """Blowup along a regularly embedded center of codimension codim."""
    if codim < 1:
        raise BadParams(f"center codimension must be >= 1, got {codim}")
    return total + center * twist_block(1, codim - 1)


def fiber_product_ranks(base_x: LefschetzPoly, a: LefschetzPoly, b: LefschetzPoly) -> LefschetzPoly:
    """a * b / base_x for two spaces whose ranks factor through the common base."""
    try:
        a.exquo(base_x)
        b.exquo(base_x)
        return (a * b).exquo(base_x)
    except (ExactQuotientFailed, ZeroDivisionError) as e:
        raise DivisionFailure(f"{base_x.as_expr()} does not divide the factors: {e}") from None


def _check_dn(d: int, n: int) -> None:
    if d < 1 or n < 2:
        raise BadParams(f"need d >= 1 and n >= 2, got d={d} n={n}")


@lru_cache(maxsize=None)
def tdn_ranks(d: int, n: int) -> LefschetzPoly:
    _check_dn(d, n)
    if n == 2:
        return twist_block(0, d - 1)
    m = n - 1
    collisions = LEFSCHETZ_RING.zero
    for s in range(2, m):
        collisions += comb(m, s) * tdn_ranks(d, s) * tdn_ranks(d, m - s + 1)
    prev = tdn_ranks(d, m)
    return prev * twist_block(0, d) + collisions * twist_block(1, d) + m * prev * twist_block(1, d - 1)


@lru_cache(maxsize=None)
def _tvn(base: tuple[int, ...], d: int, n: int) -> LefschetzPoly:
    base_poly = from_ranks(base)
    if n == 2:
        return proj_bundle(base_poly, d)
    m = n - 1
    collisions = LEFSCHETZ_RING.zero
    for s in range(2, m):
        collisions += comb(m, s) * fiber_product_ranks(
            base_poly, _tvn(base, d, s), _tvn(base, d, m - s + 1)
        )
    prev = _tvn(base, d, m)
    return prev * twist_block(0, d) + collisions * twist_block(1, d) + m * prev * twist_block(1, d - 1)


def tvn_ranks(base: LefschetzPoly, d: int, n: int) -> LefschetzPoly:
    """T_{V,n} for a rank-d bundle V over a base with rank polynomial ``base``."""
    _check_dn(d, n)
    if not base:
        raise BadParams("base rank polynomial must be nonzero")
    return _tvn(tuple(ranks(base)), d, n)


def tdn_with_base_ranks(d: int, n: int, base: LefschetzPoly) -> LefschetzPoly:
    """T_{d,n} x B, i.e. T_{V,n} for the trivial bundle over B."""
    return tvn_ranks(base, d, n)


@dataclass(frozen=True)
class CellularSpace:
    name: str
    dimension: int
    rank_vector: tuple[int, ...]
    cellular: bool = True

    def __post_init__(self):
        if len(self.rank_vector) != self.dimension + 1:
            raise BadParams(
                f"{self.name}: rank vector {list(self.rank_vector)} does not match dimension {self.dimension}"
            )

    @property
    def poly(self) -> LefschetzPoly:
        return from_ranks(self.rank_vector)


def projective_space(m: int) -> CellularSpace:
    if m < 1:
        raise BadParams(f"projective space dimension must be >= 1, got {m}")
    return CellularSpace(f"P{m}", m, tuple([1] * (m + 1)))


def product_space(*dims: int) -> CellularSpace:
    if not dims:
        raise BadParams("product of zero projective spaces")
    poly = LEFSCHETZ_RING.one
    for m in dims:
        poly *= projective_space(m).poly
    return CellularSpace("x".join(f"P{m}" for m in dims), sum(dims), tuple(ranks(poly)))


def dS_ranks(X: CellularSpace, n: int, s: int) -> LefschetzPoly:
    """Rank shadow of the boundary divisor D(S), |S| = s, over X[n - s + 1]."""
    return fm_ranks(X, n - s + 1) * tdn_ranks(X.dimension, s)


@lru_cache(maxsize=None)
def fm_ranks(X: CellularSpace, n: int) -> LefschetzPoly:
    """Ranks of the Fulton-MacPherson space X[n].

    The collision sum runs over S contained in N including S = N, which
    accounts for the first blowup of the tower along the image of D(N).
    """
    if X.dimension < 1 or n < 1:
        raise BadParams(f"need dim X >= 1 and n >= 1, got {X.dimension}, {n}")
    if n >= 2 and not X.cellular:
        raise NotCellular(f"{X.name} has no cellular decomposition")
    if n == 1:
        return X.poly
    d = X.dimension
    m = n - 1
    prev = fm_ranks(X, m)
    collisions = LEFSCHETZ_RING.zero
    for s in range(2, m + 1):
        collisions += comb(m, s) * dS_ranks(X, m, s)
    result = prev * X.poly + collisions * twist_block(1, d) + m * prev * twist_block(1, d - 1)
    logger.debug(f"[motive] {X.name}[{n}]: {ranks(result)}")
    return result
