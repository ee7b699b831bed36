"""Subsets of {1..n}, nested families and their enumeration."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from ..config import DEFAULT_LIMITS, EngineLimits
from ..errors import BadCardinality, BadParams, BadSubset, CapExceeded, NotMember, NotNested

logger = logging.getLogger(__name__)

Subset = tuple[int, ...]


def make_subset(members: Iterable[int], n: int | None = None) -> Subset:
    items = [int(m) for m in members]
    s = tuple(sorted(set(items)))
    if not s:
        raise BadSubset("subset must be nonempty")
    if len(s) != len(items):
        raise BadSubset(f"repeated elements in {items}")
    if s[0] < 1 or (n is not None and s[-1] > n):
        raise BadSubset(f"{list(s)} is not a subset of 1..{n}")
    return s


def ground_set(n: int) -> Subset:
    return tuple(range(1, n + 1))


def canonical_key(s: Subset) -> tuple[int, Subset]:
    return (-len(s), s)


def to_mask(s: Subset) -> int:
    mask = 0
    for i in s:
        mask |= 1 << (i - 1)
    return mask


def nested_masks(a: int, b: int) -> bool:
    meet = a & b
    return meet == 0 or meet == a or meet == b


def nested(a: Subset, b: Subset) -> bool:
    return nested_masks(to_mask(a), to_mask(b))


def proper_subsets(n: int) -> list[Subset]:
    """All S with 2 <= |S| < n, in canonical order."""
    out = [s for k in range(2, n) for s in combinations(range(1, n + 1), k)]
    out.sort(key=canonical_key)
    return out


@dataclass(frozen=True)
class NestedFamily:
    n: int
    sets: tuple[Subset, ...]
    root_included: bool = False

    @property
    def root(self) -> Subset:
        return ground_set(self.n)

    @property
    def proper(self) -> tuple[Subset, ...]:
        return tuple(s for s in self.sets if len(s) < self.n)

    @property
    def vertices(self) -> tuple[Subset, ...]:
        """Members with N adjoined; N comes first."""
        return (self.root,) + self.proper

    def __len__(self) -> int:
        return len(self.sets)


def canonical_family(sets: Iterable[Iterable[int]], n: int) -> NestedFamily:
    members: set[Subset] = set()
    for raw in sets:
        s = make_subset(raw, n)
        if len(s) < 2:
            raise BadCardinality(f"{list(s)} has fewer than 2 elements")
        members.add(s)
    ordered = sorted(members, key=canonical_key)
    for a, b in combinations(ordered, 2):
        if not nested(a, b):
            raise NotNested(a, b)
    root = ground_set(n)
    return NestedFamily(n=n, sets=tuple(ordered), root_included=root in members)


def _require_vertex(f: NestedFamily, s: Subset) -> None:
    if s not in f.vertices:
        raise NotMember(f"{list(s)} is not a vertex of the family")


def children(f: NestedFamily, s: Subset) -> list[Subset]:
    s = tuple(s)
    _require_vertex(f, s)
    inside = [t for t in f.proper if t != s and set(t) < set(s)]
    return [t for t in inside if not any(set(t) < set(u) for u in inside)]


def chi(f: NestedFamily, s: Subset) -> int:
    kids = children(f, s)
    return len(s) - sum(len(t) for t in kids) + len(kids) - 1


def enumerate_nested_families(
    n: int,
    include_root: bool = False,
    max_size: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
) -> Iterator[NestedFamily]:
    """Depth-first stream of nested families of proper subsets, each exactly once."""
    if n < 2:
        raise BadParams(f"n must be >= 2, got {n}")
    candidates = proper_subsets(n)
    masks = [to_mask(s) for s in candidates]
    root = (ground_set(n),) if include_root else ()

    def extend(chosen: list[int], start: int) -> Iterator[list[int]]:
        yield chosen
        if max_size is not None and len(chosen) >= max_size:
            return
        for idx in range(start, len(candidates)):
            m = masks[idx]
            if all(nested_masks(m, masks[c]) for c in chosen):
                chosen.append(idx)
                yield from extend(chosen, idx + 1)
                chosen.pop()

    emitted = 0
    for chosen in extend([], 0):
        emitted += 1
        if emitted > limits.max_families:
            raise CapExceeded(f"nested families for n={n}", limits.max_families)
        yield NestedFamily(
            n=n,
            sets=root + tuple(candidates[i] for i in chosen),
            root_included=include_root,
        )


def count_strata(n: int, limits: EngineLimits = DEFAULT_LIMITS) -> int:
    total = sum(1 for _ in enumerate_nested_families(n, limits=limits))
    logger.debug(f"[strata] n={n}: {total} strata")
    return total


def count_by_size(n: int, limits: EngineLimits = DEFAULT_LIMITS) -> list[int]:
    """Number of nested families with k proper members, indexed by k."""
    counts = [0] * max(n - 1, 1)
    for f in enumerate_nested_families(n, limits=limits):
        counts[len(f.sets)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def family_to_json(f: NestedFamily) -> str:
    return json.dumps([list(s) for s in f.sets], separators=(",", ":"))


def subset_from_json(raw: object, n: int | None = None) -> Subset:
    """Decoded JSON array of integers (or digit strings) -> validated subset."""
    if not isinstance(raw, list):
        raise BadParams(f"subset must be a JSON array of integers, got {raw!r}")
    members = []
    for x in raw:
        if isinstance(x, str) and x.strip().isdigit():
            x = int(x)
        if isinstance(x, bool) or not isinstance(x, int):
            raise BadParams(f"subset member {x!r} is not an integer")
        members.append(x)
    return make_subset(members, n)


def family_from_json(text: str, n: int) -> NestedFamily:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise BadParams(f"family is not valid JSON: {e}") from None
    if not isinstance(raw, list):
        raise BadParams("family must be a JSON array of integer arrays")
    return canonical_family([subset_from_json(s, n) for s in raw], n)
