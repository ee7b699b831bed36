"""Combinatorial types of stable n-pointed rooted trees.

A vertex is a subset S of N; its markings are the points of S lying in no
child of S plus one marking per child. Positions of points inside a
component are moduli and are not represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .families import NestedFamily, Subset, canonical_family, children


@dataclass(frozen=True)
class StableTree:
    n: int
    vertices: tuple[Subset, ...]
    parents: tuple[Subset | None, ...]
    points: tuple[tuple[int, ...], ...]
    child_vertices: tuple[tuple[Subset, ...], ...]

    @cached_property
    def _index(self) -> dict[Subset, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def root(self) -> Subset:
        return self.vertices[0]

    def parent_of(self, v: Subset) -> Subset | None:
        return self.parents[self._index[v]]

    def markings(self, v: Subset) -> list[int | Subset]:
        i = self._index[v]
        return [*self.points[i], *self.child_vertices[i]]

    def marking_count(self, v: Subset) -> int:
        i = self._index[v]
        return len(self.points[i]) + len(self.child_vertices[i])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [
                {
                    "vertex": list(v),
                    "parent": list(p) if p is not None else None,
                    "points": list(pts),
                    "children": [list(c) for c in kids],
                }
                for v, p, pts, kids in zip(
                    self.vertices, self.parents, self.points, self.child_vertices
                )
            ],
        }


def family_to_tree(f: NestedFamily) -> StableTree:
    vertices = f.vertices
    parents: list[Subset | None] = []
    points: list[tuple[int, ...]] = []
    kids: list[tuple[Subset, ...]] = []
    for v in vertices:
        supersets = [u for u in vertices if set(v) < set(u)]
        parents.append(min(supersets, key=len) if supersets else None)
        ch = tuple(children(f, v))
        covered = set().union(*ch) if ch else set()
        points.append(tuple(i for i in v if i not in covered))
        kids.append(ch)
    return StableTree(
        n=f.n,
        vertices=vertices,
        parents=tuple(parents),
        points=tuple(points),
        child_vertices=tuple(kids),
    )


def tree_to_family(tree: StableTree) -> NestedFamily:
    return canonical_family(tree.vertices[1:], tree.n)


def unstable_vertices(tree: StableTree) -> list[tuple[Subset, int]]:
    """Vertices with fewer than two markings, paired with their marking count."""
    return [(v, tree.marking_count(v)) for v in tree.vertices if tree.marking_count(v) < 2]


def is_stable(tree: StableTree) -> bool:
    return not unstable_vertices(tree)
