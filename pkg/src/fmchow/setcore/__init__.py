from .families import (
    NestedFamily,
    Subset,
    canonical_family,
    chi,
    children,
    count_by_size,
    count_strata,
    enumerate_nested_families,
    family_from_json,
    family_to_json,
    ground_set,
    make_subset,
    nested,
    proper_subsets,
    subset_from_json,
)
from .trees import StableTree, family_to_tree, is_stable, tree_to_family, unstable_vertices

__all__ = [
    "NestedFamily",
    "StableTree",
    "Subset",
    "canonical_family",
    "chi",
    "children",
    "count_by_size",
    "count_strata",
    "enumerate_nested_families",
    "family_from_json",
    "family_to_json",
    "family_to_tree",
    "ground_set",
    "is_stable",
    "make_subset",
    "nested",
    "proper_subsets",
    "subset_from_json",
    "tree_to_family",
    "unstable_vertices",
]
