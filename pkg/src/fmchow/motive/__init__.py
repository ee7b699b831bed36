from .ranks import (
    LEFSCHETZ_RING,
    CellularSpace,
    L,
    LefschetzPoly,
    blowup,
    dS_ranks,
    euler_at_one,
    fiber_product_ranks,
    fm_ranks,
    from_ranks,
    is_palindromic,
    proj_bundle,
    product_space,
    projective_space,
    ranks,
    tdn_ranks,
    tdn_with_base_ranks,
    tvn_ranks,
    twist_block,
)

__all__ = [
    "LEFSCHETZ_RING",
    "CellularSpace",
    "L",
    "LefschetzPoly",
    "blowup",
    "dS_ranks",
    "euler_at_one",
    "fiber_product_ranks",
    "fm_ranks",
    "from_ranks",
    "is_palindromic",
    "proj_bundle",
    "product_space",
    "projective_space",
    "ranks",
    "tdn_ranks",
    "tdn_with_base_ranks",
    "tvn_ranks",
    "twist_block",
]
