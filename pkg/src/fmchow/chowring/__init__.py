from .classes import BoundaryMonomial, CycleClass, format_fraction
from .pairing import (
    ConjectureReport,
    NefEntry,
    PairingTable,
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
from .presentation import GradedBasis, RingPresentation, build_presentation

__all__ = [
    "BoundaryMonomial",
    "ConjectureReport",
    "CycleClass",
    "GradedBasis",
    "NefEntry",
    "PairingTable",
    "PairValue",
    "RingPresentation",
    "build_presentation",
    "conjecture_check",
    "curve_class",
    "curve_range",
    "eta_class",
    "expected_pairing",
    "format_fraction",
    "is_degenerate_curve",
    "nef_report",
    "pair",
    "pairing_determinant",
    "pairing_table",
]
