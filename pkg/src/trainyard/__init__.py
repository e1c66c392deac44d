"""trainyard: exact arithmetic on signed rod sets and their train counts.

A rod set is a finite signed multiset of positive integer lengths; its
net train count F(n, R) counts ordered rod sequences of total length n,
weighted by sign.  This package computes those counts exactly, solves
for the mediating rod set of an expansion in either direction, decides
periodicity algebraically, scans for one- and two-rod expansion
targets, and verifies the Lucas-family and Borwein-trinomial structure
— everything cross-checkable against a brute-force enumeration.
"""

from .counts import (
    ArithmeticRods,
    CountsError,
    EnumerationResult,
    PrefixRods,
    RodSource,
    TrainsOf,
    binomial_count,
    discrepancies,
    enumerate_trains,
    sequence_discrepancies,
    train_counts,
)
from .expansion import (
    Expansion,
    ExpansionError,
    compose,
    dual,
    expand,
    expand_minimal,
    rodset_from_counts,
    solve_Q,
    solve_R,
)
from .rodset import (
    RodSet,
    RodSetError,
    RodSetParseError,
    ShapeReport,
    concat,
    describe,
    equivalent,
    format_rodset,
    negate,
    odd_sign_swap,
    parse_rodset,
    union,
)
from .series import (
    SeriesError,
    char_poly,
    cyclotomic,
    euler_phi,
    poly_divexact,
    poly_mul,
    poly_text,
    rodset_from_char_poly,
    series_inverse,
    series_mul,
)
from .structure import (
    BorweinTable,
    LucasReport,
    PeriodReport,
    ScalingHit,
    StructureError,
    borwein_classify,
    detect_period,
    lucas_check,
    lucas_two_shapes,
    scan_one_expansions,
    scan_two_expansions,
    window_period_scan,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticRods",
    "BorweinTable",
    "CountsError",
    "EnumerationResult",
    "Expansion",
    "ExpansionError",
    "LucasReport",
    "PeriodReport",
    "PrefixRods",
    "RodSet",
    "RodSetError",
    "RodSetParseError",
    "RodSource",
    "ScalingHit",
    "SeriesError",
    "ShapeReport",
    "StructureError",
    "TrainsOf",
    "binomial_count",
    "borwein_classify",
    "char_poly",
    "compose",
    "concat",
    "cyclotomic",
    "describe",
    "detect_period",
    "discrepancies",
    "dual",
    "enumerate_trains",
    "equivalent",
    "euler_phi",
    "expand",
    "expand_minimal",
    "format_rodset",
    "lucas_check",
    "lucas_two_shapes",
    "negate",
    "odd_sign_swap",
    "parse_rodset",
    "poly_divexact",
    "poly_mul",
    "poly_text",
    "rodset_from_char_poly",
    "rodset_from_counts",
    "scan_one_expansions",
    "scan_two_expansions",
    "sequence_discrepancies",
    "series_inverse",
    "series_mul",
    "solve_Q",
    "solve_R",
    "train_counts",
    "union",
    "window_period_scan",
    "__version__",
]
