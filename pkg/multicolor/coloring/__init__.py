"""Edge-colouring algorithms for multigraphs."""
from .algc import AlgCResult, alg_c, algc_order, bounded_offenders
from .decomposition import matching_decomposition, maximal_matchings
from .exact import exact_chromatic_index, exact_coloring
from .state import (
    EdgeColoring,
    VerificationReport,
    Violation,
    emit_coloring,
    kempe_switch,
    parse_coloring,
    verify,
)
from .strategies import ColoringOutcome, color_optimal, matching_removal_color
from .tashkinov import (
    ElementaryCheck,
    TashkinovTree,
    augment_tashkinov,
    grow_tashkinov,
    is_elementary,
    legal_tuple_problems,
    tree_problems,
)
from .vizing import fan_color, greedy_color, vizing_color_multi, vizing_color_simple

__all__ = [
    "AlgCResult",
    "ColoringOutcome",
    "EdgeColoring",
    "ElementaryCheck",
    "TashkinovTree",
    "VerificationReport",
    "Violation",
    "alg_c",
    "algc_order",
    "augment_tashkinov",
    "bounded_offenders",
    "color_optimal",
    "emit_coloring",
    "exact_chromatic_index",
    "exact_coloring",
    "fan_color",
    "greedy_color",
    "grow_tashkinov",
    "is_elementary",
    "kempe_switch",
    "legal_tuple_problems",
    "matching_decomposition",
    "matching_removal_color",
    "maximal_matchings",
    "parse_coloring",
    "tree_problems",
    "verify",
    "vizing_color_multi",
    "vizing_color_simple",
]
