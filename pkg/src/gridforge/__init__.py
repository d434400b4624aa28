"""Grid diagrams of links: moves, Legendrian invariants, bypasses, braids and simplification."""

from .errors import GridforgeError
from .gridcore import (
    CornerKind,
    GridDiagram,
    Vertex,
    complexity,
    components,
    parse_grid,
    render_ascii,
    rotate_cw,
    serialize_grid,
    shifted_union,
    trivial_diagram,
    validate,
)
from .moves import Move, apply_move, classify_stabilization, enumerate_moves, inverse_move, normalize_sequence
from .invariants import (
    check_tb_duality,
    crossings,
    cusp_count,
    linking_number,
    thurston_bennequin,
    writhe,
)
from .braids import BraidWord, braid_equal, braid_from_grid, grid_from_braid
from .simplify import canonical_form, find_elementary_simplification, scramble, simplify_unknot

__version__ = "0.1.0"

__all__ = [
    "GridforgeError", "CornerKind", "GridDiagram", "Vertex", "complexity", "components",
    "parse_grid", "render_ascii", "rotate_cw", "serialize_grid", "shifted_union",
    "trivial_diagram", "validate", "Move", "apply_move", "classify_stabilization",
    "enumerate_moves", "inverse_move", "normalize_sequence", "check_tb_duality", "crossings",
    "cusp_count", "linking_number", "thurston_bennequin", "writhe", "BraidWord", "braid_equal",
    "braid_from_grid", "grid_from_braid", "canonical_form", "find_elementary_simplification",
    "scramble", "simplify_unknot",
]
