"""Integer invariants read off a grid diagram.

Crossing signs use the right-handed rule: with ``u`` the direction of the
overpass and ``v`` that of the underpass, the sign is that of ``u x v``.
Vertical edges are always the overpasses, so a crossing of the column ``c``
(direction ``(0, a)``) with the row ``r`` (direction ``(b, 0)``) has sign
``-a*b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import IllegalMove, NotAKnot, SameComponent
from .gridcore import CornerKind, GridDiagram, from_columns, rotate_cw, shifted_union_groups


@dataclass(frozen=True)
class Crossing:
    col: int
    row: int
    sign: int
    over_component: int
    under_component: int


def crossings(diagram: GridDiagram) -> list[Crossing]:
    n = diagram.n
    comp = diagram.component_of_column
    out = []
    row_spans = [diagram.row_span(r) for r in range(n)]
    for c in range(n):
        lo, hi = diagram.column_span(c)
        a = diagram.vertical_direction(c)
        for r in range(lo + 1, hi):
            left, right = row_spans[r]
            if left < c < right:
                b = diagram.horizontal_direction(r)
                out.append(Crossing(c, r, -a * b, comp[c], comp[diagram.xcol[r]]))
    return out


def writhe(diagram: GridDiagram, self_only: bool = False) -> int:
    """Sum of crossing signs; all crossings unless ``self_only``."""
    return sum(x.sign for x in crossings(diagram)
               if not self_only or x.over_component == x.under_component)


def linking_between(diagram: GridDiagram, first: Iterable[int], second: Iterable[int]) -> int:
    """Linking number of two disjoint groups of components."""
    a, b = set(first), set(second)
    if a & b:
        raise SameComponent(f"component groups overlap: {sorted(a & b)}")
    total = 0
    for x in crossings(diagram):
        if (x.over_component in a and x.under_component in b) or \
                (x.over_component in b and x.under_component in a):
            total += x.sign
    if total % 2:
        raise AssertionError("odd inter-component crossing sum")
    return total // 2


def linking_number(diagram: GridDiagram, a: int, b: int) -> int:
    if a == b:
        raise SameComponent(f"component {a} given twice")
    k = diagram.num_components
    for v in (a, b):
        if not 0 <= v < k:
            raise SameComponent(f"no component {v} (diagram has {k})")
    return linking_between(diagram, [a], [b])


def cusp_count(diagram: GridDiagram) -> int:
    """Vertices of corner kind NW or SE."""
    count = 0
    for v in diagram.vertices():
        if diagram.corner_kind(v.col, v.row) in (CornerKind.NW, CornerKind.SE):
            count += 1
    return count


def thurston_bennequin(diagram: GridDiagram) -> int:
    """``writhe - cusps/2``; for links this is ``lk(L, L^+)`` with all crossings counted."""
    if diagram.n == 0:
        raise NotAKnot("empty diagram")
    return writhe(diagram) - cusp_count(diagram) // 2


def tb_pair(diagram: GridDiagram) -> tuple[int, int]:
    """``(tb(R), tb(R̄))``."""
    return thurston_bennequin(diagram), thurston_bennequin(rotate_cw(diagram))


def check_tb_duality(diagram: GridDiagram) -> bool:
    tb, tbbar = tb_pair(diagram)
    return tb + tbbar == -diagram.n


def tb_by_linking(diagram: GridDiagram) -> int:
    """tb computed as the linking number of the diagram with its NE push-off."""
    union, groups = shifted_union_groups(diagram, diagram.vertices(), ["NE"])
    return linking_between(union, groups[0], groups[1])


def interleaved_exchange(diagram: GridDiagram, axis: str, i: int) -> GridDiagram:
    """Swap the adjacent lines ``i``, ``i+1`` whose endpoint pairs interleave.

    This is the exchange that commutations forbid; when the two edges belong
    to different components it shifts their linking number by one.
    """
    if axis == "col":
        a = sorted((diagram.x[i], diagram.o[i]))
        b = sorted((diagram.x[i + 1], diagram.o[i + 1]))
    else:
        a = sorted((diagram.xcol[i], diagram.ocol[i]))
        b = sorted((diagram.xcol[i + 1], diagram.ocol[i + 1]))
    interleaved = (a[0] < b[0] < a[1] < b[1]) or (b[0] < a[0] < b[1] < a[1])
    if not interleaved:
        raise IllegalMove(f"{axis} {i} and {i + 1} do not interleave")
    x, o, lab = list(diagram.x), list(diagram.o), list(diagram.column_labels)
    if axis == "col":
        x[i], x[i + 1] = x[i + 1], x[i]
        o[i], o[i + 1] = o[i + 1], o[i]
        lab[i], lab[i + 1] = lab[i + 1], lab[i]
    else:
        swap = {i: i + 1, i + 1: i}
        x = [swap.get(r, r) for r in x]
        o = [swap.get(r, r) for r in o]
    return from_columns(x, o, lab)
