"""Elementary moves on grid diagrams.

Four kinds: cyclic permutations (one extreme column or row wrapped to the
opposite side), commutations of adjacent columns or rows, stabilizations and
destabilizations.  A stabilization is addressed by the vertex ``V`` it
replaces and the diagonal direction of the new square; the three new vertices
are ``A`` (on the column of ``V``), ``B`` (on its row) and the square corner
``C``.  A destabilization is addressed by that corner ``C``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IllegalMove, IllegalSequence, ParseError
from .gridcore import BLACK, WHITE, CornerKind, GridDiagram, from_columns

CYCLIC_DIRECTIONS = ("L", "R", "U", "D")
DISPOSITIONS = ("NE", "NW", "SE", "SW")
TYPE_I_DISPOSITIONS = frozenset({"NE", "SW"})

RIGHT_ARROW = "→"
LEFT_ARROW = "←"


class MoveKind(str, enum.Enum):
    CYCLIC = "cyc"
    COMMUTATION = "comm"
    STABILIZATION = "stab"
    DESTABILIZATION = "destab"


@dataclass(frozen=True)
class Move:
    """One elementary move.

    ``placement`` depends on ``kind``: ``(direction,)`` for cyclic moves,
    ``(i,)`` for the commutation of lines ``i`` and ``i+1``, ``(col, row,
    disposition)`` for stabilizations and ``(col, row)`` of the square corner
    for destabilizations.  ``axis`` is ``"col"`` or ``"row"``; for
    (de)stabilizations it is ``None``.  ``type_tag`` is ``("I"|"II", arrow)``
    and is ignored by equality.
    """

    kind: MoveKind
    axis: str | None
    placement: tuple
    type_tag: tuple[str, str] | None = field(default=None, compare=False)

    @property
    def is_flat(self) -> bool:
        return self.kind in (MoveKind.CYCLIC, MoveKind.COMMUTATION)

    @property
    def is_stabilization(self) -> bool:
        return self.kind is MoveKind.STABILIZATION

    @property
    def is_destabilization(self) -> bool:
        return self.kind is MoveKind.DESTABILIZATION

    def text(self) -> str:
        k = self.kind
        if k is MoveKind.CYCLIC:
            return f"cyc {self.placement[0]}"
        if k is MoveKind.COMMUTATION:
            return f"comm {self.axis} {self.placement[0]}"
        if k is MoveKind.STABILIZATION:
            c, r, d = self.placement
            return f"stab {c} {r} {d}"
        c, r = self.placement
        return f"destab {c} {r}"

    def __str__(self) -> str:
        return self.text()


def cyclic(direction: str) -> Move:
    if direction not in CYCLIC_DIRECTIONS:
        raise IllegalMove(f"unknown cyclic direction {direction!r}")
    return Move(MoveKind.CYCLIC, "col" if direction in "LR" else "row", (direction,))


def commutation(axis: str, i: int) -> Move:
    if axis not in ("col", "row"):
        raise IllegalMove(f"unknown axis {axis!r}")
    return Move(MoveKind.COMMUTATION, axis, (int(i),))


def stabilization(col: int, row: int, disposition: str, type_tag=None) -> Move:
    disposition = getattr(disposition, "value", disposition)
    if disposition not in DISPOSITIONS:
        raise IllegalMove(f"unknown disposition {disposition!r}")
    return Move(MoveKind.STABILIZATION, None, (int(col), int(row), disposition), type_tag)


def destabilization(col: int, row: int, type_tag=None) -> Move:
    return Move(MoveKind.DESTABILIZATION, None, (int(col), int(row)), type_tag)


def parse_move(text: str) -> Move:
    parts = text.split()
    try:
        head = parts[0]
        if head == "cyc" and len(parts) == 2:
            return cyclic(parts[1])
        if head == "comm" and len(parts) == 3:
            return commutation(parts[1], int(parts[2]))
        if head == "stab" and len(parts) == 4:
            return stabilization(int(parts[1]), int(parts[2]), parts[3])
        if head == "destab" and len(parts) == 3:
            return destabilization(int(parts[1]), int(parts[2]))
    except (IndexError, ValueError, IllegalMove) as exc:
        raise ParseError(f"bad move text {text!r}") from exc
    raise ParseError(f"bad move text {text!r}")


def parse_moves(text: str) -> list[Move]:
    return [parse_move(ln) for ln in text.splitlines() if ln.strip()]


# -- legality -------------------------------------------------------------

def _swappable(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Endpoint pairs are disjoint and do not interleave."""
    if len({a[0], a[1], b[0], b[1]}) < 4:
        return False
    lo1, hi1 = sorted(a)
    lo2, hi2 = sorted(b)
    disjoint = hi1 < lo2 or hi2 < lo1
    nested = (lo1 < lo2 and hi2 < hi1) or (lo2 < lo1 and hi1 < hi2)
    return disjoint or nested


def commutation_legal(diagram: GridDiagram, axis: str, i: int) -> bool:
    n = diagram.n
    if not 0 <= i < n - 1:
        return False
    if axis == "col":
        return _swappable((diagram.x[i], diagram.o[i]), (diagram.x[i + 1], diagram.o[i + 1]))
    return _swappable((diagram.xcol[i], diagram.ocol[i]), (diagram.xcol[i + 1], diagram.ocol[i + 1]))


def _destab_parts(diagram: GridDiagram, col: int, row: int):
    """Return ``(a_col, b_row)`` for a destabilizable corner, else ``None``."""
    n = diagram.n
    if n < 3 or not (0 <= col < n and 0 <= row < n):
        return None
    if diagram.color_at(col, row) is None:
        return None
    b_row = diagram.column_partner(col, row)
    a_col = diagram.row_partner(col, row)
    if abs(b_row - row) != 1 or abs(a_col - col) != 1:
        return None
    # the reconstructed vertex must not land on the partner of A (2x2 component)
    if diagram.column_partner(a_col, row) == b_row:
        return None
    return a_col, b_row


def stabilization_tag(diagram: GridDiagram, col: int, row: int, disposition: str) -> tuple[str, str]:
    kind = "I" if disposition in TYPE_I_DISPOSITIONS else "II"
    sx = CornerKind(disposition).signs[0]
    # A keeps the colour of V, C gets the other one; the edge runs white -> black
    direction = sx if diagram.color_at(col, row) == WHITE else -sx
    return kind, RIGHT_ARROW if direction > 0 else LEFT_ARROW


def _destab_tag(diagram: GridDiagram, col: int, row: int, a_col: int, b_row: int) -> tuple[str, str]:
    sx = 1 if col > a_col else -1
    sy = 1 if row > b_row else -1
    disposition = CornerKind.from_signs(sx, sy).value
    kind = "I" if disposition in TYPE_I_DISPOSITIONS else "II"
    # horizontal short edge joins A=(a_col,row) and C=(col,row), oriented white -> black
    direction = (col - a_col) if diagram.color_at(a_col, row) == WHITE else (a_col - col)
    return kind, RIGHT_ARROW if direction > 0 else LEFT_ARROW


def enumerate_moves(diagram: GridDiagram) -> list[Move]:
    """All legal moves in a fixed order: cyclic, commutations, stabilizations, destabilizations."""
    n = diagram.n
    out: list[Move] = []
    if n >= 2:
        out.extend(cyclic(d) for d in CYCLIC_DIRECTIONS)
    for axis in ("col", "row"):
        for i in range(n - 1):
            if commutation_legal(diagram, axis, i):
                out.append(commutation(axis, i))
    for c in range(n):
        for r in sorted((diagram.x[c], diagram.o[c])):
            for d in DISPOSITIONS:
                out.append(stabilization(c, r, d, stabilization_tag(diagram, c, r, d)))
    for c in range(n):
        for r in sorted((diagram.x[c], diagram.o[c])):
            parts = _destab_parts(diagram, c, r)
            if parts is not None:
                out.append(destabilization(c, r, _destab_tag(diagram, c, r, *parts)))
    return out


def flat_moves(diagram: GridDiagram) -> list[Move]:
    return [m for m in enumerate_moves_flat(diagram)]


def enumerate_moves_flat(diagram: GridDiagram) -> Iterable[Move]:
    if diagram.n >= 2:
        for d in CYCLIC_DIRECTIONS:
            yield cyclic(d)
    for axis in ("col", "row"):
        for i in range(diagram.n - 1):
            if commutation_legal(diagram, axis, i):
                yield commutation(axis, i)


def destabilizations(diagram: GridDiagram) -> list[Move]:
    return [m for m in enumerate_moves(diagram) if m.is_destabilization]


# -- application ----------------------------------------------------------

def _cyclic_apply(diagram: GridDiagram, direction: str) -> GridDiagram:
    n = diagram.n
    x, o, lab = diagram.x, diagram.o, diagram.column_labels
    if direction == "L":
        return from_columns(x[1:] + x[:1], o[1:] + o[:1], lab[1:] + lab[:1])
    if direction == "R":
        return from_columns(x[-1:] + x[:-1], o[-1:] + o[:-1], lab[-1:] + lab[:-1])
    shift = -1 if direction == "D" else 1
    return from_columns([(r + shift) % n for r in x], [(r + shift) % n for r in o], lab)


def _commute_apply(diagram: GridDiagram, axis: str, i: int) -> GridDiagram:
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


def _stabilize_apply(diagram: GridDiagram, col: int, row: int, disposition: str) -> GridDiagram:
    color = diagram.color_at(col, row)
    sx, sy = CornerKind(disposition).signs
    cut_c = col + 1 if sx > 0 else col
    cut_r = row + 1 if sy > 0 else row

    def cm(j: int) -> int:
        return j + 1 if j >= cut_c else j

    def rm(j: int) -> int:
        return j + 1 if j >= cut_r else j

    n = diagram.n
    xs = [0] * (n + 1)
    os = [0] * (n + 1)
    lab = [0] * (n + 1)
    old_lab = diagram.column_labels
    for c in range(n):
        xs[cm(c)] = rm(diagram.x[c])
        os[cm(c)] = rm(diagram.o[c])
        lab[cm(c)] = old_lab[c]
    other = WHITE if color == BLACK else BLACK
    # V is replaced by A on its column; B and C fill the new column
    a_row = cut_r
    (xs if color == BLACK else os)[cm(col)] = a_row
    (xs if color == BLACK else os)[cut_c] = rm(row)
    (xs if other == BLACK else os)[cut_c] = cut_r
    lab[cut_c] = old_lab[col]
    return from_columns(xs, os, lab)


def _destabilize_apply(diagram: GridDiagram, col: int, row: int, a_col: int, b_row: int) -> GridDiagram:
    color = diagram.color_at(a_col, row)

    def cm(j: int) -> int:
        return j - 1 if j > col else j

    def rm(j: int) -> int:
        return j - 1 if j > row else j

    n = diagram.n
    xs = [0] * (n - 1)
    os = [0] * (n - 1)
    lab = [0] * (n - 1)
    old_lab = diagram.column_labels
    for c in range(n):
        if c == col:
            continue
        xs[cm(c)] = rm(diagram.x[c])
        os[cm(c)] = rm(diagram.o[c])
        lab[cm(c)] = old_lab[c]
    (xs if color == BLACK else os)[cm(a_col)] = rm(b_row)
    return from_columns(xs, os, lab)


def _check_stab(diagram: GridDiagram, move: Move) -> None:
    c, r, d = move.placement
    if not (0 <= c < diagram.n) or diagram.color_at(c, r) is None:
        raise IllegalMove(f"{move.text()}: no vertex at ({c}, {r})")
    if d not in DISPOSITIONS:
        raise IllegalMove(f"{move.text()}: bad disposition")


def apply_move(diagram: GridDiagram, move: Move) -> GridDiagram:
    """Apply a legal move; raises :class:`IllegalMove` otherwise."""
    k = move.kind
    if k is MoveKind.CYCLIC:
        if diagram.n < 2:
            raise IllegalMove("cyclic permutation needs n >= 2")
        return _cyclic_apply(diagram, move.placement[0])
    if k is MoveKind.COMMUTATION:
        if not commutation_legal(diagram, move.axis, move.placement[0]):
            raise IllegalMove(f"{move.text()} is not a legal commutation")
        return _commute_apply(diagram, move.axis, move.placement[0])
    if k is MoveKind.STABILIZATION:
        _check_stab(diagram, move)
        return _stabilize_apply(diagram, *move.placement)
    parts = _destab_parts(diagram, *move.placement)
    if parts is None:
        raise IllegalMove(f"{move.text()} is not a legal destabilization")
    return _destabilize_apply(diagram, *move.placement, *parts)


def apply_moves(diagram: GridDiagram, moves: Iterable[Move]) -> GridDiagram:
    for m in moves:
        diagram = apply_move(diagram, m)
    return diagram


def classify_stabilization(diagram: GridDiagram, move: Move) -> tuple[str, str]:
    """``(type, arrow)`` of a (de)stabilization legal for ``diagram``."""
    if move.kind is MoveKind.STABILIZATION:
        _check_stab(diagram, move)
        return stabilization_tag(diagram, *move.placement)
    if move.kind is MoveKind.DESTABILIZATION:
        parts = _destab_parts(diagram, *move.placement)
        if parts is None:
            raise IllegalMove(f"{move.text()} is not a legal destabilization")
        return _destab_tag(diagram, *move.placement, *parts)
    raise IllegalMove(f"{move.text()} is not a (de)stabilization")


def inverse_move(diagram: GridDiagram, move: Move) -> Move:
    """A move legal on ``apply_move(diagram, move)`` that undoes ``move`` exactly."""
    k = move.kind
    if k is MoveKind.CYCLIC:
        if diagram.n < 2:
            raise IllegalMove("cyclic permutation needs n >= 2")
        return cyclic({"L": "R", "R": "L", "U": "D", "D": "U"}[move.placement[0]])
    if k is MoveKind.COMMUTATION:
        if not commutation_legal(diagram, move.axis, move.placement[0]):
            raise IllegalMove(f"{move.text()} is not a legal commutation")
        return commutation(move.axis, move.placement[0])
    if k is MoveKind.STABILIZATION:
        _check_stab(diagram, move)
        c, r, d = move.placement
        sx, sy = CornerKind(d).signs
        return destabilization(c + 1 if sx > 0 else c, r + 1 if sy > 0 else r,
                               stabilization_tag(diagram, c, r, d))
    parts = _destab_parts(diagram, *move.placement)
    if parts is None:
        raise IllegalMove(f"{move.text()} is not a legal destabilization")
    c, r = move.placement
    a_col, b_row = parts
    disposition = CornerKind.from_signs(1 if c > a_col else -1, 1 if r > b_row else -1).value
    vc = a_col if a_col < c else a_col - 1
    vr = b_row if b_row < r else b_row - 1
    return stabilization(vc, vr, disposition, _destab_tag(diagram, c, r, a_col, b_row))


# -- sequence normalization ----------------------------------------------

def replay(start: GridDiagram, moves: Sequence[Move]) -> list[GridDiagram]:
    """Diagrams visited by a move sequence, starting with ``start``."""
    out = [start]
    for m in moves:
        try:
            out.append(apply_move(out[-1], m))
        except IllegalMove as exc:
            raise IllegalSequence(f"step {len(out)} ({m.text()}): {exc}") from exc
    return out


def tag_counts(start: GridDiagram, moves: Sequence[Move]) -> dict[tuple[str, str, str], int]:
    """Count of (kind, type, arrow) over the (de)stabilizations of a sequence."""
    counts: dict = {}
    d = start
    for m in moves:
        if not m.is_flat:
            key = (m.kind.value,) + classify_stabilization(d, m)
            counts[key] = counts.get(key, 0) + 1
        d = apply_move(d, m)
    return counts


def _flat_bridge(sources: list[tuple[Move, GridDiagram]], target: GridDiagram,
                 final_tag: tuple[str, str] | None, max_nodes: int):
    """BFS over flat moves from several (stabilization, diagram) sources.

    Without ``final_tag`` the search looks for ``target`` itself; with it, for a
    diagram having a destabilization of that tag leading to ``target``.
    """
    queue = deque()
    seen = set()
    for move, d in sources:
        if d not in seen:
            seen.add(d)
            queue.append((d, move, ()))
    while queue:
        d, first, path = queue.popleft()
        if final_tag is None:
            if d == target:
                return first, list(path)
        else:
            for m in destabilizations(d):
                if m.type_tag == final_tag and apply_move(d, m) == target:
                    return first, list(path) + [m]
        for m in enumerate_moves_flat(d):
            nd = apply_move(d, m)
            if nd not in seen:
                if len(seen) >= max_nodes:
                    return None
                seen.add(nd)
                queue.append((nd, first, path + (m,)))
    return None


def _swap_stab_forward(before: GridDiagram, x: Move, s: Move, max_nodes: int) -> list[Move]:
    """Rewrite ``[x, s]`` (``s`` a stabilization) as ``[s', flats..., x'?]``."""
    mid = apply_move(before, x)
    target = apply_move(mid, s)
    tag = classify_stabilization(mid, s)
    final_tag = classify_stabilization(before, x) if x.is_destabilization else None
    sources = []
    for m in enumerate_moves(before):
        if m.is_stabilization and m.type_tag == tag:
            sources.append((m, apply_move(before, m)))
    found = _flat_bridge(sources, target, final_tag, max_nodes)
    if found is None:
        raise IllegalSequence(f"could not move {s.text()} in front of {x.text()}")
    first, rest = found
    return [first] + rest


def _stabilizations_first(start: GridDiagram, moves: list[Move], max_nodes: int) -> list[Move]:
    moves = list(moves)
    while True:
        seen_other = False
        idx = None
        for i, m in enumerate(moves):
            if m.is_stabilization and seen_other:
                idx = i
                break
            if not m.is_stabilization:
                seen_other = True
        if idx is None:
            return moves
        before = apply_moves(start, moves[:idx - 1])
        moves[idx - 1:idx + 1] = _swap_stab_forward(before, moves[idx - 1], moves[idx], max_nodes)


def invert_sequence(start: GridDiagram, moves: Sequence[Move]) -> tuple[GridDiagram, list[Move]]:
    """End diagram and the inverse sequence leading back to ``start``."""
    diagrams = replay(start, moves)
    inv = [inverse_move(diagrams[i], moves[i]) for i in range(len(moves))]
    return diagrams[-1], inv[::-1]


def normalize_sequence(steps, start: GridDiagram | None = None, max_nodes: int = 200_000) -> list[Move]:
    """Equivalent sequence with stabilizations first and destabilizations last.

    ``steps`` is either a list of ``(diagram, move)`` pairs, each diagram being
    the one the move applies to, or a plain list of moves together with
    ``start``.  Each exchange of a stabilization with the move before it is
    resolved by a bounded search for a stabilization of the same oriented type
    followed by flat moves (and a destabilization of the original type, if the
    move passed over was one), so the count of every (kind, type, arrow) class
    is preserved.
    """
    steps = list(steps)
    if steps and isinstance(steps[0], tuple):
        start = steps[0][0]
        moves = [m for _, m in steps]
        seen = replay(start, moves)
        for i, (d, _) in enumerate(steps):
            if d != seen[i]:
                raise IllegalSequence(f"step {i} is paired with the wrong diagram")
    else:
        moves = steps
        if start is None:
            if moves:
                raise IllegalSequence("a start diagram is required")
            return []
        replay(start, moves)
    if all(m.is_flat for m in moves):
        return list(moves)
    moves = _stabilizations_first(start, moves, max_nodes)
    end, inv = invert_sequence(start, moves)
    inv = _stabilizations_first(end, inv, max_nodes)
    _, back = invert_sequence(end, inv)
    return back
