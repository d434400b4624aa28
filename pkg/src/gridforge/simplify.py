"""Canonical forms, flat-move search and monotonic unknot simplification.

Nodes of the search are classes of diagrams under cyclic permutations,
represented by their canonical form.  Edges are the commutations of a
canonical representative, including the ones across the wrap-around seam
(written as a cyclic move followed by a commutation of lines 0 and 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .gridcore import GridDiagram, from_columns
from .moves import (
    Move,
    _destab_parts,
    _destab_tag,
    apply_move,
    apply_moves,
    commutation,
    commutation_legal,
    cyclic,
    destabilization,
    enumerate_moves,
)

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class CanonicalForm:
    diagram: GridDiagram
    witness: tuple[int, int]  # (row_shift, col_shift)

    def key(self) -> tuple:
        return canonical_key(self.diagram)


def canonical_key(diagram: GridDiagram) -> tuple:
    return diagram.x + diagram.o + diagram.column_labels


def _shifted(diagram: GridDiagram, a: int, b: int) -> tuple:
    """Key of ``cyc L^a`` followed by ``cyc D^b``."""
    n = diagram.n
    x, o, lab = diagram.x, diagram.o, diagram.column_labels
    xs = tuple((x[(i + a) % n] - b) % n for i in range(n))
    os = tuple((o[(i + a) % n] - b) % n for i in range(n))
    return xs, os, tuple(lab[(i + a) % n] for i in range(n))


def canonical_form(diagram: GridDiagram) -> CanonicalForm:
    """Least ``X + O + labels`` tuple over all ``n^2`` cyclic shifts.

    The least key starts with ``X[0] = 0``, so only the ``n`` shifts moving a
    black vertex to the origin need to be compared.
    """
    best = None
    for a in range(diagram.n):
        b = diagram.x[a]
        xs, os, lab = _shifted(diagram, a, b)
        key = xs + os + lab
        if best is None or key < best[0]:
            best = (key, xs, os, lab, a, b)
    _, xs, os, lab, a, b = best
    if xs == diagram.x and os == diagram.o and lab == diagram.column_labels:
        return CanonicalForm(diagram, (b, a))
    return CanonicalForm(from_columns(xs, os, lab), (b, a))


def shift_moves(n: int, row_shift: int, col_shift: int) -> list[Move]:
    """Cyclic moves realizing ``cyc L^col_shift`` then ``cyc D^row_shift`` (shortest direction)."""
    out: list[Move] = []
    a, b = col_shift % n, row_shift % n
    out += [cyclic("L")] * a if a <= n - a else [cyclic("R")] * (n - a)
    out += [cyclic("D")] * b if b <= n - b else [cyclic("U")] * (n - b)
    return out


@dataclass(frozen=True)
class MoveSequence:
    start: GridDiagram
    steps: tuple
    end: GridDiagram
    nodes: int = 0
    depth: int = 0

    def replay(self) -> GridDiagram:
        return apply_moves(self.start, self.steps)

    def complexities(self) -> list[int]:
        out = [self.start.n]
        d = self.start
        for m in self.steps:
            d = apply_move(d, m)
            out.append(d.n)
        return out

    def diagrams(self) -> list[GridDiagram]:
        out = [self.start]
        for m in self.steps:
            out.append(apply_move(out[-1], m))
        return out

    @property
    def ok(self) -> bool:
        return True

    def text(self) -> str:
        lines = [m.text() for m in self.steps]
        lines.append(f"nodes={self.nodes} depth={self.depth} result=ok")
        return "\n".join(lines)


@dataclass(frozen=True)
class Exhausted:
    """No simplification found; ``complete`` is true when the whole component was searched."""

    nodes: int
    depth: int
    complete: bool
    partial: MoveSequence | None = None

    @property
    def ok(self) -> bool:
        return False

    def text(self) -> str:
        lines = [m.text() for m in self.partial.steps] if self.partial else []
        lines.append(f"nodes={self.nodes} depth={self.depth} result=exhausted")
        return "\n".join(lines)


def _first_destab(diagram: GridDiagram, type_filter: str | None) -> Move | None:
    for c in range(diagram.n):
        for r in sorted((diagram.x[c], diagram.o[c])):
            parts = _destab_parts(diagram, c, r)
            if parts is None:
                continue
            tag = _destab_tag(diagram, c, r, *parts)
            if type_filter is None or tag[0] == type_filter:
                return destabilization(c, r, tag)
    return None


def _edges(diagram: GridDiagram):
    """Flat moves out of a canonical representative, as move lists."""
    n = diagram.n
    for axis in ("col", "row"):
        for i in range(n - 1):
            if commutation_legal(diagram, axis, i):
                yield [commutation(axis, i)]
    if n > 2:
        for wrap, axis in ((cyclic("R"), "col"), (cyclic("U"), "row")):
            shifted = apply_move(diagram, wrap)
            if commutation_legal(shifted, axis, 0):
                yield [wrap, commutation(axis, 0)]


def find_elementary_simplification(diagram: GridDiagram, type_filter: str | None = None,
                                   budget: int = DEFAULT_BUDGET):
    """Breadth-first search for flat moves followed by one destabilization.

    Levels are processed in increasing canonical order, and a node admitting a
    destabilization of the requested type ends the search immediately.
    Returns a :class:`MoveSequence` or :class:`Exhausted`.
    """
    if type_filter not in (None, "I", "II"):
        raise ValueError(f"type filter must be I, II or None, got {type_filter!r}")
    start_cf = canonical_form(diagram)
    prefix = shift_moves(diagram.n, start_cf.witness[0], start_cf.witness[1])
    root = start_cf.diagram
    root_key = canonical_key(root)
    parent: dict = {root_key: None}
    nodes_of: dict = {root_key: root}
    level = [root_key]
    expanded: set = set()
    depth = 0
    while level:
        for key in level:
            node = nodes_of[key]
            m = _first_destab(node, type_filter)
            if m is not None:
                steps = prefix + _path_to(parent, key) + [m]
                end = apply_move(node, m)
                return MoveSequence(diagram, tuple(steps), end, len(parent), depth)
        nxt = []
        for key in level:
            if key in expanded:
                raise AssertionError("canonical node expanded twice")
            expanded.add(key)
            node = nodes_of[key]
            for edge in _edges(node):
                d = node
                for mv in edge:
                    d = apply_move(d, mv)
                cf = canonical_form(d)
                ck = canonical_key(cf.diagram)
                if ck in parent:
                    continue
                if len(parent) >= budget:
                    return Exhausted(len(parent), depth, False)
                parent[ck] = (key, tuple(edge) + tuple(shift_moves(d.n, *cf.witness)))
                nodes_of[ck] = cf.diagram
                nxt.append(ck)
        for key in level:
            del nodes_of[key]
        level = sorted(nxt)
        if level:
            depth += 1
    return Exhausted(len(parent), depth, True)


def _path_to(parent: dict, key) -> list[Move]:
    out: list = []
    while parent[key] is not None:
        prev, moves = parent[key]
        out[:0] = list(moves)
        key = prev
    return out


def is_trivial(diagram: GridDiagram) -> bool:
    return diagram.n == 2


def simplify_unknot(diagram: GridDiagram, budget: int = DEFAULT_BUDGET):
    """Repeated elementary simplifications down to the canonical 2x2 diagram.

    ``budget`` bounds the total number of search nodes.  ``depth`` in the
    result is the deepest search level used by any single simplification.
    """
    steps: list[Move] = []
    current = diagram
    nodes = 0
    depth = 0
    while not is_trivial(current):
        found = find_elementary_simplification(current, None, budget - nodes)
        nodes += found.nodes
        depth = max(depth, found.depth)
        if not found.ok:
            partial = MoveSequence(diagram, tuple(steps), current, nodes, depth)
            return Exhausted(nodes, depth, found.complete, partial)
        if found.end.n != current.n - 1:
            raise AssertionError("simplification did not lower the complexity by one")
        steps.extend(found.steps)
        current = found.end
    cf = canonical_form(current)
    steps.extend(shift_moves(current.n, *cf.witness))
    return MoveSequence(diagram, tuple(steps), cf.diagram, nodes, depth)


def scramble(diagram: GridDiagram, stabs: int, flats: int, seed) -> GridDiagram:
    """Apply ``stabs`` random stabilizations and ``flats`` random flat moves, interleaved."""
    return scramble_with_moves(diagram, stabs, flats, seed)[0]


def scramble_with_moves(diagram: GridDiagram, stabs: int, flats: int, seed) -> tuple[GridDiagram, list[Move]]:
    rng = random.Random(seed)
    kinds = ["s"] * stabs + ["f"] * flats
    rng.shuffle(kinds)
    applied = []
    for k in kinds:
        moves = enumerate_moves(diagram)
        pool = [m for m in moves if (m.is_stabilization if k == "s" else m.is_flat)]
        m = rng.choice(pool)
        diagram = apply_move(diagram, m)
        applied.append(m)
    return diagram, applied


@dataclass
class InterleaveReport:
    k: int
    l: int
    premise: bool
    forward: bool
    backward: bool
    nodes: int = 0
    legendrian_clause: str = "unchecked"
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.premise and self.forward and self.backward

    def text(self) -> str:
        b = lambda v: "true" if v else "false"  # noqa: E731
        return (f"k={self.k} l={self.l} premise={b(self.premise)} forward={b(self.forward)} "
                f"backward={b(self.backward)} legendrian={self.legendrian_clause}")


def _successive(diagram: GridDiagram, kind: str, count: int, budget: int):
    nodes = 0
    for _ in range(count):
        found = find_elementary_simplification(diagram, kind, budget)
        nodes += found.nodes
        if not found.ok:
            return None, nodes
        diagram = found.end
    return diagram, nodes


def two_type_interleave_check(diagram: GridDiagram, k: int, l: int,
                              budget: int = DEFAULT_BUDGET) -> InterleaveReport:
    """Existence part of the two-type commutation statement, checked by search.

    Verifies that ``k`` type I and ``l`` type II successive elementary
    simplifications exist, then that after the type I ones the type II ones
    can still be found and vice versa.  Legendrian equivalence of the two end
    diagrams is not decided.
    """
    if k == 0 or l == 0:
        return InterleaveReport(k, l, True, True, True, notes=["vacuous"])
    after_i, n1 = _successive(diagram, "I", k, budget)
    after_ii, n2 = _successive(diagram, "II", l, budget)
    nodes = n1 + n2
    if after_i is None or after_ii is None:
        return InterleaveReport(k, l, False, False, False, nodes, notes=["premise not found by search"])
    fwd, n3 = _successive(after_i, "II", l, budget)
    bwd, n4 = _successive(after_ii, "I", k, budget)
    rep = InterleaveReport(k, l, True, fwd is not None, bwd is not None, nodes + n3 + n4)
    if fwd is not None and bwd is not None and fwd.n != bwd.n:
        rep.notes.append("end complexities differ")
    return rep
