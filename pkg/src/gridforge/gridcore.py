"""Oriented rectangular (grid) diagrams.

A diagram of complexity ``n`` lives on the integer lattice ``{0..n-1}^2``
(column = x growing rightward, row = y growing upward).  Column ``i`` holds a
black vertex ``X`` at row ``x[i]`` and a white vertex ``O`` at row ``o[i]``.
Vertical edges run from the black vertex to the white one, horizontal edges
from white to black, which orients every component.  At every crossing the
vertical edge passes over the horizontal one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadLength,
    CoincidentMarkers,
    NotAPermutation,
    NotClosedSubdiagram,
    ParseError,
)

BLACK = "X"
WHITE = "O"

Point = tuple  # (x, y) with int or Fraction coordinates


class CornerKind(str, enum.Enum):
    """Quadrant of the bisector of the two edges meeting at a vertex."""

    NE = "NE"
    NW = "NW"
    SE = "SE"
    SW = "SW"

    @classmethod
    def from_signs(cls, dx: int, dy: int) -> "CornerKind":
        return {(1, 1): cls.NE, (-1, 1): cls.NW, (1, -1): cls.SE, (-1, -1): cls.SW}[(dx, dy)]

    @property
    def signs(self) -> tuple[int, int]:
        return {"NE": (1, 1), "NW": (-1, 1), "SE": (1, -1), "SW": (-1, -1)}[self.value]


DIAGONAL_OFFSETS = {d.value: d.signs for d in CornerKind}


@dataclass(frozen=True, order=True)
class Vertex:
    col: int
    row: int
    color: str


@dataclass(frozen=True)
class GridDiagram:
    """Validated oriented grid diagram; construct through :func:`validate` or directly."""

    n: int
    x: tuple[int, ...]
    o: tuple[int, ...]
    labels: tuple[int, ...] = field(default=None)  # one colour per component

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        object.__setattr__(self, "o", tuple(int(v) for v in self.o))
        _check_markers(self.n, self.x, self.o)
        k = len(self.component_columns)
        if self.labels is None:
            object.__setattr__(self, "labels", (1,) * k)
        else:
            labels = tuple(int(v) for v in self.labels)
            if len(labels) != k:
                raise BadLength(f"{len(labels)} labels for {k} components")
            if any(v < 1 for v in labels):
                raise BadLength("component labels must be positive integers")
            object.__setattr__(self, "labels", labels)

    # -- derived tables -------------------------------------------------
    @cached_property
    def xcol(self) -> tuple[int, ...]:
        """Column of the black vertex in each row."""
        inv = [0] * self.n
        for c, r in enumerate(self.x):
            inv[r] = c
        return tuple(inv)

    @cached_property
    def ocol(self) -> tuple[int, ...]:
        """Column of the white vertex in each row."""
        inv = [0] * self.n
        for c, r in enumerate(self.o):
            inv[r] = c
        return tuple(inv)

    @cached_property
    def component_columns(self) -> tuple[tuple[int, ...], ...]:
        """Columns of each component in traversal order, components sorted by first column."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            cols = []
            c = start
            while not seen[c]:
                seen[c] = True
                cols.append(c)
                c = self.xcol[self.o[c]]
            comps.append(tuple(cols))
        return tuple(comps)

    @cached_property
    def component_of_column(self) -> tuple[int, ...]:
        out = [0] * self.n
        for k, cols in enumerate(self.component_columns):
            for c in cols:
                out[c] = k
        return tuple(out)

    @property
    def column_labels(self) -> tuple[int, ...]:
        return tuple(self.labels[k] for k in self.component_of_column)

    @property
    def num_components(self) -> int:
        return len(self.component_columns)

    def vertices(self) -> list[Vertex]:
        out = []
        for c in range(self.n):
            out.append(Vertex(c, self.x[c], BLACK))
            out.append(Vertex(c, self.o[c], WHITE))
        return out

    def points(self) -> dict[tuple[int, int], str]:
        """Vertex coordinates mapped to their colours."""
        return {(v.col, v.row): v.color for v in self.vertices()}

    def color_at(self, col: int, row: int) -> str | None:
        if self.x[col] == row:
            return BLACK
        if self.o[col] == row:
            return WHITE
        return None

    def column_partner(self, col: int, row: int) -> int:
        """Row of the other vertex in column ``col``."""
        return self.o[col] if self.x[col] == row else self.x[col]

    def row_partner(self, col: int, row: int) -> int:
        """Column of the other vertex in row ``row``."""
        return self.ocol[row] if self.xcol[row] == col else self.xcol[row]

    def corner_kind(self, col: int, row: int) -> CornerKind:
        if self.color_at(col, row) is None:
            raise ValueError(f"({col}, {row}) is not a vertex")
        dy = 1 if self.column_partner(col, row) > row else -1
        dx = 1 if self.row_partner(col, row) > col else -1
        return CornerKind.from_signs(dx, dy)

    def vertical_direction(self, col: int) -> int:
        """+1 if the vertical edge of ``col`` points up, -1 if down."""
        return 1 if self.o[col] > self.x[col] else -1

    def horizontal_direction(self, row: int) -> int:
        """+1 if the horizontal edge of ``row`` points right, -1 if left."""
        return 1 if self.xcol[row] > self.ocol[row] else -1

    def column_span(self, col: int) -> tuple[int, int]:
        a, b = self.x[col], self.o[col]
        return (a, b) if a < b else (b, a)

    def row_span(self, row: int) -> tuple[int, int]:
        a, b = self.xcol[row], self.ocol[row]
        return (a, b) if a < b else (b, a)

    def with_labels(self, labels: Sequence[int]) -> "GridDiagram":
        return GridDiagram(self.n, self.x, self.o, tuple(labels))

    def __str__(self) -> str:
        return serialize_grid(self)


def _check_markers(n: int, xs: Sequence[int], os: Sequence[int]) -> None:
    if not isinstance(n, int) or n < 1:
        raise BadLength(f"grid number must be a positive integer, got {n!r}")
    if len(xs) != n or len(os) != n:
        raise BadLength(f"expected {n} entries, got X:{len(xs)} O:{len(os)}")
    for name, seq in (("X", xs), ("O", os)):
        if sorted(seq) != list(range(n)):
            raise NotAPermutation(f"{name} rows {list(seq)} are not a permutation of 0..{n - 1}")
    for i in range(n):
        if xs[i] == os[i]:
            raise CoincidentMarkers(f"column {i} has both markers in row {xs[i]}")


def validate(n: int, x_rows: Sequence[int], o_rows: Sequence[int],
             labels: Mapping[int, int] | Sequence[int] | None = None) -> GridDiagram:
    """Build a :class:`GridDiagram`, raising a domain error if the data are not legal."""
    if len(x_rows) != n or len(o_rows) != n:
        raise BadLength(f"expected {n} entries, got X:{len(x_rows)} O:{len(o_rows)}")
    if isinstance(labels, Mapping):
        labels = [labels[k] for k in sorted(labels)]
    return GridDiagram(n, tuple(x_rows), tuple(o_rows), None if labels is None else tuple(labels))


def trivial_diagram() -> GridDiagram:
    """The 2x2 unknot diagram T2."""
    return GridDiagram(2, (1, 0), (0, 1))


def complexity(diagram: GridDiagram) -> int:
    return diagram.n


def components(diagram: GridDiagram) -> list[tuple[Vertex, ...]]:
    """Vertex cycles of the components, each traversed along its orientation."""
    out = []
    for cols in diagram.component_columns:
        cycle = []
        for c in cols:
            cycle.append(Vertex(c, diagram.x[c], BLACK))
            cycle.append(Vertex(c, diagram.o[c], WHITE))
        out.append(tuple(cycle))
    return out


def from_columns(x: Sequence[int], o: Sequence[int],
                 column_labels: Sequence[int] | None = None) -> GridDiagram:
    """Diagram from marker rows, taking component colours from any column of each component."""
    n = len(x)
    d = GridDiagram(n, tuple(x), tuple(o))
    if column_labels is None or all(v == 1 for v in column_labels):
        return d
    labels = tuple(column_labels[cols[0]] for cols in d.component_columns)
    return d.with_labels(labels)


def _ranks(values: Iterable) -> dict:
    return {v: i for i, v in enumerate(sorted(set(values)))}


def diagram_from_points(points: Mapping[Point, str],
                        labels: Mapping[Point, int] | None = None) -> GridDiagram:
    """Renormalise a coloured point set (rational coordinates allowed) onto ``{0..n-1}^2``.

    Raises the usual validation errors when some line does not carry exactly one
    black and one white vertex.
    """
    xr = _ranks(p[0] for p in points)
    yr = _ranks(p[1] for p in points)
    n = len(xr)
    if len(yr) != n or len(points) != 2 * n:
        raise BadLength("point set does not have exactly two vertices on every line")
    xs: list = [None] * n
    os: list = [None] * n
    col_labels = [1] * n
    for p, color in points.items():
        c, r = xr[p[0]], yr[p[1]]
        slot = xs if color == BLACK else os
        if slot[c] is not None:
            raise NotAPermutation(f"column {c} carries two {color} vertices")
        slot[c] = r
        if labels is not None:
            col_labels[c] = labels.get(p, 1)
    if None in xs or None in os:
        raise BadLength("some column lacks a black or a white vertex")
    return from_columns(xs, os, col_labels)


def orient_points(points: Iterable[Point],
                  seeds: Mapping[Point, str] | None = None) -> dict[Point, str]:
    """Colour an unoriented point set so that every component becomes oriented.

    ``seeds`` fixes the colour of some vertices; each component takes its
    orientation from its first seeded vertex, otherwise its lowest-leftmost
    vertex is made black.
    """
    pts = sorted(set(points))
    by_x: dict = {}
    by_y: dict = {}
    for p in pts:
        by_x.setdefault(p[0], []).append(p)
        by_y.setdefault(p[1], []).append(p)
    for line in list(by_x.values()) + list(by_y.values()):
        if len(line) != 2:
            raise BadLength(f"line through {line[0]} carries {len(line)} vertices")
    seeds = seeds or {}
    colors: dict = {}
    for start in pts:
        if start in colors:
            continue
        cycle = []
        p, vertical = start, True
        while True:
            cycle.append(p)
            line = by_x[p[0]] if vertical else by_y[p[1]]
            p = line[0] if line[1] == p else line[1]
            vertical = not vertical
            if p == start:
                break
        # cycle alternates vertical/horizontal steps starting with a vertical one
        anchor = next((i for i, q in enumerate(cycle) if q in seeds), None)
        if anchor is None:
            first = BLACK
            anchor = 0
        else:
            first = seeds[cycle[anchor]]
        for i, q in enumerate(cycle):
            same = (i - anchor) % 2 == 0
            colors[q] = first if same else (WHITE if first == BLACK else BLACK)
    # seeds that disagree with the propagated colouring are an error
    for q, col in seeds.items():
        if q in colors and colors[q] != col:
            raise NotAPermutation(f"inconsistent orientation seed at {q}")
    return colors


def rotate_cw(diagram: GridDiagram) -> GridDiagram:
    """Clockwise quarter turn ``(col, row) -> (row, n-1-col)`` with colours exchanged.

    Exchanging colours keeps edges oriented as before, and since the former
    horizontal edges are now vertical all crossings are flipped.
    """
    n = diagram.n
    new_x = tuple(n - 1 - diagram.ocol[j] for j in range(n))
    new_o = tuple(n - 1 - diagram.xcol[j] for j in range(n))
    old_labels = diagram.column_labels
    col_labels = [old_labels[diagram.xcol[j]] for j in range(n)]
    return from_columns(new_x, new_o, col_labels)


def shifted_point_union(base: Mapping[Point, str],
                        copies: Sequence[tuple[Mapping[Point, str], str]],
                        labels: Mapping[Point, int] | None = None,
                        ) -> tuple[GridDiagram, list[set[int]]]:
    """Union of ``base`` with diagonally displaced copies of other point sets.

    All inputs share one coordinate system.  Coordinates are refined by the
    factor ``2m+1`` (``m`` copies): a source line ``k`` goes to ``(2m+1)k`` and
    copy ``i`` is displaced by ``i+1`` refined steps in its direction, which is
    a displacement smaller than any gap between original lines.  Returns the
    diagram and, for the base followed by each copy, the set of component
    indices it produced.
    """
    m = len(copies)
    factor = 2 * m + 1
    all_pts = list(base) + [p for pts, _ in copies for p in pts]
    xr = _ranks(p[0] for p in all_pts)
    yr = _ranks(p[1] for p in all_pts)
    merged: dict = {}
    merged_labels: dict = {}
    layer_of: dict = {}
    for layer, (pts, sx, sy, mag) in enumerate(
            [(base, 0, 0, 0)]
            + [(pts, *DIAGONAL_OFFSETS[str(getattr(d, "value", d))], i + 1)
               for i, (pts, d) in enumerate(copies)]):
        for p, color in pts.items():
            q = (factor * xr[p[0]] + sx * mag, factor * yr[p[1]] + sy * mag)
            if q in merged:
                raise NotClosedSubdiagram(f"shifted copies collide at {q}")
            merged[q] = color
            layer_of[q] = layer
            if labels is not None and p in labels:
                merged_labels[q] = labels[p]
    d = diagram_from_points(merged, merged_labels if labels is not None else None)
    qx = _ranks(q[0] for q in merged)
    groups: list[set[int]] = [set() for _ in range(m + 1)]
    for q, layer in layer_of.items():
        groups[layer].add(d.component_of_column[qx[q[0]]])
    return d, groups


def _closed_subset(diagram: GridDiagram, subset: Iterable) -> dict:
    pts = diagram.points()
    chosen = {}
    for v in subset:
        key = (v.col, v.row) if isinstance(v, Vertex) else (int(v[0]), int(v[1]))
        if key not in pts:
            raise NotClosedSubdiagram(f"{key} is not a vertex of the diagram")
        chosen[key] = pts[key]
    for (c, r) in chosen:
        if (c, diagram.column_partner(c, r)) not in chosen or (diagram.row_partner(c, r), r) not in chosen:
            raise NotClosedSubdiagram(f"vertex {(c, r)} has a partner outside the subset")
    return chosen


def shifted_union(diagram: GridDiagram, subset: Iterable, dirs: Sequence[str]) -> GridDiagram:
    """``R`` together with one displaced copy of the closed sub-diagram ``subset`` per direction."""
    chosen = _closed_subset(diagram, subset)
    if not chosen or not dirs:
        return diagram
    pts = diagram.points()
    col_labels = diagram.column_labels
    labels = {p: col_labels[p[0]] for p in pts}
    d, _ = shifted_point_union(pts, [(chosen, d) for d in dirs], labels)
    return d


def shifted_union_groups(diagram: GridDiagram, subset: Iterable,
                         dirs: Sequence[str]) -> tuple[GridDiagram, list[set[int]]]:
    """Like :func:`shifted_union` but also reports which components each layer produced."""
    chosen = _closed_subset(diagram, subset)
    return shifted_point_union(diagram.points(), [(chosen, d) for d in dirs])


def disjoint_union(first: GridDiagram, second: GridDiagram) -> GridDiagram:
    """Split union: ``second`` placed above and to the right of ``first``."""
    n = first.n
    xs = first.x + tuple(r + n for r in second.x)
    os = first.o + tuple(r + n for r in second.o)
    return from_columns(xs, os, first.column_labels + second.column_labels)


# -- text format --------------------------------------------------------

def serialize_grid(diagram: GridDiagram) -> str:
    lines = [
        f"n={diagram.n}",
        "X=" + " ".join(map(str, diagram.x)),
        "O=" + " ".join(map(str, diagram.o)),
    ]
    if any(v != 1 for v in diagram.labels):
        lines.append("labels=" + ",".join(map(str, diagram.labels)))
    return "\n".join(lines)


def _int_list(text: str, sep: str | None = None) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(sep)]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {text!r}") from exc


def _keyed(line: str, key: str) -> str:
    if not line.startswith(key + "="):
        raise ParseError(f"expected '{key}=...', got {line!r}")
    return line[len(key) + 1:]


def parse_grid_lines(lines: Sequence[str]) -> GridDiagram:
    if len(lines) < 3:
        raise ParseError("grid text needs n=, X= and O= lines")
    try:
        n = int(_keyed(lines[0], "n"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad grid number line {lines[0]!r}") from exc
    xs = _int_list(_keyed(lines[1], "X"))
    os = _int_list(_keyed(lines[2], "O"))
    labels = None
    if len(lines) > 3:
        labels = _int_list(_keyed(lines[3], "labels"), ",")
    if len(lines) > 4:
        raise ParseError(f"unexpected trailing line {lines[4]!r}")
    return validate(n, xs, os, labels)


def parse_grid(text: str) -> GridDiagram:
    """Parse the ``n= / X= / O= [/ labels=]`` format."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    return parse_grid_lines([ln for ln in lines if ln])


# -- rendering ----------------------------------------------------------

CROSSING_GLYPH = "╂"


def render_ascii(diagram: GridDiagram) -> str:
    """Character raster of size ``(2n-1) x (2n-1)``, top row first.

    Markers print as ``X``/``O``, edges as ``│``/``─`` and crossings as ``╂``
    (the heavy vertical stroke is the overpass).
    """
    n = diagram.n
    size = 2 * n - 1
    vert = [[False] * size for _ in range(size)]
    horiz = [[False] * size for _ in range(size)]
    for c in range(n):
        lo, hi = diagram.column_span(c)
        for y in range(2 * lo, 2 * hi + 1):
            vert[y][2 * c] = True
    for r in range(n):
        lo, hi = diagram.row_span(r)
        for xx in range(2 * lo, 2 * hi + 1):
            horiz[2 * r][xx] = True
    rows = []
    for y in range(size - 1, -1, -1):
        chars = []
        for xx in range(size):
            if xx % 2 == 0 and y % 2 == 0 and diagram.color_at(xx // 2, y // 2) is not None:
                chars.append(diagram.color_at(xx // 2, y // 2))
            elif vert[y][xx] and horiz[y][xx]:
                chars.append(CROSSING_GLYPH)
            elif vert[y][xx]:
                chars.append("│")
            elif horiz[y][xx]:
                chars.append("─")
            else:
                chars.append(" ")
        rows.append("".join(chars))
    return "\n".join(rows)


def as_fraction_point(p: Sequence) -> tuple[Fraction, Fraction]:
    return Fraction(p[0]), Fraction(p[1])
