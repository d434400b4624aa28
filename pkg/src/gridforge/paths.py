"""Rectangular paths, bypasses and Θ-diagrams.

Points are ``(x, y)`` pairs in the ambient coordinates of the diagram they
refer to; ``Fraction`` coordinates are allowed for lines lying between the
integer lines of a grid.  A *line* is written ``("col", x)`` or ``("row", y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadLength,
    CollisionAfterSplice,
    DegeneratePath,
    EndsMismatch,
    GridforgeError,
    NotAKnot,
    NotAnEnd,
    NotAPath,
    NotAPermutation,
    NotATheta,
    ParseError,
)
from .gridcore import (
    BLACK,
    WHITE,
    GridDiagram,
    diagram_from_points,
    orient_points,
    parse_grid_lines,
    shifted_point_union,
)
from .invariants import linking_between, thurston_bennequin
from .moves import Move, MoveKind, _destab_parts

Line = tuple  # ("col", x) or ("row", y)


def _pt(p) -> tuple:
    x, y = p
    return (x if isinstance(x, Fraction) else int(x), y if isinstance(y, Fraction) else int(y))


@dataclass(frozen=True)
class RectangularPath:
    """Open chain of vertices; consecutive vertices share a column or a row."""

    vertices: tuple

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def ends(self) -> tuple:
        return self.vertices[0], self.vertices[-1]

    def end_line_at(self, index: int) -> Line | None:
        """Free line of the end ``vertices[index]`` (``index`` 0 or -1)."""
        if len(self.vertices) == 1:
            return None
        v = self.vertices[index]
        w = self.vertices[1] if index == 0 else self.vertices[-2]
        return ("row", v[1]) if v[0] == w[0] else ("col", v[0])

    @property
    def end_lines(self) -> frozenset:
        if len(self.vertices) == 1:
            v = self.vertices[0]
            return frozenset({("col", v[0]), ("row", v[1])})
        return frozenset({self.end_line_at(0), self.end_line_at(-1)})

    @property
    def length(self) -> int:
        """Number of vertical edges."""
        return sum(1 for a, b in zip(self.vertices, self.vertices[1:]) if a[0] == b[0])

    def point_set(self) -> frozenset:
        return frozenset(self.vertices)

    def transpose(self) -> "RectangularPath":
        return RectangularPath(tuple((y, x) for x, y in self.vertices))

    def mapped(self, fx, fy) -> "RectangularPath":
        return RectangularPath(tuple((fx[x], fy[y]) for x, y in self.vertices))


def validate_path(points: Iterable) -> RectangularPath:
    """Order a point set into a rectangular path, or raise :class:`NotAPath`.

    An input already listed in chain order keeps that order.
    """
    seq = [_pt(p) for p in points]
    if not seq:
        raise NotAPath("empty point set")
    if len(set(seq)) != len(seq):
        raise NotAPath("repeated vertex")
    if len(seq) == 1:
        return RectangularPath(tuple(seq))
    by_x: dict = {}
    by_y: dict = {}
    for p in seq:
        by_x.setdefault(p[0], []).append(p)
        by_y.setdefault(p[1], []).append(p)
    for line in list(by_x.values()) + list(by_y.values()):
        if len(line) > 2:
            raise NotAPath(f"line through {line[0]} carries {len(line)} vertices")
    singles = sum(1 for v in by_x.values() if len(v) == 1) + sum(1 for v in by_y.values() if len(v) == 1)
    if singles != 2:
        raise NotAPath(f"{singles} lines carry a single vertex; a path has exactly two")

    def neighbours(p):
        out = []
        for line in (by_x[p[0]], by_y[p[1]]):
            if len(line) == 2:
                out.append(line[0] if line[1] == p else line[1])
        return out

    ends = [p for p in seq if len(neighbours(p)) == 1]
    if len(ends) != 2:
        raise NotAPath("point set is not a single chain")
    if _is_chain(seq):
        return RectangularPath(tuple(seq))
    start = min(ends)
    chain = [start]
    prev = None
    cur = start
    while True:
        nxt = [q for q in neighbours(cur) if q != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        chain.append(cur)
    if len(chain) != len(seq):
        raise NotAPath("point set is not connected")
    return RectangularPath(tuple(chain))


def _is_chain(seq: Sequence) -> bool:
    if len(seq) < 2:
        return True
    share_x = seq[0][0] == seq[1][0]
    for a, b in zip(seq, seq[1:]):
        if share_x and a[0] != b[0]:
            return False
        if not share_x and a[1] != b[1]:
            return False
        share_x = not share_x
    return True


def as_path(p) -> RectangularPath:
    return p if isinstance(p, RectangularPath) else validate_path(p)


def completion_points(path: RectangularPath) -> list:
    """The one or two points closing ``path`` into a knot diagram."""
    lines = sorted(path.end_lines)
    if len(path) == 1:
        return []
    (k1, v1), (k2, v2) = lines
    if k1 != k2:
        return [(v1, v2)]
    fresh = max(q[0 if k1 == "row" else 1] for q in path.vertices) + 1
    if k1 == "col":
        return [(v1, fresh), (v2, fresh)]
    return [(fresh, v1), (fresh, v2)]


# -- splicing and bypasses -------------------------------------------------

def _diagram_points(diagram) -> tuple[dict, dict]:
    if isinstance(diagram, GridDiagram):
        pts = diagram.points()
        lab = diagram.column_labels
        return pts, {p: lab[p[0]] for p in pts}
    pts = {_pt(p): c for p, c in dict(diagram).items()}
    return pts, {p: 1 for p in pts}


def _spliced_points(diagram, beta: RectangularPath, alpha: RectangularPath) -> tuple[dict, dict]:
    pts, labels = _diagram_points(diagram)
    missing = [v for v in beta.vertices if v not in pts]
    if missing:
        raise NotAPath(f"beta vertex {missing[0]} is not a vertex of the diagram")
    if alpha.end_lines != beta.end_lines:
        raise EndsMismatch("alpha and beta do not share their end lines")
    remainder = {p: c for p, c in pts.items() if p not in beta.point_set()}
    beta_label = labels[beta.vertices[0]]
    for v in alpha.vertices:
        if v in remainder:
            raise CollisionAfterSplice(f"alpha vertex {v} is already a vertex of the diagram")
    try:
        colours = orient_points(list(remainder) + list(alpha.vertices), seeds=remainder)
    except (BadLength, NotAPermutation) as exc:
        raise CollisionAfterSplice(str(exc)) from exc
    new_labels = {p: labels[p] for p in remainder}
    for v in alpha.vertices:
        new_labels[v] = beta_label
    return colours, new_labels


def splice(diagram, beta, alpha) -> GridDiagram:
    """``(R \\ beta) ∪ alpha``; orientation and colour come from ``R \\ beta``."""
    beta, alpha = as_path(beta), as_path(alpha)
    colours, labels = _spliced_points(diagram, beta, alpha)
    try:
        return diagram_from_points(colours, labels)
    except (BadLength, NotAPermutation) as exc:
        raise CollisionAfterSplice(str(exc)) from exc


def union_diagram(alpha, beta) -> GridDiagram:
    """The knot diagram ``alpha ∪ beta`` (default orientation)."""
    alpha, beta = as_path(alpha), as_path(beta)
    if alpha.end_lines != beta.end_lines:
        raise EndsMismatch("alpha and beta do not share their end lines")
    pts = set(alpha.vertices) | set(beta.vertices)
    if len(pts) != len(alpha) + len(beta):
        raise NotAKnot("alpha and beta share a vertex")
    try:
        d = diagram_from_points(orient_points(pts))
    except (BadLength, NotAPermutation) as exc:
        raise NotAKnot(f"alpha ∪ beta is not a diagram: {exc}") from exc
    if d.num_components != 1:
        raise NotAKnot(f"alpha ∪ beta has {d.num_components} components")
    return d


def bypass_weight(alpha, beta) -> int:
    """``-tb(alpha ∪ beta)``."""
    return -thurston_bennequin(union_diagram(alpha, beta))


@dataclass(frozen=True)
class BypassReport:
    is_candidate: bool
    weight: int
    lk_ne: int
    lk_sw: int
    per_component: tuple = ()  # (lk with NE copy, lk with SW copy) per spliced component
    reason: str = ""
    necessary_only: bool = True

    def text(self) -> str:
        b = "true" if self.is_candidate else "false"
        pairs = " ".join(f"{a},{c}" for a, c in self.per_component)
        return (f"candidate={b} weight={self.weight} lkNE={self.lk_ne} lkSW={self.lk_sw} "
                f"components={pairs} necessaryOnly=true")


def check_bypass(diagram, alpha, beta) -> BypassReport:
    """Linking-number test for a bypass candidate.

    Builds ``(R\\beta) ∪ alpha`` together with the NE and SW push-offs of
    ``alpha ∪ beta`` and requires every spliced component to have linking
    number zero with both push-offs.  This is a necessary condition only:
    splitness itself is not decided.
    """
    alpha, beta = as_path(alpha), as_path(beta)
    weight = bypass_weight(alpha, beta)
    spliced, _ = _spliced_points(diagram, beta, alpha)
    loop = orient_points(set(alpha.vertices) | set(beta.vertices))
    union, groups = shifted_point_union(spliced, [(loop, "NE"), (loop, "SW")])
    per = []
    for k in sorted(groups[0]):
        per.append((linking_between(union, [k], groups[1]), linking_between(union, [k], groups[2])))
    lk_ne = sum(a for a, _ in per)
    lk_sw = sum(b for _, b in per)
    ok = all(a == 0 and b == 0 for a, b in per)
    reason = ("all linking numbers with the push-offs vanish (necessary condition only)"
              if ok else "a spliced component links a push-off of alpha ∪ beta")
    return BypassReport(ok, weight, lk_ne, lk_sw, tuple(per), reason)


def elementary_bypass(diagram: GridDiagram, move: Move) -> tuple[RectangularPath, RectangularPath]:
    """Single-vertex bypass ``alpha = {V}`` replacing the corner ``A, C, B`` of a destabilization."""
    if move.kind is not MoveKind.DESTABILIZATION:
        raise NotAPath(f"{move.text()} is not a destabilization")
    parts = _destab_parts(diagram, *move.placement)
    if parts is None:
        raise NotAPath(f"{move.text()} is not legal here")
    c, r = move.placement
    a_col, b_row = parts
    beta = RectangularPath(((a_col, r), (c, r), (c, b_row)))
    alpha = RectangularPath(((a_col, b_row),))
    return alpha, beta


def staircase_bypass(diagram: GridDiagram, col: int, row: int, steps: int,
                     disposition: str = "NW") -> tuple[GridDiagram, RectangularPath, RectangularPath]:
    """Stabilize ``steps`` times near the vertex ``(col, row)`` with a type II disposition.

    Returns the stabilized diagram ``R'``, the single-vertex ``alpha`` at the
    original vertex and the staircase ``beta`` (``2*steps + 1`` vertices) so that
    ``(R' \\ beta) ∪ alpha`` is ``R`` again and the weight is ``steps``.
    """
    from .moves import apply_move, stabilization
    from .gridcore import CornerKind

    if disposition not in ("NW", "SE"):
        raise NotAPath("staircase stabilizations must be of type II")
    if diagram.color_at(col, row) is None:
        raise NotAPath(f"({col}, {row}) is not a vertex")
    d = diagram
    beta: list = [(col, row)]
    target = 0  # index in beta of the vertex to stabilize next
    for _ in range(steps):
        vc, vr = beta[target]
        sx, sy = CornerKind(disposition).signs
        cut_c = vc + 1 if sx > 0 else vc
        cut_r = vr + 1 if sy > 0 else vr

        def mp(p, cut_c=cut_c, cut_r=cut_r):
            return (p[0] + (1 if p[0] >= cut_c else 0), p[1] + (1 if p[1] >= cut_r else 0))

        a = (mp((vc, vr))[0], cut_r)
        b = (cut_c, mp((vc, vr))[1])
        c = (cut_c, cut_r)
        new_beta = [mp(p) for p in beta]
        # the neighbour of V along its column connects to A, along its row to B
        prev = beta[target - 1] if target > 0 else None
        if len(beta) == 1:
            triple = [a, c, b]
        elif prev is not None and prev[0] == vc:
            triple = [a, c, b]
        else:
            triple = [b, c, a]
        new_beta[target:target + 1] = triple
        d = apply_move(d, stabilization(vc, vr, disposition))
        beta = new_beta
        target = target + 1  # the new corner C
    path = validate_path(beta)
    ends = sorted(path.end_lines)
    alpha = RectangularPath(((ends[0][1], ends[1][1]),))
    return d, alpha, path


# -- Θ-diagrams ----------------------------------------------------------------

@dataclass(frozen=True)
class ThetaDiagram:
    """Three paths with common end lines and a background diagram ``delta``."""

    alpha: RectangularPath
    beta: RectangularPath
    gamma: RectangularPath
    delta: tuple = field(default=())  # sorted ((x, y), colour) pairs

    @property
    def paths(self) -> tuple:
        return self.alpha, self.beta, self.gamma

    @property
    def end_lines(self) -> tuple:
        return tuple(sorted(self.alpha.end_lines))

    def delta_points(self) -> dict:
        return dict(self.delta)

    def all_points(self) -> list:
        out = []
        for p in self.paths:
            out.extend(p.vertices)
        out.extend(q for q, _ in self.delta)
        return out

    def diagram_without(self, name: str) -> GridDiagram:
        """Diagram formed by ``delta`` and the two paths other than ``name``."""
        keep = [p for n, p in zip("ABG", self.paths) if n != name]
        pts = set(keep[0].vertices) | set(keep[1].vertices)
        seeds = self.delta_points()
        colours = orient_points(list(pts) + list(seeds), seeds=seeds)
        return diagram_from_points(colours)

    def key(self) -> tuple:
        """Hashable combinatorial identity (paths compared as point sets)."""
        t = normalize_theta(self)
        return (t.alpha.point_set(), t.beta.point_set(), t.gamma.point_set(), t.delta)


def validate_theta(alpha, beta, gamma, delta: Mapping | GridDiagram | None = None) -> ThetaDiagram:
    try:
        alpha, beta, gamma = as_path(alpha), as_path(beta), as_path(gamma)
    except NotAPath as exc:
        raise NotATheta(str(exc)) from exc
    if isinstance(delta, GridDiagram):
        delta = delta.points()
    delta = {_pt(p): c for p, c in dict(delta or {}).items()}
    ends = alpha.end_lines
    if beta.end_lines != ends or gamma.end_lines != ends:
        raise NotATheta("paths do not share their end lines")
    pts = list(alpha.vertices) + list(beta.vertices) + list(gamma.vertices) + list(delta)
    if len(set(pts)) != len(pts):
        raise NotATheta("two objects share a vertex")
    counts: dict = {}
    for p in pts:
        counts[("col", p[0])] = counts.get(("col", p[0]), 0) + 1
        counts[("row", p[1])] = counts.get(("row", p[1]), 0) + 1
    for line, k in counts.items():
        want = 3 if line in ends else 2
        if k != want:
            raise NotATheta(f"line {line} carries {k} vertices, expected {want}")
    if delta:
        try:
            diagram_from_points(delta)
        except GridforgeError as exc:
            raise NotATheta(f"delta is not a diagram: {exc}") from exc
    for a, b in ((alpha, beta), (beta, gamma), (alpha, gamma)):
        try:
            union_diagram(a, b)
        except GridforgeError as exc:
            raise NotATheta(str(exc)) from exc
    return ThetaDiagram(alpha, beta, gamma, tuple(sorted(delta.items())))


def normalize_theta(theta: ThetaDiagram) -> ThetaDiagram:
    """Same Θ-diagram with coordinates renumbered to consecutive integers."""
    pts = theta.all_points()
    fx = {v: i for i, v in enumerate(sorted({p[0] for p in pts}))}
    fy = {v: i for i, v in enumerate(sorted({p[1] for p in pts}))}
    delta = tuple(sorted(((fx[p[0]], fy[p[1]]), c) for p, c in theta.delta))
    return ThetaDiagram(theta.alpha.mapped(fx, fy), theta.beta.mapped(fx, fy),
                        theta.gamma.mapped(fx, fy), delta)


def _transpose_theta(theta: ThetaDiagram) -> ThetaDiagram:
    delta = tuple(sorted(((p[1], p[0]), WHITE if c == BLACK else BLACK) for p, c in theta.delta))
    return ThetaDiagram(theta.alpha.transpose(), theta.beta.transpose(), theta.gamma.transpose(), delta)


def theta_from_bypass(diagram: GridDiagram, alpha, beta) -> ThetaDiagram:
    """Θ-diagram ``(alpha, beta, gamma, delta)`` with ``gamma`` the rest of beta's component."""
    alpha, beta = as_path(alpha), as_path(beta)
    pts = diagram.points()
    if any(v not in pts for v in beta.vertices):
        raise NotAPath("beta is not part of the diagram")
    comp = diagram.component_of_column[beta.vertices[0][0]]
    own = {p for p in pts if diagram.component_of_column[p[0]] == comp}
    gamma = validate_path(own - beta.point_set())
    delta = {p: c for p, c in pts.items() if p not in own}
    return validate_theta(alpha, beta, gamma, delta)


# Each rule maps endpoint index (1..3, left to right) to an action:
# ("drop",), ("keep", j) appending P_j, or ("prime", s, j): P_i -> P_i shifted by s*eps
# vertically, then P_j shifted the same way appended.
END_SHIFT_RULES = {
    1: {1: ("prime", 1, 2), 2: ("drop",), 3: ("keep", 2)},
    2: {1: ("prime", -1, 3), 2: ("keep", 3), 3: ("drop",)},
    3: {1: ("keep", 3), 2: ("prime", 1, 3), 3: ("drop",)},
    4: {1: ("drop",), 2: ("prime", -1, 1), 3: ("keep", 1)},
    5: {1: ("drop",), 2: ("keep", 1), 3: ("prime", 1, 1)},
    6: {1: ("keep", 2), 2: ("drop",), 3: ("prime", -1, 2)},
}


def end_shift(theta: ThetaDiagram, rule: int, end: Line | int = 0) -> ThetaDiagram:
    """Apply one of the six end-shift replacements at an end line of ``theta``.

    ``end`` is an end line or an index into ``theta.end_lines``.  Vertical end
    lines are handled by reflecting in the diagonal.
    """
    if rule not in END_SHIFT_RULES:
        raise NotAnEnd(f"unknown end-shift rule {rule}")
    lines = theta.end_lines
    if isinstance(end, int):
        if not 0 <= end < len(lines):
            raise NotAnEnd(f"no end with index {end}")
        line = lines[end]
    else:
        line = tuple(end)
        if line not in lines:
            raise NotAnEnd(f"{line} is not an end line")
    if line[0] == "col":
        flipped = _transpose_theta(theta)
        return normalize_theta(_transpose_theta(_end_shift_row(flipped, line[1], rule)))
    return normalize_theta(_end_shift_row(theta, line[1], rule))


def _end_shift_row(theta: ThetaDiagram, h, rule: int) -> ThetaDiagram:
    paths = [list(p.vertices) for p in theta.paths]
    info = []  # (x, path index, at_start)
    for k, p in enumerate(theta.paths):
        if len(p) == 1:
            at_start = True
        elif p.end_line_at(0) == ("row", h):
            at_start = True
        elif p.end_line_at(-1) == ("row", h):
            at_start = False
        else:
            raise NotAnEnd(f"path {'ABG'[k]} has no end on row {h}")
        v = p.vertices[0] if at_start else p.vertices[-1]
        info.append((v[0], k, at_start))
    info.sort()
    endpoint = {i + 1: info[i] for i in range(3)}
    ys = sorted({p[1] for p in theta.all_points()})
    gap = min((b - a for a, b in zip(ys, ys[1:])), default=1)
    eps = Fraction(gap) / 3
    for i, action in END_SHIFT_RULES[rule].items():
        x, k, at_start = endpoint[i]
        seq = paths[k]
        if action[0] == "drop":
            if len(seq) == 1:
                raise DegeneratePath(f"endpoint P{i} is the only vertex of path {'ABG'[k]}")
            if at_start:
                seq.pop(0)
            else:
                seq.pop()
            continue
        if action[0] == "keep":
            added = (endpoint[action[1]][0], h)
            moved = None
        else:
            s = action[1]
            added = (endpoint[action[2]][0], h + s * eps)
            moved = (x, h + s * eps)
        if at_start:
            if moved is not None:
                seq[0] = moved
            seq.insert(0, added)
        else:
            if moved is not None:
                seq[-1] = moved
            seq.append(added)
    try:
        return validate_theta(paths[0], paths[1], paths[2], theta.delta_points())
    except NotATheta as exc:
        raise NotATheta(f"end shift {rule} does not give a Θ-diagram: {exc}") from exc


def _owner_map(theta: ThetaDiagram) -> dict:
    owner = {}
    for name, p in zip("ABG", theta.paths):
        for v in p.vertices:
            owner[v] = name
    for q, _ in theta.delta:
        owner[q] = "D"
    return owner


def _line_coords(theta: ThetaDiagram) -> tuple[dict, dict]:
    cols: dict = {}
    rows: dict = {}
    for p in theta.all_points():
        cols.setdefault(p[0], []).append(p[1])
        rows.setdefault(p[1], []).append(p[0])
    return cols, rows


def _pairs(vals: list) -> list:
    vals = sorted(vals)
    return [(vals[i], vals[j]) for i in range(len(vals)) for j in range(i + 1, len(vals))]


def theta_commutations(theta: ThetaDiagram) -> list[tuple[str, int]]:
    """Legal exchanges of adjacent columns/rows of a normalized Θ-diagram."""
    theta = normalize_theta(theta)
    cols, rows = _line_coords(theta)
    out = []
    for axis, lines in (("col", cols), ("row", rows)):
        for i in range(len(lines) - 1):
            a, b = lines[i], lines[i + 1]
            if set(a) & set(b):
                continue
            ok = True
            for lo1, hi1 in _pairs(a):
                for lo2, hi2 in _pairs(b):
                    if lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1:
                        ok = False
            if ok:
                out.append((axis, i))
    return out


def theta_commute(theta: ThetaDiagram, axis: str, i: int) -> ThetaDiagram:
    theta = normalize_theta(theta)
    if (axis, i) not in theta_commutations(theta):
        raise NotATheta(f"commutation {axis} {i} is not legal")
    sw = {i: i + 1, i + 1: i}

    def f(p):
        return (sw.get(p[0], p[0]), p[1]) if axis == "col" else (p[0], sw.get(p[1], p[1]))

    paths = [RectangularPath(tuple(f(v) for v in p.vertices)) for p in theta.paths]
    delta = tuple(sorted((f(q), c) for q, c in theta.delta))
    return ThetaDiagram(*paths, delta)


def _neighbours(theta: ThetaDiagram, v, owner: dict) -> tuple:
    """(row neighbour, column neighbour) of ``v`` inside its own path or delta."""
    name = owner[v]
    if name == "D":
        pts = theta.delta_points()
        row_n = next(q for q in pts if q != v and q[1] == v[1])
        col_n = next(q for q in pts if q != v and q[0] == v[0])
        return row_n, col_n
    seq = dict(zip("ABG", theta.paths))[name].vertices
    k = seq.index(v)
    if k == 0 or k == len(seq) - 1:
        return None, None
    a, b = seq[k - 1], seq[k + 1]
    return (a, b) if a[1] == v[1] else (b, a)


def theta_destabilizations(theta: ThetaDiagram, kind: str | None = "I") -> list:
    """Corners ``C`` of a normalized Θ-diagram removable by a destabilization of ``kind``."""
    theta = normalize_theta(theta)
    owner = _owner_map(theta)
    cols, rows = _line_coords(theta)
    out = []
    for v in sorted(owner):
        row_n, col_n = _neighbours(theta, v, owner)
        if row_n is None:
            continue
        if abs(row_n[0] - v[0]) != 1 or abs(col_n[1] - v[1]) != 1:
            continue
        if len(cols[v[0]]) != 2 or len(rows[v[1]]) != 2:
            continue
        new = (row_n[0], col_n[1])
        if new in owner:
            continue
        type_i = (v[0] - row_n[0]) * (v[1] - col_n[1]) > 0
        if kind is None or (kind == "I") == type_i:
            out.append(v)
    return out


def theta_destabilize(theta: ThetaDiagram, corner) -> ThetaDiagram:
    theta = normalize_theta(theta)
    if corner not in theta_destabilizations(theta, None):
        raise NotATheta(f"no destabilization at {corner}")
    owner = _owner_map(theta)
    row_n, col_n = _neighbours(theta, corner, owner)
    new = (row_n[0], col_n[1])
    gone = {row_n, corner, col_n}
    name = owner[corner]
    if name == "D":
        delta = {q: c for q, c in theta.delta if q not in gone}
        delta[new] = dict(theta.delta)[row_n]
        return normalize_theta(ThetaDiagram(*theta.paths, tuple(sorted(delta.items()))))
    paths = []
    for n, p in zip("ABG", theta.paths):
        if n != name:
            paths.append(p)
            continue
        seq = list(p.vertices)
        k = seq.index(corner)
        seq[k - 1:k + 2] = [new]
        paths.append(RectangularPath(tuple(seq)))
    return normalize_theta(ThetaDiagram(*paths, theta.delta))


# -- Θ text format -------------------------------------------------------------

def _fmt_path(p: RectangularPath) -> str:
    return " ".join(f"{x},{y}" for x, y in p.vertices)


def serialize_theta(theta: ThetaDiagram) -> str:
    t = normalize_theta(theta)
    path_cols = {v[0] for p in t.paths for v in p.vertices}
    path_rows = {v[1] for p in t.paths for v in p.vertices}
    dcols = sorted({q[0] for q, _ in t.delta})
    drows = sorted({q[1] for q, _ in t.delta})
    if set(dcols) & path_cols or set(drows) & path_rows:
        raise NotATheta("delta shares a line with a path")
    rr = {y: i for i, y in enumerate(drows)}
    xs = [0] * len(dcols)
    os = [0] * len(dcols)
    cidx = {x: i for i, x in enumerate(dcols)}
    for q, c in t.delta:
        (xs if c == BLACK else os)[cidx[q[0]]] = rr[q[1]]
    lines = [f"n={len(dcols)}", "X=" + " ".join(map(str, xs)), "O=" + " ".join(map(str, os)),
             "A=" + _fmt_path(t.alpha), "B=" + _fmt_path(t.beta), "G=" + _fmt_path(t.gamma)]
    return "\n".join(lines)


def _parse_points(text: str) -> list:
    out = []
    for tok in text.split():
        try:
            x, y = tok.split(",")
            out.append((int(x), int(y)))
        except ValueError as exc:
            raise ParseError(f"bad point {tok!r}") from exc
    return out


def parse_theta(text: str) -> ThetaDiagram:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 6:
        raise ParseError("Θ text needs n=, X=, O=, A=, B=, G= lines")
    for ln, key in zip(lines[3:], "ABG"):
        if not ln.startswith(key + "="):
            raise ParseError(f"expected '{key}=...', got {ln!r}")
    paths = [_parse_points(ln[2:]) for ln in lines[3:]]
    if lines[0] == "n=0":
        if lines[1] != "X=" or lines[2] != "O=":
            raise ParseError("empty delta must have empty X= and O= lines")
        delta_pts = {}
    else:
        dg = parse_grid_lines(lines[:3])
        path_cols = {p[0] for ps in paths for p in ps}
        path_rows = {p[1] for ps in paths for p in ps}
        total_c = len(path_cols) + dg.n
        total_r = len(path_rows) + dg.n
        free_c = [c for c in range(total_c) if c not in path_cols]
        free_r = [r for r in range(total_r) if r not in path_rows]
        if len(free_c) != dg.n or len(free_r) != dg.n:
            raise ParseError("path coordinates leave no room for delta")
        delta_pts = {(free_c[p[0]], free_r[p[1]]): c for p, c in dg.points().items()}
    return validate_theta(paths[0], paths[1], paths[2], delta_pts)
