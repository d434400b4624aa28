"""Braid words, Markov and exchange moves, and the grid/braid bridge.

Letters are signed generator indices: ``i`` stands for ``sigma_i`` and ``-i``
for its inverse, with strand positions numbered from 1 at the bottom.  In
``sigma_i`` the strand at position ``i+1`` passes down over the strand at
position ``i``, which is a positive crossing in the sign convention of
:mod:`gridforge.invariants`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadInput,
    BadSplit,
    EqualityStepFailed,
    NotDestabilizable,
    ParseError,
    StrandMismatch,
)
from .gridcore import GridDiagram


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(v) for v in self.letters))
        if not isinstance(self.strands, int) or self.strands < 1:
            raise BadInput(f"strand count must be >= 1, got {self.strands!r}")
        for v in self.letters:
            if v == 0 or abs(v) >= self.strands:
                raise BadInput(f"letter {v} is not a generator of B_{self.strands}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise StrandMismatch(f"B_{self.strands} * B_{other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-v for v in reversed(self.letters)))

    def __str__(self) -> str:
        return serialize_braid(self)


def braid(strands: int, *letters: int) -> BraidWord:
    return BraidWord(strands, letters)


# -- text format ---------------------------------------------------------

def serialize_braid(b: BraidWord) -> str:
    return f"n={b.strands}\n" + " ".join(map(str, b.letters))


def parse_braid(text: str) -> BraidWord:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n="):
        raise ParseError("braid text must start with 'n=<int>'")
    if len(lines) > 2:
        raise ParseError(f"unexpected trailing line {lines[2]!r}")
    try:
        n = int(lines[0][2:])
        letters = [int(tok) for tok in lines[1].split()] if len(lines) == 2 else []
    except ValueError as exc:
        raise ParseError(f"bad braid text {text!r}") from exc
    return BraidWord(n, letters)


# -- simple invariants and Markov moves -----------------------------------

def exponent_sum(b: BraidWord) -> int:
    return sum(1 if v > 0 else -1 for v in b.letters)


def self_linking(b: BraidWord) -> int:
    return exponent_sum(b) - b.strands


def permutation(b: BraidWord) -> list[int]:
    """Final position (0-based) of the strand starting at each position."""
    pos = list(range(b.strands))  # pos[p] = strand currently at position p
    for v in b.letters:
        i = abs(v) - 1
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    final = [0] * b.strands
    for p, s in enumerate(pos):
        final[s] = p
    return final


def closure_components(b: BraidWord) -> int:
    """Number of cycles of the underlying permutation."""
    perm = permutation(b)
    seen = [False] * b.strands
    count = 0
    for s in range(b.strands):
        if not seen[s]:
            count += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
    return count


def markov_stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    sign = _sign(sign)
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def markov_destabilize(b: BraidWord) -> BraidWord:
    top = b.strands - 1
    if top < 1 or not b.letters or abs(b.letters[-1]) != top:
        raise NotDestabilizable("last letter is not the top generator")
    if sum(1 for v in b.letters if abs(v) == top) != 1:
        raise NotDestabilizable("top generator occurs more than once")
    return BraidWord(b.strands - 1, b.letters[:-1])


def conjugate(b: BraidWord, g: BraidWord | Sequence[int]) -> BraidWord:
    """``g^-1 b g``."""
    g = _as_word(g, b.strands)
    return g.inverse() * b * g


def cyclic_rotate(b: BraidWord, k: int) -> BraidWord:
    """Conjugation by the prefix of length ``k``."""
    k %= max(len(b), 1)
    return BraidWord(b.strands, b.letters[k:] + b.letters[:k])


def _sign(sign) -> int:
    if sign in (1, "+", "positive"):
        return 1
    if sign in (-1, "-", "negative"):
        return -1
    raise BadInput(f"sign must be + or -, got {sign!r}")


def _as_word(g, strands: int) -> BraidWord:
    if isinstance(g, BraidWord):
        if g.strands != strands:
            raise StrandMismatch(f"conjugator on {g.strands} strands, braid on {strands}")
        return g
    return BraidWord(strands, tuple(g))


# -- free group action ------------------------------------------------------

def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for v in word:
        if out and out[-1] == -v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def _free_inverse(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-v for v in reversed(word))


def _letter_images(v: int) -> dict[int, tuple[int, ...]]:
    i = abs(v)
    if v > 0:
        return {i: (i, i + 1, -i), i + 1: (i,)}
    return {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}


def artin_action(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Images of the free generators ``x_1..x_n`` under the automorphism of ``b``."""
    images = {j: (j,) for j in range(1, b.strands + 1)}
    for v in b.letters:
        sub = _letter_images(v)
        new = dict(images)
        for j, w in sub.items():
            out: list[int] = []
            for g in w:
                img = images[abs(g)]
                out.extend(img if g > 0 else _free_inverse(img))
            new[j] = free_reduce(out)
        images = new
    return tuple(images[j] for j in range(1, b.strands + 1))


def braid_equal(b1: BraidWord, b2: BraidWord) -> bool:
    if b1.strands != b2.strands:
        raise StrandMismatch(f"B_{b1.strands} vs B_{b2.strands}")
    if b1.letters == b2.letters:
        return True
    return artin_action(b1) == artin_action(b2)


# -- exchange moves and the stabilization chain ---------------------------

def split_for_exchange(b: BraidWord) -> tuple[BraidWord, BraidWord]:
    """Find ``(beta1, beta2)`` with ``b = beta1 s beta2 s^-1``, ``s`` the top generator."""
    top = b.strands - 1
    if top < 1 or not b.letters or b.letters[-1] != -top:
        raise BadSplit("word does not end with the inverse top generator")
    hits = [k for k, v in enumerate(b.letters[:-1]) if abs(v) == top]
    if len(hits) != 1 or b.letters[hits[0]] != top:
        raise BadSplit("top generator must occur exactly once more, positively")
    k = hits[0]
    return BraidWord(b.strands, b.letters[:k]), BraidWord(b.strands, b.letters[k + 1:-1])


def exchange_move(b: BraidWord, split: tuple[BraidWord, BraidWord] | None = None) -> BraidWord:
    """``beta1 s beta2 s^-1  ->  beta1 s^-1 beta2 s``."""
    top = b.strands - 1
    if split is None:
        beta1, beta2 = split_for_exchange(b)
    else:
        beta1, beta2 = (_as_word(w, b.strands) for w in split)
        if any(abs(v) == top for v in beta1.letters + beta2.letters):
            raise BadSplit("split parts use the top generator")
        if beta1.letters + (top,) + beta2.letters + (-top,) != b.letters:
            raise BadSplit("split does not reproduce the word")
    return BraidWord(b.strands, beta1.letters + (-top,) + beta2.letters + (top,))


@dataclass(frozen=True)
class ChainStep:
    """One step of the exchange-move decomposition.

    ``kind`` is ``conj``, ``stab`` or ``destab``; ``word`` is the braid after
    the step.  For conjugations ``conjugator`` is ``g`` (the step sends ``w`` to
    ``g^-1 w g``) and ``literal`` is that product before any simplification.
    """

    kind: str
    word: BraidWord
    conjugator: BraidWord | None = None
    literal: BraidWord | None = None
    sign: int | None = None


def _positive_chain(b1: tuple, b2: tuple, s: int) -> tuple[BraidWord, list[ChainStep]]:
    sg = s - 1  # the exchanged generator of B_s
    top = s     # the generator added by the stabilization
    start = BraidWord(s, b1 + (sg,) + b2 + (-sg,))
    steps = []

    g1 = BraidWord(s, (-sg,))
    w1 = BraidWord(s, free_reduce((sg,) + b1 + (sg,) + b2 + (-sg, -sg)))
    steps.append(ChainStep("conj", w1, g1, conjugate(start, g1)))

    w2 = markov_stabilize(w1, +1)
    steps.append(ChainStep("stab", w2, sign=1))

    g3 = BraidWord(s + 1, (sg,) + b1 + (sg, top, sg, sg))
    literal = conjugate(w2, g3)
    w3 = BraidWord(s + 1, (-sg, -sg) + b2 + (sg,) + b1 + (sg, top))
    steps.append(ChainStep("conj", w3, g3, literal))

    w4 = markov_destabilize(w3)
    steps.append(ChainStep("destab", w4, sign=1))

    g5 = BraidWord(s, (-sg, -sg) + b2 + (sg,))
    w5 = BraidWord(s, b1 + (-sg,) + b2 + (sg,))
    steps.append(ChainStep("conj", w5, g5, conjugate(w4, g5)))
    return start, steps


def _mirror(b: BraidWord | None) -> BraidWord | None:
    return None if b is None else BraidWord(b.strands, tuple(-v for v in b.letters))


def birman_wrinkle_decompose(beta1: BraidWord, beta2: BraidWord, sign=1) -> list[ChainStep]:
    """Exchange move on ``beta1 s beta2 s^-1`` as conjugations plus one stabilization
    and one destabilization, both of the requested sign.

    ``beta1`` and ``beta2`` live in ``B_n``; the exchange happens in ``B_{n+1}``
    and the intermediate stabilization passes through ``B_{n+2}``.  Every
    conjugation is checked with :func:`braid_equal`.
    """
    sign = _sign(sign)
    if beta1.strands != beta2.strands:
        raise BadInput("beta1 and beta2 must have the same strand count")
    n = beta1.strands
    s = n + 1
    b1, b2 = beta1.letters, beta2.letters
    if sign > 0:
        start, steps = _positive_chain(b1, b2, s)
    else:
        m1 = tuple(-v for v in b1)
        m2 = tuple(-v for v in b2)
        mstart, msteps = _positive_chain(m1, m2, s)
        words = [_mirror(mstart)] + [_mirror(st.word) for st in msteps]
        steps = []
        for k in range(len(msteps) - 1, -1, -1):
            st = msteps[k]
            prev_word = words[k]  # the reversed step goes from words[k+1] to words[k]
            if st.kind == "conj":
                g = _mirror(st.conjugator).inverse()
                steps.append(ChainStep("conj", prev_word, g, conjugate(words[k + 1], g)))
            elif st.kind == "stab":
                steps.append(ChainStep("destab", markov_destabilize(words[k + 1]), sign=-1))
            else:
                steps.append(ChainStep("stab", markov_stabilize(words[k + 1], -1), sign=-1))
        start = words[-1]
        if start.letters != b1 + (n,) + b2 + (-n,):
            raise EqualityStepFailed("mirrored chain does not start at the exchange input")
    _verify_chain(start, steps)
    return steps


def _verify_chain(start: BraidWord, steps: list[ChainStep]) -> None:
    prev = start
    for k, st in enumerate(steps):
        if st.kind == "conj":
            if not braid_equal(conjugate(prev, st.conjugator), st.word):
                raise EqualityStepFailed(f"conjugation step {k} does not match")
        elif st.kind == "stab":
            if markov_stabilize(prev, st.sign) != st.word:
                raise EqualityStepFailed(f"stabilization step {k} does not match")
        elif markov_destabilize(prev) != st.word or prev.letters[-1] * st.sign < 0:
            raise EqualityStepFailed(f"destabilization step {k} does not match")
        prev = st.word


# -- grids and braids -------------------------------------------------------

def braid_from_grid(diagram: GridDiagram) -> BraidWord:
    """Braid whose closure is the link of ``diagram``.

    Right-to-left horizontal edges are cut and closed around the side; columns
    are then read from left to right.  A column moving a strand down over ``k``
    strands contributes ``k`` positive letters, moving up ``k`` negative ones.
    """
    n = diagram.n
    active = sorted(r for r in range(n) if diagram.horizontal_direction(r) < 0)
    strands = len(active)
    letters: list[int] = []
    for c in range(n):
        a, b = diagram.x[c], diagram.o[c]
        p = active.index(a)  # 0-based position
        between = sum(1 for r in active if min(a, b) < r < max(a, b))
        if b < a:
            letters.extend(p - j for j in range(between))
        else:
            letters.extend(-(p + 1 + j) for j in range(between))
        active.remove(a)
        active.append(b)
        active.sort()
    return BraidWord(strands, letters)


def grid_from_braid(b: BraidWord) -> GridDiagram:
    """Grid diagram with one column per letter whose braid reading is ``b``.

    Columns: ``L_1..L_n``, the letters, ``R_n..R_1``.  Row ``T_k`` (top block)
    carries the closing edge of strand ``k``; ``L_k`` drops it to its start row
    and ``R_k`` lifts it back from its final row.
    """
    n = b.strands
    order: list[str] = [f"s{k}" for k in range(n)] + [f"T{k}" for k in range(n)]
    columns: list[tuple[str, str]] = [(f"T{k}", f"s{k}") for k in range(n)]
    pos = [f"s{k}" for k in range(n)]  # row id at each strand position
    for idx, v in enumerate(b.letters):
        i = abs(v) - 1
        new = f"b{idx}"
        if v > 0:
            # strand at position i+1 goes down, just below the strand at position i
            moving = pos[i + 1]
            order.insert(order.index(pos[i]), new)
            pos[i + 1], pos[i] = pos[i], new
        else:
            moving = pos[i]
            order.insert(order.index(pos[i + 1]) + 1, new)
            pos[i], pos[i + 1] = pos[i + 1], new
        columns.append((moving, new))
    for k in range(n - 1, -1, -1):
        columns.append((pos[k], f"T{k}"))
    rank = {r: j for j, r in enumerate(order)}
    return GridDiagram(len(columns), tuple(rank[a] for a, _ in columns),
                       tuple(rank[o] for _, o in columns))


# -- Jones inequality harness ----------------------------------------------

@dataclass(frozen=True)
class JonesReport:
    m: int
    n: int
    c_min: int
    c: int
    lhs: int
    rhs: int
    holds: bool
    p_twice: int

    @property
    def p_integral(self) -> bool:
        return self.p_twice % 2 == 0

    @property
    def p(self):
        return self.p_twice // 2 if self.p_integral else self.p_twice / 2

    @property
    def p_at_least_m(self) -> bool:
        return self.p_twice >= 2 * self.m

    @property
    def ok(self) -> bool:
        return self.holds and self.p_integral and self.p_at_least_m

    def text(self) -> str:
        b = lambda v: "true" if v else "false"  # noqa: E731
        return (f"m={self.m} n={self.n} cmin={self.c_min} c={self.c} "
                f"lhs={self.lhs} rhs={self.rhs} holds={b(self.holds)} "
                f"p={self.p} integral={b(self.p_integral)} p_ge_m={b(self.p_at_least_m)}")


def jones_check(b_min: BraidWord, b: BraidWord) -> JonesReport:
    """Evaluate ``|c(b) - c(b_min)| <= n - m`` and ``p = (m + n + c(b) - c(b_min))/2``.

    Strand-minimality of ``b_min`` and equivalence of the closures are the
    caller's claims and are not checked.
    """
    m, n = b_min.strands, b.strands
    cm, c = exponent_sum(b_min), exponent_sum(b)
    return JonesReport(m, n, cm, c, abs(c - cm), n - m, abs(c - cm) <= n - m, m + n + c - cm)


def random_braid(rng: random.Random, strands: int, length: int) -> BraidWord:
    if strands < 2:
        return BraidWord(strands)
    return BraidWord(strands, [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)])


def markov_scramble(b: BraidWord, steps: int, rng: random.Random, max_strands: int = 8) -> BraidWord:
    """Random conjugations, stabilizations and destabilizations (closure preserved)."""
    for _ in range(steps):
        choice = rng.random()
        if choice < 0.35 and b.strands < max_strands:
            b = markov_stabilize(b, rng.choice((1, -1)))
        elif choice < 0.5:
            try:
                b = markov_destabilize(b)
            except NotDestabilizable:
                pass
        elif b.strands >= 2:
            g = random_braid(rng, b.strands, rng.randint(1, 3))
            b = BraidWord(b.strands, free_reduce(conjugate(b, g).letters))
    return b
