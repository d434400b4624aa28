import random

import pytest
from hypothesis import given, strategies as st

from gridforge.braids import (
    BraidWord,
    birman_wrinkle_decompose,
    braid,
    braid_equal,
    braid_from_grid,
    closure_components,
    conjugate,
    exchange_move,
    exponent_sum,
    jones_check,
    markov_destabilize,
    markov_scramble,
    markov_stabilize,
    parse_braid,
    random_braid,
    self_linking,
    serialize_braid,
    split_for_exchange,
)
from gridforge.errors import BadInput, BadSplit, NotDestabilizable, ParseError, StrandMismatch
from gridforge.gridcore import trivial_diagram
from gridforge.invariants import writhe
from gridforge.moves import apply_move, classify_stabilization, enumerate_moves
from gridforge.braids import grid_from_braid
from gridforge.simplify import scramble

from .oracles import burau_matrix, component_count


@st.composite
def braids(draw, max_strands=6, max_len=12):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        return BraidWord(1)
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len))
    return BraidWord(n, letters)


def test_exponent_sum_examples():
    assert exponent_sum(braid(3, -2, 1, -2, 1)) == 0
    assert exponent_sum(braid(2, 1, 1, 1)) == 3
    assert self_linking(braid(2, 1, 1, 1)) == 1
    assert self_linking(braid(2, -1, -1, -1)) == -5


@given(braids(), braids())
def test_exponent_sum_is_a_homomorphism(a, b):
    if a.strands == b.strands:
        assert exponent_sum(a * b) == exponent_sum(a) + exponent_sum(b)
    else:
        with pytest.raises(StrandMismatch):
            a * b


def test_bad_letters():
    with pytest.raises(BadInput):
        braid(2, 2)
    with pytest.raises(BadInput):
        braid(3, 0)
    with pytest.raises(BadInput):
        BraidWord(0)


def test_text_round_trip_and_errors():
    b = braid(4, 1, -3, 2)
    assert parse_braid(serialize_braid(b)) == b
    assert parse_braid("n=1") == BraidWord(1)
    for bad in ("1 2", "n=x\n1", "n=3\n1 a", "n=3\n1\n2"):
        with pytest.raises(ParseError):
            parse_braid(bad)


def test_markov_moves():
    t = braid(2, 1, 1, 1)
    up = markov_stabilize(t, +1)
    assert up == braid(3, 1, 1, 1, 2)
    assert markov_destabilize(up) == t
    assert exponent_sum(up) - up.strands == exponent_sum(t) - t.strands
    down = markov_stabilize(t, -1)
    assert exponent_sum(down) + down.strands == exponent_sum(t) + t.strands
    with pytest.raises(NotDestabilizable):
        markov_destabilize(braid(3, 2, 1, 2))
    with pytest.raises(NotDestabilizable):
        markov_destabilize(braid(3, 1))
    with pytest.raises(NotDestabilizable):
        markov_destabilize(BraidWord(1))


@given(braids(), braids(max_len=4))
def test_conjugation_preserves_c_and_n(b, g):
    if g.strands != b.strands:
        return
    c = conjugate(b, g)
    assert c.strands == b.strands and exponent_sum(c) == exponent_sum(b)


def test_exchange_move_example():
    b = braid(3, 1, 2, 1, -2)
    assert split_for_exchange(b) == (braid(3, 1), braid(3, 1))
    e = exchange_move(b)
    assert e == braid(3, 1, -2, 1, 2)
    assert exponent_sum(e) == exponent_sum(b) and e.strands == b.strands
    assert exchange_move(b, (braid(3, 1), braid(3, 1))) == e


@pytest.mark.parametrize("word", [(1, 2, 1, 2), (1, -2, 1, -2), (1, -2), (1, 2, 2, -2)])
def test_exchange_rejects_bad_splits(word):
    with pytest.raises(BadSplit):
        exchange_move(BraidWord(3, word))


def test_exchange_rejects_wrong_explicit_split():
    with pytest.raises(BadSplit):
        exchange_move(braid(3, 1, 2, 1, -2), (braid(3, -1), braid(3, 1)))


def test_braid_equal_examples():
    assert braid_equal(braid(3, 1, 2, 1), braid(3, 2, 1, 2))
    assert braid_equal(braid(2, 1, -1), braid(2))
    assert not braid_equal(braid(2, 1), braid(2, -1))
    assert braid_equal(braid(4, 1, 3), braid(4, 3, 1))
    assert not braid_equal(braid(3, 1, 2), braid(3, 2, 1))
    with pytest.raises(StrandMismatch):
        braid_equal(braid(2, 1), braid(3, 1))


def _rewrite(rng, letters, n, steps):
    w = list(letters)
    for _ in range(steps):
        k = rng.randint(0, len(w))
        op = rng.random()
        if op < 0.3:
            v = rng.choice([1, -1]) * rng.randint(1, n - 1)
            w[k:k] = [v, -v]
        elif op < 0.6 and k + 2 < len(w) + 1 and len(w) >= 3:
            k = min(k, len(w) - 3)
            a, b, c = w[k:k + 3]
            if a == c and a * b > 0 and abs(abs(a) - abs(b)) == 1:
                w[k:k + 3] = [b, a, b]
        elif len(w) >= 2:
            k = min(k, len(w) - 2)
            a, b = w[k:k + 2]
            if abs(abs(a) - abs(b)) >= 2:
                w[k:k + 2] = [b, a]
            elif a == -b:
                del w[k:k + 2]
    return w


def test_braid_equal_survives_random_rewriting():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(2, 6)
        b = random_braid(rng, n, rng.randint(0, 10))
        c = BraidWord(n, _rewrite(rng, b.letters, n, 30))
        assert braid_equal(b, c) and braid_equal(c, b)
        assert burau_matrix(b.letters, n) == burau_matrix(c.letters, n)


def test_braid_equal_agrees_with_burau():
    rng = random.Random(23)
    differ = 0
    for _ in range(300):
        n = rng.randint(2, 4)
        a = random_braid(rng, n, rng.randint(0, 5))
        b = random_braid(rng, n, rng.randint(0, 5))
        same = braid_equal(a, b)
        if same:
            assert burau_matrix(a.letters, n) == burau_matrix(b.letters, n)
        if burau_matrix(a.letters, n) != burau_matrix(b.letters, n):
            assert not same
            differ += 1
    assert differ > 100


@pytest.mark.parametrize("sign", [1, -1])
def test_birman_wrinkle_example(sign):
    steps = birman_wrinkle_decompose(braid(2, 1), braid(2, 1), sign)
    assert len(steps) == 5
    assert [s.kind for s in steps].count("stab") == 1
    assert [s.kind for s in steps].count("destab") == 1
    assert all(s.sign == sign for s in steps if s.kind != "conj")
    assert braid_equal(steps[-1].word, braid(3, 1, -2, 1, 2))


@given(st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_birman_wrinkle_random(seed, sign):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    b1 = random_braid(rng, n, rng.randint(0, 6))
    b2 = random_braid(rng, n, rng.randint(0, 6))
    steps = birman_wrinkle_decompose(b1, b2, sign)
    start = BraidWord(n + 1, b1.letters + (n,) + b2.letters + (-n,))
    prev = start
    for s in steps:
        if s.kind == "conj":
            assert braid_equal(conjugate(prev, s.conjugator), s.word)
        elif s.kind == "stab":
            assert s.word == markov_stabilize(prev, sign)
        else:
            assert markov_destabilize(prev) == s.word
        prev = s.word
    assert braid_equal(prev, exchange_move(start))


def test_t2_is_the_trivial_braid():
    assert braid_from_grid(trivial_diagram()) == BraidWord(1)
    assert grid_from_braid(BraidWord(1)) == trivial_diagram()


def test_sigma1_grid():
    g = grid_from_braid(braid(2, 1))
    assert writhe(g) == 1
    assert g.num_components == 1


@given(braids(max_strands=5, max_len=12))
def test_round_trip_and_writhe(b):
    g = grid_from_braid(b)
    assert braid_from_grid(g) == b
    assert writhe(g) == exponent_sum(b)
    assert g.num_components == closure_components(b) == component_count(g)


def test_grid_stabilizations_and_braid_bookkeeping():
    expected = {("I", "←"): (1, 1), ("II", "←"): (-1, 1)}
    for seed in range(20):
        d = scramble(trivial_diagram(), 3, 10, seed)
        b = braid_from_grid(d)
        for m in enumerate_moves(d):
            if not m.is_stabilization:
                continue
            tag = classify_stabilization(d, m)
            after = braid_from_grid(apply_move(d, m))
            if tag[1] == "→":
                assert after == b
            else:
                assert (exponent_sum(after) - exponent_sum(b), after.strands - b.strands) == expected[tag]


def test_jones_examples():
    t = braid(2, 1, 1, 1)
    r = jones_check(t, markov_stabilize(t, +1))
    assert (r.lhs, r.rhs, r.holds, r.p) == (1, 1, True, 3)
    assert r.text() == "m=2 n=3 cmin=3 c=4 lhs=1 rhs=1 holds=true p=3 integral=true p_ge_m=true"
    same = jones_check(t, t)
    assert same.lhs == 0 and same.rhs == 0 and same.p == same.m == 2


def test_jones_along_markov_scrambles():
    rng = random.Random(8)
    t = braid(2, 1, 1, 1)
    for _ in range(100):
        b = markov_scramble(t, rng.randint(1, 30), rng)
        assert jones_check(t, b).ok
