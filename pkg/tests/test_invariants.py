import random
from collections import Counter

import pytest
from hypothesis import given, settings

from gridforge.braids import braid, grid_from_braid
from gridforge.errors import IllegalMove, SameComponent
from gridforge.gridcore import disjoint_union, rotate_cw, trivial_diagram
from gridforge.invariants import (
    check_tb_duality,
    crossings,
    cusp_count,
    interleaved_exchange,
    linking_number,
    tb_by_linking,
    tb_pair,
    thurston_bennequin,
    writhe,
)
from gridforge.moves import apply_move, classify_stabilization, enumerate_moves

from .oracles import all_diagrams, crossing_signs
from .strategies import diagrams, random_knot, unknots


def test_t2_values():
    t = trivial_diagram()
    assert crossings(t) == []
    assert writhe(t) == 0
    assert cusp_count(t) == 2
    assert tb_pair(t) == (-1, -1)
    assert tb_by_linking(t) == -1


def test_crossing_signs_match_oracle_up_to_n4():
    for n in (2, 3, 4):
        for d in all_diagrams(n):
            assert Counter(c.sign for c in crossings(d)) == Counter(crossing_signs(d))


@given(diagrams())
def test_crossing_signs_match_oracle(d):
    assert Counter(c.sign for c in crossings(d)) == Counter(crossing_signs(d))


@given(diagrams())
def test_rotation_negates_writhe(d):
    assert writhe(rotate_cw(d)) == -writhe(d)


@given(diagrams())
def test_cusps_split_between_diagram_and_rotation(d):
    assert cusp_count(d) % 2 == 0
    assert cusp_count(d) + cusp_count(rotate_cw(d)) == 2 * d.n


@given(diagrams())
def test_tb_duality(d):
    assert check_tb_duality(d)
    tb, tbbar = tb_pair(d)
    assert tb + tbbar == -d.n


@given(diagrams(max_n=7))
@settings(max_examples=60)
def test_tb_is_linking_with_pushoff(d):
    assert tb_by_linking(d) == thurston_bennequin(d)


@given(diagrams(max_n=6))
@settings(max_examples=60)
def test_tb_under_moves(d):
    tb = thurston_bennequin(d)
    for m in enumerate_moves(d):
        after = thurston_bennequin(apply_move(d, m))
        if m.is_flat:
            assert after == tb
        else:
            kind, _ = classify_stabilization(d, m)
            drop = 0 if kind == "I" else 1
            assert after == (tb - drop if m.is_stabilization else tb + drop)


def test_hopf_and_split_linking():
    hopf = grid_from_braid(braid(2, 1, 1))
    assert hopf.num_components == 2
    assert linking_number(hopf, 0, 1) == 1
    assert linking_number(grid_from_braid(braid(2, -1, -1)), 0, 1) == -1
    split = disjoint_union(trivial_diagram(), trivial_diagram())
    assert linking_number(split, 0, 1) == 0


def test_linking_rejects_same_or_missing_component():
    hopf = grid_from_braid(braid(2, 1, 1))
    with pytest.raises(SameComponent):
        linking_number(hopf, 1, 1)
    with pytest.raises(SameComponent):
        linking_number(hopf, 0, 2)


def test_linking_number_is_symmetric():
    rng = random.Random(4)
    for _ in range(50):
        d = grid_from_braid(braid(3, *[rng.choice([1, -1, 2, -2]) for _ in range(6)]))
        k = d.num_components
        for a in range(k):
            for b in range(a + 1, k):
                assert linking_number(d, a, b) == linking_number(d, b, a)


def _interleaved_sites(d):
    for axis in ("col", "row"):
        for i in range(d.n - 1):
            try:
                yield axis, i, interleaved_exchange(d, axis, i)
            except IllegalMove:
                continue


def test_interleaved_exchange_shifts_linking_by_one():
    rng = random.Random(9)
    seen = 0
    while seen < 30:
        d = grid_from_braid(braid(3, *[rng.choice([1, -1, 2, -2]) for _ in range(5)]))
        if d.num_components < 2:
            continue
        comp = d.component_of_column
        for axis, i, e in _interleaved_sites(d):
            if axis == "col":
                a, b = comp[i], comp[i + 1]
            else:
                a, b = comp[d.xcol[i]], comp[d.xcol[i + 1]]
            if a == b or e.num_components != d.num_components:
                continue
            assert abs(linking_number(e, a, b) - linking_number(d, a, b)) == 1
            seen += 1


@given(unknots(max_stabs=6, max_flats=30))
@settings(max_examples=60)
def test_unknot_tb_at_most_minus_one(d):
    tb, tbbar = tb_pair(d)
    assert tb <= -1 and tbbar <= -1


def test_random_knot_tb_matches_linking():
    rng = random.Random(21)
    for _ in range(40):
        d = random_knot(rng, rng.randint(2, 9))
        assert tb_by_linking(d) == thurston_bennequin(d)
