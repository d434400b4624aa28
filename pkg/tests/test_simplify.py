import random

import pytest
from hypothesis import given, settings

from gridforge.braids import braid, grid_from_braid
from gridforge.gridcore import trivial_diagram
from gridforge.invariants import tb_pair, thurston_bennequin
from gridforge.moves import MoveKind, apply_move, apply_moves, classify_stabilization, cyclic, enumerate_moves
from gridforge.simplify import (
    Exhausted,
    MoveSequence,
    canonical_form,
    canonical_key,
    find_elementary_simplification,
    scramble,
    scramble_with_moves,
    shift_moves,
    simplify_unknot,
    two_type_interleave_check,
)

from .strategies import diagrams, unknots

T2 = trivial_diagram()


def _stab_of_type(d, kind):
    return next(m for m in enumerate_moves(d)
                if m.is_stabilization and classify_stabilization(d, m)[0] == kind)


@given(diagrams())
def test_canonical_form_absorbs_cyclic_moves(d):
    cf = canonical_form(d)
    for direction in "LRUD":
        assert canonical_form(apply_move(d, cyclic(direction))).diagram == cf.diagram
    assert canonical_form(cf.diagram).diagram == cf.diagram


@given(diagrams())
def test_canonical_witness_reproduces_the_form(d):
    cf = canonical_form(d)
    row_shift, col_shift = cf.witness
    assert apply_moves(d, shift_moves(d.n, row_shift, col_shift)) == cf.diagram


def test_canonical_forms_differ_across_commutations():
    rng = random.Random(2)
    differing = total = 0
    for _ in range(50):
        d = scramble(T2, 4, 20, rng.random())
        for m in enumerate_moves(d):
            if m.kind is MoveKind.COMMUTATION:
                total += 1
                differing += canonical_key(canonical_form(apply_move(d, m)).diagram) != \
                    canonical_key(canonical_form(d).diagram)
    assert total > 0 and differing >= 0.9 * total


def test_single_stabilization_is_undone_in_one_step():
    for m in enumerate_moves(T2):
        if m.is_stabilization:
            d = apply_move(T2, m)
            found = find_elementary_simplification(d)
            assert isinstance(found, MoveSequence)
            assert found.steps[-1].kind is MoveKind.DESTABILIZATION
            assert all(s.kind is MoveKind.CYCLIC for s in found.steps[:-1])
            assert found.end.n == 2 and found.replay() == found.end


def test_t2_is_exhausted():
    found = find_elementary_simplification(T2)
    assert isinstance(found, Exhausted) and found.complete
    assert simplify_unknot(canonical_form(T2).diagram).steps == ()


def test_type_filter():
    d = apply_move(T2, _stab_of_type(T2, "I"))
    assert find_elementary_simplification(d, "I").ok
    assert find_elementary_simplification(d, "II").ok is False
    with pytest.raises(ValueError):
        find_elementary_simplification(d, "III")


def test_trefoil_is_not_simplified_to_t2():
    trefoil = grid_from_braid(braid(2, 1, 1, 1))
    out = simplify_unknot(trefoil)
    assert isinstance(out, Exhausted) and out.complete
    assert out.partial.end.n == 5
    assert thurston_bennequin(out.partial.end) == 1  # above the unknot bound -1


def test_budget_is_respected():
    d = scramble(T2, 6, 40, 3)
    out = find_elementary_simplification(d, "I", budget=5)
    if not out.ok:
        assert out.nodes <= 5 and not out.complete


def test_scramble_contract():
    assert scramble(T2, 0, 0, 1) == T2
    d = scramble(T2, 5, 30, 42)
    assert d.n == 7
    assert scramble(T2, 5, 30, 42) == d
    d2, moves = scramble_with_moves(T2, 5, 30, 42)
    assert d2 == d and apply_moves(T2, moves) == d and len(moves) == 35


@given(unknots(max_stabs=5, max_flats=30))
@settings(max_examples=40, deadline=None)
def test_simplification_is_monotone_and_keeps_tb_books(d):
    out = simplify_unknot(d)
    assert out.ok and out.end == canonical_form(T2).diagram
    assert out.replay() == out.end
    diagrams_ = out.diagrams()
    sizes = [g.n for g in diagrams_]
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    for before, m, after in zip(diagrams_, out.steps, diagrams_[1:]):
        tb0, tb1 = thurston_bennequin(before), thurston_bennequin(after)
        if m.is_flat:
            assert tb1 == tb0
        else:
            kind, _ = classify_stabilization(before, m)
            assert tb1 == tb0 + (1 if kind == "II" else 0)
        a, b = tb_pair(after)
        assert a + b == -after.n and a + b <= -2


def test_search_is_deterministic():
    d = scramble(T2, 5, 30, 11)
    first = simplify_unknot(d)
    assert simplify_unknot(d) == first
    assert first.text() == simplify_unknot(d).text()


def test_trailer_format():
    d = scramble(T2, 2, 10, 5)
    text = simplify_unknot(d).text().splitlines()
    assert text[-1].startswith("nodes=") and text[-1].endswith("result=ok")
    assert find_elementary_simplification(T2).text().endswith("result=exhausted")


def test_two_type_interleave_on_explicit_diagram():
    d = apply_move(T2, _stab_of_type(T2, "I"))
    d = apply_move(d, _stab_of_type(d, "II"))
    assert d.n == 4
    report = two_type_interleave_check(d, 1, 1)
    assert report.premise and report.forward and report.backward
    assert report.legendrian_clause == "unchecked"
    assert report.text() == "k=1 l=1 premise=true forward=true backward=true legendrian=unchecked"


def test_two_type_interleave_vacuous():
    assert two_type_interleave_check(T2, 0, 3).passed


def test_two_type_interleave_on_doubly_stabilized_unknots():
    rng = random.Random(31)
    for _ in range(15):
        d = apply_move(T2, _stab_of_type(T2, "I"))
        d = apply_move(d, rng.choice([m for m in enumerate_moves(d)
                                       if m.is_stabilization and classify_stabilization(d, m)[0] == "II"]))
        d = scramble(d, 0, 15, rng.random())
        report = two_type_interleave_check(d, 1, 1)
        assert report.passed


def test_no_node_is_expanded_twice():
    # the search raises AssertionError if a canonical node is expanded twice
    for seed in range(20):
        find_elementary_simplification(scramble(T2, 6, 40, seed))
