"""Braids, their grid closures, and an exchange move split into Markov moves."""

from gridforge.braids import (
    birman_wrinkle_decompose,
    braid,
    braid_from_grid,
    exchange_move,
    exponent_sum,
    grid_from_braid,
    jones_check,
    markov_stabilize,
)
from gridforge.gridcore import render_ascii
from gridforge.invariants import writhe

b = braid(3, 1, -2, 1)
g = grid_from_braid(b)
print(render_ascii(g))
print(f"exponent sum {exponent_sum(b)}, writhe {writhe(g)}, read back {braid_from_grid(g).letters}")

start = braid(3, 1, 2, 1, -2)
print("exchange:", start.letters, "->", exchange_move(start).letters)
for sign in (1, -1):
    print(f"sign {sign:+d}")
    for step in birman_wrinkle_decompose(braid(2, 1), braid(2, 1), sign):
        print(f"  {step.kind:6} B_{step.word.strands}  {step.word.letters}")

trefoil = braid(2, 1, 1, 1)
print(jones_check(trefoil, markov_stabilize(markov_stabilize(trefoil, 1), -1)).text())
