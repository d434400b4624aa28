"""Scramble the trivial diagram and let the monotone search undo it."""

import sys

from gridforge import render_ascii, scramble, simplify_unknot, trivial_diagram
from gridforge.braids import braid, grid_from_braid

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
messy = scramble(trivial_diagram(), 6, 40, seed)
print(render_ascii(messy))

out = simplify_unknot(messy)
print(f"{len(out.steps)} moves, complexities {out.complexities()[0]} -> {out.end.n}")
print("nodes", out.nodes, "depth", out.depth)

# A trefoil grid gets stuck: its tb is too large for an unknot.
stuck = simplify_unknot(grid_from_braid(braid(2, 1, 1, 1)))
print("trefoil:", stuck.text().splitlines()[-1], "at", stuck.partial.end.n, "columns")
