"""Walk through the Legendrian bookkeeping of a small grid diagram.

Run with ``python demos/invariants_and_duality.py``.
"""

from gridforge import (
    apply_move,
    classify_stabilization,
    enumerate_moves,
    render_ascii,
    rotate_cw,
    thurston_bennequin,
    trivial_diagram,
)
from gridforge.invariants import cusp_count, tb_by_linking, writhe

t2 = trivial_diagram()
print(render_ascii(t2))
print(f"tb={thurston_bennequin(t2)} tbbar={thurston_bennequin(rotate_cw(t2))} c={t2.n}")

# Each of the four corner dispositions at a vertex gives a different oriented type.
for m in enumerate_moves(t2):
    if not m.is_stabilization or m.placement[:2] != (0, 1):
        continue
    d = apply_move(t2, m)
    kind, side = classify_stabilization(t2, m)
    tb, tbbar = thurston_bennequin(d), thurston_bennequin(rotate_cw(d))
    print(f"{m.text():14} type {kind}{side}  tb={tb:2} tbbar={tbbar:2}  sum={tb + tbbar} = -{d.n}")

d = apply_move(t2, enumerate_moves(t2)[-1])
print()
print(render_ascii(d))
print(f"writhe={writhe(d)} cusps={cusp_count(d)} tb via push-off={tb_by_linking(d)}")
