"""Elementary and staircase bypasses, and end shifts of a Θ-diagram."""

from gridforge import classify_stabilization, scramble, trivial_diagram
from gridforge.errors import GridforgeError
from gridforge.moves import destabilizations
from gridforge.paths import (
    bypass_weight,
    check_bypass,
    elementary_bypass,
    end_shift,
    serialize_theta,
    splice,
    staircase_bypass,
    theta_from_bypass,
)

d = scramble(trivial_diagram(), 3, 10, 4)
for m in destabilizations(d):
    alpha, beta = elementary_bypass(d, m)
    kind = classify_stabilization(d, m)[0]
    print(f"{m.text():12} type {kind:2} {check_bypass(d, alpha, beta).text()}")

big, alpha, beta = staircase_bypass(trivial_diagram(), 0, 0, 3)
print(f"staircase: {len(beta)} vertices, weight {bypass_weight(alpha, beta)}, "
      f"splice back to n={splice(big, beta, alpha).n}")

m = next(m for m in destabilizations(d) if classify_stabilization(d, m)[0] == "II")
theta = theta_from_bypass(d, *elementary_bypass(d, m))
print(serialize_theta(theta))
for rule in range(1, 7):
    try:
        shifted = end_shift(theta, rule)
    except GridforgeError as exc:
        print(f"rule {rule}: {type(exc).__name__}")
        continue
    print(f"rule {rule}: alpha has {len(shifted.alpha)} vertices, weight {bypass_weight(shifted.alpha, shifted.beta)}")
