"""Brute-force cross-checks: grid maximisation and Monte Carlo falsification."""

import numpy as np

from fracstab import (
    GridSpec,
    IntervalMatrix,
    check_vertex_lemma,
    find_common_p,
    mc_falsify,
    random_lemma_instance,
)

# The top eigenvalue of the Lyapunov form is convex in A, so a dense grid
# never beats the vertices.
rng = np.random.default_rng(11)
worst = max(
    (lambda c: c.grid_value - c.vertex_value)(check_vertex_lemma(*random_lemma_instance(rng), GridSpec(5)))
    for _ in range(50)
)
print(f"50 random instances: max(grid - vertex) = {worst:.2e}")

# A certificate implies every member is stable; sampling cannot refute it.
box = IntervalMatrix(np.array([[-3.0, 0.5], [-1.0, -2.0]]), np.array([[-2.0, 1.0], [0.0, -1.5]]))
res = find_common_p(box, 1.3)
fals = mc_falsify(box, 1.3, samples=20_000, seed=0)
print(f"certified: {res.feasible}; falsifier found a counterexample: {fals.falsified} "
      f"after {fals.samples_checked} matrices (worst margin {fals.worst_margin:+.4f} rad)")

# For alpha near 2 the sector is tiny and the same box is no longer stable.
fals = mc_falsify(box, 1.9, samples=20_000, seed=0)
print(f"alpha=1.9: counterexample from {fals.source} #{fals.index}:", fals.counterexample.tolist())
