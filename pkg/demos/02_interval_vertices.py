"""Interval matrices and their vertex sets."""

import numpy as np

from fracstab import IntervalMatrix, contains, sample, vertices

box = IntervalMatrix(np.array([[-2.0, 0.0], [1.0, -3.0]]),
                     np.array([[-1.0, 0.0], [1.5, -3.0]]))
print("free entries (row, col):", box.free_positions)

vs = vertices(box)
print(f"{vs.cardinality} vertices; the first free entry is the most significant bit")
for k in range(vs.cardinality):
    print(f"  vertex {k} (bits {vs.bits(k).astype(int).tolist()}):", vs[k].tolist())

draws = sample(box, 5, seed=3)
print("\nfive uniform draws, all inside the box:", all(contains(box, d) for d in draws))
