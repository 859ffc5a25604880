"""Searching for one certificate that covers a whole box of matrices."""

import numpy as np

from fracstab import IntervalMatrix, SolverConfig, find_common_p, verify_certificate

# A strongly non-normal center: the identity is not a certificate here,
# so the solver has to rotate and stretch P.
center = np.array([[-1.0, 5.0, 0.0], [-0.3, -1.0, 0.5], [0.0, -0.5, -1.5]])
width = np.array([[0.1, 0.3, 0.0], [0.05, 0.1, 0.0], [0.0, 0.1, 0.1]])
box = IntervalMatrix(center - width, center + width)
alpha = 1.3

res = find_common_p(box, alpha, SolverConfig(seed=0))
print(f"verdict: {res.verdict.value} after {res.iterations} iterations (phase: {res.phase})")
if res.feasible:
    print("certificate P =")
    print(np.array2string(res.certificate, precision=4))
    check = verify_certificate(res.certificate, box, alpha)
    for stage in check.stages:
        print(f"  {stage.name:<18} passed={stage.passed}  {stage.detail}")

# Widen the box until one vertex leaves the stability sector.
wide = IntervalMatrix(center - 4 * width, center + 4 * width)
res = find_common_p(wide, alpha)
print(f"\nwidened box: {res.verdict.value}", end="")
if res.witness is not None:
    print(f", unstable vertex #{res.witness.index} with margin {res.witness.arg_margin:+.4f} rad")
