"""Stability of a single matrix for several fractional orders.

A matrix whose eigenvalues sit at angle 3pi/4 is stable while the
sector half-angle alpha pi / 2 stays below 3pi/4, i.e. for alpha < 1.5.
"""

import numpy as np

from fracstab import point_lyapunov_certificate, point_stability, verify_point_certificate

a = np.array([[-1.0, 1.0], [-1.0, -1.0]])  # eigenvalues -1 +/- 1j
# alpha = 1.5 puts the spectrum exactly on the sector boundary, which counts as unstable.
for alpha in (1.0, 1.25, 1.49, 1.5, 1.75):
    v = point_stability(a, alpha)
    line = f"alpha={alpha:<5} stable={v.stable!s:<5} margin={v.min_arg_margin:+.4f} rad"
    if v.stable:
        p = point_lyapunov_certificate(a, alpha)
        line += f"  certificate verified: {verify_point_certificate(p, a, alpha)}"
    print(line)
