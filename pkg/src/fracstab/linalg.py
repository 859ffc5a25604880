"""Dense complex kernel: Hermitian eigensolver, PD test, Lyapunov solver.

The eigensolver is a cyclic Jacobi method that works on a single matrix
or on a stack of matrices at once (shape ``(..., n, n)``).  Stacked input
is what makes vertex sweeps cheap: every pivot rotation is applied to the
whole stack with a handful of array operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .errors import NoConvergence, NonFinite, NotHermitian, NotHurwitz, ShapeMismatch

# off-diagonal mass below this fraction of ||H||_F counts as converged
_JACOBI_RTOL = 1e-15


def as_matrix(x, *, square: bool = True, dtype=complex) -> np.ndarray:
    """Validate a dense (possibly stacked) matrix and return a copy."""
    a = np.array(x, dtype=dtype)
    if a.ndim < 2 or a.shape[-1] < 1 or a.shape[-2] < 1:
        raise ShapeMismatch(f"expected a matrix, got shape {a.shape}")
    if square and a.shape[-1] != a.shape[-2]:
        raise ShapeMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has NaN or Inf entries")
    return a


def hermitian_defect(h: np.ndarray) -> float:
    """Largest entrywise deviation from Hermitian symmetry."""
    return float(np.max(np.abs(h - np.conj(np.swapaxes(h, -1, -2)))))


def as_hermitian(x, tol: float = TOL.herm_tol) -> np.ndarray:
    """Validate ``x`` as Hermitian and return ``(x + x*) / 2``.

    The tolerance is relative to ``max(1, max|x_ij|)``.
    """
    h = as_matrix(x)
    scale = max(1.0, float(np.max(np.abs(h))))
    if hermitian_defect(h) > tol * scale:
        raise NotHermitian(f"matrix is not Hermitian (defect {hermitian_defect(h):.3e})")
    return symmetrize(h)


def symmetrize(h: np.ndarray) -> np.ndarray:
    return 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))


@dataclass(frozen=True)
class EigResult:
    """Ascending eigenvalues with eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def max(self):
        return self.eigenvalues[..., -1]

    @property
    def min(self):
        return self.eigenvalues[..., 0]

    @property
    def top_vector(self) -> np.ndarray:
        return self.eigenvectors[..., :, -1]


def _rotate(h, v, p, q, scale):
    b = h[..., p, q]
    absb = np.abs(b)
    # skip pivots that are already zero at working precision
    active = absb > 1e-300 + 1e-17 * scale
    if not np.any(active):
        h[..., p, q] = 0.0
        h[..., q, p] = 0.0
        return
    safe = np.where(active, absb, 1.0)
    phase = np.where(active, b / safe, 1.0)
    a = h[..., p, p].real
    d = h[..., q, q].real
    theta = (d - a) / (2.0 * safe)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = sign / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    c_ = c[..., None]
    sp = (s * phase)[..., None]
    spc = (s * np.conj(phase))[..., None]

    hp = h[..., :, p].copy()
    hq = h[..., :, q]
    h[..., :, p] = c_ * hp - spc * hq
    h[..., :, q] = sp * hp + c_ * hq
    rp = h[..., p, :].copy()
    rq = h[..., q, :]
    h[..., p, :] = c_ * rp - sp * rq
    h[..., q, :] = spc * rp + c_ * rq
    h[..., p, q] = 0.0
    h[..., q, p] = 0.0
    h[..., p, p] = h[..., p, p].real
    h[..., q, q] = h[..., q, q].real

    vp = v[..., :, p].copy()
    vq = v[..., :, q]
    v[..., :, p] = c_ * vp - spc * vq
    v[..., :, q] = sp * vp + c_ * vq


def _jacobi(h: np.ndarray, max_sweeps: int) -> EigResult:
    n = h.shape[-1]
    v = np.broadcast_to(np.eye(n, dtype=complex), h.shape).copy()
    fro = np.sqrt(np.sum(np.abs(h) ** 2, axis=(-2, -1)))
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.abs(h[..., iu[0], iu[1]]) ** 2, axis=-1))
        if np.all(off <= _JACOBI_RTOL * fro):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(h, v, p, q, fro)
    else:
        off = np.sqrt(2.0 * np.sum(np.abs(h[..., iu[0], iu[1]]) ** 2, axis=-1))
        if not np.all(off <= 1e-12 * (1.0 + fro)):
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.real(np.diagonal(h, axis1=-2, axis2=-1)).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return EigResult(w, v)


def hermitian_eig(h, *, max_sweeps: int = TOL.jacobi_max_sweeps, check: bool = True) -> EigResult:
    """Full eigendecomposition of a Hermitian matrix or a stack of them.

    Eigenvalues come back ascending; the unit eigenvectors are the columns
    of ``eigenvectors``.  Raises NonFinite on NaN/Inf input and
    NoConvergence if the sweep cap is hit.
    """
    a = as_hermitian(h) if check else symmetrize(np.array(h, dtype=complex))
    if a.shape[-1] == 1:
        return EigResult(a[..., 0].real.copy(), np.ones_like(a))
    return _jacobi(a, max_sweeps)


def lambda_max(h, *, check: bool = True):
    """Largest eigenvalue (array for stacked input)."""
    return hermitian_eig(h, check=check).max


@dataclass(frozen=True)
class PDReport:
    positive_definite: bool
    min_eigenvalue: float
    margin: float

    def __bool__(self) -> bool:
        return self.positive_definite


def is_positive_definite(h, margin: float = 0.0) -> PDReport:
    """True iff the smallest eigenvalue of ``h`` exceeds ``margin``."""
    if margin < 0:
        raise ValueError("margin must be non-negative")
    lmin = float(hermitian_eig(h).min)
    return PDReport(lmin > margin, lmin, margin)


def lyapunov_residual(m: np.ndarray, p: np.ndarray, q: np.ndarray) -> float:
    return float(np.linalg.norm(m.conj().T @ p + p @ m + q))


def lyapunov_solve(m, q) -> np.ndarray:
    """Solve ``M* P + P M = -Q`` for Hermitian ``P``.

    The equation is vectorized into an ``n^2 x n^2`` linear system, which
    is fine for the small dimensions this package targets.  ``M`` must be
    Hurwitz; otherwise NotHurwitz is raised since no positive definite
    solution exists.
    """
    m = as_matrix(m)
    q = as_hermitian(q)
    if m.shape != q.shape:
        raise ShapeMismatch(f"M is {m.shape} but Q is {q.shape}")
    n = m.shape[0]
    worst = float(np.max(np.linalg.eigvals(m).real))
    if worst >= -TOL.hurwitz_tol:
        raise NotHurwitz(f"M has an eigenvalue with real part {worst:.3e}")

    eye = np.eye(n)
    # column-major vec: vec(M* P) = (I kron M*) vec P, vec(P M) = (M^T kron I) vec P
    k = np.kron(eye, m.conj().T) + np.kron(m.T, eye)
    rhs = -q.reshape(-1, order="F")
    x = np.linalg.solve(k, rhs)
    p = symmetrize(x.reshape(n, n, order="F"))

    bound = TOL.lyap_residual * (1.0 + np.linalg.norm(q))
    res = lyapunov_residual(m, p, q)
    if res > bound:
        # one round of iterative refinement
        r = -(m.conj().T @ p + p @ m + q)
        dx = np.linalg.solve(k, r.reshape(-1, order="F"))
        p = symmetrize(p + dx.reshape(n, n, order="F"))
        res = lyapunov_residual(m, p, q)
        if res > bound:
            raise NoConvergence(f"Lyapunov residual {res:.3e} exceeds {bound:.3e}")
    return p
