"""Fractional-order stability: rotation, Lyapunov form, vertex maximum.

For ``d^a x / dt^a = A x`` with ``1 <= a < 2`` the Lyapunov form of a
Hermitian ``P`` is::

    L(P, A) = beta P A + conj(beta) A^T P,    beta = exp(1j (1 - a) pi / 2)

and ``L < 0`` for some ``P > 0`` exactly when every eigenvalue of ``A``
satisfies ``|arg lam| > a pi / 2``.  Since ``L`` is linear in ``A`` and
the top eigenvalue is convex, the worst case of ``lambda_max(L)`` over a
box of matrices sits at one of its vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import TOL, VERTEX_CAP
from .errors import (
    NotHurwitz,
    NotPointStable,
    NotPositiveDefinite,
    OrderOutOfRange,
    ShapeMismatch,
    SpectrumFailure,
)
from .interval import IntervalMatrix, vertices


@dataclass(frozen=True)
class FractionalOrder:
    alpha: float
    beta: complex

    @property
    def sector(self) -> float:
        """Half-angle ``alpha pi / 2`` of the instability sector."""
        return self.alpha * math.pi / 2


def beta(alpha: float) -> FractionalOrder:
    """Order ``alpha`` together with its unit rotation ``exp(j(1-alpha)pi/2)``."""
    alpha = float(alpha)
    if not (1.0 <= alpha < 2.0) or not math.isfinite(alpha):
        raise OrderOutOfRange(f"alpha must lie in [1, 2), got {alpha}")
    if alpha == 1.0:
        return FractionalOrder(1.0, 1.0 + 0.0j)
    theta = (1.0 - alpha) * math.pi / 2
    return FractionalOrder(alpha, complex(math.cos(theta), math.sin(theta)))


def as_order(order) -> FractionalOrder:
    return order if isinstance(order, FractionalOrder) else beta(order)


def _real_matrix(a) -> np.ndarray:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        if np.any(a.imag != 0):
            raise ValueError("system matrix must be real")
        a = a.real
    return linalg.as_matrix(a, dtype=float)


def lyapunov_form(p, a, order, *, check: bool = True) -> np.ndarray:
    """``beta P A + conj(beta) A^T P``, Hermitian by construction.

    ``a`` may be a stack of matrices of shape ``(m, n, n)``; the result is
    then a stack of forms.
    """
    order = as_order(order)
    if check:
        p = linalg.as_hermitian(p)
        a = _real_matrix(a)
    if p.shape[-1] != a.shape[-1] or p.shape[-2] != a.shape[-2]:
        raise ShapeMismatch(f"P is {p.shape[-2:]} but A is {a.shape[-2:]}")
    x = order.beta * (p @ a)
    return x + np.conj(np.swapaxes(x, -1, -2))


@dataclass(frozen=True)
class LambdaBarResult:
    value: float
    argmax_vertex: np.ndarray
    argmax_index: int
    vertex_count: int


def lambda_bar_vertices(p, a: IntervalMatrix, order, *, vertex_cap: int = VERTEX_CAP,
                        chunk: int = 4096) -> LambdaBarResult:
    """Worst top eigenvalue of the Lyapunov form over the vertex set.

    ``p`` need only be Hermitian.  Ties go to the lowest vertex index.
    """
    order = as_order(order)
    p = linalg.as_hermitian(p)
    if p.shape != a.lower.shape:
        raise ShapeMismatch(f"P is {p.shape} but the interval is {a.lower.shape}")
    vs = vertices(a, vertex_cap)
    best, best_idx = -math.inf, 0
    for start, block in vs.chunks(chunk):
        lam = linalg.lambda_max(lyapunov_form(p, block, order, check=False), check=False)
        k = int(np.argmax(lam))
        if lam[k] > best:
            best, best_idx = float(lam[k]), start + k
    return LambdaBarResult(best, vs[best_idx], best_idx, vs.cardinality)


def spectrum(a) -> np.ndarray:
    """Eigenvalues of a general real (or stacked) matrix."""
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise SpectrumFailure(str(exc)) from exc


def arg_margins(a, order) -> np.ndarray:
    """``min_k |arg lam_k| - alpha pi / 2`` per matrix; zero eigenvalues give ``-inf``."""
    order = as_order(order)
    lam = spectrum(a)
    margin = np.abs(np.angle(lam)) - order.sector
    margin = np.where(lam == 0, -np.inf, margin)
    return np.min(margin, axis=-1)


@dataclass(frozen=True)
class PointVerdict:
    stable: bool
    spectrum: np.ndarray
    min_arg_margin: float

    def __bool__(self) -> bool:
        return self.stable


def point_stability(a, order) -> PointVerdict:
    """Eigenvalue-argument test: stable iff ``|arg lam| > alpha pi / 2`` for all eigenvalues.

    Boundary spectra and zero eigenvalues are reported unstable.
    """
    a = _real_matrix(a)
    order = as_order(order)
    lam = spectrum(a)
    margin = float(arg_margins(a, order))
    return PointVerdict(margin > 0.0, lam, margin)


def point_lyapunov_certificate(a, order) -> np.ndarray:
    """Certificate ``P > 0`` for a single matrix, with ``L(P, A) = -I``.

    Solves ``(beta A)* P + P (beta A) = -I``.  Raises NotPointStable when
    ``beta A`` is not Hurwitz, which is the same as ``A`` failing the
    argument test.
    """
    a = _real_matrix(a)
    order = as_order(order)
    try:
        return linalg.lyapunov_solve(order.beta * a, np.eye(a.shape[0]))
    except NotHurwitz as exc:
        raise NotPointStable(f"no certificate: {exc}") from exc


@dataclass(frozen=True)
class RobustReport:
    robust_stable: bool
    margin: float
    worst: LambdaBarResult

    def __bool__(self) -> bool:
        return self.robust_stable


def robust_stability_sufficient(a: IntervalMatrix, order, p, *, margin: float = 0.0,
                                vertex_cap: int = VERTEX_CAP) -> RobustReport:
    """Common-certificate test at the vertices; sufficient for robust stability."""
    pd = linalg.is_positive_definite(p, margin)
    if not pd:
        raise NotPositiveDefinite(f"P has smallest eigenvalue {pd.min_eigenvalue:.3e}")
    lb = lambda_bar_vertices(p, a, order, vertex_cap=vertex_cap)
    return RobustReport(lb.value < -margin, -lb.value, lb)


def verify_point_certificate(p, a, order) -> bool:
    """PD check plus ``lambda_max(L) <= -1 + lyap_residual`` for a point certificate."""
    try:
        pd = linalg.is_positive_definite(p)
    except Exception:
        return False
    if not pd:
        return False
    top = float(linalg.lambda_max(lyapunov_form(p, a, order)))
    return top <= -1.0 + TOL.lyap_residual
