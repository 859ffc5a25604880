"""Search for a common Lyapunov certificate over the vertex set.

``find_common_p`` minimizes

    f(P) = max_v lambda_max(beta P A_v + conj(beta) A_v^T P)

over Hermitian ``P`` with ``trace(P) = n``.  The first phase is projected
subgradient descent: if ``z`` is a top unit eigenvector of the worst
vertex form, then ``G = beta A_v z z* + conj(beta) z z* A_v^T`` is a
subgradient of ``f`` at ``P`` (real inner product ``Re tr(X* Y)``).

Subgradient steps stall when the only certificates are badly
conditioned, so a log-det barrier method on the epigraph problem

    min t   s.t.   t I - L_v(P) > 0  for every vertex v,   trace(P) = n

takes over from the best subgradient iterate.  Once every vertex passed
the argument test, ``f(P) < 0`` already forces ``P > 0``, which keeps the
barrier problem bounded without an explicit PD constraint.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import TOL, VERTEX_CAP
from .interval import IntervalMatrix, vertices
from .stability import arg_margins, as_order, lambda_bar_vertices, lyapunov_form


class Verdict(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


METHODS = ("auto", "subgradient", "barrier")


@dataclass(frozen=True)
class SolverConfig:
    """Solver settings.

    ``method="auto"`` runs subgradient descent from every start, cutting
    a start short once its best value stops improving for
    ``stall_window`` iterations, then hands the best iterate to the
    barrier method.  ``"subgradient"`` runs the full ``max_iters`` per
    start with no fallback.
    """

    max_iters: int = 5000
    step0: float = 1.0
    tol_feas: float = 1e-7
    restarts: int = 5
    seed: int = 0
    vertex_cap: int = VERTEX_CAP
    method: str = "auto"
    stall_window: int = 200
    max_newton: int = 500

    def __post_init__(self):
        if self.max_iters < 1 or self.step0 <= 0 or self.tol_feas <= 0 or self.restarts < 0:
            raise ValueError("solver settings must be positive")
        if self.tol_feas >= 1:
            raise ValueError("tol_feas must be below 1")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.stall_window < 1 or self.max_newton < 1:
            raise ValueError("solver settings must be positive")


@dataclass(frozen=True)
class Witness:
    index: int
    matrix: np.ndarray
    arg_margin: float


@dataclass
class FeasibilityResult:
    verdict: Verdict
    certificate: np.ndarray | None = None
    witness: Witness | None = None
    objective_trace: list[float] = field(default_factory=list)
    margin: float = -math.inf
    iterations: int = 0
    starts_used: int = 0
    phase: str = ""

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE


def _unstable_vertex(vs, order) -> Witness | None:
    for start, block in vs.chunks():
        m = arg_margins(block, order)
        bad = np.flatnonzero(m <= 0.0)
        if bad.size:
            k = int(bad[0])
            return Witness(start + k, block[k], float(m[k]))
    return None


def _project(p: np.ndarray, n: int) -> np.ndarray:
    p = linalg.symmetrize(p)
    lmin = float(linalg.hermitian_eig(p, check=False).min)
    if lmin < TOL.pd_floor:
        p = p + (TOL.pd_floor - lmin) * np.eye(n)
    return p * (n / np.trace(p).real)


def _starts(n: int, cfg: SolverConfig):
    yield np.eye(n, dtype=complex)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.restarts):
        r = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        yield np.eye(n) + 0.1 * (r + r.conj().T)


class _Problem:
    """Vertex data shared by both phases."""

    def __init__(self, verts: np.ndarray, order):
        self.verts = verts
        self.verts_t = np.swapaxes(verts, -1, -2)
        self.order = order
        self.n = verts.shape[-1]

    def forms(self, p):
        return lyapunov_form(p, self.verts, self.order, check=False)

    def evaluate(self, p):
        eig = linalg.hermitian_eig(self.forms(p), check=False)
        worst = int(np.argmax(eig.max))
        return float(eig.max[worst]), worst, eig

    def accept(self, p, f, tol) -> bool:
        return f <= -tol and bool(linalg.is_positive_definite(p))


def _subgradient(prob: _Problem, p0, cfg: SolverConfig, trace: list, stall: bool):
    """One projected subgradient run; returns (best_f, best_p, feasible)."""
    n = prob.n
    b, bc = prob.order.beta, np.conj(prob.order.beta)
    p = _project(p0, n)
    best_f, best_p, mark_f, mark_k = math.inf, p, math.inf, 0
    for k in range(1, cfg.max_iters + 1):
        f, worst, eig = prob.evaluate(p)
        trace.append(f)
        if f < best_f:
            best_f, best_p = f, p
        if prob.accept(p, f, cfg.tol_feas):
            return f, p, True
        if stall:
            if best_f < mark_f - 0.01 * (abs(mark_f) if math.isfinite(mark_f) else 1.0):
                mark_f, mark_k = best_f, k
            elif k - mark_k >= cfg.stall_window:
                break
        z = eig.eigenvectors[worst, :, -1]
        zz = np.outer(z, z.conj())
        g = linalg.symmetrize(b * (prob.verts[worst] @ zz) + bc * (zz @ prob.verts_t[worst]))
        g -= (np.trace(g).real / n) * np.eye(n)
        gnorm = np.linalg.norm(g)
        if gnorm == 0.0:
            break
        p = _project(p - (cfg.step0 / math.sqrt(k)) * g / gnorm, n)
    return best_f, best_p, False


def _trace_free_basis(n: int) -> np.ndarray:
    basis = []
    for i in range(n - 1):
        e = np.zeros((n, n), dtype=complex)
        e[i, i], e[n - 1, n - 1] = 1.0, -1.0
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = e[j, i] = 1.0
            basis.append(e)
            e = np.zeros((n, n), dtype=complex)
            e[i, j], e[j, i] = 1j, -1j
            basis.append(e)
    return np.array(basis).reshape(-1, n, n)


def _barrier(prob: _Problem, p_ref, cfg: SolverConfig, trace: list):
    """Log-det barrier method on ``min t s.t. t I - L_v(P) > 0``.

    ``P = p_ref + sum_i x_i B_i`` with ``B_i`` a basis of trace-free
    Hermitian matrices.  Returns (best_f, best_p, feasible, newton_steps).
    """
    n = prob.n
    basis = _trace_free_basis(n)
    m = len(basis)
    nv = len(prob.verts)
    eye = np.eye(n)
    if m == 0:
        f, _, _ = prob.evaluate(p_ref)
        trace.append(f)
        return f, p_ref, prob.accept(p_ref, f, cfg.tol_feas), 1

    lb = lyapunov_form(basis[None, :], prob.verts[:, None], prob.order, check=False)  # (V, m, n, n)
    base = prob.forms(p_ref)  # (V, n, n)

    def pmat(x):
        return p_ref + np.tensordot(x, basis, axes=1)

    def slack(x, t):
        return t * eye - base - np.tensordot(lb, x, axes=([1], [0]))

    def phi(x, t, s):
        try:
            chol = np.linalg.cholesky(slack(x, t))
        except np.linalg.LinAlgError:
            return math.inf
        return s * t - 2.0 * float(np.sum(np.log(np.real(np.diagonal(chol, axis1=-2, axis2=-1)))))

    f0, _, _ = prob.evaluate(p_ref)
    best_f, best_p = f0, p_ref
    x = np.zeros(m)
    t = f0 + max(1.0, abs(f0))
    s = nv * n / max(abs(f0), 1e-3)
    steps = 0
    while steps < cfg.max_newton:
        # centering
        while steps < cfg.max_newton:
            steps += 1
            finv = np.linalg.inv(slack(x, t))
            mx = -finv[:, None] @ lb  # F^-1 dF/dx_i
            grad = np.empty(m + 1)
            grad[:m] = -np.real(np.einsum("viaa->i", mx))
            grad[m] = s - np.real(np.einsum("vaa->", finv))
            hess = np.empty((m + 1, m + 1))
            hess[:m, :m] = np.real(np.einsum("viab,vjba->ij", mx, mx))
            hess[:m, m] = hess[m, :m] = np.real(np.einsum("viab,vba->i", mx, finv))
            hess[m, m] = np.real(np.einsum("vab,vba->", finv, finv))
            try:
                step = -np.linalg.solve(hess, grad)
            except np.linalg.LinAlgError:
                step = -np.linalg.lstsq(hess, grad, rcond=None)[0]
            dec = -float(grad @ step)
            if dec / 2.0 <= 1e-10:
                break
            cur = phi(x, t, s)
            h = 1.0
            while h > 1e-12:
                nxt = phi(x + h * step[:m], t + h * step[m], s)
                if nxt <= cur - 0.25 * h * dec:
                    break
                h *= 0.5
            else:
                break
            x, t = x + h * step[:m], t + h * step[m]

            p = linalg.symmetrize(pmat(x))
            f, _, _ = prob.evaluate(p)
            trace.append(f)
            if f < best_f:
                best_f, best_p = f, p
            if prob.accept(p, f, cfg.tol_feas):
                return f, p, True, steps
        # central point: the optimum is at least t - gap
        if t - nv * n / s > -cfg.tol_feas:
            break
        s *= 10.0
    return best_f, best_p, False, steps


def find_common_p(a: IntervalMatrix, order, cfg: SolverConfig | None = None) -> FeasibilityResult:
    """Decide quadratic stability of the interval system.

    Returns FEASIBLE with a certificate ``P`` (trace ``n``, every vertex
    form below ``-tol_feas``), INFEASIBLE only when some vertex fails the
    argument test (that vertex is the witness), and UNKNOWN otherwise,
    with the best margin reached.
    """
    cfg = cfg or SolverConfig()
    order = as_order(order)
    vs = vertices(a, cfg.vertex_cap)
    n = a.dim

    witness = _unstable_vertex(vs, order)
    if witness is not None:
        return FeasibilityResult(Verdict.INFEASIBLE, witness=witness, phase="vertex-scan")

    prob = _Problem(vs.stack(), order)
    trace: list[float] = []
    best_f, best_p = math.inf, None
    total = 0
    used = 0

    if cfg.method != "barrier":
        for p0 in _starts(n, cfg):
            used += 1
            before = len(trace)
            f, p, ok = _subgradient(prob, p0, cfg, trace, stall=cfg.method == "auto")
            total += len(trace) - before
            if ok:
                return FeasibilityResult(Verdict.FEASIBLE, p, objective_trace=trace, margin=-f,
                                         iterations=total, starts_used=used, phase="subgradient")
            if f < best_f:
                best_f, best_p = f, p

    if cfg.method != "subgradient":
        start = best_p if best_p is not None else np.eye(n, dtype=complex)
        f, p, ok, steps = _barrier(prob, start, cfg, trace)
        total += steps
        used = max(used, 1)
        if f < best_f:
            best_f, best_p = f, p
        if ok:
            return FeasibilityResult(Verdict.FEASIBLE, p, objective_trace=trace, margin=-f,
                                     iterations=total, starts_used=used, phase="barrier")

    return FeasibilityResult(Verdict.UNKNOWN, certificate=best_p, objective_trace=trace,
                             margin=-best_f, iterations=total, starts_used=used,
                             phase=cfg.method)


@dataclass(frozen=True)
class Stage:
    name: str
    passed: bool
    value: float
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    stages: tuple[Stage, ...]
    worst_vertex: int | None = None

    @property
    def passed(self) -> bool:
        return len(self.stages) == 3 and all(s.passed for s in self.stages)

    @property
    def margin(self) -> float | None:
        return self.stages[2].value if len(self.stages) == 3 else None

    def __bool__(self) -> bool:
        return self.passed


def verify_certificate(p, a: IntervalMatrix, order, tol: float = 0.0, *,
                       vertex_cap: int = VERTEX_CAP) -> VerificationReport:
    """Staged check of a candidate common certificate.

    Stages: Hermitian symmetry, positive definiteness with
    ``lambda_min > tol``, and ``lambda_bar < -tol`` over the vertices.
    Stage values are margins (positive is good).  Evaluation stops at the
    first failing stage; failures never raise.
    """
    order = as_order(order)
    try:
        raw = linalg.as_matrix(p)
    except Exception as exc:
        return VerificationReport((Stage("hermitian", False, -math.inf, str(exc)),))
    if raw.shape != a.lower.shape:
        return VerificationReport((Stage("hermitian", False, -math.inf,
                                         f"P is {raw.shape}, system is {a.lower.shape}"),))
    scale = max(1.0, float(np.max(np.abs(raw))))
    defect = linalg.hermitian_defect(raw)
    herm = Stage("hermitian", defect <= TOL.herm_tol * scale, TOL.herm_tol * scale - defect,
                 f"max |P - P*| = {defect:.3e}")
    if not herm.passed:
        return VerificationReport((herm,))
    h = linalg.symmetrize(raw)
    lmin = float(linalg.hermitian_eig(h, check=False).min)
    pd = Stage("positive_definite", lmin > tol, lmin - tol, f"lambda_min(P) = {lmin:.6g}")
    if not pd.passed:
        return VerificationReport((herm, pd))
    lb = lambda_bar_vertices(h, a, order, vertex_cap=vertex_cap)
    lmis = Stage("vertex_lmis", lb.value < -tol, -lb.value - tol,
                 f"lambda_bar(P) = {lb.value:.6g} at vertex {lb.argmax_index}")
    return VerificationReport((herm, pd, lmis), worst_vertex=lb.argmax_index)
