"""Brute-force cross-checks that do not rely on the vertex reduction.

``grid_max_lambda`` evaluates the Lyapunov form on a full tensor grid of
the interval box.  ``mc_falsify`` hunts for an unstable member of the
box, checking the vertices first and then uniform random samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .config import GRID_CAP, VERTEX_CAP
from .errors import GridExplosion, ShapeMismatch, VertexExplosion
from .interval import IntervalMatrix, sample, vertices
from .stability import arg_margins, as_order, lambda_bar_vertices, lyapunov_form


@dataclass(frozen=True)
class GridSpec:
    divisions: int = 5
    cap: int = GRID_CAP

    def __post_init__(self):
        if self.divisions < 1:
            raise ValueError("divisions must be at least 1")

    def size(self, free: int) -> int:
        return (self.divisions + 1) ** free


def grid_points(a: IntervalMatrix, grid: GridSpec, chunk: int = 8192):
    """Yield blocks of grid matrices, shape ``(m, n, n)``.

    Every free entry runs over ``divisions + 1`` evenly spaced values that
    include both endpoints, so each vertex is a grid point.
    """
    free = a.free_positions
    total = grid.size(len(free))
    if total > grid.cap:
        raise GridExplosion(f"grid has {total} points (cap {grid.cap})")
    if not free:
        yield a.lower[None].copy()
        return
    rows, cols = np.array(free).T
    ticks = np.linspace(0.0, 1.0, grid.divisions + 1)
    lo, hi = a.lower[rows, cols], a.upper[rows, cols]
    radix = grid.divisions + 1
    powers = radix ** np.arange(len(free) - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % radix
        frac = ticks[digits]
        vals = lo + (hi - lo) * frac
        # exact endpoints, so vertices are reproduced bit for bit
        vals = np.where(digits == 0, lo, np.where(digits == radix - 1, hi, vals))
        block = np.broadcast_to(a.lower, (len(idx),) + a.lower.shape).copy()
        block[:, rows, cols] = vals
        yield block


def grid_max_lambda(p, a: IntervalMatrix, order, grid: GridSpec | None = None) -> float:
    """Max over the grid of the top eigenvalue of the Lyapunov form."""
    grid = grid or GridSpec()
    order = as_order(order)
    p = linalg.as_hermitian(p)
    if p.shape != a.lower.shape:
        raise ShapeMismatch(f"P is {p.shape} but the interval is {a.lower.shape}")
    best = -math.inf
    for block in grid_points(a, grid):
        lam = linalg.lambda_max(lyapunov_form(p, block, order, check=False), check=False)
        best = max(best, float(np.max(lam)))
    return best


@dataclass(frozen=True)
class FalsificationResult:
    counterexample: np.ndarray | None
    samples_checked: int
    worst_margin: float
    source: str | None = None
    index: int | None = None
    vertices_skipped: bool = False

    @property
    def falsified(self) -> bool:
        return self.counterexample is not None


def _scan(blocks, order):
    """Scan blocks in order; stop at the first unstable matrix."""
    checked, worst = 0, math.inf
    for offset, block in blocks:
        m = arg_margins(block, order)
        bad = np.flatnonzero(m <= 0.0)
        if bad.size:
            k = int(bad[0])
            worst = min(worst, float(np.min(m[: k + 1])))
            return block[k], offset + k, checked + k + 1, worst
        worst = min(worst, float(np.min(m)))
        checked += len(block)
    return None, None, checked, worst


def mc_falsify(a: IntervalMatrix, order, samples: int = 10_000, seed: int | None = 0, *,
               vertex_cap: int = VERTEX_CAP, chunk: int = 4096) -> FalsificationResult:
    """Search the box for a matrix that fails the argument test.

    Vertices are scanned first, then ``samples`` uniform draws.  With too
    many vertices the vertex scan is skipped and ``vertices_skipped`` is
    set on the result.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    order = as_order(order)
    checked, worst, skipped = 0, math.inf, False
    try:
        vs = vertices(a, vertex_cap)
    except VertexExplosion:
        skipped = True
    else:
        hit, idx, checked, worst = _scan(vs.chunks(chunk), order)
        if hit is not None:
            return FalsificationResult(hit, checked, worst, "vertex", idx)

    draws = sample(a, samples, seed)
    blocks = ((s, draws[s:s + chunk]) for s in range(0, samples, chunk))
    hit, idx, n, w = _scan(blocks, order)
    checked += n
    worst = min(worst, w)
    if hit is not None:
        return FalsificationResult(hit, checked, worst, "sample", idx, skipped)
    return FalsificationResult(None, checked, worst, None, None, skipped)


@dataclass(frozen=True)
class VertexLemmaCheck:
    vertex_value: float
    grid_value: float
    argmax_index: int
    on_grid: bool
    dominated: bool
    equal: bool

    @property
    def passed(self) -> bool:
        return self.dominated and (self.equal or not self.on_grid)


def check_vertex_lemma(p, a: IntervalMatrix, order, grid: GridSpec | None = None,
                       atol: float = 1e-9) -> VertexLemmaCheck:
    """Compare the vertex maximum with the grid maximum for one instance."""
    grid = grid or GridSpec()
    lb = lambda_bar_vertices(p, a, order)
    g = grid_max_lambda(p, a, order, grid)
    # the grid always contains both endpoints of every free entry
    on_grid = True
    return VertexLemmaCheck(lb.value, g, lb.argmax_index, on_grid,
                            g <= lb.value + atol, abs(g - lb.value) <= atol)


def random_lemma_instance(rng: np.random.Generator, max_dim: int = 3, max_free: int = 5,
                          alphas=(1.0, 1.5, 1.9)):
    """Random (P, interval, alpha) triple for vertex-lemma sweeps.

    ``P`` is a random Hermitian matrix (not necessarily definite); the
    interval has a random center and random widths on at most
    ``max_free`` entries so the grid stays small.
    """
    n = int(rng.integers(1, max_dim + 1))
    alpha = float(alphas[int(rng.integers(len(alphas)))])
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    p = 0.5 * (x + x.conj().T)
    center = rng.standard_normal((n, n))
    k = int(rng.integers(1, min(max_free, n * n) + 1))
    mask = np.zeros(n * n, dtype=bool)
    mask[rng.choice(n * n, size=k, replace=False)] = True
    width = rng.uniform(0.05, 1.0, size=(n, n)) * mask.reshape(n, n)
    return p, IntervalMatrix(center - width, center + width), alpha
