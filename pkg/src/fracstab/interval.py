"""Interval matrices, their vertex sets, and Monte Carlo sampling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .config import VERTEX_CAP
from .errors import BoundsViolation, NonFinite, ShapeMismatch, VertexExplosion


@dataclass(frozen=True, eq=False)
class IntervalMatrix:
    """Box of real matrices ``lower <= A <= upper`` (entrywise, closed)."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lower, dtype=float)
        hi = np.array(self.upper, dtype=float)
        if lo.ndim != 2 or lo.shape[0] != lo.shape[1] or lo.shape[0] < 1:
            raise ShapeMismatch(f"lower bound must be a square matrix, got shape {lo.shape}")
        if hi.shape != lo.shape:
            raise ShapeMismatch(f"bounds differ in shape: {lo.shape} vs {hi.shape}")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise NonFinite("interval bounds must be finite")
        bad = np.argwhere(lo > hi)
        if bad.size:
            i, j = bad[0]
            raise BoundsViolation(f"lower[{i}][{j}] = {lo[i, j]} exceeds upper[{i}][{j}] = {hi[i, j]}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def point(cls, a) -> "IntervalMatrix":
        """Degenerate interval holding the single matrix ``a``."""
        return cls(a, a)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def free_positions(self) -> list[tuple[int, int]]:
        # degenerate means bitwise-equal bounds; no epsilon collapsing
        return [tuple(int(k) for k in ij) for ij in np.argwhere(self.lower != self.upper)]

    @property
    def is_degenerate(self) -> bool:
        return not self.free_positions

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def __repr__(self) -> str:
        return f"IntervalMatrix(dim={self.dim}, free={len(self.free_positions)})"


def make_interval_matrix(lower, upper) -> IntervalMatrix:
    return IntervalMatrix(lower, upper)


@dataclass(frozen=True, eq=False)
class VertexSet:
    """The 2^k vertex matrices of an interval matrix with k free entries.

    Vertex ``i`` is read as a k-bit binary number over the free positions
    in row-major order, first position most significant; bit 0 selects the
    lower bound and bit 1 the upper bound.  Index 0 is therefore ``lower``
    and index ``N - 1`` is ``upper``.
    """

    source: IntervalMatrix
    free_positions: list[tuple[int, int]] = field(default_factory=list)

    @property
    def cardinality(self) -> int:
        return 1 << len(self.free_positions)

    def __len__(self) -> int:
        return self.cardinality

    def bits(self, indices) -> np.ndarray:
        """Boolean matrix of shape ``(len(indices), k)``, True = upper bound.

        A scalar index gives a single row of length ``k``.
        """
        idx = np.asarray(indices, dtype=np.int64)
        k = len(self.free_positions)
        shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
        return ((idx[..., None] >> shifts) & 1).astype(bool)

    def stack(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Vertices ``start .. stop-1`` as an array of shape ``(m, n, n)``."""
        stop = self.cardinality if stop is None else min(stop, self.cardinality)
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.broadcast_to(self.source.lower, (len(idx),) + self.source.lower.shape).copy()
        if self.free_positions and len(idx):
            rows, cols = np.array(self.free_positions).T
            take_upper = self.bits(idx)
            out[:, rows, cols] = np.where(take_upper, self.source.upper[rows, cols], self.source.lower[rows, cols])
        return out

    def __getitem__(self, index: int) -> np.ndarray:
        if not 0 <= index < self.cardinality:
            raise IndexError(index)
        return self.stack(index, index + 1)[0]

    def chunks(self, size: int = 4096) -> Iterator[tuple[int, np.ndarray]]:
        for start in range(0, self.cardinality, size):
            yield start, self.stack(start, start + size)

    def __iter__(self) -> Iterator[np.ndarray]:
        for _, block in self.chunks():
            yield from block


def vertices(a: IntervalMatrix, vertex_cap: int = VERTEX_CAP) -> VertexSet:
    """Vertex set of ``a``; raises VertexExplosion beyond ``2**vertex_cap``."""
    free = a.free_positions
    if len(free) > vertex_cap:
        raise VertexExplosion(
            f"{len(free)} free entries give 2^{len(free)} vertices (cap is 2^{vertex_cap}); "
            "fall back to sampling"
        )
    return VertexSet(a, free)


def sample(a: IntervalMatrix, count: int, seed: int | None = 0) -> np.ndarray:
    """``count`` matrices drawn entrywise uniformly from the box."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    u = rng.random((count,) + a.lower.shape)
    out = a.lower + (a.upper - a.lower) * u
    # guard against rounding past the upper bound
    return np.minimum(out, a.upper)


def contains(a: IntervalMatrix, x) -> bool:
    x = np.asarray(x, dtype=float)
    if x.shape != a.lower.shape:
        raise ShapeMismatch(f"expected shape {a.lower.shape}, got {x.shape}")
    return bool(np.all(a.lower <= x) and np.all(x <= a.upper))
