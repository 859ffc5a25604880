"""Numeric tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    herm_tol: float = 1e-12
    eig_residual: float = 1e-9
    lyap_residual: float = 1e-8
    hurwitz_tol: float = 1e-12
    pd_floor: float = 1e-6
    jacobi_max_sweeps: int = 60


TOL = Tolerances()

VERTEX_CAP = 24
GRID_CAP = 10**6
