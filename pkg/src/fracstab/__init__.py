"""Quadratic stability certification for fractional-order interval systems."""

__version__ = "0.1.0"

from .config import TOL, Tolerances
from .errors import (
    BoundsViolation,
    FracStabError,
    GridExplosion,
    NoConvergence,
    NonFinite,
    NotHermitian,
    NotHurwitz,
    NotPointStable,
    NotPositiveDefinite,
    OrderOutOfRange,
    ShapeMismatch,
    SpectrumFailure,
    VertexExplosion,
)
from .interval import IntervalMatrix, VertexSet, contains, make_interval_matrix, sample, vertices
from .io import load_system, reference_certificate
from .linalg import EigResult, PDReport, hermitian_eig, is_positive_definite, lambda_max, lyapunov_solve
from .oracle import (
    FalsificationResult,
    GridSpec,
    check_vertex_lemma,
    grid_max_lambda,
    mc_falsify,
    random_lemma_instance,
)
from .solver import (
    FeasibilityResult,
    SolverConfig,
    Verdict,
    VerificationReport,
    find_common_p,
    verify_certificate,
)
from .stability import (
    FractionalOrder,
    LambdaBarResult,
    PointVerdict,
    beta,
    lambda_bar_vertices,
    lyapunov_form,
    point_lyapunov_certificate,
    point_stability,
    robust_stability_sufficient,
    verify_point_certificate,
)
