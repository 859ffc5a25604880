"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; a summary section lists
one PASS/FAIL line per criterion.
"""

import json
import math
import re
import time
from io import StringIO
from pathlib import Path

import numpy as np
import pytest

from fracstab import linalg
from fracstab.cli import run
from fracstab.errors import NotPointStable
from fracstab.interval import IntervalMatrix, contains, sample, vertices
from fracstab.io import reference_certificate
from fracstab.oracle import GridSpec, check_vertex_lemma, random_lemma_instance
from fracstab.solver import SolverConfig, Verdict, find_common_p, verify_certificate
from fracstab.stability import (
    arg_margins,
    beta,
    lyapunov_form,
    point_lyapunov_certificate,
    point_stability,
    verify_point_certificate,
)

from conftest import acceptance_line, char_poly_roots, random_hermitian

ALPHAS = (1.0, 1.25, 1.5, 1.75, 1.99)
DATA = Path(__file__).parent / "data"


def faddeev_leverrier(a):
    """Monic characteristic polynomial coefficients without any eigensolver."""
    n = a.shape[0]
    coeffs = [1.0]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def routh_hurwitz(a) -> bool:
    """All leading Hurwitz minors positive <=> all eigenvalues in the open left half-plane."""
    c = faddeev_leverrier(a)
    n = len(c) - 1
    h = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            k = 2 * (j + 1) - (i + 1)
            if 0 <= k <= n:
                h[i, j] = c[k]
    return all(np.linalg.det(h[:k, :k]) > 0 for k in range(1, n + 1))


def stable_points(count, seed, max_dim=3):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, max_dim + 1))
        a = rng.standard_normal((n, n))
        o = beta(float(rng.choice(ALPHAS)))
        if point_stability(a, o).min_arg_margin > 1e-6:
            out.append((a, o))
    return out


# 1 ------------------------------------------------------------------------
def test_c1_reference_certificate():
    t0 = time.perf_counter()
    p = reference_certificate()
    scale = max(1.0, float(np.max(np.abs(p))))
    defect = linalg.hermitian_defect(p)
    lmin = float(linalg.hermitian_eig(p).min)
    elapsed = time.perf_counter() - t0
    ok = defect <= 1e-12 * scale and lmin > 0 and elapsed < 1.0
    acceptance_line("C1 reference certificate Hermitian + PD", ok,
                    f"defect={defect:.1e}, lambda_min={lmin:.6f}, {elapsed:.3f}s")
    assert ok


# 2 ------------------------------------------------------------------------
def test_c2_vertex_lemma_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2002)
    worst_gap, unequal, dominated_fail = -math.inf, 0, 0
    for _ in range(200):
        p, a, alpha = random_lemma_instance(rng, max_dim=3, max_free=5, alphas=(1.0, 1.5, 1.9))
        c = check_vertex_lemma(p, a, alpha, GridSpec(5), atol=1e-9)
        worst_gap = max(worst_gap, c.grid_value - c.vertex_value)
        dominated_fail += not c.dominated
        unequal += c.on_grid and not c.equal
    elapsed = time.perf_counter() - t0
    ok = dominated_fail == 0 and unequal == 0 and elapsed < 60
    acceptance_line("C2 vertex lemma (grid <= vertex + 1e-9, equality)", ok,
                    f"200 instances, max grid-vertex={worst_gap:.1e}, "
                    f"violations={dominated_fail}, unequal={unequal}, {elapsed:.1f}s")
    assert ok


# 3 ------------------------------------------------------------------------
def test_c3_point_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3003)
    checked = skipped = disagree = stable = 0
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        a = rng.standard_normal((n, n)) - rng.uniform(0.0, 2.0) * np.eye(n)
        for alpha in ALPHAS:
            o = beta(alpha)
            verdict = point_stability(a, o)
            if abs(verdict.min_arg_margin) < 1e-6:
                skipped += 1
                continue
            try:
                p = point_lyapunov_certificate(a, o)
                certified = verify_point_certificate(p, a, o)
            except NotPointStable:
                certified = False
            checked += 1
            stable += verdict.stable
            disagree += verdict.stable != certified
    elapsed = time.perf_counter() - t0
    ok = disagree == 0 and elapsed < 120
    acceptance_line("C3 argument test <=> point certificate", ok,
                    f"{checked} checks ({stable} stable), {skipped} margin-filtered, "
                    f"disagreements={disagree}, {elapsed:.1f}s")
    assert ok


# 4 ------------------------------------------------------------------------
def test_c4_alpha_one_reduction():
    rng = np.random.default_rng(4004)
    form_err, hurwitz_mismatch, skipped = 0.0, 0, 0
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        p = random_hermitian(rng, n)
        a = rng.standard_normal((n, n)) - rng.uniform(0.0, 1.5) * np.eye(n)
        form_err = max(form_err, float(np.max(np.abs(lyapunov_form(p, a, 1.0) - (p @ a + a.T @ p)))))
        if abs(np.max(char_poly_roots(a).real if n <= 3 else np.linalg.eigvals(a).real)) < 1e-6:
            skipped += 1
            continue
        hurwitz_mismatch += point_stability(a, 1.0).stable != routh_hurwitz(a)
    ok = form_err <= 1e-12 and hurwitz_mismatch == 0
    acceptance_line("C4 alpha=1 reduces to classical Lyapunov/Hurwitz", ok,
                    f"max |L - (PA + A^T P)|={form_err:.1e}, Routh-Hurwitz mismatches="
                    f"{hurwitz_mismatch}, skipped={skipped}")
    assert ok


# 5 + 6 --------------------------------------------------------------------
@pytest.fixture(scope="module")
def point_solves():
    t0 = time.perf_counter()
    solved = []
    for a, o in stable_points(200, seed=5005):
        interval = IntervalMatrix.point(a)
        res = find_common_p(interval, o, SolverConfig())
        solved.append((interval, o, res))
    return solved, time.perf_counter() - t0


def test_c5_solver_completeness_at_points(point_solves):
    solved, elapsed = point_solves
    feasible = sum(r.verdict is Verdict.FEASIBLE for _, _, r in solved)
    verified = sum(r.feasible and verify_certificate(r.certificate, a, o).passed for a, o, r in solved)
    barrier = sum(r.phase == "barrier" for _, _, r in solved)
    ok = feasible == 200 and verified == 200 and elapsed < 300
    acceptance_line("C5 solver completeness on stable points", ok,
                    f"feasible={feasible}/200, verified={verified}/200, "
                    f"barrier-phase={barrier}, {elapsed:.1f}s")
    assert ok


def feasible_intervals(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for a0, o in stable_points(10 * count, seed=seed):
        if len(out) == count:
            break
        n = a0.shape[0]
        width = rng.uniform(0.2, 1.0, (n, n)) * (np.abs(a0) + 0.1)
        for _ in range(30):
            interval = IntervalMatrix(a0 - width, a0 + width)
            res = find_common_p(interval, o, SolverConfig(max_iters=1000, restarts=1))
            if res.feasible:
                out.append((interval, o, res))
                break
            width = width / 2
    return out


def test_c6_quadratic_implies_robust(point_solves):
    solved, _ = point_solves
    cases = [(a, o, r) for a, o, r in solved if r.feasible]
    intervals = feasible_intervals(20, seed=6006)
    cases += intervals
    violations = 0
    for k, (a, o, r) in enumerate(cases):
        draws = sample(a, 10_000, seed=k)
        lam = linalg.lambda_max(lyapunov_form(r.certificate, draws, o, check=False), check=False)
        unstable = arg_margins(draws, o) <= 0.0
        violations += int(np.sum(lam >= 0)) + int(np.sum(unstable))
    free = [len(a.free_positions) for a, _, _ in intervals]
    ok = len(intervals) == 20 and violations == 0
    acceptance_line("C6 common certificate => every sample certified and stable", ok,
                    f"{len(cases)} feasible systems ({len(intervals)} intervals, free entries "
                    f"{min(free) if free else 0}-{max(free) if free else 0}) x 1e4 samples, "
                    f"violations={violations}")
    assert ok


# 7 ------------------------------------------------------------------------
def test_c7_infeasibility_soundness():
    rng = np.random.default_rng(7007)
    built = correct = 0
    while built < 50:
        n = int(rng.integers(1, 4))
        center = rng.standard_normal((n, n)) - 0.5 * np.eye(n)
        mask = rng.random((n, n)) < 0.6
        width = rng.uniform(0.1, 1.5, (n, n)) * mask
        interval = IntervalMatrix(center - width, center + width)
        o = beta(float(rng.choice(ALPHAS)))
        # independent check: some vertex has a root with |arg| <= alpha pi / 2
        sector = o.alpha * math.pi / 2
        if not any(np.any(np.abs(np.angle(char_poly_roots(v))) <= sector) for v in vertices(interval)):
            continue
        built += 1
        res = find_common_p(interval, o)
        w = res.witness
        correct += (res.verdict is Verdict.INFEASIBLE and w is not None
                    and not point_stability(w.matrix, o).stable
                    and contains(interval, w.matrix)
                    and np.array_equal(vertices(interval)[w.index], w.matrix))
    ok = correct == 50
    acceptance_line("C7 infeasible verdicts carry an unstable vertex witness", ok,
                    f"{correct}/50 instances")
    assert ok


# 8 ------------------------------------------------------------------------
def _json_run(argv):
    out = StringIO()
    code = run([str(a) for a in argv] + ["--json"], stdout=out, stderr=StringIO())
    text = re.sub(r'"elapsed_seconds": [^,\n]+', '"elapsed_seconds": null', out.getvalue())
    return code, text.encode()


def test_c8_cli_determinism(tmp_path):
    cert = tmp_path / "p.json"
    cert.write_text(json.dumps({"p": [[{"re": 1.0, "im": 0.0}, {"re": 0.0, "im": 0.0}],
                                      [{"re": 0.0, "im": 0.0}, {"re": 1.0, "im": 0.0}]]}))
    commands = [
        ["certify", DATA / "scalar_stable.json", "--seed", "7"],
        ["certify", DATA / "scalar_unstable.json", "--seed", "7"],
        ["certify", DATA / "interval_3x3.json", "--seed", "7"],
        ["certify", DATA / "not_quadratic.json", "--seed", "7", "--max-iters", "100"],
        ["verify", DATA / "diagonal.json", "--certificate", cert],
        ["check-point", "--matrix", DATA / "rotation_point.json"],
        ["falsify", DATA / "interval_3x3.json", "--seed", "7", "--samples", "5000"],
        ["validate-vertex-lemma", "--seed", "7", "--samples", "50"],
        ["validate-vertex-lemma", DATA / "interval_3x3.json", "--seed", "7", "--samples", "5",
         "--divisions", "2"],
    ]
    mismatched = []
    for argv in commands:
        first, second = _json_run(argv), _json_run(argv)
        if first != second or first[0] == 3:
            mismatched.append(argv[0])
    ok = not mismatched
    acceptance_line("C8 CLI reports byte-identical across reruns", ok,
                    f"{len(commands)} invocations covering all 5 subcommands, mismatches={mismatched}")
    assert ok
