"""Command-line front end.

Exit codes: 0 feasible/stable/pass, 1 infeasible/unstable/fail,
2 unknown, 3 input error.  ``--json`` prints a versioned report.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .errors import FracStabError, NotPointStable
from .io import (
    InputError,
    cmatrix_to_json,
    complex_to_json,
    finite_or_none,
    load_certificate,
    load_system,
    rmatrix_to_json,
)
from .oracle import GridSpec, check_vertex_lemma, mc_falsify, random_lemma_instance
from .solver import SolverConfig, find_common_p, verify_certificate
from .stability import point_lyapunov_certificate, point_stability, verify_point_certificate

SCHEMA_VERSION = 1
EXIT = {"feasible": 0, "stable": 0, "pass": 0, "infeasible": 1, "unstable": 1, "fail": 1, "unknown": 2}
INPUT_ERROR = 3


def _stages(report) -> list[dict]:
    return [
        {"name": s.name, "passed": bool(s.passed), "margin": finite_or_none(s.value), "detail": s.detail}
        for s in report.stages
    ]


def _certify(args) -> dict:
    sysf = load_system(args.system)
    cfg = SolverConfig(max_iters=args.max_iters, tol_feas=args.tol if args.tol is not None else 1e-7,
                       seed=args.seed, vertex_cap=args.vertex_cap, method=args.method)
    res = find_common_p(sysf.interval, sysf.order, cfg)
    result = {
        "iterations": res.iterations,
        "starts_used": res.starts_used,
        "phase": res.phase,
        "certificate": None,
        "witness": None,
        "verification": None,
    }
    if res.feasible:
        result["certificate"] = cmatrix_to_json(res.certificate)
        check = verify_certificate(res.certificate, sysf.interval, sysf.order, vertex_cap=args.vertex_cap)
        result["verification"] = _stages(check)
    if res.witness is not None:
        result["witness"] = {
            "index": res.witness.index,
            "matrix": rmatrix_to_json(res.witness.matrix),
            "arg_margin": finite_or_none(res.witness.arg_margin),
        }
    config = {k: getattr(cfg, k) for k in ("max_iters", "step0", "tol_feas", "restarts", "seed",
                                          "vertex_cap", "method", "stall_window", "max_newton")}
    return _report(args, sysf, res.verdict.value, finite_or_none(res.margin), config, result)


def _verify(args) -> dict:
    sysf = load_system(args.system)
    if args.certificate is not None:
        p = load_certificate(args.certificate)
    elif sysf.certificate is not None:
        p = sysf.certificate
    else:
        raise InputError("no certificate: pass --certificate or add 'certificate' to the system file")
    tol = args.tol if args.tol is not None else 0.0
    rep = verify_certificate(p, sysf.interval, sysf.order, tol, vertex_cap=args.vertex_cap)
    result = {"stages": _stages(rep), "worst_vertex": rep.worst_vertex}
    verdict = "pass" if rep.passed else "fail"
    margin = rep.margin if rep.margin is not None else rep.stages[-1].value
    return _report(args, sysf, verdict, finite_or_none(margin), {"tol": tol, "vertex_cap": args.vertex_cap},
                   result)


def _check_point(args) -> dict:
    path = args.matrix or args.system
    if path is None:
        raise InputError("check-point needs --matrix FILE (or a degenerate system file)")
    sysf = load_system(path)
    if not sysf.interval.is_degenerate:
        raise InputError("check-point needs a point system (lower == upper)")
    a = sysf.interval.lower
    verdict = point_stability(a, sysf.order)
    result = {
        "spectrum": [complex_to_json(z) for z in np.sort_complex(verdict.spectrum)],
        "certificate": None,
        "certificate_verified": None,
    }
    if verdict.stable:
        try:
            p = point_lyapunov_certificate(a, sysf.order)
        except NotPointStable:
            result["certificate_verified"] = False
        else:
            result["certificate"] = cmatrix_to_json(p)
            result["certificate_verified"] = verify_point_certificate(p, a, sysf.order)
    return _report(args, sysf, "stable" if verdict.stable else "unstable",
                   finite_or_none(verdict.min_arg_margin), {}, result)


def _falsify(args) -> dict:
    sysf = load_system(args.system)
    samples = args.samples if args.samples is not None else 10_000
    res = mc_falsify(sysf.interval, sysf.order, samples, args.seed, vertex_cap=args.vertex_cap)
    result = {
        "samples_checked": res.samples_checked,
        "counterexample": None if res.counterexample is None else rmatrix_to_json(res.counterexample),
        "source": res.source,
        "index": res.index,
        "vertices_skipped": res.vertices_skipped,
    }
    verdict = "unstable" if res.falsified else "pass"
    return _report(args, sysf, verdict, finite_or_none(res.worst_margin),
                   {"samples": samples, "seed": args.seed, "vertex_cap": args.vertex_cap}, result)


def _validate(args) -> dict:
    rng = np.random.default_rng(args.seed)
    grid = GridSpec(args.divisions if args.divisions is not None else 5)
    cases = []
    sysf = None
    if args.system is not None:
        sysf = load_system(args.system)
        n = sysf.interval.dim
        count = args.samples if args.samples is not None else 20
        ps = [sysf.certificate] if sysf.certificate is not None else []
        for _ in range(count):
            x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ps.append(0.5 * (x + x.conj().T))
        cases = [(p, sysf.interval, sysf.order) for p in ps]
    else:
        count = args.samples if args.samples is not None else 200
        cases = [random_lemma_instance(rng) for _ in range(count)]
    checks = [check_vertex_lemma(p, a, o, grid) for p, a, o in cases]
    failures = [i for i, c in enumerate(checks) if not c.passed]
    gap = max(c.grid_value - c.vertex_value for c in checks)
    result = {
        "instances": len(checks),
        "failures": failures,
        "max_grid_minus_vertex": float(gap),
        "all_equal": all(c.equal for c in checks),
    }
    return _report(args, sysf, "fail" if failures else "pass", 0.0 - float(gap),
                   {"divisions": grid.divisions, "samples": count, "seed": args.seed}, result)


def _report(args, sysf, verdict, margin, config, result) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": args.command,
        "inputs": {"system": args.system, "certificate": getattr(args, "certificate", None),
                   "matrix": getattr(args, "matrix", None)},
        "alpha": None if sysf is None else sysf.order.alpha,
        "dim": None if sysf is None else sysf.interval.dim,
        "verdict": verdict,
        "exit_code": EXIT[verdict],
        "margin": margin,
        "config": config,
        "result": result,
        "elapsed_seconds": None,
    }


def _text(report: dict) -> str:
    lines = [f"{report['command']}: {report['verdict']}"]
    if report["margin"] is not None:
        lines.append(f"  margin: {report['margin']:.6g}")
    res = report["result"]
    for key in ("witness", "counterexample"):
        if res.get(key) is not None:
            lines.append(f"  {key}: {json.dumps(res[key])}")
    if res.get("stages"):
        for s in res["stages"]:
            lines.append(f"  [{'ok' if s['passed'] else 'FAIL'}] {s['name']}: {s['detail']}")
    if res.get("certificate") is not None:
        lines.append(f"  certificate: {json.dumps(res['certificate'])}")
    for key in ("iterations", "phase", "samples_checked", "instances", "max_grid_minus_vertex"):
        if key in res:
            lines.append(f"  {key}: {res[key]}")
    lines.append(f"  elapsed: {report['elapsed_seconds']:.3f} s")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-iters", type=int, default=5000)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--divisions", type=int, default=None)
    common.add_argument("--vertex-cap", type=int, default=24)

    parser = argparse.ArgumentParser(prog="fracstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="search for a common certificate")
    p.add_argument("system")
    p.add_argument("--method", choices=("auto", "subgradient", "barrier"), default="auto")

    p = sub.add_parser("verify", parents=[common], help="check a candidate certificate")
    p.add_argument("system")
    p.add_argument("--certificate", default=None)

    p = sub.add_parser("check-point", parents=[common], help="stability of a single matrix")
    p.add_argument("system", nargs="?", default=None)
    p.add_argument("--matrix", default=None)

    p = sub.add_parser("falsify", parents=[common], help="Monte Carlo search for an unstable member")
    p.add_argument("system")

    p = sub.add_parser("validate-vertex-lemma", parents=[common],
                       help="compare vertex and grid maxima of the Lyapunov form")
    p.add_argument("system", nargs="?", default=None)
    return parser


COMMANDS = {
    "certify": _certify,
    "verify": _verify,
    "check-point": _check_point,
    "falsify": _falsify,
    "validate-vertex-lemma": _validate,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else INPUT_ERROR
    t0 = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except (FracStabError, ValueError) as exc:
        print(f"fracstab {args.command}: error: {exc}", file=stderr)
        return INPUT_ERROR
    report["elapsed_seconds"] = round(time.perf_counter() - t0, 6)
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True), file=stdout)
    else:
        print(_text(report), file=stdout)
    return report["exit_code"]


def main() -> None:
    sys.exit(run())
