"""JSON interchange: system files, certificate files, complex matrices.

System file::

    {"alpha": 1.5, "lower": [[-2.0]], "upper": [[-1.0]],
     "certificate": [[{"re": 1.0, "im": 0.0}]]}          # certificate optional

Point file (``check-point --matrix``)::

    {"alpha": 1.5, "matrix": [[-1.0]]}

Certificate file::

    {"p": [[{"re": 0.8575, "im": 0.0}, ...], ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import FracStabError, ShapeMismatch
from .interval import IntervalMatrix
from .stability import FractionalOrder, beta


class InputError(FracStabError, ValueError):
    pass


def complex_to_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"} and "re" in obj:
        return complex(float(obj["re"]), float(obj.get("im", 0.0)))
    raise InputError(f"expected a complex number as {{'re', 'im'}}, got {obj!r}")


def cmatrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def cmatrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a non-empty list of rows")
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    return np.array([[complex_from_json(z) for z in r] for r in rows], dtype=complex)


def rmatrix_to_json(m) -> list:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def rmatrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a non-empty list of rows")
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    try:
        return np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix entries must be numbers: {exc}") from exc


def finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _read(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


@dataclass(frozen=True)
class SystemFile:
    order: FractionalOrder
    interval: IntervalMatrix
    certificate: np.ndarray | None = None


def parse_system(data: dict) -> SystemFile:
    if "alpha" not in data:
        raise InputError("system file needs an 'alpha' field")
    order = beta(data["alpha"])
    if "matrix" in data:
        a = rmatrix_from_json(data["matrix"])
        interval = IntervalMatrix(a, a)
    else:
        if "lower" not in data or "upper" not in data:
            raise InputError("system file needs 'lower' and 'upper' (or 'matrix')")
        interval = IntervalMatrix(rmatrix_from_json(data["lower"]), rmatrix_from_json(data["upper"]))
    cert = None
    if data.get("certificate") is not None:
        cert = cmatrix_from_json(data["certificate"])
        if cert.shape != interval.lower.shape:
            raise ShapeMismatch(f"certificate is {cert.shape}, system is {interval.lower.shape}")
    return SystemFile(order, interval, cert)


def load_system(path) -> SystemFile:
    return parse_system(_read(path))


def load_certificate(path) -> np.ndarray:
    data = _read(path)
    if "p" not in data:
        raise InputError(f"{path}: certificate file needs a 'p' field")
    return cmatrix_from_json(data["p"])


def dump_system(order, interval: IntervalMatrix, certificate=None) -> dict:
    out = {
        "alpha": float(order.alpha if isinstance(order, FractionalOrder) else order),
        "lower": rmatrix_to_json(interval.lower),
        "upper": rmatrix_to_json(interval.upper),
    }
    if certificate is not None:
        out["certificate"] = cmatrix_to_json(certificate)
    return out


def reference_certificate() -> np.ndarray:
    """Published 3x3 common certificate for a benchmark system, entries as printed."""
    text = resources.files("fracstab").joinpath("data/reference_certificate.json").read_text()
    return cmatrix_from_json(json.loads(text)["p"])
