"""Coefficient files: a solved q_n series that can be re-evaluated later.

Schema (JSON object)::

    {"n": int, "N": int, "coeffs": [float, ...], "err_estimate": float,
     "convention": "chebyshev-halved-a1"}

``coeffs[0]`` is a_1 and enters the series with half weight. Floats are
written with 17 significant digits, which round-trips binary64 exactly.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .cheb import ChebyshevSeries
from .recurrence import QnSolution

CONVENTION = "chebyshev-halved-a1"


def format_real(v: float) -> str:
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v!r}")
    s = format(v, ".17g")
    # keep a float marker so readers do not take 3.0 for an integer
    return s if any(ch in s for ch in ".en") else s + ".0"


def dumps(obj, indent: int | None = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_real(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def solution_to_dict(sol: QnSolution) -> dict:
    return {
        "n": sol.n,
        "N": sol.N,
        "coeffs": [float(c) for c in sol.coeffs],
        "err_estimate": float(sol.err_estimate),
        "convention": CONVENTION,
    }


def solution_from_dict(data: dict) -> QnSolution:
    if data.get("convention") != CONVENTION:
        raise ValueError(f"unknown coefficient convention {data.get('convention')!r}")
    coeffs = np.array([float(c) for c in data["coeffs"]])
    if coeffs.shape[0] != int(data["N"]):
        raise ValueError(f"N={data['N']} but {coeffs.shape[0]} coefficients were given")
    return QnSolution(n=int(data["n"]), series=ChebyshevSeries(coeffs),
                      err_estimate=float(data["err_estimate"]))


def save(sol: QnSolution, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(solution_to_dict(sol)) + "\n")


def load(path: str | os.PathLike) -> QnSolution:
    with open(path) as fh:
        return solution_from_dict(json.load(fh))
