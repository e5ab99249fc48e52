import json
import os
from pathlib import Path

from maffkit.errors import ParseError
from maffkit.numkernel import Tolerance

TOL_ENV = "MAFFKIT_TOL"
TOL_KEYS = ("rank_scale", "eq_abs", "eq_rel", "eig_backend")


def default_config():
    return {
        "rank_scale": 128.0,
        "eq_abs": 1e-8,
        "eq_rel": 1e-8,
        "eig_backend": "lapack",
        "seed": 42,
        "cases": 60,
        "dims": [2, 3, 4, 5, 6, 7, 8],
        "samples": 2000,
        "max_iter": 10000,
        # full runs: cases per dimension, per suite unless overridden
        "acceptance_per_dim": 500,
        "acceptance_overrides": {"uniqueness": 1000},
        "acceptance_samples": 10000,
    }


def acceptance_cases(names, dims, config=None):
    """Cases per suite for a full acceptance run; every dimension gets the full quota."""
    cfg = config or default_config()
    per_dim = {name: cfg["acceptance_overrides"].get(name, cfg["acceptance_per_dim"]) for name in names}
    return {name: int(count) * len(dims) for name, count in per_dim.items()}


def tolerance_from_config(config):
    cfg = default_config()
    cfg.update({k: v for k, v in (config or {}).items() if v is not None})
    try:
        return Tolerance(
            rank_scale=float(cfg["rank_scale"]),
            eq_abs=float(cfg["eq_abs"]),
            eq_rel=float(cfg["eq_rel"]),
            eig_backend=str(cfg["eig_backend"]),
        )
    except (TypeError, ValueError) as e:
        raise ParseError("Invalid tolerance configuration: %s" % str(e))


def load_tolerance(path=None):
    if path is None:
        path = os.environ.get(TOL_ENV) or None
    if path is None:
        return tolerance_from_config(None)

    path = Path(path).expanduser()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise ParseError("Cannot read tolerance file %s: %s" % (path, str(e)))
    if not isinstance(raw, dict):
        raise ParseError("Tolerance file %s must hold a JSON object" % path)

    unknown = sorted(set(raw) - set(TOL_KEYS))
    if unknown:
        raise ParseError("Unknown tolerance keys in %s: %s" % (path, ", ".join(unknown)))
    return tolerance_from_config(raw)
