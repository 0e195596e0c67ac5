"""
gsn_report.py
Turns computed results into a canonical record: the JSON report
{surface, category, dims, checks} and its plain-text view

Reports must be byte-identical for identical inputs, so every value is
converted to plain JSON types and keys are sorted on output
"""

import json

import numpy as np

from extras import Violation
from gsn_algebra import Scalar


def jsonable(value):
    """
    Plain JSON form of the values found in results
    """
    if isinstance(value, Scalar):
        return value.to_json()
    if isinstance(value, Violation):
        return value.as_dict()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return sparse_triples(value) if value.ndim == 2 else [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def sparse_triples(matrix: np.ndarray) -> list:
    """
    [[row, col, scalar], ...] over the nonzero entries, row-major
    """
    return [[int(r), int(c), jsonable(matrix[r, c])]
            for (r, c), value in np.ndenumerate(matrix) if value]


def build_report(category: str, surface=None, dims=None, checks=None, **extra) -> dict:
    report = {
        "category": category,
        "surface": surface,
        "dims": dims or {},
        "checks": checks or [],
    }
    report.update(extra)
    return jsonable(report)


def failures(report: dict) -> list:
    return [c for c in report.get("checks", []) if not c.get("pass", False)]


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = [f"category: {report.get('category')}"]
    if report.get("surface"):
        surface = report["surface"]
        lines.append(f"surface: V={len(surface['vertices'])} E={len(surface['edges'])} "
                     f"F={len(surface['triangles'])} genus={surface.get('genus', 0)}")
    for name in sorted(report.get("dims", {})):
        lines.append(f"  {name}: {report['dims'][name]}")
    checks = report.get("checks", [])
    if checks:
        failed = failures(report)
        lines.append(f"checks: {len(checks) - len(failed)}/{len(checks)} passed")
        for c in failed:
            lines.append(f"  FAIL {c['name']}: {c['lhs']} != {c['rhs']}")
    return "\n".join(lines) + "\n"
