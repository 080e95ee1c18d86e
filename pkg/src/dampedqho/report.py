"""JSON / CSV serialization of reports.

Floats go through ``repr`` (shortest round-tripping form), NaN becomes
``null``; output is deterministic for identical inputs.
"""
from __future__ import annotations

import csv
import io
import json
import math

from .analysis import SpectrumReport, SweepRow, _decide
from .model import OrderingScheme

SCHEMA_VERSION = "1"
CSV_HEADER = ["n", "re", "im", "analytic_re", "analytic_im", "abs_err"]


def _num(x):
    if x is None:
        return None
    x = float(x)
    return None if math.isnan(x) or math.isinf(x) else x


def spectrum_to_dict(rep: SpectrumReport) -> dict:
    levels = []
    for n, a in enumerate(rep.analytic):
        z = rep.numeric[n] if n < len(rep.numeric) else None
        levels.append(
            {
                "n": n,
                "re": None if z is None else _num(z.real),
                "im": None if z is None else _num(z.imag),
                "analytic_re": _num(a.real),
                "analytic_im": _num(a.imag),
                "abs_err": None if z is None else _num(abs(z - a)),
            }
        )
    metrics = {
        "compared_levels": rep.compared_levels,
        "max_abs_err": _num(rep.max_abs_err),
        "max_rel_err": _num(rep.max_rel_err),
        "max_imag_part": _num(rep.max_imag_part),
        "tol_abs": _num(rep.tol_abs),
        "regime": rep.regime.value,
        "comparison_enabled": rep.comparison_enabled,
    }
    if rep.warning:
        metrics["warning"] = rep.warning
    if rep.solver_health:
        metrics["solver"] = {k: (_num(v) if isinstance(v, float) else v) for k, v in rep.solver_health.items()}
    return {
        "schema_version": SCHEMA_VERSION,
        "params": rep.params.to_dict(),
        "backend": rep.backend,
        "ordering": rep.ordering.value,
        "levels": levels,
        "metrics": metrics,
        "pass": rep.passed,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def decision_from_json(text: str) -> bool:
    """Recompute pass/fail from a serialized spectrum report."""
    doc = json.loads(text)
    metrics = doc["metrics"]
    if not metrics.get("comparison_enabled", True):
        return False
    levels = doc["levels"][: metrics["compared_levels"]]
    if not levels:
        return False
    max_abs = max(row["abs_err"] for row in levels)
    max_imag = max(abs(row["im"]) for row in levels)
    ordering = OrderingScheme(doc["ordering"])
    solver = metrics.get("solver", {})
    return bool(solver.get("converged", True)) and _decide(ordering, max_abs, max_imag, metrics["tol_abs"])


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(["" if v is None else (repr(float(v)) if isinstance(v, float) else v) for v in row])
    return buf.getvalue()


def spectrum_to_csv(rep: SpectrumReport) -> str:
    d = spectrum_to_dict(rep)
    rows = [CSV_HEADER] + [[lv[k] for k in CSV_HEADER] for lv in d["levels"]]
    return _csv(rows)


def sweep_to_dict(rows: list[SweepRow], params: dict, backend: str, ordering: OrderingScheme) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "params": params,
        "backend": backend,
        "ordering": ordering.value,
        "rows": [
            {
                "lambda": r.lambda_damp,
                "n": r.n,
                "re": _num(r.re),
                "im": _num(r.im),
                "analytic_re": _num(r.analytic_re),
                "analytic_im": _num(r.analytic_im),
                "regime": r.regime.value,
                "comparable": r.comparable,
                "abs_err": _num(r.abs_err),
            }
            for r in rows
        ],
    }


SWEEP_HEADER = ["lambda", "n", "re", "im", "analytic_re", "analytic_im", "regime", "comparable", "abs_err"]


def sweep_to_csv(rows: list[SweepRow]) -> str:
    out = [SWEEP_HEADER]
    for r in rows:
        out.append(
            [r.lambda_damp, r.n, r.re, r.im, r.analytic_re, r.analytic_im, r.regime.value, str(r.comparable).lower(), r.abs_err]
        )
    return _csv(out)
