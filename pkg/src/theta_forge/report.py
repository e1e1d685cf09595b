"""JSON report assembly.

Reports are plain dicts built with a fixed key order so ``json.dumps``
output is stable.  Polynomials appear both as canonical text and as exact
``[numerator, denominator]`` string pairs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .diffop import ThetaOperator
from .newton import NewtonPolygon, katz, polygon_d, polygon_theta
from .opparse import print_operator, print_poly
from .ratpoly import NEG_INF, Poly
from .siegel import NonvanishingReport, check_T1, check_T2

SCHEMA_VERSION = "theta-forge-report/1"

REPORT_KEYS = (
    "schema_version",
    "command",
    "input_echo",
    "basis",
    "order",
    "operator",
    "degrees",
    "conditions",
    "siegel",
    "newton",
    "hyper",
    "diagnostics",
    "error",
    "exit_code",
)


def load_schema() -> dict:
    text = resources.files("theta_forge").joinpath("schema/report-v1.json").read_text("utf-8")
    return json.loads(text)


def deg_json(d) -> int | None:
    return None if d == NEG_INF else d


def frac_json(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_json(p: Poly) -> dict:
    return {"text": print_poly(p), "coeffs": [[str(c.numerator), str(c.denominator)] for c in p.coeffs]}


def empty_report(command: str, input_echo: str) -> dict[str, Any]:
    rep: dict[str, Any] = {k: None for k in REPORT_KEYS}
    rep.update(schema_version=SCHEMA_VERSION, command=command, input_echo=input_echo, diagnostics=[], exit_code=0)
    return rep


def describe_operator(rep: dict, op) -> None:
    rep["basis"] = "T" if isinstance(op, ThetaOperator) else "D"
    rep["order"] = op.order
    rep["operator"] = print_operator(op)
    rep["degrees"] = {"lead": deg_json(op.lead_degree), "r": [deg_json(d) for d in op.rhs_degrees()]}
    if isinstance(op, ThetaOperator):
        rep["conditions"] = {"t1": check_T1(op), "t2_280": None, "t2_290": None}
    else:
        c = check_T2(op)
        rep["conditions"] = {"t1": None, "t2_280": c.cond280, "t2_290": c.cond290}


def siegel_json(nv: NonvanishingReport, k_max: int) -> dict:
    return {
        "k_max": k_max,
        "windows": [
            {
                "k": w.k,
                "degree_grid": [[deg_json(d) for d in row] for row in w.degree_grid],
                "det": poly_json(w.det),
                "det_degree": deg_json(w.det_degree),
                "predicted_degree": w.predicted_degree,
                "nonzero": w.nonzero,
            }
            for w in nv.windows
        ],
    }


def newton_json(op) -> tuple[dict, NewtonPolygon]:
    poly = polygon_theta(op) if isinstance(op, ThetaOperator) else polygon_d(op)
    v = katz(poly, op.order)
    data = {
        "points": [list(p) for p in poly.points],
        "hull": [list(p) for p in poly.hull],
        "slopes": [{"value": frac_json(s.value), "multiplicity": s.multiplicity} for s in poly.slopes],
        "verdict": v.verdict,
        "witness": None if not v.irreducible else {"slope": frac_json(v.slope), "denominator": v.denominator},
    }
    return data, poly


def dumps(rep: dict) -> str:
    return json.dumps(rep, ensure_ascii=False)


def write_json(rep: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(rep, ensure_ascii=False, indent=2))
        fh.write("\n")

