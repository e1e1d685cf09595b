"""Command-line front end.

Exit codes: 0 success, 1 a determinant vanished or an annihilation failed,
2 bad input, 3 internal consistency violation (a guaranteed non-vanishing
or degree prediction failed, which means a bug).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

from . import report as R
from .diffop import DOperator, ThetaOperator, d_to_theta, theta_to_d
from .errors import InvalidParameters, OrderMismatch, ThetaForgeError
from .hyper import (
    FactorialBase,
    PFQParams,
    factorial_series,
    first_failing_order,
    kummer_type_operator,
    pfq_operator,
    pfq_series,
)
from .newton import polygon_d, polygon_theta
from .opparse import parse_linear_form, parse_op, parse_poly, print_linear_form, print_operator, print_poly
from .randgen import rand_form, rand_theta_t1
from .siegel import LinearForm, nonvanishing_report
from .svg import polygon_svg

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

Result = tuple[dict, int]


def _operator(text: str):
    op = parse_op(text)
    if op.order < 1:
        raise InvalidParameters("operator must have order at least 1")
    return op


def convert(op_text: str, form: str) -> str:
    op = _operator(op_text)
    if form == "theta":
        return print_operator(op if isinstance(op, ThetaOperator) else d_to_theta(op))
    if form == "d":
        return print_operator(op if isinstance(op, DOperator) else theta_to_d(op))
    raise InvalidParameters(f"unknown form {form!r}")


def _siegel_section(rep: dict, op, L0: LinearForm, kmax: int | None) -> int:
    if L0.m != op.order:
        raise OrderMismatch(f"initial form has {L0.m} components, operator order is {op.order}")
    if kmax is None:
        kmax = op.order + 1
    nv = nonvanishing_report(op, L0, kmax)
    rep["siegel"] = R.siegel_json(nv, kmax)
    if not nv.consistent:
        rep["diagnostics"].append("guaranteed determinant vanished or missed its predicted degree")
        return EXIT_INTERNAL
    if not nv.all_nonzero:
        zeros = [w.k for w in nv.windows if not w.nonzero]
        rep["diagnostics"].append(f"determinant vanishes for k in {zeros}")
        return EXIT_NEGATIVE
    return EXIT_OK


def run_siegel(op: str, form0: str, kmax: int | None = None) -> Result:
    rep = R.empty_report("siegel", f"op={op} form0={form0}")
    operator = _operator(op)
    R.describe_operator(rep, operator)
    code = _siegel_section(rep, operator, parse_linear_form(form0), kmax)
    rep["input_echo"] = f"op={print_operator(operator)} form0={print_linear_form(parse_linear_form(form0))}"
    return rep, code


def run_newton(op: str) -> Result:
    rep = R.empty_report("newton", f"op={op}")
    operator = _operator(op)
    R.describe_operator(rep, operator)
    rep["newton"], _ = R.newton_json(operator)
    rep["input_echo"] = f"op={print_operator(operator)}"
    return rep, EXIT_OK


def _rationals(text: str | None) -> list:
    if text is None or not text.strip():
        return []
    out = []
    for piece in text.split(","):
        p = parse_poly(piece)
        if not p.is_constant():
            raise InvalidParameters(f"parameter {piece.strip()!r} is not a rational number")
        out.append(p[0])
    return out


def run_hyper(poly: str | None = None, a: str | None = None, b: str | None = None,
              terms: int = 20, kmax: int | None = None) -> Result:
    if terms < 1:
        raise InvalidParameters("--terms must be positive")
    if poly is not None:
        rep = R.empty_report("hyper", f"poly={poly} terms={terms}")
        P = parse_poly(poly, variables=("t", "x"))
        try:
            fb = FactorialBase(P)
        except InvalidParameters as exc:
            raise InvalidParameters(f"invalid factorial base P(x) = {print_poly(P)}: {exc}") from None
        op = kummer_type_operator(fb)
        series = factorial_series(fb, terms)
        info: dict[str, Any] = {"family": "factorial", "P": R.poly_json(P)}
    else:
        rep = R.empty_report("hyper", f"a={a or ''} b={b or ''} terms={terms}")
        params = PFQParams(_rationals(a), _rationals(b))
        op = pfq_operator(params)
        series = pfq_series(params, terms)
        info = {
            "family": "pfq",
            "a": [R.frac_json(x) for x in params.a],
            "b": [R.frac_json(x) for x in params.b],
            "integer_differences": [[R.frac_json(x), R.frac_json(y)] for x, y in params.integer_differences()],
        }
    R.describe_operator(rep, op)
    failing = first_failing_order(op, series)
    info.update(terms=terms, annihilation=failing is None, first_failing_order=failing)
    rep["hyper"] = info
    L0 = LinearForm([1] + [0] * (op.order - 1))
    code = _siegel_section(rep, op, L0, kmax)
    rep["newton"], _ = R.newton_json(op)
    if failing is not None:
        rep["diagnostics"].append(f"series is not annihilated: first nonzero coefficient at order {failing}")
        code = max(code, EXIT_NEGATIVE)
    if info["family"] == "factorial" and not (rep["conditions"]["t1"] and rep["newton"]["verdict"] == "Irreducible"):
        rep["diagnostics"].append("factorial-type operator failed its degree conditions")
        code = EXIT_INTERNAL
    return rep, code


COMMANDS: dict[str, Callable[..., Result]] = {
    "siegel": run_siegel,
    "newton": run_newton,
    "hyper": run_hyper,
}


def run_job(job: dict) -> Result:
    """Run one batch job; every failure is captured in the report."""
    cmd = job.get("cmd") if isinstance(job, dict) else None
    args = job.get("args", {}) if isinstance(job, dict) else {}
    try:
        if cmd == "convert":
            rep = R.empty_report("convert", json.dumps(args, sort_keys=True))
            out = convert(args["op"], args.get("form", "theta"))
            rep["operator"] = out
            return rep, EXIT_OK
        if cmd not in COMMANDS:
            raise InvalidParameters(f"unknown command {cmd!r}")
        rep, code = COMMANDS[cmd](**args)
    except (ThetaForgeError, KeyError, TypeError) as exc:
        rep = R.empty_report(str(cmd), json.dumps(args, sort_keys=True, default=str))
        rep["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - a crashing job must not take down the batch
        rep = R.empty_report(str(cmd), json.dumps(args, sort_keys=True, default=str))
        rep["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_INTERNAL
    rep["exit_code"] = code
    return rep, code


def run_batch(jobs_path: str, out_path: str, workers: int | None = None) -> tuple[int, int]:
    jobs = []
    with open(jobs_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            try:
                jobs.append(json.loads(line))
            except json.JSONDecodeError as exc:
                jobs.append({"cmd": None, "args": {}, "_decode_error": str(exc)})
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_batch_one, jobs))
    ok = sum(1 for _, code in results if code == EXIT_OK)
    with open(out_path, "w", encoding="utf-8") as fh:
        for rep, _ in results:
            fh.write(R.dumps(rep) + "\n")
    return ok, len(results) - ok


def _batch_one(job: dict) -> Result:
    if "_decode_error" in job:
        rep = R.empty_report("invalid", "")
        rep["error"] = f"JSONDecodeError: {job['_decode_error']}"
        rep["exit_code"] = EXIT_INPUT
        return rep, EXIT_INPUT
    return run_job(job)


def selftest(count: int, seed: int) -> tuple[int, int]:
    """Random Δ-operators meeting the degree conditions; returns (passed, failed)."""
    rng = random.Random(seed)
    passed = failed = 0
    for _ in range(count):
        op = rand_theta_t1(rng)
        nv = nonvanishing_report(op, rand_form(rng, op.order), 2)
        if nv.consistent and nv.all_nonzero:
            passed += 1
        else:
            failed += 1
    return passed, failed


def _emit(rep: dict, json_path: str | None) -> None:
    if json_path:
        R.write_json(rep, json_path)
    print(json.dumps(rep, ensure_ascii=False, indent=2))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="theta-forge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="rewrite an operator in the D or Δ (T) basis")
    p.add_argument("--form", choices=["d", "theta"], required=True)
    p.add_argument("--op", required=True)

    p = sub.add_parser("siegel", help="determinants of the iterated linear forms")
    p.add_argument("--op", required=True)
    p.add_argument("--form0", required=True)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--json", default=None)

    p = sub.add_parser("newton", help="Newton polygon at infinity and irreducibility verdict")
    p.add_argument("--op", required=True)
    p.add_argument("--svg", default=None)
    p.add_argument("--json", default=None)

    p = sub.add_parser("hyper", help="factorial-type or hypergeometric example family")
    p.add_argument("--poly", default=None)
    p.add_argument("--a", default=None)
    p.add_argument("--b", default=None)
    p.add_argument("--terms", type=int, default=20)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--json", default=None)

    p = sub.add_parser("batch", help="run line-delimited JSON jobs")
    p.add_argument("--jobs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("selftest", help="randomized non-vanishing check (seed from THETA_FORGE_SEED)")
    p.add_argument("--count", type=int, default=50)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "convert":
            print(convert(args.op, args.form))
            return EXIT_OK
        if args.command == "siegel":
            rep, code = run_siegel(args.op, args.form0, args.kmax)
        elif args.command == "newton":
            rep, code = run_newton(args.op)
            if args.svg:
                operator = _operator(args.op)
                poly = polygon_theta(operator) if isinstance(operator, ThetaOperator) else polygon_d(operator)
                with open(args.svg, "w", encoding="utf-8") as fh:
                    fh.write(polygon_svg(poly, print_operator(operator)))
        elif args.command == "hyper":
            if (args.poly is None) == (args.a is None and args.b is None):
                raise InvalidParameters("give either --poly or --a/--b")
            rep, code = run_hyper(args.poly, args.a, args.b, args.terms, args.kmax)
        elif args.command == "batch":
            ok, failed = run_batch(args.jobs, args.out, args.workers)
            print(f"{ok} ok / {failed} failed")
            return EXIT_NEGATIVE if failed else EXIT_OK
        else:
            seed = int(os.environ.get("THETA_FORGE_SEED", "0"))
            passed, failed = selftest(args.count, seed)
            print(f"seed {seed}: {passed} passed / {failed} failed")
            return EXIT_INTERNAL if failed else EXIT_OK
    except ThetaForgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep["exit_code"] = code
    _emit(rep, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
