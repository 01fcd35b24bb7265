"""Batch command-line front end.

Subcommands operate on JSON system/spec files and write JSON results (or CSV
for traces) atomically, printing a one-line summary.  Exit codes: 0 success,
1 infeasible or divergence verdict, 2 invalid input, 3 tolerance or
convergence failure.  Randomized commands take --seed (default 0) so that
identical inputs produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import (
    CertifiedInfeasible,
    ConvergenceTooSlow,
    EllqError,
    Infeasible,
    InvalidInput,
    NotConverged,
    NotInSpace,
    ToleranceNotMet,
    TooLarge,
    UndefinedRatio,
    UnsupportedNorm,
    UnsupportedRepresentation,
)
from .examples import (
    dirichlet_spec_from_json,
    dirichlet_system,
    helly_spec_from_json,
    helly_system,
)
from .polynomials import eval_product_form, polynomial_from_json
from .sequences import seqrep_from_json
from .solver import (
    certify,
    min_norm_l2,
    min_norm_truncated_q,
    norm_trace,
    riesz_sup_search,
    system_from_json,
)

_INVALID = (InvalidInput, NotInSpace, UnsupportedRepresentation, UnsupportedNorm,
            TooLarge, UndefinedRatio)
_SLOW = (ToleranceNotMet, NotConverged, ConvergenceTooSlow)


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _bounded(bv) -> dict:
    return {"estimate": _pair(bv.estimate), "error_bound": bv.error_bound}


def _atomic_write(path: str, data: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as handle:
        handle.write(data)
    os.replace(tmp, path)


def _write_json(path: str, doc: dict) -> None:
    _atomic_write(path, json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _load_json(path: str):
    with open(path) as handle:
        return json.load(handle)


def _load_system(path: str):
    return system_from_json(_load_json(path))


def _cmd_solve(args) -> int:
    sys_obj = _load_system(args.input)
    try:
        if sys_obj.pair.q == 2.0 and args.N is None:
            result = min_norm_l2(sys_obj, args.tol)
        else:
            if args.N is None:
                raise InvalidInput("q != 2 solves need --N (truncation cutoff)")
            result = min_norm_truncated_q(sys_obj, args.N, args.tol)
    except Infeasible as exc:
        _write_json(args.output, {"command": "solve", "status": "infeasible",
                                  "residual": exc.residual})
        print(f"solve: infeasible (least-squares residual {exc.residual:.3e})")
        return 1
    doc = {
        "command": "solve",
        "status": "ok",
        "method": result.method,
        "norm": _bounded(result.norm),
        "h": [_pair(v) for v in result.h],
        "residuals": [_bounded(bv) for bv in result.residuals],
        "x": result.x.to_json(),
        "surrogate": result.surrogate,
    }
    if result.norm_at_double is not None:
        doc["norm_at_double"] = _bounded(result.norm_at_double)
    if result.gram_eigenvalues:
        doc["gram_eigenvalues"] = list(result.gram_eigenvalues)
    _write_json(args.output, doc)
    print(f"solve: norm={result.norm.estimate.real:.12g} "
          f"(err<={result.norm.error_bound:.2e}) rows={len(sys_obj.rows)} "
          f"method={result.method}")
    return 0


def _trace_rows(trace) -> list[list]:
    rows = []
    for e in trace.entries:
        if e.norm is not None:
            rows.append([e.r, repr(e.norm.estimate.real), repr(e.norm.error_bound),
                         repr(e.lower_bound), e.status])
        else:
            rows.append([e.r, "", "", repr(e.lower_bound), e.status])
    return rows


def _cmd_trace(args) -> int:
    if args.r_max is None:
        raise InvalidInput("trace needs --r-max")
    sys_obj = _load_system(args.input)
    trace = norm_trace(sys_obj, args.r_max, args.tol, truncation_n=args.N)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["r", "min_norm", "error_bound", "lower_bound", "status"])
    writer.writerows(_trace_rows(trace))
    _atomic_write(args.output, buffer.getvalue())
    n_ok = sum(1 for e in trace.entries if e.status == "ok")
    print(f"trace: {n_ok}/{len(trace.entries)} prefixes solved, r_max={trace.r_max}")
    return 0 if n_ok == len(trace.entries) else 1


def _cmd_certify(args) -> int:
    if args.M is None:
        raise InvalidInput("certify needs --M")
    sys_obj = _load_system(args.input)
    r_max = args.r_max if args.r_max is not None else len(sys_obj.rows)
    trace = norm_trace(sys_obj, r_max, args.tol, truncation_n=args.N)
    cert = certify(trace, args.M)
    doc = {
        "command": "certify",
        "status": "ok",
        "verdict": cert.verdict,
        "M": cert.bound,
        "r_max": cert.r_max,
        "lower_bounds": [repr(v) for v in cert.lower_bounds],
        "notes": cert.notes,
        "trace": [{"r": e.r, "status": e.status,
                   "min_norm": None if e.norm is None else _bounded(e.norm),
                   "lower_bound": e.lower_bound} for e in trace.entries],
    }
    _write_json(args.output, doc)
    print(f"certify: verdict={cert.verdict} at M={cert.bound}")
    return 1 if cert.verdict == "divergence" else 0


def _cmd_helly(args) -> int:
    spec = helly_spec_from_json(_load_json(args.input))
    system = helly_system(spec)
    _write_json(args.output, system.to_json())
    print(f"helly: wrote triangular system with r={spec.r} rows")
    return 0


def _cmd_dirichlet(args) -> int:
    spec = dirichlet_spec_from_json(_load_json(args.input))
    system = dirichlet_system(spec)
    _write_json(args.output, system.to_json())
    print(f"dirichlet: wrote interpolation system with {len(spec.points)} points")
    return 0


def _cmd_eval_poly(args) -> int:
    doc = _load_json(args.input)
    try:
        poly = polynomial_from_json(doc["poly"])
        point = seqrep_from_json(doc["x"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"eval-poly input needs 'poly' and 'x': {exc}") from exc
    value = eval_product_form(poly, point, args.tol)
    _write_json(args.output, {"command": "eval-poly", "status": "ok",
                              "value": _pair(value.estimate),
                              "error_bound": value.error_bound})
    print(f"eval-poly: value={value.estimate:.12g} (err<={value.error_bound:.2e})")
    return 0


def _cmd_riesz(args) -> int:
    sys_obj = _load_system(args.input)
    iterations = args.iterations if args.iterations is not None else 32
    try:
        lower = riesz_sup_search(sys_obj, iterations, args.tol, seed=args.seed)
    except CertifiedInfeasible as exc:
        _write_json(args.output, {"command": "riesz", "status": "certified-infeasible",
                                  "detail": str(exc)})
        print(f"riesz: certified infeasible ({exc})")
        return 1
    _write_json(args.output, {"command": "riesz", "status": "ok",
                              "lower_bound": lower,
                              "iterations": iterations, "seed": args.seed})
    print(f"riesz: certified lower bound {lower:.12g} on the minimum norm")
    return 0


_HANDLERS = {
    "solve": _cmd_solve,
    "trace": _cmd_trace,
    "certify": _cmd_certify,
    "helly": _cmd_helly,
    "dirichlet": _cmd_dirichlet,
    "eval-poly": _cmd_eval_poly,
    "riesz": _cmd_riesz,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellq",
        description="certified solves, traces, and certificates for infinite "
                    "linear and multiplicative polynomial systems over lq spaces")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("solve", "minimum-norm solution of a system file"),
        ("trace", "minimum norms of nested prefixes, written as CSV"),
        ("certify", "boundedness verdict for the prefix trace"),
        ("helly", "build the triangular system from a base-sequence spec"),
        ("dirichlet", "build the interpolation system from a point/value spec"),
        ("eval-poly", "evaluate a multiplicative polynomial at a point"),
        ("riesz", "searched certified lower bound on the minimum norm"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--input", required=True, help="input JSON path")
        cmd.add_argument("--output", required=True, help="output artifact path")
        cmd.add_argument("--tol", type=float, default=1e-8,
                         help="certified tolerance (default 1e-8)")
        cmd.add_argument("--M", type=float, default=None,
                         help="norm bound to certify against")
        cmd.add_argument("--r-max", dest="r_max", type=int, default=None,
                         help="number of nested prefixes")
        cmd.add_argument("--N", type=int, default=None,
                         help="truncation cutoff for q != 2 solves")
        cmd.add_argument("--iterations", type=int, default=None,
                         help="random restarts for searches")
        cmd.add_argument("--seed", type=int, default=0,
                         help="seed for randomized commands (default 0)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _SLOW as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Infeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CertifiedInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EllqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
