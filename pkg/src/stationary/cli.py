"""Command-line interface: ``stationary {validate,check,solve,simulate,generate}``.

Reports are JSON objects on stdout, diagnostics JSON on stderr. Exit codes:
0 success, 2 validation failure, 3 reducible chain, 4 solver failure,
5 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cesaro import DEFAULT_EPS, cesaro_solve
from .core import DEFAULT_ROW_SUM_TOL, StochasticMatrix, validate
from .direct import kernel_basis, p_minus_i_pivot_tol, solve_stationary_direct
from .errors import InvalidSpec, SolverError, ValidationError
from .irreducibility import is_irreducible
from .simulator import DEFAULT_SEED, empirical_distribution, sample_trajectory
from .testkit import KINDS, FixtureSpec, generate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_REDUCIBLE = 3
EXIT_SOLVER = 4
EXIT_IO = 5


class MatrixFileError(Exception):
    pass


class _Exit(Exception):
    def __init__(self, code: int, payload: dict, stream: str = "stderr"):
        self.code, self.payload, self.stream = code, payload, stream


# ---------------------------------------------------------------- serialization

def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return json.dumps(str(x))
        return "%.17g" % x
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    return _fmt(obj)


# ---------------------------------------------------------------- matrix files

def parse_matrix(text: str, fmt: str) -> list[list[float]]:
    try:
        if fmt == "json":
            doc = json.loads(text)
            if not isinstance(doc, dict) or "rows" not in doc:
                raise MatrixFileError('JSON matrix must be an object with "n" and "rows"')
            rows = doc["rows"]
            if "n" in doc and doc["n"] != len(rows):
                raise MatrixFileError(f'"n" is {doc["n"]} but there are {len(rows)} rows')
        else:
            rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        return [[float(x) for x in row] for row in rows]
    except MatrixFileError:
        raise
    except (ValueError, TypeError) as exc:
        raise MatrixFileError(f"cannot parse {fmt} matrix: {exc}") from exc


def _format_of(path: str) -> str:
    return "csv" if Path(path).suffix.lower() == ".csv" else "json"


def read_matrix(path: str) -> list[list[float]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(str(exc)) from exc
    return parse_matrix(text, _format_of(path))


def format_matrix(P: StochasticMatrix, fmt: str) -> str:
    rows = P.tolist()
    if fmt == "csv":
        return "".join(",".join("%.17g" % x for x in row) + "\n" for row in rows)
    return dumps({"n": P.n, "rows": rows}) + "\n"


def write_matrix(P: StochasticMatrix, path: str) -> None:
    Path(path).write_text(format_matrix(P, _format_of(path)))


# ---------------------------------------------------------------- commands

def _load(args) -> StochasticMatrix:
    try:
        raw = read_matrix(args.file)
    except MatrixFileError as exc:
        raise _Exit(EXIT_IO, {"error": "MatrixFileError", "message": str(exc)})
    try:
        return validate(raw, row_sum_tol=args.tol, renormalize=getattr(args, "renormalize", False))
    except ValidationError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        payload.update({k: v for k, v in vars(exc).items() if k in ("i", "j", "value", "total", "shape")})
        raise _Exit(EXIT_INVALID, payload)


def cmd_validate(args) -> tuple[int, dict]:
    P = _load(args)
    report = {"n": P.n, "valid": True}
    if args.renormalize:
        report["renormalized"] = True
    return EXIT_OK, report


def cmd_check(args) -> tuple[int, dict]:
    P = _load(args)
    cert = is_irreducible(P, args.threshold)
    report = {"n": P.n, **cert.to_dict(full=args.full)}
    return (EXIT_OK if cert.verdict else EXIT_REDUCIBLE), report


def _solution(pi, rep) -> dict:
    out = {"pi": pi.tolist(), "residual": rep.residual, "iterations": rep.iterations,
           "positivity_margin": rep.positivity_margin}
    if rep.kernel_dimension is not None:
        out["kernel_dimension"] = rep.kernel_dimension
    return out


def cmd_solve(args) -> tuple[int, dict]:
    P = _load(args)
    cert = is_irreducible(P)
    report: dict = {"n": P.n, "irreducible": cert.verdict, "method": args.method}
    if not cert.verdict:
        a = np.asarray(P)
        dim = kernel_basis((a - np.eye(P.n)).T, p_minus_i_pivot_tol(P.n)).dimension
        report.update(witness=list(cert.witness), kernel_dimension=dim,
                      error="NotUniqueStationary" if dim != 1 else "Reducible",
                      message="stationary distribution requires an irreducible matrix")
        return EXIT_SOLVER, report
    try:
        if args.method in ("direct", "both"):
            pi_d, rep_d = solve_stationary_direct(P, positivity_tol=args.positivity_tol)
            report.update(_solution(pi_d, rep_d))
        if args.method in ("cesaro", "both"):
            pi_c, rep_c = cesaro_solve(P, eps=args.eps, max_k=args.max_iter, positivity_tol=args.positivity_tol)
            if args.method == "cesaro":
                report.update(_solution(pi_c, rep_c))
            else:
                report["cesaro"] = _solution(pi_c, rep_c)
                report["distance"] = float(np.max(np.abs(pi_d.entries - pi_c.entries)))
    except SolverError as exc:
        report.update({"error": type(exc).__name__, "message": str(exc)})
        report.update({k: v for k, v in vars(exc).items() if k in ("kernel_dimension", "k", "residual", "i")})
        return EXIT_SOLVER, report
    return EXIT_OK, report


def cmd_simulate(args) -> tuple[int, dict]:
    P = _load(args)
    if not 0 <= args.start < P.n:
        raise _Exit(EXIT_INVALID, {"error": "IndexOutOfRange", "message": f"start {args.start} outside 0..{P.n - 1}"})
    if args.steps < 1:
        raise _Exit(EXIT_INVALID, {"error": "ValueError", "message": "steps must be >= 1"})
    seed = args.seed if args.seed is not None else int(os.environ.get("STATIONARY_SEED", DEFAULT_SEED))
    report: dict = {"n": P.n, "steps": args.steps, "start": args.start, "seed": seed}
    if args.compare:
        cert = is_irreducible(P)
        report["irreducible"] = cert.verdict
        if not cert.verdict:
            report.update(witness=list(cert.witness), error="Reducible")
            return EXIT_REDUCIBLE, report
    stats = sample_trajectory(P, args.start, args.steps, seed)
    empirical = empirical_distribution(stats)
    report.update(counts=list(stats.counts), empirical=empirical.tolist())
    if args.compare:
        try:
            pi, _ = solve_stationary_direct(P)
        except SolverError as exc:
            report.update(error=type(exc).__name__, message=str(exc))
            return EXIT_SOLVER, report
        report.update(method="direct", pi=pi.tolist(),
                      distance=float(np.max(np.abs(empirical.entries - pi.entries))))
    return EXIT_OK, report


def cmd_generate(args) -> tuple[int, dict]:
    try:
        spec = FixtureSpec(args.kind, args.n, args.seed, args.coupling)
    except InvalidSpec as exc:
        raise _Exit(EXIT_INVALID, {"error": "InvalidSpec", "message": str(exc)})
    P = generate(spec)
    report = {"kind": spec.kind, "n": spec.n, "seed": spec.seed, "coupling": spec.coupling}
    if args.out:
        try:
            write_matrix(P, args.out)
        except OSError as exc:
            raise _Exit(EXIT_IO, {"error": "OSError", "message": str(exc)})
        report["out"] = args.out
    else:
        report["rows"] = P.tolist()
    return EXIT_OK, report


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timing", action="store_true",
                        help="report elapsed_ms as 0 so identical runs give identical bytes")
    matrix = argparse.ArgumentParser(add_help=False, parents=[common])
    matrix.add_argument("file", help="matrix file (.json or .csv)")
    matrix.add_argument("--tol", type=float, default=DEFAULT_ROW_SUM_TOL, help="row-sum tolerance")

    parser = argparse.ArgumentParser(prog="stationary", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[matrix], help="check that a matrix is row-stochastic")
    p.add_argument("--renormalize", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", parents=[matrix], help="decide irreducibility")
    p.add_argument("--full", action="store_true", help="include the table of minimal positive powers")
    p.add_argument("--threshold", type=float, default=0.0, help="entries <= threshold count as zero")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[matrix], help="compute the stationary distribution")
    p.add_argument("--method", choices=("direct", "cesaro", "both"), default="direct")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="Cesaro residual tolerance")
    p.add_argument("--max-iter", type=int, default=None, help="Cesaro iteration cap")
    p.add_argument("--positivity-tol", type=float, default=0.0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", parents=[matrix], help="sample a trajectory and count visits")
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None, help=f"default $STATIONARY_SEED or {DEFAULT_SEED}")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--compare", action="store_true", help="include distance to the direct solution")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("generate", parents=[common], help="write a fixture matrix")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coupling", type=float, default=1e-6)
    p.add_argument("--out", default=None, help="output path; format chosen by extension")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    head = {"command": args.command}
    if hasattr(args, "file"):
        head["matrix_file"] = args.file
    try:
        code, body = args.func(args)
        stream = sys.stdout
    except _Exit as exc:
        code, body, stream = exc.code, exc.payload, sys.stderr
    elapsed = 0.0 if args.no_timing else round((time.perf_counter() - t0) * 1e3, 3)
    stream.write(dumps({**head, **body, "elapsed_ms": elapsed}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
