"""Batch front-end: read matrices, compute/enumerate/verify/series, emit reports.

Input files are JSON. A plain matrix is {"dim": d, "data": [[re, im], ...]}
(row-major, one [re, im] pair per entry); a Jordan form is {"blocks":
[{"lambda": [re, im], "sizes": [s1, ...]}, ...]} describing the shifted
generator A, whose pth roots of I - t*A get enumerated. An annihilator file
is {"coeffs": [[re, im], ...]} listing a_0..a_{r-1} of
P(z) = z^r - a_0 z^{r-1} - ... - a_{r-1}. Every number may be written as a
JSON number or as an exact fraction string "n/d"; both parse to binary64.

Exit codes: 0 ok, 2 parse failure, 3 singular input, 4 convergence-domain
violation, 5 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .engine import eigenvalues_in_sector, principal_pth_root
from .errors import (
    BranchCutError,
    ConvergenceDomainError,
    MatrixParseError,
    OracleUnavailableError,
    PthRootError,
    SingularMatrixError,
)
from .jordan import JordanForm, enumerate_primary_roots
from .linalg import ComplexMatrix, frobenius_norm
from .oracles import residual, series_root, spectral_root
from .polynomials import DEFAULT_CLUSTER_TOL, MonicPolynomial
from .reports import RootReport, digest_matrix, dumps_canonical, matrix_payload

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_CONVERGENCE = 4
EXIT_VERIFY = 5


def _parse_scalar(value) -> float:
    if isinstance(value, bool):
        raise MatrixParseError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixParseError(f"cannot parse number {value!r}") from exc
    raise MatrixParseError(f"expected a number, got {value!r}")


def _parse_complex(pair) -> complex:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise MatrixParseError(f"expected an [re, im] pair, got {pair!r}")
    return complex(_parse_scalar(pair[0]), _parse_scalar(pair[1]))


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path: str) -> ComplexMatrix:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "dim" not in doc or "data" not in doc:
        raise MatrixParseError(f"{path}: matrix files need 'dim' and 'data' fields")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise MatrixParseError(f"{path}: 'dim' must be a positive integer")
    data = doc["data"]
    if not isinstance(data, list) or len(data) != dim * dim:
        raise MatrixParseError(f"{path}: 'data' must list dim*dim = {dim * dim} entries")
    flat = [_parse_complex(pair) for pair in data]
    entries = np.array(flat, dtype=np.complex128).reshape(dim, dim)
    try:
        return ComplexMatrix(entries)
    except PthRootError as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def load_jordan(path: str) -> JordanForm:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "blocks" not in doc or not isinstance(doc["blocks"], list):
        raise MatrixParseError(f"{path}: Jordan files need a 'blocks' list")
    groups = []
    for blk in doc["blocks"]:
        if not isinstance(blk, dict) or "lambda" not in blk or "sizes" not in blk:
            raise MatrixParseError(f"{path}: each block needs 'lambda' and 'sizes'")
        lam = _parse_complex(blk["lambda"])
        sizes = blk["sizes"]
        if not isinstance(sizes, list) or not sizes or not all(
            isinstance(s, int) and s >= 1 for s in sizes
        ):
            raise MatrixParseError(f"{path}: 'sizes' must be a nonempty list of positive integers")
        groups.append((lam, tuple(sizes)))
    try:
        return JordanForm.from_blocks(groups)
    except (PthRootError, ValueError) as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def load_annihilator(path: str) -> MonicPolynomial:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "coeffs" not in doc or not isinstance(doc["coeffs"], list):
        raise MatrixParseError(f"{path}: annihilator files need a 'coeffs' list")
    coeffs = [_parse_complex(pair) for pair in doc["coeffs"]]
    if not coeffs:
        raise MatrixParseError(f"{path}: empty coefficient list")
    try:
        return MonicPolynomial(np.array(coeffs))
    except PthRootError as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def _emit(payload: dict, out: str | None) -> None:
    text = dumps_canonical(payload) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error_payload(kind: str, exc: Exception) -> dict:
    return {"error": {"kind": kind, "message": str(exc)}}


def _classify(exc: Exception):
    if isinstance(exc, MatrixParseError):
        return "parse", EXIT_PARSE
    if isinstance(exc, SingularMatrixError):
        return "singular", EXIT_SINGULAR
    if isinstance(exc, (ConvergenceDomainError, BranchCutError, OracleUnavailableError)):
        return "convergence", EXIT_CONVERGENCE
    return "internal", 1


def cmd_compute(args) -> int:
    timings: dict = {}
    t0 = time.perf_counter()
    b = load_matrix(args.matrix)
    annihilator = load_annihilator(args.annihilator) if args.annihilator else None
    timings["parse"] = (time.perf_counter() - t0) * 1e3

    t1 = time.perf_counter()
    report = principal_pth_root(
        b, args.p, annihilator=annihilator, scale=args.scale, cluster_tol=args.cluster_tol
    )
    timings["compute"] = (time.perf_counter() - t1) * 1e3

    t2 = time.perf_counter()
    report.input_digest = digest_matrix(b)
    report.oracle_deltas = _oracle_deltas(report, b, args)
    timings["verify"] = (time.perf_counter() - t2) * 1e3
    if args.timings:
        report.timings_ms = timings
    _emit(report.to_payload(), args.out)
    return EXIT_OK


def _oracle_deltas(report: RootReport, b: ComplexMatrix, args) -> dict | None:
    """Relative distances to every applicable requested oracle.

    An oracle whose own precondition fails is skipped (applicability is
    input-determined, so reports stay deterministic).
    """
    which = args.oracle
    if which == "none":
        return None
    deltas = {}
    x = report.root
    scale = max(1.0, frobenius_norm(x))
    if which in ("all", "series"):
        try:
            a = ComplexMatrix(np.eye(b.dim, dtype=np.complex128) - b.entries)
            approx, _ = series_root(a, args.p, 1.0, args.terms)
            deltas["series"] = (
                float(np.linalg.norm(x.entries - approx.entries, "fro")) / scale
            )
        except OracleUnavailableError:
            pass
    if which in ("all", "spectral"):
        try:
            approx = spectral_root(b, args.p)
            deltas["spectral"] = (
                float(np.linalg.norm(x.entries - approx.entries, "fro")) / scale
            )
        except OracleUnavailableError:
            pass
    return deltas or None


def cmd_enumerate(args) -> int:
    jf = load_jordan(args.jordan)
    roots = enumerate_primary_roots(jf, args.p, args.t)
    shifted = ComplexMatrix(
        np.eye(jf.dim, dtype=np.complex128) - args.t * jf.matrix().entries
    )
    digest = digest_matrix(jf.matrix())
    reports = []
    for bt, x in roots:
        reports.append(
            RootReport(
                p=args.p,
                branch=tuple(bt),
                root=x,
                residual=residual(x, shifted, args.p),
                sector_ok=eigenvalues_in_sector(x, args.p),
                formula_path="jordan-enumeration",
                input_digest=digest,
            ).to_payload()
        )
    _emit({"count": len(reports), "roots": reports}, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    x = load_matrix(args.root)
    b = load_matrix(args.matrix)
    res = residual(x, b, args.p)
    ok = res <= args.tol
    payload = {
        "root_digest": digest_matrix(x),
        "matrix_digest": digest_matrix(b),
        "p": args.p,
        "tol": float(args.tol),
        "residual": float(res),
        "pass": bool(ok),
    }
    _emit(payload, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_series(args) -> int:
    a = load_matrix(args.matrix)
    approx, tail = series_root(a, args.p, args.t, args.terms)
    payload = {
        "input_digest": digest_matrix(a),
        "p": args.p,
        "t": float(args.t),
        "terms": args.terms,
        "result": matrix_payload(approx),
        "tail_bound": float(tail),
    }
    _emit(payload, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pthroots",
        description="Matrix pth roots through recurrence closed forms, with oracle checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the report to a file instead of stdout")

    compute = sub.add_parser("compute", parents=[common], help="principal pth root of a matrix")
    compute.add_argument("matrix", help="matrix file (JSON)")
    compute.add_argument("--p", type=int, required=True, help="root order (>= 2)")
    compute.add_argument("--annihilator", metavar="PATH", help="explicit annihilator of I - B")
    compute.add_argument("--scale", action="store_true", help="enable spectrum pre-scaling")
    compute.add_argument("--oracle", choices=["all", "series", "spectral", "none"], default="all")
    compute.add_argument("--terms", type=int, default=5000, help="series-oracle term budget")
    compute.add_argument(
        "--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL, dest="cluster_tol"
    )
    compute.add_argument("--timings", action="store_true", help="include per-phase timings")
    compute.set_defaults(func=cmd_compute)

    enum = sub.add_parser(
        "enumerate", parents=[common], help="all primary pth roots of I - tA for Jordan-form A"
    )
    enum.add_argument("jordan", help="Jordan-form file (JSON)")
    enum.add_argument("--p", type=int, required=True)
    enum.add_argument("--t", type=float, default=1.0)
    enum.set_defaults(func=cmd_enumerate)

    verify = sub.add_parser("verify", parents=[common], help="check X^p = B at a tolerance")
    verify.add_argument("root", help="candidate root file (JSON)")
    verify.add_argument("matrix", help="matrix file (JSON)")
    verify.add_argument("--p", type=int, required=True)
    verify.add_argument("--tol", type=float, default=1e-9)
    verify.set_defaults(func=cmd_verify)

    series = sub.add_parser(
        "series", parents=[common], help="truncated series for (I - tA)^(1/p) with tail bound"
    )
    series.add_argument("matrix", help="matrix file for A (JSON)")
    series.add_argument("--p", type=int, required=True)
    series.add_argument("--t", type=float, default=1.0)
    series.add_argument("--terms", type=int, default=5000)
    series.set_defaults(func=cmd_series)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PthRootError as exc:
        kind, code = _classify(exc)
        sys.stdout.write(dumps_canonical(_error_payload(kind, exc)) + "\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
