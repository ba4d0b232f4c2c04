"""Result records for computed roots, plus deterministic JSON rendering.

Reports are rendered with a fixed field order and floats printed at 17
significant digits, so identical inputs produce byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import ComplexMatrix


@dataclass
class RootReport:
    """One computed root with its verification data.

    `residual` is the relative defining-equation residual
    ||X^p - B||_F / max(1, ||B||_F). `branch` is "principal" or the tuple of
    per-eigenvalue branch indices. `oracle_deltas` maps oracle names to the
    relative distance between the root and that oracle's result.
    """

    p: int
    branch: object
    root: ComplexMatrix
    residual: float
    sector_ok: bool
    formula_path: str
    input_digest: str | None = None
    oracle_deltas: dict | None = None
    timings_ms: dict | None = field(default=None, repr=False)

    def to_payload(self) -> dict:
        payload = {
            "input_digest": self.input_digest,
            "p": self.p,
            "branch": list(self.branch) if isinstance(self.branch, tuple) else self.branch,
            "formula_path": self.formula_path,
            "root": matrix_payload(self.root),
            "residual": float(self.residual),
            "sector_ok": bool(self.sector_ok),
        }
        if self.oracle_deltas is not None:
            payload["oracle_deltas"] = {k: float(v) for k, v in sorted(self.oracle_deltas.items())}
        if self.timings_ms is not None:
            payload["timings_ms"] = {k: float(v) for k, v in self.timings_ms.items()}
        return payload


def matrix_payload(m: ComplexMatrix) -> dict:
    data = [[float(z.real), float(z.imag)] for z in np.ravel(m.entries)]
    return {"dim": m.dim, "data": data}


def _format_float(x: float) -> str:
    # %.17g is lossless for binary64 and stable across runs
    return f"{float(x):.17g}"


def dumps_canonical(obj, indent: int = 0) -> str:
    """JSON text with deterministic float formatting (17 significant digits)."""
    pad = " " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {dumps_canonical(v, indent + 2)}" for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        flat = all(isinstance(v, (int, float, str, bool)) or v is None for v in obj)
        if flat:
            return "[" + ", ".join(dumps_canonical(v) for v in obj) + "]"
        items = ",\n".join(f"{pad}  {dumps_canonical(v, indent + 2)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def digest_matrix(m: ComplexMatrix) -> str:
    """Content hash of a matrix, independent of source-file formatting."""
    parts = [str(m.dim)]
    for z in np.ravel(m.entries):
        parts.append(_format_float(z.real))
        parts.append(_format_float(z.imag))
    return hashlib.sha256(";".join(parts).encode()).hexdigest()


def digest_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
