"""Independent verification paths for computed roots.

Nothing here shares machinery with the closed-form engine: the truncated
binomial matrix series and the eigendecomposition route go through entirely
different arithmetic, so agreement between them and the engine is meaningful
evidence.
"""
from __future__ import annotations

import numpy as np

from .combinatorics import series_coefficients
from .engine import branch_power
from .errors import OracleUnavailableError
from .linalg import ComplexMatrix, frobenius_norm, mat_power
from .polynomials import DEFAULT_CLUSTER_TOL, cluster_points

SERIES_TERM_FLOOR = 1e-16


def series_root(a: ComplexMatrix, p: int, t: float, n_terms: int = 5000):
    """Truncated binomial series for (I - tA)^(1/p) with a rigorous tail bound.

    Applicable when |t| * ||A||_F < 1 (a stricter condition than the spectral
    one the closed forms use, which is the point: it makes the geometric tail
    bound valid). Exactly nilpotent matrices are accepted regardless, since
    their series terminates. Returns (partial sum, tail bound).
    """
    if p < 2:
        raise ValueError("p must be an integer >= 2")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    d = a.dim
    q = abs(t) * frobenius_norm(a)
    nilpotent = False
    if q >= 1.0:
        nilpotent = frobenius_norm(mat_power(a, d)) == 0.0
        if not nilpotent:
            raise OracleUnavailableError(
                f"|t|*||A||_F = {q:.6g} >= 1: series oracle inapplicable"
            )
    b = series_coefficients(p, n_terms).terms
    total = np.zeros((d, d), dtype=np.complex128)
    power = np.eye(d, dtype=np.complex128)
    t_pow = 1.0
    stop = n_terms
    for n in range(n_terms):
        term = b[n] * t_pow * power
        term_norm = float(np.linalg.norm(term, "fro"))
        if n > 0 and term_norm < SERIES_TERM_FLOOR:
            stop = n
            break
        total += term
        power = power @ a.entries
        t_pow *= t
    if nilpotent:
        tail = 0.0
    elif stop >= n_terms:
        tail = abs(b[n_terms - 1]) * q ** (n_terms - 1) / (1.0 - q)
    else:
        # |b_n| decreases for n >= 1, so the tail is at most a geometric series
        tail = abs(b[stop]) * q ** stop / (1.0 - q)
    return ComplexMatrix(total), float(tail)


def spectral_root(
    b: ComplexMatrix,
    p: int,
    branches=None,
    cond_threshold: float = 1e8,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> ComplexMatrix:
    """Eigendecomposition route: V diag(f_j(mu_i)) V^{-1}.

    `branches` selects one branch per distinct eigenvalue (eigenvalues are
    clustered with `cluster_tol` and ordered by (|z|, arg z), the same order
    the rest of the package uses); omitted means principal everywhere. An
    ill-conditioned eigenvector basis makes this oracle unavailable rather
    than silently inaccurate.
    """
    vals, vecs = np.linalg.eig(b.entries)
    cond = np.linalg.cond(vecs)
    if not np.isfinite(cond) or cond > cond_threshold:
        raise OracleUnavailableError(
            f"eigenvector basis condition {cond:.3g} exceeds {cond_threshold:.3g}"
        )
    centroids, _, assignment = cluster_points(vals, cluster_tol)
    if branches is None:
        branch_list = [0] * len(centroids)
    else:
        branch_list = list(branches)
        if len(branch_list) != len(centroids):
            raise ValueError(
                f"need one branch per distinct eigenvalue ({len(centroids)}), got {len(branch_list)}"
            )
    rooted = np.array(
        [branch_power(vals[i], p, branch_list[assignment[i]]) for i in range(len(vals))]
    )
    x = vecs @ np.diag(rooted)
    x = np.linalg.solve(vecs.T, x.T).T  # right-multiply by vecs^{-1}
    return ComplexMatrix(x)


def residual(x: ComplexMatrix, b: ComplexMatrix, p: int) -> float:
    """Relative defining-equation residual ||X^p - B||_F / max(1, ||B||_F)."""
    num = float(np.linalg.norm(mat_power(x, p).entries - b.entries, "fro"))
    return num / max(1.0, frobenius_norm(b))
