"""Shared builders: exact golden matrices, seeded random generators, and the
high-precision finite-difference oracle for the t*d/dt operator."""
from fractions import Fraction

import mpmath as mp
import numpy as np

from pthroots import ComplexMatrix, JordanForm, Spectrum


def mat(rows) -> ComplexMatrix:
    """Matrix builder accepting fraction strings for exact binary64 entries."""
    def conv(x):
        if isinstance(x, str):
            return complex(Fraction(x))
        return complex(x)

    return ComplexMatrix.from_rows([[conv(x) for x in row] for row in rows])


def fro(arr) -> float:
    return float(np.linalg.norm(arr, "fro"))


# 2x2 square-root example: B with eigenvalues 1/2 and 2/3
B26 = mat([["1/6", -1], ["1/6", 1]])
A26 = mat([["5/6", 1], ["-1/6", 0]])

_S2, _S3 = np.sqrt(2.0), np.sqrt(3.0)
ROOT26 = _S2 * np.array(
    [[1.5 - 2 * _S3 / 3, 3 - 2 * _S3], [-0.5 + _S3 / 3, -1 + _S3]], dtype=complex
)

# 3x3 example with a single eigenvalue 1/2 of chain length 2
B_SINGLE = mat(
    [["10/6", "-2/3", "-1/3"], ["7/12", "1/6", "-1/6"], ["35/12", "-5/3", "-1/3"]]
)

# 3x3 cube-root example: annihilator (z - 1/2)^2 (z - 2/3)
B35 = mat([["3/4", 1, -1], ["1/24", "1/2", "-1/6"], ["5/48", "1/4", "1/12"]])

# 4x4 fourth-root example: annihilator (z - 1/2)^2 (z - 3/4)^2
B38 = mat(
    [
        ["3/4", 7, -1, "-3/2"],
        [0, 0, 0, "1/8"],
        ["1/8", "15/4", 0, "-7/8"],
        [0, -1, 0, "3/4"],
    ]
)

# Jordan data for the two enumeration examples (describing A = I - B)
JF44 = JordanForm.from_blocks([(Fraction(1, 3), [2]), (Fraction(2, 3), [2])])
JF46 = JordanForm.from_blocks(
    [(Fraction(1, 2), [2]), (Fraction(1, 3), [2]), (Fraction(1, 4), [1])]
)


def printed_roots_44():
    """The four printed square roots of the 4x4 block example."""
    r23, r32, s3 = np.sqrt(2 / 3), np.sqrt(3 / 2), np.sqrt(3.0)
    out = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            x = np.zeros((4, 4), dtype=complex)
            x[0, 0] = x[1, 1] = s1 * r23
            x[0, 1] = -s1 * 0.5 * r32
            x[2, 2] = x[3, 3] = s2 * s3 / 3
            x[2, 3] = -s2 * s3 / 2
            out.append(x)
    return out


def printed_roots_46():
    """The eight printed square roots of the 5x5 block example."""
    out = []
    for j1 in (0, 1):
        for j2 in (0, 1):
            for j3 in (0, 1):
                e1, e2, e3 = (-1.0) ** j1, (-1.0) ** j2, (-1.0) ** j3
                x = np.zeros((5, 5), dtype=complex)
                x[0, 0] = x[1, 1] = e1 * np.sqrt(2) / 2
                x[0, 1] = -e1 * np.sqrt(2) / 2
                x[2, 2] = x[3, 3] = e2 * np.sqrt(2 / 3)
                x[2, 3] = -e2 * 0.5 * np.sqrt(3 / 2)
                x[4, 4] = e3 * np.sqrt(3 / 4)
                out.append(x)
    return out


def fd_degree_operator(lam, p, k, t, h="1e-5"):
    """Independent oracle: k nested central differences of t*d/dt applied to
    the principal branch power, evaluated at 40 decimal digits so the stencil
    noise stays far below the truncation error."""
    mp.mp.dps = 40
    lam_mp = mp.mpc(lam)
    step = mp.mpf(h)

    def f(x):
        return (1 - lam_mp * x) ** (mp.mpf(1) / p)

    g = f
    for _ in range(k):
        def g(x, inner=g):
            return x * (inner(x + step) - inner(x - step)) / (2 * step)

    return complex(g(mp.mpf(t)))


def random_complex_matrix(rng, dim, scale=0.5) -> ComplexMatrix:
    entries = scale * (rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim)))
    return ComplexMatrix(entries)


def random_separated_points(rng, count, radius=0.9, min_abs=0.15, min_sep=0.2):
    """Complex points with moduli in [min_abs, radius], pairwise min_sep apart."""
    points = []
    while len(points) < count:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if not min_abs <= abs(z) <= radius:
            continue
        if all(abs(z - w) >= min_sep for w in points):
            points.append(z)
    return points


def random_spectrum(rng, max_roots=3, max_mult=3, radius=0.95, min_sep=0.15) -> Spectrum:
    l = int(rng.integers(1, max_roots + 1))
    roots = random_separated_points(rng, l, radius=radius, min_sep=min_sep)
    mults = [int(rng.integers(1, max_mult + 1)) for _ in range(l)]
    return Spectrum.from_pairs(zip(roots, mults))


def random_unitary(rng, dim) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_diagonalizable(rng, dim, radius=0.9, min_sep=0.2):
    """(matrix, eigenvalues) with a unitary eigenbasis and separated spectrum."""
    lams = random_separated_points(rng, dim, radius=radius, min_sep=min_sep)
    q = random_unitary(rng, dim)
    a = q @ np.diag(lams) @ q.conj().T
    return ComplexMatrix(a), lams


def random_jordan(rng, max_groups=3, max_dim=8) -> JordanForm:
    l = int(rng.integers(1, max_groups + 1))
    lams = random_separated_points(rng, l, radius=1.4, min_abs=0.3, min_sep=0.4)
    groups = []
    remaining = max_dim - l  # reserve one dimension per group
    for k in range(l):
        sizes = [1]
        budget = remaining if k == l - 1 else int(rng.integers(0, remaining + 1))
        while budget > 0:
            grow = int(rng.integers(1, min(3, budget) + 1))
            if rng.uniform() < 0.5 and len(sizes) < 3:
                sizes.append(grow)
            else:
                sizes[0] += grow
            budget -= grow
        remaining -= sum(sizes) - 1
        groups.append((lams[k], sizes))
    return JordanForm.from_blocks(groups)
