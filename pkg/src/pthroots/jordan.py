"""Enumeration of all primary pth roots for matrices in Jordan canonical form.

For A given as a direct sum of Jordan structures (one group per distinct
eigenvalue), the pth roots of I - tA that are polynomials in the matrix are
indexed by one branch choice per eigenvalue. Each root is assembled from the
single-eigenvalue coefficient functions, block indicator matrices, and the
closed polynomial form of the blockwise nilpotent powers.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import product

import numpy as np

from .combinatorics import binomial, compositions
from .engine import branch_factor, root_coeffs_single
from .errors import BranchCutError, SingularMatrixError
from .linalg import ComplexMatrix


@dataclass(frozen=True)
class JordanForm:
    """Jordan data: one (eigenvalue, block-size partition) group per eigenvalue.

    The assembled matrix lays the groups out in the given order, each group
    being the direct sum of its Jordan blocks (superdiagonal 1 convention).
    Eigenvalues must be pairwise distinct and nonzero.
    """

    blocks: tuple

    def __post_init__(self):
        norm = []
        for lam, sizes in self.blocks:
            sizes = tuple(int(s) for s in sizes)
            if not sizes or any(s < 1 for s in sizes):
                raise ValueError("block sizes must be positive integers")
            norm.append((complex(lam), sizes))
        if not norm:
            raise ValueError("need at least one eigenvalue group")
        for lam, _ in norm:
            if lam == 0:
                raise SingularMatrixError("zero eigenvalue: Jordan input must be nonsingular")
        for i in range(len(norm)):
            for j in range(i + 1, len(norm)):
                if norm[i][0] == norm[j][0]:
                    raise ValueError("eigenvalue groups must be pairwise distinct")
        object.__setattr__(self, "blocks", tuple(norm))

    @classmethod
    def from_blocks(cls, groups) -> "JordanForm":
        return cls(tuple((lam, tuple(sizes)) for lam, sizes in groups))

    @property
    def l(self) -> int:
        return len(self.blocks)

    @property
    def eigenvalues(self) -> tuple:
        return tuple(lam for lam, _ in self.blocks)

    @property
    def dim(self) -> int:
        return sum(sum(sizes) for _, sizes in self.blocks)

    def group_dim(self, k: int) -> int:
        return sum(self.blocks[k][1])

    def chain_length(self, k: int) -> int:
        """Largest Jordan block size for eigenvalue k (its nilpotency index)."""
        return max(self.blocks[k][1])

    def group_offset(self, k: int) -> int:
        return sum(self.group_dim(i) for i in range(k))

    def matrix(self) -> ComplexMatrix:
        d = self.dim
        out = np.zeros((d, d), dtype=np.complex128)
        pos = 0
        for lam, sizes in self.blocks:
            for size in sizes:
                for i in range(size):
                    out[pos + i, pos + i] = lam
                    if i + 1 < size:
                        out[pos + i, pos + i + 1] = 1.0
                pos += size
        return ComplexMatrix(out)

    def block_indicator(self, k: int) -> np.ndarray:
        """Identity on eigenvalue group k, zero elsewhere."""
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        off = self.group_offset(k)
        for i in range(self.group_dim(k)):
            out[off + i, off + i] = 1.0
        return out


@dataclass(frozen=True)
class BranchTuple:
    """One branch index per distinct eigenvalue, each in 0..p-1."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(j) for j in self.entries))
        if any(j < 0 for j in self.entries):
            raise ValueError("branch indices must be nonnegative")

    def validate(self, p: int) -> None:
        if any(j >= p for j in self.entries):
            raise ValueError(f"branch indices must stay below p={p}")

    @property
    def is_principal(self) -> bool:
        return all(j == 0 for j in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def projector_expansion_coeffs(jf: JordanForm, k: int, count: int | None = None) -> np.ndarray:
    """Taylor coefficients inverting the cross-eigenvalue factor at eigenvalue k.

    Coefficient i sums, over the ways to split i among the other eigenvalues,
    the products C(m_t + h_t - 1, h_t) (lam_k - lam_t)^{-h_t}, with sign
    (-1)^i. They match the expansion of prod (z - lam_t)^{-m_t} normalized at
    z = lam_k, which is the independent check used in tests.
    """
    if not 0 <= k < jf.l:
        raise ValueError(f"eigenvalue index {k} out of range")
    if count is None:
        count = jf.chain_length(k)
    lam_k = jf.eigenvalues[k]
    others = [t for t in range(jf.l) if t != k]
    out = np.zeros(count, dtype=np.complex128)
    for i in range(count):
        acc = 0.0 + 0j
        for combo in compositions(i, len(others)):
            prod = 1.0 + 0j
            for t, h_t in zip(others, combo):
                m_t = jf.chain_length(t)
                prod *= binomial(m_t + h_t - 1, h_t) * (lam_k - jf.eigenvalues[t]) ** (-h_t)
            acc += prod
        out[i] = (-1) ** i * acc
    return out


def projector_power(jf: JordanForm, k: int, eta: int) -> ComplexMatrix:
    """The eta-th power of the nilpotent part of eigenvalue group k, embedded.

    Computed as a polynomial in the full matrix: the product over other
    eigenvalues of (A - lam_t I)^{m_t} / (lam_k - lam_t)^{m_t} annihilates
    every foreign group, and the expansion-coefficient sum undoes its action
    on group k up to the nilpotency order. eta at or past the chain length
    gives the zero matrix; eta = 0 gives the group indicator (the spectral
    projector).
    """
    if not 0 <= k < jf.l:
        raise ValueError(f"eigenvalue index {k} out of range")
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    d = jf.dim
    m_k = jf.chain_length(k)
    if eta >= m_k:
        return ComplexMatrix.zero(d)
    a = jf.matrix().entries
    eye = np.eye(d, dtype=np.complex128)
    lam_k = jf.eigenvalues[k]

    prefactor = eye
    for t in range(jf.l):
        if t == k:
            continue
        m_t = jf.chain_length(t)
        shifted = a - jf.eigenvalues[t] * eye
        prefactor = prefactor @ np.linalg.matrix_power(shifted, m_t)
        prefactor /= (lam_k - jf.eigenvalues[t]) ** m_t

    alphas = projector_expansion_coeffs(jf, k, m_k - eta)
    n_k = a - lam_k * eye
    nil_pow = np.linalg.matrix_power(n_k, eta)
    series = np.zeros((d, d), dtype=np.complex128)
    for i, alpha in enumerate(alphas):
        series += alpha * nil_pow
        nil_pow = nil_pow @ n_k
    return ComplexMatrix(prefactor @ series)


def _group_coefficients(lam: complex, m: int, p: int, t: float) -> np.ndarray:
    """Scalar weights of [indicator, nilpotent^1, ..., nilpotent^(m-1)] for one group.

    Collapses the Horner-system expansion of the group's root onto powers of
    the nilpotent part: the group basis elements are re-expanded around
    lam via the binomial theorem, with b_l = C(m, l) (-lam)^l carrying the
    annihilator (z - lam)^m.
    """
    phi = root_coeffs_single(lam, m, p, t, enforce_disk=False).values
    b = np.array([binomial(m, l) * (-lam) ** l for l in range(m)], dtype=np.complex128)
    out = np.zeros(m, dtype=np.complex128)
    out[0] = phi[0] + sum(
        phi[tau] * sum(b[l] * lam ** (tau - l) for l in range(tau + 1)) for tau in range(1, m)
    )
    for eta in range(1, m):
        acc = 0.0 + 0j
        for tau in range(1, m):
            for l in range(tau):
                if tau - l >= eta:
                    acc += phi[tau] * b[l] * binomial(tau - l, eta) * lam ** (tau - l - eta)
        out[eta] = acc
    return out


def _check_branch_domain(jf: JordanForm, t: float) -> None:
    for lam in jf.eigenvalues:
        z = 1.0 - lam * t
        if z == 0:
            raise SingularMatrixError(f"I - tA is singular at eigenvalue {lam}")
        if z.imag == 0.0 and z.real < 0.0:
            raise BranchCutError(
                f"1 - t*eig = {z} lies on the negative real axis for eigenvalue {lam}"
            )


def enumerate_primary_roots(
    jf: JordanForm, p: int, t: float = 1.0, similarity: ComplexMatrix | None = None
):
    """All p^l primary pth roots of I - tA for Jordan-form A.

    Returns (branch tuple, root) pairs in lexicographic branch order; entry k
    of a branch tuple selects the root branch used on eigenvalue group k.
    Each eigenvalue needs 1 - t*lam off the closed negative real axis (inside
    the unit disk |t*lam| < 1 this always holds, but the closed forms remain
    valid on the larger cut domain and are accepted there).

    With `similarity` S, the enumerated roots are conjugated to S X S^{-1},
    covering inputs given as A = S J S^{-1}.
    """
    if p < 2:
        raise ValueError("p must be an integer >= 2")
    _check_branch_domain(jf, t)
    d = jf.dim
    contributions = []
    for k in range(jf.l):
        lam = jf.eigenvalues[k]
        m_k = jf.chain_length(k)
        weights = _group_coefficients(lam, m_k, p, t)
        term = weights[0] * jf.block_indicator(k)
        for eta in range(1, m_k):
            term = term + weights[eta] * projector_power(jf, k, eta).entries
        contributions.append(term)

    if similarity is not None:
        if similarity.dim != d:
            raise ValueError("similarity transform has wrong dimension")
        s = similarity.entries
        s_inv = np.linalg.solve(s, np.eye(d, dtype=np.complex128))
        contributions = [s @ c @ s_inv for c in contributions]

    out = []
    for combo in product(range(p), repeat=jf.l):
        x = np.zeros((d, d), dtype=np.complex128)
        for k, j_k in enumerate(combo):
            x = x + branch_factor(p, j_k) * contributions[k]
        out.append((BranchTuple(combo), ComplexMatrix(x)))
    return out


def principal_from_enumeration(roots) -> ComplexMatrix:
    """The entry carrying the all-zero branch tuple."""
    for bt, x in roots:
        if bt.is_principal:
            return x
    raise ValueError("no principal (all-zero) branch tuple in the enumeration")
