"""The Horner matrix system of an annihilator, the recurrence sequence u_n it
induces, and the basis changes between the two polynomial representations
of matrix powers.

With P(z) = z^r - a_0 z^{r-1} - ... - a_{r-1} annihilating A, the system
A_0 = I, A_{j+1} = A·A_j - a_j·I spans every power of A:

    A^n = u_n A_0 + u_{n-1} A_1 + ... + u_{n-r+1} A_{r-1}

where u_0 = 1, u_n = 0 for n < 0 and u_{n+1} = a_0 u_n + ... + a_{r-1} u_{n-r+1}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import binomial
from .errors import AnnihilatorError
from .linalg import ComplexMatrix
from .polynomials import MonicPolynomial, verify_annihilator


@dataclass(frozen=True)
class FibHornerBasis:
    """The matrices A_0..A_{r-1} of the Horner system for (A, P)."""

    source: ComplexMatrix
    poly: MonicPolynomial
    basis: tuple

    @property
    def r(self) -> int:
        return len(self.basis)

    def assemble(self, coefficients) -> ComplexMatrix:
        """Linear combination sum_s c_s A_s."""
        coeffs = np.asarray(coefficients, dtype=np.complex128)
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(coeffs)}")
        acc = np.zeros((self.source.dim, self.source.dim), dtype=np.complex128)
        for c, mat in zip(coeffs, self.basis):
            acc += c * mat.entries
        return ComplexMatrix(acc)


def build_basis(a: ComplexMatrix, poly: MonicPolynomial, tol: float = 1e-9) -> FibHornerBasis:
    """Construct the Horner system for `a`; `poly` must annihilate `a`."""
    if not verify_annihilator(poly, a, tol):
        raise AnnihilatorError("polynomial does not annihilate the matrix at the given tolerance")
    eye = np.eye(a.dim, dtype=np.complex128)
    mats = [ComplexMatrix(eye)]
    for j in range(poly.degree - 1):
        nxt = a.entries @ mats[-1].entries - poly.coeffs[j] * eye
        mats.append(ComplexMatrix(nxt))
    return FibHornerBasis(source=a, poly=poly, basis=tuple(mats))


class FibSequence:
    """Cached terms of the order-r recurrence attached to an annihilator.

    The cache grows on demand through `extend`; reads beyond the cache raise,
    so a sequence that has been pre-extended can be shared read-only between
    threads.
    """

    def __init__(self, poly: MonicPolynomial, n_max: int = 0):
        self.poly = poly
        self._values = [1.0 + 0j]  # u_0
        self.extend(n_max)

    @property
    def max_index(self) -> int:
        return len(self._values) - 1

    def extend(self, n_max: int) -> None:
        coeffs = self.poly.coeffs
        r = self.poly.degree
        while self.max_index < n_max:
            n = self.max_index  # compute u_{n+1}
            acc = 0.0 + 0j
            for s in range(r):
                k = n - s
                if k >= 0:
                    acc += coeffs[s] * self._values[k]
            self._values.append(acc)

    def u(self, n: int) -> complex:
        if n < 0:
            return 0.0 + 0j
        if n > self.max_index:
            raise ValueError(f"u_{n} not cached (have up to u_{self.max_index}); extend first")
        return self._values[n]


def fib_terms(poly: MonicPolynomial, n_max: int) -> FibSequence:
    """Sequence with u_0..u_{n_max} precomputed by the direct recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return FibSequence(poly, n_max)


def power_decomposition(basis: FibHornerBasis, seq: FibSequence, n: int) -> ComplexMatrix:
    """A^n reconstructed as sum_s u_{n-s} A_s (valid for every n >= 0)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > seq.max_index:
        raise ValueError(f"sequence cache exhausted at u_{seq.max_index}, need u_{n}")
    coeffs = [seq.u(n - s) for s in range(basis.r)]
    return basis.assemble(coeffs)


def horner_to_monomial(basis: FibHornerBasis, phi) -> np.ndarray:
    """Coefficients Omega with sum_s Omega_s A^s = sum_s phi_s A_s.

    Each A_s is the monic polynomial z^s - a_0 z^{s-1} - ... - a_{s-1} in A,
    so the change of basis is triangular with unit diagonal and exact.
    """
    phi = np.asarray(phi, dtype=np.complex128)
    r = basis.r
    if len(phi) != r:
        raise ValueError(f"expected {r} coefficients, got {len(phi)}")
    a = basis.poly.coeffs
    omega = np.zeros(r, dtype=np.complex128)
    for m in range(r):
        omega[m] = phi[m] - sum(a[s - 1 - m] * phi[s] for s in range(m + 1, r))
    return omega


def monomial_to_horner(basis: FibHornerBasis, omega) -> np.ndarray:
    """Inverse of `horner_to_monomial` (triangular back-substitution)."""
    omega = np.asarray(omega, dtype=np.complex128)
    r = basis.r
    if len(omega) != r:
        raise ValueError(f"expected {r} coefficients, got {len(omega)}")
    a = basis.poly.coeffs
    phi = np.zeros(r, dtype=np.complex128)
    for m in range(r - 1, -1, -1):
        phi[m] = omega[m] + sum(a[s - 1 - m] * phi[s] for s in range(m + 1, r))
    return phi


def substitute_one_minus(coeffs) -> np.ndarray:
    """Rewrite sum_s c_s z^s as sum_m d_m w^m under z = 1 - w.

    Used to express a polynomial in A as a polynomial in B when A = I - B.
    """
    c = np.asarray(coeffs, dtype=np.complex128)
    r = len(c)
    d = np.zeros(r, dtype=np.complex128)
    for m in range(r):
        d[m] = (-1) ** m * sum(binomial(s, m) * c[s] for s in range(m, r))
    return d
