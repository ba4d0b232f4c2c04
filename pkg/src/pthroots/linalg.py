"""Dense complex square-matrix arithmetic underpinning every other module.

Matrices are immutable value objects backed by ``numpy`` complex128 arrays.
All shapes of interest are small (d up to a few dozen), so everything is
dense and no decomposition machinery lives here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import DimensionMismatchError

if TYPE_CHECKING:  # pragma: no cover
    from .polynomials import MonicPolynomial


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """A square matrix of complex binary64 scalars.

    Entries are validated to be finite and the backing array is frozen, so
    instances can be shared freely between threads.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise DimensionMismatchError("matrix dimension must be positive")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[complex]]) -> "ComplexMatrix":
        return cls(np.array([[complex(x) for x in row] for row in rows]))

    @classmethod
    def identity(cls, dim: int) -> "ComplexMatrix":
        return cls(np.eye(dim, dtype=np.complex128))

    @classmethod
    def zero(cls, dim: int) -> "ComplexMatrix":
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __repr__(self):
        return f"ComplexMatrix(dim={self.dim})"


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product a·b; both operands must share the same dimension."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    return ComplexMatrix(a.entries @ b.entries)


def mat_power(a: ComplexMatrix, n: int) -> ComplexMatrix:
    """a**n for n >= 0 by repeated squaring; a**0 is the identity."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result = np.eye(a.dim, dtype=np.complex128)
    base = a.entries
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return ComplexMatrix(result)


def poly_eval_matrix(p: "MonicPolynomial", a: ComplexMatrix) -> ComplexMatrix:
    """Evaluate P(A) = A^r - a_0 A^{r-1} - ... - a_{r-1} I.

    Horner form: H_0 = I, H_{j+1} = A·H_j - a_j·I, so H_r = P(A).
    """
    eye = np.eye(a.dim, dtype=np.complex128)
    h = eye
    for coeff in p.coeffs:
        h = a.entries @ h - coeff * eye
    return ComplexMatrix(h)


def frobenius_norm(a: ComplexMatrix) -> float:
    return float(np.linalg.norm(a.entries, "fro"))


def rel_distance(x: ComplexMatrix, reference: ComplexMatrix) -> float:
    """Frobenius distance relative to max(1, ||reference||_F)."""
    num = float(np.linalg.norm(x.entries - reference.entries, "fro"))
    return num / max(1.0, frobenius_norm(reference))
