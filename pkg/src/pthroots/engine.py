"""Closed-form evaluation of (I - tA)^(1/p) and principal matrix pth roots.

The coefficient functions that weight the Horner system come in four paths:
a general one driven by the closed-form recurrence coefficients, and three
specialized shapes (single eigenvalue, one simple plus one repeated, two
repeated). All paths must agree wherever they overlap; the dispatcher picks
the most specialized one that fits the spectrum.

Repeated eigenvalues contribute derivative terms through the operator
D = t d/dt, whose powers on branch powers have exact polynomial form:
D^k (1 - lam t)^(1/p) = P_k(t) (1 - lam t)^(1/p - k).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .binet import BinetCoefficients, binet_coefficients
from .combinatorics import StirlingTable, binomial, stirling_first_kind
from .errors import (
    AnnihilatorError,
    BranchCutError,
    ConvergenceDomainError,
    SingularMatrixError,
)
from .horner import FibHornerBasis, build_basis
from .linalg import ComplexMatrix, frobenius_norm, mat_power
from .polynomials import (
    DEFAULT_CLUSTER_TOL,
    MonicPolynomial,
    Spectrum,
    characteristic_polynomial,
    find_spectrum,
    verify_annihilator,
)
from .reports import RootReport

SECTOR_SLACK = 1e-10


def branch_factor(p: int, branch: int) -> complex:
    return cmath.exp(2j * cmath.pi * branch / p)


def _check_branch_args(p: int, branch: int) -> None:
    if p < 2:
        raise ValueError("p must be an integer >= 2")
    if not 0 <= branch < p:
        raise ValueError(f"branch index {branch} outside 0..{p - 1}")


def branch_power(z: complex, p: int, branch: int = 0) -> complex:
    """The branch-j pth root |z|^(1/p) exp(i(arg z + 2 pi j)/p), principal arg.

    Requests on the closed negative real axis are rejected for the principal
    branch (and z = 0 always), since continuity of the principal root breaks
    there.
    """
    _check_branch_args(p, branch)
    z = complex(z)
    if z == 0:
        raise BranchCutError("fractional power at zero")
    if branch == 0 and z.imag == 0.0 and z.real < 0.0:
        raise BranchCutError(f"principal branch requested on the negative real axis (z={z})")
    return cmath.exp(cmath.log(z) / p) * branch_factor(p, branch)


@dataclass(frozen=True)
class BranchedPower:
    """One branch of z -> (1 - lam t)^(1/p), evaluated along real t."""

    lam: complex
    p: int
    branch: int

    def evaluate(self, t: float) -> complex:
        return branch_power(1.0 - self.lam * t, self.p, self.branch)


class DegreeOperatorPolys:
    """Polynomials P_k with (t d/dt)^k (1 - lam t)^(1/p) = P_k(t) (1-lam t)^(1/p-k).

    Grown on demand from P_0 = 1 via
    P_{k+1} = t (1 - lam t) P_k' + lam (p k - 1)/p * t * P_k.
    Coefficient arrays are ascending in t.
    """

    def __init__(self, lam: complex, p: int):
        if p < 2:
            raise ValueError("p must be an integer >= 2")
        self.lam = complex(lam)
        self.p = int(p)
        self._polys = [np.array([1.0 + 0j])]

    def poly(self, k: int) -> np.ndarray:
        if k < 0:
            raise ValueError("operator power must be nonnegative")
        while len(self._polys) <= k:
            j = len(self._polys) - 1
            cur = self._polys[-1]
            deriv = cur[1:] * np.arange(1, len(cur))
            t_deriv = np.concatenate(([0.0 + 0j], deriv))  # t * P'
            part1 = np.concatenate((t_deriv, [0.0 + 0j]))
            part1[1:] -= self.lam * t_deriv  # (1 - lam t) * (t P')
            part2 = np.zeros(len(cur) + 1, dtype=np.complex128)
            part2[1:] = (self.lam * (self.p * j - 1) / self.p) * cur
            self._polys.append(part1 + part2)
        return self._polys[k]

    def eval(self, k: int, t: float) -> complex:
        acc = 0.0 + 0j
        for c in self.poly(k)[::-1]:
            acc = acc * t + c
        return acc


def apply_degree_operator(lam: complex, p: int, k: int, t: float, branch: int = 0) -> complex:
    """D^k applied to the branch power of (1 - lam t), evaluated at t.

    k = 0 is the plain branch power. For k >= 1 the exact polynomial form is
    used, never numeric differentiation.
    """
    if k == 0:
        return branch_power(1.0 - complex(lam) * t, p, branch)
    polys = DegreeOperatorPolys(lam, p)
    return _d_table(polys, t, k, branch)[k]


def _d_table(polys: DegreeOperatorPolys, t: float, kmax: int, branch: int = 0) -> list:
    """Values of D^0..D^kmax on the branch power at t."""
    z = 1.0 - polys.lam * t
    base = branch_power(z, polys.p, branch)
    out = [base]
    zk = 1.0 + 0j
    for k in range(1, kmax + 1):
        zk /= z
        out.append(polys.eval(k, t) * base * zk)
    return out


@dataclass(frozen=True)
class RootCoeffs:
    """Coefficients of the Horner-system expansion of (I - tA)^(1/p).

    `path` records which formula family produced them: general, single-root,
    simple-plus-multiple, or two-multiple.
    """

    t: float
    values: np.ndarray
    path: str


def _require_disk(t: float, radius: float, what: str) -> None:
    if abs(t) * radius >= 1.0:
        raise ConvergenceDomainError(
            f"|t|*rho = {abs(t) * radius:.6g} >= 1: {what} outside the convergence disk",
            spectral_radius=radius,
        )


def root_coeffs_general(bc: BinetCoefficients, p: int, t: float) -> RootCoeffs:
    """Coefficient functions for an arbitrary spectrum.

    The multiplicity-free part weights each branch power by the closed-form
    base coefficients; repeated roots add D^k corrections. Empty simple or
    multiple index sets contribute nothing.
    """
    spec = bc.spectrum
    _require_disk(t, spec.spectral_radius, "spectrum")
    r = spec.r
    tables = [
        _d_table(DegreeOperatorPolys(lam, p), t, spec.mults[i] - 1)
        for i, lam in enumerate(spec.roots)
    ]
    values = np.zeros(r, dtype=np.complex128)
    values[0] = sum(bc.base_coeffs[i] * tables[i][0] for i in range(spec.l))
    values[0] += sum(
        bc.nj_coeffs[i][j] * tables[i][j]
        for i in spec.multiple
        for j in range(1, spec.mults[i])
    )
    for s in range(1, r):
        phi = sum(
            bc.base_coeffs[i] / spec.roots[i] ** s * tables[i][0] for i in range(spec.l)
        )
        phi += _psi_direct(bc, tables, s)
        values[s] = phi
    return RootCoeffs(t=t, values=values, path="general")


def _psi_direct(bc: BinetCoefficients, tables, s: int) -> complex:
    """Multiplicity correction for s >= 1, summed term by term."""
    spec = bc.spectrum
    acc = 0.0 + 0j
    for i in spec.multiple:
        lam_s = spec.roots[i] ** s
        for j in range(1, spec.mults[i]):
            for k in range(j + 1):
                acc += (
                    bc.nj_coeffs[i][j]
                    / lam_s
                    * binomial(j, k)
                    * (-s) ** (j - k)
                    * tables[i][k]
                )
    return acc


def _psi_collected(bc: BinetCoefficients, tables, s: int) -> complex:
    """Same correction, but with operator coefficients collected per D^k first."""
    spec = bc.spectrum
    acc = 0.0 + 0j
    for i in spec.multiple:
        m = spec.mults[i]
        lam_s = spec.roots[i] ** s
        for k in range(m):
            w = sum(
                bc.nj_coeffs[i][j] * binomial(j, k) * (-s) ** (j - k)
                for j in range(max(1, k), m)
            )
            acc += w / lam_s * tables[i][k]
    return acc


def psi_coefficient(bc: BinetCoefficients, p: int, t: float, s: int, collected: bool = False) -> complex:
    """The repeated-root part of coefficient s >= 1, in either summation order."""
    if s < 1:
        raise ValueError("defined for s >= 1")
    spec = bc.spectrum
    tables = [
        _d_table(DegreeOperatorPolys(lam, p), t, spec.mults[i] - 1)
        for i, lam in enumerate(spec.roots)
    ]
    return (_psi_collected if collected else _psi_direct)(bc, tables, s)


def single_root_weights(mult: int, stirling: StirlingTable | None = None) -> np.ndarray:
    """Closed-form coefficients for one eigenvalue of multiplicity `mult`.

    C_j = sum_{h=j}^{m-1} C(m-1, h) S_{h,j} / h!; C_0 is always 1.
    """
    if stirling is None:
        stirling = stirling_first_kind(mult - 1)
    import math

    c = np.zeros(mult, dtype=np.complex128)
    for j in range(mult):
        c[j] = sum(
            binomial(mult - 1, h) * stirling.value(h, j) / math.factorial(h)
            for h in range(j, mult)
        )
    return c


def root_coeffs_single(
    lam: complex,
    mult: int,
    p: int,
    t: float,
    stirling: StirlingTable | None = None,
    enforce_disk: bool = True,
) -> RootCoeffs:
    """Fast path for an annihilator with a single root of multiplicity `mult`."""
    lam = complex(lam)
    if mult < 1:
        raise ValueError("multiplicity must be positive")
    if enforce_disk:
        _require_disk(t, abs(lam), f"eigenvalue {lam}")
    c = single_root_weights(mult, stirling)
    tables = _d_table(DegreeOperatorPolys(lam, p), t, mult - 1)
    values = np.zeros(mult, dtype=np.complex128)
    values[0] = tables[0] + sum(c[j] * tables[j] for j in range(1, mult))
    for s in range(1, mult):
        acc = tables[0] / lam ** s
        for j in range(1, mult):
            for k in range(j + 1):
                acc += c[j] / lam ** s * (-s) ** (j - k) * binomial(j, k) * tables[k]
        values[s] = acc
    return RootCoeffs(t=t, values=values, path="single-root")


def root_coeffs_mixed(
    spectrum: Spectrum,
    p: int,
    t: float,
    stirling: StirlingTable | None = None,
) -> RootCoeffs:
    """Fast paths for two-root annihilators.

    One simple root plus one repeated root uses the superposition with the
    product-formula weight on the simple side; two repeated roots superpose
    two single-root corrections. A one-root spectrum degenerates to the
    single-root path.
    """
    if spectrum.l == 1:
        return root_coeffs_single(
            spectrum.roots[0], spectrum.mults[0], p, t, stirling
        )
    if spectrum.l != 2:
        raise ValueError("mixed path handles at most two distinct roots")
    _require_disk(t, spectrum.spectral_radius, "spectrum")
    bc = binet_coefficients(spectrum, stirling)
    r = spectrum.r
    tables = [
        _d_table(DegreeOperatorPolys(lam, p), t, spectrum.mults[i] - 1)
        for i, lam in enumerate(spectrum.roots)
    ]
    values = np.zeros(r, dtype=np.complex128)
    if min(spectrum.mults) >= 2:
        path = "two-multiple"
        values[0] = sum(
            bc.nj_coeffs[i][j] * tables[i][j]
            for i in range(2)
            for j in range(spectrum.mults[i])
        )
        for s in range(1, r):
            acc = sum(
                bc.nj_coeffs[i][0] / spectrum.roots[i] ** s * tables[i][0] for i in range(2)
            )
            for i in range(2):
                lam_s = spectrum.roots[i] ** s
                for j in range(1, spectrum.mults[i]):
                    for k in range(j + 1):
                        acc += (
                            bc.nj_coeffs[i][j]
                            / lam_s
                            * binomial(j, k)
                            * (-s) ** (j - k)
                            * tables[i][k]
                        )
            values[s] = acc
    else:
        path = "simple-plus-multiple"
        i_mu = spectrum.simple[0]
        i_lam = 1 - i_mu
        mu = spectrum.roots[i_mu]
        lam = spectrum.roots[i_lam]
        m = spectrum.mults[i_lam]
        c_mu = bc.base_coeffs[i_mu]
        c_lam = bc.nj_coeffs[i_lam]
        values[0] = c_mu * tables[i_mu][0] + sum(c_lam[j] * tables[i_lam][j] for j in range(m))
        for s in range(1, r):
            acc = c_mu / mu ** s * tables[i_mu][0]
            for j in range(m):
                for k in range(j + 1):
                    acc += (
                        c_lam[j]
                        / lam ** s
                        * (-s) ** (j - k)
                        * binomial(j, k)
                        * tables[i_lam][k]
                    )
            values[s] = acc
    return RootCoeffs(t=t, values=values, path=path)


def dispatch_root_coeffs(spectrum: Spectrum, p: int, t: float) -> RootCoeffs:
    """Pick the most specialized coefficient path the spectrum admits."""
    if spectrum.l == 1:
        return root_coeffs_single(spectrum.roots[0], spectrum.mults[0], p, t)
    if spectrum.l == 2:
        return root_coeffs_mixed(spectrum, p, t)
    return root_coeffs_general(binet_coefficients(spectrum), p, t)


@dataclass(frozen=True)
class ShiftedRootResult:
    matrix: ComplexMatrix
    coeffs: RootCoeffs
    basis: FibHornerBasis
    spectrum: Spectrum


def shifted_root_detail(
    a: ComplexMatrix,
    p: int,
    t: float,
    annihilator: MonicPolynomial | None = None,
    spectrum: Spectrum | None = None,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> ShiftedRootResult:
    """(I - tA)^(1/p) together with the data used to assemble it."""
    if annihilator is not None:
        if not verify_annihilator(annihilator, a):
            raise AnnihilatorError("supplied polynomial does not annihilate the matrix")
        poly = annihilator
    else:
        poly = characteristic_polynomial(a)
    if spectrum is None:
        spectrum = find_spectrum(poly, cluster_tol)
    if spectrum.r != poly.degree:
        raise ValueError(
            f"spectrum multiplicities sum to {spectrum.r}, annihilator degree is {poly.degree}"
        )
    coeffs = dispatch_root_coeffs(spectrum, p, t)
    basis = build_basis(a, poly)
    return ShiftedRootResult(
        matrix=basis.assemble(coeffs.values), coeffs=coeffs, basis=basis, spectrum=spectrum
    )


def pth_root_of_shifted(
    a: ComplexMatrix,
    p: int,
    t: float,
    annihilator: MonicPolynomial | None = None,
    spectrum: Spectrum | None = None,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> ComplexMatrix:
    """Assemble (I - tA)^(1/p) from the best-matching coefficient path."""
    return shifted_root_detail(a, p, t, annihilator, spectrum, cluster_tol).matrix


def eigenvalues_in_sector(x: ComplexMatrix, p: int, slack: float = SECTOR_SLACK) -> bool:
    """True when every eigenvalue of x satisfies |arg z| < pi/p + slack."""
    vals = np.linalg.eigvals(x.entries)
    return bool(np.all(np.abs(np.angle(vals)) < np.pi / p + slack))


def _defining_residual(x: ComplexMatrix, b: ComplexMatrix, p: int) -> float:
    num = frobenius_norm(ComplexMatrix(mat_power(x, p).entries - b.entries))
    return num / max(1.0, frobenius_norm(b))


def principal_pth_root(
    b: ComplexMatrix,
    p: int,
    annihilator: MonicPolynomial | None = None,
    spectrum: Spectrum | None = None,
    scale: bool = False,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> RootReport:
    """Principal pth root of a nonsingular matrix whose spectrum permits it.

    Sets A = I - B and evaluates the closed forms at t = 1, which requires
    every eigenvalue of B inside the open unit disk around 1. With `scale`
    enabled, inputs violating that are first divided by the magnitude of
    their mean eigenvalue and the root is rescaled by the positive real pth
    root afterwards; the report's formula path records the rescue.

    `annihilator` and `spectrum`, when given, describe A = I - B (exact
    rational data can bypass numerical root finding this way).
    """
    if p < 2:
        raise ValueError("p must be an integer >= 2")
    d = b.dim
    z0 = complex(b.entries[0, 0])
    if np.array_equal(b.entries, z0 * np.eye(d)):
        # exact scalar matrix: root it in scalar arithmetic (identity included)
        if z0 == 0:
            raise SingularMatrixError("input matrix is singular; no pth root exists")
        w = branch_power(z0, p, 0)
        x = ComplexMatrix(w * np.eye(d, dtype=np.complex128))
        return RootReport(
            p=p,
            branch="principal",
            root=x,
            residual=_defining_residual(x, b, p),
            sector_ok=True,
            formula_path="scalar",
        )
    a = ComplexMatrix(np.eye(d, dtype=np.complex128) - b.entries)

    spec_a = spectrum
    if spec_a is None and annihilator is not None:
        spec_a = find_spectrum(annihilator, cluster_tol)
    if spec_a is None:
        try:
            spec_a = find_spectrum(characteristic_polynomial(a), cluster_tol)
        except SingularMatrixError:
            # B has an eigenvalue at 1: the annihilator framework cannot run
            # on A directly. Only the pre-scaling rescue can proceed.
            if not scale:
                raise ConvergenceDomainError(
                    "the input has an eigenvalue at 1, so I - B is singular and "
                    "the closed forms do not apply; pre-scaling is available",
                    offending=1.0 + 0j,
                ) from None
            spec_b = find_spectrum(characteristic_polynomial(b), cluster_tol)
            return _scaled_principal_root(
                b, p, list(zip(spec_b.roots, spec_b.mults)), cluster_tol
            )

    # an eigenvalue of A at 1 means B itself is singular: no pth root exists
    if min(abs(1 - z) for z in spec_a.roots) <= 1e-12 * max(1.0, spec_a.spectral_radius):
        raise SingularMatrixError("input matrix is singular; no pth root exists")

    rho = spec_a.spectral_radius
    if rho >= 1.0:
        b_pairs = [(1 - z, m) for z, m in zip(spec_a.roots, spec_a.mults)]
        if not scale:
            worst = max(spec_a.roots, key=abs)
            raise ConvergenceDomainError(
                f"eigenvalue {1 - worst} of the input lies outside the unit disk "
                f"centred at 1 (|1 - eig| = {abs(worst):.6g}); pre-scaling is available",
                spectral_radius=rho,
                offending=1 - worst,
            )
        return _scaled_principal_root(b, p, b_pairs, cluster_tol)

    detail = shifted_root_detail(a, p, 1.0, annihilator, spec_a, cluster_tol)
    x = detail.matrix
    return RootReport(
        p=p,
        branch="principal",
        root=x,
        residual=_defining_residual(x, b, p),
        sector_ok=eigenvalues_in_sector(x, p),
        formula_path=detail.coeffs.path,
    )


def _scaled_principal_root(b: ComplexMatrix, p: int, b_pairs, cluster_tol: float) -> RootReport:
    """Compute (B/c)^(1/p) * c^(1/p) with c the spectrum centroid magnitude."""
    for z, _ in b_pairs:
        if abs(z) <= 1e-14:
            raise SingularMatrixError("input matrix is singular; no pth root exists")
    r = sum(m for _, m in b_pairs)
    centroid = sum(z * m for z, m in b_pairs) / r
    c = abs(centroid)
    if c == 0:
        raise ConvergenceDomainError("spectrum centroid is zero; cannot pre-scale")
    if min(abs(z / c - 1) for z, _ in b_pairs) < 1e-8:
        # keep every scaled eigenvalue off 1, where I - B/c would turn singular
        c *= 1.000001
    worst = max(b_pairs, key=lambda zm: abs(1 - zm[0] / c))
    if abs(1 - worst[0] / c) > 0.95:
        raise ConvergenceDomainError(
            f"eigenvalue {worst[0]} stays outside the scaled convergence disk "
            f"(|1 - eig/c| = {abs(1 - worst[0] / c):.6g} with c = {c:.6g})",
            offending=worst[0],
        )
    scaled = ComplexMatrix(b.entries / c)
    sub = principal_pth_root(scaled, p, scale=False, cluster_tol=cluster_tol)
    factor = c ** (1.0 / p)
    x = ComplexMatrix(factor * sub.root.entries)
    return RootReport(
        p=p,
        branch="principal",
        root=x,
        residual=_defining_residual(x, b, p),
        sector_ok=eigenvalues_in_sector(x, p),
        formula_path=f"scaled+{sub.formula_path}",
    )
