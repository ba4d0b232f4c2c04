"""Closed-form coefficients of the recurrence sequence u_n.

The sequence attached to an annihilator with distinct roots lam_i of
multiplicity m_i admits the classical closed form

    u_n = sum_i sum_{j<m_i} c[i][j] * n^j * lam_i^n.

The c table is produced here without solving the defining linear system:
partial-fraction weights of the root configuration feed a falling-factorial
to monomial conversion through signed Stirling numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import StirlingTable, binomial, compositions, stirling_first_kind
from .errors import PthRootError
from .polynomials import Spectrum


@dataclass(frozen=True)
class BinetCoefficients:
    """Closed-form data for one spectrum.

    weights     -- partial-fraction weights, one array (length m_i) per root
    nj_coeffs   -- c[i][j]: coefficient of n^j lam_i^n, one array per root
    base_coeffs -- the j = 0 coefficients, recomputed by an independent
                   branch formula and checked against nj_coeffs[i][0]
    """

    spectrum: Spectrum
    weights: tuple
    nj_coeffs: tuple
    base_coeffs: np.ndarray


def partial_fraction_weights(spectrum: Spectrum) -> tuple:
    """Weight table closing u_n over the falling-binomial basis.

    For a single root the weights collapse to the indicator of the top index;
    otherwise entry (i, j) sums, over all ways to distribute m_i - j - 1
    derivative orders onto the other roots, the products
    C(n_t + m_t - 1, n_t) / (lam_t - lam_i)^{n_t + m_t}.
    """
    l = spectrum.l
    r = spectrum.r
    if l == 1:
        w = np.zeros(spectrum.mults[0], dtype=np.complex128)
        w[r - 1] = 1.0
        return (w,)
    out = []
    for i in range(l):
        m_i = spectrum.mults[i]
        lam_i = spectrum.roots[i]
        others = [t for t in range(l) if t != i]
        sign = (-1) ** (r - m_i)
        w = np.zeros(m_i, dtype=np.complex128)
        for j in range(m_i):
            total = m_i - j - 1
            acc = 0.0 + 0j
            for combo in compositions(total, len(others)):
                prod = 1.0 + 0j
                for t, n_t in zip(others, combo):
                    m_t = spectrum.mults[t]
                    diff = spectrum.roots[t] - lam_i
                    prod *= binomial(n_t + m_t - 1, n_t) / diff ** (n_t + m_t)
                acc += prod
            w[j] = sign * acc
        out.append(w)
    return tuple(out)


def binet_coefficients(spectrum: Spectrum, stirling: StirlingTable | None = None) -> BinetCoefficients:
    """Full closed-form coefficient set for `spectrum`.

    The j = 0 column is evaluated twice: through the general Stirling sum and
    through the dedicated simple-root product / multiple-root weight formulas.
    Disagreement beyond 1e-10 relative means a transcription bug and raises.
    """
    if stirling is None:
        stirling = stirling_first_kind(spectrum.max_mult - 1)
    elif stirling.max_n < spectrum.max_mult - 1:
        raise ValueError(
            f"stirling table covers rows up to {stirling.max_n}, need {spectrum.max_mult - 1}"
        )
    r = spectrum.r
    weights = partial_fraction_weights(spectrum)

    nj = []
    for i in range(spectrum.l):
        m_i = spectrum.mults[i]
        lam = spectrum.roots[i]
        ci = np.zeros(m_i, dtype=np.complex128)
        for j in range(m_i):
            acc = 0.0 + 0j
            for h in range(j, m_i):
                inner = sum(
                    binomial(r - 1, h - k) * stirling.value(k, j) / math.factorial(k)
                    for k in range(j, h + 1)
                )
                acc += lam ** (r - 1 - h) * weights[i][h] * inner
            ci[j] = acc
        nj.append(ci)

    base = np.zeros(spectrum.l, dtype=np.complex128)
    for i in range(spectrum.l):
        lam = spectrum.roots[i]
        if spectrum.mults[i] == 1:
            denom = 1.0 + 0j
            for t in range(spectrum.l):
                if t != i:
                    denom *= (spectrum.roots[t] - lam) ** spectrum.mults[t]
            base[i] = (-1) ** (r - 1) * lam ** (r - 1) / denom
        else:
            base[i] = sum(
                lam ** (r - 1 - h) * weights[i][h] * binomial(r - 1, h)
                for h in range(spectrum.mults[i])
            )
        ref = nj[i][0]
        if abs(base[i] - ref) > 1e-10 * max(1.0, abs(ref)):
            raise PthRootError(
                f"closed-form coefficient cross-check failed for root {i}: "
                f"{base[i]} vs {ref}"
            )
    return BinetCoefficients(
        spectrum=spectrum, weights=weights, nj_coeffs=tuple(nj), base_coeffs=base
    )


def binet_eval(bc: BinetCoefficients, n: int) -> complex:
    """u_n from the closed form (cross-validates the direct recurrence)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    spec = bc.spectrum
    acc = 0.0 + 0j
    for i in range(spec.l):
        lam_n = spec.roots[i] ** n
        acc += bc.base_coeffs[i] * lam_n
        for j in range(1, spec.mults[i]):
            acc += bc.nj_coeffs[i][j] * n ** j * lam_n
    return complex(acc)
