"""Matrix pth roots through recurrence closed forms.

The package computes principal pth roots of nonsingular complex matrices by
expanding (I - tA)^(1/p) over the Horner system of an annihilator polynomial,
enumerates every primary pth root for Jordan-form inputs, and checks each
result against independent series and eigendecomposition oracles.
"""
from .binet import BinetCoefficients, binet_coefficients, binet_eval, partial_fraction_weights
from .combinatorics import (
    SeriesCoefficients,
    StirlingTable,
    binomial,
    compositions,
    series_coefficients,
    stirling_first_kind,
)
from .engine import (
    BranchedPower,
    DegreeOperatorPolys,
    RootCoeffs,
    apply_degree_operator,
    branch_power,
    dispatch_root_coeffs,
    principal_pth_root,
    pth_root_of_shifted,
    root_coeffs_general,
    root_coeffs_mixed,
    root_coeffs_single,
    shifted_root_detail,
)
from .errors import (
    AnnihilatorError,
    BranchCutError,
    ConvergenceDomainError,
    DimensionMismatchError,
    MatrixParseError,
    OracleUnavailableError,
    PthRootError,
    RootFindingError,
    SingularMatrixError,
)
from .horner import (
    FibHornerBasis,
    FibSequence,
    build_basis,
    fib_terms,
    horner_to_monomial,
    monomial_to_horner,
    power_decomposition,
    substitute_one_minus,
)
from .jordan import (
    BranchTuple,
    JordanForm,
    enumerate_primary_roots,
    principal_from_enumeration,
    projector_expansion_coeffs,
    projector_power,
)
from .linalg import ComplexMatrix, frobenius_norm, mat_power, matmul, poly_eval_matrix, rel_distance
from .oracles import residual, series_root, spectral_root
from .polynomials import (
    MonicPolynomial,
    Spectrum,
    characteristic_polynomial,
    cluster_points,
    find_spectrum,
    verify_annihilator,
)
from .reports import RootReport

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorError",
    "BinetCoefficients",
    "BranchCutError",
    "BranchTuple",
    "BranchedPower",
    "ComplexMatrix",
    "ConvergenceDomainError",
    "DegreeOperatorPolys",
    "DimensionMismatchError",
    "FibHornerBasis",
    "FibSequence",
    "JordanForm",
    "MatrixParseError",
    "MonicPolynomial",
    "OracleUnavailableError",
    "PthRootError",
    "RootCoeffs",
    "RootFindingError",
    "RootReport",
    "SeriesCoefficients",
    "SingularMatrixError",
    "Spectrum",
    "StirlingTable",
    "apply_degree_operator",
    "binet_coefficients",
    "binet_eval",
    "binomial",
    "branch_power",
    "build_basis",
    "characteristic_polynomial",
    "cluster_points",
    "compositions",
    "dispatch_root_coeffs",
    "enumerate_primary_roots",
    "fib_terms",
    "find_spectrum",
    "frobenius_norm",
    "horner_to_monomial",
    "mat_power",
    "matmul",
    "monomial_to_horner",
    "partial_fraction_weights",
    "poly_eval_matrix",
    "power_decomposition",
    "principal_from_enumeration",
    "principal_pth_root",
    "projector_expansion_coeffs",
    "projector_power",
    "pth_root_of_shifted",
    "rel_distance",
    "residual",
    "root_coeffs_general",
    "root_coeffs_mixed",
    "root_coeffs_single",
    "series_coefficients",
    "series_root",
    "shifted_root_detail",
    "spectral_root",
    "stirling_first_kind",
    "substitute_one_minus",
    "verify_annihilator",
]
