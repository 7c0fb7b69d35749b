"""Order-by-order multiscale reduction of lpKdV to a dNLS equation."""

from .coefficients import (
    SigmaCoefficients,
    M_coefficients_unreduced,
    alpha_coefficients,
    rho_coefficients,
    rho_complex_forms,
    rho_from_sigma,
    rho_real_forms,
    sigma_coefficients,
    solve_M_coefficients,
)
from .expansion import (
    DeterminingEquation,
    FieldAtom,
    FieldPoly,
    SymbolicReduction,
    expand_lpkdv,
    harmonic_operator,
    linear_operator_L,
    sigma_from_expansion,
)
from .fields import AnalyticFieldSet, CharacteristicFieldSet, GridFieldSet, HarmonicField, delta_antiderivative
from .params import ConsistencyError, ReductionParams, SingularParameterError, theta_rule
from .reconstruction import (
    Approximation,
    ConvergenceResult,
    assemble_approximation,
    convergence_sweep,
    default_soliton,
    soliton_field_set,
)
from .residuals import determining_residual_order2, order3_residual, reduced_dnls_residual, secularity_split

__all__ = [
    "AnalyticFieldSet",
    "Approximation",
    "CharacteristicFieldSet",
    "ConsistencyError",
    "ConvergenceResult",
    "DeterminingEquation",
    "FieldAtom",
    "FieldPoly",
    "GridFieldSet",
    "HarmonicField",
    "M_coefficients_unreduced",
    "ReductionParams",
    "SigmaCoefficients",
    "SingularParameterError",
    "SymbolicReduction",
    "alpha_coefficients",
    "assemble_approximation",
    "convergence_sweep",
    "default_soliton",
    "delta_antiderivative",
    "determining_residual_order2",
    "expand_lpkdv",
    "harmonic_operator",
    "linear_operator_L",
    "order3_residual",
    "reduced_dnls_residual",
    "rho_coefficients",
    "rho_complex_forms",
    "rho_from_sigma",
    "rho_real_forms",
    "secularity_split",
    "sigma_coefficients",
    "sigma_from_expansion",
    "soliton_field_set",
    "solve_M_coefficients",
    "theta_rule",
]
