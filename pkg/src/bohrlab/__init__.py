"""Numerical laboratory for Bohr-type radii of integral operators.

The package computes absolute (majorant) series of the Cesaro and Bernardi
integral operator families over the unit ball of bounded analytic
functions, solves the associated radius equations with certified brackets,
verifies the inequalities over seeded corpora, and reproduces the
sharpness arguments through the extremal disk-automorphism families.
"""

__version__ = "0.1.0"

from .errors import (
    BohrlabError,
    BracketError,
    ContinuityError,
    ParameterDomainError,
    PreconditionError,
    QuadratureError,
    TruncationError,
)
from .series import (
    BinomialWeights,
    CoefficientSequence,
    CompensatedSum,
    binomial_coeffs,
    cauchy_product,
    cumulative_identity_residual,
    geometric_coeffs,
    horner,
    kahan_sum,
)
from .corpus import (
    BLASCHKE_ZERO_CAP,
    Blaschke,
    BoundedFunction,
    Constant,
    ExtremalPhi,
    ExtremalPsi,
    Polynomial,
    derive_seed,
    evaluate,
    extremal_phi,
    extremal_psi,
    multiply_by_z,
    random_schur,
    schwarz_factor,
    schwarz_shift,
    suggested_order,
    taylor_coeffs,
    validate_membership,
)
from .operators import (
    Alexander,
    Bernardi,
    CBeta,
    CesaroBeta,
    Libera,
    OperatorKind,
    PrimitiveI,
    adaptive_simpson,
    bernardi_series_order,
    bohr_majorant,
    cbeta_relation_residual,
    cesaro_series_order,
    kernel_integral,
    majorant_value,
    operator_coeffs,
    quadrature_value,
    required_origin_zeros,
    sup_bound,
    sup_bound_check,
)
from .radii import (
    CurveRow,
    RadiusProblem,
    RadiusResult,
    closed_bound,
    radius_curve,
    radius_equation,
    solve_radius,
)
from .sharpness import (
    BOHR_BASELINE_RADIUS,
    ClassicalBohr,
    Decomposition,
    ViolationReport,
    concavity_check,
    decomposition_bernardi,
    decomposition_cesaro,
    extremal_majorant,
    quadratic_remainder_check,
    violation_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
