"""Multidimensional Pade approximants of binomial functions (1-z)^w.

The package constructs, for exponents omega_0..omega_M (no two differing by
an integer) and degrees rho_0..rho_M, the unique polynomials H_m of degree
rho_m making

    G(z) = sum_m H_m(z) (1-z)^{omega_m}

vanish to the maximal order sigma - 1 = sum(rho_m + 1) - 1 at z = 0, with
the normalization G(z) = z^{sigma-1}/(sigma-1)! + O(z^sigma).  Every closed
form is implemented independently and cross-checked against the others,
against four integral representations, and against a brute-force linear
solve.  A shift-family determinant test probes when nearby systems are
linearly independent ("perfect").
"""

from .errors import (
    ConditioningWarning,
    ConvergenceError,
    DomainError,
    InstanceError,
    PadeError,
    PoleError,
    PoleSeparationError,
    SingularSystemError,
    SizeError,
    TruncationError,
)
from .scalars import (
    binomial,
    falling_factorial,
    log_gamma,
    rising_factorial,
    sin_pi,
)
from .series import (
    Polynomial,
    TruncatedSeries,
    apply_d_omega,
    binomial_series,
    poly_eval,
    poly_mul_series,
    series_eval,
    series_mul,
    series_order,
)
from .system import (
    PadeSystem,
    ProblemInstance,
    approximant_explicit,
    approximant_gamma_form,
    approximant_hypergeometric,
    base_case,
    check_symmetries,
    default_truncation,
    oracle_linear_solve,
    pade_system,
    polynomial_gcd,
    remainder_from_approximants,
    remainder_series,
    sigma,
)
from .quadrature import (
    QuadratureConfig,
    approximant_contour,
    approximant_torus,
    auto_radius,
    remainder_contour,
    remainder_cube,
    remainder_iterated,
)
from .perfection import (
    EpsilonFamily,
    compute_S_and_alpha,
    compute_T,
    determinant_test,
    hypothesis_report,
    identity_family,
    jager_family,
    sweep_random_families,
)
from .document import InstanceDocument, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "ConditioningWarning", "ConvergenceError", "DomainError", "InstanceError",
    "PadeError", "PoleError", "PoleSeparationError", "SingularSystemError",
    "SizeError", "TruncationError",
    "binomial", "falling_factorial", "log_gamma", "rising_factorial", "sin_pi",
    "Polynomial", "TruncatedSeries", "apply_d_omega", "binomial_series",
    "poly_eval", "poly_mul_series", "series_eval", "series_mul", "series_order",
    "PadeSystem", "ProblemInstance", "approximant_explicit",
    "approximant_gamma_form", "approximant_hypergeometric", "base_case",
    "check_symmetries", "default_truncation", "oracle_linear_solve",
    "pade_system", "polynomial_gcd", "remainder_from_approximants",
    "remainder_series", "sigma",
    "QuadratureConfig", "approximant_contour", "approximant_torus",
    "auto_radius", "remainder_contour", "remainder_cube", "remainder_iterated",
    "EpsilonFamily", "compute_S_and_alpha", "compute_T", "determinant_test",
    "hypothesis_report", "identity_family", "jager_family",
    "sweep_random_families",
    "InstanceDocument", "VerificationReport",
]
