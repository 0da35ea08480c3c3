"""Equilibrium theory of the mean-field spin model with pair and triple couplings.

The package computes, classifies, and numerically certifies the model's
equilibrium behavior: the free-energy landscape and its stationary points,
the first-order phase diagram with its coexistence curve, exact finite-N
magnetization laws, asymptotic partition-function expansions, fluctuation
limits (Gaussian, mixture, quartic), and critical exponents.
"""

from .errors import (
    DegenerateMaximizerError,
    DomainError,
    EmptyRestrictionError,
    FitError,
    RegimeError,
    ResourceError,
)
from .exponents import (
    ExponentFit,
    curie_weiss_exponent,
    default_window,
    fit_line,
    fit_power_law,
    m_star_along_line,
)
from .finite_volume import (
    EntropyBoundsReport,
    ExactSpectrum,
    MagnetizationLaw,
    asymptotic_log_partition,
    build_spectrum,
    concentration_probability,
    entropy_bounds_check,
    log_partition,
    magnetization_law,
    mgf_rescaled,
    pressure,
    restricted_log_partition,
    stirling_binomial,
)
from .fluctuations import (
    FluctuationSummary,
    MixtureWeights,
    clt_summary,
    conditional_clt,
    critical_summary,
    gaussian_cdf,
    ks_distance,
    quartic_cdf,
    quartic_moment,
    quartic_normalizer,
    theoretical_weights,
)
from .landscape import (
    EPS_DOM,
    CouplingPair,
    LandscapeReport,
    PsiResult,
    branch_ratio,
    energy,
    entropy,
    g,
    landscape_at,
    phi,
    psi,
)
from .phase_diagram import (
    COEX_BAND,
    CoexistenceSample,
    GlobalMaximizers,
    MaximizerPoint,
    ScanGrid,
    delta,
    gamma,
    gamma_slope_fd,
    m_star,
    scan,
)
from .stationary import (
    TANGENT_TOL,
    Sensitivity,
    StationaryClassification,
    Tangent,
    TwoLocalMaxima,
    UniquePositive,
    UniqueZero,
    bracket_m1,
    classify,
    sensitivity,
    solve_consistency,
)

__version__ = "0.1.0"

__all__ = [
    "CouplingPair",
    "LandscapeReport",
    "PsiResult",
    "EPS_DOM",
    "entropy",
    "energy",
    "phi",
    "landscape_at",
    "g",
    "branch_ratio",
    "psi",
    "TANGENT_TOL",
    "StationaryClassification",
    "UniqueZero",
    "Tangent",
    "TwoLocalMaxima",
    "UniquePositive",
    "Sensitivity",
    "solve_consistency",
    "classify",
    "bracket_m1",
    "sensitivity",
    "COEX_BAND",
    "MaximizerPoint",
    "GlobalMaximizers",
    "CoexistenceSample",
    "ScanGrid",
    "delta",
    "gamma",
    "gamma_slope_fd",
    "m_star",
    "scan",
    "ExactSpectrum",
    "MagnetizationLaw",
    "EntropyBoundsReport",
    "build_spectrum",
    "log_partition",
    "pressure",
    "magnetization_law",
    "restricted_log_partition",
    "asymptotic_log_partition",
    "concentration_probability",
    "entropy_bounds_check",
    "stirling_binomial",
    "mgf_rescaled",
    "FluctuationSummary",
    "MixtureWeights",
    "ks_distance",
    "gaussian_cdf",
    "quartic_cdf",
    "quartic_moment",
    "quartic_normalizer",
    "clt_summary",
    "theoretical_weights",
    "conditional_clt",
    "critical_summary",
    "ExponentFit",
    "default_window",
    "m_star_along_line",
    "fit_power_law",
    "fit_line",
    "curie_weiss_exponent",
    "DomainError",
    "RegimeError",
    "DegenerateMaximizerError",
    "EmptyRestrictionError",
    "ResourceError",
    "FitError",
]
