"""Exact finite-N fluctuation laws of the magnetization versus their limits.

Away from coexistence and from the critical point, ``sqrt(N) (m_N - m*)``
tends to a centered Gaussian with variance ``-1/phi''(m*)``.  On the
coexistence curve the law splits into two Gaussian components around the two
maximizers, weighted by curvature-and-support factors; at the critical point
``(K, J) = (0, 1)`` the Gaussian scaling fails and ``N**(1/4) m_N`` converges
to the quartic density proportional to ``exp(-x**4 / 12)``.

Everything here is computed from exact finite-N laws; nothing is sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import gammainc, ndtr

from .errors import DomainError, RegimeError
from .finite_volume import build_spectrum, magnetization_law
from .landscape import CouplingPair, phi_d2, psi
from .phase_diagram import COEX_BAND, gamma, m_star
from .stationary import _polish, _root_on_decreasing_branch, _root_on_increasing_branch

SQRTN_CENTERED = "sqrtN-centered"
QUARTER_N = "quarterN"


@dataclass(frozen=True)
class FluctuationSummary:
    """Moments and KS statistic of a rescaled magnetization law.

    Under ``sqrtN-centered`` scaling, ``kurtosis`` is the dimensionless ratio
    ``E[(X - EX)^4] / Var(X)^2``; under ``quarterN`` scaling it is the raw
    fourth moment of ``X = N**(1/4) m_N`` (whose limit value is exactly 3).
    """

    N: int
    scaling: str
    mean: float
    variance: float
    kurtosis: float
    ks_distance: float
    reference: str
    target_variance: float
    target_kurtosis: float


@dataclass(frozen=True)
class MixtureWeights:
    """Limiting phase probabilities exactly on the coexistence curve."""

    rho0: float
    rho1: float


def ks_distance(support, prob, reference_cdf) -> float:
    """Kolmogorov-Smirnov distance between an atomic law and a reference cdf.

    Evaluated at both the left and right limit of the empirical cdf at every
    atom, which is where the supremum of the difference is attained.
    """
    prob = np.asarray(prob, dtype=float)
    cum = np.cumsum(prob)
    ref = np.asarray(reference_cdf(np.asarray(support, dtype=float)), dtype=float)
    right = np.abs(cum - ref)
    left = np.abs((cum - prob) - ref)
    return float(max(np.max(right), np.max(left)))


def gaussian_cdf(sigma2: float):
    """cdf of a centered Gaussian with variance ``sigma2`` (vectorized)."""
    sigma = math.sqrt(sigma2)
    return lambda x: ndtr(np.asarray(x, dtype=float) / sigma)


def quartic_normalizer() -> float:
    """Normalizer ``C`` of the critical density ``C exp(-x^4/12)``.

    ``1/C`` is the integral of ``exp(-x**4/12)``, which reduces under
    ``s = x**4/12`` to ``12**(1/4) Gamma(1/4) / 2``.
    """
    return 2.0 / (12.0**0.25 * gamma_fn(0.25))


def quartic_cdf(x):
    """cdf of ``C exp(-x^4/12)`` via the regularized incomplete gamma function."""
    arr = np.asarray(x, dtype=float)
    tail = gammainc(0.25, arr**4 / 12.0)
    return 0.5 * (1.0 + np.sign(arr) * tail)


def quartic_moment(order: int) -> float:
    """Raw moments of the quartic limit law: 0 for odd order,
    ``12**(order/4) Gamma((order+1)/4) / Gamma(1/4)`` for even."""
    if order % 2 == 1:
        return 0.0
    return 12.0 ** (order / 4.0) * gamma_fn((order + 1) / 4.0) / gamma_fn(0.25)


def clt_summary(params: CouplingPair, N: int) -> FluctuationSummary:
    """Exact law of ``sqrt(N) (m_N - m*)`` against its Gaussian limit.

    Requires a unique nondegenerate global maximizer: on the coexistence
    curve or at the critical point the Gaussian limit does not hold and a
    :class:`RegimeError` is raised.
    """
    maximizers = m_star(params)
    if maximizers.on_coexistence:
        raise RegimeError(
            "couplings lie on the coexistence curve; use conditional_clt/theoretical_weights"
        )
    point = maximizers.points[0]
    if point.d2 >= -1e-10:
        raise RegimeError(
            "degenerate maximizer (critical point); use critical_summary for the quartic law"
        )
    law = magnetization_law(build_spectrum(N, params, 0.0))
    mu = law.mean()
    var_m = law.moment(2, center=mu)
    fourth = law.moment(4, center=mu)
    sigma2 = -1.0 / point.d2
    rescaled = math.sqrt(N) * (law.support - point.m)
    ks = ks_distance(rescaled, law.prob, gaussian_cdf(sigma2))
    return FluctuationSummary(
        N=N,
        scaling=SQRTN_CENTERED,
        mean=math.sqrt(N) * (mu - point.m),
        variance=N * var_m,
        kurtosis=fourth / (var_m * var_m),
        ks_distance=ks,
        reference=f"normal(0, {sigma2:.12g})",
        target_variance=sigma2,
        target_kurtosis=3.0,
    )


def _coexistence_structure(params: CouplingPair) -> tuple[float, float]:
    """Validate that ``params`` sits on the coexistence curve; return ``(m3, m1)``."""
    K, J = params.K, params.J
    if not K > 0.0:
        raise RegimeError(f"the coexistence curve lives at K > 0, got K={K}")
    cs = gamma(K)
    if abs(J - cs.gammaK) >= COEX_BAND:
        raise RegimeError(
            f"J={J} is not on the coexistence curve (gamma({K})={cs.gammaK}, band={COEX_BAND:g})"
        )
    spin = psi(K)
    m3 = _polish(_root_on_decreasing_branch(K, J, spin.argmin), params)
    m1 = _polish(_root_on_increasing_branch(K, J, spin.argmin), params)
    return m3, m1


def theoretical_weights(params: CouplingPair) -> MixtureWeights:
    """Limiting mixture weights on the coexistence curve.

    ``rho_i`` is proportional to ``[(m_i^2 - 1) phi''(m_i)]**(-1/2)`` over the
    two maximizers ``m_0 = 0`` and ``m_1``; at ``m_0`` the factor reduces to
    ``1 - J``.
    """
    _, m1 = _coexistence_structure(params)
    c0 = 1.0 - params.J
    c1 = (m1 * m1 - 1.0) * phi_d2(m1, params)
    w0 = c0**-0.5
    w1 = c1**-0.5
    total = w0 + w1
    return MixtureWeights(rho0=w0 / total, rho1=w1 / total)


def conditional_clt(params: CouplingPair, i: int, N: int) -> FluctuationSummary:
    """Exact conditional law of ``sqrt(N) (m_N - m_i)`` given ``{m_N in A_i}``.

    The default split puts the cut at the interior local minimum ``m3``:
    ``A_0 = [-1, m3]`` and ``A_1 = (m3, 1]``, so each ``m_i`` is the strict
    maximizer of the landscape over the closure of its own window.
    """
    if i not in (0, 1):
        raise DomainError(f"branch index must be 0 or 1, got {i}")
    m3, m1 = _coexistence_structure(params)
    center = 0.0 if i == 0 else m1
    window = (-1.0, m3) if i == 0 else (m3, 1.0)
    law = magnetization_law(build_spectrum(N, params, 0.0)).restrict(window)
    mu = law.moment(1)
    var_m = law.moment(2, center=mu)
    fourth = law.moment(4, center=mu)
    sigma2 = -1.0 / phi_d2(center, params)
    rescaled = math.sqrt(N) * (law.support - center)
    ks = ks_distance(rescaled, law.prob, gaussian_cdf(sigma2))
    return FluctuationSummary(
        N=N,
        scaling=SQRTN_CENTERED,
        mean=math.sqrt(N) * (mu - center),
        variance=N * var_m,
        kurtosis=fourth / (var_m * var_m),
        ks_distance=ks,
        reference=f"normal(0, {sigma2:.12g}) | A{i}",
        target_variance=sigma2,
        target_kurtosis=3.0,
    )


def critical_summary(N: int) -> FluctuationSummary:
    """Exact law of ``N**(1/4) m_N`` at the critical couplings ``(0, 1)``.

    Odd moments vanish exactly by the index symmetry of the spectrum; the raw
    fourth moment tends to 3 and the law converges to the quartic density.
    """
    params = CouplingPair(0.0, 1.0)
    law = magnetization_law(build_spectrum(N, params, 0.0))
    scale = float(N) ** 0.25
    mean = scale * law.moment(1)
    second = math.sqrt(N) * law.moment(2)
    fourth = N * law.moment(4)
    ks = ks_distance(scale * law.support, law.prob, quartic_cdf)
    return FluctuationSummary(
        N=N,
        scaling=QUARTER_N,
        mean=mean,
        variance=second,
        kurtosis=fourth,
        ks_distance=ks,
        reference="C*exp(-x^4/12)",
        target_variance=quartic_moment(2),
        target_kurtosis=quartic_moment(4),
    )
