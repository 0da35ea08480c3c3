"""Exact finite-N computations on the magnetization spectrum.

At size ``N`` the magnetization takes the values ``m_k = (2k - N)/N`` for
``k = 0..N``; the number of spin profiles with magnetization ``m_k`` is the
binomial coefficient ``C(N, k)``.  Every equilibrium quantity of the model is
therefore an exact sum of ``N + 1`` terms, handled here entirely in the log
domain: Gibbs weights reach ``exp(N * phi)`` with ``N * phi ~ 1e6``, far
beyond double range.

The module also evaluates the large-N Laplace expansion of the partition
function around nondegenerate maximizers and the entropy sandwich satisfied
by the log-multiplicities, so that both sides of each asymptotic statement
can be compared at finite ``N``.

Summation convention: every reduction sorts its addends first.  This keeps
results independent of presentation order, which makes the spin-flip map
``(K, m) -> (-K, -m)`` an exact, bit-level symmetry of all outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import (
    DegenerateMaximizerError,
    DomainError,
    EmptyRestrictionError,
    ResourceError,
)
from .landscape import CouplingPair, entropy
from .phase_diagram import GlobalMaximizers

# hard cap: three float64 arrays of length N + 1
N_CAP = 10**8


@dataclass(frozen=True)
class ExactSpectrum:
    """Magnetization support with log-multiplicities and log-Gibbs-weights.

    ``log_weight[k] = log C(N, k) + N * f(m_k)`` where
    ``f(m) = (K/3) m^3 + (J/2) m^2 + tilt * m / sqrt(N)``.  The tilt adds
    ``sqrt(N) * tilt * m_N`` to the exponent of the Gibbs weight, which is the
    perturbation generating moment statistics of the rescaled magnetization.
    """

    N: int
    params: CouplingPair
    tilt: float
    support: np.ndarray
    log_multiplicity: np.ndarray
    log_weight: np.ndarray


@dataclass(frozen=True)
class MagnetizationLaw:
    """Exact law of the magnetization under the (tilted) Gibbs measure."""

    N: int
    support: np.ndarray
    prob: np.ndarray

    def moment(self, order: int, center: float = 0.0) -> float:
        """Exact moment ``E[(m - center)**order]``.

        Powers are formed by repeated multiplication and the addends are
        folded with their mirror image before summing, so odd moments of an
        exactly symmetric law come out as exact zeros.
        """
        x = self.support - center if center != 0.0 else self.support
        xn = np.ones_like(x)
        for _ in range(order):
            xn = xn * x
        a = self.prob * xn
        return 0.5 * float(np.sum(a + a[::-1]))

    def mean(self) -> float:
        return self.moment(1)

    def variance(self) -> float:
        return self.moment(2, center=self.mean())

    def mass(self, interval: tuple[float, float]) -> float:
        """Probability of ``{m in interval}`` (0.0 when no support point falls in)."""
        i0, i1 = _interval_slice(self.support, interval)
        return float(np.sum(self.prob[i0:i1]))

    def restrict(self, interval: tuple[float, float]) -> "MagnetizationLaw":
        """Conditional law given ``{m in interval}``."""
        i0, i1 = _interval_slice(self.support, interval)
        if i0 >= i1:
            raise EmptyRestrictionError(f"no support points in {interval}")
        mass = float(np.sum(self.prob[i0:i1]))
        return MagnetizationLaw(N=self.N, support=self.support[i0:i1], prob=self.prob[i0:i1] / mass)


def _logsumexp_sorted(values: np.ndarray) -> float:
    """Max-shifted log-sum-exp, accumulated in ascending order."""
    arr = np.asarray(values, dtype=float)
    hi = float(arr.max())
    shifted = np.sort(arr) - hi
    return hi + float(np.log(np.sum(np.exp(shifted))))


def _interval_slice(support: np.ndarray, interval: tuple[float, float]) -> tuple[int, int]:
    """Resolve ``[lo, hi]`` to a support index range.

    Half-open convention: a support point equal to a shared cut belongs to the
    interval on its right, except that the top endpoint of the support is kept
    when ``hi`` reaches it.  Adjacent intervals of a partition therefore never
    double-count a point.
    """
    lo, hi = interval
    if not lo < hi:
        raise DomainError(f"interval must satisfy lo < hi, got {interval}")
    i0 = int(np.searchsorted(support, lo, side="left"))
    i1 = int(np.searchsorted(support, hi, side="left"))
    if hi >= support[-1]:
        i1 = len(support)
    return i0, i1


def _log_multiplicity(N: int) -> np.ndarray:
    k = np.arange(N + 1, dtype=np.float64)
    # grouped so the array is exactly symmetric under k <-> N-k
    return gammaln(N + 1.0) - (gammaln(k + 1.0) + gammaln(N - k + 1.0))


def _support(N: int) -> np.ndarray:
    k = np.arange(N + 1, dtype=np.float64)
    # (2k - N)/N rather than -1 + 2k/N: the numerator is an exact integer,
    # so the grid is exactly antisymmetric
    return (2.0 * k - N) / N


def build_spectrum(N: int, params: CouplingPair, tilt: float = 0.0) -> ExactSpectrum:
    """Construct the exact spectrum at size ``N`` with an optional tilt.

    Raises
    ------
    DomainError
        If ``N < 1``.
    ResourceError
        If ``N`` exceeds the memory cap (``1e8``).
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if N > N_CAP:
        raise ResourceError(f"N={N} exceeds the spectrum cap {N_CAP}")
    N = int(N)
    support = _support(N)
    log_mult = _log_multiplicity(N)
    s2 = support * support
    s3 = s2 * support
    site = (params.K / 3.0) * s3 + (params.J / 2.0) * s2
    log_weight = log_mult + N * site
    if tilt != 0.0:
        log_weight = log_weight + (tilt * math.sqrt(N)) * support
    return ExactSpectrum(
        N=N,
        params=params,
        tilt=tilt,
        support=support,
        log_multiplicity=log_mult,
        log_weight=log_weight,
    )


def log_partition(spectrum: ExactSpectrum) -> float:
    """``log Z_N`` by log-sum-exp over the whole spectrum."""
    return _logsumexp_sorted(spectrum.log_weight)


def pressure(spectrum: ExactSpectrum) -> float:
    """``p_N = log Z_N / N``; converges to ``sup phi`` as ``N`` grows."""
    return log_partition(spectrum) / spectrum.N


def magnetization_law(spectrum: ExactSpectrum) -> MagnetizationLaw:
    """Normalized probabilities ``P(m = m_k)``.

    Weights are max-shifted in the log domain before exponentiation; the
    normalizer is the sorted sum of the shifted weights rather than
    ``exp(log_partition)``, whose final addition rounds at the magnitude of
    ``log Z ~ N`` and would leave an ``O(N * eps)`` residue in the total mass.
    """
    shifted = spectrum.log_weight - float(spectrum.log_weight.max())
    weights = np.exp(shifted)
    total = float(np.sum(np.sort(weights)))
    return MagnetizationLaw(N=spectrum.N, support=spectrum.support, prob=weights / total)


def restricted_log_partition(spectrum: ExactSpectrum, interval: tuple[float, float]) -> float:
    """``log Z_N`` restricted to support points inside ``interval``.

    Raises
    ------
    EmptyRestrictionError
        If the interval contains no support point.
    """
    i0, i1 = _interval_slice(spectrum.support, interval)
    if i0 >= i1:
        raise EmptyRestrictionError(f"no support points in {interval}")
    return _logsumexp_sorted(spectrum.log_weight[i0:i1])


def asymptotic_log_partition(
    params: CouplingPair, maximizers: GlobalMaximizers, N: int
) -> float:
    """Laplace expansion of ``log Z_N`` around nondegenerate global maximizers.

    Each maximizer ``m_i`` contributes ``exp(N phi(m_i)) / sqrt(c_i)`` with
    ``c_i = (m_i^2 - 1) * phi''(m_i)`` (positive: both factors are negative).
    The relative error of the sum is ``O(N**-0.5)``; at independent spins the
    expansion is exact.

    Raises
    ------
    DegenerateMaximizerError
        If any maximizer has ``phi'' >= -1e-10`` (the expansion is invalid at
        the critical point).
    """
    terms = []
    for p in maximizers.points:
        if p.d2 >= -1e-10:
            raise DegenerateMaximizerError(
                f"maximizer m={p.m} has phi''={p.d2}; the Gaussian-width expansion does not apply"
            )
        curvature = (p.m * p.m - 1.0) * p.d2
        terms.append(N * p.phi - 0.5 * math.log(curvature))
    return _logsumexp_sorted(np.array(terms))


def concentration_probability(law: MagnetizationLaw, center: float, alpha: float) -> float:
    """Exact Gibbs mass outside the ball of radius ``N**(-1/2 + alpha)``.

    ``alpha`` must lie in ``(0, 1/6]``, the window in which the mass outside
    is exponentially small in ``N**(2 alpha)``.
    """
    if not 0.0 < alpha <= 1.0 / 6.0:
        raise DomainError(f"alpha must be in (0, 1/6], got {alpha}")
    radius = float(law.N) ** (-0.5 + alpha)
    outside = np.abs(law.support - center) > radius
    return float(np.sum(law.prob[outside]))


@dataclass(frozen=True)
class EntropyBoundsReport:
    """Entropy sandwich on the log-multiplicities at one size ``N``.

    ``max_violation`` is the largest value of ``log C(N,k) + N I(m_k)`` (the
    upper bound demands it be <= 0); ``fitted_L`` is the smallest constant
    closing the matching lower bound ``log C(N,k) + N I(m_k) >= -log(L sqrt(N))``.
    """

    N: int
    max_violation: float
    fitted_L: float


def entropy_bounds_check(N: int) -> EntropyBoundsReport:
    """Verify the two-sided entropy estimate on the multiplicities at size ``N``."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    gap = _log_multiplicity(N) + N * entropy(_support(N))
    max_violation = float(np.max(gap))
    fitted_L = float(np.exp(np.max(-gap) - 0.5 * math.log(N)))
    return EntropyBoundsReport(N=N, max_violation=max_violation, fitted_L=fitted_L)


def stirling_binomial(N: int, x: float) -> float:
    """Log of the Stirling approximation ``sqrt(2 / (pi N (1-x^2))) * exp(-N I(x))``
    to the binomial coefficient at magnetization ``x``; relative accuracy is
    ``O(1/N)``.  Returned in the log domain (the raw value overflows quickly).
    """
    if not abs(x) < 1.0:
        raise DomainError(f"stirling_binomial requires |x| < 1, got {x}")
    return 0.5 * math.log(2.0 / (math.pi * N * (1.0 - x * x))) - N * entropy(x)


def mgf_rescaled(
    params: CouplingPair,
    N: int,
    t: float,
    center: float,
    restriction: tuple[float, float] | None = None,
) -> float:
    """Exact ``E[exp(t sqrt(N) (m_N - center))]``, optionally conditioned on
    ``{m_N in restriction}``.

    Computed as ``exp(-t sqrt(N) center) * Z_N(tilt=t) / Z_N`` with both
    partition functions restricted to the same window; equals 1 at ``t = 0``.
    """
    base = build_spectrum(N, params, 0.0)
    tilted = build_spectrum(N, params, t) if t != 0.0 else base
    if restriction is None:
        log_ratio = log_partition(tilted) - log_partition(base)
    else:
        log_ratio = restricted_log_partition(tilted, restriction) - restricted_log_partition(
            base, restriction
        )
    return float(math.exp(-t * math.sqrt(N) * center + log_ratio))
