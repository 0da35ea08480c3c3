"""Coexistence curve, global-maximizer selector, and phase-diagram sweeps.

In the window ``psi(K) < J < 1`` the landscape has two local maxima, at 0 and
at ``m1 > 0``.  Their height difference ``delta(K, J) = phi(m1) - phi(0)`` is
strictly increasing in ``J``, so it has a unique zero ``J = gamma(K)``: the
coexistence coupling at which the unpolarized and polarized phases exchange
stability through a first-order transition.  The curve has slope
``gamma'(K) = -(2/3) m1(K, gamma(K))``, which vanishes as ``K -> 0+`` and
approaches ``-2/3`` for strong triple couplings (where the transition moves
into ``J < 0``).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .landscape import CouplingPair, PsiResult, phi, phi_d2, psi
from .stationary import (
    TANGENT_TOL,
    _bisect,
    _curie_weiss_root,
    _polish,
    _root_on_increasing_branch,
)

# |J - gamma(K)| below this counts as sitting on the coexistence curve;
# matches the gamma solve tolerance with margin.
COEX_BAND = 1e-10

_GAMMA_JTOL = 1e-12

UNPOLARIZED = "unpolarized"
POLARIZED = "polarized"
COEXISTENCE = "coexistence"
CRITICAL = "critical-point"


@dataclass(frozen=True)
class MaximizerPoint:
    """A global maximizer: location, height, and curvature."""

    m: float
    phi: float
    d2: float


@dataclass(frozen=True)
class GlobalMaximizers:
    """Global maximizers of the landscape at one coupling pair.

    ``points`` has length 1 off the coexistence curve and 2 on it.
    ``symmetric_pair`` marks the degenerate ``K = 0``, ``J > 1`` case where
    the two maximizers are mirror images (no preferred sign exists there).
    """

    points: tuple[MaximizerPoint, ...]
    on_coexistence: bool
    symmetric_pair: bool = False


@dataclass(frozen=True)
class CoexistenceSample:
    """One point of the coexistence curve: ``gammaK = gamma(K)``, the
    polarized maximizer ``m1`` there, and the exact slope ``-(2/3) m1``."""

    K: float
    gammaK: float
    m1: float
    slope: float


@dataclass(frozen=True)
class ScanGrid:
    """Row-major phase-diagram sweep: ``labels[iK][iJ]`` and ``m_values[iK, iJ]``."""

    K_values: np.ndarray
    J_values: np.ndarray
    labels: list[list[str]]
    m_values: np.ndarray


def _point(m: float, params: CouplingPair) -> MaximizerPoint:
    return MaximizerPoint(m=m, phi=phi(m, params), d2=phi_d2(m, params))


def _m1_given_spin(params: CouplingPair, spin: PsiResult) -> float:
    """Largest positive local maximizer for ``psi(K) <= J <= 1`` (by continuity
    at both ends: the tangency point at the left end, ``m2`` at the right)."""
    if abs(params.J - spin.value) <= TANGENT_TOL:
        return spin.argmin
    return _polish(_root_on_increasing_branch(params.K, params.J, spin.argmin), params)


def _delta_given_spin(params: CouplingPair, spin: PsiResult) -> float:
    if params.J > 1.0 + 1e-12 or params.J < spin.value - TANGENT_TOL:
        raise DomainError(
            f"delta requires psi(K) <= J <= 1, got J={params.J} with psi(K)={spin.value}"
        )
    m1 = _m1_given_spin(params, spin)
    return phi(m1, params) - phi(0.0, params)


def delta(params: CouplingPair) -> float:
    """Height gap ``phi(m1) - phi(0)`` between the polarized and unpolarized
    local maxima; defined for ``K > 0`` and ``psi(K) <= J <= 1``.

    Negative at the spinodal, positive at ``J = 1``, strictly increasing in
    ``J`` (its ``J`` derivative is ``m1**2 / 2``).
    """
    if not params.K > 0.0:
        raise DomainError(f"delta requires K > 0, got K={params.K}")
    return _delta_given_spin(params, psi(params.K))


def gamma(K: float) -> CoexistenceSample:
    """Solve ``delta(K, J) = 0`` for the coexistence coupling ``gamma(K)``.

    Existence and uniqueness hold for every ``K > 0``: ``delta`` is continuous
    and strictly increasing in ``J``, negative at ``J = psi(K)`` and positive
    at ``J = 1``.  Bisection on ``[psi(K) + 1e-12, 1 - 1e-12]`` to ``1e-12``
    in ``J``.
    """
    if not K > 0.0:
        raise DomainError(f"gamma requires K > 0, got K={K}")
    spin = psi(K)
    f = lambda J: _delta_given_spin(CouplingPair(K, J), spin)
    gamma_K = _bisect(f, spin.value + 1e-12, 1.0 - 1e-12, xtol=_GAMMA_JTOL)
    m1 = _m1_given_spin(CouplingPair(K, gamma_K), spin)
    return CoexistenceSample(K=K, gammaK=gamma_K, m1=m1, slope=-(2.0 / 3.0) * m1)


def gamma_slope_fd(K: float, h: float) -> float:
    """Central finite difference ``(gamma(K+h) - gamma(K-h)) / (2h)``.

    Validation helper for the exact slope formula carried by
    :class:`CoexistenceSample`.
    """
    if not K > h > 0.0:
        raise DomainError(f"gamma_slope_fd requires K > h > 0, got K={K}, h={h}")
    return (gamma(K + h).gammaK - gamma(K - h).gammaK) / (2.0 * h)


def m_star(params: CouplingPair) -> GlobalMaximizers:
    """Global maximizer(s) of the landscape at ``params``.

    For ``K > 0``: the unpolarized point 0 below ``gamma(K)``, the polarized
    maximizer above it, both within ``1e-10`` of the curve.  For ``K = 0``:
    0 up to ``J = 1`` and the symmetric pair beyond.  ``K < 0`` mirrors the
    canonical ``K > 0`` answer.
    """
    canon, flipped = params.canonical()
    if flipped:
        res = m_star(canon)
        pts = tuple(
            sorted(
                (MaximizerPoint(m=-p.m, phi=p.phi, d2=p.d2) for p in res.points),
                key=lambda p: p.m,
            )
        )
        return GlobalMaximizers(
            points=pts,
            on_coexistence=res.on_coexistence,
            symmetric_pair=res.symmetric_pair,
        )
    K, J = canon.K, canon.J
    if K == 0.0:
        if J > 1.0:
            m2 = _polish(_curie_weiss_root(J), canon)
            return GlobalMaximizers(
                points=(_point(-m2, canon), _point(m2, canon)),
                on_coexistence=True,
                symmetric_pair=True,
            )
        return GlobalMaximizers(points=(_point(0.0, canon),), on_coexistence=False)
    spin = psi(K)
    if J >= 1.0:
        m2 = _polish(_root_on_increasing_branch(K, J, spin.argmin), canon)
        return GlobalMaximizers(points=(_point(m2, canon),), on_coexistence=False)
    if J <= spin.value:
        return GlobalMaximizers(points=(_point(0.0, canon),), on_coexistence=False)
    cs = gamma(K)
    if abs(J - cs.gammaK) < COEX_BAND:
        m1 = _m1_given_spin(canon, spin)
        return GlobalMaximizers(
            points=(_point(0.0, canon), _point(m1, canon)), on_coexistence=True
        )
    if J < cs.gammaK:
        return GlobalMaximizers(points=(_point(0.0, canon),), on_coexistence=False)
    m1 = _m1_given_spin(canon, spin)
    return GlobalMaximizers(points=(_point(m1, canon),), on_coexistence=False)


def _scan_column(K: float, J_values: np.ndarray) -> tuple[list[str], list[float]]:
    labels: list[str] = []
    ms: list[float] = []
    if K < 0.0:
        flipped_labels, flipped_ms = _scan_column(-K, J_values)
        return flipped_labels, [-m for m in flipped_ms]
    if K == 0.0:
        for J in J_values:
            if abs(J - 1.0) < COEX_BAND:
                labels.append(CRITICAL)
                ms.append(0.0)
            elif J > 1.0:
                labels.append(POLARIZED)
                # symmetric pair: report the positive member
                ms.append(_polish(_curie_weiss_root(J), CouplingPair(0.0, J)))
            else:
                labels.append(UNPOLARIZED)
                ms.append(0.0)
        return labels, ms
    spin = psi(K)
    cs = gamma(K) if np.any((J_values > spin.value) & (J_values < 1.0)) else None
    for J in J_values:
        params = CouplingPair(K, float(J))
        if J >= 1.0:
            labels.append(POLARIZED)
            ms.append(_polish(_root_on_increasing_branch(K, float(J), spin.argmin), params))
        elif J <= spin.value:
            labels.append(UNPOLARIZED)
            ms.append(0.0)
        elif abs(J - cs.gammaK) < COEX_BAND:
            labels.append(COEXISTENCE)
            ms.append(_m1_given_spin(params, spin))
        elif J < cs.gammaK:
            labels.append(UNPOLARIZED)
            ms.append(0.0)
        else:
            labels.append(POLARIZED)
            ms.append(_m1_given_spin(params, spin))
    return labels, ms


def scan(
    K_range: tuple[float, float],
    J_range: tuple[float, float],
    nK: int,
    nJ: int,
    threads: int = 1,
) -> ScanGrid:
    """Label every node of an inclusive ``nK x nJ`` grid and record ``m*``.

    Labels are ``unpolarized``, ``polarized``, ``coexistence`` (within the
    on-curve band) and ``critical-point``.  Columns are independent; with
    ``threads > 1`` they are evaluated in a thread pool and assembled in
    index order, so the result does not depend on scheduling.
    """
    if nK < 1 or nJ < 1:
        raise DomainError(f"grid resolutions must be positive, got nK={nK}, nJ={nJ}")
    K_values = np.linspace(K_range[0], K_range[1], nK)
    J_values = np.linspace(J_range[0], J_range[1], nJ)
    worker = lambda K: _scan_column(float(K), J_values)
    if threads > 1 and nK > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(worker, K_values))
    else:
        columns = [worker(K) for K in K_values]
    labels = [col[0] for col in columns]
    m_values = np.array([col[1] for col in columns])
    return ScanGrid(K_values=K_values, J_values=J_values, labels=labels, m_values=m_values)
