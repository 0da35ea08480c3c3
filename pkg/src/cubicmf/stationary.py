"""Roots of the consistency equation ``m = tanh(K m**2 + J m)`` and their classification.

For ``K > 0`` the positive stationary points of the landscape are exactly the
solutions of ``branch_ratio(m, K) = J``.  Since the branch ratio is strictly
decreasing left of the spinodal minimizer and strictly increasing right of it,
every root can be bracketed on a monotone branch and found by plain bisection,
robust arbitrarily close to the tangency.  ``m = 0`` is a root for every
coupling pair and is always reported exactly, never through numerics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

from .errors import DegenerateMaximizerError, DomainError
from .landscape import EPS_DOM, CouplingPair, branch_ratio, phi_d1, phi_d2, psi

# |J - psi(K)| below this is treated as an exact tangency: the split of the
# double root is not resolvable in double precision.
TANGENT_TOL = 1e-9

# numeric roots closer to 0 than this merge with the exact root m = 0
_ZERO_MERGE = 1e-12

_BISECT_XTOL = 1e-14


@dataclass(frozen=True)
class UniqueZero:
    """``m0 = 0`` is the only stationary point and the global maximum."""

    m0: float = 0.0
    flipped: bool = False
    low_confidence: bool = False


@dataclass(frozen=True)
class Tangent:
    """``m0 = 0`` is the maximum; ``m4 > 0`` is an inflection point (tangency)."""

    m4: float
    m0: float = 0.0
    flipped: bool = False
    low_confidence: bool = False


@dataclass(frozen=True)
class TwoLocalMaxima:
    """``m0 = 0`` and ``m1`` are local maxima, ``m3`` between them a local minimum."""

    m3: float
    m1: float
    m0: float = 0.0
    flipped: bool = False
    low_confidence: bool = False


@dataclass(frozen=True)
class UniquePositive:
    """``m2 > 0`` is the only maximum point.

    ``negatives`` holds any roots in ``(-1, 0)``; they are never global maxima
    when ``K > 0``.
    """

    m2: float
    negatives: tuple[float, ...] = ()
    flipped: bool = False
    low_confidence: bool = False


StationaryClassification = Union[UniqueZero, Tangent, TwoLocalMaxima, UniquePositive]


class Sensitivity(NamedTuple):
    dm_dJ: float
    dm_dK: float
    dphi_dJ: float
    dphi_dK: float


def _bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = _BISECT_XTOL) -> float:
    """Bisection on a bracket with a strict sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise DomainError(f"no sign change on bracket [{lo}, {hi}]")
    for _ in range(256):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _polish(root: float, params: CouplingPair) -> float:
    """One Newton step on ``phi'`` when it is a clear improvement."""
    d2 = phi_d2(root, params)
    if d2 != 0.0:
        step = phi_d1(root, params) / d2
        if abs(step) < 1e-6 and abs(root - step) < 1.0 - EPS_DOM:
            return root - step
    return root


def _expand_lo(f: Callable[[float], float], start: float, want_positive: bool) -> float:
    """Walk ``lo`` toward 0 until ``f(lo)`` has the requested sign."""
    lo = start
    for _ in range(1100):
        val = f(lo)
        if (val > 0.0) if want_positive else (val < 0.0):
            return lo
        lo *= 0.5
        if lo < 5e-324:
            break
    raise DomainError("could not bracket a root near m = 0")


def _root_on_decreasing_branch(K: float, J: float, m_spin: float) -> float:
    """Solve ``branch_ratio(m, K) = J`` on ``(0, m_spin)``; requires psi(K) < J < 1."""
    f = lambda m: branch_ratio(m, K) - J
    lo = _expand_lo(f, 0.5 * m_spin, want_positive=True)
    return _bisect(f, lo, m_spin)


def _root_on_increasing_branch(K: float, J: float, m_spin: float) -> float:
    """Solve ``branch_ratio(m, K) = J`` on ``(m_spin, 1)``; requires J > psi(K)."""
    f = lambda m: branch_ratio(m, K) - J
    hi = 1.0 - EPS_DOM
    if f(hi) <= 0.0:
        raise DomainError(f"stationary point within {EPS_DOM:g} of m = 1 for J={J}")
    return _bisect(f, m_spin, hi)


def _curie_weiss_root(J: float) -> float:
    """Positive solution of ``m = tanh(J m)`` for ``J > 1`` (K = 0)."""
    f = lambda m: branch_ratio(m, 0.0) - J
    hi = 1.0 - EPS_DOM
    if f(hi) <= 0.0:
        raise DomainError(f"fixed point within {EPS_DOM:g} of m = 1 for J={J}")
    lo = _expand_lo(f, 0.25, want_positive=False)
    return _bisect(f, lo, hi)


def _negative_root(params: CouplingPair) -> float | None:
    """The single root in ``(-1, 0)``, present only for K > 0, J > 1.

    By the spin-flip map it is the negative of the positive root at
    ``(-K, J)``, where the branch ratio is strictly increasing from 1.
    """
    K, J = params.K, params.J
    if J <= 1.0:
        return None
    f = lambda m: branch_ratio(m, -K) - J
    hi = 1.0 - EPS_DOM
    if f(hi) <= 0.0:
        raise DomainError(f"stationary point within {EPS_DOM:g} of m = -1 for J={J}")
    lo = _expand_lo(f, 0.25, want_positive=False)
    root = -_bisect(f, lo, hi)
    if root > -_ZERO_MERGE:
        return None
    return _polish(root, params)


def solve_consistency(params: CouplingPair) -> list[float]:
    """All roots of ``phi'(m) = 0`` in the clipped interval, sorted ascending.

    Always contains 0.  For ``K < 0`` the roots are the mirror image of the
    canonical (``K > 0``) roots.
    """
    canon, flipped = params.canonical()
    if flipped:
        return sorted(0.0 if r == 0.0 else -r for r in solve_consistency(canon))
    K, J = canon.K, canon.J
    roots = [0.0]
    if K == 0.0:
        if J > 1.0:
            m2 = _polish(_curie_weiss_root(J), canon)
            roots = [-m2, 0.0, m2]
        return roots
    spin = psi(K)
    if abs(J - spin.value) <= TANGENT_TOL:
        roots.append(spin.argmin)  # double root at the spinodal point
    elif J > spin.value:
        if J < 1.0:
            m3 = _polish(_root_on_decreasing_branch(K, J, spin.argmin), canon)
            if m3 > _ZERO_MERGE:
                roots.append(m3)
        roots.append(_polish(_root_on_increasing_branch(K, J, spin.argmin), canon))
    neg = _negative_root(canon)
    if neg is not None:
        roots.append(neg)
    return sorted(roots)


def classify(params: CouplingPair) -> StationaryClassification:
    """Tagged root structure of the consistency equation.

    Regimes for ``K > 0`` (with ``S = psi(K)``):

    * ``J < S``              -> :class:`UniqueZero`
    * ``|J - S| < 1e-9``     -> :class:`Tangent` (low confidence: the double
      root cannot be certified in double precision)
    * ``S < J < 1``          -> :class:`TwoLocalMaxima`
    * ``J >= 1``             -> :class:`UniquePositive`

    ``K = 0`` degenerates to the quadratic-only model: unique zero for
    ``J <= 1``, symmetric pair for ``J > 1`` (reported as the positive root
    plus its mirror in ``negatives``).  For ``K < 0`` the classification is
    computed in the canonical orientation and ``flipped`` is set; physical
    roots are the negatives of the reported ones.
    """
    canon, flipped = params.canonical()
    K, J = canon.K, canon.J
    if K == 0.0:
        if J > 1.0:
            m2 = _polish(_curie_weiss_root(J), canon)
            return UniquePositive(m2=m2, negatives=(-m2,), flipped=flipped)
        return UniqueZero(flipped=flipped)
    spin = psi(K)
    if J >= 1.0:
        m2 = _polish(_root_on_increasing_branch(K, J, spin.argmin), canon)
        neg = _negative_root(canon)
        negs = () if neg is None else (neg,)
        return UniquePositive(m2=m2, negatives=negs, flipped=flipped)
    if abs(J - spin.value) < TANGENT_TOL:
        return Tangent(m4=spin.argmin, flipped=flipped, low_confidence=True)
    if J < spin.value:
        return UniqueZero(flipped=flipped)
    m3 = _polish(_root_on_decreasing_branch(K, J, spin.argmin), canon)
    m1 = _polish(_root_on_increasing_branch(K, J, spin.argmin), canon)
    if not 0.0 < m3 < m1:
        raise RuntimeError(f"root ordering violated: expected 0 < m3 < m1, got m3={m3}, m1={m1}")
    return TwoLocalMaxima(m3=m3, m1=m1, flipped=flipped)


def bracket_m1(params: CouplingPair) -> tuple[float, float]:
    """Certified bracket for the largest root in the two-maxima regime.

    The lower end is ``(1/J - 1) * J/K``, computed as the equivalent
    ``(1 - J)/K`` (valid also at ``J = 0``); the upper end is the domain clip.
    """
    K, J = params.K, params.J
    if not K > 0.0:
        raise DomainError(f"bracket_m1 requires K > 0, got K={K}")
    spin = psi(K)
    if not (spin.value - TANGENT_TOL <= J < 1.0):
        raise DomainError(f"bracket_m1 requires psi(K) <= J < 1, got J={J}, psi={spin.value}")
    return (1.0 - J) / K, 1.0 - EPS_DOM


def sensitivity(params: CouplingPair, root: float) -> Sensitivity:
    """Parameter sensitivities of a nondegenerate local maximizer.

    Returns ``(dm/dJ, dm/dK, dphi/dJ, dphi/dK)`` evaluated at the root:
    ``-m/phi''``, ``-m^2/phi''``, ``m^2/2``, ``m^3/3``.

    Raises
    ------
    DegenerateMaximizerError
        If ``phi''(root) >= -1e-10``.
    """
    d2 = phi_d2(root, params)
    if d2 >= -1e-10:
        raise DegenerateMaximizerError(
            f"phi''({root}) = {d2} is not safely negative; sensitivities are undefined"
        )
    return Sensitivity(
        dm_dJ=-root / d2,
        dm_dK=-root * root / d2,
        dphi_dJ=root * root / 2.0,
        dphi_dK=root**3 / 3.0,
    )
