"""Variational free-energy landscape of the cubic-plus-quadratic mean-field spin model.

The model assigns each magnetization value ``m`` in ``[-1, 1]`` the free-energy
density ``phi(m) = u(m) - I(m)`` where

* ``u(m) = (K/3) m**3 + (J/2) m**2`` is the energy of the two- and three-body
  couplings, and
* ``I(m)`` is the (negative) binary entropy of an i.i.d. spin profile with
  mean ``m``.

Global maximizers of ``phi`` are the equilibrium phases.  This module evaluates
``phi`` and its first four derivatives in closed form, together with the
auxiliary branch function ``g(m, K) = arctanh(m) - K m**2`` and the spinodal
threshold ``psi(K)``, the smallest pair coupling at which a polarized local
maximum first appears.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import xlogy

from .errors import DomainError

# Derivatives diverge at |m| = 1; all evaluations are clipped to this margin.
EPS_DOM = 1e-12

LOG2 = math.log(2.0)

_PSI_GRID_SIZE = 4096
_PSI_XTOL = 1e-13
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/golden-ratio


@dataclass(frozen=True)
class CouplingPair:
    """Model couplings: ``K`` multiplies triples of spins, ``J`` pairs.

    Both must be finite.  Negative ``K`` is legal everywhere; the model at
    ``(-K, J)`` is the spin-flipped image of the model at ``(K, J)``, and
    :meth:`canonical` exposes that reduction.
    """

    K: float
    J: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.K) and math.isfinite(self.J)):
            raise DomainError(f"couplings must be finite, got K={self.K}, J={self.J}")

    def canonical(self) -> tuple["CouplingPair", bool]:
        """Return ``(pair with K >= 0, flipped)``.

        When ``flipped`` is true, magnetizations of the canonical model map to
        the original one through ``m -> -m``.
        """
        if self.K < 0.0:
            return CouplingPair(-self.K, self.J), True
        return self, False


@dataclass(frozen=True)
class LandscapeReport:
    """``phi`` and its derivatives up to fourth order at one interior point."""

    m: float
    phi: float
    d1: float
    d2: float
    d3: float
    d4: float


class PsiResult(NamedTuple):
    value: float
    argmin: float


def entropy(m):
    """Entropy contribution ``I(m)``, scalar or elementwise on arrays.

    ``I(m) = ((1-m)/2) log((1-m)/2) + ((1+m)/2) log((1+m)/2)`` with the
    convention ``0 log 0 = 0``, so ``I(0) = -log 2``, ``I(+-1) = 0`` and
    ``I <= 0`` on ``[-1, 1]``.
    """
    arr = np.asarray(m, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("entropy requires |m| <= 1")
    lo = (1.0 - arr) / 2.0
    hi = (1.0 + arr) / 2.0
    out = xlogy(lo, lo) + xlogy(hi, hi)
    if np.isscalar(m) or np.ndim(m) == 0:
        return float(out)
    return out


def energy(m, params: CouplingPair):
    """Energy contribution ``u(m) = (K/3) m**3 + (J/2) m**2``."""
    arr = np.asarray(m, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("energy requires |m| <= 1")
    out = (params.K / 3.0) * arr**3 + (params.J / 2.0) * arr**2
    if np.isscalar(m) or np.ndim(m) == 0:
        return float(out)
    return out


def phi(m, params: CouplingPair):
    """Free-energy density ``u(m) - I(m)``; accepts scalars or arrays."""
    return energy(m, params) - entropy(m)


def _require_interior(m: float) -> None:
    if not abs(m) <= 1.0 - EPS_DOM:
        raise DomainError(f"|m| must be <= 1 - {EPS_DOM:g} (arctanh singularity), got m={m}")


def phi_d1(m: float, params: CouplingPair) -> float:
    """First derivative ``K m**2 + J m - arctanh(m)``."""
    _require_interior(m)
    return params.K * m * m + params.J * m - math.atanh(m)


def phi_d2(m: float, params: CouplingPair) -> float:
    """Second derivative ``2 K m + J - 1/(1 - m**2)``."""
    _require_interior(m)
    return 2.0 * params.K * m + params.J - 1.0 / ((1.0 - m) * (1.0 + m))


def landscape_at(m: float, params: CouplingPair) -> LandscapeReport:
    """Evaluate ``phi`` and its first four derivatives at one interior point.

    Closed forms:

    * ``d1 = K m^2 + J m - arctanh(m)``
    * ``d2 = 2 K m + J - 1/(1-m^2)``
    * ``d3 = 2 K - 2 m/(1-m^2)^2``
    * ``d4 = -2 (3 m^2 + 1)/(1-m^2)^3``  (negative on all of ``(-1, 1)``)

    Raises
    ------
    DomainError
        If ``|m| > 1 - EPS_DOM``.
    """
    _require_interior(m)
    m = float(m)
    one_m2 = (1.0 - m) * (1.0 + m)
    d1 = params.K * m * m + params.J * m - math.atanh(m)
    d2 = 2.0 * params.K * m + params.J - 1.0 / one_m2
    d3 = 2.0 * params.K - 2.0 * m / one_m2**2
    d4 = -2.0 * (3.0 * m * m + 1.0) / one_m2**3
    return LandscapeReport(m=m, phi=energy(m, params) - entropy(m), d1=d1, d2=d2, d3=d3, d4=d4)


def g(m: float, K: float) -> float:
    """Branch function ``arctanh(m) - K m**2`` on ``(0, 1)``.

    Positive stationary points of ``phi`` are the intersections of the line
    ``J m`` with this function.
    """
    if not 0.0 < m < 1.0:
        raise DomainError(f"g requires 0 < m < 1, got m={m}")
    return math.atanh(m) - K * m * m


def branch_ratio(m: float, K: float) -> float:
    """``g(m, K)/m = arctanh(m)/m - K m``, the pair coupling that makes ``m``
    a positive stationary point.

    Tends to 1 as ``m -> 0+`` and to ``+inf`` as ``m -> 1-``; for ``K > 0``
    it is unimodal with a single interior minimum (the spinodal).
    """
    return math.atanh(m) / m - K * m


def _golden_min(f, lo: float, hi: float, xtol: float):
    """Golden-section minimum of a unimodal ``f`` on ``[lo, hi]``."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def psi(K: float) -> PsiResult:
    """Spinodal threshold: minimum of ``g(m, K)/m`` over ``m`` in ``(0, 1]``.

    Returns the minimum value and the minimizing ``m``.  The value is the
    smallest pair coupling ``J`` at which the line ``J m`` touches the branch
    function, i.e. at which a positive stationary point first exists.  It is
    strictly below 1 for every ``K > 0`` and tends to 1 as ``K -> 0+``.

    Bracketing: coarse argmin on a log-uniform grid, then golden-section
    refinement to ``1e-13`` absolute tolerance in ``m``.

    Raises
    ------
    DomainError
        If ``K <= 0`` (the minimum degenerates onto the boundary).
    """
    if not K > 0.0:
        raise DomainError(f"psi requires K > 0, got K={K}")
    grid = np.geomspace(1e-8, 1.0 - 1e-8, _PSI_GRID_SIZE)
    values = np.arctanh(grid) / grid - K * grid
    i = int(np.argmin(values))
    # widen one grid cell on each side; fall back to tiny lo when the argmin
    # sits at the first node (K small enough that the minimum is below 1e-8)
    lo = float(grid[i - 1]) if i > 0 else 1e-16
    hi = float(grid[i + 1]) if i < _PSI_GRID_SIZE - 1 else 1.0 - 1e-9
    argmin, value = _golden_min(lambda m: branch_ratio(m, K), lo, hi, _PSI_XTOL)
    return PsiResult(value=float(value), argmin=float(argmin))
