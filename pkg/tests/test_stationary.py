import math

import numpy as np
import pytest

from cubicmf import (
    CouplingPair,
    DegenerateMaximizerError,
    DomainError,
    Tangent,
    TwoLocalMaxima,
    UniquePositive,
    UniqueZero,
    bracket_m1,
    classify,
    landscape_at,
    psi,
    sensitivity,
    solve_consistency,
)
from helpers import central_diff, largest_maximizer, sign_change_count


def _residual(params, r):
    return abs(r - math.tanh(params.K * r * r + params.J * r))


def _bisect_tanh_fixed_point(J, lo=1e-8, hi=1.0 - 1e-12):
    # independent oracle: bisection on m - tanh(J m)
    f = lambda m: m - math.tanh(J * m)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_unique_zero_regimes():
    assert 0.2 < psi(1.0).value  # premise: 0.2 is below the spinodal at K=1
    assert solve_consistency(CouplingPair(1.0, 0.2)) == [0.0]
    assert solve_consistency(CouplingPair(0.0, 0.5)) == [0.0]


def test_curie_weiss_pair_against_bisection_oracle():
    roots = solve_consistency(CouplingPair(0.0, 1.2))
    m2 = _bisect_tanh_fixed_point(1.2)
    assert len(roots) == 3
    assert roots[1] == 0.0
    assert roots[2] == pytest.approx(m2, abs=1e-10)
    assert roots[0] == pytest.approx(-m2, abs=1e-10)


@pytest.mark.parametrize(
    "K,J",
    [(1.0, 0.9), (1.0, 1.2), (0.5, 0.87), (2.0, 0.3), (5.0, -1.5), (1.0, 1.0 - 1e-10), (0.7, 1.0)],
)
def test_root_residuals(K, J):
    params = CouplingPair(K, J)
    for r in solve_consistency(params):
        assert _residual(params, r) < 1e-11


def test_root_count_matches_sign_change_scan():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 200:
        K = rng.uniform(0.05, 3.0)
        J = rng.uniform(-1.0, 1.5)
        spin = psi(K)
        # the scan oracle cannot separate root pairs closer than its grid
        # spacing, so stay clear of the two merging boundaries
        if min(abs(J - spin.value), abs(J - 1.0)) < 1e-2:
            continue
        params = CouplingPair(K, J)
        roots = solve_consistency(params)
        assert sign_change_count(params) == len(roots), (K, J, roots)
        checked += 1


def test_curvature_alternation():
    rng = np.random.default_rng(23)
    checked = 0
    while checked < 100:
        K = rng.uniform(0.05, 3.0)
        J = rng.uniform(-1.0, 1.5)
        if min(abs(J - psi(K).value), abs(J - 1.0)) < 1e-3:
            continue
        params = CouplingPair(K, J)
        roots = solve_consistency(params)
        signs = [math.copysign(1.0, landscape_at(r, params).d2) for r in roots]
        # maxima and minima alternate, starting and ending with a maximum
        assert signs[0] == -1.0 and signs[-1] == -1.0
        assert all(a * b == -1.0 for a, b in zip(signs, signs[1:]))
        checked += 1


def test_classify_regimes_at_K1():
    spin = psi(1.0)
    assert isinstance(classify(CouplingPair(1.0, spin.value - 0.1)), UniqueZero)
    tag = classify(CouplingPair(1.0, spin.value + 2e-10))
    assert isinstance(tag, Tangent) and tag.low_confidence
    assert tag.m4 == pytest.approx(spin.argmin, abs=1e-9)
    two = classify(CouplingPair(1.0, 0.8))
    assert isinstance(two, TwoLocalMaxima)
    assert 0.0 < two.m3 < two.m1
    params = CouplingPair(1.0, 0.8)
    assert landscape_at(two.m1, params).d2 < 0.0
    assert landscape_at(two.m3, params).d2 > 0.0
    assert landscape_at(0.0, params).d2 < 0.0
    one = classify(CouplingPair(1.0, 1.1))
    assert isinstance(one, UniquePositive)
    assert landscape_at(one.m2, CouplingPair(1.0, 1.1)).d2 < 0.0
    assert len(one.negatives) == 1 and -1.0 < one.negatives[0] < 0.0


def test_classify_curie_weiss_delegation():
    assert isinstance(classify(CouplingPair(0.0, 0.8)), UniqueZero)
    assert isinstance(classify(CouplingPair(0.0, 1.0)), UniqueZero)
    tag = classify(CouplingPair(0.0, 1.3))
    assert isinstance(tag, UniquePositive)
    assert tag.negatives == (-tag.m2,)


def test_classify_flipped_orientation():
    tag = classify(CouplingPair(-1.0, 0.8))
    assert isinstance(tag, TwoLocalMaxima) and tag.flipped
    mirrored = classify(CouplingPair(1.0, 0.8))
    assert tag.m1 == mirrored.m1 and tag.m3 == mirrored.m3


def test_bracket_m1():
    lo, hi = bracket_m1(CouplingPair(1.0, 0.9))
    # (1/J - 1) J / K simplifies to (1 - J)/K
    assert lo == pytest.approx(0.1, abs=1e-12)
    assert hi == 1.0 - 1e-12
    tag = classify(CouplingPair(1.0, 0.9))
    assert lo <= tag.m1 <= hi
    # lo -> 0 as J -> 1-
    assert bracket_m1(CouplingPair(1.0, 1.0 - 1e-9))[0] == pytest.approx(1e-9, rel=1e-6)
    with pytest.raises(DomainError):
        bracket_m1(CouplingPair(-1.0, 0.9))
    with pytest.raises(DomainError):
        bracket_m1(CouplingPair(1.0, 1.0))
    with pytest.raises(DomainError):
        bracket_m1(CouplingPair(1.0, 0.2))


def test_m1_respects_bracket_across_regime():
    rng = np.random.default_rng(31)
    for _ in range(50):
        K = rng.uniform(0.1, 3.0)
        spin = psi(K)
        J = rng.uniform(spin.value + 1e-6, 1.0 - 1e-6)
        lo, hi = bracket_m1(CouplingPair(K, J))
        tag = classify(CouplingPair(K, J))
        if isinstance(tag, TwoLocalMaxima):
            assert lo <= tag.m1 <= hi


def test_sensitivity_zero_root():
    s = sensitivity(CouplingPair(1.0, 0.5), 0.0)
    assert s == (0.0, 0.0, 0.0, 0.0)


def test_sensitivity_matches_finite_differences():
    params = CouplingPair(1.0, 1.2)
    root = classify(params).m2
    s = sensitivity(params, root)
    delta = 1e-5
    fd_J = central_diff(lambda J: largest_maximizer(1.0, J), 1.2, delta)
    fd_K = central_diff(lambda K: largest_maximizer(K, 1.2), 1.0, delta)
    assert abs(fd_J - s.dm_dJ) / abs(s.dm_dJ) < 1e-5
    assert abs(fd_K - s.dm_dK) / abs(s.dm_dK) < 1e-5


def test_sensitivity_envelope_identity():
    # total J-derivative of phi at the tracked maximizer equals m^2/2
    from cubicmf import phi

    params = CouplingPair(1.0, 1.2)
    root = classify(params).m2
    s = sensitivity(params, root)
    delta = 1e-5
    fd = central_diff(lambda J: phi(largest_maximizer(1.0, J), CouplingPair(1.0, J)), 1.2, delta)
    assert abs(fd - s.dphi_dJ) / abs(s.dphi_dJ) < 1e-5
    fd_K = central_diff(lambda K: phi(largest_maximizer(K, 1.2), CouplingPair(K, 1.2)), 1.0, delta)
    assert abs(fd_K - s.dphi_dK) / abs(s.dphi_dK) < 1e-5


def test_sensitivity_degenerate_root_rejected():
    with pytest.raises(DegenerateMaximizerError):
        sensitivity(CouplingPair(0.0, 1.0), 0.0)
    # m3 is a local minimum: curvature has the wrong sign
    two = classify(CouplingPair(1.0, 0.8))
    with pytest.raises(DegenerateMaximizerError):
        sensitivity(CouplingPair(1.0, 0.8), two.m3)
