import math

import numpy as np
import pytest
from scipy.integrate import quad

from cubicmf import (
    CouplingPair,
    DomainError,
    RegimeError,
    build_spectrum,
    clt_summary,
    conditional_clt,
    critical_summary,
    gamma,
    gaussian_cdf,
    ks_distance,
    landscape_at,
    m_star,
    magnetization_law,
    psi,
    quartic_cdf,
    quartic_moment,
    quartic_normalizer,
    theoretical_weights,
)

ON_CURVE = CouplingPair(1.0, gamma(1.0).gammaK)


# ---------------------------------------------------------------------------
# reference cdfs against adaptive-quadrature oracles
# ---------------------------------------------------------------------------


# the quartic density is below 1e-300 beyond |x| = 10; a finite cutoff keeps
# quad's error estimate tight
_CUT = 10.0


def test_quartic_normalizer_against_quadrature():
    integral, err = quad(lambda x: math.exp(-(x**4) / 12.0), -_CUT, _CUT, epsabs=1e-13)
    assert err < 1e-6  # quad's self-estimate is conservative here
    assert quartic_normalizer() == pytest.approx(1.0 / integral, abs=1e-10)


@pytest.mark.parametrize("x", [-4.0, -1.7, -0.3, 0.0, 0.5, 1.0, 2.6, 5.0])
def test_quartic_cdf_against_quadrature(x):
    C = quartic_normalizer()
    target, err = quad(lambda u: C * math.exp(-(u**4) / 12.0), -_CUT, x, epsabs=1e-13)
    assert err < 1e-6  # quad's self-estimate is conservative here
    assert float(quartic_cdf(x)) == pytest.approx(target, abs=1e-10)


def test_quartic_moments_against_quadrature():
    C = quartic_normalizer()
    for order in (2, 4, 6):
        target, _ = quad(
            lambda u: C * u**order * math.exp(-(u**4) / 12.0), -_CUT, _CUT, epsabs=1e-13
        )
        assert quartic_moment(order) == pytest.approx(target, abs=1e-9)
    assert quartic_moment(1) == 0.0
    assert quartic_moment(3) == 0.0
    # the fourth moment collapses to exactly 3 through the gamma recurrence
    assert quartic_moment(4) == pytest.approx(3.0, abs=1e-14)


def test_gaussian_cdf_against_quadrature():
    sigma2 = 0.37
    cdf = gaussian_cdf(sigma2)
    for x in (-1.0, 0.0, 0.8):
        target, _ = quad(
            lambda u: math.exp(-(u**2) / (2 * sigma2)) / math.sqrt(2 * math.pi * sigma2),
            -np.inf,
            x,
            epsabs=1e-12,
        )
        assert float(cdf(x)) == pytest.approx(target, abs=1e-10)


# ---------------------------------------------------------------------------
# ks_distance
# ---------------------------------------------------------------------------


def test_ks_against_own_cdf_is_at_most_max_atom():
    law = magnetization_law(build_spectrum(200, CouplingPair(1.0, 0.9)))
    support, prob = law.support, law.prob
    cum = np.cumsum(prob)

    def own_cdf(x):
        idx = np.searchsorted(support, np.asarray(x), side="right") - 1
        out = np.where(idx >= 0, cum[np.clip(idx, 0, len(cum) - 1)], 0.0)
        return out

    assert ks_distance(support, prob, own_cdf) <= float(np.max(prob)) + 1e-15


def test_ks_binomial_vs_normal():
    N = 10_000
    law = magnetization_law(build_spectrum(N, CouplingPair(0.0, 0.0)))
    rescaled = math.sqrt(N) * law.support
    assert ks_distance(rescaled, law.prob, gaussian_cdf(1.0)) < 0.02


def test_ks_invariant_under_common_rescale():
    law = magnetization_law(build_spectrum(500, CouplingPair(1.0, 1.2)))
    cdf = gaussian_cdf(1.0)
    base = ks_distance(law.support, law.prob, cdf)
    scaled = ks_distance(2.5 * law.support, law.prob, lambda x: cdf(np.asarray(x) / 2.5))
    assert scaled == base


# ---------------------------------------------------------------------------
# Gaussian regime
# ---------------------------------------------------------------------------


def test_clt_free_spins():
    for N in [100, 10_000]:
        s = clt_summary(CouplingPair(0.0, 0.0), N)
        assert s.variance == pytest.approx(1.0, abs=1e-12)
        assert s.target_variance == 1.0  # phi''(0) = -1
        assert s.mean == 0.0
    assert clt_summary(CouplingPair(0.0, 0.0), 10_000).ks_distance < 0.02


def test_clt_polarized_convergence():
    params = CouplingPair(1.0, 1.2)
    point = m_star(params).points[0]
    target = -1.0 / point.d2
    errors = []
    kurt = []
    for N in [1000, 10_000, 100_000]:
        s = clt_summary(params, N)
        assert s.target_variance == pytest.approx(target, abs=1e-15)
        errors.append(abs(s.variance - target) / target)
        kurt.append(abs(s.kurtosis - 3.0))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 0.02
    assert kurt[0] > kurt[2]
    assert kurt[2] < 0.05


def test_clt_regime_errors():
    with pytest.raises(RegimeError):
        clt_summary(ON_CURVE, 100)
    with pytest.raises(RegimeError):
        clt_summary(CouplingPair(0.0, 1.0), 100)
    with pytest.raises(RegimeError):
        clt_summary(CouplingPair(0.0, 1.2), 100)  # symmetric pair is a mixture


# ---------------------------------------------------------------------------
# coexistence mixture
# ---------------------------------------------------------------------------


def test_weights_normalized_and_algebraic_form():
    w = theoretical_weights(ON_CURVE)
    assert w.rho0 + w.rho1 == pytest.approx(1.0, abs=1e-12)
    assert 0.0 < w.rho0 < 1.0 and 0.0 < w.rho1 < 1.0
    # (m0^2 - 1) phi''(0) reduces to 1 - J at m0 = 0
    J = ON_CURVE.J
    m1 = gamma(1.0).m1
    c1 = (m1**2 - 1.0) * landscape_at(m1, ON_CURVE).d2
    w0 = (1.0 - J) ** -0.5
    w1 = c1**-0.5
    assert w.rho0 == pytest.approx(w0 / (w0 + w1), rel=1e-9)


def test_weights_off_curve_rejected():
    with pytest.raises(RegimeError):
        theoretical_weights(CouplingPair(1.0, 0.9))
    with pytest.raises(RegimeError):
        theoretical_weights(CouplingPair(0.0, 1.0))


def test_weight_curvature_factor_specialization():
    rng = np.random.default_rng(13)
    for _ in range(100):
        params = CouplingPair(rng.uniform(-2, 2), rng.uniform(-2, 2))
        factor = (0.0**2 - 1.0) * landscape_at(0.0, params).d2
        assert factor == pytest.approx(1.0 - params.J, abs=1e-14)


def test_exact_masses_converge_to_weights():
    w = theoretical_weights(ON_CURVE)
    spin = psi(1.0)
    from cubicmf.stationary import _root_on_decreasing_branch

    m3 = _root_on_decreasing_branch(1.0, ON_CURVE.J, spin.argmin)
    errors = []
    for N in [10_000, 100_000]:
        law = magnetization_law(build_spectrum(N, ON_CURVE))
        mass0 = law.mass((-1.0, m3))
        mass1 = law.mass((m3, 1.0))
        assert abs(mass0 + mass1 - 1.0) < 1e-13
        errors.append(abs(mass0 - w.rho0))
    assert errors[1] < errors[0]
    assert errors[1] / w.rho0 < 0.05


def test_conditional_clt_branches():
    s0 = conditional_clt(ON_CURVE, 0, 100_000)
    s1 = conditional_clt(ON_CURVE, 1, 100_000)
    assert abs(s0.mean) < 0.1  # conditional mean of the unpolarized branch -> 0
    for s in (s0, s1):
        assert abs(s.variance - s.target_variance) / s.target_variance < 0.05
        assert s.ks_distance < 0.02
    assert s1.target_variance == pytest.approx(
        -1.0 / landscape_at(gamma(1.0).m1, ON_CURVE).d2, rel=1e-9
    )
    with pytest.raises(DomainError):
        conditional_clt(ON_CURVE, 2, 100)


def test_conditional_laws_recombine():
    N = 5000
    spin = psi(1.0)
    from cubicmf.stationary import _root_on_decreasing_branch

    m3 = _root_on_decreasing_branch(1.0, ON_CURVE.J, spin.argmin)
    law = magnetization_law(build_spectrum(N, ON_CURVE))
    low = law.restrict((-1.0, m3))
    high = law.restrict((m3, 1.0))
    recombined = np.concatenate(
        [low.prob * law.mass((-1.0, m3)), high.prob * law.mass((m3, 1.0))]
    )
    assert np.allclose(recombined, law.prob, rtol=1e-13, atol=0.0)


# ---------------------------------------------------------------------------
# critical quartic law
# ---------------------------------------------------------------------------


def test_critical_odd_moments_vanish_exactly():
    for N in [100, 10_000]:
        s = critical_summary(N)
        assert s.mean == 0.0
        law = magnetization_law(build_spectrum(N, CouplingPair(0.0, 1.0)))
        assert law.moment(1) == 0.0
        assert law.moment(3) == 0.0


def test_critical_moments_converge():
    second_target = quartic_moment(2)
    fourth_err = []
    second_err = []
    for N in [1000, 10_000, 100_000]:
        s = critical_summary(N)
        fourth_err.append(abs(s.kurtosis - 3.0))
        second_err.append(abs(s.variance - second_target))
    assert fourth_err[0] > fourth_err[2]
    assert second_err[0] > second_err[2]
    assert fourth_err[2] < 0.02
    assert second_err[2] < 0.01


def test_critical_ks_small():
    assert critical_summary(100_000).ks_distance < 0.02
