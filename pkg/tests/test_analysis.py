import dataclasses
import math

import numpy as np
import pytest

from relaylink import analysis, specfun
from relaylink.analysis import (
    PerfEstimate,
    SystemConfig,
    asep,
    asymptotic_outage,
    classify_asymptotics,
    phase1_outage,
    phase2_outage,
    sweep,
    total_outage,
    total_outage_expanded,
)
from relaylink.channels import AlphaMuParams, alpha_mu_snr_cdf
from relaylink.errors import QuadratureFailureError
from relaylink.selection import SchedulingSpec, downlink_cdf, nth_best_cdf


def config(k=1, n=1, alpha=2.0, mu=1.0, snr=1.0, gamma_th=1.0, a=1.0, b=1.0,
           alpha2=None, mu2=None):
    return SystemConfig(
        scheduling=SchedulingSpec(k, n, snr, snr),
        sr_model=AlphaMuParams(alpha, mu, snr),
        rs_model=AlphaMuParams(alpha2 or alpha, mu2 or mu, snr),
        gamma_th=gamma_th, mod_a=a, mod_b=b)


ALL_EXP = dict(alpha=2.0, mu=1.0)  # every link an exponential SNR


# -------------------------------------------------------------- outage

def test_phase1_min_of_two_exponentials():
    c = config(**ALL_EXP)
    assert phase1_outage(c) == pytest.approx(1.0 - math.exp(-2.0), abs=1e-14)


def test_phase1_vanishing_threshold():
    c = config(**ALL_EXP, gamma_th=1e-14)
    assert phase1_outage(c) == pytest.approx(0.0, abs=1e-12)


def test_phase1_compositional():
    c = config(k=3, n=2, alpha=1.68, mu=1.85, snr=10.0)
    f1 = nth_best_cdf(c.scheduling, 1.0)
    f2 = alpha_mu_snr_cdf(c.sr_model, 1.0)
    assert phase1_outage(c) == pytest.approx(1.0 - (1.0 - f1) * (1.0 - f2),
                                             abs=1e-12)


def test_phase2_min_of_two_exponentials():
    c = config(**ALL_EXP)
    assert phase2_outage(c) == pytest.approx(1.0 - math.exp(-2.0), abs=1e-14)


def test_phase2_vanishing_threshold():
    c = config(**ALL_EXP, gamma_th=1e-14)
    assert phase2_outage(c) == pytest.approx(0.0, abs=1e-12)


def test_phase2_compositional():
    c = config(alpha=0.579, mu=2.723, snr=10.0)
    f_dn = downlink_cdf(c.scheduling, 1.0)
    f_rs = alpha_mu_snr_cdf(c.rs_model, 1.0)
    assert phase2_outage(c) == pytest.approx(
        1.0 - (1.0 - f_dn) * (1.0 - f_rs), abs=1e-14)


def test_total_outage_min_of_four_exponentials():
    c = config(**ALL_EXP)
    assert total_outage(c).value == pytest.approx(1.0 - math.exp(-4.0), abs=1e-14)
    c2 = config(**ALL_EXP, gamma_th=0.01)
    assert total_outage(c2).value == pytest.approx(1.0 - math.exp(-0.04), abs=1e-14)


def test_total_outage_two_assembly_paths_agree():
    cases = [
        config(**ALL_EXP),
        config(k=3, n=1, alpha=2.0, mu=2.0, snr=10.0),
        config(k=5, n=3, alpha=1.68, mu=1.85, snr=31.6, gamma_th=2.0),
        config(k=4, n=2, alpha=0.537, mu=2.022, snr=100.0, gamma_th=0.5),
    ]
    for c in cases:
        st1, st2 = phase1_outage(c), phase2_outage(c)
        v = total_outage(c).value
        assert v == pytest.approx(st1 + st2 - st1 * st2, abs=1e-15)
        assert v == pytest.approx(total_outage_expanded(c), abs=1e-12)
        assert v == pytest.approx(1.0 - (1.0 - st1) * (1.0 - st2), abs=1e-12)


def test_total_outage_monotone_in_snr_and_threshold():
    base = config(k=3, n=2, alpha=2.0, mu=2.0, snr=1.0)
    vals = [total_outage(analysis._configure(base, "mean_snr_db", db)).value
            for db in np.linspace(0.0, 40.0, 30)]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
    vals_th = [total_outage(dataclasses.replace(base, gamma_th=g)).value
               for g in np.linspace(0.01, 10.0, 30)]
    assert all(b >= a - 1e-15 for a, b in zip(vals_th, vals_th[1:]))


# ---------------------------------------------------------------- ASEP

def test_asep_degenerate_always_outage_limit():
    # with the CDF pinned at 1 the error integral collapses to the Gaussian
    # integral and the estimate is exactly a/2 under the substitution rule
    rule = specfun.hermite_rule(64)
    a = 1.0
    val = a / (2.0 * math.sqrt(math.pi)) * math.fsum(rule.weights)
    assert val == pytest.approx(a / 2.0, abs=1e-12)


def test_asep_unresolvable_feature_raises_not_lies():
    # a smooth config whose CDF varies on a scale far below the coarsest
    # quadrature resolution must fail loudly rather than return a bad value
    c = config(**ALL_EXP, snr=1e-9)
    with pytest.raises(QuadratureFailureError):
        asep(c)


def test_asep_exponential_closed_form_oracle():
    # four i.i.d. exponential links at mean 40: end-to-end SNR is exponential
    # with mean 10, for which the BPSK average error has the closed form
    # 0.5 * (1 - sqrt(gbar_eff / (1 + gbar_eff)))
    c = config(**ALL_EXP, snr=40.0)
    oracle = 0.5 * (1.0 - math.sqrt(10.0 / 11.0))
    assert asep(c).value == pytest.approx(oracle, abs=1e-8)


def test_asep_range_and_monotone_in_snr():
    prev = 0.5
    for db in (0.0, 5.0, 10.0, 15.0, 20.0):
        c = config(k=2, n=1, alpha=2.0, mu=2.0, snr=10.0 ** (db / 10.0))
        val = asep(c).value
        assert 0.0 < val < 0.5
        assert val <= prev + 1e-12
        prev = val


def test_asep_scales_with_mod_a():
    c1 = config(k=2, n=1, alpha=2.0, mu=2.0, snr=10.0, a=1.0, b=1.0)
    c2 = dataclasses.replace(c1, mod_a=2.0)
    assert asep(c2).value == pytest.approx(2.0 * asep(c1).value, rel=1e-9)


def _adaptive_asep(c):
    a, b = c.mod_a, c.mod_b

    def integrand(t):
        return math.exp(-b * t * t) * analysis._total_outage_value(c, t * t)

    return (a * math.sqrt(b) / math.sqrt(math.pi)
            * specfun.adaptive_simpson(integrand, 0.0, math.sqrt(40.0 / b),
                                       tol=1e-10))


@pytest.mark.parametrize("c", [
    config(k=3, n=1, alpha=2.0, mu=2.0, snr=10.0),   # smooth CDF (alpha*mu = 4)
    config(k=1, n=1, alpha=2.0, mu=1.0, snr=5.0),    # alpha*mu = 2 boundary
    config(k=2, n=2, alpha=2.0, mu=2.0, snr=31.6, b=2.0),
])
def test_asep_hermite_agrees_with_adaptive_for_smooth_cdfs(c):
    assert asep(c).value == pytest.approx(_adaptive_asep(c), abs=1e-8)


def test_asep_uses_adaptive_value_for_kinked_cdfs():
    # alpha*mu < 2 puts a fractional-power kink at gamma = 0; the Hermite rule
    # converges only algebraically there, so the adaptive value is returned
    c = config(k=1, n=1, alpha=1.0, mu=1.0, snr=40.0)
    assert asep(c).value == pytest.approx(_adaptive_asep(c), abs=1e-12)


def test_asep_quadrature_failure_on_inconsistent_rule():
    # a valid but far-too-coarse rule must trip the cross-check, not return
    # silently wrong numbers (smooth config, so disagreement is an error)
    c = config(k=3, n=1, alpha=2.0, mu=2.0, snr=10.0)
    with pytest.raises(QuadratureFailureError):
        asep(c, rule=specfun.hermite_rule(2))


# ---------------------------------------------------------- asymptotics

def test_asymptotic_direct_evaluation():
    # K=N=1, alpha=2, mu=1, threshold/mean = 0.01: terms 0.01 + 0.02 + 0.01
    c = config(**ALL_EXP, snr=100.0, gamma_th=1.0)
    assert asymptotic_outage(c).value == pytest.approx(0.04, abs=1e-15)
    # exact value for comparison: 1 - e^{-0.04}, relative gap ~2.1%
    assert abs(asymptotic_outage(c).value / total_outage(c).value - 1.0) < 0.025


def test_asymptotic_vanishing_threshold():
    c = config(**ALL_EXP, snr=1.0, gamma_th=1e-12)
    assert asymptotic_outage(c).value == pytest.approx(0.0, abs=1e-10)


def test_asymptotic_ratio_tends_to_one():
    c = config(k=3, n=1, alpha=2.0, mu=2.0, snr=1e4, gamma_th=1.0)
    ratio = asymptotic_outage(c).value / total_outage(c).value
    assert 0.9 < ratio < 1.1


def test_asymptotic_requires_equal_mean_snrs():
    c = config(k=3, n=1, alpha=2.0, mu=2.0, snr=10.0)
    c = dataclasses.replace(c, sr_model=AlphaMuParams(2.0, 2.0, 11.0))
    with pytest.raises(ValueError):
        asymptotic_outage(c)
    with pytest.raises(ValueError):
        classify_asymptotics(c)


def test_classify_nakagami_selection():
    rep = classify_asymptotics(config(k=3, n=1, alpha=2.0, mu=2.0, snr=10.0))
    assert rep.diversity_order == pytest.approx(1.0)
    assert rep.dominant == frozenset({"T3"})


def test_classify_severe_turbulence_fso_dominates():
    rep = classify_asymptotics(config(k=3, n=3, alpha=0.579, mu=2.022, snr=10.0))
    assert rep.diversity_order == pytest.approx(0.579 * 2.022 / 2.0)
    assert rep.diversity_order < 1.0
    assert rep.dominant == frozenset({"T2"})


def test_classify_fully_symmetric():
    rep = classify_asymptotics(config(**ALL_EXP, snr=10.0))
    assert rep.diversity_order == pytest.approx(1.0)
    assert rep.dominant == frozenset({"T1", "T2", "T3"})


def test_classify_coding_gains_reproduce_terms():
    # each gain must satisfy term(snr) = (gain * snr)^(-order)
    c = config(k=4, n=2, alpha=2.0, mu=2.0, snr=1e3, gamma_th=0.7)
    rep = classify_asymptotics(c)
    lam_gth = c.gamma_th / 1e3
    k_tot, n = 4, 2
    psi1 = math.comb(k_tot - 1, n - 1) * k_tot / (k_tot - n + 1)
    t1 = psi1 * lam_gth ** (k_tot - n + 1)
    assert (rep.coding_gain_terms["T1"] * 1e3) ** -(k_tot - n + 1) == pytest.approx(
        t1, rel=1e-12)
    # T2 gain reproduces the combined term of both optical hops (factor 2)
    t2 = 2.0 * lam_gth ** 2.0 / (2.0 * math.gamma(2.0))
    assert (rep.coding_gain_terms["T2"] * 1e3) ** -2.0 == pytest.approx(t2, rel=1e-12)
    assert (rep.coding_gain_terms["T3"] * 1e3) ** -1.0 == pytest.approx(
        lam_gth, rel=1e-12)


def test_asymptotic_generalizes_to_distinct_optical_laws():
    # with different S->R / R->S laws each contributes its own power term
    c = config(k=1, n=1, alpha=2.0, mu=1.0, snr=100.0, alpha2=2.0, mu2=2.0)
    lam = 0.01
    expect = lam + lam / (1.0 * math.gamma(1.0)) \
        + lam ** 2.0 / (2.0 * math.gamma(2.0)) + lam
    assert asymptotic_outage(c).value == pytest.approx(expect, rel=1e-12)


# ---------------------------------------------------------------- sweep

def test_sweep_snr_monotone_and_asymptotic_column():
    base = config(k=3, n=2, alpha=2.0, mu=2.0)
    rows = sweep(base, "mean_snr_db", np.arange(0.0, 41.0, 5.0))
    vals = [r.exact.value for r in rows]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert all(r.asymptotic is not None for r in rows)
    assert all(r.mc is None for r in rows)


def test_sweep_k_nonincreasing_for_best_selection():
    base = config(k=1, n=1, alpha=2.0, mu=2.0, snr=10.0)
    rows = sweep(base, "K", range(1, 11))
    vals = [r.exact.value for r in rows]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))


def test_sweep_k_saturates_beyond_five():
    base = config(k=1, n=1, alpha=2.0, mu=2.0, snr=10.0)
    rows = sweep(base, "K", range(1, 11))
    assert rows[4].exact.value / rows[9].exact.value < 1.05


def test_sweep_gamma_th_nondecreasing():
    base = config(k=2, n=1, alpha=2.0, mu=2.0, snr=10.0)
    rows = sweep(base, "gamma_th", np.linspace(0.1, 5.0, 12))
    vals = [r.exact.value for r in rows]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_sweep_with_mc_column():
    from relaylink.mcsim import McConfig
    base = config(k=2, n=1, alpha=2.0, mu=2.0, snr=3.0)
    rows = sweep(base, "mean_snr_db", [0.0, 10.0], mc=McConfig(trials=50_000))
    for r in rows:
        assert r.mc is not None and r.mc.method == "monte_carlo"
        assert abs(r.mc.value - r.exact.value) < 5.0 * r.mc.std_error


def test_sweep_rejects_unknown_variable():
    with pytest.raises(ValueError):
        sweep(config(**ALL_EXP), "bandwidth", [1, 2])


# ----------------------------------------------------------- estimates

def test_perf_estimate_validation():
    with pytest.raises(ValueError):
        PerfEstimate(1.2, method="exact")
    with pytest.raises(ValueError):
        PerfEstimate(0.5, method="monte_carlo")  # missing std_error/trials
    with pytest.raises(ValueError):
        PerfEstimate(0.5, method="exact", std_error=0.1)
    ok = PerfEstimate(0.5, method="monte_carlo", std_error=0.01, trials=1000)
    assert ok.trials == 1000


def test_system_config_validation():
    with pytest.raises(ValueError):
        config(**ALL_EXP, gamma_th=0.0)
    with pytest.raises(ValueError):
        config(**ALL_EXP, a=-1.0)
