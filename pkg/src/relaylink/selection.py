"""Order-statistics layer for opportunistic scheduling among K i.i.d.
Rayleigh uplinks: best-of-K and generalized N-th best selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import betainc


@dataclass(frozen=True)
class SchedulingSpec:
    """K nodes, relay picks the N-th best uplink SNR."""

    k_total: int
    n_order: int
    uplink_mean_snr: float
    downlink_mean_snr: float

    def __post_init__(self):
        if not (isinstance(self.k_total, int) and isinstance(self.n_order, int)):
            raise ValueError("k_total and n_order must be integers")
        if not 1 <= self.n_order <= self.k_total:
            raise ValueError(
                f"need 1 <= n_order <= k_total, got N={self.n_order}, K={self.k_total}"
            )
        if not (self.uplink_mean_snr > 0 and self.downlink_mean_snr > 0):
            raise ValueError("mean SNRs must be positive")


def _check_nonneg(gamma):
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")


def best_select_cdf(s: SchedulingSpec, gamma: float) -> float:
    """CDF of the best of K i.i.d. exponential SNRs: (1 - e^{-g/gbar})^K."""
    _check_nonneg(gamma)
    return (-math.expm1(-gamma / s.uplink_mean_snr)) ** s.k_total


def best_select_cdf_binomial(s: SchedulingSpec, gamma: float) -> float:
    """Same CDF expanded through the binomial theorem (identity-check route)."""
    _check_nonneg(gamma)
    k_tot = s.k_total
    terms = [
        math.comb(k_tot - 1, k) * (-1.0) ** k / (k + 1)
        * -math.expm1(-(k + 1) * gamma / s.uplink_mean_snr)
        for k in range(k_tot)
    ]
    return k_tot * math.fsum(terms)


def best_select_pdf(s: SchedulingSpec, gamma: float) -> float:
    _check_nonneg(gamma)
    gbar = s.uplink_mean_snr
    f = -math.expm1(-gamma / gbar)
    return s.k_total * f ** (s.k_total - 1) * math.exp(-gamma / gbar) / gbar


def nth_best_cdf(s: SchedulingSpec, gamma: float) -> float:
    """CDF of the N-th largest of K i.i.d. exponential SNRs.

    Direct alternating binomial sum (compensated) for K <= 12; for larger K
    the regularized-incomplete-beta order-statistics identity is used to
    avoid catastrophic cancellation.
    """
    _check_nonneg(gamma)
    k_tot, n = s.k_total, s.n_order
    f = -math.expm1(-gamma / s.uplink_mean_snr)
    if k_tot > 12:
        # N-th largest <= g  iff  at least K-N+1 of K are <= g.
        return betainc(k_tot - n + 1, n, f)
    terms = [
        math.comb(k_tot - n, k) * (-1.0) ** k / (k + n)
        * -math.expm1(-(k + n) * gamma / s.uplink_mean_snr)
        for k in range(k_tot - n + 1)
    ]
    val = k_tot * math.comb(k_tot - 1, n - 1) * math.fsum(terms)
    return min(max(val, 0.0), 1.0)


def downlink_cdf(s: SchedulingSpec, gamma: float) -> float:
    """CDF of the relay-to-selected-node Rayleigh downlink."""
    _check_nonneg(gamma)
    return -math.expm1(-gamma / s.downlink_mean_snr)
