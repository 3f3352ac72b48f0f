"""Fading-distribution primitives.

PDFs, CDFs, moments and samplers for the Rayleigh and alpha-mu SNR laws, the
Gamma-Gamma turbulence model, and the link-budget map from transmit power,
noise and opto-electrical conversion ratios to average SNR.

Densities are evaluated in log space internally so large fading parameters
and small SNRs do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun


@dataclass(frozen=True)
class RayleighParams:
    """Rayleigh-faded link: exponentially distributed SNR with given mean."""

    mean_snr: float

    def __post_init__(self):
        if not self.mean_snr > 0:
            raise ValueError(f"mean_snr must be positive, got {self.mean_snr}")


@dataclass(frozen=True)
class AlphaMuParams:
    """alpha-mu faded link at SNR level.

    alpha is the power-nonlinearity parameter, mu the number of multipath
    clusters; mean_snr is the average received SNR (linear).
    """

    alpha: float
    mu: float
    mean_snr: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.mu > 0 and self.mean_snr > 0):
            raise ValueError(
                f"alpha, mu, mean_snr must be positive, got "
                f"({self.alpha}, {self.mu}, {self.mean_snr})"
            )


@dataclass(frozen=True)
class GammaGammaParams:
    """Gamma-Gamma turbulence pair: eta (large-scale), beta (small-scale)."""

    eta: float
    beta: float

    def __post_init__(self):
        if not (self.eta > 0 and self.beta > 0):
            raise ValueError(f"eta, beta must be positive, got ({self.eta}, {self.beta})")


@dataclass(frozen=True)
class LinkBudget:
    """Power/noise terms mapping to average SNR.

    For optical links the electrical-to-optical (eo_ratio) and
    optical-to-electrical (oe_ratio) conversion ratios scale the SNR.
    """

    tx_power: float
    noise_psd: float
    eo_ratio: float = 1.0
    oe_ratio: float = 1.0
    is_optical: bool = False

    def __post_init__(self):
        if not (self.tx_power > 0 and self.noise_psd > 0):
            raise ValueError("tx_power and noise_psd must be positive")
        if self.is_optical and not (0 < self.eo_ratio <= 1 and 0 < self.oe_ratio <= 1):
            raise ValueError("conversion ratios must lie in (0, 1]")


@dataclass(frozen=True)
class FadingModel:
    """Tagged union over the supported fading laws.

    kind is "rayleigh" or "alpha_mu"; exactly one of the parameter records is
    set. Named constructors cover the classic special cases of the alpha-mu
    family (one-sided Gaussian, Rayleigh, Weibull, Nakagami-m, exponential).
    """

    kind: str
    rayleigh: RayleighParams | None = None
    alpha_mu: AlphaMuParams | None = None

    def __post_init__(self):
        if self.kind == "rayleigh":
            if self.rayleigh is None or self.alpha_mu is not None:
                raise ValueError("rayleigh model requires RayleighParams only")
        elif self.kind == "alpha_mu":
            if self.alpha_mu is None or self.rayleigh is not None:
                raise ValueError("alpha_mu model requires AlphaMuParams only")
        else:
            raise ValueError(f"unknown fading kind {self.kind!r}")

    @classmethod
    def from_rayleigh(cls, mean_snr):
        return cls(kind="rayleigh", rayleigh=RayleighParams(mean_snr))

    @classmethod
    def from_alpha_mu(cls, alpha, mu, mean_snr):
        return cls(kind="alpha_mu", alpha_mu=AlphaMuParams(alpha, mu, mean_snr))

    # Named special cases (alpha, mu) of the alpha-mu family.
    @classmethod
    def one_sided_gaussian(cls, mean_snr):
        return cls.from_alpha_mu(2.0, 0.5, mean_snr)

    @classmethod
    def rayleigh_fading(cls, mean_snr):
        return cls.from_alpha_mu(2.0, 1.0, mean_snr)

    @classmethod
    def weibull(cls, mean_snr):
        return cls.from_alpha_mu(1.75, 1.0, mean_snr)

    @classmethod
    def nakagami_m(cls, mean_snr):
        return cls.from_alpha_mu(2.0, 2.0, mean_snr)

    @classmethod
    def exponential(cls, mean_snr):
        return cls.from_alpha_mu(1.0, 1.0, mean_snr)

    @property
    def mean_snr(self):
        p = self.rayleigh if self.kind == "rayleigh" else self.alpha_mu
        return p.mean_snr

    def snr_pdf(self, gamma):
        if self.kind == "rayleigh":
            return rayleigh_snr_pdf(self.rayleigh, gamma)
        return alpha_mu_snr_pdf(self.alpha_mu, gamma)

    def snr_cdf(self, gamma):
        if self.kind == "rayleigh":
            return rayleigh_snr_cdf(self.rayleigh, gamma)
        return alpha_mu_snr_cdf(self.alpha_mu, gamma)


def _check_nonneg(name, value):
    if value < 0:
        raise ValueError(f"{name} must be nonnegative, got {value}")


def rayleigh_snr_pdf(p: RayleighParams, gamma: float) -> float:
    """Exponential SNR density (1/g) exp(-gamma/g)."""
    _check_nonneg("gamma", gamma)
    return math.exp(-gamma / p.mean_snr) / p.mean_snr


def rayleigh_snr_cdf(p: RayleighParams, gamma: float) -> float:
    _check_nonneg("gamma", gamma)
    return -math.expm1(-gamma / p.mean_snr)


def alpha_mu_envelope_pdf(alpha: float, mu: float, omega: float, h: float) -> float:
    """alpha-mu envelope density with envelope scale Omega = E[h^alpha]^(1/alpha)."""
    if not (alpha > 0 and mu > 0 and omega > 0):
        raise ValueError("alpha, mu, omega must be positive")
    _check_nonneg("h", h)
    if h == 0.0:
        # limit: density is 0 unless alpha*mu == 1, where it is alpha*mu^mu/(Gamma(mu)*Omega)
        if alpha * mu == 1.0:
            return alpha * math.exp(mu * math.log(mu) - math.lgamma(mu)) / omega
        return 0.0 if alpha * mu > 1.0 else math.inf
    log_pdf = (math.log(alpha) + mu * math.log(mu) + (alpha * mu - 1.0) * math.log(h)
               - math.lgamma(mu) - alpha * mu * math.log(omega)
               - mu * (h / omega) ** alpha)
    return math.exp(log_pdf)


def alpha_mu_envelope_cdf(alpha: float, mu: float, omega: float, h: float) -> float:
    if not (alpha > 0 and mu > 0 and omega > 0):
        raise ValueError("alpha, mu, omega must be positive")
    _check_nonneg("h", h)
    return specfun.reg_lower_inc_gamma(mu, mu * (h / omega) ** alpha)


def alpha_mu_snr_pdf(p: AlphaMuParams, gamma: float) -> float:
    """SNR density of the alpha-mu law with average SNR p.mean_snr."""
    _check_nonneg("gamma", gamma)
    a, mu, gbar = p.alpha, p.mu, p.mean_snr
    if gamma == 0.0:
        if a * mu == 2.0:
            return math.exp(mu * math.log(mu) - math.lgamma(mu)
                            + math.log(a / 2.0) - (a * mu / 2.0) * math.log(gbar))
        return 0.0 if a * mu > 2.0 else math.inf
    log_pdf = (math.log(a / 2.0) + mu * (math.log(mu) - (a / 2.0) * math.log(gbar))
               - math.lgamma(mu) + (a * mu / 2.0 - 1.0) * math.log(gamma)
               - mu * (gamma / gbar) ** (a / 2.0))
    return math.exp(log_pdf)


def alpha_mu_snr_cdf(p: AlphaMuParams, gamma: float) -> float:
    """P(mu, mu * (gamma/mean_snr)^(alpha/2))."""
    _check_nonneg("gamma", gamma)
    z = p.mu * (gamma / p.mean_snr) ** (p.alpha / 2.0)
    return specfun.reg_lower_inc_gamma(p.mu, z)


def alpha_mu_sample(p: AlphaMuParams, u: float) -> float:
    """Inverse-transform sample: the gamma with alpha_mu_snr_cdf(p, gamma) = u."""
    if not 0.0 < u < 1.0:
        raise ValueError(f"u must lie in (0, 1), got {u}")
    x = specfun.inv_reg_lower_inc_gamma(p.mu, u)
    return p.mean_snr * (x / p.mu) ** (2.0 / p.alpha)


def gamma_gamma_moment(p: GammaGammaParams, n: int) -> float:
    """n-th moment of the unit-mean Gamma-Gamma law."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    e, b = p.eta, p.beta
    return math.exp(-n * math.log(e * b) + math.lgamma(e + n) + math.lgamma(b + n)
                    - math.lgamma(e) - math.lgamma(b))


def alpha_mu_moment(alpha: float, mu: float, rho_bar: float, n: int) -> float:
    """n-th envelope moment, rho_bar^{-n} Gamma(mu + n/alpha) / (mu^{n/alpha} Gamma(mu))."""
    if not (alpha > 0 and mu > 0 and rho_bar > 0):
        raise ValueError("alpha, mu, rho_bar must be positive")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return math.exp(-n * math.log(rho_bar) + math.lgamma(mu + n / alpha)
                    - (n / alpha) * math.log(mu) - math.lgamma(mu))


def gamma_gamma_sample(p: GammaGammaParams, rng: np.random.Generator, size=None):
    """Draw from the unit-mean Gamma-Gamma law as a product of two independent
    Gamma variates with shapes (eta, beta) and scales (1/eta, 1/beta)."""
    x = rng.gamma(p.eta, 1.0 / p.eta, size)
    y = rng.gamma(p.beta, 1.0 / p.beta, size)
    return x * y


def link_snr(budget: LinkBudget, channel_gain_sq: float) -> float:
    """Instantaneous SNR from the link budget and squared channel gain."""
    _check_nonneg("channel_gain_sq", channel_gain_sq)
    snr = budget.tx_power / budget.noise_psd * channel_gain_sq
    if budget.is_optical:
        snr *= budget.eo_ratio * budget.oe_ratio
    return snr
