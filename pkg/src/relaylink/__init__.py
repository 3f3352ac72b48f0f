"""Two-way relay network performance over mixed RF and free-space-optical
links: exact outage, symbol-error quadrature, high-SNR asymptotics,
turbulence-model fitting and a reproducible Monte-Carlo engine."""

from .analysis import (
    AsymptoticReport,
    PerfEstimate,
    SweepRow,
    SystemConfig,
    asep,
    asymptotic_outage,
    classify_asymptotics,
    phase1_outage,
    phase2_outage,
    sweep,
    total_outage,
)
from .channels import (
    AlphaMuParams,
    FadingModel,
    GammaGammaParams,
    LinkBudget,
    RayleighParams,
)
from .errors import NonConvergenceError, QuadratureFailureError
from .ggfit import (
    FitDiagnostics,
    FitOptions,
    FitResult,
    fit_alpha_mu,
    fit_diagnostics,
    fitted_alpha_mu_snr,
)
from .mcsim import DEFAULT_SEED, McConfig, rng_stream, simulate_asep, simulate_outage
from .scenario import Scenario, ScenarioError, load_scenario, save_scenario, serialize_scenario
from .selection import SchedulingSpec

__all__ = [
    "AlphaMuParams", "AsymptoticReport", "DEFAULT_SEED", "FadingModel",
    "FitDiagnostics", "FitOptions", "FitResult", "GammaGammaParams",
    "LinkBudget", "McConfig", "NonConvergenceError", "PerfEstimate",
    "QuadratureFailureError", "RayleighParams", "Scenario", "ScenarioError",
    "SchedulingSpec", "SweepRow", "SystemConfig", "asep", "asymptotic_outage",
    "classify_asymptotics", "fit_alpha_mu", "fit_diagnostics",
    "fitted_alpha_mu_snr", "load_scenario", "phase1_outage", "phase2_outage",
    "rng_stream", "save_scenario", "serialize_scenario", "simulate_asep",
    "simulate_outage", "sweep", "total_outage",
]

__version__ = "0.1.0"
