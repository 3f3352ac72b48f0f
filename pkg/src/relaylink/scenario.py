"""INI scenario files: parsing, validation and canonical serialization.

Sections and keys (dB variants carry a _db suffix and are converted with
10^(x/10); giving both forms of the same quantity is an error):

    [scheduling]  k_total, n_order, gamma_th | gamma_th_db
    [uplink]      mean_snr | mean_snr_db
    [downlink]    mean_snr | mean_snr_db
    [sr_link]     alpha, mu, mean_snr | mean_snr_db
    [rs_link]     alpha, mu, mean_snr | mean_snr_db
    [modulation]  a, b                      (optional, defaults 1, 1)
    [mc]          trials, seed, workers, batch  (optional)

Parsing is fail-closed: unknown sections or keys raise ScenarioError rather
than being ignored.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

from .analysis import SystemConfig
from .channels import AlphaMuParams
from .mcsim import DEFAULT_SEED, McConfig
from .selection import SchedulingSpec


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario file."""


@dataclass(frozen=True)
class Scenario:
    system: SystemConfig
    mc: McConfig | None = None


_SCHEMA = {
    "scheduling": {"k_total", "n_order", "gamma_th", "gamma_th_db"},
    "uplink": {"mean_snr", "mean_snr_db"},
    "downlink": {"mean_snr", "mean_snr_db"},
    "sr_link": {"alpha", "mu", "mean_snr", "mean_snr_db"},
    "rs_link": {"alpha", "mu", "mean_snr", "mean_snr_db"},
    "modulation": {"a", "b"},
    "mc": {"trials", "seed", "workers", "batch"},
}
_REQUIRED_SECTIONS = ("scheduling", "uplink", "downlink", "sr_link", "rs_link")


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    import math
    if x <= 0:
        raise ValueError(f"cannot express nonpositive value {x} in dB")
    return 10.0 * math.log10(x)


def parse_scenario(text: str) -> Scenario:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ScenarioError(f"invalid INI syntax: {exc}") from exc

    for section in cp.sections():
        if section not in _SCHEMA:
            raise ScenarioError(f"unknown section [{section}]")
        for key in cp[section]:
            if key not in _SCHEMA[section]:
                raise ScenarioError(f"unknown key {key!r} in section [{section}]")
    for section in _REQUIRED_SECTIONS:
        if section not in cp:
            raise ScenarioError(f"missing required section [{section}]")

    def get_float(section, key):
        try:
            return cp.getfloat(section, key)
        except ValueError as exc:
            raise ScenarioError(f"[{section}] {key}: not a number") from exc

    def get_int(section, key):
        try:
            return cp.getint(section, key)
        except ValueError as exc:
            raise ScenarioError(f"[{section}] {key}: not an integer") from exc

    def get_linear(section, base):
        has_lin = cp.has_option(section, base)
        has_db = cp.has_option(section, base + "_db")
        if has_lin and has_db:
            raise ScenarioError(
                f"[{section}]: give {base} or {base}_db, not both")
        if has_lin:
            return get_float(section, base)
        if has_db:
            return db_to_linear(get_float(section, base + "_db"))
        raise ScenarioError(f"[{section}]: missing {base} (or {base}_db)")

    def require(section, key):
        if not cp.has_option(section, key):
            raise ScenarioError(f"[{section}]: missing {key}")

    for key in ("k_total", "n_order"):
        require("scheduling", key)
    for link in ("sr_link", "rs_link"):
        for key in ("alpha", "mu"):
            require(link, key)

    try:
        sched = SchedulingSpec(
            k_total=get_int("scheduling", "k_total"),
            n_order=get_int("scheduling", "n_order"),
            uplink_mean_snr=get_linear("uplink", "mean_snr"),
            downlink_mean_snr=get_linear("downlink", "mean_snr"),
        )
        sr = AlphaMuParams(get_float("sr_link", "alpha"),
                           get_float("sr_link", "mu"),
                           get_linear("sr_link", "mean_snr"))
        rs = AlphaMuParams(get_float("rs_link", "alpha"),
                           get_float("rs_link", "mu"),
                           get_linear("rs_link", "mean_snr"))
        mod_a = get_float("modulation", "a") if cp.has_option("modulation", "a") else 1.0
        mod_b = get_float("modulation", "b") if cp.has_option("modulation", "b") else 1.0
        system = SystemConfig(scheduling=sched, sr_model=sr, rs_model=rs,
                              gamma_th=get_linear("scheduling", "gamma_th"),
                              mod_a=mod_a, mod_b=mod_b)
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(str(exc)) from exc

    mc = None
    if "mc" in cp:
        require("mc", "trials")
        try:
            mc = McConfig(
                trials=get_int("mc", "trials"),
                seed=get_int("mc", "seed") if cp.has_option("mc", "seed") else DEFAULT_SEED,
                workers=get_int("mc", "workers") if cp.has_option("mc", "workers") else 1,
                batch=get_int("mc", "batch") if cp.has_option("mc", "batch") else 1_000_000,
            )
        except ValueError as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(str(exc)) from exc
    return Scenario(system=system, mc=mc)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def serialize_scenario(sc: Scenario) -> str:
    """Canonical text form: fixed section/key order, linear (non-dB) values
    via repr, so parse -> serialize -> parse is the identity."""
    c = sc.system
    cp = configparser.ConfigParser(interpolation=None)
    cp["scheduling"] = {
        "k_total": str(c.scheduling.k_total),
        "n_order": str(c.scheduling.n_order),
        "gamma_th": repr(c.gamma_th),
    }
    cp["uplink"] = {"mean_snr": repr(c.scheduling.uplink_mean_snr)}
    cp["downlink"] = {"mean_snr": repr(c.scheduling.downlink_mean_snr)}
    cp["sr_link"] = {"alpha": repr(c.sr_model.alpha), "mu": repr(c.sr_model.mu),
                     "mean_snr": repr(c.sr_model.mean_snr)}
    cp["rs_link"] = {"alpha": repr(c.rs_model.alpha), "mu": repr(c.rs_model.mu),
                     "mean_snr": repr(c.rs_model.mean_snr)}
    cp["modulation"] = {"a": repr(c.mod_a), "b": repr(c.mod_b)}
    if sc.mc is not None:
        cp["mc"] = {"trials": str(sc.mc.trials), "seed": str(sc.mc.seed),
                    "workers": str(sc.mc.workers), "batch": str(sc.mc.batch)}
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def save_scenario(sc: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_scenario(sc))
