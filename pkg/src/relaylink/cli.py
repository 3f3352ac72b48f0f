"""Command-line front end.

Subcommands:
    fit     --eta E --beta B [--json]        turbulence -> alpha-mu fit report
    outage  SCENARIO [--sweep-snr a:b:s] ... outage CSV (exact/asymptotic/MC)
    asep    SCENARIO [--sweep-snr a:b:s] ... symbol-error CSV (quadrature/MC)
    ksweep  SCENARIO --k A..B [--n-equals-k] outage vs number of nodes

Exit codes: 0 success, 1 usage or scenario parse error, 2 solver
non-convergence, 3 Monte-Carlo self-check failure. The Monte-Carlo seed is
taken from --seed, else the RELAYLINK_SEED environment variable, else a fixed
documented default, so published CSVs are reproducible.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

import numpy as np

from . import analysis
from .channels import GammaGammaParams
from .errors import NonConvergenceError
from .ggfit import fit_alpha_mu, fit_diagnostics
from .mcsim import DEFAULT_SEED, McConfig, simulate_asep, simulate_outage
from .scenario import ScenarioError, linear_to_db, load_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONCONVERGENCE = 2
EXIT_SELFCHECK = 3


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 (argparse's default is 2, reserved here for solver failure)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="relaylink",
                     description="Two-way relay network performance toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_fit = sub.add_parser("fit", help="fit alpha-mu parameters to a "
                                       "Gamma-Gamma turbulence pair")
    p_fit.add_argument("--eta", type=float, required=True,
                       help="large-scale turbulence parameter (> 0)")
    p_fit.add_argument("--beta", type=float, required=True,
                       help="small-scale turbulence parameter (> 0)")
    p_fit.add_argument("--json", action="store_true", help="machine-readable output")
    p_fit.add_argument("--seed", type=int, default=None,
                       help="seed for the sampling-based fit diagnostic")

    for name, help_text in (("outage", "outage probability sweep"),
                            ("asep", "average symbol error probability sweep")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("scenario", help="scenario INI file")
        p.add_argument("--sweep-snr", metavar="START:STOP:STEP", default=None,
                       help="mean-SNR sweep in dB (omit for a single point)")
        p.add_argument("--mc", type=int, default=None, metavar="TRIALS",
                       help="add a Monte-Carlo column with this many trials")
        p.add_argument("--out", default=None, help="output CSV path (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="Monte-Carlo seed")
        p.add_argument("--workers", type=int, default=None,
                       help="Monte-Carlo worker threads")
        p.add_argument("--progress", action="store_true",
                       help="progress lines on standard error")

    p_k = sub.add_parser("ksweep", help="outage vs number of source nodes K")
    p_k.add_argument("scenario", help="scenario INI file")
    p_k.add_argument("--k", required=True, metavar="A..B",
                     help="inclusive K range, e.g. 1..10")
    p_k.add_argument("--n-equals-k", action="store_true",
                     help="select the worst (N = K) uplink at every K")
    p_k.add_argument("--out", default=None, help="output CSV path (default stdout)")
    return parser


def _resolve_seed(flag_value):
    if flag_value is not None:
        return flag_value
    env = os.environ.get("RELAYLINK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ScenarioError(f"RELAYLINK_SEED must be an integer, got {env!r}") from exc
    return None  # fall through to scenario-file seed, then DEFAULT_SEED


def _mc_config(args, scenario_mc):
    """Merge the scenario [mc] section with command-line overrides."""
    seed = _resolve_seed(args.seed)
    if args.mc is None and scenario_mc is None:
        return None
    base = scenario_mc if scenario_mc is not None else McConfig(trials=max(args.mc, 1000))
    return dataclasses.replace(
        base,
        trials=args.mc if args.mc is not None else base.trials,
        seed=seed if seed is not None else base.seed,
        workers=args.workers if args.workers is not None else base.workers,
    )


def _parse_snr_sweep(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ScenarioError(f"--sweep-snr expects START:STOP:STEP, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ScenarioError(f"--sweep-snr values must be numbers: {spec!r}") from exc
    if step <= 0:
        raise ScenarioError("--sweep-snr step must be positive")
    grid = []
    value = start
    while value <= stop + 1e-9:
        grid.append(value)
        value = start + len(grid) * step
    return grid


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _fmt(x):
    return "" if x is None else repr(float(x))


def _write_csv(path, header, rows):
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, (float, type(None))) else str(v)
                             for v in row])
    finally:
        if close:
            fh.close()


def cmd_fit(args) -> int:
    if args.eta is None or args.beta is None or args.eta <= 0 or args.beta <= 0:
        print("relaylink fit: error: --eta and --beta must be positive",
              file=sys.stderr)
        return EXIT_USAGE
    gg = GammaGammaParams(eta=args.eta, beta=args.beta)
    try:
        fit = fit_alpha_mu(gg)
    except NonConvergenceError as exc:
        print(f"relaylink fit: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    diag = fit_diagnostics(fit, gg, draws=200_000, rng=rng)
    if args.json:
        print(json.dumps({
            "eta": args.eta, "beta": args.beta,
            "alpha": fit.alpha, "mu": fit.mu, "rho_bar": fit.rho_bar,
            "residual_norm": fit.residual_norm, "iterations": fit.iterations,
            "ks_distance": diag.ks_distance,
            "fourth_moment_rel_error": diag.fourth_moment_rel_error,
        }))
    else:
        print(f"eta      = {args.eta:.6g}")
        print(f"beta     = {args.beta:.6g}")
        print(f"alpha    = {fit.alpha:.6f}")
        print(f"mu       = {fit.mu:.6f}")
        print(f"rho_bar  = {fit.rho_bar:.6f}")
        print(f"residual = {fit.residual_norm:.3e}")
        print(f"KS dist  = {diag.ks_distance:.4f}  ({diag.draws} draws)")
    return EXIT_OK


def _sweep_points(args, system):
    if args.sweep_snr is not None:
        return _parse_snr_sweep(args.sweep_snr), True
    # single point at the scenario's own (possibly unequal) link SNRs
    return [linear_to_db(system.scheduling.uplink_mean_snr)], False


def cmd_outage(args) -> int:
    sc = load_scenario(args.scenario)
    mc_cfg = _mc_config(args, sc.mc)
    grid, reconfigure = _sweep_points(args, sc.system)
    header = ["snr_db", "outage_exact", "outage_asymptotic", "outage_mc", "mc_stderr"]
    rows = []
    tripped = False
    for i, db in enumerate(grid):
        cfg = analysis._configure(sc.system, "mean_snr_db", db) if reconfigure \
            else sc.system
        exact = analysis.total_outage(cfg)
        try:
            asym = analysis.asymptotic_outage(cfg).value
        except ValueError:
            asym = None
        mc_val = mc_err = None
        if mc_cfg is not None:
            est = simulate_outage(cfg, mc_cfg)
            mc_val, mc_err = est.value, est.std_error
            if abs(est.value - exact.value) > 5.0 * max(est.std_error, 1e-300):
                tripped = True
        rows.append([db, exact.value, asym, mc_val, mc_err])
        if args.progress:
            print(f"outage: point {i + 1}/{len(grid)} done", file=sys.stderr)
    _write_csv(args.out, header, rows)
    if tripped:
        print("relaylink outage: Monte-Carlo self-check failed "
              "(exact vs MC beyond 5 sigma)", file=sys.stderr)
        return EXIT_SELFCHECK
    return EXIT_OK


def cmd_asep(args) -> int:
    sc = load_scenario(args.scenario)
    mc_cfg = _mc_config(args, sc.mc)
    grid, reconfigure = _sweep_points(args, sc.system)
    header = ["snr_db", "asep_quadrature", "asep_mc", "mc_stderr"]
    rows = []
    tripped = False
    for i, db in enumerate(grid):
        cfg = analysis._configure(sc.system, "mean_snr_db", db) if reconfigure \
            else sc.system
        quad = analysis.asep(cfg)
        mc_val = mc_err = None
        if mc_cfg is not None:
            est = simulate_asep(cfg, mc_cfg)
            mc_val, mc_err = est.value, est.std_error
            if abs(est.value - quad.value) > 5.0 * max(est.std_error, 1e-300):
                tripped = True
        rows.append([db, quad.value, mc_val, mc_err])
        if args.progress:
            print(f"asep: point {i + 1}/{len(grid)} done", file=sys.stderr)
    _write_csv(args.out, header, rows)
    if tripped:
        print("relaylink asep: Monte-Carlo self-check failed "
              "(quadrature vs MC beyond 5 sigma)", file=sys.stderr)
        return EXIT_SELFCHECK
    return EXIT_OK


def _parse_k_range(spec: str):
    try:
        lo_s, hi_s = spec.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise ScenarioError(f"--k expects A..B with integers, got {spec!r}") from exc
    if not 1 <= lo <= hi:
        raise ScenarioError(f"--k range must satisfy 1 <= A <= B, got {spec!r}")
    return list(range(lo, hi + 1))


def cmd_ksweep(args) -> int:
    sc = load_scenario(args.scenario)
    ks = _parse_k_range(args.k)
    rows = []
    for k in ks:
        if args.n_equals_k:
            sched = dataclasses.replace(sc.system.scheduling, k_total=k, n_order=k)
        elif sc.system.scheduling.n_order > k:
            raise ScenarioError(
                f"scenario n_order={sc.system.scheduling.n_order} exceeds K={k}; "
                f"raise the lower --k bound or use --n-equals-k")
        else:
            sched = dataclasses.replace(sc.system.scheduling, k_total=k)
        cfg = dataclasses.replace(sc.system, scheduling=sched)
        rows.append([k, analysis.total_outage(cfg).value])
    _write_csv(args.out, ["K", "outage_exact"], rows)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"fit": cmd_fit, "outage": cmd_outage, "asep": cmd_asep,
                "ksweep": cmd_ksweep}
    try:
        return handlers[args.command](args)
    except (ScenarioError, ValueError, OSError) as exc:
        print(f"relaylink {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as exc:
        print(f"relaylink {args.command}: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
