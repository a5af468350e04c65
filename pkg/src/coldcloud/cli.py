"""Command-line interface: curve emission and analytic-vs-MC validation.

Every subcommand reads one JSON config (SI units throughout), writes CSV
data files plus a JSON run manifest into the output directory, and exits 0
on success.  Outputs are byte-identical for identical config and seed.

Config layout (keys follow the parameter bundles of the library)::

    {
      "cloud":   {"n_total": 1e6, "sigma_r": 1e-3,
                  "sigma_v": 0.1            # or "temperature" and "mass"
                  , "g": 9.81},
      "beam":    {"w0": 100e-6, "lambda": 852e-9},
      "optical": {"delta": 10.0, "s_m0": 0.3},
      "cavity":  {"kappa": 5e6, "tau_c": 1e-9},
      "grids":   {"t": {"start": 0, "stop": 0.03, "num": 61},
                  "T": [0.005, 0.01, 0.02],
                  "tau": {"start": -2e-3, "stop": 2e-3, "num": 201},
                  "omega": {"start": 10.0, "stop": 1e5, "num": 200,
                             "spacing": "log"}},
      "mc":      {"realizations": 10000, "seed": 20250801},
      "tolerances": {"mc_sigma": 3.0, "fail_sigma": 5.0, "fail_points": 2}
    }

Grid entries accept either an explicit list or a start/stop/num range;
missing grids fall back to defaults derived from the cloud time scales.
Exit codes: 0 success (all validation checks pass), 1 physics/validation
failure, 2 malformed config or usage.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .beam import BeamParams, beam_section
from .cavity import CavityParams, cooperativity, detuning_shift, detuning_spectrum, is_linear_regime
from .cloud import CloudParams, time_scales
from .effnum import (
    EffNumInputs,
    sigma_general,
    sigma_high_temperature,
    sigma_long_rayleigh,
    sigma_small_waist,
)
from .fluct import (
    covariance_exact,
    covariance_quasistationary,
    mean_number,
    normalized_spectrum,
    scaled_fluct_params,
    spectrum_exponential,
    spectrum_series,
    variance,
)
from .mc_oracle import binary_count_check, ensemble_stats
from .optical import OpticalParams
from .saturation import sigma_saturated_closed, sigma_saturated_general

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

SUBCOMMANDS = (
    "mean",
    "sigma",
    "saturated",
    "variance",
    "covariance",
    "spectrum",
    "detuning-spectrum",
    "mc",
    "validate",
)

_OUT_DIR_ENV = "COLDCLOUD_OUT_DIR"


class ConfigError(ValueError):
    """Malformed configuration; carries the offending field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"config field '{field}': {message}")
        self.field = field


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def _require(section: dict, section_name: str, key: str):
    if key not in section:
        raise ConfigError(f"{section_name}.{key}", "missing required field")
    return section[key]


def _number(section: dict, section_name: str, key: str) -> float:
    value = _require(section, section_name, key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{section_name}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _parse_grid(entry, name: str) -> np.ndarray:
    if isinstance(entry, list):
        if not entry:
            raise ConfigError(f"grids.{name}", "grid list is empty")
        return np.asarray(entry, dtype=float)
    if isinstance(entry, dict):
        start = _number(entry, f"grids.{name}", "start")
        stop = _number(entry, f"grids.{name}", "stop")
        num = _require(entry, f"grids.{name}", "num")
        if not isinstance(num, int) or num < 1:
            raise ConfigError(f"grids.{name}.num", f"expected a positive integer, got {num!r}")
        spacing = entry.get("spacing", "linear")
        if spacing == "linear":
            return np.linspace(start, stop, num)
        if spacing == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError(f"grids.{name}", "log spacing needs positive bounds")
            return np.geomspace(start, stop, num)
        raise ConfigError(f"grids.{name}.spacing", f"unknown spacing {spacing!r}")
    raise ConfigError(f"grids.{name}", "expected a list or a start/stop/num range")


@dataclass
class RunConfig:
    """Validated configuration with every grid materialized."""

    cloud: CloudParams
    beam: BeamParams
    optical: OpticalParams
    cavity: CavityParams | None
    t_grid: np.ndarray
    big_t_grid: np.ndarray
    tau_grid: np.ndarray
    omega_grid: np.ndarray
    mc_realizations: int
    mc_seed: int
    tolerances: dict
    raw: dict


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("<file>", "top level must be a JSON object")

    cloud_cfg = raw.get("cloud")
    if not isinstance(cloud_cfg, dict):
        raise ConfigError("cloud", "missing required section")
    beam_cfg = raw.get("beam")
    if not isinstance(beam_cfg, dict):
        raise ConfigError("beam", "missing required section")

    has_sigma_v = "sigma_v" in cloud_cfg
    has_thermal = "temperature" in cloud_cfg or "mass" in cloud_cfg
    if has_sigma_v and has_thermal:
        raise ConfigError("cloud.sigma_v", "give either sigma_v or (temperature, mass), not both")
    if not has_sigma_v and not has_thermal:
        raise ConfigError("cloud.sigma_v", "one of sigma_v or (temperature, mass) is required")
    try:
        if has_sigma_v:
            cloud = CloudParams(
                n_total=_number(cloud_cfg, "cloud", "n_total"),
                sigma_r=_number(cloud_cfg, "cloud", "sigma_r"),
                sigma_v=_number(cloud_cfg, "cloud", "sigma_v"),
                g=float(cloud_cfg.get("g", 0.0)),
            )
        else:
            cloud = CloudParams.from_temperature(
                n_total=_number(cloud_cfg, "cloud", "n_total"),
                sigma_r=_number(cloud_cfg, "cloud", "sigma_r"),
                temperature=_number(cloud_cfg, "cloud", "temperature"),
                mass=_number(cloud_cfg, "cloud", "mass"),
                g=float(cloud_cfg.get("g", 0.0)),
            )
    except ValueError as exc:
        raise ConfigError("cloud", str(exc)) from exc

    try:
        beam = BeamParams(
            w0=_number(beam_cfg, "beam", "w0"),
            wavelength=_number(beam_cfg, "beam", "lambda"),
        )
    except ValueError as exc:
        raise ConfigError("beam", str(exc)) from exc

    optical_cfg = raw.get("optical", {})
    if not isinstance(optical_cfg, dict):
        raise ConfigError("optical", "expected an object")
    try:
        optical = OpticalParams(
            delta=float(optical_cfg.get("delta", 10.0)),
            s_m0=float(optical_cfg.get("s_m0", 0.0)),
        )
    except ValueError as exc:
        raise ConfigError("optical", str(exc)) from exc

    cavity_cfg = raw.get("cavity")
    cavity = None
    if cavity_cfg is not None:
        if not isinstance(cavity_cfg, dict):
            raise ConfigError("cavity", "expected an object")
        try:
            cavity = CavityParams(
                kappa=_number(cavity_cfg, "cavity", "kappa"),
                tau_c=_number(cavity_cfg, "cavity", "tau_c"),
            )
        except ValueError as exc:
            raise ConfigError("cavity", str(exc)) from exc

    ts = time_scales(cloud, beam)
    grids = raw.get("grids", {})
    if not isinstance(grids, dict):
        raise ConfigError("grids", "expected an object")
    t_grid = (
        _parse_grid(grids["t"], "t") if "t" in grids
        else np.linspace(0.0, 3.0 * ts.tau_r, 61)
    )
    big_t_grid = (
        _parse_grid(grids["T"], "T") if "T" in grids
        else np.array([0.5, 1.0, 2.0]) * ts.tau_r
    )
    tau_grid = (
        _parse_grid(grids["tau"], "tau") if "tau" in grids
        else np.linspace(-8.0 * ts.tau_w, 8.0 * ts.tau_w, 161)
    )
    omega_grid = (
        _parse_grid(grids["omega"], "omega") if "omega" in grids
        else np.linspace(0.0, 8.0 / ts.tau_w, 161)
    )
    if np.any(t_grid < 0) or np.any(big_t_grid < 0):
        raise ConfigError("grids", "time grids must be nonnegative")

    mc_cfg = raw.get("mc", {})
    if not isinstance(mc_cfg, dict):
        raise ConfigError("mc", "expected an object")
    realizations = mc_cfg.get("realizations", 10000)
    if not isinstance(realizations, int) or realizations < 2:
        raise ConfigError("mc.realizations", f"expected an integer >= 2, got {realizations!r}")
    seed = mc_cfg.get("seed", 20250801)
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("mc.seed", f"expected a nonnegative integer, got {seed!r}")

    tolerances = {"mc_sigma": 3.0, "fail_sigma": 5.0, "fail_points": 2}
    tol_cfg = raw.get("tolerances", {})
    if not isinstance(tol_cfg, dict):
        raise ConfigError("tolerances", "expected an object")
    tolerances.update(tol_cfg)

    return RunConfig(
        cloud=cloud,
        beam=beam,
        optical=optical,
        cavity=cavity,
        t_grid=t_grid,
        big_t_grid=big_t_grid,
        tau_grid=tau_grid,
        omega_grid=omega_grid,
        mc_realizations=realizations,
        mc_seed=seed,
        tolerances=tolerances,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_csv(path: str, header: list[str], columns: list[np.ndarray]) -> None:
    """Comma-separated, '.' decimal, 17 significant digits, one header row."""
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for i in range(rows):
            handle.write(",".join(_fmt(col[i]) for col in columns) + "\n")


def _derived_scales(cfg: RunConfig) -> dict:
    ts = time_scales(cfg.cloud, cfg.beam)
    zeta = 0.0 if math.isinf(ts.tau_g) else (ts.tau_r / ts.tau_g) ** 2
    return {
        "tau_r_s": ts.tau_r,
        "tau_g_s": None if math.isinf(ts.tau_g) else ts.tau_g,
        "tau_w0_s": ts.tau_w,
        "zeta": zeta,
        "rayleigh_length_m": cfg.beam.rayleigh_length,
        "waist_section_m2": beam_section(cfg.beam, 0.0),
    }


def write_manifest(
    out_dir: str,
    subcommand: str,
    cfg: RunConfig,
    seed: int,
    threads: int,
    outputs: list[str],
    extra: dict | None = None,
) -> str:
    manifest = {
        "tool": "coldcloud",
        "version": __version__,
        "subcommand": subcommand,
        "seed": seed,
        "threads": threads,
        "derived": _derived_scales(cfg),
        "outputs": outputs,
        "config": cfg.raw,
    }
    if extra:
        manifest.update(extra)
    name = subcommand.replace("-", "_") + "_manifest.json"
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return name


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_mean(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    t = cfg.t_grid
    write_csv(
        os.path.join(out_dir, "mean.csv"),
        ["t_s", "mean_number"],
        [t, np.asarray(mean_number(inp, t))],
    )
    write_manifest(out_dir, "mean", cfg, seed, threads, ["mean.csv"])
    return EXIT_OK


def _cmd_sigma(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    t = cfg.t_grid
    general = np.array([sigma_general(inp, ti) for ti in t])
    write_csv(
        os.path.join(out_dir, "sigma.csv"),
        ["t_s", "sigma_general", "sigma_small_waist", "sigma_long_rayleigh",
         "sigma_high_temperature"],
        [t, general,
         np.asarray(sigma_small_waist(inp, t)),
         np.asarray(sigma_long_rayleigh(inp, t)),
         np.asarray(sigma_high_temperature(inp, t))],
    )
    write_manifest(out_dir, "sigma", cfg, seed, threads, ["sigma.csv"])
    return EXIT_OK


def _cmd_saturated(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    t = cfg.t_grid
    closed = np.asarray(sigma_saturated_closed(inp, cfg.optical, t))
    general = np.array([sigma_saturated_general(inp, cfg.optical, ti) for ti in t])
    write_csv(
        os.path.join(out_dir, "saturated.csv"),
        ["t_s", "sigma_saturated_closed", "sigma_saturated_general"],
        [t, closed, general],
    )
    write_manifest(
        out_dir, "saturated", cfg, seed, threads, ["saturated.csv"],
        extra={"s_m0": cfg.optical.s_m0},
    )
    return EXIT_OK


def _cmd_variance(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    t = cfg.t_grid
    mean = np.asarray(mean_number(inp, t))
    var = np.asarray(variance(inp, t))
    write_csv(
        os.path.join(out_dir, "variance.csv"),
        ["t_s", "mean_number", "variance", "variance_over_mean"],
        [t, mean, var, var / mean],
    )
    write_manifest(out_dir, "variance", cfg, seed, threads, ["variance.csv"])
    return EXIT_OK


def _cmd_covariance(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    ts = time_scales(cfg.cloud, cfg.beam)
    p = scaled_fluct_params(inp)
    rows_t, rows_tau, rows_exact, rows_qs, rows_gap = [], [], [], [], []
    for big_t in cfg.big_t_grid:
        # keep both sampling times nonnegative
        valid = np.abs(cfg.tau_grid) <= 2.0 * big_t
        tau = cfg.tau_grid[valid]
        if tau.size == 0:
            continue
        exact = np.asarray(covariance_exact(inp, big_t, tau))
        quasi = np.asarray(covariance_quasistationary(p, ts.tau_w, big_t, tau))
        rows_t.append(np.full(tau.size, big_t))
        rows_tau.append(tau)
        rows_exact.append(exact)
        rows_qs.append(quasi)
        rows_gap.append(np.abs(quasi - exact) / np.abs(exact))
    if not rows_t:
        raise ValueError("no valid (T, tau) pairs: tau grid exceeds 2*T everywhere")
    write_csv(
        os.path.join(out_dir, "covariance.csv"),
        ["T_s", "tau_s", "covariance_exact", "covariance_quasistationary",
         "relative_gap"],
        [np.concatenate(c) for c in (rows_t, rows_tau, rows_exact, rows_qs, rows_gap)],
    )
    write_manifest(out_dir, "covariance", cfg, seed, threads, ["covariance.csv"])
    return EXIT_OK


def _cmd_spectrum(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    ts = time_scales(cfg.cloud, cfg.beam)
    p = scaled_fluct_params(inp)
    omega = cfg.omega_grid
    cols = {name: [] for name in ("T", "omega", "series", "exponential", "normalized")}
    for big_t in cfg.big_t_grid:
        cols["T"].append(np.full(omega.size, big_t))
        cols["omega"].append(omega)
        cols["series"].append(np.asarray(spectrum_series(p, ts.tau_w, big_t, omega)))
        cols["exponential"].append(np.asarray(spectrum_exponential(p, ts.tau_w, big_t, omega)))
        cols["normalized"].append(np.asarray(normalized_spectrum(p, ts.tau_w, big_t, omega)))
    omega_all = np.concatenate(cols["omega"])
    write_csv(
        os.path.join(out_dir, "spectrum.csv"),
        ["T_s", "omega_rad_s", "omega_hz", "spectrum_series_s",
         "spectrum_exponential_s", "normalized_spectrum_s"],
        [np.concatenate(cols["T"]), omega_all, omega_all / (2.0 * math.pi),
         np.concatenate(cols["series"]), np.concatenate(cols["exponential"]),
         np.concatenate(cols["normalized"])],
    )
    write_manifest(out_dir, "spectrum", cfg, seed, threads, ["spectrum.csv"])
    return EXIT_OK


def _cmd_detuning_spectrum(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    if cfg.cavity is None:
        raise ConfigError("cavity", "required for the detuning-spectrum subcommand")
    inp = EffNumInputs(cfg.cloud, cfg.beam)
    omega = cfg.omega_grid
    cols_t, cols_omega, cols_s = [], [], []
    regime = {}
    for big_t in cfg.big_t_grid:
        noise = np.asarray(
            detuning_spectrum(cfg.cavity, cfg.beam, cfg.optical, inp, big_t, omega)
        )
        cols_t.append(np.full(omega.size, big_t))
        cols_omega.append(omega)
        cols_s.append(noise)
        n_mean = mean_number(inp, big_t)
        regime[_fmt(big_t)] = {
            "cooperativity": cooperativity(cfg.cavity, cfg.beam, n_mean),
            "detuning_shift_rad_s": detuning_shift(cfg.cavity, cfg.beam, cfg.optical, n_mean),
            "linear_regime": is_linear_regime(cfg.cavity, cfg.beam, cfg.optical, inp, big_t),
        }
    omega_all = np.concatenate(cols_omega)
    write_csv(
        os.path.join(out_dir, "detuning_spectrum.csv"),
        ["T_s", "omega_rad_s", "omega_hz", "detuning_noise_rad_s"],
        [np.concatenate(cols_t), omega_all, omega_all / (2.0 * math.pi),
         np.concatenate(cols_s)],
    )
    write_manifest(
        out_dir, "detuning-spectrum", cfg, seed, threads,
        ["detuning_spectrum.csv"], extra={"per_fall_time": regime},
    )
    return EXIT_OK


def _mc_times(cfg: RunConfig) -> np.ndarray:
    ts = time_scales(cfg.cloud, cfg.beam)
    if "t" in cfg.raw.get("grids", {}):
        t = cfg.t_grid
        # cap the grid so the covariance jackknife stays light
        return t if t.size <= 8 else np.linspace(t[0], t[-1], 5)
    return np.linspace(0.0, 2.0 * ts.tau_r, 5)


def _cmd_mc(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    times = _mc_times(cfg)
    stats = ensemble_stats(cfg.cloud, cfg.beam, times, cfg.mc_realizations, seed, threads)
    write_csv(
        os.path.join(out_dir, "mc_stats.csv"),
        ["t_s", "mc_mean", "mc_se_mean", "mc_variance", "mc_se_variance"],
        [stats.times, stats.mean, stats.se_mean, stats.variance, stats.se_variance],
    )
    m = times.size
    ii, jj = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    write_csv(
        os.path.join(out_dir, "mc_covariance.csv"),
        ["t_s", "t_prime_s", "mc_covariance", "mc_se_covariance"],
        [stats.times[ii.ravel()], stats.times[jj.ravel()],
         stats.covariance.ravel(), stats.se_covariance.ravel()],
    )
    write_manifest(
        out_dir, "mc", cfg, seed, threads, ["mc_stats.csv", "mc_covariance.csv"],
        extra={"realizations": stats.realization_count},
    )
    return EXIT_OK


def _validate_branch(cfg: RunConfig, cloud: CloudParams, label: str, times, seed: int, threads: int):
    """z-scores of one MC ensemble against the closed forms."""
    inp = EffNumInputs(cloud, cfg.beam)
    stats = ensemble_stats(cloud, cfg.beam, times, cfg.mc_realizations, seed, threads)
    checks = []
    mean_th = np.asarray(mean_number(inp, times))
    var_th = np.asarray(variance(inp, times))
    for j, t in enumerate(times):
        checks.append((f"{label}.mean[t={t:g}]", stats.mean[j], mean_th[j],
                       (stats.mean[j] - mean_th[j]) / stats.se_mean[j]))
        checks.append((f"{label}.variance[t={t:g}]", stats.variance[j], var_th[j],
                       (stats.variance[j] - var_th[j]) / stats.se_variance[j]))
    for j in range(times.size):
        for k in range(j + 1, times.size):
            th = covariance_exact(inp, 0.5 * (times[j] + times[k]), times[j] - times[k])
            z = (stats.covariance[j, k] - th) / stats.se_covariance[j, k]
            checks.append((f"{label}.covariance[t={times[j]:g},t'={times[k]:g}]",
                           stats.covariance[j, k], th, z))

    half = 0.5 * cloud.sigma_r
    report = binary_count_check(
        cloud, ((-half, -half, -half), (half, half, half)),
        times, cfg.mc_realizations, seed + 1, threads,
    )
    for j, t in enumerate(times):
        z = (report.ratio[j] - 1.0) / report.ratio_se[j]
        checks.append((f"{label}.poisson_ratio[t={t:g}]", report.ratio[j], 1.0, z))
    return checks


def _cmd_validate(cfg: RunConfig, out_dir: str, seed: int, threads: int) -> int:
    times = _mc_times(cfg)
    checks = _validate_branch(cfg, cfg.cloud, "gravity", times, seed, threads)
    if cfg.cloud.has_gravity:
        free = CloudParams(cfg.cloud.n_total, cfg.cloud.sigma_r, cfg.cloud.sigma_v, 0.0)
        checks += _validate_branch(cfg, free, "free", times, seed + 1000, threads)

    tol = float(cfg.tolerances["mc_sigma"])
    fail_sigma = float(cfg.tolerances["fail_sigma"])
    fail_points = int(cfg.tolerances["fail_points"])
    names = [c[0] for c in checks]
    z = np.array([c[3] for c in checks])
    ok = np.abs(z) <= tol
    hard = np.abs(z) > fail_sigma

    write_csv(
        os.path.join(out_dir, "validate.csv"),
        ["z_score", "estimate", "reference", "pass"],
        [z, np.array([c[1] for c in checks]), np.array([c[2] for c in checks]),
         ok.astype(float)],
    )
    report = {
        "checks": [
            {"name": n, "estimate": c[1], "reference": c[2], "z": c[3],
             "pass": bool(abs(c[3]) <= tol)}
            for n, c in zip(names, checks)
        ],
        "tolerance_sigma": tol,
        "n_checks": len(checks),
        "n_failures": int(np.count_nonzero(~ok)),
        "hard_failure": bool(np.count_nonzero(hard) >= fail_points),
        "all_pass": bool(np.all(ok)),
    }
    with open(os.path.join(out_dir, "validate_report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    write_manifest(
        out_dir, "validate", cfg, seed, threads,
        ["validate.csv", "validate_report.json"],
        extra={"all_pass": report["all_pass"]},
    )
    for entry in report["checks"]:
        status = "pass" if entry["pass"] else "FAIL"
        print(f"[{status}] {entry['name']}: z = {entry['z']:+.2f}")
    print(f"validate: {report['n_checks'] - report['n_failures']}/{report['n_checks']} checks passed")
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


_DISPATCH = {
    "mean": _cmd_mean,
    "sigma": _cmd_sigma,
    "saturated": _cmd_saturated,
    "variance": _cmd_variance,
    "covariance": _cmd_covariance,
    "spectrum": _cmd_spectrum,
    "detuning-spectrum": _cmd_detuning_spectrum,
    "mc": _cmd_mc,
    "validate": _cmd_validate,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coldcloud",
        description="Effective-atom-number curves, noise spectra and Monte Carlo validation "
                    "for a probe beam in a falling cold-atom cloud.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--out", default=None,
                        help=f"output directory (default: ${_OUT_DIR_ENV} or '.')")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the Monte Carlo seed from the config")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for Monte Carlo realizations")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = args.out or os.environ.get(_OUT_DIR_ENV) or "."
    os.makedirs(out_dir, exist_ok=True)
    seed = args.seed if args.seed is not None else cfg.mc_seed
    threads = max(1, args.threads)

    try:
        return _DISPATCH[args.subcommand](cfg, out_dir, seed, threads)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, RuntimeError) as exc:
        print(f"error in {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
