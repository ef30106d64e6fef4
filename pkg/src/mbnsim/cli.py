"""Command-line front end: config parsing, experiment dispatch, CSV output.

Configs are JSON with one object per section (``channel``, ``deployment``,
``costs``, ``sweep``, optional ``planner``). A figure preset is merged under
the user's keys; unknown keys anywhere are rejected. All physical quantities
are SI base units; antenna gains are accepted in dB through ``_db``-suffixed
keys only.

Outputs: one CSV per run (header row, ``\n`` line endings, shortest
round-trip float formatting, deterministic row order) plus a ``manifest.json``
with the resolved config, master seed, package version, and wall time.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, _kernels
from .association import Policy
from .channel import ChannelParams
from .errors import ConfigurationError, MbnError
from .geometry import Architecture, DeploymentSpec
from .metrics import CostModel, dce_int, dce_sa
from .montecarlo import (
    NUM_BS_PER_BAND,
    NUM_BS_TOTAL,
    PlannerMode,
    SweepPlan,
    SweepVariable,
    plan_required_bs,
    run_sweep,
)
from .presets import DEFAULT_CONFIG, PRESET_SUMMARIES, PRESETS
from .seeding import fold_seed

_TOP_KEYS = {"preset", "master_seed", "trials_per_point", "out_dir",
             "channel", "deployment", "costs", "sweep", "planner"}
_CHANNEL_KEYS = {"f_rf", "f_thz", "b_rf", "b_thz", "p_tx_rf", "p_tx_thz",
                 "g_rf_db", "g_thz_db", "k_abs", "p_align", "noise_psd",
                 "noise_figure_db", "pathloss_exp_rf", "min_distance"}
_DEPLOYMENT_KEYS = {"architectures", "n_bs", "num_bs_mode", "region_radius"}
_COSTS_KEYS = {"capex_rbs", "capex_tbs", "capex_hyb",
               "opex_rbs", "opex_tbs", "opex_hyb", "include_opex"}
_SWEEP_KEYS = {"variable", "values", "policies", "n_bs_values", "b_thz_values"}
_PLANNER_KEYS = {"confidence", "n_max", "modes"}

_ARCH_CODE = {Architecture.SA: 0, Architecture.INT: 1}

SWEEP_COLUMNS = [
    "variable", "value", "architecture", "policy",
    "n_rf", "n_thz", "n_hyb", "n_bs", "b_thz", "k_abs", "trials",
    "thz_assoc_prob", "mean_se", "ci95_se", "mean_rate", "ci95_rate",
    "dce", "ci95",
]
PLANNER_COLUMNS = [
    "target_rate", "b_thz", "mode", "feasible",
    "n_rf", "n_thz", "n_hyb", "n_total",
    "mean_rate", "rate_lcb", "confidence", "trials",
]


@dataclass(frozen=True)
class PlannerSettings:
    confidence: float
    n_max: int
    modes: tuple[PlannerMode, ...]


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully validated run description; every embedded invariant holds."""

    preset: str
    master_seed: int
    trials_per_point: int
    out_dir: str
    channel: ChannelParams
    architectures: tuple[Architecture, ...]
    n_bs: int
    num_bs_mode: str
    region_radius: float
    costs: CostModel
    variable: SweepVariable
    values: tuple[float, ...]
    policies: tuple[Policy, ...]
    n_bs_values: Optional[tuple[int, ...]]
    b_thz_values: Optional[tuple[float, ...]]
    planner: Optional[PlannerSettings]


def _merge(base, override):
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _check_keys(section: dict, allowed: set, path: str, errors: list):
    for key in section:
        if key not in allowed:
            errors.append(f"{path}{key}: unknown key")


def _number(section, key, path, errors, *, integer=False) -> Optional[float]:
    value = section.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{path}{key}: expected a number (got {value!r})")
        return None
    if integer and int(value) != value:
        errors.append(f"{path}{key}: expected an integer (got {value!r})")
        return None
    return int(value) if integer else float(value)


def _enum_value(enum_cls, raw, path, errors):
    for member in enum_cls:
        if member.value == raw:
            return member
    allowed = ", ".join(m.value for m in enum_cls)
    errors.append(f"{path}: must be one of {allowed} (got {raw!r})")
    return None


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _linear_to_db(gain: float) -> float:
    return 10.0 * math.log10(gain)


def parse_config(text: str, *, preset: Optional[str] = None) -> ExperimentConfig:
    """Parse and validate a JSON config document.

    Raises ``ConfigurationError`` whose ``problems`` list names every
    violated invariant with its dotted field path.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigurationError("top-level config must be a JSON object")

    errors: list[str] = []
    _check_keys(raw, _TOP_KEYS, "", errors)

    preset_name = preset if preset is not None else raw.get("preset", "custom")
    if preset_name not in PRESETS:
        raise ConfigurationError(
            f"preset: unknown preset {preset_name!r} "
            f"(choose from {', '.join(sorted(PRESETS))})"
        )
    merged = _merge(_merge(DEFAULT_CONFIG, PRESETS[preset_name]), raw)
    merged["preset"] = preset_name

    master_seed = _number(merged, "master_seed", "", errors, integer=True)
    if master_seed is not None and not 0 <= master_seed < 2 ** 64:
        errors.append(f"master_seed: must be an unsigned 64-bit integer (got {master_seed})")
    trials = _number(merged, "trials_per_point", "", errors, integer=True)
    if trials is not None and trials < 1:
        errors.append(f"trials_per_point: must be at least 1 (got {trials})")
    out_dir = merged.get("out_dir")
    if not isinstance(out_dir, str) or not out_dir:
        errors.append(f"out_dir: expected a non-empty string (got {out_dir!r})")

    channel = _parse_channel(merged.get("channel"), errors)
    arch_block = _parse_deployment(merged.get("deployment"), errors)
    costs = _parse_costs(merged.get("costs"), errors)
    sweep_block = _parse_sweep(merged.get("sweep"), errors)
    planner = _parse_planner(merged.get("planner"), sweep_block, errors)

    if errors:
        raise ConfigurationError(errors)
    architectures, n_bs, num_bs_mode, region_radius = arch_block
    variable, values, policies, n_bs_values, b_thz_values = sweep_block
    return ExperimentConfig(
        preset=preset_name,
        master_seed=master_seed,
        trials_per_point=trials,
        out_dir=out_dir,
        channel=channel,
        architectures=architectures,
        n_bs=n_bs,
        num_bs_mode=num_bs_mode,
        region_radius=region_radius,
        costs=costs,
        variable=variable,
        values=values,
        policies=policies,
        n_bs_values=n_bs_values,
        b_thz_values=b_thz_values,
        planner=planner,
    )


def _parse_channel(section, errors) -> Optional[ChannelParams]:
    if not isinstance(section, dict):
        errors.append(f"channel: expected an object (got {section!r})")
        return None
    _check_keys(section, _CHANNEL_KEYS, "channel.", errors)
    fields = {}
    for key in _CHANNEL_KEYS:
        value = _number(section, key, "channel.", errors)
        if value is None:
            return None
        fields[key] = value
    try:
        return ChannelParams(
            f_rf=fields["f_rf"], f_thz=fields["f_thz"],
            b_rf=fields["b_rf"], b_thz=fields["b_thz"],
            p_tx_rf=fields["p_tx_rf"], p_tx_thz=fields["p_tx_thz"],
            g_rf=_db_to_linear(fields["g_rf_db"]),
            g_thz=_db_to_linear(fields["g_thz_db"]),
            k_abs=fields["k_abs"], p_align=fields["p_align"],
            noise_psd=fields["noise_psd"],
            noise_figure_db=fields["noise_figure_db"],
            pathloss_exp_rf=fields["pathloss_exp_rf"],
            min_distance=fields["min_distance"],
        )
    except ConfigurationError as exc:
        errors.extend(f"channel.{problem}" for problem in exc.problems)
        return None


def _parse_deployment(section, errors):
    if not isinstance(section, dict):
        errors.append(f"deployment: expected an object (got {section!r})")
        return None
    _check_keys(section, _DEPLOYMENT_KEYS, "deployment.", errors)
    raw_archs = section.get("architectures")
    architectures = []
    if not isinstance(raw_archs, list) or not raw_archs:
        errors.append(f"deployment.architectures: expected a non-empty list (got {raw_archs!r})")
    else:
        for raw in raw_archs:
            member = _enum_value(Architecture, raw, "deployment.architectures", errors)
            if member is not None:
                if member in architectures:
                    errors.append(f"deployment.architectures: duplicate entry {raw!r}")
                architectures.append(member)
    n_bs = _number(section, "n_bs", "deployment.", errors, integer=True)
    if n_bs is not None and n_bs < 1:
        errors.append(f"deployment.n_bs: must be at least 1 (got {n_bs})")
    mode = section.get("num_bs_mode")
    if mode not in (NUM_BS_PER_BAND, NUM_BS_TOTAL):
        errors.append(
            f"deployment.num_bs_mode: must be '{NUM_BS_PER_BAND}' or '{NUM_BS_TOTAL}' (got {mode!r})"
        )
    radius = _number(section, "region_radius", "deployment.", errors)
    if radius is not None and not (radius > 0 and math.isfinite(radius)):
        errors.append(f"deployment.region_radius: must be positive and finite (got {radius})")
    return (tuple(architectures), n_bs, mode, radius)


def _parse_costs(section, errors) -> Optional[CostModel]:
    if not isinstance(section, dict):
        errors.append(f"costs: expected an object (got {section!r})")
        return None
    _check_keys(section, _COSTS_KEYS, "costs.", errors)
    include = section.get("include_opex")
    if not isinstance(include, bool):
        errors.append(f"costs.include_opex: expected true or false (got {include!r})")
        return None
    fields = {}
    for key in _COSTS_KEYS - {"include_opex"}:
        value = _number(section, key, "costs.", errors)
        if value is None:
            return None
        fields[key] = value
    try:
        return CostModel(include_opex=include, **fields)
    except ConfigurationError as exc:
        errors.extend(f"costs.{problem}" for problem in exc.problems)
        return None


def _parse_sweep(section, errors):
    if not isinstance(section, dict):
        errors.append(f"sweep: expected an object (got {section!r})")
        return None
    _check_keys(section, _SWEEP_KEYS, "sweep.", errors)
    variable = _enum_value(SweepVariable, section.get("variable"), "sweep.variable", errors)
    raw_values = section.get("values")
    values: tuple[float, ...] = ()
    if not isinstance(raw_values, list) or not raw_values:
        errors.append(f"sweep.values: expected a non-empty list (got {raw_values!r})")
    elif any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw_values):
        errors.append("sweep.values: entries must be numbers")
    else:
        values = tuple(float(v) for v in raw_values)
        if any(not math.isfinite(v) for v in values):
            errors.append("sweep.values: entries must be finite")
        elif any(b <= a for a, b in zip(values, values[1:])):
            errors.append("sweep.values: entries must be strictly increasing")
    raw_policies = section.get("policies")
    policies = []
    if not isinstance(raw_policies, list) or not raw_policies:
        errors.append(f"sweep.policies: expected a non-empty list (got {raw_policies!r})")
    else:
        for raw in raw_policies:
            member = _enum_value(Policy, raw, "sweep.policies", errors)
            if member is not None:
                policies.append(member)

    n_bs_values = None
    if "n_bs_values" in section:
        raw = section["n_bs_values"]
        if not isinstance(raw, list) or not raw or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v or v < 1
            for v in raw
        ):
            errors.append(f"sweep.n_bs_values: expected a list of positive integers (got {raw!r})")
        elif variable is SweepVariable.NUM_BS:
            errors.append("sweep.n_bs_values: not allowed when sweeping NumBs")
        else:
            n_bs_values = tuple(int(v) for v in raw)
    b_thz_values = None
    if "b_thz_values" in section:
        raw = section["b_thz_values"]
        if not isinstance(raw, list) or not raw or any(
            isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0
            for v in raw
        ):
            errors.append(f"sweep.b_thz_values: expected a list of positive numbers (got {raw!r})")
        elif variable is SweepVariable.THZ_BANDWIDTH:
            errors.append("sweep.b_thz_values: not allowed when sweeping ThzBandwidth")
        else:
            b_thz_values = tuple(float(v) for v in raw)
    return (variable, values, tuple(policies), n_bs_values, b_thz_values)


def _parse_planner(section, sweep_block, errors) -> Optional[PlannerSettings]:
    variable = sweep_block[0] if sweep_block else None
    if section is None:
        if variable is SweepVariable.TARGET_RATE:
            errors.append("planner: section required when sweeping TargetRate")
        return None
    if variable is not None and variable is not SweepVariable.TARGET_RATE:
        errors.append("planner: section only allowed when sweeping TargetRate")
        return None
    if not isinstance(section, dict):
        errors.append(f"planner: expected an object (got {section!r})")
        return None
    _check_keys(section, _PLANNER_KEYS, "planner.", errors)
    confidence = _number(section, "confidence", "planner.", errors)
    if confidence is not None and not 0.0 < confidence < 1.0:
        errors.append(f"planner.confidence: must lie strictly within (0, 1) (got {confidence})")
    n_max = _number(section, "n_max", "planner.", errors, integer=True)
    if n_max is not None and n_max < 1:
        errors.append(f"planner.n_max: must be at least 1 (got {n_max})")
    raw_modes = section.get("modes")
    modes = []
    if not isinstance(raw_modes, list) or not raw_modes:
        errors.append(f"planner.modes: expected a non-empty list (got {raw_modes!r})")
    else:
        for raw in raw_modes:
            member = _enum_value(PlannerMode, raw, "planner.modes", errors)
            if member is not None:
                modes.append(member)
    if errors:
        return None
    return PlannerSettings(confidence=confidence, n_max=n_max, modes=tuple(modes))


def serialize_config(config: ExperimentConfig) -> dict:
    """Config as a JSON-ready dict; ``parse_config`` of its dump round-trips."""
    doc = {
        "preset": config.preset,
        "master_seed": config.master_seed,
        "trials_per_point": config.trials_per_point,
        "out_dir": config.out_dir,
        "channel": {
            "f_rf": config.channel.f_rf,
            "f_thz": config.channel.f_thz,
            "b_rf": config.channel.b_rf,
            "b_thz": config.channel.b_thz,
            "p_tx_rf": config.channel.p_tx_rf,
            "p_tx_thz": config.channel.p_tx_thz,
            "g_rf_db": _linear_to_db(config.channel.g_rf),
            "g_thz_db": _linear_to_db(config.channel.g_thz),
            "k_abs": config.channel.k_abs,
            "p_align": config.channel.p_align,
            "noise_psd": config.channel.noise_psd,
            "noise_figure_db": config.channel.noise_figure_db,
            "pathloss_exp_rf": config.channel.pathloss_exp_rf,
            "min_distance": config.channel.min_distance,
        },
        "deployment": {
            "architectures": [a.value for a in config.architectures],
            "n_bs": config.n_bs,
            "num_bs_mode": config.num_bs_mode,
            "region_radius": config.region_radius,
        },
        "costs": {
            "capex_rbs": config.costs.capex_rbs,
            "capex_tbs": config.costs.capex_tbs,
            "capex_hyb": config.costs.capex_hyb,
            "opex_rbs": config.costs.opex_rbs,
            "opex_tbs": config.costs.opex_tbs,
            "opex_hyb": config.costs.opex_hyb,
            "include_opex": config.costs.include_opex,
        },
        "sweep": {
            "variable": config.variable.value,
            "values": list(config.values),
            "policies": [p.value for p in config.policies],
        },
    }
    if config.n_bs_values is not None:
        doc["sweep"]["n_bs_values"] = list(config.n_bs_values)
    if config.b_thz_values is not None:
        doc["sweep"]["b_thz_values"] = list(config.b_thz_values)
    if config.planner is not None:
        doc["planner"] = {
            "confidence": config.planner.confidence,
            "n_max": config.planner.n_max,
            "modes": [m.value for m in config.planner.modes],
        }
    return doc


def _base_spec(arch: Architecture, n_bs: int, mode: str, radius: float) -> DeploymentSpec:
    if arch is Architecture.INT:
        return DeploymentSpec(Architecture.INT, n_hyb=n_bs, region_radius=radius)
    if mode == NUM_BS_PER_BAND:
        return DeploymentSpec(Architecture.SA, n_rf=n_bs, n_thz=n_bs, region_radius=radius)
    return DeploymentSpec(
        Architecture.SA, n_rf=n_bs // 2, n_thz=n_bs - n_bs // 2, region_radius=radius
    )


def _value_bits(value: float) -> int:
    return int(np.float64(value).view(np.uint64))


def _convention_count(spec: DeploymentSpec, mode: str) -> int:
    if spec.architecture is Architecture.INT:
        return spec.n_hyb
    if mode == NUM_BS_PER_BAND and spec.n_rf == spec.n_thz:
        return spec.n_rf
    return spec.n_rf + spec.n_thz


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def _sweep_rows(config: ExperimentConfig):
    b_values = config.b_thz_values or (config.channel.b_thz,)
    n_values = config.n_bs_values or (config.n_bs,)
    for arch in config.architectures:
        for b_thz in b_values:
            params = replace(config.channel, b_thz=b_thz)
            for n_bs in n_values:
                spec = _base_spec(arch, n_bs, config.num_bs_mode, config.region_radius)
                master = fold_seed(
                    config.master_seed, _ARCH_CODE[arch], _value_bits(b_thz), n_bs
                )
                plan = SweepPlan(
                    variable=config.variable,
                    values=config.values,
                    base_params=params,
                    base_spec=spec,
                    policies=config.policies,
                    trials_per_point=config.trials_per_point,
                    master_seed=master,
                    costs=config.costs,
                    num_bs_mode=config.num_bs_mode,
                )
                for row in run_sweep(plan):
                    agg = row.aggregate
                    if row.spec.architecture is Architecture.SA:
                        dce_ci = dce_sa(row.spec.n_rf, row.spec.n_thz, agg.ci95_se, config.costs)
                    else:
                        dce_ci = dce_int(row.spec.n_hyb, agg.ci95_se, config.costs)
                    yield {
                        "variable": config.variable.value,
                        "value": row.value,
                        "architecture": row.architecture.value,
                        "policy": row.policy.value,
                        "n_rf": row.spec.n_rf,
                        "n_thz": row.spec.n_thz,
                        "n_hyb": row.spec.n_hyb,
                        "n_bs": _convention_count(row.spec, config.num_bs_mode),
                        "b_thz": row.params.b_thz,
                        "k_abs": row.params.k_abs,
                        "trials": agg.trials,
                        "thz_assoc_prob": agg.thz_assoc_prob,
                        "mean_se": agg.mean_se,
                        "ci95_se": agg.ci95_se,
                        "mean_rate": agg.mean_rate,
                        "ci95_rate": agg.ci95_rate,
                        "dce": agg.dce,
                        "ci95": dce_ci,
                    }


def _planner_rows(config: ExperimentConfig):
    settings = config.planner
    b_values = config.b_thz_values or (config.channel.b_thz,)
    for b_thz in b_values:
        params = replace(config.channel, b_thz=b_thz)
        seed = fold_seed(config.master_seed, _value_bits(b_thz))
        entries = plan_required_bs(
            config.values,
            settings.modes,
            params,
            confidence=settings.confidence,
            trials=config.trials_per_point,
            n_max=settings.n_max,
            seed=seed,
            region_radius=config.region_radius,
            policy=config.policies[0],
            costs=config.costs,
        )
        for entry in entries:
            yield {
                "target_rate": entry.target_rate,
                "b_thz": b_thz,
                "mode": entry.mode.value,
                "feasible": entry.feasible,
                "n_rf": entry.n_rf,
                "n_thz": entry.n_thz,
                "n_hyb": entry.n_hyb,
                "n_total": entry.n_total,
                "mean_rate": entry.mean_rate,
                "rate_lcb": entry.rate_lcb,
                "confidence": settings.confidence,
                "trials": config.trials_per_point,
            }


def _write_csv(path: Path, columns: list[str], rows) -> int:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        count = 0
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in columns])
            count += 1
    return count


def run(config: ExperimentConfig) -> list[Path]:
    """Execute the configured experiment; returns the written file paths."""
    started = time.monotonic()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{config.preset}.csv"
    if config.variable is SweepVariable.TARGET_RATE:
        rows_written = _write_csv(csv_path, PLANNER_COLUMNS, _planner_rows(config))
    else:
        rows_written = _write_csv(csv_path, SWEEP_COLUMNS, _sweep_rows(config))
    manifest = {
        "version": __version__,
        "master_seed": config.master_seed,
        "kernel_backend": _kernels.backend_name(),
        "rows": rows_written,
        "wall_time_s": time.monotonic() - started,
        "outputs": [csv_path.name],
        "config": serialize_config(config),
    }
    manifest_path = out_dir / "manifest.json"
    with manifest_path.open("w", encoding="utf-8", newline="") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return [csv_path, manifest_path]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbnsim",
        description="Monte Carlo simulator and deployment planner for RF/THz multi-band networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_parser = sub.add_parser("run", help="run a sweep or planner experiment")
    run_parser.add_argument("--config", type=Path, help="JSON config file")
    run_parser.add_argument("--preset", choices=sorted(PRESETS), help="built-in preset name")
    run_parser.add_argument("--seed", type=int, help="override the master seed")
    run_parser.add_argument("--out", type=Path, help="override the output directory")
    run_parser.add_argument("--trials", type=int, help="override trials per point")
    sub.add_parser("presets", help="list built-in presets")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "presets":
        for name in sorted(PRESET_SUMMARIES):
            print(f"{name:8s} {PRESET_SUMMARIES[name]}")
        return 0
    try:
        text = args.config.read_text(encoding="utf-8") if args.config else "{}"
        config = parse_config(text, preset=args.preset)
        if args.seed is not None:
            if not 0 <= args.seed < 2 ** 64:
                raise ConfigurationError("--seed must be an unsigned 64-bit integer")
            config = replace(config, master_seed=args.seed)
        if args.trials is not None:
            if args.trials < 1:
                raise ConfigurationError("--trials must be at least 1")
            config = replace(config, trials_per_point=args.trials)
        if args.out is not None:
            config = replace(config, out_dir=str(args.out))
        paths = run(config)
    except ConfigurationError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except (MbnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
