"""Ensemble orchestration, deterministic reports, and the command line.

A run is described by an ExperimentConfig: one disorder ensemble per entry
of the N schedule (box length L = N / density, never stored separately),
with a fixed set of checks evaluated on every realization.  Records are
plain dicts with a stable column set, so the emitted CSV files are
byte-identical across repeated runs of the same configuration.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bounds import (BoundReport, CheckRecord, PowerLogLaw, ScalingDiagnostics,
                     ScalingSpec, VoidTrialStateError, box_count_criterion,
                     box_masses, check_appendix_count, check_lemma21,
                     critical_density, format_value, pule_aonghusa_bound,
                     records_to_text, scaling_diagnostics, theorem33_bound,
                     trial_state_energy)
from .disorder import (EnsembleSeed, realization_to_text, sample_realization)
from .spectrum import (build_spectrum, default_cutoff, ground_mode,
                       spectrum_to_text)
from .thermo import (THERMO_MAX_N, condensate_profile, thermo_solution_to_text)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "EnsembleReport",
    "KNOWN_CHECKS",
    "default_scaling_spec",
    "load_config",
    "run_ensemble",
    "emit_report",
    "single_realization_checks",
    "main",
]


class ConfigError(ValueError):
    """The experiment configuration is inconsistent or unsupported."""


KNOWN_CHECKS = ("lemma21", "appendix", "thermo", "hardcore_bound", "scaling",
                "trial_energy")

_META_COLUMNS = ("n", "realization_index", "base_seed", "box_length")

CHECK_COLUMNS = {
    "lemma21": ("lemma21_l_max", "lemma21_lower", "lemma21_upper",
                "lemma21_lower_ok", "lemma21_upper_ok", "lemma21_pass"),
    "appendix": ("appendix_count", "appendix_threshold", "appendix_pass"),
    "thermo": ("thermo_n_modes", "thermo_energy_cutoff", "thermo_log_partition",
               "thermo_condensate_occupation", "thermo_condensate_density",
               "thermo_condensate_fraction", "thermo_tail_occupation",
               "thermo_cutoff_converged"),
    "hardcore_bound": ("hardcore_radius", "hardcore_support_boxes",
                       "hardcore_pa_bound", "hardcore_t33_bound",
                       "hardcore_box_criterion", "hardcore_pass"),
    "scaling": ("scaling_hardcore_vanishing", "scaling_range_growth",
                "scaling_floor_range_growth", "scaling_delta_growth"),
    "trial_energy": ("trial_count_q", "trial_kinetic_pp", "trial_interaction_pp",
                     "trial_defined"),
}

_FLAG_COLUMNS = frozenset({
    "lemma21_lower_ok", "lemma21_upper_ok", "lemma21_pass", "appendix_pass",
    "thermo_cutoff_converged", "hardcore_pass", "trial_defined",
})

# the flag that summarizes each check in the pass-fraction table
_PASS_COLUMN = {
    "lemma21": "lemma21_pass",
    "appendix": "appendix_pass",
    "thermo": "thermo_cutoff_converged",
    "hardcore_bound": "hardcore_pass",
    "trial_energy": "trial_defined",
}

_CHECK_PREFIX = {
    "lemma21": "lemma21_",
    "appendix": "appendix_",
    "thermo": "thermo_",
    "hardcore_bound": "hardcore_",
    "scaling": "scaling_",
    "trial_energy": "trial_",
}


def default_scaling_spec() -> ScalingSpec:
    return ScalingSpec(
        hardcore_radius=PowerLogLaw(1.0, -0.25),
        interaction_range=PowerLogLaw(1.0, -0.2),
        interaction_floor=PowerLogLaw(1.0, 0.0),
        delta_width=PowerLogLaw(1.0, -0.2),
    )


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a scan needs; box lengths are always derived as N / density."""

    intensity: float = 1.0
    density: float = 1.0
    beta: float = 1.0
    n_schedule: tuple[int, ...] = (1000,)
    realizations_per_n: int = 8
    base_seed: int = 20260814
    top_k: int = 8
    checks: tuple[str, ...] = ("lemma21",)
    output_dir: str = "lslab-out"
    lemma21_epsilon: float = 0.5
    lemma21_alpha: float = 5.0
    interaction_l1_norm: float = 1.0
    workers: int = 1
    scaling: ScalingSpec = field(default_factory=default_scaling_spec)

    def validate(self) -> None:
        if self.intensity <= 0 or self.density <= 0 or self.beta <= 0:
            raise ConfigError("intensity, density and beta must be positive")
        if not self.n_schedule:
            raise ConfigError("n_schedule must not be empty")
        if any(int(n) != n or n < 2 for n in self.n_schedule):
            raise ConfigError("n_schedule entries must be integers >= 2")
        if any(b <= a for a, b in zip(self.n_schedule, self.n_schedule[1:])):
            raise ConfigError("n_schedule must be strictly increasing")
        if self.realizations_per_n < 1:
            raise ConfigError("realizations_per_n must be >= 1")
        if self.top_k < 1:
            raise ConfigError("top_k must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if not self.checks:
            raise ConfigError("no checks configured")
        unknown = [c for c in self.checks if c not in KNOWN_CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if "lemma21" in self.checks and self.n_schedule[0] / self.density <= math.e:
            raise ConfigError("lemma21 needs box lengths above e; raise N or lower density")
        if "thermo" in self.checks and max(self.n_schedule) > THERMO_MAX_N:
            raise ConfigError(
                f"thermo check is O(N^2) and capped at N={THERMO_MAX_N}; trim the "
                "schedule or drop the thermo check for the largest sizes")
        if "hardcore_bound" in self.checks:
            radius_sup = max(self.scaling.hardcore_radius(n) for n in self.n_schedule)
            ceiling = critical_density(radius_sup)
            if self.density >= ceiling:
                raise ConfigError(
                    f"density {self.density:g} exceeds the hard-core packing ceiling "
                    f"{ceiling:g}; shrink the radius or the density")


# ---------------------------------------------------------------------------
# config parsing


def _as_float(value) -> float:
    return float(value)


def _as_int(value) -> int:
    if isinstance(value, str):
        return int(round(float(value)))
    return int(value)


def _as_str(value) -> str:
    return str(value)


def _as_int_list(value) -> tuple[int, ...]:
    if isinstance(value, str):
        toks = [t.strip() for t in value.split(",") if t.strip()]
        return tuple(int(round(float(t))) for t in toks)
    return tuple(int(v) for v in value)


def _as_checks(value) -> tuple[str, ...]:
    if isinstance(value, str):
        toks = [t.strip() for t in value.split(",") if t.strip()]
    else:
        toks = list(value)
    unknown = [t for t in toks if t not in KNOWN_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return tuple(c for c in KNOWN_CHECKS if c in toks)


def _as_law(value) -> PowerLogLaw:
    if isinstance(value, PowerLogLaw):
        return value
    parts = [float(t) for t in str(value).split(",") if t.strip()]
    if len(parts) == 2:
        parts.append(0.0)
    if len(parts) != 3:
        raise ValueError("expected 'coefficient,exponent[,log_exponent]'")
    return PowerLogLaw(*parts)


_LAW_KEYS = ("hardcore_radius", "interaction_range", "interaction_floor", "delta_width")

_CONFIG_FIELDS = {
    "intensity": _as_float,
    "density": _as_float,
    "beta": _as_float,
    "n_schedule": _as_int_list,
    "realizations_per_n": _as_int,
    "base_seed": _as_int,
    "top_k": _as_int,
    "checks": _as_checks,
    "output_dir": _as_str,
    "lemma21_epsilon": _as_float,
    "lemma21_alpha": _as_float,
    "interaction_l1_norm": _as_float,
    "workers": _as_int,
    "hardcore_radius": _as_law,
    "interaction_range": _as_law,
    "interaction_floor": _as_law,
    "delta_width": _as_law,
}


def _parse_config_text(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


def load_config(path: str | Path | None = None, overrides: dict | None = None
                ) -> ExperimentConfig:
    """Build a validated config from an optional flat key-value file plus overrides.

    Override entries with value None are ignored, so argparse defaults can be
    passed straight through; explicit flags win over the file.
    """
    raw: dict = {}
    if path is not None:
        raw.update(_parse_config_text(Path(path).read_text(encoding="utf-8")))
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    kwargs: dict = {}
    laws: dict[str, PowerLogLaw] = {}
    for key, value in raw.items():
        if key not in _CONFIG_FIELDS:
            raise ConfigError(f"unknown config key: {key}")
        try:
            converted = _CONFIG_FIELDS[key](value)
        except ValueError as err:
            raise ConfigError(f"bad value for {key}: {err}") from None
        if key in _LAW_KEYS:
            laws[key] = converted
        else:
            kwargs[key] = converted
    if laws:
        base = default_scaling_spec()
        kwargs["scaling"] = ScalingSpec(
            hardcore_radius=laws.get("hardcore_radius", base.hardcore_radius),
            interaction_range=laws.get("interaction_range", base.interaction_range),
            interaction_floor=laws.get("interaction_floor", base.interaction_floor),
            delta_width=laws.get("delta_width", base.delta_width),
        )
    try:
        config = ExperimentConfig(**kwargs)
    except ValueError as err:
        raise ConfigError(str(err)) from None
    config.validate()
    return config


# ---------------------------------------------------------------------------
# per-realization evaluation


def _eval_lemma21(config, n, realization, rec):
    res = check_lemma21(realization, config.lemma21_epsilon, config.lemma21_alpha)
    rec["lemma21_l_max"] = res.l_max
    rec["lemma21_lower"] = res.lower_bound
    rec["lemma21_upper"] = res.upper_bound
    rec["lemma21_lower_ok"] = res.lower_ok
    rec["lemma21_upper_ok"] = res.upper_ok
    rec["lemma21_pass"] = res.lower_ok and res.upper_ok


def _eval_appendix(config, n, realization, rec):
    res = check_appendix_count(realization, config.density)
    rec["appendix_count"] = res.count
    rec["appendix_threshold"] = res.threshold
    rec["appendix_pass"] = res.passed


def _eval_thermo(config, n, realization, rec):
    cutoff = default_cutoff(realization, config.beta)
    spec = build_spectrum(realization, cutoff)
    sol = condensate_profile(spec, config.beta, n, min(config.top_k, len(spec)))
    rec["thermo_n_modes"] = len(spec)
    rec["thermo_energy_cutoff"] = cutoff
    rec["thermo_log_partition"] = sol.log_partition
    rec["thermo_condensate_occupation"] = float(sol.occupations[0])
    rec["thermo_condensate_density"] = sol.condensate_density
    rec["thermo_condensate_fraction"] = sol.condensate_fraction
    rec["thermo_tail_occupation"] = sol.tail_occupation
    rec["thermo_cutoff_converged"] = sol.cutoff_converged


def _eval_hardcore(config, n, realization, rec):
    radius = config.scaling.hardcore_radius(n)
    masses = box_masses(ground_mode(realization), radius)
    support = sum(1 for _, m in masses if m > 0.0)
    pa = pule_aonghusa_bound(masses, radius, realization.box_length)
    t33 = theorem33_bound(config.lemma21_alpha, config.intensity,
                          realization.box_length, radius)
    rec["hardcore_radius"] = radius
    rec["hardcore_support_boxes"] = support
    rec["hardcore_pa_bound"] = pa
    rec["hardcore_t33_bound"] = t33
    rec["hardcore_box_criterion"] = box_count_criterion(support, n)
    rec["hardcore_pass"] = pa <= t33


def _eval_scaling(config, n, realization, rec):
    diag = scaling_diagnostics(config.scaling, [n])
    for name, col in diag.columns.items():
        rec[f"scaling_{name}"] = float(col[0])


def _eval_trial(config, n, realization, rec):
    try:
        res = trial_state_energy(realization, n, config.interaction_l1_norm)
        rec["trial_count_q"] = res.count_q
        rec["trial_kinetic_pp"] = res.kinetic_per_particle
        rec["trial_interaction_pp"] = res.interaction_per_particle
        rec["trial_defined"] = True
    except VoidTrialStateError:
        rec["trial_count_q"] = 0
        rec["trial_kinetic_pp"] = float("nan")
        rec["trial_interaction_pp"] = float("nan")
        rec["trial_defined"] = False


_CHECK_EVALUATORS = {
    "lemma21": _eval_lemma21,
    "appendix": _eval_appendix,
    "thermo": _eval_thermo,
    "hardcore_bound": _eval_hardcore,
    "scaling": _eval_scaling,
    "trial_energy": _eval_trial,
}


def _evaluate_cell(config: ExperimentConfig, n: int, idx: int) -> dict:
    """All configured checks on realization (base_seed, idx) at size N=n."""
    seed = EnsembleSeed(config.base_seed, idx)
    realization = sample_realization(config.intensity, n / config.density, seed)
    rec: dict = {"n": n, "realization_index": idx, "base_seed": config.base_seed,
                 "box_length": realization.box_length}
    for check in config.checks:
        _CHECK_EVALUATORS[check](config, n, realization, rec)
    return rec


def _record_columns(checks) -> tuple[str, ...]:
    cols = list(_META_COLUMNS)
    for check in KNOWN_CHECKS:
        if check in checks:
            cols.extend(CHECK_COLUMNS[check])
    return tuple(cols)


@dataclass(frozen=True)
class EnsembleReport:
    """Full record set of one scan plus optional scaling diagnostics."""

    config: ExperimentConfig
    columns: tuple[str, ...]
    records: list[dict]
    scaling: ScalingDiagnostics | None = None


def run_ensemble(config: ExperimentConfig, workers: int | None = None) -> EnsembleReport:
    """Evaluate every (N, realization) cell; deterministic record order.

    Cells are independent, so they can be fanned out over processes; results
    are merged back in schedule order regardless of completion order.
    """
    config.validate()
    n_workers = config.workers if workers is None else int(workers)
    cells = [(n, idx) for n in config.n_schedule
             for idx in range(config.realizations_per_n)]
    if n_workers > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            futures = {cell: pool.submit(_evaluate_cell, config, *cell)
                       for cell in cells}
            records = [futures[cell].result() for cell in cells]
    else:
        records = [_evaluate_cell(config, n, idx) for n, idx in cells]
    diag = None
    if "scaling" in config.checks:
        diag = scaling_diagnostics(config.scaling, config.n_schedule)
    return EnsembleReport(config=config, columns=_record_columns(config.checks),
                          records=records, scaling=diag)


# ---------------------------------------------------------------------------
# report emission


def _aggregate(values: np.ndarray) -> tuple[float, float, float, float]:
    if np.all(np.isnan(values)):
        nan = float("nan")
        return nan, nan, nan, nan
    return (float(np.nanmean(values)), float(np.nanmedian(values)),
            float(np.nanquantile(values, 0.05)), float(np.nanquantile(values, 0.95)))


def _summary_table(report: EnsembleReport) -> tuple[list[str], list[list]]:
    header = ["n", "ensemble_size"]
    value_cols = [c for c in report.columns if c not in _META_COLUMNS]
    for col in value_cols:
        if col in _FLAG_COLUMNS:
            header.append(f"{col}_fraction")
        else:
            header.extend(f"{col}{s}" for s in ("_mean", "_median", "_q05", "_q95"))
    rows = []
    for n in report.config.n_schedule:
        group = [rec for rec in report.records if rec["n"] == n]
        row: list = [n, len(group)]
        for col in value_cols:
            vals = np.array([float(rec[col]) for rec in group], dtype=float)
            if col in _FLAG_COLUMNS:
                row.append(float(vals.mean()))
            else:
                row.extend(_aggregate(vals))
        rows.append(row)
    return header, rows


def _pass_table(report: EnsembleReport) -> tuple[list[str], list[list]]:
    header = ["n", "check", "pass_fraction", "ensemble_size"]
    rows = []
    for n in report.config.n_schedule:
        group = [rec for rec in report.records if rec["n"] == n]
        for check in report.config.checks:
            col = _PASS_COLUMN.get(check)
            if col is None:
                continue
            flags = [bool(rec[col]) for rec in group]
            rows.append([n, check, sum(flags) / len(flags), len(flags)])
    return header, rows


def _write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_report(report: EnsembleReport, output_dir: str | Path,
                formats: tuple[str, ...] = ("summary-table", "full-records")
                ) -> list[Path]:
    """Write the report as comma-separated files; returns the paths written.

    Emission is pure formatting: running the same configuration twice yields
    byte-identical files.
    """
    if not report.records:
        raise ValueError("report has no records")
    if len(report.columns) <= len(_META_COLUMNS):
        raise ValueError("report has no check columns")
    outdir = Path(output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []
    for fmt in formats:
        if fmt == "full-records":
            lines = [",".join(report.columns)]
            lines.extend(",".join(format_value(rec[c]) for c in report.columns)
                         for rec in report.records)
            paths.append(_write_lines(outdir / "records.csv", lines))
        elif fmt == "summary-table":
            header, rows = _summary_table(report)
            lines = [",".join(header)]
            lines.extend(",".join(format_value(v) for v in row) for row in rows)
            paths.append(_write_lines(outdir / "summary.csv", lines))
            pheader, prows = _pass_table(report)
            if prows:
                lines = [",".join(pheader)]
                lines.extend(",".join(format_value(v) for v in row) for row in prows)
                paths.append(_write_lines(outdir / "pass_fractions.csv", lines))
            if report.scaling is not None:
                lines = ["diagnostic,tail_trend"]
                lines.extend(f"{name},{trend}"
                             for name, trend in report.scaling.trends.items())
                paths.append(_write_lines(outdir / "scaling_trends.csv", lines))
        else:
            raise ValueError(f"unknown report format: {fmt}")
    return paths


def single_realization_checks(config: ExperimentConfig, n: int, idx: int) -> BoundReport:
    """The configured checks on one realization, as replayable CheckRecords."""
    rec = _evaluate_cell(config, n, idx)
    meta = {key: rec[key] for key in _META_COLUMNS}
    records = []
    for check in config.checks:
        prefix = _CHECK_PREFIX[check]
        pass_col = _PASS_COLUMN.get(check)
        values = {col[len(prefix):]: rec[col] for col in CHECK_COLUMNS[check]
                  if col != pass_col}
        passed = bool(rec[pass_col]) if pass_col else None
        records.append(CheckRecord(check, dict(meta), values, passed))
    return BoundReport(tuple(records))


# ---------------------------------------------------------------------------
# command line


def _emit_text(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_sample(args) -> int:
    seed = EnsembleSeed(args.base_seed, args.index)
    r = sample_realization(args.intensity, args.box_length, seed)
    _emit_text(realization_to_text(r), args.output)
    return 0


def _cmd_spectrum(args) -> int:
    seed = EnsembleSeed(args.base_seed, args.index)
    r = sample_realization(args.intensity, args.box_length, seed)
    if args.cutoff is None and args.beta is None:
        raise ValueError("provide --cutoff or --beta (for the automatic cutoff)")
    cutoff = args.cutoff if args.cutoff is not None else default_cutoff(r, args.beta)
    _emit_text(spectrum_to_text(build_spectrum(r, cutoff)), args.output)
    return 0


def _cmd_occupancy(args) -> int:
    seed = EnsembleSeed(args.base_seed, args.index)
    box_length = args.particles / args.density
    r = sample_realization(args.intensity, box_length, seed)
    spec = build_spectrum(r, default_cutoff(r, args.beta))
    sol = condensate_profile(spec, args.beta, args.particles,
                             min(args.top_k, len(spec)))
    _emit_text(thermo_solution_to_text(sol), args.output)
    return 0


_OVERRIDE_KEYS = tuple(_CONFIG_FIELDS)


def _collect_overrides(args) -> dict:
    return {key: getattr(args, key, None) for key in _OVERRIDE_KEYS}


def _cmd_bounds(args) -> int:
    overrides = _collect_overrides(args)
    overrides["n_schedule"] = str(args.particles)
    overrides["realizations_per_n"] = 1
    config = load_config(args.config, overrides)
    report = single_realization_checks(config, int(args.particles), args.index)
    _emit_text(records_to_text(report.records), args.output)
    return 0


def _cmd_scan(args) -> int:
    config = load_config(args.config, _collect_overrides(args))
    report = run_ensemble(config, workers=args.workers)
    for path in emit_report(report, config.output_dir):
        print(path)
    return 0


def _cmd_diag(args) -> int:
    spec = ScalingSpec(
        hardcore_radius=_as_law(args.hardcore_radius),
        interaction_range=_as_law(args.interaction_range),
        interaction_floor=_as_law(args.interaction_floor),
        delta_width=_as_law(args.delta_width),
    )
    diag = scaling_diagnostics(spec, _as_int_list(args.n_grid))
    names = list(diag.columns)
    lines = ["n," + ",".join(names)]
    lines.extend(",".join(format_value(v) for v in row) for row in diag.rows())
    lines.extend(f"# tail trend {name} = {diag.trends[name]}" for name in names)
    _emit_text("\n".join(lines) + "\n", args.output)
    return 0


def _add_seed_flags(parser, base_default: int | None = 1) -> None:
    parser.add_argument("--base-seed", dest="base_seed", type=int, default=base_default,
                        help="ensemble base seed")
    parser.add_argument("--index", type=int, default=0,
                        help="realization index within the ensemble (default 0)")


def _add_law_flags(parser) -> None:
    parser.add_argument("--hardcore-radius", default=None, metavar="C,P[,Q]",
                        help="hard-core radius sequence c*N^p*ln(N)^q")
    parser.add_argument("--interaction-range", default=None, metavar="C,P[,Q]")
    parser.add_argument("--interaction-floor", default=None, metavar="C,P[,Q]")
    parser.add_argument("--delta-width", default=None, metavar="C,P[,Q]")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lslab",
        description="Point-disorder Bose gas laboratory: sampling, spectra, "
                    "exact canonical occupations, and condensation bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw one disorder realization")
    p.add_argument("--intensity", type=float, default=1.0)
    p.add_argument("--box-length", type=float, required=True)
    _add_seed_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("spectrum", help="modes of one realization up to a cutoff")
    p.add_argument("--intensity", type=float, default=1.0)
    p.add_argument("--box-length", type=float, required=True)
    p.add_argument("--cutoff", type=float, default=None,
                   help="energy cutoff; omit to derive it from --beta")
    p.add_argument("--beta", type=float, default=None,
                   help="inverse temperature for the automatic cutoff")
    _add_seed_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser(
        "occupancy",
        help=f"exact canonical occupations (O(N^2), capped at N={THERMO_MAX_N})")
    p.add_argument("--intensity", type=float, default=1.0)
    p.add_argument("--density", type=float, default=1.0,
                   help="particle density; the box length is N/density")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--particles", type=int, required=True)
    p.add_argument("--top-k", type=int, default=8)
    _add_seed_flags(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_occupancy)

    p = sub.add_parser("bounds", help="evaluate checks on one realization")
    p.add_argument("--config", default=None, help="flat key=value config file")
    p.add_argument("--intensity", type=float, default=None)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--particles", type=int, required=True)
    p.add_argument("--checks", default=None,
                   help="comma list from: " + ", ".join(KNOWN_CHECKS))
    p.add_argument("--lemma21-epsilon", type=float, default=None)
    p.add_argument("--lemma21-alpha", type=float, default=None)
    p.add_argument("--interaction-l1-norm", type=float, default=None)
    p.add_argument("--top-k", dest="top_k", type=int, default=None)
    _add_law_flags(p)
    _add_seed_flags(p, base_default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("scan", help="run a full ensemble and write CSV reports")
    p.add_argument("--config", default=None, help="flat key=value config file")
    p.add_argument("--intensity", type=float, default=None)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--n-schedule", dest="n_schedule", default=None,
                   help="comma list of particle numbers, strictly increasing")
    p.add_argument("--realizations-per-n", dest="realizations_per_n", type=int,
                   default=None)
    p.add_argument("--base-seed", dest="base_seed", type=int, default=None)
    p.add_argument("--top-k", dest="top_k", type=int, default=None)
    p.add_argument("--checks", default=None,
                   help="comma list from: " + ", ".join(KNOWN_CHECKS))
    p.add_argument("--output-dir", dest="output_dir", default=None)
    p.add_argument("--lemma21-epsilon", type=float, default=None)
    p.add_argument("--lemma21-alpha", type=float, default=None)
    p.add_argument("--interaction-l1-norm", type=float, default=None)
    p.add_argument("--workers", type=int, default=None,
                   help="process count for the realization fan-out")
    _add_law_flags(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("diag", help="scaling diagnostics only, no sampling")
    p.add_argument("--n-grid", required=True,
                   help="comma list of sizes, e.g. 1e2,1e4,1e6,1e8")
    p.add_argument("--hardcore-radius", default="1,-0.25", metavar="C,P[,Q]")
    p.add_argument("--interaction-range", default="1,-0.2", metavar="C,P[,Q]")
    p.add_argument("--interaction-floor", default="1,0", metavar="C,P[,Q]")
    p.add_argument("--delta-width", default="1,-0.2", metavar="C,P[,Q]")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_diag)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
