"""End-to-end orchestration with file outputs and a provenance manifest.

One recording flows through ingest -> cut points -> sleep detection ->
sleep-wake segmentation -> change points -> modes -> features; multiple
recordings pool their feature rows into one dataset, optionally followed
by seeded cross-validated model training.  Every parameter that affects
output lands in the run manifest, together with input/output digests and
per-stage wall-clock timings.  Data outputs are byte-identical across
runs with the same inputs and seed; the manifest differs only in its
timings.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .changepoint import ChangePointSet, EnergyParams, PermutationConfig, e_divisive
from .cutpoints import CutPointScale, builtin_troiano_scale, classify_series, load_scale_file
from .features import (
    Dataset,
    DatasetFilters,
    build_dataset,
    raw_fractions,
    write_dataset_csv,
)
from .ingest import EpochSeries, aggregate_epochs, fill_gaps, parse_epoch_csv, validate_series
from .modes import ActivityMode, label_intervals, mode_report_rows
from .models import cross_validate, make_config
from .reports import sha256_file, write_csv, write_json, write_roc_outputs
from .segments import SleepWakeSegment, segment_manifest_rows, segment_sleep_wake
from .sleep import (
    CandidateConfig,
    SleepRules,
    candidate_mask,
    compute_metrics,
    detect_sleep_periods,
    sleep_report,
)


@dataclass
class PipelineConfig:
    age_years: int | None = None  # None -> subject metadata default
    scale_file: str | None = None
    cut_axis: str = "axis1"  # cut-point signal: axis1 | vm3
    cp_signal: str = "triaxial"  # change-point observations: triaxial | vm3
    alpha_exp: float = 1.0
    min_segment: int = 30
    n_permutations: int = 99
    significance: float = 0.01
    seed: int = 0
    efficiency_threshold: float = 0.85
    folds: int = 5
    model: str | None = None  # logreg | adaboost | rf | None
    fill_gaps: str | None = None  # None | "sedentary-zero"
    features_mode: str = "modes"  # modes | raw
    min_awake_min: float = 0.0
    min_sleep_min: int = 0
    include_first_segment: bool = False
    aggregate: int = 1
    mode_tie_break: str = "lower"  # lower | higher
    include_awake_feature: bool = False
    candidate: CandidateConfig = field(default_factory=CandidateConfig)

    def sleep_rules(self) -> SleepRules:
        return SleepRules(min_sleep_min=self.min_sleep_min)

    def energy_params(self) -> EnergyParams:
        return EnergyParams(alpha_exp=self.alpha_exp, min_segment=self.min_segment)

    def dataset_filters(self) -> DatasetFilters:
        return DatasetFilters(
            exclude_first_segment=not self.include_first_segment,
            min_awake_min=self.min_awake_min,
        )

    def load_scale(self) -> CutPointScale:
        if self.scale_file:
            return load_scale_file(self.scale_file)
        return builtin_troiano_scale()

    def manifest_parameters(self) -> dict:
        return {
            "age_years": self.age_years,
            "scale_file": self.scale_file or "builtin:troiano-2008",
            "cut_axis": self.cut_axis,
            "cp_signal": self.cp_signal,
            "alpha_exp": self.alpha_exp,
            "min_segment": self.min_segment,
            "n_permutations": self.n_permutations,
            "significance": self.significance,
            "seed": self.seed,
            "efficiency_threshold": self.efficiency_threshold,
            "folds": self.folds,
            "model": self.model,
            "fill_gaps": self.fill_gaps,
            "features_mode": self.features_mode,
            "min_awake_min": self.min_awake_min,
            "min_sleep_min": self.min_sleep_min,
            "include_first_segment": self.include_first_segment,
            "aggregate": self.aggregate,
            "mode_tie_break": self.mode_tie_break,
            "include_awake_feature": self.include_awake_feature,
            "candidate": {
                "require_zero_triaxial": self.candidate.require_zero_triaxial,
                "require_zero_steps": self.candidate.require_zero_steps,
                "inclinometer_accept": sorted(
                    s.token for s in self.candidate.inclinometer_accept
                ),
            },
        }


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from arbitrary labeled parts (e.g. file/segment ids)."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass
class RecordingAnalysis:
    """Everything derived from one recording, prior to dataset pooling."""

    name: str
    series: EpochSeries
    intensity: list
    mask: np.ndarray
    periods: list
    metrics: list
    segments: list[SleepWakeSegment]
    change_points: list[ChangePointSet]
    modes: list[list[ActivityMode]]


def load_series(path: str | Path, config: PipelineConfig) -> EpochSeries:
    with open(path, "rb") as fh:
        series = parse_epoch_csv(fh)
    if config.fill_gaps == "sedentary-zero":
        series, _ = fill_gaps(series)
    series = validate_series(series)
    if config.aggregate > 1:
        series, _ = aggregate_epochs(series, config.aggregate)
    return series


def cp_observations(series: EpochSeries, start: int, stop: int, cp_signal: str) -> np.ndarray:
    counts = np.array(
        [[e.axis1, e.axis2, e.axis3] for e in series.epochs[start:stop]], dtype=float
    )
    if cp_signal == "triaxial":
        return counts
    if cp_signal == "vm3":
        return np.linalg.norm(counts, axis=1)[:, None]
    raise ValueError(f"unknown cp_signal {cp_signal!r}")


def analyze_recording(
    name: str, series: EpochSeries, config: PipelineConfig
) -> RecordingAnalysis:
    """Run all per-recording stages on an already-validated series."""
    scale = config.load_scale()
    rules = config.sleep_rules()
    energy = config.energy_params()

    intensity = classify_series(series, scale, config.age_years, signal=config.cut_axis)
    mask = candidate_mask(series, config.candidate)
    periods = detect_sleep_periods(mask, rules)
    metrics = [
        compute_metrics(mask, intensity, p, rules, series.epoch_minutes) for p in periods
    ]
    segments = segment_sleep_wake(series, periods, metrics)

    change_points: list[ChangePointSet] = []
    modes: list[list[ActivityMode]] = []
    for k, seg in enumerate(segments):
        if seg.empty_awake:
            change_points.append([])
            modes.append([])
            continue
        span = cp_observations(
            series, seg.awake_start_index, seg.awake_end_index, config.cp_signal
        )
        perm_cfg = PermutationConfig(
            n_permutations=config.n_permutations,
            significance=config.significance,
            master_seed=derive_seed(config.seed, name, k),
        )
        cps = e_divisive(span, energy, perm_cfg)
        change_points.append(cps)
        span_labels = intensity[seg.awake_start_index : seg.awake_end_index]
        modes.append(label_intervals(span_labels, cps, tie_break=config.mode_tie_break))
    return RecordingAnalysis(
        name=name,
        series=series,
        intensity=intensity,
        mask=mask,
        periods=periods,
        metrics=metrics,
        segments=segments,
        change_points=change_points,
        modes=modes,
    )


def pooled_dataset(analyses: list[RecordingAnalysis], config: PipelineConfig) -> Dataset:
    segments: list[SleepWakeSegment] = []
    modes: list[list[ActivityMode]] = []
    ids: list[str] = []
    epoch_minutes = 1.0
    for a in analyses:
        epoch_minutes = a.series.epoch_minutes
        for k, seg in enumerate(a.segments):
            segments.append(seg)
            if config.features_mode == "raw":
                # one synthetic whole-span mode per segment, so fraction
                # extraction sees the raw per-epoch histogram
                span_labels = a.intensity[seg.awake_start_index : seg.awake_end_index]
                if seg.empty_awake:
                    modes.append([])
                else:
                    fv = raw_fractions(seg, span_labels, epoch_minutes)
                    modes.append(_fractions_as_modes(fv, seg.awake_epochs))
            else:
                modes.append(a.modes[k])
            ids.append(f"{a.name}:{k:03d}")
    return build_dataset(
        segments,
        modes,
        filters=config.dataset_filters(),
        threshold=config.efficiency_threshold,
        epoch_minutes=epoch_minutes,
        segment_ids=ids,
        include_awake_feature=config.include_awake_feature,
    )


def _fractions_as_modes(fv, span_len: int) -> list[ActivityMode]:
    # raw-label fractions repackaged as pseudo-intervals of matching lengths
    from .cutpoints import IntensityLevel

    lengths = np.rint(fv.as_array() * span_len).astype(int)
    lengths[0] += span_len - lengths.sum()  # rounding slack goes to sedentary
    out = []
    cursor = 0
    for level, ln in zip(IntensityLevel, lengths):
        if ln > 0:
            hist = [0, 0, 0, 0]
            hist[int(level)] = int(ln)
            out.append(ActivityMode(cursor, cursor + int(ln), level, tuple(hist)))
            cursor += int(ln)
    return out


@dataclass
class RunResult:
    output_files: list[Path]
    manifest_path: Path
    dataset: Dataset | None
    exit_code: int = 0


def run_pipeline(inputs: list[Path], out_dir: Path, config: PipelineConfig) -> RunResult:
    """Full batch run over one or more epoch CSVs; writes reports + manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    timings: dict[str, float] = {}
    outputs: list[Path] = []
    analyses: list[RecordingAnalysis] = []

    t0 = time.perf_counter()
    series_by_name: list[tuple[str, EpochSeries]] = []
    for path in sorted(inputs):
        series_by_name.append((Path(path).stem, load_series(path, config)))
    timings["ingest"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for name, series in series_by_name:
        analyses.append(analyze_recording(name, series, config))
    timings["analyze"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for a in analyses:
        sleep_path = out_dir / f"{a.name}.sleep.json"
        write_json(sleep_path, sleep_report(a.series, a.periods, a.metrics))
        outputs.append(sleep_path)

        seg_path = out_dir / f"{a.name}.segments.csv"
        rows = segment_manifest_rows(a.segments, id_prefix=f"{a.name}:")
        write_csv(
            seg_path,
            ["segment_id", "awake_start", "awake_end", "onset", "awakening", "efficiency", "flags"],
            rows,
        )
        outputs.append(seg_path)

        cp_path = out_dir / f"{a.name}.changepoints.csv"
        cp_rows = []
        for k, cps in enumerate(a.change_points):
            for cp in cps:
                cp_rows.append(
                    [f"{a.name}:{k:03d}", cp.index, repr(cp.statistic), repr(cp.p_value)]
                )
        write_csv(cp_path, ["segment_id", "cp_index", "statistic", "p_value"], cp_rows)
        outputs.append(cp_path)

        mode_path = out_dir / f"{a.name}.modes.csv"
        mode_rows = []
        for k, modes in enumerate(a.modes):
            mode_rows.extend(mode_report_rows(f"{a.name}:{k:03d}", modes))
        write_csv(mode_path, ["segment_id", "start", "end", "mode"], mode_rows)
        outputs.append(mode_path)
    timings["reports"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    # an empty dataset is a failure class of its own (exit code 4 at the
    # CLI); the per-recording reports written above stay on disk
    dataset = pooled_dataset(analyses, config)
    dataset_path = out_dir / "dataset.csv"
    with open(dataset_path, "w", newline="", encoding="utf-8") as fh:
        write_dataset_csv(dataset, fh)
    outputs.append(dataset_path)
    timings["features"] = time.perf_counter() - t0

    if config.model:
        t0 = time.perf_counter()
        report_paths = train_and_report(dataset, out_dir, config)
        outputs.extend(report_paths)
        timings["model"] = time.perf_counter() - t0

    manifest_path = out_dir / "manifest.json"
    manifest = {
        "tool": "rahar",
        "version": __version__,
        "parameters": config.manifest_parameters(),
        "inputs": {str(Path(p).name): sha256_file(p) for p in sorted(inputs)},
        "outputs": {p.name: sha256_file(p) for p in sorted(outputs)},
        "timings_s": {k: round(v, 6) for k, v in timings.items()},
    }
    write_json(manifest_path, manifest)
    return RunResult(
        output_files=outputs, manifest_path=manifest_path, dataset=dataset, exit_code=0
    )


def train_and_report(dataset: Dataset, out_dir: Path, config: PipelineConfig) -> list[Path]:
    """Cross-validate the configured model and write report + ROC files."""
    out_dir = Path(out_dir)
    model_cfg = make_config(config.model, seed=config.seed)
    result = cross_validate(
        dataset.X, dataset.y, config.model, config=model_cfg, folds=config.folds, seed=config.seed
    )
    report = {
        "model_kind": config.model,
        "hyperparameters": {
            k: v for k, v in vars(model_cfg).items() if not k.startswith("_")
        },
        "seed": config.seed,
        "folds": config.folds,
        "n_rows": len(dataset),
        "per_fold": [r.summary() for r in result.fold_reports],
        "pooled": result.pooled.summary(),
        "roc_points": [[f, t] for f, t in result.pooled.roc_points],
    }
    report_path = out_dir / "model_report.json"
    write_json(report_path, report)
    roc_paths = write_roc_outputs(
        out_dir, "roc", result.pooled.roc_points, f"{config.model} pooled CV"
    )
    return [report_path, *roc_paths]
