"""Model inputs and targets per sleep-wake segment.

The model input is the fraction of awake time spent in each intensity
mode, computed over the smoothed interval labels (that smoothing is the
point of mode detection; raw per-epoch fractions are available for
ablation).  The target is binary sleep quality: efficiency below the
threshold (default 0.85) is poor, at or above it is good.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import IntEnum
from typing import TextIO

import numpy as np

from .cutpoints import IntensityLevel
from .errors import EmptyAwakeSpan, EmptyDataset
from .modes import ActivityMode
from .segments import SleepWakeSegment
from .sleep import SleepMetrics

DATASET_HEADER = [
    "segment_id",
    "frac_sed",
    "frac_light",
    "frac_mod",
    "frac_vig",
    "awake_min",
    "efficiency",
    "label",
]

EFFICIENCY_THRESHOLD = 0.85


class Quality(IntEnum):
    """Binary sleep quality; order matters (poor < good) for monotonicity."""

    POOR = 0
    GOOD = 1

    @property
    def token(self) -> str:
        return self.name.lower()

    @classmethod
    def from_token(cls, token: str) -> "Quality":
        return cls[token.upper()]


@dataclass(frozen=True)
class FeatureVector:
    frac_sedentary: float
    frac_light: float
    frac_moderate: float
    frac_vigorous: float
    awake_minutes: float  # metadata; excluded from the default model input

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.frac_sedentary, self.frac_light, self.frac_moderate, self.frac_vigorous]
        )


@dataclass(frozen=True)
class TargetLabel:
    label: Quality
    efficiency: float
    threshold: float = EFFICIENCY_THRESHOLD


@dataclass(frozen=True)
class DatasetFilters:
    exclude_first_segment: bool = True
    exclude_truncated: bool = True
    exclude_empty_awake: bool = True  # disabling raises instead: 0/0 fractions
    min_awake_min: float = 0.0  # 0 disables the nap filter


@dataclass
class Dataset:
    """Feature matrix + labels with per-row provenance."""

    X: np.ndarray  # (k, 4) mode fractions
    y: np.ndarray  # (k,) 1 = good sleep efficiency
    segment_ids: list[str]
    efficiency: np.ndarray
    awake_minutes: np.ndarray

    def __len__(self) -> int:
        return len(self.segment_ids)


def _fractions_from_lengths(lengths_by_level: np.ndarray) -> np.ndarray:
    total = lengths_by_level.sum()
    return lengths_by_level / total


def extract_features(
    segment: SleepWakeSegment,
    modes: list[ActivityMode],
    epoch_minutes: float = 1.0,
) -> FeatureVector:
    """Fractions of awake time per intensity mode, from smoothed interval labels.

    The modes must tile the segment's awake span exactly.
    """
    span_len = segment.awake_epochs
    if span_len == 0:
        raise EmptyAwakeSpan("cannot extract fractions from a zero-length awake span")
    if not modes or modes[0].start_index != 0 or modes[-1].end_index != span_len:
        raise ValueError("modes must tile the awake span")
    for prev, cur in zip(modes, modes[1:]):
        if prev.end_index != cur.start_index:
            raise ValueError("modes must tile the awake span without gaps")
    lengths = np.zeros(4)
    for m in modes:
        lengths[int(m.level)] += m.length
    frac = _fractions_from_lengths(lengths)
    return FeatureVector(*frac, awake_minutes=span_len * epoch_minutes)


def raw_fractions(
    segment: SleepWakeSegment,
    intensity_span: list[IntensityLevel] | np.ndarray,
    epoch_minutes: float = 1.0,
) -> FeatureVector:
    """Ablation variant: fractions from raw per-epoch labels, no smoothing."""
    span_len = segment.awake_epochs
    if span_len == 0:
        raise EmptyAwakeSpan("cannot extract fractions from a zero-length awake span")
    if len(intensity_span) != span_len:
        raise ValueError("intensity labels must align with the awake span")
    hist = np.bincount([int(v) for v in intensity_span], minlength=4).astype(float)
    frac = _fractions_from_lengths(hist)
    return FeatureVector(*frac, awake_minutes=span_len * epoch_minutes)


def label_target(metrics: SleepMetrics, threshold: float = EFFICIENCY_THRESHOLD) -> TargetLabel:
    """Poor sleep iff efficiency is strictly below the threshold."""
    quality = Quality.POOR if metrics.efficiency < threshold else Quality.GOOD
    return TargetLabel(label=quality, efficiency=metrics.efficiency, threshold=threshold)


def build_dataset(
    segments: list[SleepWakeSegment],
    modes_per_segment: list[list[ActivityMode]],
    filters: DatasetFilters | None = None,
    threshold: float = EFFICIENCY_THRESHOLD,
    epoch_minutes: float = 1.0,
    segment_ids: list[str] | None = None,
    include_awake_feature: bool = False,
) -> Dataset:
    """Assemble the model matrix, applying the exclusion filters in segment order.

    The default input is the four mode fractions; ``include_awake_feature``
    appends awake minutes as a fifth column for models that want exposure
    time as well.
    """
    filters = filters or DatasetFilters()
    if len(segments) != len(modes_per_segment):
        raise ValueError("segments and modes_per_segment must align")
    ids = segment_ids or [f"seg{k:04d}" for k in range(len(segments))]
    rows, labels, kept_ids, effs, awake = [], [], [], [], []
    for seg, modes, seg_id in zip(segments, modes_per_segment, ids):
        if filters.exclude_first_segment and seg.first_segment:
            continue
        if filters.exclude_truncated and seg.sleep.truncated:
            continue
        if seg.empty_awake:
            if filters.exclude_empty_awake:
                continue
            raise EmptyAwakeSpan(f"segment {seg_id} has an empty awake span")
        fv = extract_features(seg, modes, epoch_minutes)
        if filters.min_awake_min > 0 and fv.awake_minutes < filters.min_awake_min:
            continue
        target = label_target(seg.metrics, threshold)
        rows.append(fv.as_array())
        labels.append(int(target.label))
        kept_ids.append(seg_id)
        effs.append(seg.metrics.efficiency)
        awake.append(fv.awake_minutes)
    if not rows:
        raise EmptyDataset("all segments were filtered out")
    X = np.vstack(rows)
    awake_arr = np.asarray(awake)
    if include_awake_feature:
        X = np.hstack([X, awake_arr[:, None]])
    return Dataset(
        X=X,
        y=np.asarray(labels, dtype=np.int64),
        segment_ids=kept_ids,
        efficiency=np.asarray(effs),
        awake_minutes=awake_arr,
    )


def write_dataset_csv(dataset: Dataset, stream: TextIO) -> None:
    """Write the exchange-format dataset CSV (floats via repr, so reads round-trip).

    The file format is fixed regardless of the in-memory feature width:
    four fractions plus the awake-minutes column, which doubles as the
    optional fifth model feature.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(DATASET_HEADER)
    for i, seg_id in enumerate(dataset.segment_ids):
        writer.writerow(
            [
                seg_id,
                *(repr(float(v)) for v in dataset.X[i, :4]),
                repr(float(dataset.awake_minutes[i])),
                repr(float(dataset.efficiency[i])),
                Quality(dataset.y[i]).token,
            ]
        )


def read_dataset_csv(stream: TextIO, include_awake_feature: bool = False) -> Dataset:
    """Read a dataset CSV produced by :func:`write_dataset_csv`."""
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != DATASET_HEADER:
        raise ValueError(f"bad dataset header {header!r}")
    ids, X, y, effs, awake = [], [], [], [], []
    for row in reader:
        if not row:
            continue
        ids.append(row[0])
        X.append([float(v) for v in row[1:5]])
        awake.append(float(row[5]))
        effs.append(float(row[6]))
        y.append(int(Quality.from_token(row[7])))
    if not ids:
        raise EmptyDataset("dataset file has no rows")
    features = np.asarray(X)
    awake_arr = np.asarray(awake)
    if include_awake_feature:
        features = np.hstack([features, awake_arr[:, None]])
    return Dataset(
        X=features,
        y=np.asarray(y, dtype=np.int64),
        segment_ids=ids,
        efficiency=np.asarray(effs),
        awake_minutes=awake_arr,
    )
