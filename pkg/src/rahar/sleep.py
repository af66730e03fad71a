"""Automated sleep-period detection and clinical sleep metrics.

An epoch is a *candidate sleep record* when it shows no triaxial movement,
zero steps, and an accepted inclinometer state.  Candidate runs are then
tested against two run rules:

* sleep onset is the first epoch of a candidate run at least
  ``onset_run`` epochs long (default 15 minutes);
* sleep awakening is the last candidate epoch before a non-candidate run
  at least ``awakening_gap`` epochs long (default 30 minutes).  Shorter
  non-candidate bouts stay inside the sleep period.

From the resulting period the standard actigraphy quantities follow:
wake-after-sleep-onset (interior movement bouts strictly longer than
``waso_bout_min`` minutes), sleep latency (the sedentary run immediately
preceding onset), total minutes in bed (duration + latency), total sleep
time (duration - WASO - latency), and sleep efficiency (TST / TMB).

Note on the candidate predicate: the default accepted inclinometer set is
everything *except* lying down.  That is deliberate and surprising; see
the README before overriding it.  A recording that ends mid-sleep yields
a truncated period (closed at the last candidate epoch, or discarded,
per policy) because the awakening rule cannot be verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cutpoints import IntensityLevel
from .errors import DegenerateBed
from .ingest import EpochSeries, Inclinometer


@dataclass(frozen=True)
class CandidateConfig:
    """Which stillness criteria an epoch must satisfy to be a sleep candidate."""

    require_zero_triaxial: bool = True
    require_zero_steps: bool = True
    inclinometer_accept: frozenset[Inclinometer] = frozenset(
        {Inclinometer.OFF, Inclinometer.STANDING, Inclinometer.SITTING}
    )

    def __post_init__(self):
        inclinometer_active = set(self.inclinometer_accept) != set(Inclinometer)
        if not (self.require_zero_triaxial or self.require_zero_steps or inclinometer_active):
            raise ValueError("at least one candidate criterion must be enabled")


class TruncatedPolicy(Enum):
    CLOSE_AT_LAST_CANDIDATE = "close_at_last_candidate"
    DISCARD = "discard"


@dataclass(frozen=True)
class SleepRules:
    onset_run: int = 15
    awakening_gap: int = 30
    waso_bout_min: int = 5  # a bout counts toward WASO only if strictly longer
    truncated_policy: TruncatedPolicy = TruncatedPolicy.CLOSE_AT_LAST_CANDIDATE
    min_sleep_min: int = 0  # optional post-filter; 0 disables

    def __post_init__(self):
        if self.onset_run < 1 or self.awakening_gap < 1 or self.waso_bout_min < 1:
            raise ValueError("sleep rule thresholds must be positive")


@dataclass(frozen=True)
class SleepPeriod:
    """Epoch-index bounds of one sleep period, inclusive on both ends."""

    onset_index: int
    awakening_index: int
    truncated: bool = False

    def __post_init__(self):
        if self.onset_index > self.awakening_index:
            raise ValueError("onset must not come after awakening")

    @property
    def duration_epochs(self) -> int:
        return self.awakening_index - self.onset_index + 1


@dataclass(frozen=True)
class SleepMetrics:
    duration_min: float
    waso_min: float
    latency_min: float
    total_minutes_in_bed: float
    total_sleep_time_min: float
    efficiency: float
    preceding_sedentary_start_index: int
    tst_floored: bool = False  # WASO + latency exceeded duration; TST clamped to 0


def candidate_mask(series: EpochSeries, cfg: CandidateConfig | None = None) -> np.ndarray:
    """Boolean mask: True where the epoch satisfies every enabled criterion."""
    cfg = cfg or CandidateConfig()
    n = len(series)
    mask = np.ones(n, dtype=bool)
    for i, e in enumerate(series.epochs):
        if cfg.require_zero_triaxial and (e.axis1 or e.axis2 or e.axis3):
            mask[i] = False
        elif cfg.require_zero_steps and e.steps:
            mask[i] = False
        elif e.inclinometer not in cfg.inclinometer_accept:
            mask[i] = False
    return mask


def _runs(mask: np.ndarray) -> list[tuple[bool, int, int]]:
    """Maximal constant runs as (value, start, stop) with stop exclusive."""
    n = len(mask)
    if n == 0:
        return []
    edges = np.flatnonzero(np.diff(mask.astype(np.int8))) + 1
    starts = np.concatenate(([0], edges))
    stops = np.concatenate((edges, [n]))
    return [(bool(mask[a]), int(a), int(b)) for a, b in zip(starts, stops)]


def detect_sleep_periods(mask: np.ndarray, rules: SleepRules | None = None) -> list[SleepPeriod]:
    """Apply the onset/awakening run rules to a candidate mask.

    Returns disjoint, ordered periods.  A period opens at the start of the
    first candidate run of length >= ``onset_run`` and stays open across
    non-candidate bouts shorter than ``awakening_gap``; it closes at the
    last candidate epoch before the first long-enough non-candidate run.
    If the recording ends first, the truncation policy decides whether the
    period is closed at the last candidate epoch (flagged) or dropped.
    """
    rules = rules or SleepRules()
    mask = np.asarray(mask, dtype=bool)
    runs = _runs(mask)
    periods: list[SleepPeriod] = []
    i = 0
    while i < len(runs):
        value, start, stop = runs[i]
        if not value or stop - start < rules.onset_run:
            i += 1
            continue
        onset = start
        last_candidate = stop - 1
        truncated = False
        j = i + 1
        while True:
            if j >= len(runs):
                truncated = True  # recording ended during a candidate run
                break
            _, gap_start, gap_stop = runs[j]
            if gap_stop - gap_start >= rules.awakening_gap:
                break
            if j + 1 >= len(runs):
                truncated = True  # trailing gap too short to confirm awakening
                break
            _, _, cand_stop = runs[j + 1]
            last_candidate = cand_stop - 1
            j += 2
        if truncated:
            if rules.truncated_policy is TruncatedPolicy.CLOSE_AT_LAST_CANDIDATE:
                periods.append(SleepPeriod(onset, last_candidate, truncated=True))
            break
        periods.append(SleepPeriod(onset, last_candidate))
        i = j + 1
    if rules.min_sleep_min > 0:
        periods = [p for p in periods if p.duration_epochs >= rules.min_sleep_min]
    return periods


def compute_waso(
    mask: np.ndarray, period: SleepPeriod, rules: SleepRules | None = None
) -> int:
    """Wakefulness inside the sleep period, in epochs.

    Sums maximal non-candidate runs strictly between onset and awakening
    whose length exceeds ``waso_bout_min``.
    """
    rules = rules or SleepRules()
    mask = np.asarray(mask, dtype=bool)
    if not (0 <= period.onset_index <= period.awakening_index < len(mask)):
        raise ValueError("period out of mask bounds")
    interior = mask[period.onset_index : period.awakening_index + 1]
    total = 0
    for value, start, stop in _runs(interior):
        if not value and stop - start > rules.waso_bout_min:
            total += stop - start
    return total


def compute_latency(
    intensity: list[IntensityLevel] | np.ndarray, period: SleepPeriod
) -> tuple[int, int]:
    """Sleep latency in epochs, plus where the preceding sedentary run starts.

    The latency run is the maximal block of sedentary-labeled epochs ending
    at onset-1; if the epoch before onset is not sedentary (or onset is the
    first epoch), latency is zero and the run start equals the onset.
    """
    onset = period.onset_index
    start = onset
    while start > 0 and intensity[start - 1] == IntensityLevel.SEDENTARY:
        start -= 1
    return onset - start, start


def compute_metrics(
    mask: np.ndarray,
    intensity: list[IntensityLevel] | np.ndarray,
    period: SleepPeriod,
    rules: SleepRules | None = None,
    epoch_minutes: float = 1.0,
) -> SleepMetrics:
    """All sleep quantities for one detected period.

    Duration counts epochs inclusively ([onset, awakening] spans
    awakening - onset + 1 epochs).  TST = duration - WASO - latency is
    floored at zero (flagged) when interior wakefulness plus latency
    exceed the duration; efficiency = TST / TMB is then zero as well.
    """
    rules = rules or SleepRules()
    duration = period.duration_epochs
    waso = compute_waso(mask, period, rules)
    latency, sedentary_start = compute_latency(intensity, period)
    tmb = duration + latency
    if tmb == 0:
        raise DegenerateBed("total minutes in bed is zero")
    tst = duration - waso - latency
    floored = tst < 0
    if floored:
        tst = 0
    return SleepMetrics(
        duration_min=duration * epoch_minutes,
        waso_min=waso * epoch_minutes,
        latency_min=latency * epoch_minutes,
        total_minutes_in_bed=tmb * epoch_minutes,
        total_sleep_time_min=tst * epoch_minutes,
        efficiency=tst / tmb,
        preceding_sedentary_start_index=sedentary_start,
        tst_floored=floored,
    )


def sleep_report(
    series: EpochSeries,
    periods: list[SleepPeriod],
    metrics: list[SleepMetrics],
) -> list[dict]:
    """JSON-ready rows, one per detected period, timestamps in ISO-8601."""
    rows = []
    for p, m in zip(periods, metrics):
        rows.append(
            {
                "onset": series.epochs[p.onset_index].timestamp.isoformat(),
                "awakening": series.epochs[p.awakening_index].timestamp.isoformat(),
                "onset_index": p.onset_index,
                "awakening_index": p.awakening_index,
                "duration_min": m.duration_min,
                "waso_min": m.waso_min,
                "latency_min": m.latency_min,
                "tmb_min": m.total_minutes_in_bed,
                "tst_min": m.total_sleep_time_min,
                "efficiency": m.efficiency,
                "truncated": p.truncated,
            }
        )
    return rows
