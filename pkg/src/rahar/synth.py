"""Seeded synthetic actigraphy with planted ground truth.

A day profile is an ordered schedule of blocks (sleep or an awake
intensity mode), each with a duration and a per-axis count distribution.
The generator emits a minute-epoch series plus the exact truth needed by
oracle tests: planted sleep periods, awake-block boundaries (the change
points an estimator should recover), and the block schedule itself.

Counts are drawn from an overdispersed negative-binomial family (real
actigraphy counts are overdispersed; tests only rely on separation
between blocks, not on the family).  Sleep blocks emit all-zero epochs
with inclinometer "off"; optional noise inserts isolated single-epoch
movement inside sleep, placed so that the planted onset/awakening and a
zero WASO stay exact.  Awake epochs always carry at least one count on
axis1 so an awake block can never masquerade as candidate sleep.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .errors import InvalidProfile
from .ingest import Epoch, EpochSeries, Inclinometer, SubjectMeta
from .sleep import SleepPeriod, SleepRules

SLEEP = "sleep"
AWAKE_MODES = ("sedentary", "light", "moderate", "vigorous")

# default axis1 means chosen to land inside the adult Troiano bands
_DEFAULT_MEANS = {
    "sedentary": (20.0, 12.0, 8.0),
    "light": (700.0, 420.0, 280.0),
    "moderate": (3500.0, 2100.0, 1400.0),
    "vigorous": (7500.0, 4500.0, 3000.0),
}
_DEFAULT_STEPS = {"sedentary": 0.0, "light": 40.0, "moderate": 90.0, "vigorous": 130.0}
_DEFAULT_INCLINOMETER = {
    SLEEP: Inclinometer.OFF,
    "sedentary": Inclinometer.SITTING,
    "light": Inclinometer.STANDING,
    "moderate": Inclinometer.STANDING,
    "vigorous": Inclinometer.STANDING,
}


@dataclass(frozen=True)
class ActivityBlock:
    mode: str
    duration_min: int
    mean_counts: tuple[float, float, float] | None = None
    dispersion: float = 50.0
    mean_steps: float | None = None

    def resolved_means(self) -> tuple[float, float, float]:
        if self.mean_counts is not None:
            return self.mean_counts
        if self.mode == SLEEP:
            return (0.0, 0.0, 0.0)
        return _DEFAULT_MEANS[self.mode]

    def resolved_steps(self) -> float:
        if self.mean_steps is not None:
            return self.mean_steps
        if self.mode == SLEEP:
            return 0.0
        return _DEFAULT_STEPS[self.mode]


@dataclass(frozen=True)
class DayProfile:
    schedule: tuple[ActivityBlock, ...]
    noise: float = 0.0
    seed: int = 0
    start: datetime = datetime(2014, 9, 1, 0, 0, tzinfo=timezone.utc)
    subject: SubjectMeta = field(default_factory=lambda: SubjectMeta("sim", 18))


@dataclass
class GroundTruth:
    periods: list[SleepPeriod]
    change_points: list[int]  # global epoch indices of awake-block boundaries
    mode_schedule: list[tuple[int, int, str]]  # (start, end, mode) per block


def validate_profile(profile: DayProfile, rules: SleepRules | None = None) -> None:
    """Reject profiles whose truth the default sleep rules could not recover."""
    rules = rules or SleepRules()
    if not profile.schedule:
        raise InvalidProfile("schedule is empty")
    if not 0.0 <= profile.noise < 1.0:
        raise InvalidProfile("noise must be in [0, 1)")
    if profile.seed < 0:
        raise InvalidProfile("seed must be non-negative")
    awake_since_sleep = None  # None until the first sleep block is seen
    for i, block in enumerate(profile.schedule):
        if block.mode != SLEEP and block.mode not in AWAKE_MODES:
            raise InvalidProfile(f"unknown block mode {block.mode!r}")
        if block.duration_min <= 0:
            raise InvalidProfile("block durations must be positive")
        if block.dispersion <= 0:
            raise InvalidProfile("dispersion must be positive")
        if block.mode == SLEEP:
            if block.duration_min <= rules.onset_run:
                raise InvalidProfile(
                    f"sleep blocks must exceed {rules.onset_run} minutes to be detectable"
                )
            if i > 0 and profile.schedule[i - 1].mode == SLEEP:
                raise InvalidProfile("adjacent sleep blocks are ambiguous; merge them")
            if awake_since_sleep is not None and awake_since_sleep < rules.awakening_gap:
                raise InvalidProfile(
                    f"awake span between sleep blocks must be >= {rules.awakening_gap} minutes"
                )
            awake_since_sleep = 0
        elif awake_since_sleep is not None:
            awake_since_sleep += block.duration_min


def _draw_counts(rng: np.random.Generator, mean: float, dispersion: float, size: int) -> np.ndarray:
    if mean <= 0:
        return np.zeros(size, dtype=np.int64)
    p = dispersion / (dispersion + mean)
    return rng.negative_binomial(dispersion, p, size=size).astype(np.int64)


def generate(profile: DayProfile, rules: SleepRules | None = None) -> tuple[EpochSeries, GroundTruth]:
    """Deterministic series + ground truth for a valid profile."""
    rules = rules or SleepRules()
    validate_profile(profile, rules)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([profile.seed])))
    stride = timedelta(minutes=1)

    epochs: list[Epoch] = []
    periods: list[SleepPeriod] = []
    change_points: list[int] = []
    mode_schedule: list[tuple[int, int, str]] = []
    cursor = 0
    total = sum(b.duration_min for b in profile.schedule)

    for i, block in enumerate(profile.schedule):
        start, end = cursor, cursor + block.duration_min
        mode_schedule.append((start, end, block.mode))
        means = block.resolved_means()
        incl = _DEFAULT_INCLINOMETER[block.mode]
        if block.mode == SLEEP:
            axis = np.zeros((block.duration_min, 3), dtype=np.int64)
            steps = np.zeros(block.duration_min, dtype=np.int64)
            if profile.noise > 0:
                # isolated flips, kept clear of the onset window and the last
                # epoch, so the planted bounds and zero WASO remain exact
                flips = rng.random(block.duration_min) < profile.noise
                prev_flipped = False
                for k in range(block.duration_min):
                    if k < rules.onset_run or k >= block.duration_min - 1:
                        continue
                    if flips[k] and not prev_flipped:
                        axis[k, 0] = max(int(_draw_counts(rng, 150.0, 5.0, 1)[0]), 1)
                        axis[k, 1] = int(_draw_counts(rng, 90.0, 5.0, 1)[0])
                        prev_flipped = True
                    else:
                        prev_flipped = False
            truncated = i == len(profile.schedule) - 1 or (
                sum(b.duration_min for b in profile.schedule[i + 1 :]) < rules.awakening_gap
            )
            periods.append(SleepPeriod(start, end - 1, truncated=truncated))
        else:
            axis = np.column_stack(
                [_draw_counts(rng, m, block.dispersion, block.duration_min) for m in means]
            )
            # an awake epoch must never satisfy the candidate-sleep predicate
            axis[:, 0] = np.maximum(axis[:, 0], 1)
            steps = rng.poisson(block.resolved_steps(), size=block.duration_min).astype(np.int64)
            if i > 0 and profile.schedule[i - 1].mode in AWAKE_MODES:
                change_points.append(start)
        for k in range(block.duration_min):
            epochs.append(
                Epoch(
                    timestamp=profile.start + (cursor + k) * stride,
                    axis1=int(axis[k, 0]),
                    axis2=int(axis[k, 1]),
                    axis3=int(axis[k, 2]),
                    steps=int(steps[k]),
                    inclinometer=incl,
                )
            )
        cursor = end

    assert cursor == total
    series = EpochSeries(tuple(epochs), stride, profile.subject)
    return series, GroundTruth(periods, change_points, mode_schedule)


# --- profile JSON ------------------------------------------------------------

def profile_to_dict(profile: DayProfile) -> dict:
    return {
        "seed": profile.seed,
        "noise": profile.noise,
        "start": profile.start.isoformat(),
        "subject": {
            "subject_id": profile.subject.subject_id,
            "age_years": profile.subject.age_years,
        },
        "schedule": [
            {
                "mode": b.mode,
                "duration_min": b.duration_min,
                **({"mean_counts": list(b.mean_counts)} if b.mean_counts else {}),
                "dispersion": b.dispersion,
                **({"mean_steps": b.mean_steps} if b.mean_steps is not None else {}),
            }
            for b in profile.schedule
        ],
    }


def profile_from_dict(payload: dict) -> DayProfile:
    try:
        blocks = tuple(
            ActivityBlock(
                mode=item["mode"],
                duration_min=int(item["duration_min"]),
                mean_counts=tuple(item["mean_counts"]) if "mean_counts" in item else None,
                dispersion=float(item.get("dispersion", 50.0)),
                mean_steps=float(item["mean_steps"]) if "mean_steps" in item else None,
            )
            for item in payload["schedule"]
        )
        subject = payload.get("subject", {})
        return DayProfile(
            schedule=blocks,
            noise=float(payload.get("noise", 0.0)),
            seed=int(payload.get("seed", 0)),
            start=datetime.fromisoformat(payload.get("start", "2014-09-01T00:00:00+00:00")),
            subject=SubjectMeta(
                subject_id=str(subject.get("subject_id", "sim")),
                age_years=int(subject.get("age_years", 18)),
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidProfile(f"bad profile payload: {exc}")


def load_profile(path: str | Path) -> DayProfile:
    with open(path, encoding="utf-8") as fh:
        return profile_from_dict(json.load(fh))


def save_profile(profile: DayProfile, path: str | Path) -> None:
    Path(path).write_text(json.dumps(profile_to_dict(profile), indent=2, sort_keys=True) + "\n")
