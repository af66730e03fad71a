"""Activity intensity classification by count-per-minute cut points.

Each epoch is assigned one of four intensity levels (sedentary, light,
moderate, vigorous) by comparing its vertical-axis counts per minute
against an age-indexed cut-point scale.  The bundled scale transcribes
the Troiano NHANES thresholds (Troiano et al., Med Sci Sports Exerc 2008):
adults use 100 / 2020 / 5999 counts-per-minute boundaries, youths aged
6-17 use the age-specific moderate and vigorous thresholds from the same
publication.  Custom scales can be loaded from a CSV file with rows
``age_min,age_max,sedentary_max,light_max,moderate_max`` (inclusive
upper bounds in counts/min).

The scale is defined on vertical-axis (axis1) counts.  A vector-magnitude
signal option exists for devices calibrated that way, but the bundled
thresholds were published for axis1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import IntEnum
from importlib import resources
from pathlib import Path

from .errors import InvalidScale
from .ingest import Epoch, EpochSeries

SCALE_HEADER = ["age_min", "age_max", "sedentary_max", "light_max", "moderate_max"]


class IntensityLevel(IntEnum):
    SEDENTARY = 0
    LIGHT = 1
    MODERATE = 2
    VIGOROUS = 3

    @property
    def token(self) -> str:
        return self.name.lower()

    @classmethod
    def from_token(cls, token: str) -> "IntensityLevel":
        return cls[token.upper()]


@dataclass(frozen=True)
class AgeBand:
    """Cut points for one age range, as exclusive upper bounds in counts/min.

    ``bounds[k]`` is the smallest count-per-minute value that is *too high*
    for level k; the last entry is +inf so every non-negative value maps to
    exactly one level.
    """

    age_min: int
    age_max: int
    bounds: tuple[float, float, float, float]

    def level_for(self, counts_per_min: float) -> IntensityLevel:
        for k, upper in enumerate(self.bounds):
            if counts_per_min < upper:
                return IntensityLevel(k)
        raise InvalidScale("age band does not cover +inf")  # unreachable on valid bands


@dataclass(frozen=True)
class CutPointScale:
    name: str
    bands: tuple[AgeBand, ...]

    def band_for_age(self, age_years: int) -> AgeBand:
        for band in self.bands:
            if band.age_min <= age_years <= band.age_max:
                return band
        raise InvalidScale(f"scale {self.name!r} has no band for age {age_years}")


def _validate_band(band: AgeBand) -> None:
    b = band.bounds
    if b[0] <= 0:
        raise InvalidScale(f"sedentary bound must be positive, got {b[0]}")
    if not (b[0] < b[1] < b[2] < b[3]):
        raise InvalidScale(f"bounds must be strictly increasing, got {b}")
    if not math.isinf(b[3]):
        raise InvalidScale("last bound must be +inf so bands cover [0, +inf)")


def make_scale(name: str, rows: list[tuple[int, int, float, float, float]]) -> CutPointScale:
    """Build a scale from (age_min, age_max, sedentary_max, light_max, moderate_max) rows.

    The *_max columns are inclusive upper bounds in counts/min; internally
    they become exclusive bounds at max+1 so integer counts land in the
    published bands and fractional counts-per-minute (from aggregated
    epochs) resolve consistently.
    """
    bands = []
    for age_min, age_max, sed_max, light_max, mod_max in rows:
        if age_min > age_max:
            raise InvalidScale(f"age range [{age_min}, {age_max}] is empty")
        bands.append(
            AgeBand(age_min, age_max, (sed_max + 1, light_max + 1, mod_max + 1, math.inf))
        )
    for band in bands:
        _validate_band(band)
    return CutPointScale(name, tuple(bands))


def load_scale_file(path: str | Path, name: str | None = None) -> CutPointScale:
    """Load a cut-point scale from a CSV file (see module docstring for format)."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SCALE_HEADER:
            raise InvalidScale(f"bad scale header {header!r}, expected {','.join(SCALE_HEADER)}")
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != 5:
                raise InvalidScale(f"scale row {row!r} must have 5 fields")
            try:
                rows.append(
                    (int(row[0]), int(row[1]), float(row[2]), float(row[3]), float(row[4]))
                )
            except ValueError as exc:
                raise InvalidScale(f"scale row {row!r}: {exc}")
    if not rows:
        raise InvalidScale("scale file has no bands")
    return make_scale(name or path.stem, rows)


def builtin_troiano_scale() -> CutPointScale:
    """The bundled Troiano (2008) scale: youth bands for ages 6-17, adult 18+."""
    with resources.files("rahar").joinpath("data/troiano_2008.csv").open(
        "r", encoding="utf-8"
    ) as fh:
        reader = csv.reader(fh)
        next(reader)  # header, fixed by the bundled file
        rows = [
            (int(r[0]), int(r[1]), float(r[2]), float(r[3]), float(r[4])) for r in reader if r
        ]
    return make_scale("troiano-2008", rows)


def _signal_counts(epoch: Epoch, signal: str) -> float:
    if signal == "axis1":
        return float(epoch.axis1)
    if signal == "vm3":
        return math.sqrt(epoch.axis1**2 + epoch.axis2**2 + epoch.axis3**2)
    raise ValueError(f"unknown signal {signal!r}, expected 'axis1' or 'vm3'")


def classify_epoch(
    epoch: Epoch,
    scale: CutPointScale,
    age_years: int,
    epoch_minutes: float = 1.0,
    signal: str = "axis1",
) -> IntensityLevel:
    """Intensity level of one epoch from its counts-per-minute."""
    if epoch_minutes <= 0:
        raise ValueError(f"epoch_minutes must be positive, got {epoch_minutes}")
    cpm = _signal_counts(epoch, signal) / epoch_minutes
    return scale.band_for_age(age_years).level_for(cpm)


def classify_series(
    series: EpochSeries,
    scale: CutPointScale | None = None,
    age_years: int | None = None,
    signal: str = "axis1",
) -> list[IntensityLevel]:
    """Elementwise intensity labels for a validated series.

    Age defaults to the series' subject metadata; the scale defaults to the
    bundled Troiano table.
    """
    scale = scale or builtin_troiano_scale()
    age = age_years if age_years is not None else series.subject.age_years
    band = scale.band_for_age(age)  # resolve once; also fails fast on bad age
    minutes = series.epoch_minutes
    return [
        band.level_for(_signal_counts(e, signal) / minutes) for e in series.epochs
    ]
