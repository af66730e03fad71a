from __future__ import annotations

import numpy as np
import pytest

from rahar.cutpoints import IntensityLevel
from rahar.segments import segment_sleep_wake
from rahar.sleep import SleepPeriod, compute_metrics

from conftest import make_series

SED = IntensityLevel.SEDENTARY


def metrics_for(n: int, period: SleepPeriod):
    mask = np.zeros(n, dtype=bool)
    mask[period.onset_index : period.awakening_index + 1] = True
    return compute_metrics(mask, [SED] * n, period)


class TestSegmentation:
    def test_two_periods_link_to_preceding_awake(self):
        n = 2000
        series = make_series([10] * n)
        p1, p2 = SleepPeriod(100, 500), SleepPeriod(1500, 1900)
        segs = segment_sleep_wake(series, [p1, p2], [metrics_for(n, p1), metrics_for(n, p2)])
        assert len(segs) == 2
        first, second = segs
        assert (first.awake_start_index, first.awake_end_index) == (0, 100)
        assert first.first_segment and not first.empty_awake
        assert (second.awake_start_index, second.awake_end_index) == (501, 1500)
        assert not second.first_segment

    def test_period_at_recording_start(self):
        n = 100
        series = make_series([0] * n)
        p = SleepPeriod(0, 50)
        (seg,) = segment_sleep_wake(series, [p], [metrics_for(n, p)])
        assert seg.empty_awake and seg.awake_epochs == 0 and seg.first_segment

    def test_no_periods(self):
        assert segment_sleep_wake(make_series([1] * 10), [], []) == []

    def test_truncated_periods_make_no_segment(self):
        n = 300
        series = make_series([5] * n)
        p1 = SleepPeriod(40, 100)
        p2 = SleepPeriod(200, 299, truncated=True)
        segs = segment_sleep_wake(series, [p1, p2], [metrics_for(n, p1), metrics_for(n, p2)])
        assert len(segs) == 1
        assert segs[0].sleep is p1

    def test_back_to_back_periods_give_empty_awake(self):
        n = 200
        series = make_series([0] * n)
        p1, p2 = SleepPeriod(10, 80), SleepPeriod(81, 150)
        segs = segment_sleep_wake(series, [p1, p2], [metrics_for(n, p1), metrics_for(n, p2)])
        assert not segs[0].empty_awake
        assert segs[1].empty_awake and segs[1].awake_epochs == 0

    def test_tiling_is_contiguous_and_disjoint(self):
        rng = np.random.default_rng(5)
        n = 3000
        series = make_series([1] * n)
        # build random disjoint ordered periods
        cursor = 0
        periods = []
        while cursor + 100 < n:
            onset = cursor + int(rng.integers(0, 50))
            awakening = onset + int(rng.integers(20, 60))
            periods.append(SleepPeriod(onset, awakening))
            cursor = awakening + int(rng.integers(1, 40))
        metrics = [metrics_for(n, p) for p in periods]
        segs = segment_sleep_wake(series, periods, metrics)
        assert len(segs) == len(periods)
        covered = []
        for seg in segs:
            covered.append((seg.awake_start_index, seg.awake_end_index))
            covered.append((seg.sleep.onset_index, seg.sleep.awakening_index + 1))
            assert seg.awake_end_index == seg.sleep.onset_index
        flat = sorted(covered)
        for (a1, b1), (a2, b2) in zip(flat, flat[1:]):
            assert b1 == a2  # contiguous, no overlap, no holes
        assert flat[0][0] == 0
        assert flat[-1][1] == periods[-1].awakening_index + 1

    def test_misaligned_metrics_rejected(self):
        series = make_series([0] * 10)
        with pytest.raises(ValueError):
            segment_sleep_wake(series, [SleepPeriod(0, 5)], [])
