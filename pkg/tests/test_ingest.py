from __future__ import annotations

import io
from datetime import timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rahar.errors import (
    DuplicateTimestamp,
    GapDetected,
    MalformedRow,
    NegativeCount,
    NonMonotone,
    ParseError,
    UnknownInclinometer,
    ZeroFactor,
)
from rahar.ingest import (
    Inclinometer,
    aggregate_epochs,
    fill_gaps,
    find_gaps,
    parse_epoch_csv,
    serialize_epoch_csv,
    validate_series,
)

from conftest import make_series

HEADER = "timestamp,axis1,axis2,axis3,steps,inclinometer\n"


def csv_text(rows: list[str]) -> str:
    return HEADER + "".join(r + "\n" for r in rows)


class TestParse:
    def test_single_row_maps_fields(self):
        series = parse_epoch_csv(csv_text(["2014-09-01T22:00:00+03:00,0,0,0,0,lying"]))
        epoch = series[0]
        assert epoch.counts == (0, 0, 0)
        assert epoch.steps == 0
        assert epoch.inclinometer is Inclinometer.LYING
        assert epoch.timestamp.isoformat() == "2014-09-01T22:00:00+03:00"

    def test_negative_count_rejected(self):
        with pytest.raises(NegativeCount) as info:
            parse_epoch_csv(csv_text(["2014-09-01T22:00:00+03:00,-5,0,0,0,off"]))
        assert info.value.line_number == 2

    def test_full_day_cardinality(self):
        day = make_series([1] * 1440)
        buf = io.StringIO()
        serialize_epoch_csv(day, buf)
        series = parse_epoch_csv(buf.getvalue())
        assert len(series) == 1440
        assert validate_series(series) is series

    def test_unknown_inclinometer(self):
        with pytest.raises(UnknownInclinometer):
            parse_epoch_csv(csv_text(["2014-09-01T22:00:00+03:00,0,0,0,0,prone"]))

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_epoch_csv("time,ax1\n")

    def test_malformed_row_reports_line(self):
        text = csv_text(
            ["2014-09-01T22:00:00+03:00,0,0,0,0,off", "2014-09-01T22:01:00+03:00,x,0,0,0,off"]
        )
        with pytest.raises(MalformedRow) as info:
            parse_epoch_csv(text)
        assert info.value.line_number == 3

    def test_zulu_suffix_means_utc(self):
        series = parse_epoch_csv(csv_text(["2014-09-01T22:00:00Z,0,0,0,0,off"]))
        assert series[0].timestamp.utcoffset() == timedelta(0)

    def test_round_trip_identity(self):
        series = make_series(
            [
                {"axis1": 5, "axis2": 1, "steps": 2, "inclinometer": Inclinometer.SITTING},
                {"axis1": 0},
                {"axis1": 7, "inclinometer": Inclinometer.LYING},
            ]
        )
        buf = io.StringIO()
        serialize_epoch_csv(series, buf)
        again = parse_epoch_csv(buf.getvalue())
        assert again.epochs == series.epochs


class TestValidate:
    def test_contiguous_passes(self):
        series = make_series([0] * 100)
        assert validate_series(series) is series

    def test_missing_minute_reports_gap(self):
        series = make_series([0] * 100)
        broken = type(series)(
            series.epochs[:50] + series.epochs[51:], series.epoch_length, series.subject
        )
        with pytest.raises(GapDetected) as info:
            validate_series(broken)
        (gap,) = info.value.gaps
        assert gap.start == series.epochs[50].timestamp
        assert gap.length == 1

    def test_duplicate_timestamp(self):
        series = make_series([0] * 10)
        broken = type(series)(
            series.epochs + (series.epochs[-1],), series.epoch_length, series.subject
        )
        with pytest.raises(DuplicateTimestamp):
            validate_series(broken)

    def test_non_monotone(self):
        series = make_series([0] * 10)
        broken = type(series)(
            (series.epochs[5],) + series.epochs, series.epoch_length, series.subject
        )
        with pytest.raises(NonMonotone):
            validate_series(broken)

    def test_fill_gaps_restores_grid(self):
        series = make_series([3] * 100)
        broken = type(series)(
            series.epochs[:50] + series.epochs[60:], series.epoch_length, series.subject
        )
        filled, inserted = fill_gaps(broken)
        assert inserted == 10
        assert validate_series(filled) is filled
        assert filled.epochs[55].counts == (0, 0, 0)
        assert filled.epochs[55].inclinometer is Inclinometer.OFF
        assert not find_gaps(filled)


class TestAggregate:
    def test_factor_one_is_identity(self):
        series = make_series([1, 2, 3])
        out, dropped = aggregate_epochs(series, 1)
        assert out is series and dropped == 0

    def test_sum_of_sixty(self):
        series = make_series([1] * 60)
        out, dropped = aggregate_epochs(series, 60)
        assert len(out) == 1 and dropped == 0
        assert out[0].axis1 == 60
        assert out.epoch_length == timedelta(hours=1)
        assert out[0].timestamp == series[0].timestamp

    def test_remainder_dropped_with_count(self):
        series = make_series([1] * 10)
        out, dropped = aggregate_epochs(series, 3)
        assert len(out) == 3 and dropped == 1

    def test_zero_factor(self):
        with pytest.raises(ZeroFactor):
            aggregate_epochs(make_series([1]), 0)

    def test_inclinometer_majority_and_tie(self):
        series = make_series(
            [
                {"inclinometer": Inclinometer.LYING},
                {"inclinometer": Inclinometer.LYING},
                {"inclinometer": Inclinometer.SITTING},
                {"inclinometer": Inclinometer.SITTING},
            ]
        )
        out, _ = aggregate_epochs(series, 4)
        # 2-2 tie breaks toward the lower enum value
        assert out[0].inclinometer is Inclinometer.SITTING

    @given(
        counts=st.lists(st.integers(min_value=0, max_value=1000), min_size=1, max_size=200),
        factor=st.integers(min_value=1, max_value=20),
    )
    @settings(max_examples=60, deadline=None)
    def test_count_preservation_and_validity(self, counts, factor):
        series = make_series(counts)
        out, dropped = aggregate_epochs(series, factor)
        kept = len(counts) - dropped
        assert sum(e.axis1 for e in out.epochs) == sum(counts[:kept])
        if len(out):
            assert validate_series(out) is out
