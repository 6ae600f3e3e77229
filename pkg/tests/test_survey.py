import io

import pytest

from biquad.biquadratic import classify_field
from biquad.errors import DomainError
from biquad.survey import CSV_HEADER, run_survey, survey_fields, survey_row, write_csv


def test_survey_fields_are_distinct():
    fields = survey_fields(5)
    keys = [frozenset(K.radicands) for K in fields]
    assert len(keys) == len(set(keys))
    assert all(min(K.radicands) < 0 for K in fields)
    assert any(K.radicands == (-3, 5, -15) for K in fields)


@pytest.mark.parametrize("rmax", [1, 61, -4])
def test_survey_fields_rejects_bad_bounds(rmax):
    with pytest.raises(DomainError):
        survey_fields(rmax)


def test_survey_row():
    row = survey_row(classify_field(-3, 5), samples=4, seed=0)
    assert (row.r1, row.r2, row.class_tag) == (-3, 5, "B(i)")
    assert row.s_oracle == 2
    assert row.s_classifier == 2
    assert not row.discrepancy_flag
    assert 0 <= row.max_decomp4_len <= 5
    assert row.sample_size == 4


def test_survey_row_flags_discrepancies():
    row = survey_row(classify_field(-6, 5), samples=1, seed=0)
    assert row.s_classifier == 2
    assert row.s_oracle == 3
    assert row.discrepancy_flag


def test_run_survey_is_reproducible():
    first = run_survey(4, samples=2, seed=3, num_workers=3)
    second = run_survey(4, samples=2, seed=3, num_workers=1)
    assert first.ok and second.ok
    assert first.rows == second.rows
    assert len(first.rows) == len(survey_fields(4))


def test_run_survey_rejects_bad_arguments():
    with pytest.raises(DomainError):
        run_survey(4, samples=-1)
    with pytest.raises(DomainError):
        run_survey(4, samples=1, num_workers=0)


def test_write_csv():
    result = run_survey(3, samples=1)
    stream = io.StringIO()
    write_csv(result.rows, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert CSV_HEADER == [
        "r1",
        "r2",
        "class_tag",
        "s_classifier",
        "s_oracle",
        "max_decomp4_len",
        "sample_size",
        "discrepancy_flag",
    ]
    assert len(lines) == 1 + len(result.rows)
    assert all(line.endswith(("true", "false")) for line in lines[1:])
