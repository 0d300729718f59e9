from fractions import Fraction as F

import pytest

from igamma_engine.pipeline import CHECK_NAMES, VerificationPipeline, published_tables
from igamma_engine.pipeline.reference_tables import A_TABLE, E_LIST, S3_ROWS

EXACT_CHECKS = ["s3", "routes", "table2", "e-coeffs", "stirling-gamma"]


def test_exact_checks_pass():
    report = VerificationPipeline(only=EXACT_CHECKS).run()
    assert report.success, report.first_failure
    assert [r.name for r in report.results] == EXACT_CHECKS


def test_d4_cancellation_check():
    report = VerificationPipeline(only=["d4-cancellation"]).run()
    assert report.success, report.first_failure


def test_corrupted_stirling_entry_is_reported():
    rows = dict(S3_ROWS)
    rows[20] = rows[20][:-1] + (rows[20][-1] + 1,)
    tables = published_tables().with_changes(s3_rows=rows)
    report = VerificationPipeline(only=["s3"], tables=tables).run()
    assert not report.success
    assert report.first_failure.error_message == "S3(20,6): expected 89625135601, got 89625135600"


def test_corrupted_e_coefficient_is_reported():
    e_list = list(E_LIST)
    e_list[5] = F(2745493, 8151736321)
    tables = published_tables().with_changes(e_list=tuple(e_list))
    report = VerificationPipeline(only=["e-coeffs", "s3"], tables=tables).run()
    assert not report.success
    assert report.first_failure.name == "e-coeffs"
    assert "E_5" in report.first_failure.error_message
    # later checks still run
    assert report.results[1].success


def test_corrupted_coefficient_table_is_reported():
    a_table = {k: dict(v) for k, v in A_TABLE.items()}
    a_table[3][7] = F(1, 47)
    report = VerificationPipeline(only=["table2"], tables=published_tables().with_changes(a_table=a_table)).run()
    assert not report.success
    assert "A_3" in report.first_failure.error_message
    assert "x^7" in report.first_failure.error_message


def test_unknown_check():
    with pytest.raises(ValueError, match="Unknown check"):
        VerificationPipeline(only=["nope"])


def test_default_selection_is_everything():
    assert VerificationPipeline().only == list(CHECK_NAMES)


@pytest.mark.slow
def test_identity_check():
    report = VerificationPipeline(only=["identity"], seed=7).run()
    assert report.success, report.first_failure


@pytest.mark.slow
@pytest.mark.parametrize("name", ["diagonal", "dingle-sign", "remainder-order"])
def test_numerical_checks(name):
    report = VerificationPipeline(only=[name]).run()
    assert report.success, report.first_failure


@pytest.mark.slow
def test_oracle_check():
    pipeline = VerificationPipeline(only=["oracle"])
    pipeline.oracle_samples = 10
    report = pipeline.run()
    assert report.success, report.first_failure


def test_unexpected_exception_becomes_a_failed_check(monkeypatch):
    def broken(self):
        raise KeyError("k=6")

    monkeypatch.setattr(VerificationPipeline, "check_routes", broken)
    report = VerificationPipeline(only=["routes", "s3"]).run()
    assert not report.success
    assert report.first_failure.name == "routes"
    assert report.first_failure.error_message == "KeyError: 'k=6'"
    assert report.results[1].success
