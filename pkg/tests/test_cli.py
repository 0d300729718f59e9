import csv
import io
import json
import math

import pytest

from igamma_engine.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_json_schema(capsys):
    code, out, _ = run(capsys, "eval", "--a", "100", "--z", "100", "--function", "Q", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert set(payload) == {"value", "branch", "chi", "m_used", "err_estimate", "bits_used"}
    assert payload["branch"] == "diagonal"
    assert 0.5 - float(payload["value"]) == pytest.approx(0.0133, abs=1e-4)


def test_eval_exponential(capsys):
    code, out, _ = run(capsys, "eval", "--a", "1", "--z", "3", "--function", "upper", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["branch"] == "upper_first"
    rel = abs(float(payload["value"]) / math.exp(-3) - 1)
    assert rel <= 10 * payload["err_estimate"] + 1e-15


def test_eval_text(capsys):
    code, out, _ = run(capsys, "eval", "--a", "120", "--z", "100")
    assert code == EXIT_OK
    assert out.startswith("Q(a=120.0, z=100.0) = ")
    assert "branch=lower_first" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--a", "-1", "--z", "2"],
        ["eval", "--a", "100", "--z", "120", "--method", "diagonal"],
        ["eval", "--a", "1", "--z", "2", "--bits", "20"],
    ],
)
def test_eval_rejects_bad_input(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err.startswith("error:")
    assert out == ""


def test_coeffs_s3(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "s3", "--kmax", "20")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert rows["20"][:4] == ["0", "1", "524077", "550478241"]


def test_coeffs_e(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "e", "--kmax", "7")
    assert code == EXIT_OK
    assert json.loads(out)["values"][5] == {"n": "2745493", "d": "8151736320"}


def test_coeffs_paris_k0(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "paris", "--kmax", "0")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["A"] == [[{"n": "1", "d": "1"}]]
    assert payload["B"] == [[]]


def test_coeffs_dingle_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "dingle", "--kmax", "1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["poly", "k", "power", "n", "d"]
    assert ["B", "1", "0", "2", "3"] in rows
    assert ["A", "1", "3", "-1", "3"] in rows


def test_coeffs_gamma_stirling(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "gamma-stirling", "--kmax", "3")
    assert code == EXIT_OK
    assert json.loads(out)["values"][3] == {"n": "139", "d": "51840"}


def test_coeffs_cap(capsys, engine_env):
    engine_env(kmax_cap=5)
    code, _, err = run(capsys, "coeffs", "--family", "paris", "--kmax", "6")
    assert code == EXIT_USAGE
    assert "cap" in err
    code, _, _ = run(capsys, "coeffs", "--family", "paris", "--kmax", "6", "--force")
    assert code == EXIT_OK


@pytest.mark.parametrize("family", ["s3", "paris", "dingle", "e", "gamma-stirling"])
def test_coeffs_cap_applies_to_every_family(capsys, engine_env, family):
    engine_env(kmax_cap=2)
    code, _, err = run(capsys, "coeffs", "--family", family, "--kmax", "3")
    assert code == EXIT_USAGE
    assert "cap" in err
    code, _, err = run(capsys, "coeffs", "--family", family, "--kmax", "-1")
    assert code == EXIT_USAGE
    assert "nonnegative" in err


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "s3", "routes")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert all(line.startswith("PASS") for line in lines)


def test_verify_failure_exit_code(capsys, monkeypatch):
    from igamma_engine.pipeline import verification

    def broken(self):
        raise verification.VerificationError("S3(20,6): expected 1, got 2")

    monkeypatch.setattr(verification.VerificationPipeline, "check_s3", broken)
    code, out, err = run(capsys, "verify", "--only", "s3")
    assert code == EXIT_VERIFY_FAILED
    assert out.startswith("FAIL")
    assert "S3(20,6)" in err


def test_verify_reports_crashing_check(capsys, monkeypatch):
    from igamma_engine.pipeline import verification

    def broken(self):
        raise AttributeError("module has no attribute 'prec'")

    monkeypatch.setattr(verification.VerificationPipeline, "check_oracle", broken)
    code, out, err = run(capsys, "verify", "--only", "oracle", "s3")
    assert code == EXIT_VERIFY_FAILED
    lines = out.strip().splitlines()
    assert lines[0].startswith("FAIL") and "AttributeError" in lines[0]
    assert lines[1].startswith("PASS")
    assert "first failure in oracle" in err


def test_accuracy_map(capsys, tmp_path):
    target = tmp_path / "map.csv"
    code, out, _ = run(
        capsys, "accuracy-map",
        "--a-min", "50", "--a-max", "60", "--a-count", "2",
        "--z-min", "55", "--z-max", "70", "--z-count", "2",
        "--output", str(target),
    )
    assert code == EXIT_OK
    assert "4 rows" in out
    assert target.exists()


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["coeffs", "--family", "nope", "--kmax", "1"]) == EXIT_USAGE
    capsys.readouterr()


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert "igamma" in capsys.readouterr().out
