from __future__ import annotations

import pytest

from fmchow.config import CAP_ENV_VAR, DEFAULT_LIMITS, EngineLimits, limits_from_config, load_config
from fmchow.errors import BadParams
from fmchow.models import Report, Verdict


def test_missing_config_is_empty(tmp_path):
    assert load_config(str(tmp_path / "nope.yaml")) == {}
    assert load_config(None) == {}


def test_load_config(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("limits:\n  max_dn: 20\n  series_order: 5\n")
    cfg = load_config(str(path))
    limits = limits_from_config(cfg)
    assert limits.max_dn == 20
    assert limits.series_order == 5
    assert limits.max_families == DEFAULT_LIMITS.max_families


def test_empty_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("")
    assert load_config(str(path)) == {}
    assert limits_from_config({}) == EngineLimits()


@pytest.mark.parametrize(
    "text",
    [
        "- a\n- b\n",
        "just a string\n",
        "output: json\n",
        "limits: 5\n",
        "limits:\n  - max_dn\n",
        "limits: {max_dn: [\n",
    ],
)
def test_malformed_config_is_rejected(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    with pytest.raises(BadParams):
        load_config(str(path))


@pytest.mark.parametrize("value", ["twelve", 2.5, True])
def test_non_integer_limit_is_rejected(value):
    with pytest.raises(BadParams):
        limits_from_config({"limits": {"max_dn": value}})


def test_bad_env_cap(monkeypatch):
    monkeypatch.setenv(CAP_ENV_VAR, "lots")
    with pytest.raises(BadParams):
        limits_from_config({})


def test_unknown_limit_is_ignored(caplog):
    limits = limits_from_config({"limits": {"max_dn": 3, "warp": 9}})
    assert limits.max_dn == 3
    assert "warp" in caplog.text


def test_env_overrides(monkeypatch):
    monkeypatch.setenv(CAP_ENV_VAR, "1234")
    limits = limits_from_config({"limits": {"max_families": 5}})
    assert limits.max_families == 1234
    assert limits.max_monomials == 1234


def test_report_serialization():
    report = Report(
        command="betti",
        parameters={"d": 1, "n": 3},
        results={"betti": [1, 1]},
        verdicts=[Verdict("palindromic", True), Verdict("other", False, {"at": 2})],
        version="0.1.0",
    )
    assert not report.all_passed
    data = report.to_dict()
    assert "timing_seconds" not in data
    assert data["verdicts"][1] == {"name": "other", "passed": False, "detail": {"at": 2}}
    report.timing_seconds = 0.12345
    assert report.to_dict()["timing_seconds"] == 0.123
