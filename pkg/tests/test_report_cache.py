import csv
import io
import json
import math

import pytest

from casimir import __version__, cache
from casimir.analysis import ComparisonReport, SweepSpec, sweep_forces
from casimir.report import (
    SCHEMA_VERSION,
    csv_bytes,
    csv_text,
    json_bytes,
    json_payload,
    parse_report,
    validate_payload,
)


def _report():
    return ComparisonReport(
        columns=("a_m", "F_N", "trunc_N", "error"),
        rows=[
            {"a_m": 1e-6, "F_N": -2.636519420670607e-13, "trunc_N": 1.5e-24, "error": ""},
            {"a_m": 2e-6, "F_N": None, "trunc_N": None, "error": "quadrature: gave, up"},
        ],
        metadata={"created_utc": "2026-08-19T00:00:00+00:00", "parameters": {"T_K": 300.0}},
    )


def test_csv_layout_and_round_trip():
    text = csv_text(_report())
    lines = text.splitlines()
    assert lines[0] == "a_m,F_N,trunc_N,error"
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    first = next(reader)
    assert header == ["a_m", "F_N", "trunc_N", "error"]
    # shortest-repr floats survive the text round trip bit-for-bit
    assert float(first[0]) == 1e-6
    assert float(first[1]) == -2.636519420670607e-13
    second = next(reader)
    assert second[1] == "" and second[2] == ""  # labeled gaps are empty cells
    assert second[3] == "quadrature: gave, up"  # comma survives quoting
    assert csv_bytes(_report()) == text.encode("utf-8")


def test_csv_rejects_invalid_report():
    bad = ComparisonReport(
        columns=("a_m", "F_N", "error"),
        rows=[{"a_m": 1e-6, "F_N": 1e-13, "error": ""}],
        metadata={},
    )
    with pytest.raises(ValueError):
        csv_text(bad)


def test_json_payload_envelope():
    payload = json_payload(_report(), config={"command": "sweep"})
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["config"] == {"command": "sweep"}
    assert payload["columns"] == ["a_m", "F_N", "trunc_N", "error"]
    assert payload["rows"][0]["F_N"] == -2.636519420670607e-13
    assert payload["provenance"]["build"] == __version__
    # timestamp comes from the report, not the wall clock
    assert payload["provenance"]["timestamp"] == "2026-08-19T00:00:00+00:00"
    validate_payload(payload)


def test_json_bytes_deterministic_and_parseable():
    a = json_bytes(_report(), config={"x": 1})
    b = json_bytes(_report(), config={"x": 1})
    assert a == b
    assert a.endswith(b"\n")
    payload = json.loads(a)
    report = parse_report(payload)
    assert report.columns == _report().columns
    assert report.rows == _report().rows


def test_json_rejects_non_finite_cells():
    rep = _report()
    rep.rows[0]["trunc_N"] = math.inf  # not a force column, so validate() passes
    with pytest.raises(ValueError):
        json_bytes(rep)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda p: p.pop("schema_version"), "missing required key"),
        (lambda p: p.update(schema_version=99), "unsupported schema_version"),
        (lambda p: p.update(config=[1]), "config must be an object"),
        (lambda p: p.update(columns="a_m"), "list of strings"),
        (lambda p: p.update(columns=["a_m", 3]), "list of strings"),
        (lambda p: p.update(rows={"a_m": 1}), "rows must be a list"),
        (lambda p: p["rows"][0].pop("F_N"), "does not match the declared columns"),
        (lambda p: p.update(provenance={}), "build and timestamp"),
    ],
)
def test_validate_payload_errors(mutate, fragment):
    payload = json_payload(_report(), config={})
    mutate(payload)
    with pytest.raises(ValueError, match=fragment):
        validate_payload(payload)


def test_parse_report_revalidates():
    payload = json_payload(_report(), config={})
    payload["rows"][0]["F_N"] = 1.0  # repulsive: structurally valid, physically not
    with pytest.raises(ValueError, match="attractive"):
        parse_report(payload)


def test_sweep_report_serializes_end_to_end(monkeypatch):
    sweep = SweepSpec(separations=(0.5e-6, 1e-6), R=100e-6)
    report = sweep_forces(sweep)
    data = json_bytes(report, config={"command": "sweep"})
    parsed = parse_report(json.loads(data))
    assert parsed.rows[0]["F_N"] == report.rows[0]["F_N"]  # exact float transport
    assert json_bytes(report, config={"command": "sweep"}) == data  # reproducible


def test_config_key_canonicalization():
    k1 = cache.config_key({"a": 1, "b": [1, 2], "c": {"x": 0.5}})
    k2 = cache.config_key({"c": {"x": 0.5}, "b": [1, 2], "a": 1})
    assert k1 == k2
    assert len(k1) == 64 and all(ch in "0123456789abcdef" for ch in k1)
    assert cache.config_key({"a": 1}) != cache.config_key({"a": 2})
    assert cache.config_key({"a": 1.0}) != cache.config_key({"a": "1.0"})
    with pytest.raises(ValueError):
        cache.config_key({"a": math.nan})


def test_cache_store_load_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.CACHE_ENV, str(tmp_path / "cachedir"))
    assert cache.cache_dir() == tmp_path / "cachedir"
    key = cache.config_key({"run": 1})
    assert cache.load(key, "json") is None  # miss
    path = cache.store(key, "json", b'{"rows": []}\n')
    assert path.parent == tmp_path / "cachedir"
    assert path.name == f"{key}.json"
    assert cache.load(key, "json") == b'{"rows": []}\n'
    # same key, different extension is a distinct entry
    assert cache.load(key, "csv") is None
    cache.store(key, "json", b"replaced")
    assert cache.load(key, "json") == b"replaced"
    # no stray temp files survive
    assert sorted(p.name for p in path.parent.iterdir()) == [f"{key}.json"]


def test_cache_default_location(monkeypatch, tmp_path):
    monkeypatch.delenv(cache.CACHE_ENV, raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    assert cache.cache_dir() == tmp_path / ".cache" / "casimir"
