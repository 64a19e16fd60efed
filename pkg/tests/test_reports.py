import json

import pytest

from monoval.reports import SUITES, SuiteConfig, SuiteError, ordered_map, run_suite, toric_chain_A


def _square(x):
    return x * x


def test_unknown_suite():
    with pytest.raises(SuiteError):
        run_suite("nope", SuiteConfig())


def test_every_suite_is_registered():
    assert set(SUITES) == {"thmA", "thmAprime", "izumi", "L101", "corC", "corD", "corE", "t106", "teissier"}


def test_ordered_map_keeps_order_with_workers(monkeypatch):
    monkeypatch.setenv("MONOVAL_WORKERS", "3")
    assert ordered_map(_square, range(20)) == [x * x for x in range(20)]


@pytest.mark.parametrize("suite", ["corD", "corE", "L101"])
def test_small_runs_are_deterministic(suite):
    a = run_suite(suite, SuiteConfig(seed=3, samples=6))
    b = run_suite(suite, SuiteConfig(seed=3, samples=6))
    assert a.to_csv() == b.to_csv() and a.to_json() == b.to_json()
    assert a.passed


def test_workers_do_not_change_artifacts(monkeypatch):
    serial = run_suite("izumi", SuiteConfig(seed=5, samples=5, model="chain3")).to_csv()
    monkeypatch.setenv("MONOVAL_WORKERS", "2")
    parallel = run_suite("izumi", SuiteConfig(seed=5, samples=5, model="chain3")).to_csv()
    assert serial == parallel


def test_artifacts_use_rational_strings(tmp_path):
    res = run_suite("corD", SuiteConfig(seed=1, samples=4))
    csv_path, json_path = res.write(tmp_path / "corD.csv")
    header, first = csv_path.read_text().splitlines()[:2]
    assert header.startswith("v,w,distance")
    assert "." not in first  # no floats
    meta = json.loads(json_path.read_text())
    assert meta["passed"] is True and meta["constants"]["A"] == "1"


def test_toric_chain_constant():
    assert toric_chain_A() == 1
