import pytest

from apollodepth import verify


def _assert_clean(report, suite):
    failures = [c for c in report["checks"] if not c["pass"]]
    assert report["suite"] == suite
    assert report["failed"] == 0, failures[:3]
    assert report["passed"] == len(report["checks"])


def test_corona_suite():
    report = verify.verify_corona(max_row=4, samples=200, rng_seed=1)
    _assert_clean(report, "corona")
    # tangency checks + pair checks + center depths + one disjointness row
    assert report["passed"] > 20


def test_registry_suite():
    report = verify.verify_registry()
    _assert_clean(report, "registry")
    names = [c["name"] for c in report["checks"]]
    assert any("4L_{4,1}" in n and "E[3,4]" in n for n in names)
    assert any("side arrangement" in n for n in names)


def test_sequences_suite():
    _assert_clean(verify.verify_sequences(n_max=6), "sequences")


def test_barycentric_suite():
    _assert_clean(verify.verify_barycentric(n_max=6), "barycentric")


def test_probes_suite():
    report = verify.verify_probes(max_row=3)
    _assert_clean(report, "probes")


def test_report_schema():
    report = verify.verify_sequences(n_max=2)
    assert set(report) >= {"suite", "checks", "passed", "failed", "params"}
    for check in report["checks"]:
        assert set(check) >= {"name", "expected", "actual", "pass"}


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run_suite("nope")
