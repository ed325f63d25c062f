"""Acceptance checklist.

One test per criterion; each prints a single pass/fail line (run with
``pytest tests/test_acceptance.py -v -s``).  Criterion 7 encodes an
external reference value for the depth-1 area (3/4) that direct
integration contradicts (5/6); it is kept as stated and left failing as
documentation of the discrepancy.
"""

import json
import time
from fractions import Fraction

from apollodepth import verify
from apollodepth.charts import (
    ChartSpec,
    area_estimate,
    parabolic_region_area,
    render_depth_chart,
)
from apollodepth.cli import EXIT_OK, main
from apollodepth.descartes import depth, depth_exact, golden_seed

F = Fraction


def _line(criterion: str, ok: bool, detail: str) -> str:
    text = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} — {detail}"
    print(text)
    return text


def _suite_detail(report) -> str:
    return f"{report['passed']}/{report['passed'] + report['failed']} checks"


def test_criterion_01_worked_depth_example(capsys):
    expected_trace = (
        (15, 35, 102), (15, 35, 2), (15, 2, 2), (3, 2, 2), (-1, 2, 2)
    )
    depth_exact((15, 35, 102), trace=True)  # warm the path before timing
    started = time.perf_counter()
    result = depth_exact((15, 35, 102), trace=True)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    code = main(["depth", "15", "35", "102", "--exact", "--trace"])
    cli_payload = json.loads(capsys.readouterr().out)
    ok = (
        result.depth == 4
        and result.trace == expected_trace
        and elapsed_ms < 10.0
        and code == EXIT_OK
        and cli_payload["depth"] == 4
        and cli_payload["trace"][1:]
        == [["15", "35", "2"], ["15", "2", "2"], ["3", "2", "2"], ["-1", "2", "2"]]
    )
    line = _line("1", ok, f"depth {result.depth}, trace exact, {elapsed_ms:.2f} ms")
    assert ok, line


def test_criterion_02_discontinuity_table():
    table = [
        (F(0), 2),
        (F(1, 10), 1),
        (F(1, 100), 11),
        (F(1, 1000), 86),
        (F(1, 10000), 836),
    ]
    started = time.perf_counter()
    results = {
        eps: depth_exact((1, F(1, 3), F(1, 12) + eps), cap=2000).depth
        for eps, _ in table
    }
    elapsed = time.perf_counter() - started
    flagged = []
    ok = elapsed < 5.0
    for eps, want in table:
        got = results[eps]
        if got != want:
            flagged.append(f"eps={eps}: {got} vs {want}")
            if got is None or abs(got - want) > 1:
                ok = False
    detail = (
        f"depths {[results[eps] for eps, _ in table]} in {elapsed:.2f}s"
        + (f"; flagged {flagged}" if flagged else "")
    )
    line = _line("2", ok, detail)
    assert ok, line


def test_criterion_03_golden_divergence():
    result = depth(golden_seed(), cap=100, trace=True)
    no_nonpositive = all(min(t) > 0 for t in result.trace)
    ok = result.capped and result.cap == 100 and no_nonpositive
    line = _line(
        "3", ok,
        f"cap {result.cap} reached (resolution guard: {result.underflow}), "
        f"all {len(result.trace)} triples positive",
    )
    assert ok, line


def test_criterion_04_corona_tangency_suite():
    started = time.perf_counter()
    report = verify.verify_corona(max_row=6, samples=1000, rng_seed=20417)
    elapsed = time.perf_counter() - started
    ok = report["failed"] == 0 and elapsed < 30.0
    line = _line("4", ok, f"{_suite_detail(report)} in {elapsed:.1f}s")
    assert ok, (line, [c for c in report["checks"] if not c["pass"]][:3])


def test_criterion_05_registry_and_arrangements():
    report = verify.verify_registry()
    ok = report["failed"] == 0
    line = _line("5", ok, _suite_detail(report))
    assert ok, (line, [c for c in report["checks"] if not c["pass"]][:3])


def test_criterion_06_sequence_identities():
    report = verify.verify_sequences(n_max=6)
    ok = report["failed"] == 0
    line = _line("6", ok, _suite_detail(report))
    assert ok, (line, [c for c in report["checks"] if not c["pass"]][:3])


def test_criterion_07_parabolic_area():
    # Stated expectation: exact area 3/4 and Monte-Carlo inside
    # 0.750 ± 0.005.  The quadrature oracle behind parabolic_region_area
    # gives 5/6 ≈ 0.8333 and the seeded estimate lands there; the checks
    # below are kept at the stated values and fail.
    exact = parabolic_region_area()
    estimate = area_estimate(1, 1_000_000, rng_seed=42)
    ok = exact == F(3, 4) and abs(estimate - 0.750) <= 0.005
    line = _line(
        "7", ok,
        f"exact area {exact} (stated 3/4), Monte-Carlo {estimate:.4f} "
        f"(stated 0.750 ± 0.005)",
    )
    assert ok, line


def test_criterion_08_chart_performance_and_determinism():
    spec = ChartSpec(width=1000, height=1000, bitexact=True)
    started = time.perf_counter()
    single = render_depth_chart(spec, workers=1)
    t_single = time.perf_counter() - started
    started = time.perf_counter()
    pooled = render_depth_chart(spec, workers=8)
    t_pooled = time.perf_counter() - started
    identical = bytes(single.data) == bytes(pooled.data)
    spot_a = single.get_px(600, 600)
    spot_b = single.get_px(200, 200)
    ok = (
        t_single < 10.0
        and t_pooled < 3.0
        and identical
        and spot_a == (30, 30, 30)
        and spot_b == (60, 60, 60)
    )
    line = _line(
        "8", ok,
        f"single {t_single:.2f}s, 8 workers {t_pooled:.2f}s, "
        f"byte-identical {identical}, spots {spot_a[0]}/{spot_b[0]}",
    )
    assert ok, line


def test_criterion_09_probe_suite():
    report = verify.verify_probes(max_row=5, eps=1e-7)
    ok = report["failed"] == 0
    line = _line("9", ok, _suite_detail(report))
    assert ok, (line, [c for c in report["checks"] if not c["pass"]][:3])


def test_criterion_10_barycentric_identities():
    report = verify.verify_barycentric(n_max=6)
    ok = report["failed"] == 0
    line = _line("10", ok, _suite_detail(report))
    assert ok, (line, [c for c in report["checks"] if not c["pass"]][:3])
