"""Acceptance gate: every criterion at its stated tolerance, one line each.

Heavy suites run once per module and are sliced per criterion so the output
stays one pass/fail line per criterion.  Exact criteria demand residual zero
(not small); the single float criterion carries its stated bound.
"""

import time

import pytest

from gtrotor.gt_basis import basis_for, weights_up_to_height, weyl_dimension
from gtrotor.verify import (
    suite_bispectral,
    suite_hilbert,
    suite_polys,
    suite_racah_algebra,
    suite_rep,
    suite_rotations,
    thread_count,
)

THREADS = thread_count()


def _report(name, passed, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if passed else 'FAIL'} {detail}".rstrip())
    assert passed, f"{name} failed: {detail}"


@pytest.fixture(scope="module")
def rep_report():
    return suite_rep(6, threads=THREADS)


@pytest.fixture(scope="module")
def rotations_report():
    return suite_rotations(5, threads=THREADS)


def test_criterion_01_structure_suite(rep_report):
    t0 = time.perf_counter()
    checks = [c for c in rep_report.checks if c.name != "dimension_vs_weyl"]
    weights = {c.weight for c in checks}
    bad = [c for c in checks if not c.passed or c.residual != 0.0]
    _report(
        "1 structure(height<=6)",
        len(weights) == 28 and not bad,
        f"{len(checks)} exact checks on {len(weights)} weights "
        f"(t={time.perf_counter() - t0:.1f}s)",
    )


def test_criterion_02_polynomial_suite():
    t0 = time.perf_counter()
    report = suite_polys(5, threads=THREADS)
    elapsed = time.perf_counter() - t0
    bad = [c for c in report.checks if not c.passed or c.residual != 0.0]
    _report(
        "2 polynomials",
        not bad and elapsed < 10,
        f"{len(report.checks)} exact checks in {elapsed:.1f}s (budget 10s)",
    )


def test_criterion_03_cross_path(rotations_report):
    checks = [c for c in rotations_report.checks if "formula_vs_product" in c.name]
    elapsed = sum(c.elapsed for c in checks)
    ok = all(c.passed and c.residual == 0.0 for c in checks)
    _report(
        "3 sigma formula == product (27 triples, height<=5)",
        ok and len(checks) == 21 and elapsed < 300,
        f"grid time {elapsed:.1f}s (budget 300s)",
    )


def test_criterion_04_oracle_agreement(rotations_report):
    checks = [c for c in rotations_report.checks if "vs_oracle" in c.name]
    elapsed = sum(c.elapsed for c in checks)
    worst = max(c.residual for c in checks)
    _report(
        "4 product vs float oracle (20 random triples/weight)",
        all(c.passed for c in checks) and worst <= 1e-9 and elapsed < 60,
        f"worst rel {worst:.2e} (tol 1e-9), time {elapsed:.1f}s (budget 60s)",
    )


def test_criterion_05_orthogonality(rotations_report):
    checks = [c for c in rotations_report.checks if c.name.startswith("orthogonality")]
    ok = all(c.passed and c.residual == 0.0 for c in checks)
    _report("5 orthogonality rho/tau/sigma exact", ok, f"{len(checks)} checks")


def test_criterion_06_symmetric_and_hybrid(rotations_report):
    sym = [c for c in rotations_report.checks if "symmetric_vs_product" in c.name]
    hyb = [c for c in rotations_report.checks if "hybrid_vs_tau_rho" in c.name]
    ok = (
        sym
        and hyb
        and all(c.passed and c.residual == 0.0 for c in sym + hyb)
    )
    _report(
        "6 symmetric degeneration + hybrid",
        ok,
        f"{len(sym)} symmetric weights, {len(hyb)} hybrid checks",
    )


def test_criterion_07_bispectral():
    report = suite_bispectral(4, threads=THREADS)
    bad = [c for c in report.checks if not c.passed or c.residual != 0.0]
    _report("7 bispectral residuals (height<=4)", not bad, f"{len(report.checks)} checks")


def test_criterion_08_racah_algebra():
    t0 = time.perf_counter()
    report = suite_racah_algebra(6, threads=THREADS)
    elapsed = time.perf_counter() - t0
    bad = [c for c in report.checks if not c.passed or c.residual != 0.0]
    _report(
        "8 racah algebra (height<=6)",
        not bad and elapsed < 60,
        f"{len(report.checks)} exact checks in {elapsed:.1f}s (budget 60s)",
    )


def test_criterion_09_hilbert_series():
    report = suite_hilbert(20)
    _report(
        "9 hilbert series (closed == combinatorial <= 20, basis count <= 8)",
        report.passed,
        f"{len(report.checks)} checks",
    )


def test_criterion_10_dimension_oracle():
    ok = all(
        basis_for(w).dim == weyl_dimension(w) for w in weights_up_to_height(8)
    )
    count = sum(1 for _ in weights_up_to_height(8))
    _report("10 dimension oracle (height<=8)", ok, f"{count} weights")
