"""Acceptance suite: one test per release criterion, each printing a PASS/FAIL
line (run with -s to see them on success). The expensive sweeps come from the
session fixtures in conftest.py so the whole suite stays around a minute."""

import math
import os
import random
import time

import numpy as np
import pytest

from gausscircle import (
    count_ball,
    count_ball_bruteforce,
    count_circle,
    count_circle_bruteforce,
    find_crossover,
    heuristic_estimate,
    is_prime,
    log_integral,
    sweep_counts,
    tabulate,
    verify_gauss_bound,
)
from gausscircle.analysis import DEFAULT_ESTIMATE_BAND
from gausscircle.cli import format_real, main
from li_oracle import oracle_li

TABLE1_COUNTS = (5, 13, 29, 49, 81, 113, 149, 197, 253, 317)
TABLE1_PRIME_RADII = {1, 2, 3, 6, 7, 8, 10}

TABLE2 = {
    100: (25, 30, 22),
    200: (46, 45, 38),
    300: (62, 60, 53),
    400: (78, 75, 67),
    500: (95, 92, 80),
    600: (109, 106, 94),
    700: (125, 119, 107),
    800: (139, 133, 120),
    900: (154, 141, 132),
    1000: (168, 157, 145),
}

TABLE3_DESK = {
    10_000: (1229, 1188, 1086),
    20_000: (2262, 2167, 2019),
    30_000: (3245, 3138, 2910),
    40_000: (4203, 4055, 3775),
    50_000: (5133, 4922, 4621),
    100_000: (9592, 9126, 8686),
}

TABLE4 = {
    100: ("0.83333", "1.15129", "1.38155"),
    1000: ("1.07006", "1.16050", "1.08451"),
    10_000: ("1.03451", "1.13195", "1.09418"),
    100_000: ("1.05106", "1.10431", "1.05066"),
}

KAPPA_100K = 9126


def report(number: int, title: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"ACCEPTANCE {number:02d} {status} - {title}")
    assert not failures, f"criterion {number} ({title}): " + "; ".join(failures)


def test_criterion_01_first_ten_counts_and_verdicts(warm_kernels):
    failures = []
    records = list(sweep_counts(10))
    if tuple(rec.count for rec in records) != TABLE1_COUNTS:
        failures.append(f"counts {[rec.count for rec in records]}")
    if {rec.r for rec in records if rec.prime} != TABLE1_PRIME_RADII:
        failures.append("primality verdicts do not match the known prime radii")
    timings = []
    for _ in range(5):
        t0 = time.perf_counter()
        list(sweep_counts(10))
        timings.append(time.perf_counter() - t0)
    best = min(timings)
    if best >= 1e-3:
        failures.append(f"sweep of r <= 10 took {best * 1e3:.3f} ms (budget 1 ms)")
    report(1, "C(1..10) values, verdicts, < 1 ms", failures)


def test_criterion_02_hundred_step_table(warm_kernels):
    failures = []
    start = time.perf_counter()
    rows = tabulate(range(100, 1001, 100))
    elapsed = time.perf_counter() - start
    for row in rows:
        if (row.pi_n, row.kappa_n, row.pnt_rounded) != TABLE2[row.n]:
            failures.append(
                f"n={row.n}: got {(row.pi_n, row.kappa_n, row.pnt_rounded)},"
                f" want {TABLE2[row.n]}"
            )
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f} s (budget 1 s)")
    report(2, "pi/kappa/n-log-n table for n = 100..1000, < 1 s", failures)


def test_criterion_03_desk_scale_table(desk_tabulation):
    rows, elapsed = desk_tabulation
    failures = []
    by_n = {row.n: row for row in rows}
    for n, want in TABLE3_DESK.items():
        got = (by_n[n].pi_n, by_n[n].kappa_n, by_n[n].pnt_rounded)
        if got != want:
            failures.append(f"n={n}: got {got}, want {want}")
    if elapsed > 60.0:
        failures.append(f"sequential tabulation took {elapsed:.1f} s (budget 60 s)")
    report(3, "desk-scale table rows up to n = 100000, <= 60 s", failures)


def test_criterion_04_ratio_table(desk_tabulation):
    rows, _ = desk_tabulation
    failures = []
    by_n = {row.n: row for row in rows}
    for n, want in TABLE4.items():
        row = by_n[n]
        got = (
            format_real(row.ratio_pi_kappa),
            format_real(row.ratio_pi_pnt),
            format_real(row.ratio_kappa_pnt),
        )
        if got != want:
            failures.append(f"n={n}: got {got}, want {want}")
    report(4, "five-decimal ratio triples", failures)


def test_criterion_05_crossover(warm_kernels):
    failures = []
    got = find_crossover(1000)
    if got != 167:
        failures.append(f"find_crossover(1000) = {got}, want 167")
    report(5, "strict ordering pi > kappa > n/log n first holds at n = 167", failures)


def test_criterion_06_error_bound(records_100k):
    failures = []
    bound_report = verify_gauss_bound(10_000)
    if bound_report.violations != 0:
        failures.append(f"{bound_report.violations} violations")
    if not bound_report.max_ratio < 1:
        failures.append(f"max_ratio {bound_report.max_ratio} >= 1")
    counts = np.fromiter(
        (rec.count for rec in records_100k[:10_000]), dtype=np.float64, count=10_000
    )
    r = np.arange(1, 10_001, dtype=np.float64)
    lo = np.nextafter(np.pi * (r - math.sqrt(2.0)) ** 2, -np.inf)
    hi = np.nextafter(np.pi * (r + math.sqrt(2.0)) ** 2, np.inf)
    if not (np.all(counts > lo) and np.all(counts < hi)):
        failures.append("two-sided sandwich fails somewhere below 10^4")
    report(6, "error bound holds for all r <= 10^4, max ratio < 1", failures)


def test_criterion_07_counts_one_mod_four(records_100k):
    failures = []
    counts = np.fromiter((rec.count for rec in records_100k[:10_000]), dtype=np.int64)
    if not np.all(counts % 4 == 1):
        failures.append("some count below 10^4 is not 1 mod 4")
    rng = random.Random(0x167)
    for _ in range(100):
        r = rng.randrange(1, 1_000_001)
        if count_circle(r).count % 4 != 1:
            failures.append(f"C({r}) not 1 mod 4")
    report(7, "C(r) = 1 mod 4, exhaustive to 10^4 plus 100 random r <= 10^6", failures)


def test_criterion_08_oracle_equivalences(records_100k):
    failures = []
    for r in range(501):
        if count_circle(r).count != count_circle_bruteforce(r):
            failures.append(f"count_circle({r}) != brute force")
            break
    for rec in records_100k[:10_000]:
        if rec.count != count_circle(rec.r).count:
            failures.append(f"sweep disagrees with count_circle at r={rec.r}")
            break
    for d in (1, 2, 3, 4):
        for r in range(13):
            if count_ball(d, r) != count_ball_bruteforce(d, r):
                failures.append(f"count_ball({d}, {r}) != brute force")

    def trial_division(n: int) -> bool:
        if n < 2:
            return False
        if n % 2 == 0:
            return n == 2
        if n % 3 == 0:
            return n == 3
        f = 5
        while f * f <= n:
            if n % f == 0 or n % (f + 2) == 0:
                return False
            f += 6
        return True

    for n in range(1_000_001):
        if is_prime(n) != trial_division(n):
            failures.append(f"is_prime({n}) disagrees with trial division")
            break
    report(8, "brute-force, per-radius, ball and trial-division oracles", failures)


def test_criterion_09_density_estimate(records_100k):
    failures = []
    row = heuristic_estimate(100_000, records_100k)
    if row.kappa_n != KAPPA_100K:
        failures.append(f"kappa(10^5) = {row.kappa_n}, want {KAPPA_100K}")
    rel = abs(row.estimate_exact_counts - KAPPA_100K) / KAPPA_100K
    if rel > DEFAULT_ESTIMATE_BAND:
        failures.append(
            f"estimate {row.estimate_exact_counts:.1f} misses kappa by {rel:.1%}"
        )
    rows = [heuristic_estimate(n, records_100k) for n in (1, 10, 100, 1000, 10_000, 100_000)]
    exact = [q.estimate_exact_counts for q in rows]
    asym = [q.estimate_asymptotic for q in rows]
    if not all(a < b for a, b in zip(exact, exact[1:])):
        failures.append("exact-count estimate not increasing")
    if not all(a < b for a, b in zip(asym, asym[1:])):
        failures.append("asymptotic estimate not increasing")
    report(9, "density estimate within 15% of kappa(10^5), both variants increasing", failures)


def test_criterion_10_logarithmic_integral():
    failures = []
    for x in (2.0, 10.0, 1e4):
        drift = abs(log_integral(x, abs_tol=1e-10) - log_integral(x, abs_tol=1e-12))
        if drift > 1e-8:
            failures.append(f"refinement drift {drift:.2e} at x={x}")
    for x in (0.5, 2.0, 10.0, 1e4, 1e6, 1e9):
        gap = abs(log_integral(x) - oracle_li(x))
        if gap > 1e-6:
            failures.append(f"oracle gap {gap:.2e} at x={x}")
    report(10, "li self-consistency 1e-8 and oracle agreement 1e-6", failures)


def test_criterion_11_cli_determinism_across_workers(tmp_path, warm_kernels):
    failures = []
    paths = []
    for workers in (1, 4):
        path = tmp_path / f"workers{workers}.csv"
        rc = main(
            ["tabulate", "--max", "10000", "--step", "10000",
             "--workers", str(workers), "--out", str(path)]
        )
        if rc != 0:
            failures.append(f"exit code {rc} with workers={workers}")
        paths.append(path)
    if not failures and paths[0].read_bytes() != paths[1].read_bytes():
        failures.append("outputs differ between workers=1 and workers=4")
    report(11, "byte-identical tabulation with 1 and 4 workers", failures)


@pytest.mark.slow
def test_full_two_million_row():
    # Documented long check (tens of minutes): the final tabulation row.
    workers = os.cpu_count() or 1
    (row,) = tabulate([2_000_000], workers=workers)
    assert (row.pi_n, row.kappa_n, row.pnt_rounded) == (148933, 143082, 137849)
