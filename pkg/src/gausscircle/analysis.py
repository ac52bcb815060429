"""Statistics over the circle counts: how often C(r) is prime.

kappa(n) counts the radii r <= n whose lattice count is prime, the analogue of
the prime counting function pi(n) for the sequence C(1), C(2), ... Everything
tabulated here compares those two against the n / log n prediction, verifies
the elementary error bound |C(r) - pi r^2| < 2*sqrt(2)*pi*r + 2*pi, scans for
consecutive radii with prime counts, and evaluates the expected-density
estimate sum 2/log C(k) that motivates treating the two functions as close.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .lattice import CountRecord, sweep_counts
from .primes import build_sieve, pi_of

# Relative band used when judging the density estimate against kappa; the
# approximation claim carries no rate, so this is an artifact-level knob.
DEFAULT_ESTIMATE_BAND = 0.15

# Counts are compared against pi*r^2 in float64, which is exact only while
# the counts stay below 2^53; pi * (5e7)^2 is already past that.
_BOUND_CHECK_MAX = 50_000_000


@dataclass(frozen=True)
class TabulationRow:
    """One checkpoint row: n, pi(n), kappa(n), rounded n/log n, three ratios.

    Ratio denominators use the unrounded n / log n. ratio_pi_kappa is None
    when kappa(n) = 0 (unreachable for n >= 2 in practice, since C(1) = 5).
    """

    n: int
    pi_n: int
    kappa_n: int
    pnt_rounded: int
    ratio_pi_kappa: float | None
    ratio_pi_pnt: float
    ratio_kappa_pnt: float


@dataclass(frozen=True)
class TwinPair:
    """Consecutive radii r, r+1 whose counts are both prime."""

    r: int
    c_r: int
    c_r_next: int


@dataclass(frozen=True)
class BoundReport:
    """Worst-case statistics of the circle-area error bound over 1 <= r <= n_max."""

    n_max: int
    violations: int
    worst_r: int
    max_ratio: float
    max_abs_error: float


@dataclass(frozen=True)
class HeuristicRow:
    """kappa(n) next to the expected prime density of the count sequence."""

    n: int
    kappa_n: int
    estimate_exact_counts: float
    estimate_asymptotic: float


def round_half_away(v: float) -> int:
    """Nearest integer with exact .5 ties rounded away from zero."""
    a = math.floor(abs(v))
    if abs(v) - a >= 0.5:
        a += 1
    return a if v >= 0 else -a


def pnt_rounded(n: int) -> int:
    """Nearest integer to n / log n (natural log), ties away from zero."""
    if n < 2:
        raise ValueError(f"n / log n rounding needs n >= 2, got {n}")
    return round_half_away(n / math.log(n))


def _take_records(counts: Iterable[CountRecord], n: int) -> Iterator[CountRecord]:
    # Yield exactly the records r = 1..n, insisting on contiguity and on
    # primality verdicts being present; extra records beyond n are ignored.
    seen = 0
    for rec in counts:
        if rec.r != seen + 1:
            raise ValueError(f"count stream not contiguous: expected r={seen + 1}, got r={rec.r}")
        if rec.prime is None:
            raise ValueError(f"count stream lacks a primality verdict at r={rec.r}")
        seen += 1
        yield rec
        if seen == n:
            return
    raise ValueError(f"count stream covers r <= {seen}, need r = 1..{n}")


def kappa(n: int, counts: Iterable[CountRecord]) -> int:
    """Number of radii r <= n whose count C(r) is prime.

    counts must cover r = 1..n in order, with primality verdicts filled in.
    """
    if n < 1:
        raise ValueError(f"kappa needs n >= 1, got {n}")
    return sum(rec.prime for rec in _take_records(counts, n))


def _make_row(n: int, pi_n: int, kappa_n: int) -> TabulationRow:
    pnt_real = n / math.log(n)
    return TabulationRow(
        n=n,
        pi_n=pi_n,
        kappa_n=kappa_n,
        pnt_rounded=pnt_rounded(n),
        ratio_pi_kappa=pi_n / kappa_n if kappa_n else None,
        ratio_pi_pnt=pi_n / pnt_real,
        ratio_kappa_pnt=kappa_n / pnt_real,
    )


def tabulate(
    checkpoints: Sequence[int], *, workers: int = 1, progress=None
) -> list[TabulationRow]:
    """One sweep to the last checkpoint, emitting a TabulationRow at each.

    pi comes from a single sieve and kappa accumulates over the same
    incremental sweep, so the cost is one pass regardless of how many
    checkpoints are requested.
    """
    cps = [int(n) for n in checkpoints]
    if not cps:
        raise ValueError("no checkpoints given")
    if cps[0] < 2:
        raise ValueError(f"checkpoints must start at n >= 2, got {cps[0]}")
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    n_max = cps[-1]
    table = build_sieve(n_max)
    rows: list[TabulationRow] = []
    remaining = iter(cps)
    target = next(remaining)
    k = 0
    for rec in sweep_counts(n_max, classify=True, workers=workers, progress=progress):
        k += rec.prime
        if rec.r == target:
            rows.append(_make_row(rec.r, pi_of(rec.r, table), k))
            target = next(remaining, None)
    return rows


def find_crossover(n_max: int, *, workers: int = 1, progress=None) -> int | None:
    """Smallest n <= n_max at which pi(n) > kappa(n) > n / log n, else None.

    The comparison against n / log n uses the unrounded real value. kappa can
    tie pi again at larger n, so this reports where the strict ordering first
    appears, which is the landmark the tabulated data pins down.
    """
    if n_max < 2:
        raise ValueError(f"find_crossover needs n_max >= 2, got {n_max}")
    table = build_sieve(n_max)
    k = 0
    for rec in sweep_counts(n_max, classify=True, workers=workers, progress=progress):
        k += rec.prime
        n = rec.r
        if n >= 2 and pi_of(n, table) > k and k > n / math.log(n):
            return n
    return None


def verify_gauss_bound(n_max: int, *, workers: int = 1, progress=None) -> BoundReport:
    """Check the error bound of the area approximation for every 1 <= r <= n_max.

    Verifies both |C(r) - pi r^2| < 2*sqrt(2)*pi*r + 2*pi and the two-sided
    sandwich pi (r - sqrt2)^2 < C(r) < pi (r + sqrt2)^2. Each float comparison
    is widened by one ulp in the bound's favour, so rounding in the bound
    evaluation can never turn an exact-arithmetic truth into a violation.
    max_ratio / worst_r describe the largest error relative to the first bound.
    """
    if n_max < 1:
        raise ValueError(f"verify_gauss_bound needs n_max >= 1, got {n_max}")
    if n_max > _BOUND_CHECK_MAX:
        raise ValueError(
            f"counts beyond n_max={_BOUND_CHECK_MAX} are no longer exact in float64"
        )
    counts = np.fromiter(
        (rec.count for rec in sweep_counts(n_max, classify=False, workers=workers, progress=progress)),
        dtype=np.float64,
        count=n_max,
    )
    r = np.arange(1, n_max + 1, dtype=np.float64)
    err = np.abs(counts - np.pi * r * r)
    bound = 2.0 * math.sqrt(2.0) * np.pi * r + 2.0 * np.pi
    sandwich_lo = np.nextafter(np.pi * (r - math.sqrt(2.0)) ** 2, -np.inf)
    sandwich_hi = np.nextafter(np.pi * (r + math.sqrt(2.0)) ** 2, np.inf)
    bad = (
        (err >= np.nextafter(bound, np.inf))
        | (counts <= sandwich_lo)
        | (counts >= sandwich_hi)
    )
    ratio = err / bound
    worst = int(np.argmax(ratio))
    return BoundReport(
        n_max=n_max,
        violations=int(np.count_nonzero(bad)),
        worst_r=worst + 1,
        max_ratio=float(ratio[worst]),
        max_abs_error=float(np.max(err)),
    )


def twin_scan(n_max: int, *, workers: int = 1, progress=None) -> list[TwinPair]:
    """All r < n_max with C(r) and C(r+1) both prime, in ascending order."""
    if n_max < 2:
        raise ValueError(f"twin_scan needs n_max >= 2, got {n_max}")
    pairs: list[TwinPair] = []
    prev: CountRecord | None = None
    for rec in sweep_counts(n_max, classify=True, workers=workers, progress=progress):
        if prev is not None and prev.prime and rec.prime:
            pairs.append(TwinPair(r=prev.r, c_r=prev.count, c_r_next=rec.count))
        prev = rec
    return pairs


def heuristic_estimate(n: int, counts: Iterable[CountRecord]) -> HeuristicRow:
    """Expected number of primes among C(1)..C(n) by the odd-integer density.

    Every count is odd, so each contributes probability ~ 2 / log C(k); the
    exact-count sum uses the swept values, the asymptotic variant substitutes
    log(pi k^2) = log pi + 2 log k. Terms accumulate in ascending k through
    math.fsum, which keeps the float summation error at one final rounding.
    """
    if n < 1:
        raise ValueError(f"heuristic_estimate needs n >= 1, got {n}")
    exact_terms = []
    k = 0
    for rec in _take_records(counts, n):
        k += rec.prime
        exact_terms.append(2.0 / math.log(rec.count))
    log_pi = math.log(math.pi)
    return HeuristicRow(
        n=n,
        kappa_n=k,
        estimate_exact_counts=math.fsum(exact_terms),
        estimate_asymptotic=math.fsum(
            2.0 / (log_pi + 2.0 * math.log(j)) for j in range(1, n + 1)
        ),
    )
