"""Exact lattice-point counts in circles and d-dimensional balls.

The two-dimensional count for an integer radius r decomposes by symmetry into

    C(r) = 4 * Q(r) + 4r + 1

where Q(r) is the number of points in the open first quadrant, 4r counts the
nonzero axis points and 1 the origin. Q(r) is evaluated either by an O(r)
boundary walk (one radius at a time) or by an incremental column sweep that
amortises the work across every radius up to a horizon: raising each column
height once per lattice point that enters the circle, the whole sweep to N
costs on the order of the (pi/4) N^2 points it counts, with O(N) memory.

Everything here is exact integer arithmetic; the kernels run in int64, which
the Radius bound (r <= 2^31 - 1) keeps overflow-free, and final counts are
assembled as checked wide integers.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .intmath import WIDE_MAX, checked_add, integer_sqrt
from .primes import is_prime

RADIUS_MAX = (1 << 31) - 1

MAX_BALL_DIM = 10
BRUTE_CIRCLE_MAX_RADIUS = 10_000
BRUTE_BALL_MAX_DIM = 4
BRUTE_BALL_MAX_RADIUS = 20

# Sweep columns are int64; reject horizons whose column array would not fit.
DEFAULT_COLUMN_BYTE_CAP = 1 << 30


def _check_radius(r: int) -> int:
    if not 0 <= r <= RADIUS_MAX:
        raise ValueError(f"radius must be in [0, {RADIUS_MAX}], got {r}")
    return r


@dataclass(frozen=True)
class CountRecord:
    """A radius, its exact 2-D lattice count, and the count's primality verdict.

    prime stays None until a primality pass fills it in. Both invariants below
    are specific to two dimensions: every circle count is 1 mod 4, and the axes
    plus origin alone contribute 4r + 1 points.
    """

    r: int
    count: int
    prime: bool | None = None

    def __post_init__(self):
        assert self.count % 4 == 1, f"C({self.r}) = {self.count} not 1 mod 4"
        assert self.count >= 4 * self.r + 1


def count_circle(r: int) -> CountRecord:
    """Exact number of integer points (x, y) with x^2 + y^2 <= r^2.

    O(r) boundary walk; the primality field of the returned record is unset.
    """
    _check_radius(r)
    q = int(_kernels.quadrant_sum_walk(r))
    return CountRecord(r=r, count=checked_add(4 * q, 4 * r + 1))


def count_circle_bruteforce(r: int) -> int:
    """Test oracle: enumerate the full square [-r, r]^2 and count norms <= r^2."""
    _check_radius(r)
    if r > BRUTE_CIRCLE_MAX_RADIUS:
        raise ValueError(
            f"brute-force circle oracle is O(r^2); refusing r={r} > {BRUTE_CIRCLE_MAX_RADIUS}"
        )
    xs = np.arange(-r, r + 1, dtype=np.int64)
    return int(np.count_nonzero(xs[:, None] ** 2 + xs[None, :] ** 2 <= r * r))


class SweepState:
    """Column state of the incremental sweep at its current radius.

    column_heights[x] = floor(sqrt(r_current^2 - x^2)) for 1 <= x <= r_current,
    and running_quadrant_sum is the sum of those heights. Instances are
    single-owner and strictly sequential; parallel sweeps use independent
    states on disjoint radius ranges.
    """

    def __init__(self, n_max: int, *, column_byte_cap: int = DEFAULT_COLUMN_BYTE_CAP):
        _check_radius(n_max)
        need = 8 * (n_max + 1)
        if need > column_byte_cap:
            raise ValueError(
                f"column array for n_max={n_max} needs {need} bytes,"
                f" above the {column_byte_cap} byte cap"
            )
        self.n_max = n_max
        self.r_current = 0
        self.column_heights = np.zeros(n_max + 1, dtype=np.int64)
        self.running_quadrant_sum = 0

    @classmethod
    def at_radius(
        cls, r_current: int, n_max: int, *, column_byte_cap: int = DEFAULT_COLUMN_BYTE_CAP
    ) -> "SweepState":
        """State identical to stepping 1..r_current, seeded directly by isqrt.

        O(r_current) setup; this is how a chunked sweep starts mid-range.
        """
        _check_radius(r_current)
        if r_current > n_max:
            raise ValueError(f"start radius {r_current} beyond horizon {n_max}")
        state = cls(n_max, column_byte_cap=column_byte_cap)
        rr = r_current * r_current
        heights = state.column_heights
        for x in range(1, r_current + 1):
            heights[x] = integer_sqrt(rr - x * x)
        state.r_current = r_current
        state.running_quadrant_sum = int(heights.sum())
        return state

    def advance(self, r_to: int) -> np.ndarray:
        """Advance to radius r_to; returns the quadrant sums of each new radius."""
        if not self.r_current < r_to <= self.n_max:
            raise ValueError(
                f"advance target {r_to} outside ({self.r_current}, {self.n_max}]"
            )
        qsums = np.empty(r_to - self.r_current, dtype=np.int64)
        q = _kernels.advance_columns(
            self.column_heights, self.r_current + 1, r_to, qsums, self.running_quadrant_sum
        )
        self.r_current = r_to
        self.running_quadrant_sum = int(q)
        return qsums

    def step(self) -> int:
        """Advance one radius; returns the new running quadrant sum."""
        return int(self.advance(self.r_current + 1)[0])

    def current_count(self) -> int:
        """C(r_current) assembled from the running quadrant sum."""
        return checked_add(4 * self.running_quadrant_sum, 4 * self.r_current + 1)


def _record(r: int, qsum: int, classify: bool) -> CountRecord:
    count = checked_add(4 * qsum, 4 * r + 1)
    return CountRecord(r=r, count=count, prime=is_prime(count) if classify else None)


def _iter_sequential(
    n_max: int,
    classify: bool,
    block_size: int,
    column_byte_cap: int,
    progress: Callable[[int, int], None] | None,
) -> Iterator[CountRecord]:
    state = SweepState(n_max, column_byte_cap=column_byte_cap)
    while state.r_current < n_max:
        r_from = state.r_current + 1
        r_to = min(r_from + block_size - 1, n_max)
        qsums = state.advance(r_to)
        for r, q in zip(range(r_from, r_to + 1), qsums):
            yield _record(r, int(q), classify)
        if progress is not None:
            progress(r_to, n_max)


def _chunk_bounds(n_max: int, workers: int) -> list[tuple[int, int]]:
    # Work per chunk grows like the area swept, so cut the radius range on a
    # sqrt grid to balance b^2 - a^2 across workers.
    k = min(workers, n_max)
    cuts = sorted({round(n_max * math.sqrt(i / k)) for i in range(k + 1)} | {0, n_max})
    return [(lo + 1, hi) for lo, hi in zip(cuts, cuts[1:])]


def _sweep_chunk_worker(args: tuple[int, int, bool]) -> tuple[list[int], list[bool] | None]:
    a, b, classify = args
    state = SweepState.at_radius(a - 1, n_max=b)
    qsums = state.advance(b)
    counts = [checked_add(4 * int(q), 4 * r + 1) for r, q in zip(range(a, b + 1), qsums)]
    flags = [is_prime(c) for c in counts] if classify else None
    return counts, flags


def _iter_chunked(
    n_max: int,
    classify: bool,
    workers: int,
    progress: Callable[[int, int], None] | None,
) -> Iterator[CountRecord]:
    chunks = _chunk_bounds(n_max, workers)
    _kernels.warm_up()  # compile before forking so children inherit machine code
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        jobs = [(a, b, classify) for a, b in chunks]
        for (a, b, _), (counts, flags) in zip(jobs, pool.map(_sweep_chunk_worker, jobs)):
            for i, r in enumerate(range(a, b + 1)):
                yield CountRecord(
                    r=r, count=counts[i], prime=flags[i] if flags is not None else None
                )
            if progress is not None:
                progress(b, n_max)


def sweep_counts(
    n_max: int,
    *,
    classify: bool = True,
    workers: int = 1,
    block_size: int = 8192,
    column_byte_cap: int = DEFAULT_COLUMN_BYTE_CAP,
    progress: Callable[[int, int], None] | None = None,
) -> Iterator[CountRecord]:
    """Stream CountRecord for r = 1 .. n_max, in radius order.

    One amortised incremental sweep; every emitted count equals the
    corresponding count_circle(r). classify=True fills each record's primality
    verdict. workers > 1 splits the range into chunks swept by separate
    processes (each seeded exactly at its start radius) and merged in radius
    order; the stream is identical to the sequential one, record for record.
    """
    _check_radius(n_max)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    # Validate the column-array guard eagerly, before the first next().
    if 8 * (n_max + 1) > column_byte_cap:
        raise ValueError(
            f"column array for n_max={n_max} needs {8 * (n_max + 1)} bytes,"
            f" above the {column_byte_cap} byte cap"
        )
    if workers == 1 or n_max < 4 * workers:
        return _iter_sequential(n_max, classify, block_size, column_byte_cap, progress)
    return _iter_chunked(n_max, classify, workers, progress)


def count_ball(d: int, r: int, *, cache: dict | None = None) -> int:
    """Number of integer vectors of squared norm <= r^2 in d dimensions.

    One-dimensional slicing: S_d(m) = sum over x of S_{d-1}(m - x^2) with
    S_0 = 1, memoised on (dimension, remaining squared radius). The memo is
    fresh per call unless the caller passes one in to share across calls.
    S_2(r^2) equals count_circle(r).count and S_1(r^2) equals 2r + 1.
    """
    if not 1 <= d <= MAX_BALL_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_BALL_DIM}], got {d}")
    _check_radius(r)
    if (2 * r + 1) ** d > WIDE_MAX:
        # Enclosing box [-r, r]^d proves the count fits the wide domain.
        raise ValueError(
            f"ball count for d={d}, r={r} is not provably within 128 bits"
        )
    if cache is None:
        cache = {}
    return _ball_slices(d, r * r, cache)


def _ball_slices(d: int, m: int, cache: dict) -> int:
    if d == 0:
        return 1
    if d == 1:
        # the innermost slice sum collapses exactly: #{x : x^2 <= m}
        return 2 * integer_sqrt(m) + 1
    key = (d, m)
    cached = cache.get(key)
    if cached is not None:
        return cached
    total = _ball_slices(d - 1, m, cache)
    for x in range(1, integer_sqrt(m) + 1):
        total += 2 * _ball_slices(d - 1, m - x * x, cache)
    cache[key] = total
    return total


def count_ball_bruteforce(d: int, r: int) -> int:
    """Test oracle: exhaustive d-nested enumeration of the box [-r, r]^d."""
    if not 1 <= d <= BRUTE_BALL_MAX_DIM:
        raise ValueError(f"brute-force ball oracle limited to d <= {BRUTE_BALL_MAX_DIM}")
    if not 0 <= r <= BRUTE_BALL_MAX_RADIUS:
        raise ValueError(f"brute-force ball oracle limited to r <= {BRUTE_BALL_MAX_RADIUS}")
    rr = r * r
    side = range(-r, r + 1)
    return sum(1 for p in itertools.product(side, repeat=d) if sum(c * c for c in p) <= rr)
