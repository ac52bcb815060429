"""Compiled kernels for the hot counting loops.

Integer-only int64 arithmetic throughout. Callers guarantee r <= 2^31 - 1 so
r*r, the per-column limits, and the running quadrant sum (bounded by
(pi/4) * r^2 < 2^62) all stay inside int64.
"""

from numba import njit


@njit(cache=True)
def quadrant_sum_walk(r):
    # Boundary walk over the open first quadrant: x descends from r while y
    # climbs monotonically, so the walk costs O(r) additions and compares and
    # needs no square roots at all.
    q = 0
    y = 0
    rr = r * r
    for x in range(r, 0, -1):
        lim = rr - x * x
        yp = y + 1
        while yp * yp <= lim:
            y = yp
            yp += 1
        q += y
    return q


@njit(cache=True)
def advance_columns(heights, r_start, r_stop, qsums, q0):
    # Incremental sweep: heights[x] holds floor(sqrt(r^2 - x^2)) for the radius
    # before r_start; raise each column onto the growing circle and accumulate
    # the quadrant sum. qsums[i] receives the sum for radius r_start + i.
    q = q0
    for i in range(r_stop - r_start + 1):
        r = r_start + i
        rr = r * r
        for x in range(1, r + 1):
            h = heights[x]
            lim = rr - x * x
            hp = h + 1
            while hp * hp <= lim:
                h = hp
                hp += 1
            if h > heights[x]:
                q += h - heights[x]
                heights[x] = h
        qsums[i] = q
    return q


def warm_up():
    """Force compilation (or a load from the on-disk cache) of both kernels."""
    import numpy as np

    heights = np.zeros(3, dtype=np.int64)
    qsums = np.zeros(2, dtype=np.int64)
    advance_columns(heights, 1, 2, qsums, 0)
    quadrant_sum_walk(2)
