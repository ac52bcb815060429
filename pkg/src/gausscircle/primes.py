"""Primality of counts, prime counting by sieve, and the logarithmic integral.

is_prime is the classifier applied to lattice counts: trial division by the
twelve smallest primes, then a Miller-Rabin pass using those same primes as
witnesses. That fixed witness set is known to be a deterministic test for
every n below 3.3e23, which covers the whole 64-bit domain accepted here;
Python's arbitrary-precision pow keeps the modular products exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
IS_PRIME_MAX = (1 << 64) - 1
SIEVE_LIMIT_MAX = 10**9


def is_prime(n: int) -> bool:
    """Exact primality verdict for any 0 <= n < 2^64."""
    if not 0 <= n <= IS_PRIME_MAX:
        raise ValueError(f"is_prime accepts 0 <= n < 2^64, got {n}")
    if n < 2:
        return False
    for p in MR_WITNESSES:
        if n % p == 0:
            return n == p
    # n - 1 = d * 2^s with d odd
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass
class PrimeTable:
    """Eratosthenes sieve up to limit, with optional prefix prime counts.

    is_composite[p] is False exactly when p is prime; immutable after
    construction and safe to share across workers.
    """

    limit: int
    is_composite: np.ndarray
    cumulative_pi: np.ndarray | None = None


def build_sieve(limit: int, *, with_prefix_counts: bool = True) -> PrimeTable:
    """Sieve of Eratosthenes answering primality for all n <= limit."""
    if not 0 <= limit <= SIEVE_LIMIT_MAX:
        raise ValueError(f"sieve limit must be in [0, {SIEVE_LIMIT_MAX}], got {limit}")
    composite = np.zeros(limit + 1, dtype=bool)
    composite[: min(2, limit + 1)] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    prefix = np.cumsum(~composite, dtype=np.int64) if with_prefix_counts else None
    return PrimeTable(limit=limit, is_composite=composite, cumulative_pi=prefix)


def pi_of(n: int, table: PrimeTable) -> int:
    """Number of primes <= n, answered from the sieve (O(1) with prefix counts)."""
    if not 0 <= n <= table.limit:
        raise ValueError(f"pi({n}) beyond sieve limit {table.limit}")
    if table.cumulative_pi is not None:
        return int(table.cumulative_pi[n])
    return int(np.count_nonzero(~table.is_composite[: n + 1]))


# --------------------------------------------------------------------------
# Logarithmic integral li(x): the principal value of the integral of 1/log u
# from 0 to x, with the singularity at u = 1 excised symmetrically. Pairing
# u with 2 - u cancels the two divergent halves and leaves a smooth integrand
#
#     g(u) = 1/log(u) + 1/log(2 - u),   g(1) = 1,
#
# so li(2) is the plain integral of g over [0, 1] and the remaining tail is
# integrated in log space (u = e^t turns du/log u into e^t/t dt). Adaptive
# Gauss-Legendre panels drive each smooth piece below the requested absolute
# tolerance.
# --------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)
_LOG2 = math.log(2.0)
_MAX_DEPTH = 52
# Panels whose split-vs-whole difference is below a few dozen ulps of their
# own value are already at the float64 rounding floor; subdividing further
# only burns time (li(1e9) ~ 5e7 makes a pure absolute test unreachable).
_REL_FLOOR = 1e-14
# e^t decays so fast that 45 log-units below the lower endpoint the remaining
# tail is under 3e-20, far inside every tolerance used here.
_TAIL_MARGIN = 45.0


def _exp_over_t(t: np.ndarray) -> np.ndarray:
    return np.exp(t) / t


def _inv_log(u: np.ndarray) -> np.ndarray:
    return 1.0 / np.log(u)


def _paired(u: np.ndarray) -> np.ndarray:
    # 1/log(u) + 1/log(2-u) with the removable singularity at u = 1 handled by
    # its even series 1 + d^2/12 + O(d^4); log1p keeps the cancellation exact
    # down to the crossover.
    d = u - 1.0
    small = np.abs(d) < 1e-5
    safe = np.where(small, 0.5, d)
    direct = 1.0 / np.log1p(safe) + 1.0 / np.log1p(-safe)
    return np.where(small, 1.0 + d * d / 12.0, direct)


def _gauss_panel(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(np.dot(_GL_WEIGHTS, f(mid + half * _GL_NODES)))


def _adaptive(f, a: float, b: float, tol: float, depth: int = 0) -> float:
    whole = _gauss_panel(f, a, b)
    mid = 0.5 * (a + b)
    split = _gauss_panel(f, a, mid) + _gauss_panel(f, mid, b)
    if depth >= _MAX_DEPTH or abs(split - whole) <= max(tol, _REL_FLOOR * abs(split)):
        return split
    return _adaptive(f, a, mid, 0.5 * tol, depth + 1) + _adaptive(
        f, mid, b, 0.5 * tol, depth + 1
    )


def _li_at_2(tol: float) -> float:
    # Split the unit interval at 1/2: the left part of 1/log u integrates in
    # log space, its mirror 1/log(2-u) is the plain integral over [3/2, 2],
    # and only [1/2, 1] needs the paired integrand.
    third = tol / 3.0
    return (
        _adaptive(_exp_over_t, -_LOG2 - _TAIL_MARGIN, -_LOG2, third)
        + _adaptive(_inv_log, 1.5, 2.0, third)
        + _adaptive(_paired, 0.5, 1.0, third)
    )


def log_integral(x: float, *, abs_tol: float = 1e-10) -> float:
    """Principal-value logarithmic integral li(x) for x > 0, x != 1.

    Quadrature error is held near max(abs_tol, a few ulps of the result);
    with the default 1e-10 that means absolute accuracy well under 1e-8 up to
    x ~ 1e6 and a handful of ulps (~1e-7 at li(1e9) ~ 5.1e7) at the top of the
    supported range, the float64 representation floor. Tightening abs_tol
    refines the panel subdivision.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0 or x == 1.0:
        raise ValueError(f"li(x) requires finite x > 0 with x != 1, got {x}")
    if not 0.0 < abs_tol < 1.0:
        raise ValueError(f"abs_tol must be in (0, 1), got {abs_tol}")
    lx = math.log(x)
    if x < 1.0:
        return _adaptive(_exp_over_t, lx - _TAIL_MARGIN, lx, abs_tol)
    base = _li_at_2(abs_tol)
    if x == 2.0:
        return base
    if x > 2.0:
        return base + _adaptive(_exp_over_t, _LOG2, lx, abs_tol)
    return base - _adaptive(_exp_over_t, lx, _LOG2, abs_tol)
