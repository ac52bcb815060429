"""Exact integer primitives underneath all counting code.

Two contracts live here: a floor square root that no floating-point rounding
can corrupt, and "wide" count arithmetic that either returns the exact value
or raises, never wraps. Counts are plain Python integers, but the declared
width of the count domain is 128 bits and the checked operations enforce that
ceiling.
"""

import math

WIDE_MAX = (1 << 128) - 1


def check_wide(value: int) -> int:
    """Validate that value lies in the wide-count domain [0, 2^128)."""
    if value < 0:
        raise OverflowError(f"wide count must be nonnegative, got {value}")
    if value > WIDE_MAX:
        raise OverflowError("wide count exceeds 128-bit range")
    return value


def integer_sqrt(x: int) -> int:
    """Largest s with s*s <= x, exact for any 0 <= x < 2^128.

    Delegates to math.isqrt, whose Newton iteration carries out the final
    correction in exact integer arithmetic; no float takes part in the
    returned value.
    """
    if not 0 <= x <= WIDE_MAX:
        raise ValueError(f"integer_sqrt domain is [0, 2^128), got {x}")
    return math.isqrt(x)


def checked_add(a: int, b: int) -> int:
    """Exact a + b, raising OverflowError instead of leaving the wide domain."""
    check_wide(a)
    check_wide(b)
    return check_wide(a + b)
