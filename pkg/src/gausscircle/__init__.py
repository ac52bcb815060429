"""Exact lattice-point counting in circles and balls, and prime statistics of the counts."""

from .analysis import (
    BoundReport,
    HeuristicRow,
    TabulationRow,
    TwinPair,
    find_crossover,
    heuristic_estimate,
    kappa,
    pnt_rounded,
    round_half_away,
    tabulate,
    twin_scan,
    verify_gauss_bound,
)
from .intmath import WIDE_MAX, checked_add, integer_sqrt
from .lattice import (
    RADIUS_MAX,
    CountRecord,
    SweepState,
    count_ball,
    count_ball_bruteforce,
    count_circle,
    count_circle_bruteforce,
    sweep_counts,
)
from .primes import PrimeTable, build_sieve, is_prime, log_integral, pi_of

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CountRecord",
    "HeuristicRow",
    "PrimeTable",
    "RADIUS_MAX",
    "SweepState",
    "TabulationRow",
    "TwinPair",
    "WIDE_MAX",
    "build_sieve",
    "checked_add",
    "count_ball",
    "count_ball_bruteforce",
    "count_circle",
    "count_circle_bruteforce",
    "find_crossover",
    "heuristic_estimate",
    "integer_sqrt",
    "is_prime",
    "kappa",
    "log_integral",
    "pi_of",
    "pnt_rounded",
    "round_half_away",
    "sweep_counts",
    "tabulate",
    "twin_scan",
    "verify_gauss_bound",
]
