import time

import pytest

from gausscircle import _kernels, sweep_counts, tabulate

# Union of the desk-scale checkpoints: one sweep serves the n <= 1e5 table
# rows, the ratio rows, and the density-estimate checks.
DESK_CHECKPOINTS = (100, 1000, 10_000, 20_000, 30_000, 40_000, 50_000, 100_000)


@pytest.fixture(scope="session")
def warm_kernels():
    """Compile (or load from cache) the counting kernels before anything timed."""
    _kernels.warm_up()


@pytest.fixture(scope="session")
def records_100k(warm_kernels):
    """Classified sweep records for r = 1..100000, shared across the suite."""
    return list(sweep_counts(100_000, classify=True))


@pytest.fixture(scope="session")
def desk_tabulation(warm_kernels):
    """(rows, elapsed_seconds) of one sequential tabulation to n = 100000."""
    start = time.perf_counter()
    rows = tabulate(DESK_CHECKPOINTS, workers=1)
    return rows, time.perf_counter() - start
