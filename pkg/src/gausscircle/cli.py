"""Command-line front end.

Subcommands: count, ball, tabulate, crossover, verify-bound, twins, estimate,
li. Results go to stdout or --out as CSV, TSV, or JSON; progress and prompts
go to stderr only, so the data stream always parses. Output bytes are
deterministic for a given invocation, independent of the worker count.

Exit codes: 0 success, 2 usage error, 3 runtime guard or I/O failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from decimal import ROUND_DOWN, Decimal

from .analysis import (
    BoundReport,
    HeuristicRow,
    TabulationRow,
    TwinPair,
    find_crossover,
    heuristic_estimate,
    tabulate,
    twin_scan,
    verify_gauss_bound,
)
from .lattice import CountRecord, count_ball, count_circle, sweep_counts
from .primes import is_prime, log_integral

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3

# Sweeps past this horizon ask for confirmation unless --yes is given; the
# kernels visit roughly n^2 / 2 columns over a whole sweep to n.
LONG_RUN_THRESHOLD = 100_000
_COLUMN_VISITS_PER_SEC = 4.0e8

_FIVE_PLACES = Decimal("0.00001")


def format_real(v: float) -> str:
    """Fixed 5-decimal rendering, truncated toward zero.

    Truncation, not rounding, is what reproduces the published ratio tables
    digit for digit.
    """
    return str(Decimal(v).quantize(_FIVE_PLACES, rounding=ROUND_DOWN))


@dataclass(frozen=True)
class BallRow:
    dim: int
    r: int
    count: int


@dataclass(frozen=True)
class PointCountRow:
    # same wire shape as CountRecord, without its 2-D-only invariants
    r: int
    count: int
    prime: bool | None


@dataclass(frozen=True)
class CrossoverRow:
    n_max: int
    crossover: int | None


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    radius: int | None = None
    dim: int | None = None
    x: float | None = None
    n_max: int | None = None
    checkpoints: list[int] | None = None
    output_format: str = "csv"
    output_path: str | None = None
    worker_count: int = 1
    assume_yes: bool = False
    progress: bool = False


# Wire schema per row type: header names and a cell extractor. Cells are
# int, bool, float, None, or str; floats render through format_real, None
# through the schema's marker.
_SCHEMAS = {
    TabulationRow: (
        ("n", "pi", "kappa", "pnt_rounded", "ratio_pi_kappa", "ratio_pi_pnt", "ratio_kappa_pnt"),
        lambda t: (t.n, t.pi_n, t.kappa_n, t.pnt_rounded, t.ratio_pi_kappa, t.ratio_pi_pnt, t.ratio_kappa_pnt),
        "undefined",
    ),
    TwinPair: (
        ("r", "c_r", "c_r_next"),
        lambda t: (t.r, t.c_r, t.c_r_next),
        "undefined",
    ),
    BoundReport: (
        ("n_max", "violations", "worst_r", "max_ratio", "max_abs_error"),
        lambda t: (t.n_max, t.violations, t.worst_r, t.max_ratio, t.max_abs_error),
        "undefined",
    ),
    HeuristicRow: (
        ("n", "kappa", "estimate_exact_counts", "estimate_asymptotic"),
        lambda t: (t.n, t.kappa_n, t.estimate_exact_counts, t.estimate_asymptotic),
        "undefined",
    ),
    CountRecord: (
        ("r", "count", "prime"),
        lambda t: (t.r, t.count, t.prime),
        "undefined",
    ),
    BallRow: (
        ("dim", "r", "count"),
        lambda t: (t.dim, t.r, t.count),
        "undefined",
    ),
    PointCountRow: (
        ("r", "count", "prime"),
        lambda t: (t.r, t.count, t.prime),
        "undefined",
    ),
    CrossoverRow: (
        ("n_max", "crossover"),
        lambda t: (t.n_max, t.crossover),
        "none",
    ),
}


def _text_cell(value, none_marker: str) -> str:
    if value is None:
        return none_marker
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, float):
        return format_real(value)
    return str(value)


def _json_cell(value):
    if isinstance(value, float):
        return float(format_real(value))
    return value


def emit_rows(rows, output_format: str, sink, row_type=None) -> int:
    """Serialise one homogeneous batch of result rows; returns bytes written.

    CSV/TSV carry a header line, reals at 5 truncated decimals, and a single
    linefeed terminator per line; JSON is an array of objects under the same
    field names with the same 5-decimal real values.
    """
    if row_type is None:
        if not rows:
            raise ValueError("cannot infer the row type of an empty batch")
        row_type = type(rows[0])
    if row_type not in _SCHEMAS:
        raise ValueError(f"no wire schema for row type {row_type!r}")
    if any(type(row) is not row_type for row in rows):
        raise ValueError("emit_rows needs a homogeneous batch")
    headers, extract, none_marker = _SCHEMAS[row_type]
    if output_format == "json":
        objs = [dict(zip(headers, (_json_cell(v) for v in extract(row)))) for row in rows]
        text = json.dumps(objs, indent=2) + "\n"
    elif output_format in ("csv", "tsv"):
        sep = "," if output_format == "csv" else "\t"
        lines = [sep.join(headers)]
        lines.extend(
            sep.join(_text_cell(v, none_marker) for v in extract(row)) for row in rows
        )
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown output format {output_format!r}")
    sink.write(text)
    return len(text.encode("utf-8"))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a nonnegative integer, got {text}")
    return value


def _checkpoint_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad checkpoint list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("checkpoint list is empty")
    return values


def _add_output_options(sp, *, workers: bool = True) -> None:
    sp.add_argument("--format", choices=("csv", "tsv", "json"), default="csv",
                    help="output encoding (default csv)")
    sp.add_argument("--out", metavar="PATH", default=None,
                    help="write the data stream to PATH (atomically) instead of stdout")
    if workers:
        sp.add_argument("--workers", type=_positive_int, default=None, metavar="W",
                        help="parallel sweep chunks (default $GCP_WORKERS or 1)")
    sp.add_argument("--progress", action="store_true",
                    help="report sweep progress on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gausscircle",
        description="Exact lattice-point counts in circles and balls, and prime statistics of the counts.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("count", help="count lattice points for one radius, with primality verdict")
    sp.add_argument("--radius", type=_nonnegative_int, required=True)
    sp.add_argument("--dim", type=_positive_int, default=2,
                    help="dimension of the ball (default 2, the circle)")
    _add_output_options(sp, workers=False)

    sp = sub.add_parser("ball", help="count lattice points in a d-dimensional ball")
    sp.add_argument("--dim", type=_positive_int, required=True)
    sp.add_argument("--radius", type=_nonnegative_int, required=True)
    _add_output_options(sp, workers=False)

    sp = sub.add_parser("tabulate", help="pi(n), kappa(n), n/log n and their ratios at checkpoints")
    sp.add_argument("--max", type=_positive_int, required=True, dest="n_max")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--step", type=_positive_int, default=None,
                       help="checkpoints at step, 2*step, ... up to --max")
    group.add_argument("--at", type=_checkpoint_list, default=None, metavar="N1,N2,...",
                       help="explicit ascending checkpoints")
    sp.add_argument("--yes", action="store_true", help="skip the long-run confirmation prompt")
    _add_output_options(sp)

    for name, help_text in (
        ("crossover", "first n with pi(n) > kappa(n) > n/log n"),
        ("verify-bound", "check the circle-area error bound for all r <= max"),
        ("twins", "radii r with C(r) and C(r+1) both prime"),
        ("estimate", "expected prime count of the sequence C(1..max)"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--max", type=_positive_int, required=True, dest="n_max")
        sp.add_argument("--yes", action="store_true", help="skip the long-run confirmation prompt")
        _add_output_options(sp)

    sp = sub.add_parser("li", help="logarithmic integral li(x) to 10 significant digits")
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--out", metavar="PATH", default=None)

    return parser


def config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    """Resolve a parsed namespace into a validated RunConfig."""
    workers = getattr(args, "workers", None)
    if workers is None:
        env = os.environ.get("GCP_WORKERS", "").strip()
        if env:
            try:
                workers = int(env)
            except ValueError:
                parser.error(f"GCP_WORKERS must be an integer, got {env!r}")
            if workers < 1:
                parser.error(f"GCP_WORKERS must be >= 1, got {workers}")
        else:
            workers = 1

    checkpoints = None
    if args.subcommand == "tabulate":
        if args.step is not None:
            if args.step > args.n_max:
                parser.error(f"--step {args.step} exceeds --max {args.n_max}")
            checkpoints = list(range(args.step, args.n_max + 1, args.step))
        else:
            checkpoints = args.at
            if checkpoints[0] < 2:
                parser.error("checkpoints must start at n >= 2")
            if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
                parser.error("checkpoints must be strictly ascending")
            if checkpoints[-1] > args.n_max:
                parser.error(f"checkpoint {checkpoints[-1]} exceeds --max {args.n_max}")

    return RunConfig(
        subcommand=args.subcommand,
        radius=getattr(args, "radius", None),
        dim=getattr(args, "dim", None),
        x=getattr(args, "x", None),
        n_max=getattr(args, "n_max", None),
        checkpoints=checkpoints,
        output_format=getattr(args, "format", "csv"),
        output_path=args.out,
        worker_count=workers,
        assume_yes=getattr(args, "yes", False),
        progress=getattr(args, "progress", False),
    )


def _confirm_long_run(config: RunConfig) -> None:
    horizon = config.n_max if config.checkpoints is None else config.checkpoints[-1]
    if horizon is None or horizon <= LONG_RUN_THRESHOLD or config.assume_yes:
        return
    visits = horizon * horizon / 2.0
    secs = visits / _COLUMN_VISITS_PER_SEC / config.worker_count
    print(
        f"sweep to {horizon} visits ~{visits:.2e} columns; estimated "
        f"{secs:.0f}s with {config.worker_count} worker(s)",
        file=sys.stderr,
    )
    print("proceed? [y/N] ", end="", file=sys.stderr, flush=True)
    try:
        answer = input()
    except EOFError:
        answer = ""
    if answer.strip().lower() not in ("y", "yes"):
        raise RuntimeError("aborted: pass --yes to run without confirmation")


def _progress_printer(enabled: bool):
    if not enabled:
        return None

    def report(done: int, total: int) -> None:
        print(f"progress: r={done}/{total}", file=sys.stderr, flush=True)

    return report


def _produce(config: RunConfig) -> str:
    """Run the requested computation and render the full data stream."""
    progress = _progress_printer(config.progress)
    sink = io.StringIO()

    if config.subcommand == "li":
        sink.write(format(log_integral(config.x), "#.10g") + "\n")
        return sink.getvalue()

    if config.subcommand == "count":
        if config.dim == 2:
            rec = count_circle(config.radius)
            rec = replace(rec, prime=is_prime(rec.count))
            emit_rows([rec], config.output_format, sink)
        else:
            count = count_ball(config.dim, config.radius)
            # is_prime rejects counts at or past 2^64; that surfaces as exit 3
            row = PointCountRow(r=config.radius, count=count, prime=is_prime(count))
            emit_rows([row], config.output_format, sink)
        return sink.getvalue()

    if config.subcommand == "ball":
        count = count_ball(config.dim, config.radius)
        emit_rows([BallRow(dim=config.dim, r=config.radius, count=count)],
                  config.output_format, sink)
        return sink.getvalue()

    _confirm_long_run(config)

    if config.subcommand == "tabulate":
        rows = tabulate(config.checkpoints, workers=config.worker_count, progress=progress)
        emit_rows(rows, config.output_format, sink, row_type=TabulationRow)
    elif config.subcommand == "crossover":
        value = find_crossover(config.n_max, workers=config.worker_count, progress=progress)
        emit_rows([CrossoverRow(n_max=config.n_max, crossover=value)],
                  config.output_format, sink)
    elif config.subcommand == "verify-bound":
        emit_rows(
            [verify_gauss_bound(config.n_max, workers=config.worker_count, progress=progress)],
            config.output_format, sink)
    elif config.subcommand == "twins":
        rows = twin_scan(config.n_max, workers=config.worker_count, progress=progress)
        emit_rows(rows, config.output_format, sink, row_type=TwinPair)
    elif config.subcommand == "estimate":
        records = sweep_counts(
            config.n_max, classify=True, workers=config.worker_count, progress=progress
        )
        emit_rows([heuristic_estimate(config.n_max, records)], config.output_format, sink)
    else:
        raise ValueError(f"unknown subcommand {config.subcommand!r}")
    return sink.getvalue()


def _deliver(text: str, output_path: str | None) -> None:
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(output_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".gausscircle-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_path, output_path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def run(config: RunConfig) -> int:
    """Execute one validated configuration; returns the process exit status."""
    text = _produce(config)
    _deliver(text, config.output_path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args, parser)
    try:
        return run(config)
    except (ValueError, OverflowError, RuntimeError, OSError) as exc:
        print(f"gausscircle: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        print("gausscircle: interrupted", file=sys.stderr)
        return 130


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
