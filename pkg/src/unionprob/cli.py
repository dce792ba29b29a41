"""Command-line interface.

Subcommands::

    union      exact union probability (plus the mean approximation)
    series     term-by-term expansion with running partial sums
    profile    relative truncation error vs number of terms (figure data)
    min-terms  fewest series terms meeting a required relative error
    table      regenerate the built-in reference tables
    verify     randomized cross-validation against the independent oracles
    bench      time the symmetric-polynomial DP vs exhaustive enumeration

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification
failure. Numeric output is rounded half-even at a configurable number of
decimals (default 4); relative errors are always emitted both as a
fraction (``rel_error``) and as a percentage (``rel_error_pct``).
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from collections.abc import Sequence

import numpy as np

from .approx import (
    compare_row,
    error_profile,
    max_error_table,
    min_terms_for_error,
    min_terms_for_error_general,
)
from .core import exact_union, exact_union_equal
from .oracle import bernoulli_monte_carlo, subset_inclusion_exclusion
from .series import expand_series, expand_series_equal, truncated_union_general

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID_INPUT = 2
EXIT_VERIFY_FAILED = 3

# Event sets behind the built-in reference tables 1 and 2.
REFERENCE_DEVICE_SETS: tuple[tuple[float, ...], ...] = (
    (0.1, 0.3),
    (0.1, 0.3, 0.5),
    (0.1, 0.2, 0.2, 0.3),
    (0.5, 0.8, 0.2, 0.4),
    (0.1, 0.2, 0.2, 0.3, 0.2),
)

# (mean probability, device count, term counts) blocks of reference table 3.
MAX_ERROR_CONFIGS: tuple[tuple[float, int, tuple[int, ...]], ...] = (
    (0.1, 100, (26, 27, 28, 29, 30)),
    (0.01, 100, (1, 2, 3, 4, 5, 6)),
)

# Verification tolerances: algebraic paths must agree to this relative
# error; Monte Carlo must land within 4 standard errors in at least
# 99.9% of cases.
VERIFY_REL_TOL = 1e-10
VERIFY_MC_SIGMA = 4.0
VERIFY_MC_MISS_FRACTION = 0.001
VERIFY_SUBSET_MAX_N = 15


class _UsageError(Exception):
    """Bad flag combination detected after argparse; exits with code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; this tool
    # reserves 2 for invalid input data.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_probs_file(path: str) -> list[float]:
    """Parse one probability per line; '#' lines and blank lines ignored."""
    values: list[float] = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                value = float(line)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: {line!r} is not a number") from None
            if not 0.0 <= value <= 1.0:
                raise ValueError(
                    f"{path}:{lineno}: probability {value!r} is outside [0, 1]"
                )
            values.append(value)
    if not values:
        raise ValueError(f"{path}: no probabilities found")
    return values


def _add_input_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--probs",
        metavar="FILE",
        help="file with one event probability per line ('#' comments allowed)",
    )
    parser.add_argument("--p", type=float, help="shared probability of every event")
    parser.add_argument("--n", type=int, help="number of events (with --p)")


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument(
        "--format",
        choices=("json", "csv"),
        default=default_format,
        help=f"output encoding (default: {default_format})",
    )
    parser.add_argument(
        "--decimals",
        type=int,
        default=4,
        help="decimal places for numeric output, rounded half-even (default: 4)",
    )


def _resolve_input(args) -> tuple[list[float] | None, tuple[float, int] | None]:
    """Return (probs, None) for file input or (None, (p, n)) for equal mode."""
    has_file = args.probs is not None
    has_equal = args.p is not None or args.n is not None
    if has_file and has_equal:
        raise _UsageError("give either --probs or --p/--n, not both")
    if has_file:
        return _read_probs_file(args.probs), None
    if args.p is None or args.n is None:
        raise _UsageError("either --probs FILE or both --p and --n are required")
    return None, (args.p, args.n)


# --- output encoding -------------------------------------------------------


def _csv_cell(value, decimals: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{decimals}f}"
    return str(value)


def _json_value(value, decimals: int):
    if isinstance(value, float):
        return round(value, decimals)
    return value


def _emit(records: list[dict], fmt: str, decimals: int, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        payload = [
            {key: _json_value(v, decimals) for key, v in record.items()}
            for record in records
        ]
        json.dump(payload[0] if len(payload) == 1 else payload, stream, indent=2)
        stream.write("\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(records[0].keys())
        for record in records:
            writer.writerow(_csv_cell(v, decimals) for v in record.values())
    else:  # text: aligned columns
        headers = list(records[0].keys())
        cells = [
            [_csv_cell(v, decimals) for v in record.values()] for record in records
        ]
        widths = [
            max(len(header), *(len(row[i]) for row in cells))
            for i, header in enumerate(headers)
        ]
        stream.write("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip() + "\n")
        for row in cells:
            stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _with_pct(record: dict, key: str) -> dict:
    """Add the percentage twin right after a fractional error column."""
    out = {}
    for k, v in record.items():
        out[k] = v
        if k == key:
            out[f"{key}_pct"] = 100.0 * v
    return out


# --- subcommands -----------------------------------------------------------


def _cmd_union(args) -> int:
    probs, equal = _resolve_input(args)
    if probs is not None:
        row = compare_row(probs)
        record = {"n": row.n, "mean": row.mean, "exact": row.exact, "approx": row.approx}
    else:
        p, n = equal
        record = {"n": n, "exact": exact_union_equal(p, n)}
    _emit([record], args.format, args.decimals)
    return EXIT_OK


def _cmd_series(args) -> int:
    probs, equal = _resolve_input(args)
    if probs is not None:
        m = args.m if args.m is not None else len(probs)
        expansion = expand_series(probs, m)
    else:
        p, n = equal
        m = args.m if args.m is not None else n
        expansion = expand_series_equal(p, n, m)
    records = [
        {"i": term.index, "term": term.signed, "partial_sum": partial, "out_of_range": flag}
        for term, partial, flag in zip(
            expansion.terms, expansion.partial_sums, expansion.out_of_range_flags
        )
    ]
    _emit(records, args.format, args.decimals)
    return EXIT_OK


def _cmd_profile(args) -> int:
    probs, equal = _resolve_input(args)
    if probs is None:
        p, n = equal
        probs = [p] * n
    m_max = args.m_max if args.m_max is not None else len(probs)
    modes = ("exact", "approx") if args.mode == "both" else (args.mode,)
    profiles = [error_profile(probs, mode, m_max) for mode in modes]

    records = []
    for profile in profiles:
        for m, err in profile.entries:
            record = {"m": m, "rel_error": err}
            if len(profiles) > 1:
                record = {"mode": profile.mode, **record}
            records.append(_with_pct(record, "rel_error"))
    _emit(records, args.format, args.decimals)

    if args.plot:
        from .figures import save_error_profile_plot

        save_error_profile_plot(
            profiles, args.plot, title=f"truncation error, n={len(probs)}"
        )
    return EXIT_OK


def _cmd_min_terms(args) -> int:
    probs, equal = _resolve_input(args)
    if probs is not None:
        result = min_terms_for_error_general(probs, args.re)
    else:
        p, n = equal
        result = min_terms_for_error(p, n, args.re)
    record = _with_pct(
        {"num_terms": result.num_terms, "achieved_error": result.achieved_error},
        "achieved_error",
    )
    _emit([record], args.format, args.decimals)
    return EXIT_OK


def _table_records(which: int) -> list[dict]:
    if which == 1:
        records = []
        for probs in REFERENCE_DEVICE_SETS:
            row = compare_row(probs)
            records.append(
                {
                    "n": row.n,
                    "probs": " ".join(str(p) for p in row.probs),
                    "mean": row.mean,
                    "exact": row.exact,
                    "approx": row.approx,
                }
            )
        return records
    if which == 2:
        records = []
        for probs in REFERENCE_DEVICE_SETS:
            row = compare_row(probs, m=len(probs) - 1)
            record = {
                "n": row.n,
                "probs": " ".join(str(p) for p in row.probs),
                "mean": row.mean,
                "m": row.m,
                "exact_error": row.exact_error,
            }
            record = _with_pct(record, "exact_error")
            record["approx_error"] = row.approx_error
            records.append(_with_pct(record, "approx_error"))
        return records
    records = []
    for mean_p, n, m_values in MAX_ERROR_CONFIGS:
        for m, err in max_error_table(mean_p, n, m_values):
            records.append(
                _with_pct({"mean": mean_p, "n": n, "m": m, "rel_error": err}, "rel_error")
            )
    return records


def _cmd_table(args) -> int:
    _emit(_table_records(args.which), args.format, args.decimals)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.cases < 1:
        raise _UsageError("--cases must be at least 1")
    if args.trials < 1:
        raise _UsageError("--trials must be at least 1")
    if args.n < 1:
        raise _UsageError("--n must be at least 1")

    check_subset = args.n <= VERIFY_SUBSET_MAX_N
    print(f"verify: n={args.n} cases={args.cases} seed={args.seed} trials={args.trials}")
    if not check_subset:
        print(
            f"subset enumeration skipped (n > {VERIFY_SUBSET_MAX_N} exceeds the "
            "exhaustive-oracle cap); Monte Carlo-only cross-check engaged"
        )

    rng = np.random.Generator(np.random.PCG64(args.seed))
    worst_series = 0.0
    worst_subset = 0.0
    mc_misses = 0
    failures: list[str] = []

    for case in range(args.cases):
        probs = rng.random(args.n)
        mc_seed = int(rng.integers(2**63))
        exact = exact_union(probs)
        reference = exact if exact > 0.0 else 1.0

        series_rel = abs(exact - truncated_union_general(probs, args.n).value) / reference
        worst_series = max(worst_series, series_rel)
        if series_rel > VERIFY_REL_TOL:
            failures.append(f"case {case}: full series off by {series_rel:.3e}")

        if check_subset:
            subset_rel = abs(exact - subset_inclusion_exclusion(probs)) / reference
            worst_subset = max(worst_subset, subset_rel)
            if subset_rel > VERIFY_REL_TOL:
                failures.append(f"case {case}: subset enumeration off by {subset_rel:.3e}")

        estimate = bernoulli_monte_carlo(probs, args.trials, mc_seed).estimate
        sigma = (exact * (1.0 - exact) / args.trials) ** 0.5
        if abs(estimate - exact) > VERIFY_MC_SIGMA * sigma:
            mc_misses += 1

    allowed_misses = int(VERIFY_MC_MISS_FRACTION * args.cases)
    print(f"exact vs full series:        max rel diff {worst_series:.3e} (tol {VERIFY_REL_TOL:.0e})")
    if check_subset:
        print(f"exact vs subset enumeration: max rel diff {worst_subset:.3e} (tol {VERIFY_REL_TOL:.0e})")
    print(
        f"Monte Carlo within {VERIFY_MC_SIGMA:g}*SE:    "
        f"{args.cases - mc_misses}/{args.cases} cases (allowed misses: {allowed_misses})"
    )
    if mc_misses > allowed_misses:
        failures.append(f"Monte Carlo missed 4*SE in {mc_misses}/{args.cases} cases")

    if failures:
        for failure in failures:
            print(f"FAIL: {failure}")
        print("VERIFY FAIL")
        return EXIT_VERIFY_FAILED
    print("VERIFY PASS")
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.n < 1:
        raise _UsageError("--n must be at least 1")
    if args.reps < 1:
        raise _UsageError("--reps must be at least 1")
    m = args.m if args.m is not None else min(args.n, 100)

    rng = np.random.Generator(np.random.PCG64(args.seed))
    probs = rng.random(args.n)

    timings = []
    value = float("nan")
    for _ in range(args.reps):
        start = time.perf_counter()
        value = truncated_union_general(probs, m).value
        timings.append(time.perf_counter() - start)

    print(f"bench: n={args.n} m={m} reps={args.reps} seed={args.seed}")
    print(
        f"symmetric-polynomial DP: best {min(timings):.6f} s, "
        f"median {statistics.median(timings):.6f} s, value {value:.10g}"
    )

    if args.n <= 20:
        start = time.perf_counter()
        baseline = subset_inclusion_exclusion(probs)
        elapsed = time.perf_counter() - start
        full = truncated_union_general(probs, args.n).value
        reference = baseline if baseline > 0.0 else 1.0
        rel = abs(full - baseline) / reference
        print(f"exhaustive enumeration:  {elapsed:.6f} s, value {baseline:.10g}")
        print(f"agreement at m=n: rel diff {rel:.3e}")
    else:
        print("exhaustive enumeration skipped (n > 20)")
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="unionprob",
        description="Union probability of independent events: exact, truncated series, mean approximation.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p_union = sub.add_parser("union", help="exact union probability")
    _add_input_flags(p_union)
    _add_output_flags(p_union, "json")
    p_union.set_defaults(handler=_cmd_union)

    p_series = sub.add_parser("series", help="term-by-term series expansion")
    _add_input_flags(p_series)
    p_series.add_argument("--m", type=int, help="number of terms (default: all n)")
    _add_output_flags(p_series, "csv")
    p_series.set_defaults(handler=_cmd_series)

    p_profile = sub.add_parser("profile", help="relative error vs number of terms")
    _add_input_flags(p_profile)
    p_profile.add_argument(
        "--mode",
        choices=("exact", "approx", "both"),
        default="exact",
        help="which series to profile (default: exact)",
    )
    p_profile.add_argument(
        "--m-max", dest="m_max", type=int, help="largest term count (default: n)"
    )
    p_profile.add_argument(
        "--plot",
        metavar="FILE",
        help="also render the profile to an image file (format by suffix)",
    )
    _add_output_flags(p_profile, "csv")
    p_profile.set_defaults(handler=_cmd_profile)

    p_min = sub.add_parser("min-terms", help="fewest terms for a required error")
    _add_input_flags(p_min)
    p_min.add_argument(
        "--re", type=float, required=True, help="required relative error (fraction)"
    )
    _add_output_flags(p_min, "json")
    p_min.set_defaults(handler=_cmd_min_terms)

    p_table = sub.add_parser("table", help="regenerate a built-in reference table")
    p_table.add_argument(
        "--which",
        type=int,
        choices=(1, 2, 3),
        required=True,
        help="1: exact vs mean-approximate unions; 2: truncation errors at n-1 "
        "terms; 3: max error vs term count for 100 devices",
    )
    p_table.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        help="output encoding (default: text)",
    )
    p_table.add_argument(
        "--decimals",
        type=int,
        default=4,
        help="decimal places for numeric output, rounded half-even (default: 4)",
    )
    p_table.set_defaults(handler=_cmd_table)

    p_verify = sub.add_parser("verify", help="randomized oracle cross-validation")
    p_verify.add_argument("--n", type=int, required=True, help="events per case")
    p_verify.add_argument("--cases", type=int, default=100, help="number of random cases")
    p_verify.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p_verify.add_argument(
        "--trials", type=int, default=50_000, help="Monte Carlo trials per case"
    )
    p_verify.set_defaults(handler=_cmd_verify)

    p_bench = sub.add_parser("bench", help="time the DP vs exhaustive enumeration")
    p_bench.add_argument("--n", type=int, required=True, help="number of events")
    p_bench.add_argument("--m", type=int, help="truncation order (default: min(n, 100))")
    p_bench.add_argument("--reps", type=int, default=3, help="timing repetitions")
    p_bench.add_argument("--seed", type=int, default=0, help="RNG seed for the inputs")
    p_bench.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
