"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v -s`` to get one pass/fail line
per criterion (the ``-s`` flag lets the explicit PASS lines through; with
plain ``-v`` pytest's own PASSED/FAILED markers serve the same purpose).
"""

import math
import time

import numpy as np
import pytest

from unionprob import (
    approx_error_at_mean,
    bernoulli_monte_carlo,
    compare_row,
    error_profile,
    exact_union,
    exact_union_equal,
    expand_series,
    log_binomial,
    max_error_table,
    mean_probability,
    min_terms_for_error,
    subset_inclusion_exclusion,
    truncated_union_general,
)

REFERENCE_SETS = [
    [0.1, 0.3],
    [0.1, 0.3, 0.5],
    [0.1, 0.2, 0.2, 0.3],
    [0.5, 0.8, 0.2, 0.4],
    [0.1, 0.2, 0.2, 0.3, 0.2],
]


def _report(num: int, description: str) -> None:
    print(f"PASS  criterion {num:2d}: {description}")


def test_criterion_01_comparison_table_values():
    """Five reference rows reproduce exact/approximate unions at 4 decimals."""
    printed = [
        ("0.3700", "0.3600"),
        ("0.6850", "0.6570"),
        ("0.5968", "0.5904"),
        ("0.9520", "0.9240"),
        ("0.6774", "0.6723"),
    ]
    start = time.perf_counter()
    rows = [compare_row(probs) for probs in REFERENCE_SETS]
    elapsed = time.perf_counter() - start
    for row, (exact_str, approx_str) in zip(rows, printed):
        assert f"{row.exact:.4f}" == exact_str, row.probs
        assert f"{row.approx:.4f}" == approx_str, row.probs
    # Row 4 must flow from the unrounded mean 0.475, not a displayed 0.48.
    assert abs(rows[3].mean - 0.475) < 1e-15
    assert f"{exact_union_equal(0.48, 4):.4f}" != "0.9240"
    assert elapsed < 1.0
    _report(1, "comparison table at 4 decimals")


def test_criterion_02_truncation_error_table():
    """n-1 term errors match the printed table values.

    The first two rows are printed as whole percents (tolerance half a
    percentage point); the remaining rows carry enough digits for a
    half-unit-in-the-last-digit comparison. The last row is matched as a
    fraction.
    """
    # (exact printed %, tolerance), (approx printed %, tolerance)
    expectations = [
        ((8.0, 0.5), (11.0, 0.5)),
        ((2.0, 0.5), (4.0, 0.5)),
        ((0.2, 0.05), (0.27, 0.005)),
        ((3.36, 0.005), (5.5, 0.05)),
        ((3.5e-4, 0.05e-4), (4.8e-4, 0.05e-4)),  # fractions, not percents
    ]
    start = time.perf_counter()
    rows = [compare_row(probs, m=len(probs) - 1) for probs in REFERENCE_SETS]
    elapsed = time.perf_counter() - start
    for i, (row, ((exact_pct, exact_tol), (approx_pct, approx_tol))) in enumerate(
        zip(rows, expectations)
    ):
        if i == len(expectations) - 1:
            exact_value, approx_value = row.exact_error, row.approx_error
        else:
            exact_value, approx_value = 100 * row.exact_error, 100 * row.approx_error
        assert abs(exact_value - exact_pct) <= exact_tol, (i, exact_value)
        assert abs(approx_value - approx_pct) <= approx_tol, (i, approx_value)
    assert elapsed < 1.0
    _report(2, "truncation-error table at printed precision")


def test_criterion_03_max_error_table_hundred_devices():
    """100-device max-error rows match the printed digits."""
    start = time.perf_counter()
    sparse = dict(max_error_table(0.01, 100, [1, 2, 3, 4, 5, 6]))
    dense = dict(max_error_table(0.1, 100, [26, 27, 28, 29, 30]))
    elapsed = time.perf_counter() - start

    # mean 0.01: printed percents carry two to three significant digits.
    for m, printed_pct, tol in [
        (1, 57.74, 0.005),
        (2, 20.34, 0.005),
        (3, 5.16, 0.005),
        (4, 1.02, 0.005),
        (5, 0.17, 0.005),
        (6, 0.023, 0.0005),
    ]:
        assert abs(100 * sparse[m] - printed_pct) <= tol, (m, 100 * sparse[m])

    # mean 0.1: cancellation-sensitive regime, one significant figure.
    for m, printed_pct, tol in [
        (26, 0.15, 0.005),
        (27, 0.04, 0.005),
        (28, 0.01, 0.005),
        (29, 0.002, 0.0005),
        (30, 0.0005, 0.00005),
    ]:
        assert abs(100 * dense[m] - printed_pct) <= tol, (m, 100 * dense[m])
    assert elapsed < 1.0
    _report(3, "max-error table for 100 devices")


def test_criterion_04_profile_checkpoints():
    """Error-profile checkpoints hold within one percentage point."""
    checkpoints = [
        ([0.1, 0.3, 0.5], 1, 32.0, 37.0),
        ([0.1, 0.2, 0.2, 0.3], 1, 34.0, 36.0),
        ([0.1, 0.2, 0.2, 0.3], 2, 4.5, 5.0),
        ([0.1, 0.2, 0.2, 0.3, 0.2], 1, 47.0, 48.0),
        ([0.1, 0.2, 0.2, 0.3, 0.2], 2, 10.0, 11.0),
        ([0.1, 0.2, 0.2, 0.3, 0.2], 3, 1.0, 1.0),
    ]
    for probs, m, exact_pct, approx_pct in checkpoints:
        exact = dict(error_profile(probs, "exact", len(probs)).entries)[m]
        approx = dict(error_profile(probs, "approx", len(probs)).entries)[m]
        assert abs(100 * exact - exact_pct) <= 1.0, (probs, m, 100 * exact)
        assert abs(100 * approx - approx_pct) <= 1.0, (probs, m, 100 * approx)
    _report(4, "profile checkpoints within one percentage point")


def test_criterion_05_oracle_equivalence(corpus):
    """Exact, complete series, and subset enumeration pairwise agree."""
    start = time.perf_counter()
    worst = 0.0
    for probs in corpus:
        exact = exact_union(probs)
        series = truncated_union_general(probs, probs.size).value
        enumerated = subset_inclusion_exclusion(probs)
        reference = exact if exact > 0 else 1.0
        worst = max(
            worst,
            abs(exact - series) / reference,
            abs(exact - enumerated) / reference,
            abs(series - enumerated) / reference,
        )
    elapsed = time.perf_counter() - start
    assert worst <= 1e-10, worst
    assert elapsed < 30.0
    _report(5, f"oracle equivalence over {len(corpus)} vectors (worst {worst:.2e})")


def test_criterion_06_bonferroni_bracketing(corpus):
    """Odd partial sums overshoot, even ones undershoot; zero violations."""
    violations = 0
    for probs in corpus:
        exact = exact_union(probs)
        expansion = expand_series(probs, probs.size)
        for m, partial in enumerate(expansion.partial_sums, start=1):
            if m % 2 == 1 and not partial >= exact - 1e-10:
                violations += 1
            if m % 2 == 0 and not partial <= exact + 1e-10:
                violations += 1
    assert violations == 0
    _report(6, "Bonferroni bracketing, zero violations")


def test_criterion_07_mean_approximation_conservative(corpus):
    """The mean-probability union never exceeds the exact union."""
    violations = 0
    for probs in corpus:
        mean = mean_probability(probs)
        if exact_union_equal(mean, probs.size) > exact_union(probs):
            violations += 1
    assert violations == 0
    _report(7, "mean approximation conservative, zero violations")


def test_criterion_08_min_terms_contract():
    """Minimum-term search returns the documented first crossings."""
    result = min_terms_for_error(0.01, 100, 0.01)
    assert result.num_terms == 5
    assert result.achieved_error <= 0.01
    assert approx_error_at_mean(0.01, 100, 4) > 0.01

    result = min_terms_for_error(0.1, 100, 0.001)
    assert result.num_terms == 27
    assert result.achieved_error <= 0.001
    assert approx_error_at_mean(0.1, 100, 26) > 0.001
    _report(8, "minimum-terms first-crossing contract")


def test_criterion_09_performance():
    """Large-scale calls stay under a second each."""
    rng = np.random.default_rng(1)
    probs = rng.random(10_000)
    start = time.perf_counter()
    truncated_union_general(probs, 100)
    dp_elapsed = time.perf_counter() - start
    assert dp_elapsed < 1.0, dp_elapsed

    big = rng.uniform(0.0, 1e-6, 1_000_000)
    start = time.perf_counter()
    value = exact_union(big)
    union_elapsed = time.perf_counter() - start
    assert union_elapsed < 1.0, union_elapsed
    assert 0.0 < value < 1.0

    values = [log_binomial(300, k) for k in range(301)]
    assert all(math.isfinite(v) for v in values)
    assert max(values) == pytest.approx(math.log(math.comb(300, 150)), rel=1e-12)
    _report(
        9,
        f"performance (DP {dp_elapsed * 1e3:.0f} ms, union {union_elapsed * 1e3:.0f} ms)",
    )


def test_criterion_10_monte_carlo_sanity():
    """Seeded Monte Carlo lands within 3 standard errors and repeats."""
    first = bernoulli_monte_carlo([0.5, 0.5], 10**6, seed=20260808)
    assert abs(first.estimate - 0.75) <= 3 * first.standard_error
    second = bernoulli_monte_carlo([0.5, 0.5], 10**6, seed=20260808)
    assert first == second
    _report(10, f"Monte Carlo sanity (estimate {first.estimate:.6f})")
