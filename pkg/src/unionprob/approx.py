"""Mean-probability approximation and truncation-error reporting.

Replacing every event probability by the arithmetic mean turns the union
into the equal-probability closed form ``1 - (1 - mean)**n``. The
approximate value is always an overestimate of the true union (AM-GM on
the survival factors), which makes it a conservative planning figure, and
empirically its truncation errors track the true series' errors closely
from above.

Errors are kept as dimensionless fractions throughout; multiply by 100
only when formatting. This avoids baking percent-vs-fraction confusion
into any interface.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .core import (
    _as_count,
    _as_probability,
    as_probability_array,
    exact_union,
    exact_union_equal,
    mean_probability,
)
from .series import (
    elementary_symmetric_prefix,
    expand_series,
    expand_series_equal,
    log_binomial,
    truncated_union_equal,
    truncated_union_general,
)
from .summation import NeumaierSum

__all__ = [
    "ErrorReport",
    "ErrorProfile",
    "MinTermsResult",
    "ComparisonRow",
    "relative_error",
    "error_report",
    "exact_error_at",
    "approx_error_at",
    "approx_error_at_mean",
    "error_profile",
    "min_terms_for_error",
    "min_terms_for_error_general",
    "compare_row",
    "max_error_table",
]


@dataclass(frozen=True)
class ErrorReport:
    """A reference value, a truncated value, and their relative distance."""

    reference: float
    truncated: float
    relative_error: float


@dataclass(frozen=True)
class ErrorProfile:
    """Relative truncation error as a function of the number of terms.

    ``mode`` is ``"exact"`` (true series against the true union) or
    ``"approx"`` (mean-probability series against the mean-probability
    union). ``entries`` holds ``(m, relative_error)`` pairs for
    ``m = 1..m_max``; this is the data series behind an error-vs-terms
    plot.
    """

    mode: str
    entries: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class MinTermsResult:
    """Smallest term count whose truncation error meets a requirement."""

    required_error: float
    achieved_error: float
    num_terms: int


@dataclass(frozen=True)
class ComparisonRow:
    """One comparison of exact union vs mean-probability approximation.

    When ``m`` is set, ``exact_error`` and ``approx_error`` carry the
    m-term relative truncation errors of the two series.
    """

    probs: tuple[float, ...]
    n: int
    mean: float
    exact: float
    approx: float
    m: int | None = None
    exact_error: float | None = None
    approx_error: float | None = None


def relative_error(reference: float, truncated: float) -> float:
    """Relative truncation error ``|reference - truncated| / reference``.

    The reference must be a positive finite number; a zero reference means
    every event probability was zero and the ratio is undefined.
    """
    reference = float(reference)
    if not (math.isfinite(reference) and reference > 0.0):
        raise ValueError(f"reference must be positive and finite, got {reference!r}")
    return abs(reference - float(truncated)) / reference


def error_report(reference: float, truncated: float) -> ErrorReport:
    """Bundle a reference/truncated pair with its relative error."""
    return ErrorReport(
        float(reference), float(truncated), relative_error(reference, truncated)
    )


def exact_error_at(probs: Sequence[float] | np.ndarray, m: int) -> float:
    """Relative error of the m-term general series against the exact union."""
    arr = as_probability_array(probs)
    return relative_error(exact_union(arr), truncated_union_general(arr, m).value)


def approx_error_at(probs: Sequence[float] | np.ndarray, m: int) -> float:
    """Relative error of the m-term mean-probability series.

    The mean of the probs is taken at full precision, then both the
    reference (``1 - (1 - mean)**n``) and the truncation use that mean.
    """
    arr = as_probability_array(probs)
    return approx_error_at_mean(mean_probability(arr), arr.size, m)


def approx_error_at_mean(mean_p: float, n: int, m: int) -> float:
    """Same as :func:`approx_error_at`, but from an already-computed mean."""
    return relative_error(
        exact_union_equal(mean_p, n), truncated_union_equal(mean_p, n, m).value
    )


def error_profile(
    probs: Sequence[float] | np.ndarray, mode: str, m_max: int
) -> ErrorProfile:
    """Per-m truncation errors for ``m = 1..m_max`` in one pass.

    Each entry is bit-identical to calling :func:`exact_error_at` or
    :func:`approx_error_at` at that ``m``; the series is only expanded
    once. The final entry vanishes (up to float noise) when
    ``m_max == n``.
    """
    arr = as_probability_array(probs)
    if mode == "exact":
        expansion = expand_series(arr, m_max)
        reference = exact_union(arr)
    elif mode == "approx":
        expansion = expand_series_equal(mean_probability(arr), arr.size, m_max)
        reference = exact_union_equal(mean_probability(arr), arr.size)
    else:
        raise ValueError(f"mode must be 'exact' or 'approx', got {mode!r}")
    entries = tuple(
        (m, relative_error(reference, partial))
        for m, partial in enumerate(expansion.partial_sums, start=1)
    )
    return ErrorProfile(mode, entries)


def min_terms_for_error(p: float, n: int, required_error: float) -> MinTermsResult:
    """Fewest equal-probability series terms meeting a required error.

    Scans ``m = 1, 2, ...`` adding one term per step to a running
    compensated sum and comparing against ``1 - (1 - p)**n``; returns at
    the first crossing, so every smaller ``m`` is known to miss the
    requirement. ``p`` must lie strictly inside (0, 1): at 0 the
    reference degenerates and at 1 the union is trivially certain.

    The error at ``m = n`` is zero up to float noise (~1e-15), so any
    realistic requirement terminates; a requirement below that noise
    floor raises ValueError rather than returning a result that misses it.
    """
    p = _as_probability(p)
    if p in (0.0, 1.0):
        raise ValueError(f"p must be strictly between 0 and 1, got {p}")
    n = _as_count(n)
    required_error = float(required_error)
    if not required_error > 0.0:
        raise ValueError(f"required_error must be positive, got {required_error!r}")

    reference = exact_union_equal(p, n)
    log_p = math.log(p)
    acc = NeumaierSum()
    err = math.inf
    for m in range(1, n + 1):
        magnitude = math.exp(log_binomial(n, m) + m * log_p)
        acc.add(magnitude if m % 2 == 1 else -magnitude)
        err = relative_error(reference, acc.value)
        if err <= required_error:
            return MinTermsResult(required_error, err, m)
    raise ValueError(
        f"required_error={required_error:g} is below the floating-point noise "
        f"floor; the complete {n}-term sum still leaves {err:.3e}"
    )


def min_terms_for_error_general(
    probs: Sequence[float] | np.ndarray, required_error: float
) -> MinTermsResult:
    """Fewest general-series terms meeting a required error.

    The unequal-probability counterpart of :func:`min_terms_for_error`:
    symmetric-polynomial terms against the exact union, same incremental
    first-crossing scan, guaranteed termination by ``m = n``.
    """
    arr = as_probability_array(probs)
    required_error = float(required_error)
    if not required_error > 0.0:
        raise ValueError(f"required_error must be positive, got {required_error!r}")
    reference = exact_union(arr)
    if reference == 0.0:
        raise ValueError("all event probabilities are zero; relative error is undefined")

    magnitudes = elementary_symmetric_prefix(arr, arr.size)
    acc = NeumaierSum()
    err = math.inf
    for m, magnitude in enumerate(magnitudes, start=1):
        acc.add(float(magnitude) if m % 2 == 1 else -float(magnitude))
        err = relative_error(reference, acc.value)
        if err <= required_error:
            return MinTermsResult(required_error, err, m)
    raise ValueError(
        f"required_error={required_error:g} is below the floating-point noise "
        f"floor; the complete {arr.size}-term sum still leaves {err:.3e}"
    )


def compare_row(
    probs: Sequence[float] | np.ndarray, m: int | None = None
) -> ComparisonRow:
    """Exact union vs mean-probability union for one event set.

    With ``m`` given, the row also carries both series' m-term truncation
    errors. The approximate union never exceeds the exact one.
    """
    arr = as_probability_array(probs)
    mean = mean_probability(arr)
    exact = exact_union(arr)
    approx = exact_union_equal(mean, arr.size)
    if m is None:
        return ComparisonRow(
            probs=tuple(float(p) for p in arr),
            n=arr.size,
            mean=mean,
            exact=exact,
            approx=approx,
        )
    return ComparisonRow(
        probs=tuple(float(p) for p in arr),
        n=arr.size,
        mean=mean,
        exact=exact,
        approx=approx,
        m=m,
        exact_error=exact_error_at(arr, m),
        approx_error=approx_error_at_mean(mean, arr.size, m),
    )


def max_error_table(
    mean_p: float, n: int, m_values: Iterable[int]
) -> list[tuple[int, float]]:
    """Mean-probability truncation error for each requested term count.

    The mean-based error upper-bounds the true series' error in practice
    (observed on every published case, not proven), so these figures serve
    as worst-case error estimates when only the mean is known.
    """
    mean_p = _as_probability(mean_p, name="mean_p")
    n = _as_count(n)
    return [(m, approx_error_at_mean(mean_p, n, m)) for m in m_values]
