"""Render error-profile figures to image files.

The profile data (relative truncation error vs number of series terms) is
what the CLI emits as CSV/JSON; this module draws the same curves with
matplotlib so a report can ship a picture next to the numbers. Rendering
always goes through the Agg backend straight to a file - no display is
needed or used.
"""

from __future__ import annotations

from collections.abc import Sequence

from .approx import ErrorProfile

_MODE_LABELS = {
    "exact": "exact series",
    "approx": "mean-probability series",
}

_MODE_STYLES = {
    "exact": dict(color="#1f77b4", marker="o"),
    "approx": dict(color="#d62728", marker="s"),
}


def save_error_profile_plot(
    profiles: Sequence[ErrorProfile],
    path: str,
    title: str | None = None,
) -> None:
    """Draw one or more error profiles into a single figure file.

    The y axis shows the relative error in percent; the x axis the number
    of retained series terms. The image format follows the file suffix
    (anything matplotlib's Agg backend can write: png, pdf, svg, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not profiles:
        raise ValueError("at least one error profile is required")

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        for profile in profiles:
            ms = [m for m, _ in profile.entries]
            pcts = [100.0 * err for _, err in profile.entries]
            style = _MODE_STYLES.get(profile.mode, {})
            ax.plot(ms, pcts, label=_MODE_LABELS.get(profile.mode, profile.mode), **style)
        ax.set_xlabel("number of terms")
        ax.set_ylabel("relative error (%)")
        if title:
            ax.set_title(title)
        ax.grid(True, alpha=0.4)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
