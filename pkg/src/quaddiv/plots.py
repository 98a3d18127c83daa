"""Figure rendering for scan and bound reports.

Each function takes already-computed report data and writes one PNG,
returning the path it wrote.  The Agg backend is forced so rendering
works without a display.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .bounds import BoundReport
from .divisor_sums import ScanTable

MAIN_TERM = 6 / math.pi**2


def plot_scan(scan: ScanTable, path: str | os.PathLike[str]) -> str:
    """Render S(N) / (N ln^2 N) against N with the 6/pi^2 reference line.

    If a least-squares fit is attached to the table, the fitted model
    (a ln^2 N + b ln N + c) / ln^2 N is drawn through the data.
    """
    if not scan.rows:
        raise ValueError("scan table has no rows")
    ns = [row[0] for row in scan.rows]
    ratios = [row[2] for row in scan.rows]

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.semilogx(ns, ratios, "o-", ms=4, lw=1, label="S(N) / (N ln^2 N)")
    ax.axhline(MAIN_TERM, color="crimson", ls="--", lw=1,
               label="6/pi^2 = %.6f" % MAIN_TERM)
    if scan.fit is not None:
        a, b, c = scan.fit
        model = [(a * math.log(n) ** 2 + b * math.log(n) + c) / math.log(n) ** 2
                 for n in ns]
        ax.semilogx(ns, model, color="gray", lw=1, label="fitted model")
    ax.set_xlabel("N")
    ax.set_ylabel("normalised divisor sum")
    ax.legend(frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    out = os.fspath(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def plot_bounds(reports: list[BoundReport], path: str | os.PathLike[str]) -> str:
    """Render bound and exact curves from a sequence of reports over N.

    The reports must share (b, c).  When the specialised corollary bound
    is present it is drawn as a separate curve.
    """
    if not reports:
        raise ValueError("no reports to plot")
    pairs = {(r.b, r.c) for r in reports}
    if len(pairs) != 1:
        raise ValueError("reports mix different (b, c) pairs")
    b, c = next(iter(pairs))
    rows = sorted(reports, key=lambda r: r.n)
    ns = [r.n for r in rows]
    exacts = [r.exact for r in rows]
    mains = [r.bound for r in rows]

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.loglog(ns, mains, lw=1.2, label="explicit bound")
    if all(r.corollary_bound is not None for r in rows):
        ax.loglog(ns, [r.corollary_bound for r in rows], lw=1.2, ls="--",
                  label="specialised bound")
    ax.loglog(ns, exacts, "o-", ms=3, lw=1, color="black",
              label="exact sum")
    ax.set_xlabel("N")
    ax.set_ylabel("divisor sum up to N")
    ax.set_title("b = %d, c = %d" % (b, c))
    ax.legend(frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    out = os.fspath(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
