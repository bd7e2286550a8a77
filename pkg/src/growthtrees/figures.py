"""Render sweep tables as figures, written next to the CSV output.

The CSV stays the machine-readable contract; these panels are the human
view of the same rows.  Everything routes through the Agg backend so the
renderer works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweeps import NA, SweepRow

_MARKERS = ["o", "s", "D", "^", "v", "P", "X"]


def _series(rows: list[SweepRow], m: int) -> list[SweepRow]:
    return sorted((r for r in rows if r.m == m), key=lambda r: r.t)


def _m_values(rows: list[SweepRow]) -> list[int]:
    return sorted({r.m for r in rows})


def render_mean_distance(rows: list[SweepRow], path: str) -> None:
    """Mean geodesic distance against t: exact lines, approximation and
    enumeration-oracle markers."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for i, m in enumerate(_m_values(rows)):
        series = _series(rows, m)
        ts = [r.t for r in series]
        ax.plot(ts, [float(r.avg_exact) for r in series],
                color=f"C{i}", lw=1.4, label=f"m={m} exact")
        ax.plot(ts, [float(r.avg_approx) for r in series],
                color=f"C{i}", ls="none", marker=_MARKERS[i % len(_MARKERS)],
                mfc="none", ms=5, label=f"m={m} approx")
        oracle = [(r.t, float(r.avg_oracle)) for r in series if r.avg_oracle != NA]
        if oracle:
            ax.plot(*zip(*oracle), color=f"C{i}", ls="none", marker="+", ms=7)
    ax.set_yscale("log")
    ax.set_xlabel("growth step t")
    ax.set_ylabel("mean geodesic distance")
    ax.legend(fontsize=7, ncol=2, frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_mfpt(rows: list[SweepRow], path: str) -> None:
    """MFPT against vertex count, log-log: exact lines, stated
    approximation as open markers, Monte Carlo estimates as crosses."""
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for i, m in enumerate(_m_values(rows)):
        series = _series(rows, m)
        ns = [float(r.n_t) for r in series]
        ax.plot(ns, [float(r.mfpt_exact) for r in series],
                color=f"C{i}", lw=1.4, label=f"m={m} exact")
        ax.plot(ns, [float(r.mfpt_theorem) for r in series],
                color=f"C{i}", ls="none", marker=_MARKERS[i % len(_MARKERS)],
                mfc="none", ms=5, label=f"m={m} approx")
        mc = [(float(r.n_t), float(r.mfpt_mc)) for r in series if r.mfpt_mc != NA]
        if mc:
            ax.plot(*zip(*mc), color=f"C{i}", ls="none", marker="x", ms=7)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("vertex count")
    ax.set_ylabel("mean first-passage time")
    ax.legend(fontsize=7, ncol=2, frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_custom(rows: list[SweepRow], path: str) -> None:
    """Distance sum and MFPT of one sweep against t, log scale."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(9.0, 4.0))
    series = sorted(rows, key=lambda r: r.t)
    ts = [r.t for r in series]
    left.plot(ts, [float(r.s_exact) for r in series], "C0", lw=1.4)
    left.set_yscale("log")
    left.set_xlabel("growth step t")
    left.set_ylabel("geodesic distance sum")
    right.plot(ts, [float(r.mfpt_exact) for r in series], "C1", lw=1.4,
               label="exact")
    right.plot(ts, [float(r.mfpt_theorem) for r in series], "C1", ls="none",
               marker="o", mfc="none", label="approx")
    right.set_yscale("log")
    right.set_xlabel("growth step t")
    right.set_ylabel("MFPT")
    right.legend(fontsize=8, frameon=False)
    for ax in (left, right):
        ax.spines["right"].set_visible(False)
        ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
