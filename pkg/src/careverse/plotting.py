"""Figures written next to the CSV / JSON-lines reports."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .survey import BenchRecord, NodeStats, SurveyRow  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(axis="both", labelsize=8)
    ax.grid(alpha=0.25, linewidth=0.6)
    ax.set_axisbelow(True)


def plot_bench(records: Sequence[BenchRecord], path: str) -> str:
    """Mean time per rule for both deciders, and their ratio, against m."""
    records = sorted(records, key=lambda r: r.m)
    fig, (times, ratio) = plt.subplots(1, 2, figsize=(7.5, 3), dpi=150)
    done = [r for r in records if r.table_mean_ms is not None]
    tree = [r for r in records if r.tree_mean_ms is not None]
    times.semilogy([r.m for r in tree], [r.tree_mean_ms for r in tree], "o-", label="injectivity tree")
    times.semilogy([r.m for r in done], [r.table_mean_ms for r in done], "s--", label="sequent table")
    failed = [r.m for r in records if r.table_memory_failures]
    if failed:
        top = max([r.table_mean_ms for r in done] + [r.tree_mean_ms for r in tree] + [1.0])
        times.plot(failed, [top] * len(failed), "x", color="tab:red", label="table out of memory")
    times.set_xlabel("neighborhood size m", fontsize=9)
    times.set_ylabel("mean time per rule (ms)", fontsize=9)
    times.legend(fontsize=7, frameon=False)
    ratio.plot([r.m for r in done if r.ratio], [r.ratio for r in done if r.ratio], "o-", color="k")
    ratio.axhline(1.0, color="grey", linewidth=0.8)
    ratio.set_xlabel("neighborhood size m", fontsize=9)
    ratio.set_ylabel("table time / tree time", fontsize=9)
    for ax in (times, ratio):
        _style(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_node_stats(stats: Sequence[NodeStats], path: str) -> str:
    stats = sorted(stats, key=lambda s: s.m)
    fig, ax = plt.subplots(figsize=(4, 3), dpi=150)
    ms = [s.m for s in stats]
    ax.semilogy(ms, [s.mean_tuples for s in stats], "o-", label="mean tuples at termination")
    ax.semilogy(ms, [s.bound for s in stats], "k--", linewidth=0.9, label="2^(2m-1)")
    ax.set_xlabel("neighborhood size m", fontsize=9)
    ax.set_ylabel("tuples", fontsize=9)
    ax.legend(fontsize=7, frameon=False)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_survey(rows: Sequence[SurveyRow], path: str) -> str:
    fig, ax = plt.subplots(figsize=(max(3.0, 0.8 * len(rows) + 1), 3), dpi=150)
    labels = [f"m={r.m}\n{r.boundary}" for r in rows]
    bars = ax.bar(range(len(rows)), [r.count for r in rows], color="tab:blue")
    for bar, row in zip(bars, rows):
        ax.annotate(str(row.count), (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=7)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("qualifying rules", fontsize=9)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
