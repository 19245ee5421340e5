"""Figures for CLI reports, rendered off-screen."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def rank_trace_figure(trace, path, title="reduction matrix rank"):
    """trace: iterable of (n, rank, target)."""
    ns = [t[0] for t in trace]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(ns, [t[2] for t in trace], "k--", lw=1, label="column count")
    ax.plot(ns, [t[1] for t in trace], "o-", color="tab:blue", label="rank")
    ax.set_xlabel("degree n")
    ax.set_ylabel("rank")
    ax.set_title(title)
    ax.legend(frameon=False)
    return _save(fig, path)


def spectrum_figure(spectrum, path, r=None, br=None, title="reduction numbers attained"):
    fig, ax = plt.subplots(figsize=(5, 2.4))
    top = max(spectrum) if spectrum else 0
    ax.vlines(spectrum, 0, 1, color="tab:red", lw=3)
    ax.set_xlim(-0.5, top + 1.5)
    ax.set_ylim(0, 1.2)
    ax.set_yticks([])
    ax.set_xticks(range(top + 2))
    ax.set_xlabel("n")
    labels = []
    if r is not None:
        labels.append(f"r = {r}")
    if br is not None:
        labels.append(f"br = {br}")
    ax.set_title(title + (f" ({', '.join(labels)})" if labels else ""))
    return _save(fig, path)


def hilbert_figure(series: dict, path, title="Hilbert functions"):
    """series maps a label to a list of values h(0), h(1), ..."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    for label, values in series.items():
        ax.plot(range(len(values)), values, "o-", label=label, alpha=0.8)
    ax.set_xlabel("degree n")
    ax.set_ylabel("dim A_n")
    ax.set_title(title)
    ax.legend(frameon=False)
    return _save(fig, path)


def comparison_figure(pairs, path, xlabel, ylabel, title):
    """Scatter of integer pairs with the diagonal for reference."""
    fig, ax = plt.subplots(figsize=(4, 4))
    if pairs:
        xs, ys = zip(*pairs)
        ax.scatter(xs, ys, alpha=0.6)
        hi = max(max(xs), max(ys)) + 1
        ax.plot([0, hi], [0, hi], "k:", lw=1)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    return _save(fig, path)
