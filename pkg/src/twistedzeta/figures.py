"""Report figures rendered next to the delimited outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def spectrum_figure(sp, path) -> Path:
    """Counting function of the enumerated classes against the e^T/T model."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.4))
    lengths = [c.length for c in sp.classes]
    if lengths:
        xs = np.sort(lengths)
        ns = np.arange(1, len(xs) + 1)
        ax1.step(xs, ns, where="post", lw=1.5, label="enumerated N(T)")
        ts = np.linspace(max(xs[0] * 0.9, 0.5), sp.cutoff, 200)
        ax1.plot(ts, np.exp(ts) / ts, "--", lw=1, label="e^T / T")
        ax1.set_yscale("log")
        ax1.legend(fontsize=8)
        ax2.hist(lengths, bins=min(24, max(4, len(set(np.round(lengths, 6))) * 2)))
    ax1.set_xlabel("length T")
    ax1.set_ylabel("oriented classes with length <= T")
    ax2.set_xlabel("length")
    ax2.set_ylabel("classes")
    title = f"{sp.group.name} ({sp.group.mode}), cutoff {sp.cutoff:g}, {sp.attestation}"
    fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def identity_figure(report, path, title="zeta identity checks") -> Path:
    """Log-scale bars of identity gaps against their truncation budgets."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    checks = list(report.checks)
    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(checks)), 3.6))
    if checks:
        labels = [f"{c.identity.replace('_', ' ')}\ns={c.s.real:g}" for c in checks]
        gaps = [max(c.log_gap, 1e-18) for c in checks]
        budgets = [max(c.budget, 1e-18) for c in checks]
        xs = np.arange(len(checks))
        ax.bar(xs - 0.2, gaps, width=0.4, label="gap", color="tab:blue")
        ax.bar(xs + 0.2, budgets, width=0.4, label="budget", color="tab:orange")
        ax.set_yscale("log")
        ax.set_xticks(xs)
        ax.set_xticklabels(labels, fontsize=6)
        ax.legend(fontsize=8)
    ax.set_ylabel("|log gap|")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def suite_figure(checks, path, title="verification suite") -> Path:
    """One bar per suite section, green when all its checks pass."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(max(6, 0.9 * len(checks)), 3.2))
    names = [c["name"] for c in checks]
    values = [1 for _ in checks]
    colors = ["tab:green" if c["pass"] else "tab:red" for c in checks]
    xs = np.arange(len(checks))
    ax.bar(xs, values, color=colors)
    ax.set_xticks(xs)
    ax.set_xticklabels([n.replace("_", "\n") for n in names], fontsize=7)
    ax.set_yticks([])
    npass = sum(1 for c in checks if c["pass"])
    ax.set_title(f"{title}: {npass}/{len(checks)} sections pass", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
