"""Figure rendering for the CLI report path (PNG files, Agg backend)."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_convergence(history, path):
    """Objective / eigenvalue-sum / gamma / component traces over iterations."""
    its = [rec["iteration"] for rec in history]
    obj = [rec["objective"] for rec in history]
    have_spectral = history and history[0].get("eig_sum") is not None

    if have_spectral:
        fig, axes = plt.subplots(2, 2, figsize=(9, 6), sharex=True)
        panels = [
            (axes[0, 0], obj, "objective", "plot", {}),
            (axes[0, 1], [max(r["eig_sum"], 1e-16) for r in history],
             "sum of c smallest eigenvalues", "semilogy", {}),
            (axes[1, 0], [r["gamma"] for r in history], "gamma", "semilogy", {"drawstyle": "steps-post"}),
            (axes[1, 1], [r["components"] for r in history], "components", "plot",
             {"drawstyle": "steps-post"}),
        ]
        for ax, series, title, kind, kw in panels:
            getattr(ax, kind)(its, series, marker=".", **kw)
            ax.set_title(title)
            ax.grid(alpha=0.3)
        for ax in axes[1]:
            ax.set_xlabel("iteration")
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot(its, obj, marker=".")
        ax.set_xlabel("iteration")
        ax.set_ylabel("objective")
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_kernel_weights(weights, path):
    """Bar chart of learned kernel weights."""
    names = [w["kernel"] for w in weights]
    vals = [w["weight"] for w in weights]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(names)), 4))
    ax.bar(range(len(vals)), vals)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("weight")
    ax.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_points(X, labels, path):
    """Scatter of 2-D samples colored by their assigned labels."""
    X = np.asarray(X, dtype=float)
    labels = np.asarray(labels)
    fig, ax = plt.subplots(figsize=(5, 5))
    for cls in np.unique(labels):
        pts = X[labels == cls]
        ax.scatter(pts[:, 0], pts[:, 1], s=14, label=str(cls))
    ax.set_aspect("equal")
    ax.legend(title="label", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(report, X, labels, outdir):
    """Write the figures a report supports into outdir; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    if report.history:
        written.append(plot_convergence(report.history, os.path.join(outdir, "convergence.png")))
    if report.weights:
        written.append(plot_kernel_weights(report.weights, os.path.join(outdir, "kernel_weights.png")))
    if X is not None and np.asarray(X).shape[1] == 2:
        written.append(plot_points(X, labels, os.path.join(outdir, "assignments.png")))
    return written
