"""Matplotlib renderers that write figures next to the delimited output.

All functions save to a file and never open a window; the Agg backend keeps
them usable on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evolution import Measure

__all__ = ["save_measure_heatmap", "save_series_plot", "save_spectrum_plot"]


def save_measure_heatmap(m: Measure, path, title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    img = ax.imshow(m.probs.T, origin="lower", cmap="viridis")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    if title:
        ax.set_title(title)
    fig.colorbar(img, ax=ax, label="probability")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_series_plot(probabilities, path, title: str = "") -> None:
    ps = np.asarray(probabilities, dtype=float)
    running = np.cumsum(ps) / np.arange(1, len(ps) + 1)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ns = np.arange(len(ps))
    ax.plot(ns, ps, lw=0.9, alpha=0.7, label="p_n")
    ax.plot(ns, running, lw=1.6, label="running avg")
    ax.set_xlabel("step")
    ax.set_ylabel("return probability")
    ax.set_yscale("log")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_spectrum_plot(rows, path, title: str = "") -> None:
    """Eigenvalue arguments along the sweep; rows as in dump_spectrum_csv."""
    lams = np.array([r[2] for r in rows])  # (n, 4)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    idx = np.arange(lams.shape[0])
    for j in range(lams.shape[1]):
        ax.plot(idx, np.mod(np.angle(lams[:, j]) + 1e-12, 2 * np.pi),
                ".", ms=2.5, label=f"branch {j}")
    ax.set_xlabel("grid index")
    ax.set_ylabel("arg(eigenvalue)")
    ax.set_ylim(-0.2, 2 * np.pi + 0.2)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=7)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
