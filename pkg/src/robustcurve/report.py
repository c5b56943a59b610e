"""Figure rendering for the report path: attack-curve bands and robustness scatter.

Figures are written straight to files (Agg backend) next to the CSV/JSON
outputs they illustrate; nothing here is interactive.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_CURVE_COLOR = "#1f77b4"
_SIM_COLOR = "#d62728"


def _grid(length: int) -> np.ndarray:
    return np.arange(length) / length


def plot_curve(curve, path: str, title: str = "", ylabel: str = "G(p)") -> None:
    """Single attack curve over the removal-fraction grid."""
    curve = np.asarray(curve, dtype=float)
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(_grid(len(curve)), curve, color=_CURVE_COLOR, lw=1.2)
    ax.set_xlabel("p")
    ax.set_ylabel(ylabel)
    ax.set_ylim(-0.02, 1.02)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_band(mean_curve, std_curve, path: str, title: str = "", label: str = "simulated") -> None:
    """Mean curve with a +/- one-std shaded band."""
    mean_curve = np.asarray(mean_curve, dtype=float)
    std_curve = np.asarray(std_curve, dtype=float)
    p = _grid(len(mean_curve))
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(p, mean_curve, color=_CURVE_COLOR, lw=1.2, label=label)
    ax.fill_between(p, mean_curve - std_curve, mean_curve + std_curve,
                    color=_CURVE_COLOR, alpha=0.25, lw=0)
    ax.set_xlabel("p")
    ax.set_ylabel("G(p)")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_comparison(
    pred_mean, pred_std, sim_mean, sim_std, path: str, title: str = ""
) -> None:
    """Predicted vs simulated mean curves, each with its std band."""
    pred_mean = np.asarray(pred_mean, dtype=float)
    sim_mean = np.asarray(sim_mean, dtype=float)
    p = _grid(len(sim_mean))
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    ax.plot(p, sim_mean, color=_SIM_COLOR, lw=1.2, label="simulated")
    ax.fill_between(p, sim_mean - np.asarray(sim_std), sim_mean + np.asarray(sim_std),
                    color=_SIM_COLOR, alpha=0.2, lw=0)
    ax.plot(p, pred_mean, color=_CURVE_COLOR, lw=1.2, ls="--", label="predicted")
    ax.fill_between(p, pred_mean - np.asarray(pred_std), pred_mean + np.asarray(pred_std),
                    color=_CURVE_COLOR, alpha=0.2, lw=0)
    ax.set_xlabel("p")
    ax.set_ylabel("G(p)")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_robustness_scatter(r_sim, r_pred, path: str, title: str = "") -> None:
    """Direct robustness predictions against simulated values, with y=x."""
    r_sim = np.asarray(r_sim, dtype=float)
    r_pred = np.asarray(r_pred, dtype=float)
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    lo = min(r_sim.min(), r_pred.min()) - 0.02
    hi = max(r_sim.max(), r_pred.max()) + 0.02
    ax.plot([lo, hi], [lo, hi], color="gray", lw=0.8, ls=":")
    ax.scatter(r_sim, r_pred, s=14, color=_CURVE_COLOR, alpha=0.7)
    ax.set_xlabel("simulated R")
    ax.set_ylabel("predicted R")
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
