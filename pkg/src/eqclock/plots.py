"""Figure rendering for the CLI report paths (written next to the data files)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .estimation import OutcomeDistribution
from .experiments import BaselineRecord, ScalingRecord, fit_loglog_slope


def plot_distribution(dist: OutcomeDistribution, path: str | Path) -> None:
    """Outcome probabilities with the target index N*theta marked."""
    N = dist.config.dimension
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(np.arange(N), dist.probabilities, width=0.8, color="#34618f")
    ax.axvline(N * dist.theta_true.theta, color="#b5441c", ls="--", lw=1.2,
               label=f"N*theta = {N * dist.theta_true.theta:g}")
    ax.set_xlabel("outcome j")
    ax.set_ylabel("probability")
    ax.set_title(f"readout distribution, n={dist.config.n}, theta={dist.theta_true.theta:g}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_scaling(records: list[ScalingRecord], path: str | Path) -> None:
    """Log-log error scaling against the total clock budget."""
    clocks = [r.clock_count for r in records]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(clocks, [r.delta_theta for r in records], "o-", color="#34618f",
              label="tolerance width gamma/N")
    rmse = [r.empirical_rmse for r in records]
    slope = fit_loglog_slope(clocks, rmse)
    ax.loglog(clocks, rmse, "s-", color="#2d7a43",
              label=f"within-tolerance RMSE (slope {slope:.2f})")
    ax.loglog(clocks, [r.empirical_rmse_all for r in records], "^--", color="#777777",
              label="unconditional RMSE")
    if records and records[0].baseline_rmse is not None:
        base = [r.baseline_rmse for r in records]
        bslope = fit_loglog_slope(clocks, base)
        ax.loglog(clocks, base, "d-", color="#b5441c",
                  label=f"repeated-pair RMSE (slope {bslope:.2f})")
    ax.set_xlabel("total clocks")
    ax.set_ylabel("phase-fraction error")
    ax.set_title("uncertainty scaling vs clock budget")
    ax.grid(True, which="both", ls=":", alpha=0.5)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_certification(rows: list[dict], path: str | Path) -> None:
    """Observed-to-ceiling ratios for every swept (n, gamma) cell."""
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    ns = sorted({row["n"] for row in rows})
    for n in ns:
        sub = [row for row in rows if row["n"] == n]
        gammas = [row["gamma"] for row in sub]
        axes[0].plot(gammas, [row["tail_ratio"] for row in sub], "o-", ms=3, label=f"n={n}")
    axes[0].axhline(1.0, color="k", lw=1)
    axes[0].set_xlabel("gamma")
    axes[0].set_ylabel("max tail / ceiling")
    axes[0].set_xscale("log")
    axes[0].legend(fontsize="x-small", ncol=2)
    amp = [max(row["max_amplitude_ratio"] for row in rows if row["n"] == n) for n in ns]
    axes[1].plot(ns, amp, "s-", color="#2d7a43")
    axes[1].axhline(1.0, color="k", lw=1)
    axes[1].set_xlabel("n")
    axes[1].set_ylabel("max |amplitude| x 2d")
    axes[1].set_ylim(0, 1.1)
    fig.suptitle("certified ceilings: observed ratios (must stay at or below 1)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_baseline(records: list[BaselineRecord], path: str | Path) -> None:
    """Repeated-pair estimator error against clock count, with slope."""
    clocks = [r.clock_count for r in records]
    rmse = [r.empirical_rmse for r in records]
    slope = fit_loglog_slope(clocks, rmse)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(clocks, rmse, "o-", color="#b5441c", label=f"empirical RMSE (slope {slope:.2f})")
    ax.loglog(clocks, [r.delta_method_std_error for r in records], "--", color="#777777",
              label="delta-method prediction")
    ax.set_xlabel("total clocks")
    ax.set_ylabel("phase-fraction error")
    ax.set_title("repeated-pair baseline scaling")
    ax.grid(True, which="both", ls=":", alpha=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
