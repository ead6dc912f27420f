"""File outputs of a run: snapshots, figures, and text summaries.

Snapshots are written twice: a 16-bit binary PGM with a fixed linear value
map (the regression-friendly format, byte-stable across runs) and a rendered
PNG for the eyeball.  Scalar histories get matplotlib figures next to the
diagnostics CSV.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .diagnostics import StepRecord, records_array
from .grid import Grid2D

__all__ = [
    "snapshot_name",
    "write_pgm",
    "save_field_png",
    "save_energy_figure",
    "save_bounds_figure",
    "save_convergence_figure",
]


def snapshot_name(t: float) -> str:
    return f"snap_t{t:g}"


def write_pgm(phi: np.ndarray, beta: float, path: str | Path) -> None:
    """16-bit grayscale PGM with values mapped linearly from [-beta, beta].

    -beta maps to 0, +beta to 65535; out-of-range values are clipped.  Rows
    run from y = +L at the top down to y = -L, so the image is oriented like
    the rendered figures.
    """
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    phi = np.asarray(phi, dtype=float)
    scaled = np.clip((phi + beta) / (2.0 * beta), 0.0, 1.0)
    levels = np.round(scaled * 65535.0).astype(">u2")
    rows = levels.T[::-1]  # [i, j] indexes (x, y); image rows scan y downward
    header = f"P5\n{phi.shape[0]} {phi.shape[1]}\n65535\n".encode("ascii")
    Path(path).write_bytes(header + rows.tobytes())


def save_field_png(
    phi: np.ndarray, g: Grid2D, beta: float, t: float, path: str | Path
) -> None:
    """Render the field as a filled color map with the invariant bounds as limits."""
    fig, ax = plt.subplots(figsize=(4.6, 4.0))
    im = ax.imshow(
        phi.T,
        origin="lower",
        extent=(-g.L, g.L, -g.L, g.L),
        cmap="RdBu_r",
        vmin=-beta,
        vmax=beta,
        interpolation="nearest",
    )
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"t = {t:g}")
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_energy_figure(records: Sequence[StepRecord], path: str | Path) -> None:
    """Original and modified energy against time."""
    data = records_array(records)
    fig, ax = plt.subplots(figsize=(5.4, 3.8))
    ax.plot(data[:, 1], data[:, 2], label="original energy", lw=1.2)
    ax.plot(data[:, 1], data[:, 3], label="modified energy", lw=1.2, ls="--")
    ax.set_xlabel("t")
    ax.set_ylabel("energy")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bounds_figure(
    records: Sequence[StepRecord], beta: float, path: str | Path
) -> None:
    """Sup norm and min/max envelope against time, with the bound +-beta drawn."""
    data = records_array(records)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax1.plot(data[:, 1], data[:, 4], lw=1.2)
    ax1.axhline(beta, color="k", ls=":", lw=1.0)
    ax1.set_xlabel("t")
    ax1.set_ylabel("sup norm")
    ax2.plot(data[:, 1], data[:, 5], label="min", lw=1.2)
    ax2.plot(data[:, 1], data[:, 6], label="max", lw=1.2)
    ax2.axhline(beta, color="k", ls=":", lw=1.0)
    ax2.axhline(-beta, color="k", ls=":", lw=1.0)
    ax2.set_xlabel("t")
    ax2.set_ylabel("field range")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_convergence_figure(
    taus: Sequence[float],
    errors_by_scheme: dict[str, Sequence[float]],
    path: str | Path,
) -> None:
    """Log-log error against step size with first and second order guides."""
    taus = np.asarray(taus, dtype=float)
    fig, ax = plt.subplots(figsize=(5.0, 3.9))
    for label, errs in errors_by_scheme.items():
        ax.loglog(taus, errs, "o-", label=label, lw=1.2, ms=4)
    anchor = min(min(e) for e in errors_by_scheme.values())
    ax.loglog(taus, anchor * (taus / taus.min()) ** 1, "k:", lw=0.9, label="slope 1")
    ax.loglog(taus, anchor * (taus / taus.min()) ** 2, "k--", lw=0.9, label="slope 2")
    ax.set_xlabel("tau")
    ax.set_ylabel("L2 error at T")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
