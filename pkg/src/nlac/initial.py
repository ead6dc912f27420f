"""Initial fields for the benchmark problems."""

from __future__ import annotations

import numpy as np

from .grid import Grid2D, meshes

__all__ = ["init_cosine", "init_rings", "init_random"]


def init_cosine(g: Grid2D) -> np.ndarray:
    """Smooth product profile 0.5 cos(pi x) cos(pi y)."""
    X, Y = meshes(g)
    return 0.5 * np.cos(np.pi * X) * np.cos(np.pi * Y)


def init_rings(
    g: Grid2D,
    eps: float,
    R1: float = 0.8,
    R2: float = 0.6,
    a: float = 0.0,
    b: float = 0.0,
) -> np.ndarray:
    """Annulus of +1 phase between radii R2 and R1, centered at (a, b).

    tanh((R1-r)/(sqrt(2) eps)) - tanh((R2-r)/(sqrt(2) eps)) - 1, with r the
    distance to the center.  Values lie in [-1, 1]; the interface width
    scales with eps.
    """
    if not R1 > R2 > 0.0:
        raise ValueError(f"need R1 > R2 > 0, got R1={R1}, R2={R2}")
    if not eps > 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    X, Y = meshes(g)
    r = np.sqrt((X - a) ** 2 + (Y - b) ** 2)
    w = np.sqrt(2.0) * eps
    return np.tanh((R1 - r) / w) - np.tanh((R2 - r) / w) - 1.0


def init_random(g: Grid2D, amplitude: float = 0.5, seed: int = 0) -> np.ndarray:
    """Nodewise uniform noise: amplitude * U[-0.5, 0.5], zero mean in law.

    Deterministic for a fixed seed; the default amplitude gives values
    in [-0.25, 0.25].
    """
    if not amplitude > 0.0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")
    rng = np.random.default_rng(seed)
    return amplitude * rng.uniform(-0.5, 0.5, size=(g.N, g.N))
