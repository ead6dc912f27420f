"""Uniform periodic grid on a square and the discrete inner products on it.

Fields are plain float arrays of shape ``(N, N)``, indexed ``[i, j]`` for the
node ``(x_i, y_j)`` with ``x_i = -L + i*h``.  The node at ``+L`` is identified
with the one at ``-L``, so only the N unique nodes per direction are stored
and every quadrature weight is ``h**2``.  On periodic data this is exactly the
trapezoidal rule of the (N+1)-node closed grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid2D",
    "make_grid",
    "nodes",
    "meshes",
    "inner",
    "norm_l2",
    "norm_inf",
    "min_max",
]


@dataclass(frozen=True)
class Grid2D:
    """Uniform N x N periodic grid covering [-L, L)^2 with spacing h = 2L/N."""

    L: float
    N: int
    h: float


def make_grid(L: float, N: int) -> Grid2D:
    """Build a periodic grid on [-L, L)^2 with N unique nodes per direction."""
    if not L > 0.0:
        raise ValueError(f"half-width L must be positive, got {L}")
    if N < 4:
        raise ValueError(f"need at least 4 nodes per direction, got {N}")
    return Grid2D(L=float(L), N=int(N), h=2.0 * float(L) / int(N))


def nodes(g: Grid2D) -> np.ndarray:
    """Unique node coordinates -L + i*h for i = 0..N-1 (shared by both axes)."""
    return -g.L + g.h * np.arange(g.N)


def meshes(g: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate arrays X, Y with X[i, j] = x_i and Y[i, j] = y_j."""
    x = nodes(g)
    return np.meshgrid(x, x, indexing="ij")


def _check_field(u: np.ndarray, g: Grid2D) -> np.ndarray:
    u = np.asarray(u)
    if u.shape != (g.N, g.N):
        raise ValueError(f"field shape {u.shape} does not match grid ({g.N}, {g.N})")
    return u


def inner(u: np.ndarray, v: np.ndarray, g: Grid2D) -> float:
    """Discrete L2 inner product h^2 * sum(u * v) over the unique nodes."""
    u = _check_field(u, g)
    v = _check_field(v, g)
    return g.h ** 2 * float(np.sum(u * v))


def norm_l2(u: np.ndarray, g: Grid2D) -> float:
    """Discrete L2 norm, sqrt(inner(u, u))."""
    u = _check_field(u, g)
    return g.h * float(np.linalg.norm(u))


def norm_inf(u: np.ndarray) -> float:
    """Maximum absolute nodal value."""
    u = np.asarray(u)
    if u.size == 0:
        raise ValueError("empty field")
    return float(np.max(np.abs(u)))


def min_max(u: np.ndarray) -> tuple[float, float]:
    """Smallest and largest nodal value."""
    u = np.asarray(u)
    if u.size == 0:
        raise ValueError("empty field")
    return float(u.min()), float(u.max())
