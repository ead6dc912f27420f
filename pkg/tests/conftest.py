"""Shared fixtures and the independent dense oracle for the nonlocal operator.

The oracle assembles the operator the long way: on the closed (N+1)^2 grid
that carries both copies of the periodic boundary, with trapezoidal weights
(one half on edges, one quarter on corners), and only afterwards identifies
the duplicated nodes.  The library never touches this representation, so
agreement between the two is a real cross-check of the circulant/FFT path.
"""

from __future__ import annotations

import numpy as np
import pytest

from nlac.grid import make_grid
from nlac.kernel import gaussian_kernel
from nlac.nonlocal_op import NonlocalOperator


def closed_grid_operator(delta: float, L: float, N: int) -> np.ndarray:
    """Dense matrix of u -> (J*1) u - J*u on the unique-node space.

    Assembled via the closed grid x_i = -L + i*h, i = 0..N, with trapezoidal
    weights w_0 = w_N = 1/2, evaluating the periodized Gaussian at the
    nearest-image displacement.  The duplicated boundary nodes are folded
    back onto the unique-node space at the end.
    """
    h = 2.0 * L / N
    c = 4.0 / (np.pi * delta ** 4)

    # kernel factor per axis at integer displacement o in [-N, N]
    offs = np.arange(-N, N + 1)
    rep = ((offs + N // 2) % N) - N // 2  # nearest periodic image
    j1 = np.exp(-((h * rep) ** 2) / delta ** 2)

    np1 = N + 1
    i = np.arange(np1)
    lut = (i[None, :] - i[:, None]) + N  # displacement m - i, shifted for lookup
    jx = j1[lut]  # (np1, np1), axis factor J(x_m - x_i)

    w = np.ones(np1)
    w[0] = w[N] = 0.5
    jxw = jx * w[None, :]

    # K[(i,j),(m1,m2)] = h^2 c * J(x_m1 - x_i) J(y_m2 - y_j) w_m1 w_m2
    K = h ** 2 * c * np.einsum("im,jn->ijmn", jxw, jxw).reshape(np1 ** 2, np1 ** 2)
    conv_one = K.sum(axis=1)  # (J*1) at each closed-grid node
    M = np.diag(conv_one) - K

    # extension matrix: closed-grid node (m1, m2) reads unique node (m1%N, m2%N)
    E = np.zeros((np1 ** 2, N ** 2))
    for m1 in range(np1):
        for m2 in range(np1):
            E[m1 * np1 + m2, (m1 % N) * N + (m2 % N)] = 1.0

    ME = M @ E
    rows = [i1 * np1 + i2 for i1 in range(N) for i2 in range(N)]
    return ME[rows, :]


@pytest.fixture(scope="session")
def grid8():
    return make_grid(1.0, 8)


@pytest.fixture(scope="session")
def grid16():
    return make_grid(1.0, 16)


@pytest.fixture(scope="session")
def grid32():
    return make_grid(1.0, 32)


@pytest.fixture(scope="session")
def op16(grid16):
    return NonlocalOperator(gaussian_kernel(0.05, grid16), grid16)


@pytest.fixture(scope="session")
def op32(grid32):
    return NonlocalOperator(gaussian_kernel(0.05, grid32), grid32)
