import numpy as np
import pytest

from nlac.grid import Grid2D, inner, make_grid, meshes, min_max, nodes, norm_inf, norm_l2


def test_spacing_and_nodes():
    g = make_grid(1.0, 128)
    assert g.h == 2.0 / 128
    x = nodes(g)
    assert x[0] == -1.0
    assert x[-1] == pytest.approx(1.0 - g.h, abs=1e-15)
    assert len(x) == 128


def test_mesh_convention():
    g = make_grid(1.0, 8)
    X, Y = meshes(g)
    x = nodes(g)
    assert X[3, 5] == x[3]
    assert Y[3, 5] == x[5]


@pytest.mark.parametrize("L,N", [(0.0, 8), (-1.0, 8), (1.0, 3), (1.0, 0)])
def test_invalid_grid(L, N):
    with pytest.raises(ValueError):
        make_grid(L, N)


def test_inner_matches_loop_oracle(grid8):
    rng = np.random.default_rng(42)
    u = rng.uniform(-1.0, 1.0, (8, 8))
    v = rng.uniform(-1.0, 1.0, (8, 8))
    acc = 0.0
    for i in range(8):
        for j in range(8):
            acc += u[i, j] * v[i, j]
    expected = grid8.h ** 2 * acc
    assert inner(u, v, grid8) == pytest.approx(expected, rel=1e-13)


def test_inner_of_ones_is_domain_area(grid8):
    one = np.ones((8, 8))
    assert inner(one, one, grid8) == pytest.approx(4.0, rel=1e-15)


def test_inner_symmetry_and_positivity(grid16):
    rng = np.random.default_rng(3)
    for _ in range(5):
        u = rng.normal(size=(16, 16))
        v = rng.normal(size=(16, 16))
        assert inner(u, v, grid16) == inner(v, u, grid16)
        assert inner(u, u, grid16) >= 0.0


def test_norm_l2_consistent_with_inner(grid16):
    rng = np.random.default_rng(4)
    u = rng.normal(size=(16, 16))
    assert norm_l2(u, grid16) == pytest.approx(np.sqrt(inner(u, u, grid16)), rel=1e-14)


def test_norm_inf_dominated_by_scaled_l2(grid16):
    rng = np.random.default_rng(5)
    for _ in range(20):
        u = rng.normal(size=(16, 16))
        assert norm_inf(u) <= norm_l2(u, grid16) / grid16.h + 1e-14


def test_min_max_and_sup():
    g = make_grid(1.0, 8)
    u = np.zeros((8, 8))
    u[2, 3] = -0.7
    u[4, 4] = 0.4
    lo, hi = min_max(u)
    assert (lo, hi) == (-0.7, 0.4)
    assert norm_inf(u) == max(abs(lo), abs(hi))


def test_shape_mismatch_rejected(grid8):
    with pytest.raises(ValueError):
        inner(np.zeros((4, 4)), np.zeros((4, 4)), grid8)
    with pytest.raises(ValueError):
        norm_l2(np.zeros((8, 4)), grid8)


def test_grid_is_immutable():
    g = make_grid(1.0, 8)
    with pytest.raises(Exception):
        g.N = 16
    assert isinstance(g, Grid2D)
