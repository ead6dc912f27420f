import numpy as np
import pytest

from nlac.grid import make_grid, nodes
from nlac.initial import init_cosine, init_rings, init_random


def test_cosine_profile_values():
    g = make_grid(1.0, 64)
    phi = init_cosine(g)
    xs = nodes(g)
    # corner node is (-1, -1): cos(-pi)^2 = 1
    assert phi[0, 0] == pytest.approx(0.5, rel=1e-14)
    i0 = np.argmin(np.abs(xs))  # node closest to the center
    assert abs(phi[i0, i0] - 0.5) < 1e-12
    assert np.max(np.abs(phi)) <= 0.5 + 1e-15


def test_cosine_matches_pointwise_formula():
    g = make_grid(1.0, 16)
    phi = init_cosine(g)
    xs = nodes(g)
    for i in (0, 3, 7, 12):
        for j in (1, 5, 15):
            want = 0.5 * np.cos(np.pi * xs[i]) * np.cos(np.pi * xs[j])
            assert phi[i, j] == pytest.approx(want, abs=1e-15)


def test_rings_sign_structure():
    g = make_grid(1.0, 128)
    phi = init_rings(g, eps=0.02)
    xs = nodes(g)
    i0 = np.argmin(np.abs(xs))
    iring = np.argmin(np.abs(xs - 0.7))  # between R2=0.6 and R1=0.8
    ifar = np.argmin(np.abs(xs - 0.95))  # outside R1
    assert phi[iring, i0] > 0.9  # inside the annulus
    assert phi[i0, i0] < -0.9  # center hole
    assert phi[ifar, i0] < -0.9  # beyond the outer radius
    assert np.max(np.abs(phi)) <= 1.0


def test_rings_center_shift():
    g = make_grid(1.0, 128)
    base = init_rings(g, eps=0.02)
    moved = init_rings(g, eps=0.02, a=0.25, b=-0.25)
    xs = nodes(g)
    # the annulus midline follows the center
    ia = np.argmin(np.abs(xs - (0.25 + 0.7)))
    ib = np.argmin(np.abs(xs + 0.25))
    assert moved[ia, ib] > 0.9
    assert not np.array_equal(base, moved)


def test_rings_guards():
    g = make_grid(1.0, 32)
    with pytest.raises(ValueError, match="R1 > R2"):
        init_rings(g, eps=0.02, R1=0.5, R2=0.6)
    with pytest.raises(ValueError, match="R1 > R2"):
        init_rings(g, eps=0.02, R1=0.5, R2=-0.1)
    with pytest.raises(ValueError, match="eps"):
        init_rings(g, eps=0.0)


def test_random_field_deterministic_and_bounded():
    g = make_grid(1.0, 64)
    a = init_random(g, amplitude=0.5, seed=3)
    b = init_random(g, amplitude=0.5, seed=3)
    c = init_random(g, amplitude=0.5, seed=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.shape == (64, 64)
    assert np.max(np.abs(a)) <= 0.25
    assert abs(a.mean()) < 0.01  # zero mean in law


def test_random_field_amplitude_scales():
    g = make_grid(1.0, 32)
    a = init_random(g, amplitude=0.5, seed=5)
    b = init_random(g, amplitude=1.0, seed=5)
    assert np.allclose(b, 2.0 * a, rtol=0.0, atol=1e-16)
    with pytest.raises(ValueError, match="amplitude"):
        init_random(g, amplitude=0.0)
