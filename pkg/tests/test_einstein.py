import math

import numpy as np
import pytest

from gyroball import (
    BoundaryError,
    einstein_add,
    euclidean_norm,
    get_normed,
    gyrometric_de,
    gyronorm_E,
    make_rng,
    rapidity_metric_dE,
    sample_ball_points,
    scalar_einstein_add,
    topology_ball_inclusion,
)


def test_zero_is_identity():
    v = np.array([0.3, -0.2, 0.1])
    assert np.allclose(einstein_add(np.zeros(3), v), v, atol=1e-15)
    assert np.allclose(einstein_add(v, -v), 0.0, atol=1e-15)


def test_collinear_addition_is_scalar_addition():
    out = einstein_add(np.array([0.5, 0.0]), np.array([0.5, 0.0]))
    assert out[0] == pytest.approx(0.8, abs=1e-15)
    assert out[1] == 0.0


def test_orthogonal_addition():
    # direct substitution: <u,v> = 0, so u + v/gamma_u
    out = einstein_add(np.array([0.5, 0.0]), np.array([0.0, 0.5]))
    gamma = 1 / math.sqrt(0.75)
    assert np.allclose(out, [0.5, 0.5 / gamma], atol=1e-15)
    assert out[1] == pytest.approx(0.43301270189221924)


def test_collinear_restriction_property():
    rng = make_rng(21)
    direction = np.array([3.0, 4.0]) / 5.0
    for _ in range(200):
        r, s = rng.uniform(-0.9, 0.9, 2)
        expected = scalar_einstein_add(r, s) * direction
        assert np.allclose(einstein_add(r * direction, s * direction),
                           expected, atol=1e-12)


def test_gyronorm_examples():
    assert gyronorm_E(np.zeros(2)) == 0.0
    assert gyronorm_E(np.array([0.3, 0.4])) == pytest.approx(math.atanh(0.5))


def test_rapidity_metric_examples():
    v = np.array([0.5, 0.0])
    assert rapidity_metric_dE(v, v) == pytest.approx(0.0, abs=1e-12)
    assert rapidity_metric_dE(np.zeros(2), v) == pytest.approx(0.5493061443340548)
    assert rapidity_metric_dE(np.array([-0.5, 0.0]), v) == pytest.approx(1.0986122886681098)


def test_gyrometric_examples():
    v = np.array([0.5, 0.0])
    assert gyrometric_de(v, v) == pytest.approx(0.0, abs=1e-15)
    assert gyrometric_de(np.zeros(2), v) == 0.5
    assert gyrometric_de(np.array([-0.5, 0.0]), v) == pytest.approx(0.8, abs=1e-12)


def test_rapidity_metric_boundary_error():
    u = np.array([0.999999, 0.0])
    with pytest.raises(BoundaryError):
        rapidity_metric_dE(-u, u)


def test_gyrometric_never_exceeds_rapidity():
    rng = make_rng(31)
    u = sample_ball_points(3, 10_000, rng)
    v = sample_ball_points(3, 10_000, rng)
    assert np.all(gyrometric_de(u, v) <= rapidity_metric_dE(u, v) + 1e-15)


def test_two_step_subadditivity_chain():
    # |u + v| <= |u| (+) |v| <= |u| + |v| with (+) the scalar addition
    rng = make_rng(32)
    u = sample_ball_points(3, 5000, rng)
    v = sample_ball_points(3, 5000, rng)
    left = euclidean_norm(einstein_add(u, v))
    nu, nv = euclidean_norm(u), euclidean_norm(v)
    middle = (nu + nv) / (1 + nu * nv)
    assert np.all(left <= middle + 1e-12)
    assert np.all(middle <= nu + nv + 1e-12)


@pytest.mark.parametrize("eps,u", [
    (0.5, [0.0, 0.0]),
    (0.2, [0.3, 0.1]),
    (1.0, [0.0, 0.5]),
])
def test_topology_ball_inclusion(eps, u):
    check = topology_ball_inclusion(np.array(u), eps, 1000, make_rng(77))
    assert check.passed, check.violations[:3]


def test_topology_check_is_deterministic():
    a = topology_ball_inclusion(np.zeros(2), 0.5, 100, make_rng(1))
    b = topology_ball_inclusion(np.zeros(2), 0.5, 100, make_rng(1))
    assert a.passed == b.passed and a.violations == b.violations


def test_left_invariance_of_both_metrics():
    nm = get_normed("einstein", dim=3)
    m = nm.model
    rng = make_rng(40)
    a, x, y = (sample_ball_points(3, 2000, rng) for _ in range(3))
    assert np.allclose(rapidity_metric_dE(m.add(a, x), m.add(a, y)),
                       rapidity_metric_dE(x, y), atol=1e-9)
    assert np.allclose(gyrometric_de(m.add(a, x), m.add(a, y)),
                       gyrometric_de(x, y), atol=1e-9)
