import math

import numpy as np
import pytest

from dgbo.errors import ParameterError, SingularSymbolError
from dgbo.spectral import (
    apply_multiplier,
    dispersion_derivative,
    dispersion_symbol,
    field_from_modes,
    forward_transform,
    forward_transform2,
    hermitian_symmetric,
    inverse_transform,
    inverse_transform2,
    make_grid,
    make_spacetime_grid,
    propagate,
    SpectralField,
)


def test_make_grid_lattice():
    g = make_grid(np.pi, 8)
    assert math.isclose(g.dx, np.pi / 4)
    assert math.isclose(g.dxi, 1.0)
    assert sorted(g.frequencies) == [-4, -3, -2, -1, 0, 1, 2, 3]
    assert math.isclose(g.dx * g.dxi * g.n_x, 2 * np.pi)


def test_make_grid_dxi_scales_with_width():
    assert math.isclose(make_grid(2 * np.pi, 8).dxi, 0.5)


def test_make_grid_rejects_bad_sizes():
    with pytest.raises(ParameterError):
        make_grid(np.pi, 6)
    with pytest.raises(ParameterError):
        make_grid(np.pi, 4)
    with pytest.raises(ParameterError):
        make_grid(-1.0, 8)


@pytest.mark.parametrize("n_x", [8, 64, 256])
def test_transform_round_trip(n_x):
    g = make_grid(16 * np.pi, n_x)
    rng = np.random.default_rng(n_x)
    samples = rng.standard_normal(n_x)
    back = inverse_transform(forward_transform(g, samples)).real
    assert np.max(np.abs(back - samples)) < 1e-12 * max(1, np.max(np.abs(samples)))


def test_transform_constant_concentrates_at_dc():
    g = make_grid(5.0, 32)
    f = forward_transform(g, np.ones(32))
    assert math.isclose(f.coeffs[0].real, 10.0, rel_tol=1e-12)
    assert np.max(np.abs(f.coeffs[1:])) < 1e-12


def test_transform_cosine_pair():
    g = make_grid(np.pi, 8)
    f = forward_transform(g, np.cos(g.nodes))
    plus, minus = g.mode_index(1.0), g.mode_index(-1.0)
    assert abs(f.coeffs[plus] - np.pi) < 1e-12
    assert abs(f.coeffs[minus] - np.pi) < 1e-12
    others = [k for k in range(8) if k not in (plus, minus)]
    assert np.max(np.abs(f.coeffs[others])) < 1e-12


def test_transform_size_mismatch():
    g = make_grid(np.pi, 8)
    with pytest.raises(ParameterError):
        forward_transform(g, np.ones(9))


def test_parseval():
    g = make_grid(32 * np.pi, 512)
    rng = np.random.default_rng(1)
    samples = rng.standard_normal(512)
    f = forward_transform(g, samples)
    left = g.dx * np.sum(samples**2)
    right = g.dxi * np.sum(np.abs(f.coeffs) ** 2) / (2 * np.pi)
    assert math.isclose(left, right, rel_tol=1e-10)


def test_hermitian_symmetry_of_real_data():
    g = make_grid(8 * np.pi, 64)
    rng = np.random.default_rng(2)
    f = forward_transform(g, rng.standard_normal(64))
    assert hermitian_symmetric(f.coeffs)
    assert not hermitian_symmetric(f.coeffs + 1j * np.arange(64))


def test_dispersion_symbol_values():
    assert dispersion_symbol(2.0, 1.0) == -8.0
    for alpha in (0.0, 0.25, 0.5, 1.0):
        assert dispersion_symbol(-1.0, alpha) == 1.0
        assert dispersion_symbol(0.0, alpha) == 0.0


def test_dispersion_symbol_odd_and_decreasing():
    g = make_grid(16 * np.pi, 256)
    xi = np.sort(g.frequencies)
    for alpha in (0.25, 1.0):
        om = dispersion_symbol(xi, alpha)
        assert np.allclose(om, -dispersion_symbol(-xi, alpha))
        assert np.all(np.diff(om) < 0)


def test_dispersion_derivative_matches_finite_difference():
    h = 1e-6
    for alpha in (0.25, 0.5, 1.0):
        for xi in (0.5, 1.7, -3.2):
            fd = (dispersion_symbol(xi + h, alpha) - dispersion_symbol(xi - h, alpha)) / (2 * h)
            assert math.isclose(fd, dispersion_derivative(xi, alpha), rel_tol=1e-6)


def test_propagate_identity_modulus_group_law():
    g = make_grid(8 * np.pi, 64)
    rng = np.random.default_rng(3)
    f = SpectralField(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
    alpha = 0.5
    p0 = propagate(f, 0.0, alpha)
    assert np.allclose(p0.coeffs, f.coeffs)
    pt = propagate(f, 0.7, alpha)
    assert np.allclose(np.abs(pt.coeffs), np.abs(f.coeffs))
    left = propagate(propagate(f, 0.3, alpha), 0.4, alpha)
    assert np.max(np.abs(left.coeffs - pt.coeffs)) < 1e-12 * np.max(np.abs(f.coeffs))


def test_apply_multiplier_derivative():
    g = make_grid(np.pi, 16)
    f = forward_transform(g, np.cos(g.nodes))
    df = apply_multiplier(f, "d_dx")
    expected = forward_transform(g, -np.sin(g.nodes))
    assert np.max(np.abs(df.coeffs - expected.coeffs)) < 1e-10


def test_apply_multiplier_abs_deriv():
    g = make_grid(np.pi, 16)
    f = field_from_modes(g, {2.0: 1.0})
    out = apply_multiplier(f, "abs_deriv", beta=2.0)
    assert math.isclose(out.coeffs[g.mode_index(2.0)].real, 4.0)


def test_apply_multiplier_singular_dc():
    g = make_grid(np.pi, 16)
    f = field_from_modes(g, {0.0: 1.0})
    with pytest.raises(SingularSymbolError):
        apply_multiplier(f, "abs_deriv", beta=-1.0)


def test_apply_multiplier_custom():
    g = make_grid(np.pi, 16)
    f = field_from_modes(g, {1.0: 1.0, 2.0: 1.0})
    out = apply_multiplier(f, "custom", symbol=lambda xi: xi**2)
    assert math.isclose(out.coeffs[g.mode_index(2.0)].real, 4.0)
    assert math.isclose(out.coeffs[g.mode_index(1.0)].real, 1.0)


def test_spacetime_round_trip():
    g2 = make_spacetime_grid(8 * np.pi, 32, 2.0, 16)
    rng = np.random.default_rng(4)
    samples = rng.standard_normal((32, 16))
    back = inverse_transform2(forward_transform2(g2, samples)).real
    assert np.max(np.abs(back - samples)) < 1e-12
