import math

import numpy as np
import pytest

from dgbo.errors import ParameterError, SingularSymbolError
from dgbo.norms import (
    NormParams,
    conjugate_exponent,
    fl_norm,
    mixed_norm,
    smoothing_norm,
    smoothing_profile,
    xsb_norm,
)
from dgbo.spectral import (
    SpaceTimeField,
    SpectralField,
    field_from_modes,
    forward_transform,
    forward_transform2,
    make_grid,
    make_spacetime_grid,
    propagator_phases,
    dispersion_symbol,
)


def test_conjugate_exponent():
    assert math.isclose(conjugate_exponent(2.0), 2.0)
    assert math.isclose(conjugate_exponent(1.25), 5.0)
    assert conjugate_exponent(math.inf) == 1.0
    with pytest.raises(ParameterError):
        conjugate_exponent(1.0)


def test_norm_params_conjugate():
    p = NormParams(s=0.5, b=0.1, r=1.5, alpha=0.5)
    assert math.isclose(1 / p.r + 1 / p.r_conj, 1.0)
    with pytest.raises(ParameterError):
        NormParams(alpha=1.5)


@pytest.mark.parametrize("r", [1.25, 1.5, 2.0, 4.0])
def test_fl_norm_single_mode_at_origin(r):
    g = make_grid(4 * np.pi, 32)
    f = field_from_modes(g, {0.0: 1.0})
    rc = conjugate_exponent(r)
    for s in (-1.0, 0.0, 2.0):
        assert math.isclose(fl_norm(f, s, r), g.dxi ** (1 / rc), rel_tol=1e-12)


def test_fl_norm_two_mode_bracket_value():
    # half-width tuned so xi = sqrt(3) sits exactly on the lattice
    g = make_grid(8 * np.pi / math.sqrt(3), 64)
    f = field_from_modes(g, {0.0: 1.0, math.sqrt(3): 1.0})
    assert math.isclose(fl_norm(f, s=1.0, r=math.inf), 3 * g.dxi, rel_tol=1e-12)


def test_fl_norm_parseval_oracle():
    g = make_grid(16 * np.pi, 256)
    rng = np.random.default_rng(0)
    for _ in range(5):
        samples = rng.standard_normal(256)
        f = forward_transform(g, samples)
        l2 = math.sqrt(g.dx * np.sum(samples**2))
        assert math.isclose(fl_norm(f, 0.0, 2.0), math.sqrt(2 * np.pi) * l2,
                            rel_tol=1e-10)


def test_fl_norm_monotone_in_s():
    g = make_grid(8 * np.pi, 64)
    rng = np.random.default_rng(1)
    f = SpectralField(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
    values = [fl_norm(f, s, 1.5) for s in (-1.0, -0.5, 0.0, 0.5, 1.0)]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))


def test_fl_norm_homogeneity_and_triangle():
    g = make_grid(8 * np.pi, 64)
    rng = np.random.default_rng(2)
    for r in (1.25, 2.0):
        a = SpectralField(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        b = SpectralField(g, rng.standard_normal(64) + 1j * rng.standard_normal(64))
        c = rng.uniform(-3, 3)
        scaled = SpectralField(g, c * a.coeffs)
        assert math.isclose(fl_norm(scaled, 0.3, r), abs(c) * fl_norm(a, 0.3, r),
                            rel_tol=1e-12)
        sum_field = SpectralField(g, a.coeffs + b.coeffs)
        assert fl_norm(sum_field, 0.3, r) <= (
            fl_norm(a, 0.3, r) + fl_norm(b, 0.3, r) + 1e-12
        )


def test_fl_norm_homogeneous_singular_dc():
    g = make_grid(8 * np.pi, 64)
    f = field_from_modes(g, {0.0: 1.0, 1.0: 1.0})
    with pytest.raises(SingularSymbolError):
        fl_norm(f, s=-0.5, r=2.0, homogeneous=True)
    ok = field_from_modes(g, {1.0: 1.0})
    assert fl_norm(ok, s=-0.5, r=2.0, homogeneous=True) > 0


def test_xsb_norm_parseval_collapse():
    g2 = make_spacetime_grid(8 * np.pi, 64, 2.0, 32)
    rng = np.random.default_rng(3)
    samples = rng.standard_normal((64, 32))
    u = forward_transform2(g2, samples)
    l2 = math.sqrt(g2.space.dx * g2.dt * np.sum(samples**2))
    assert math.isclose(xsb_norm(u, 0.0, 0.0, 2.0, 0.5), 2 * np.pi * l2,
                        rel_tol=1e-10)


def test_xsb_norm_single_mode():
    g2 = make_spacetime_grid(4 * np.pi, 32, np.pi, 16)
    coeffs = np.zeros((32, 16), dtype=complex)
    k, m = 3, 5
    coeffs[k, m] = 1.0
    u = SpaceTimeField(g2, coeffs)
    xi0 = g2.space.frequencies[k]
    tau0 = g2.modulations[m]
    alpha, s, b, r = 0.5, 0.7, 0.4, 1.5
    rc = conjugate_exponent(r)
    sigma = tau0 - dispersion_symbol(xi0, alpha)
    expected = (
        (1 + xi0**2) ** (s / 2)
        * (1 + sigma**2) ** (b / 2)
        * (g2.space.dxi * g2.dtau) ** (1 / rc)
    )
    assert math.isclose(xsb_norm(u, s, b, r, alpha), expected, rel_tol=1e-12)


def test_xsb_norm_pure_wave_has_unit_modulation_weight():
    # snapped linear wave sits exactly on the lattice dispersion surface
    g2 = make_spacetime_grid(4 * np.pi, 32, 8.0, 128)
    alpha = 1.0
    phi = np.zeros(32, dtype=complex)
    phi[g2.space.mode_index(1.0)] = 1.0
    phi[g2.space.mode_index(2.0)] = 0.5
    phases = propagator_phases(g2, alpha, snapped=True)
    mixed = phi[:, None] * phases
    coeffs = np.fft.fft(mixed, axis=1) * (g2.dt * g2.t_origin_phases[None, :])
    u = SpaceTimeField(g2, coeffs)
    base = xsb_norm(u, 0.0, 0.0, 2.0, alpha)
    for b in (0.5, 1.0, 3.0):
        assert math.isclose(xsb_norm(u, 0.0, b, 2.0, alpha), base, rel_tol=1e-6)


def test_mixed_norm_constant():
    g2 = make_spacetime_grid(4 * np.pi, 32, 2.0, 16)
    ones = np.ones((32, 16))
    x_len, t_len = 8 * np.pi, 4.0
    for q, p in ((2.0, 2.0), (4.0, 6.0), (1.0, 3.0)):
        assert math.isclose(mixed_norm(ones, g2, q, p),
                            t_len ** (1 / q) * x_len ** (1 / p), rel_tol=1e-12)
    assert math.isclose(mixed_norm(ones, g2, math.inf, math.inf), 1.0)


def test_mixed_norm_point_mass():
    g2 = make_spacetime_grid(4 * np.pi, 32, 2.0, 16)
    samples = np.zeros((32, 16))
    samples[5, 7] = 3.0
    assert math.isclose(
        mixed_norm(samples, g2, 2.0, 4.0),
        3.0 * g2.space.dx ** (1 / 4) * g2.dt ** (1 / 2),
        rel_tol=1e-12,
    )


def test_mixed_norm_unitarity_slices():
    g2 = make_spacetime_grid(8 * np.pi, 64, 2.0, 16)
    rng = np.random.default_rng(4)
    phi = forward_transform(g2.space, rng.standard_normal(64))
    phases = propagator_phases(g2, 0.5)
    samples = np.fft.ifft(
        (phi.coeffs * g2.space.origin_phases)[:, None] * phases, axis=0
    ) / g2.space.dx
    value = mixed_norm(np.abs(samples), g2, math.inf, 2.0)
    expected = fl_norm(phi, 0.0, 2.0) / math.sqrt(2 * np.pi)
    assert math.isclose(value, expected, rel_tol=1e-10)


def test_mixed_norm_validation():
    g2 = make_spacetime_grid(4 * np.pi, 32, 2.0, 16)
    with pytest.raises(ParameterError):
        mixed_norm(np.ones((32, 16)), g2, 0.5, 2.0)
    with pytest.raises(ParameterError):
        mixed_norm(np.ones((16, 32)), g2, 2.0, 2.0)


def test_smoothing_norm_x_independent_signal():
    g2 = make_spacetime_grid(4 * np.pi, 32, 2.0, 64)
    gt = np.cos(3 * g2.t_nodes) + 0.5 * np.sin(g2.t_nodes)
    samples = np.tile(gt, (32, 1))
    profile = smoothing_profile(samples, g2, 1.5)
    assert np.allclose(profile, profile[0])
    spec_t = np.fft.fft(gt) * g2.dt
    rc = conjugate_exponent(1.5)
    expected = (np.sum(np.abs(spec_t) ** rc) * g2.dtau) ** (1 / rc)
    assert math.isclose(smoothing_norm(samples, g2, 1.5), expected, rel_tol=1e-12)


def test_smoothing_norm_zero_field():
    g2 = make_spacetime_grid(4 * np.pi, 32, 2.0, 16)
    assert smoothing_norm(np.zeros((32, 16)), g2, 2.0) == 0.0


def test_smoothing_profile_snapped_wave_x_independent():
    # lattice-snapped free wave: the per-node time spectrum has exactly
    # x-independent modulus
    g2 = make_spacetime_grid(4 * np.pi, 64, 8.0, 512)
    xi = g2.space.frequencies
    prof = np.exp(-(((np.abs(xi) - 1.5) / 0.25) ** 2))
    prof[(np.abs(xi) < 1.0) | (np.abs(xi) > 2.0)] = 0.0
    phases = propagator_phases(g2, 0.5, snapped=True)
    samples = np.fft.ifft(
        (prof * g2.space.origin_phases)[:, None] * phases, axis=0
    ) / g2.space.dx
    for r in (1.25, 2.0):
        p = smoothing_profile(samples, g2, r)
        assert (p.max() - p.min()) / p.mean() < 1e-8
