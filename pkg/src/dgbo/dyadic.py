"""Smooth dyadic bump, Littlewood-Paley pieces and projectors.

psi is an explicit C^infty even bump with psi == 1 on [-1, 1] and
supp psi = [-5/4, 5/4]; chi(xi) = psi(xi) - psi(2 xi) gives the dyadic
partition psi + sum_{N>=2} chi(./N) == 1 telescopically.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .spectral import SpaceTimeField, SpectralField, dispersion_symbol


def validate_dyadic(n: int, name: str = "dyadic index") -> int:
    n = int(n)
    if n < 1 or (n & (n - 1)) != 0:
        raise ParameterError(f"{name} must be a power of two >= 1, got {n}")
    return n


def dyadic_range(lo: int, hi: int) -> list[int]:
    """All powers of two in [lo, hi]."""
    validate_dyadic(lo, "range start")
    validate_dyadic(hi, "range end")
    out, n = [], lo
    while n <= hi:
        out.append(n)
        n *= 2
    return out


def _transition(y: np.ndarray) -> np.ndarray:
    # g(y) = exp(-1/y) for y > 0, extended by 0; C^infty at 0.
    out = np.zeros_like(y)
    pos = y > 0
    out[pos] = np.exp(-1.0 / y[pos])
    return out


def bump_psi(xi) -> np.ndarray:
    """Even C^infty bump: 1 on [-1, 1], 0 outside (-5/4, 5/4), decreasing between."""
    a = np.abs(np.asarray(xi, dtype=np.float64))
    up = _transition((1.25 - a) / 0.25)
    down = _transition((a - 1.0) / 0.25)
    with np.errstate(invalid="ignore"):
        values = np.where(a <= 1.0, 1.0, np.where(a >= 1.25, 0.0, up / (up + down)))
    return values if values.ndim else float(values)


def chi(xi) -> np.ndarray:
    """Dyadic piece chi = psi - psi(2 .), supported on 1/2 < |xi| < 5/4."""
    xi = np.asarray(xi, dtype=np.float64)
    out = bump_psi(xi) - bump_psi(2.0 * xi)
    return out if out.ndim else float(out)


def dyadic_symbol(xi, n: int) -> np.ndarray:
    """Multiplier of P_N: psi for N = 1, chi(./N) for N >= 2."""
    validate_dyadic(n)
    return bump_psi(xi) if n == 1 else chi(np.asarray(xi, dtype=np.float64) / n)


def project_frequency(f: SpectralField, n: int) -> SpectralField:
    """Littlewood-Paley frequency projector P_N."""
    return SpectralField(f.grid, f.coeffs * dyadic_symbol(f.grid.frequencies, n))


def project_modulation(u: SpaceTimeField, l: int, alpha: float) -> SpaceTimeField:
    """Modulation projector Q_L acting on tau - omega(xi)."""
    validate_dyadic(l)
    grid = u.grid
    sigma = grid.modulations[None, :] - dispersion_symbol(
        grid.space.frequencies[:, None], alpha
    )
    return SpaceTimeField(grid, u.coeffs * dyadic_symbol(sigma, l))
