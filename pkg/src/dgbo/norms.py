"""Discrete Fourier-Lebesgue, Bourgain, mixed Lebesgue and smoothing norms.

All frequency-side sums carry the quadrature weights dxi (and dtau), so the
values approximate the corresponding continuum integrals directly.  The
japanese bracket is <xi> = (1 + xi^2)^(1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, SingularSymbolError
from .spectral import (
    SpaceTimeField,
    SpaceTimeGrid,
    SpectralField,
    dispersion_symbol,
)


def conjugate_exponent(r: float) -> float:
    """Hoelder conjugate r' = r/(r-1); r may be math.inf."""
    if r == math.inf:
        return 1.0
    if not r > 1:
        raise ParameterError(f"Lebesgue index r must exceed 1, got {r}")
    return r / (r - 1.0)


@dataclass(frozen=True)
class NormParams:
    """Norm parameter bundle: regularity s, modulation weight b, index r."""

    s: float = 0.0
    b: float = 0.0
    r: float = 2.0
    alpha: float = 1.0
    r_conj: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "r_conj", conjugate_exponent(self.r))
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError(f"alpha must lie in [0, 1], got {self.alpha}")


def bracket(x):
    """<x> = (1 + |x|^2)^(1/2)."""
    return np.sqrt(1.0 + np.square(np.asarray(x, dtype=np.float64)))


def _lp_sum(values: np.ndarray, weight: float, p: float) -> float:
    values = np.abs(values)
    if p == math.inf:
        return float(values.max(initial=0.0))
    return float((np.sum(values**p) * weight) ** (1.0 / p))


_DC_TOL = 1e-13


def fl_norm(
    f: SpectralField, s: float = 0.0, r: float = 2.0, homogeneous: bool = False
) -> float:
    """Fourier-Lebesgue norm: the l^{r'}(dxi) norm of w(xi)^s * f_hat.

    The weight is <xi> by default and |xi| with ``homogeneous``; a negative
    homogeneous exponent requires a vanishing zero mode.
    """
    rc = conjugate_exponent(r)
    xi = f.grid.frequencies
    coeffs = f.coeffs
    if homogeneous:
        if s < 0:
            scale = max(1.0, float(np.max(np.abs(coeffs))))
            if abs(coeffs[0]) > _DC_TOL * scale:
                raise SingularSymbolError(
                    "homogeneous weight with s < 0 requires zero mean"
                )
        nz = xi != 0
        weight = np.where(nz, np.abs(np.where(nz, xi, 1.0)) ** s, 0.0 if s != 0 else 1.0)
    else:
        weight = bracket(xi) ** s
    return _lp_sum(weight * coeffs, f.grid.dxi, rc)


def xsb_norm(
    u: SpaceTimeField, s: float = 0.0, b: float = 0.0, r: float = 2.0,
    alpha: float = 1.0,
) -> float:
    """Bourgain-type norm: l^{r'}(dxi dtau) of <xi>^s <tau - omega(xi)>^b u_hat."""
    rc = conjugate_exponent(r)
    grid = u.grid
    xi = grid.space.frequencies[:, None]
    sigma = grid.modulations[None, :] - dispersion_symbol(xi, alpha)
    weight = bracket(xi) ** s * bracket(sigma) ** b
    return _lp_sum(weight * u.coeffs, grid.space.dxi * grid.dtau, rc)


def mixed_norm(samples: np.ndarray, grid: SpaceTimeGrid, q: float, p: float) -> float:
    """Discrete L^q_t L^p_x norm of physical samples with shape (n_x, n_t)."""
    if not (q >= 1 and p >= 1):
        raise ParameterError(f"mixed-norm exponents must be >= 1, got ({q}, {p})")
    samples = np.abs(np.asarray(samples))
    if samples.shape != (grid.space.n_x, grid.n_t):
        raise ParameterError("sample shape does not match the space-time grid")
    if p == math.inf:
        per_t = samples.max(axis=0)
    else:
        per_t = (np.sum(samples**p, axis=0) * grid.space.dx) ** (1.0 / p)
    return _lp_sum(per_t, grid.dt, q)


def smoothing_profile(samples: np.ndarray, grid: SpaceTimeGrid, r: float) -> np.ndarray:
    """Per-node profile x_j -> l^{r'}(dtau) norm of the time-DFT at x_j."""
    rc = conjugate_exponent(r)
    samples = np.asarray(samples)
    if samples.shape != (grid.space.n_x, grid.n_t):
        raise ParameterError("sample shape does not match the space-time grid")
    spec_t = np.fft.fft(samples, axis=1) * grid.dt
    if rc == math.inf:
        return np.abs(spec_t).max(axis=1)
    return (np.sum(np.abs(spec_t) ** rc, axis=1) * grid.dtau) ** (1.0 / rc)


def smoothing_norm(samples: np.ndarray, grid: SpaceTimeGrid, r: float) -> float:
    """L^infty_x of the Fourier-Lebesgue time norm: max of :func:`smoothing_profile`."""
    return float(smoothing_profile(samples, grid, r).max())
