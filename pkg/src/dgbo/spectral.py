"""Periodic spectral discretization of the line.

The real line is approximated by a large torus [-half_width, half_width).
Transforms use the continuum convention: the forward transform is the DFT
scaled by dx, so it approximates f_hat(xi) = int exp(-i x xi) f(x) dx, and
discrete lattice sums weighted by dxi approximate frequency integrals.
Under this convention Parseval reads

    dx * sum |u|^2 = (1/2pi) * dxi * sum |u_hat|^2.

Coefficients are stored in FFT order; ``Grid1D.frequencies`` carries the
matching frequency values and ``mode_numbers`` the integer indices
k in [-n/2, n/2), so entry j represents xi = pi*k_j/half_width.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, SingularSymbolError

DEFAULT_HALF_WIDTH = 32 * np.pi
DEFAULT_NX = 1024


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _check_axis(name: str, half_width: float, n: int, minimum: int = 8) -> None:
    if not half_width > 0:
        raise ParameterError(f"{name} half-width must be positive, got {half_width}")
    if not (_is_power_of_two(n) and n >= minimum):
        raise ParameterError(
            f"{name} point count must be a power of two >= {minimum}, got {n}"
        )


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Uniform periodic grid on [-half_width, half_width) with its frequency lattice."""

    half_width: float
    n_x: int
    dx: float = field(init=False)
    dxi: float = field(init=False)
    nodes: np.ndarray = field(init=False, repr=False)
    frequencies: np.ndarray = field(init=False, repr=False)
    mode_numbers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_axis("spatial", self.half_width, self.n_x)
        object.__setattr__(self, "dx", 2.0 * self.half_width / self.n_x)
        object.__setattr__(self, "dxi", np.pi / self.half_width)
        modes = np.fft.fftfreq(self.n_x, d=1.0 / self.n_x).astype(np.int64)
        object.__setattr__(self, "mode_numbers", modes)
        object.__setattr__(self, "frequencies", modes * self.dxi)
        object.__setattr__(
            self, "nodes", -self.half_width + self.dx * np.arange(self.n_x)
        )

    def mode_index(self, xi: float) -> int:
        """Index of the lattice frequency closest to ``xi``."""
        k = int(round(xi / self.dxi))
        if not -self.n_x // 2 <= k < self.n_x // 2:
            raise ParameterError(f"frequency {xi} outside the grid lattice")
        return k % self.n_x

    @property
    def origin_phases(self) -> np.ndarray:
        # exp(i half_width xi_k) = (-1)^k, aligning DFT output with nodes
        # that start at -half_width instead of 0.
        return np.where(self.mode_numbers % 2 == 0, 1.0, -1.0)


def make_grid(half_width: float = DEFAULT_HALF_WIDTH, n_x: int = DEFAULT_NX) -> Grid1D:
    """Build the periodic spatial grid; rejects non-power-of-two sizes."""
    return Grid1D(float(half_width), int(n_x))


@dataclass(frozen=True, eq=False)
class SpaceTimeGrid:
    """Tensor grid: a spatial Grid1D times a periodic time window [-t_width, t_width)."""

    space: Grid1D
    t_width: float
    n_t: int
    dt: float = field(init=False)
    dtau: float = field(init=False)
    t_nodes: np.ndarray = field(init=False, repr=False)
    modulations: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        _check_axis("temporal", self.t_width, self.n_t)
        object.__setattr__(self, "dt", 2.0 * self.t_width / self.n_t)
        object.__setattr__(self, "dtau", np.pi / self.t_width)
        modes = np.fft.fftfreq(self.n_t, d=1.0 / self.n_t).astype(np.int64)
        object.__setattr__(self, "modulations", modes * self.dtau)
        object.__setattr__(
            self, "t_nodes", -self.t_width + self.dt * np.arange(self.n_t)
        )

    @property
    def t_origin_phases(self) -> np.ndarray:
        mt = np.fft.fftfreq(self.n_t, d=1.0 / self.n_t).astype(np.int64)
        return np.where(mt % 2 == 0, 1.0, -1.0)


def make_spacetime_grid(
    half_width: float = DEFAULT_HALF_WIDTH,
    n_x: int = DEFAULT_NX,
    t_width: float = 8.0,
    n_t: int = 512,
) -> SpaceTimeGrid:
    return SpaceTimeGrid(make_grid(half_width, n_x), float(t_width), int(n_t))


@dataclass(eq=False)
class SpectralField:
    """Fourier coefficients of a function on a Grid1D, continuum-normalized."""

    grid: Grid1D
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.grid.n_x,):
            raise ParameterError(
                f"coefficient count {self.coeffs.shape} does not match grid "
                f"size {self.grid.n_x}"
            )

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())


@dataclass(eq=False)
class SpaceTimeField:
    """2D Fourier coefficients u_hat(xi, tau) on a SpaceTimeGrid, axes (xi, tau)."""

    grid: SpaceTimeGrid
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        expected = (self.grid.space.n_x, self.grid.n_t)
        if self.coeffs.shape != expected:
            raise ParameterError(
                f"coefficient shape {self.coeffs.shape} does not match grid {expected}"
            )


def forward_transform(grid: Grid1D, samples: np.ndarray) -> SpectralField:
    """DFT scaled by dx, approximating int exp(-i x xi) f(x) dx.

    Samples live on ``grid.nodes`` (starting at -half_width); the origin
    phase keeps coefficients in the continuum convention.
    """
    samples = np.asarray(samples)
    if samples.shape != (grid.n_x,):
        raise ParameterError(
            f"sample count {samples.shape} does not match grid size {grid.n_x}"
        )
    return SpectralField(grid, np.fft.fft(samples) * (grid.dx * grid.origin_phases))


def inverse_transform(f: SpectralField) -> np.ndarray:
    """Inverse of :func:`forward_transform`; returns samples on ``grid.nodes``."""
    grid = f.grid
    return np.fft.ifft(f.coeffs * grid.origin_phases) / grid.dx


def forward_transform2(grid: SpaceTimeGrid, samples: np.ndarray) -> SpaceTimeField:
    """Space-time DFT scaled by dx*dt; axes (x, t) -> (xi, tau)."""
    samples = np.asarray(samples)
    expected = (grid.space.n_x, grid.n_t)
    if samples.shape != expected:
        raise ParameterError(
            f"sample shape {samples.shape} does not match grid {expected}"
        )
    phases = np.outer(grid.space.origin_phases, grid.t_origin_phases)
    return SpaceTimeField(grid, np.fft.fft2(samples) * (grid.space.dx * grid.dt) * phases)


def inverse_transform2(u: SpaceTimeField) -> np.ndarray:
    grid = u.grid
    phases = np.outer(grid.space.origin_phases, grid.t_origin_phases)
    return np.fft.ifft2(u.coeffs * phases) / (grid.space.dx * grid.dt)


def dispersion_symbol(xi, alpha: float):
    """Dispersion relation omega(xi) = -xi * |xi|^(1+alpha); odd and decreasing."""
    xi = np.asarray(xi, dtype=np.float64)
    out = -xi * np.abs(xi) ** (1.0 + alpha)
    return out if out.ndim else float(out)


def dispersion_derivative(xi, alpha: float):
    """Exact omega'(xi) = -(2+alpha) * |xi|^(1+alpha)."""
    xi = np.asarray(xi, dtype=np.float64)
    out = -(2.0 + alpha) * np.abs(xi) ** (1.0 + alpha)
    return out if out.ndim else float(out)


def propagate(f: SpectralField, t: float, alpha: float) -> SpectralField:
    """Free evolution: multiply each coefficient by exp(i t omega(xi))."""
    phase = np.exp(1j * t * dispersion_symbol(f.grid.frequencies, alpha))
    return SpectralField(f.grid, f.coeffs * phase)


def propagator_phases(
    grid: SpaceTimeGrid, alpha: float, snapped: bool = False
) -> np.ndarray:
    """Phase table exp(i t_n omega(xi_k)), shape (n_x, n_t).

    With ``snapped`` the dispersion values are rounded to the modulation
    lattice, making each spatial mode exactly periodic over the time window.
    """
    omega = dispersion_symbol(grid.space.frequencies, alpha)
    if snapped:
        omega = np.round(omega / grid.dtau) * grid.dtau
    return np.exp(1j * np.outer(omega, grid.t_nodes))


_DC_TOL = 1e-13


def apply_multiplier(
    f: SpectralField,
    kind: str,
    beta: float | None = None,
    symbol=None,
) -> SpectralField:
    """Apply a Fourier multiplier.

    kind = "abs_deriv": |xi|^beta (requires ``beta``; beta < 0 demands a
    vanishing zero mode), "d_dx": i*xi, or "custom" with ``symbol`` a
    callable mapping frequencies to multiplier values.
    """
    xi = f.grid.frequencies
    if kind == "d_dx":
        mult = 1j * xi
    elif kind == "abs_deriv":
        if beta is None:
            raise ParameterError("abs_deriv requires the exponent beta")
        if beta < 0:
            scale = max(1.0, float(np.max(np.abs(f.coeffs))))
            if abs(f.coeffs[0]) > _DC_TOL * scale:
                raise SingularSymbolError(
                    "|xi|^beta with beta < 0 applied to a field with nonzero mean"
                )
            mult = np.zeros_like(xi)
            nz = xi != 0
            mult = np.where(nz, np.abs(np.where(nz, xi, 1.0)) ** beta, 0.0)
        else:
            mult = np.abs(xi) ** beta
    elif kind == "custom":
        if symbol is None:
            raise ParameterError("custom multiplier requires a symbol callable")
        mult = np.asarray(symbol(xi))
    else:
        raise ParameterError(f"unknown multiplier kind {kind!r}")
    return SpectralField(f.grid, f.coeffs * mult)


def hermitian_symmetric(coeffs: np.ndarray, tol: float = 1e-10) -> bool:
    """True when coeffs(-xi) == conj(coeffs(xi)) up to ``tol`` (real-valued data)."""
    n = len(coeffs)
    mirrored = np.conj(coeffs[(-np.arange(n)) % n])
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    return bool(np.max(np.abs(coeffs - mirrored)) <= tol * scale)


def field_from_modes(grid: Grid1D, modes: dict[float, complex]) -> SpectralField:
    """Place coefficients at given lattice frequencies (nearest lattice point)."""
    coeffs = np.zeros(grid.n_x, dtype=np.complex128)
    for xi, value in modes.items():
        coeffs[grid.mode_index(xi)] += value
    return SpectralField(grid, coeffs)
