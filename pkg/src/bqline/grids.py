"""Grid and sample-container types shared by every module.

The spatial domain is the truncated line [-L, L) with periodic wrap and
N_x equispaced nodes (x = 0 is always a node since N_x is even).  The
temporal domain is [0, T_max) with N_t equispaced nodes; temporal FFTs
treat T_max as the period, which is harmless because every signal the
solver produces is compactly supported away from the right edge.

Transform normalization: the forward transform carries dx, the inverse
carries d_xi / (2 pi), so continuum formulas transcribe literally.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import BqlineError

__all__ = ["GridSpec", "SobolevIndex", "Field", "Spectrum"]


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass
class GridSpec:
    """Tensor grid for the truncated line and time window.

    L          half-width of the spatial box [-L, L)
    n_x        number of spatial samples, power of two, >= 8
    t_max      time horizon; nodes fill [0, t_max)
    n_t        number of time samples, >= 8
    pad_factor zero-padding multiplier used when forming products
    """

    L: float
    n_x: int
    t_max: float
    n_t: int
    pad_factor: int = 2

    def __post_init__(self):
        if self.n_x < 8 or not _is_power_of_two(self.n_x):
            raise BqlineError(f"n_x must be a power of two >= 8, got {self.n_x}")
        if self.n_t < 8:
            raise BqlineError(f"n_t must be >= 8, got {self.n_t}")
        if self.L <= 0 or self.t_max <= 0:
            raise BqlineError("L and t_max must be positive")
        if self.pad_factor < 1:
            raise BqlineError("pad_factor must be >= 1")

    @property
    def dx(self):
        return 2.0 * self.L / self.n_x

    @property
    def d_xi(self):
        return np.pi / self.L

    @property
    def dt(self):
        return self.t_max / self.n_t

    @property
    def d_tau(self):
        return 2.0 * np.pi / self.t_max

    @property
    def x(self):
        """Spatial nodes -L, -L + dx, ..., L - dx."""
        return -self.L + self.dx * np.arange(self.n_x)

    @property
    def x_half(self):
        """Nodes with x >= 0 (second half of the box)."""
        return self.x[self.n_x // 2:]

    @property
    def times(self):
        """Time nodes 0, dt, ..., t_max - dt."""
        return self.dt * np.arange(self.n_t)

    @property
    def xi(self):
        """Spatial frequencies in FFT ordering, spacing pi / L."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_x, d=self.dx)

    @property
    def tau(self):
        """Temporal frequencies in FFT ordering, spacing 2 pi / t_max."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_t, d=self.dt)

    def with_resolution(self, n_x=None, n_t=None):
        """Same box, different sample counts (refinement studies)."""
        return GridSpec(self.L, n_x or self.n_x, self.t_max, n_t or self.n_t,
                        self.pad_factor)


@dataclass(frozen=True)
class SobolevIndex:
    """Spatial regularity exponent s of H^s."""

    s: float

    def __post_init__(self):
        if not np.isfinite(self.s):
            raise BqlineError("Sobolev index must be finite")
        if not -2.0 <= self.s <= 4.0:
            raise BqlineError(f"Sobolev index {self.s} outside supported [-2, 4]")


@dataclass
class Field:
    """Complex samples of a function of x on a GridSpec.

    ``real`` marks data that should stay real up to roundoff; validate()
    enforces an imaginary residue below 1e-10 of the peak magnitude.
    """

    grid: GridSpec
    values: np.ndarray
    real: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_x,):
            raise BqlineError("Field length does not match grid")

    def validate(self):
        if not np.all(np.isfinite(self.values)):
            raise BqlineError("Field contains non-finite samples")
        if self.real:
            peak = np.max(np.abs(self.values))
            if peak > 0 and np.max(np.abs(self.values.imag)) > 1e-10 * peak:
                raise BqlineError("Field flagged real has large imaginary part")
        return self

    def copy(self):
        return Field(self.grid, self.values.copy(), self.real)


@dataclass
class Spectrum:
    """Fourier coefficients on the grid frequencies, FFT ordering."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (self.grid.n_x,):
            raise BqlineError("Spectrum length does not match grid")

    def copy(self):
        return Spectrum(self.grid, self.coeffs.copy())
