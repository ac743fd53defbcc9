"""Quadratic nonlinearity and the retarded (Duhamel) integral.

The nonlinear forcing is G(u) = eta(t/T) (u^2)_xx, formed slice-by-slice
with padded de-aliased squaring.  The Duhamel term propagates G with the
sine component of the free group,

    D(x, t) = eta(t/T) int_0^t  W2^{t-t'} G(., t') dt',

where W2 acts spectrally with sin((t - t') phi)/phi and the xi = 0 node
takes its finite limit (t - t').  Time quadrature is composite Simpson,
O(dt^4), delegated to the selected kernel backend.

The inverse-dispersion smoothing operator never appears alone: every use
pairs it with the two derivatives already inside G, and the bounded
fusion xi^2 / sqrt(xi^2 + xi^4) is what m_fused_multiplier evaluates.
"""

from dataclasses import dataclass

import numpy as np

from . import spectral
from ._kernels import duhamel_convolve
from .cutoffs import eta
from .errors import BqlineError
from .grids import GridSpec
from .halfline import BoundarySignal
from .linearflow import TracePair, dispersion

__all__ = [
    "SpaceTimeField",
    "nonlinearity",
    "duhamel_integral",
    "duhamel_traces",
    "m_fused_multiplier",
]


@dataclass
class SpaceTimeField:
    """u(x, t) samples on the tensor grid, indexed (time node, space node)."""

    grid: GridSpec
    values: np.ndarray
    window_scale: float = 1.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_t, self.grid.n_x):
            raise BqlineError("SpaceTimeField shape must be (n_t, n_x)")

    @classmethod
    def zeros(cls, grid, window_scale=1.0):
        return cls(grid, np.zeros((grid.n_t, grid.n_x), dtype=complex), window_scale)

    def copy(self):
        return SpaceTimeField(self.grid, self.values.copy(), self.window_scale)

    def slice_field(self, i):
        from .grids import Field
        return Field(self.grid, self.values[i])

    def restricted(self):
        """Samples on x >= 0 only, shape (n_t, n_x / 2)."""
        return self.values[:, self.grid.n_x // 2:]

    def max_abs(self):
        return float(np.max(np.abs(self.values)))


def m_fused_multiplier(xi):
    """xi^2 / sqrt(xi^2 + xi^4) = |xi| / sqrt(1 + xi^2), zero at the origin.

    This is the smoothing multiplier fused with the second derivative the
    nonlinearity always carries; it is bounded by 1 and increases to 1.
    """
    xi = np.asarray(xi, dtype=float)
    return np.abs(xi) / np.sqrt(1.0 + xi * xi)


def nonlinearity(u: SpaceTimeField, window_scale: float) -> SpaceTimeField:
    """G(u) = eta(t/T) (u^2)_xx with de-aliased squaring per time slice."""
    g = u.grid
    sq = spectral.dealiased_product(u.values, u.values, g)
    coeffs = spectral.forward_coeffs(sq, g)
    coeffs *= -(g.xi**2)
    vals = spectral.inverse_values(coeffs, g)
    vals *= eta(g.times / window_scale)[:, None]
    return SpaceTimeField(g, vals, window_scale)


def duhamel_integral(G: SpaceTimeField, return_coeffs=False):
    """eta(t/T)-windowed retarded integral of G under the sine flow.

    With return_coeffs=True also returns the windowed spectral history,
    which the trace extraction reuses.
    """
    g = G.grid
    ghat = spectral.forward_coeffs(G.values, g)
    dhat = duhamel_convolve(ghat, dispersion(g.xi), g.dt)
    dhat *= eta(g.times / G.window_scale)[:, None]
    vals = spectral.inverse_values(dhat, g)
    out = SpaceTimeField(g, vals, G.window_scale)
    if return_coeffs:
        return out, dhat
    return out


def duhamel_traces(G: SpaceTimeField) -> TracePair:
    """Boundary traces q1, q2 of the Duhamel term at x = 0 (spectral sums)."""
    g = G.grid
    _, dhat = duhamel_integral(G, return_coeffs=True)
    scale = g.d_xi / (2 * np.pi)
    q1 = scale * dhat.sum(axis=1)
    q2 = scale * (dhat @ (1j * g.xi))
    return TracePair(BoundarySignal(g, q1), BoundarySignal(g, q2), G.window_scale)
