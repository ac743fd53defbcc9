"""Discrete Fourier analysis on the truncated line.

Forward transform approximates f_hat(xi) = int e^{-i x xi} f(x) dx by
dx * sum_j e^{-i x_j xi_k} f_j; the inverse carries d_xi / (2 pi).  With
x_j = -L + j dx and xi_k = k pi / L the offset phase e^{i L xi_k} is
exactly (-1)^k, applied explicitly so coefficients mean what the
continuum formula says, not what the raw FFT returns.

Time-axis analogues (period t_max, nodes starting at 0) live here too so
boundary signals and traces share one normalization convention.
"""

import numpy as np

from .errors import BqlineError, NonFiniteMultiplier
from .grids import Field, GridSpec, SobolevIndex, Spectrum

__all__ = [
    "bracket",
    "forward_transform",
    "inverse_transform",
    "apply_multiplier",
    "sobolev_norm",
    "evaluate_spectrum",
    "spectral_derivative",
    "dealiased_product",
    "dealiased_square",
    "two_thirds_mask",
    "check_tail",
    "time_transform",
    "time_sobolev_norm",
    "simpson_weights",
]


def bracket(xi):
    """Japanese bracket sqrt(1 + xi^2), never approximated by |xi|."""
    return np.sqrt(1.0 + np.asarray(xi, dtype=float) ** 2)


def _offset_phase(n_x):
    # e^{i L xi_k} = (-1)^k for the half-box offset, exact in floats
    k = np.fft.fftfreq(n_x, d=1.0 / n_x)  # integer-valued
    return np.where(np.rint(k).astype(int) % 2 == 0, 1.0, -1.0)


def forward_transform(f: Field) -> Spectrum:
    g = f.grid
    coeffs = g.dx * _offset_phase(g.n_x) * np.fft.fft(f.values)
    return Spectrum(g, coeffs)


def inverse_transform(F: Spectrum) -> Field:
    g = F.grid
    values = np.fft.ifft(_offset_phase(g.n_x) * F.coeffs) / g.dx
    return Field(g, values)


def forward_coeffs(values, grid):
    """Array version of forward_transform for batched (…, n_x) data."""
    return grid.dx * _offset_phase(grid.n_x) * np.fft.fft(values, axis=-1)


def inverse_values(coeffs, grid):
    """Array version of inverse_transform for batched (…, n_x) data."""
    return np.fft.ifft(_offset_phase(grid.n_x) * coeffs, axis=-1) / grid.dx


def apply_multiplier(F: Spectrum, m) -> Spectrum:
    """Multiply coefficients by m(xi_k); m may be a callable or an array."""
    g = F.grid
    mv = np.asarray(m(g.xi) if callable(m) else m, dtype=complex)
    if mv.shape != (g.n_x,):
        raise BqlineError("multiplier shape does not match grid")
    if not np.all(np.isfinite(mv)):
        bad = g.xi[~np.isfinite(mv)]
        raise NonFiniteMultiplier(
            f"multiplier non-finite at xi={bad[:3]}; fuse the singularity upstream")
    return Spectrum(g, mv * F.coeffs)


def sobolev_norm(f: Field, s) -> float:
    """H^s norm (d_xi / 2 pi * sum <xi>^{2s} |f_hat|^2)^{1/2}."""
    if isinstance(s, SobolevIndex):
        s = s.s
    F = forward_transform(f)
    w = bracket(f.grid.xi) ** (2.0 * s)
    return float(np.sqrt(f.grid.d_xi / (2 * np.pi) * np.sum(w * np.abs(F.coeffs) ** 2)))


def evaluate_spectrum(F: Spectrum, x) -> complex:
    """Pointwise value d_xi / 2 pi * sum_k F_k e^{i x xi_k} at arbitrary x."""
    g = F.grid
    ph = np.exp(1j * np.multiply.outer(np.asarray(x, dtype=float), g.xi))
    return g.d_xi / (2 * np.pi) * ph @ F.coeffs


def spectral_derivative(f: Field, order=1) -> Field:
    F = forward_transform(f)
    out = inverse_transform(Spectrum(f.grid, (1j * f.grid.xi) ** order * F.coeffs))
    out.real = f.real and order % 2 == 0
    return out


def two_thirds_mask(grid: GridSpec):
    """Boolean mask keeping |k| <= n_x / 3 (the 2/3-rule resolved band)."""
    k = np.rint(np.fft.fftfreq(grid.n_x, d=1.0 / grid.n_x)).astype(int)
    return np.abs(k) <= grid.n_x // 3


def _pad_coeffs(coeffs, n_x, n_pad):
    # insert zeros at high |k|; works on (..., n_x) batches
    shape = coeffs.shape[:-1] + (n_pad,)
    out = np.zeros(shape, dtype=complex)
    h = n_x // 2
    out[..., :h] = coeffs[..., :h]
    out[..., n_pad - h:] = coeffs[..., n_x - h:]
    return out


def dealiased_product(u_values, v_values, grid: GridSpec):
    """Pointwise product of two sample arrays, alias-free.

    Both inputs are transformed, zero-padded by grid.pad_factor, multiplied
    in physical space on the fine grid, transformed back and truncated to
    the original band; the 2/3-rule mask is applied to the result so
    repeated products stay inside the resolved band.  Inputs may be
    batched with shape (..., n_x).
    """
    if grid.pad_factor < 2:
        raise BqlineError("pad_factor >= 2 required for de-aliased products")
    n = grid.n_x
    n_pad = grid.pad_factor * n
    fu = np.fft.fft(u_values, axis=-1)
    fv = np.fft.fft(v_values, axis=-1)
    # physical-space product on the fine grid; ifft carries 1/n so the
    # padded inverse needs a factor n_pad / n to represent the same field
    scale = n_pad / n
    pu = np.fft.ifft(_pad_coeffs(fu, n, n_pad), axis=-1) * scale
    pv = np.fft.ifft(_pad_coeffs(fv, n, n_pad), axis=-1) * scale
    fw = np.fft.fft(pu * pv, axis=-1) / scale
    h = n // 2
    w = np.concatenate([fw[..., :h], fw[..., n_pad - h:]], axis=-1)
    w = np.where(two_thirds_mask(grid), w, 0.0)
    return np.fft.ifft(w, axis=-1)


def dealiased_square(values, grid: GridSpec):
    return dealiased_product(values, values, grid)


def check_tail(values, tol=1e-12, edge_fraction=0.02):
    """True if the samples nearest the box edge are below tol * peak."""
    v = np.abs(np.asarray(values))
    peak = v.max()
    if peak == 0.0:
        return True
    n_edge = max(2, int(np.ceil(edge_fraction * v.size)))
    edge = max(v[:n_edge].max(), v[-n_edge:].max())
    return bool(edge <= tol * peak)


# -- time-axis analogues ----------------------------------------------------

def time_transform(samples, dt):
    """h_hat(tau_k) = dt * sum_j e^{-i t_j tau_k} h_j with t_j = j dt."""
    samples = np.asarray(samples, dtype=complex)
    tau = 2 * np.pi * np.fft.fftfreq(samples.shape[-1], d=dt)
    return dt * np.fft.fft(samples, axis=-1), tau


def time_sobolev_norm(samples, dt, s) -> float:
    """Temporal H^s norm with the same truncation/FFT conventions."""
    hat, tau = time_transform(samples, dt)
    d_tau = 2 * np.pi / (dt * np.asarray(samples).shape[-1])
    w = bracket(tau) ** (2.0 * s)
    return float(np.sqrt(d_tau / (2 * np.pi) * np.sum(w * np.abs(hat) ** 2)))


def simpson_weights(n_nodes, dt):
    """Composite Simpson weights on a uniform grid of n_nodes points.

    For an even node count the final interval pair is closed with the
    Simpson 3/8 rule, keeping the composite O(dt^4).
    """
    if n_nodes < 2:
        return np.zeros(n_nodes)
    w = np.zeros(n_nodes)
    n_int = n_nodes - 1
    if n_int == 1:
        return np.array([0.5, 0.5]) * dt
    if n_int == 2:
        return np.array([1.0, 4.0, 1.0]) * dt / 3.0
    if n_int % 2 == 0:
        w[0] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w[-1] = 1.0
        return w * dt / 3.0
    # odd interval count: Simpson on the first n_int - 3, then 3/8 rule
    head = simpson_weights(n_nodes - 3, dt)
    w[: n_nodes - 3] = head
    w[n_nodes - 4:] += np.array([1.0, 3.0, 3.0, 1.0]) * 3.0 * dt / 8.0
    return w
