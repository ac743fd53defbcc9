"""Half-line data handling: extensions, restriction, trace compatibility.

The H^s(R+) norm is an infimum over all whole-line extensions and is not
computable; everywhere a half-line norm is needed we substitute the norm
of a canonical extension (the smooth-decay reflection below), which is
an upper bound and equivalent for the inequality checks this package
performs.

The smooth-decay reflection matches value and first derivative at 0
(reflected part 3 h(y) - 2 h(2y), tapered to zero before the box edge),
so extensions of smooth data stay in H^s for every s the artifact
supports.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import spectral
from .cutoffs import eta
from .errors import BqlineError, CompatibilityViolation, RangeViolation, TailViolation
from .grids import Field, GridSpec, SobolevIndex

__all__ = [
    "ExtensionMethod",
    "HalfLineFunction",
    "BoundarySignal",
    "extend",
    "restrict",
    "halfline_surrogate_norm",
    "chi_norm_check",
    "ChiNormReport",
    "check_compatibility",
    "CompatibilityVerdict",
    "load_halfline_function",
    "load_boundary_signal",
]


class ExtensionMethod(enum.Enum):
    ZERO = "zero"
    EVEN_REFLECTION = "even-reflection"
    SMOOTH_DECAY_REFLECTION = "smooth-decay-reflection"


@dataclass
class HalfLineFunction:
    """Samples on the nodes x >= 0 of a GridSpec, with declared regularity."""

    grid: GridSpec
    samples: np.ndarray
    s: SobolevIndex = SobolevIndex(0.0)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n_x // 2,):
            raise BqlineError("half-line sample count must be n_x / 2")

    def value_at_zero(self):
        return _quadratic_at_zero(self.samples)

    def derivative_at_zero(self):
        """First derivative at x = 0 by spectral differentiation of the
        canonical extension (which matches h'(0) by construction)."""
        ext = extend(self, ExtensionMethod.SMOOTH_DECAY_REFLECTION)
        d = spectral.spectral_derivative(ext)
        return _quadratic_at_zero(restrict(d).samples)


@dataclass
class BoundarySignal:
    """Time samples of a boundary trace on [0, t_max), with regularity index."""

    grid: GridSpec
    samples: np.ndarray
    s: float = 0.0

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n_t,):
            raise BqlineError("boundary signal length must be n_t")

    def value_at_zero(self):
        return _quadratic_at_zero(self.samples)

    def peak(self):
        return float(np.max(np.abs(self.samples)))


def _quadratic_at_zero(samples):
    # quadratic interpolation of the first three nodes at coordinate 0;
    # the grids place a node exactly at 0 so this reduces to samples[0]
    return complex(samples[0])


def _smooth_reflection(samples, step, domain_len):
    """Values assigned at -i*step for i = 1..m-1 (C^1 matched, tapered)."""
    m = samples.size
    i = np.arange(1, m)
    doubled = np.zeros(m - 1, dtype=complex)
    ok = 2 * i < m
    doubled[ok] = samples[2 * i[ok]]
    taper = eta(4.0 * (i * step) / domain_len)
    return (3.0 * samples[1:] - 2.0 * doubled) * taper


def extend(h: HalfLineFunction, method: ExtensionMethod) -> Field:
    """Whole-line Field agreeing with h on x >= 0.

    Raises TailViolation if h does not decay near the box edge; truncation
    to [-L, L) is only meaningful for localized data.
    """
    g = h.grid
    m = g.n_x // 2
    peak = np.max(np.abs(h.samples))
    n_edge = max(2, m // 50)
    if peak > 0 and np.max(np.abs(h.samples[-n_edge:])) > 1e-12 * peak:
        raise TailViolation("half-line data does not decay at x = L")
    full = np.zeros(g.n_x, dtype=complex)
    full[m:] = h.samples
    if method is ExtensionMethod.ZERO:
        pass
    elif method is ExtensionMethod.EVEN_REFLECTION:
        i = np.arange(1, m)
        full[m - i] = h.samples[1:]
    elif method is ExtensionMethod.SMOOTH_DECAY_REFLECTION:
        i = np.arange(1, m)
        full[m - i] = _smooth_reflection(h.samples, g.dx, g.L)
    else:
        raise BqlineError(f"unknown extension method {method}")
    real = bool(np.max(np.abs(full.imag)) <= 1e-10 * max(np.max(np.abs(full)), 1e-300))
    return Field(g, full, real=real)


def restrict(u: Field) -> HalfLineFunction:
    """Exact sample copy for x >= 0."""
    return HalfLineFunction(u.grid, u.values[u.grid.n_x // 2:].copy())


def halfline_surrogate_norm(h: HalfLineFunction, s) -> float:
    """H^s(R+) surrogate: norm of the canonical smooth-decay extension."""
    return spectral.sobolev_norm(extend(h, ExtensionMethod.SMOOTH_DECAY_REFLECTION), s)


@dataclass
class ChiNormReport:
    ratio: float
    degenerate: bool
    flagged: bool
    bound: float
    chi_norm: float
    surrogate_norm: float


def chi_norm_check(h: BoundarySignal, s: float, bound: float = 10.0) -> ChiNormReport:
    """Ratio of the cut-off signal's whole-line H^s norm to the half-line
    surrogate norm.

    Multiplication by the half-line indicator is only bounded on H^s for
    -1/2 < s < 3/2 (s != 1/2), and for s > 1/2 only when h(0) = 0; those
    preconditions are enforced rather than silently producing garbage.
    """
    if not (-0.5 < s < 1.5) or s == 0.5:
        raise RangeViolation(f"chi multiplication undefined for s = {s}")
    peak = h.peak()
    if s > 0.5 and abs(h.value_at_zero()) > 1e-8 * max(1.0, peak):
        raise CompatibilityViolation("s > 1/2 requires h(0) = 0")
    g = h.grid
    n = g.n_t
    # embed on the doubled box [-t_max, t_max): zero for t < 0
    chi_sig = np.concatenate([np.zeros(n, dtype=complex), h.samples])
    ext_sig = chi_sig.copy()
    refl = _smooth_reflection(h.samples, g.dt, g.t_max)
    ext_sig[n - np.arange(1, n)] = refl
    chi_norm = spectral.time_sobolev_norm(chi_sig, g.dt, s)
    sur_norm = spectral.time_sobolev_norm(ext_sig, g.dt, s)
    if sur_norm < 1e-14 and chi_norm < 1e-14:
        return ChiNormReport(0.0, True, False, bound, chi_norm, sur_norm)
    ratio = chi_norm / sur_norm
    return ChiNormReport(ratio, False, ratio > bound, bound, chi_norm, sur_norm)


@dataclass
class CompatibilityVerdict:
    passed: bool
    s: float
    checks: list

    def __bool__(self):
        return self.passed


def check_compatibility(f: HalfLineFunction, h1: BoundarySignal,
                        h2: BoundarySignal, s: float,
                        tol: float = 1e-6) -> CompatibilityVerdict:
    """Corner compatibility between initial and boundary traces.

    No condition below s = 1/2; h1(0) = f(0) for 1/2 < s <= 3/2; above 3/2
    additionally h2(0) = f'(0).  Differences are measured relative to the
    data scale so the verdict is invariant under common rescaling.
    """
    checks = []
    if s <= 0.5:
        return CompatibilityVerdict(True, s, checks)
    scale = max(float(np.max(np.abs(f.samples))), h1.peak(), h2.peak(), 1e-300)
    d1 = abs(h1.value_at_zero() - f.value_at_zero())
    checks.append(("h1(0) = f(0)", d1, tol * scale, d1 <= tol * scale))
    if s > 1.5:
        d2 = abs(h2.value_at_zero() - f.derivative_at_zero())
        checks.append(("h2(0) = f'(0)", d2, tol * scale, d2 <= tol * scale))
    return CompatibilityVerdict(all(c[-1] for c in checks), s, checks)


def load_halfline_function(path, grid: GridSpec, s=0.0) -> HalfLineFunction:
    """Two-column (x, value) text file, linearly interpolated onto x >= 0 nodes."""
    data = np.loadtxt(path)
    if data.ndim != 2 or data.shape[1] != 2:
        raise BqlineError(f"{path}: expected two columns (x, value)")
    xs, vals = data[:, 0], data[:, 1]
    order = np.argsort(xs)
    samples = np.interp(grid.x_half, xs[order], vals[order], left=0.0, right=0.0)
    return HalfLineFunction(grid, samples, SobolevIndex(float(s)))


def load_boundary_signal(path, grid: GridSpec, s=0.0) -> BoundarySignal:
    """Two-column (t, value) text file, linearly interpolated onto time nodes."""
    data = np.loadtxt(path)
    if data.ndim != 2 or data.shape[1] != 2:
        raise BqlineError(f"{path}: expected two columns (t, value)")
    ts, vals = data[:, 0], data[:, 1]
    order = np.argsort(ts)
    samples = np.interp(grid.times, ts[order], vals[order], left=0.0, right=0.0)
    return BoundarySignal(grid, samples, float(s))
