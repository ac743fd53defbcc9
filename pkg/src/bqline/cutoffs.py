"""Smooth cutoff functions and the half-line indicator.

All cutoffs are built from the standard exp(-1/x) mollifier, so they are
C-infinity with exactly the support properties the solver relies on:

* ``eta``  == 1 on [-1, 1], supported in [-2, 2]   (time window)
* ``rho``  == 1 on [0, inf), supported in [-1, inf)  (spatial decay guard)
"""

import numpy as np

__all__ = ["smooth_step", "eta", "rho", "chi"]


def _mollifier(x):
    # exp(-1/x) for x > 0, 0 otherwise; vectorized and overflow-safe
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0.0
    with np.errstate(over="ignore", under="ignore"):
        out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly monotone between."""
    a = _mollifier(x)
    b = _mollifier(1.0 - np.asarray(x, dtype=float))
    return a / (a + b)


def eta(t):
    """Smooth time bump: 1 on [-1, 1], support contained in [-2, 2]."""
    return smooth_step(2.0 - np.abs(np.asarray(t, dtype=float)))


def rho(x):
    """Smooth guard: 1 on [0, inf), support contained in [-1, inf)."""
    return smooth_step(np.asarray(x, dtype=float) + 1.0)


def chi(t):
    """Indicator of [0, inf) as floats."""
    return (np.asarray(t, dtype=float) >= 0.0).astype(float)
