"""Pure-numpy implementations of the two hot kernels.

Both kernels are written so the compiled core in _core.pyx can reproduce
them bit-for-bit (same weight family, same update ordering); the backend
agreement test relies on that.

duhamel_convolve: causal spectral time-convolution
    out[n, k] = sum_{m<=n} w^{(n)}_m kappa(t_n - t_m, phi_k) ghat[m, k],
    kappa(d, phi) = sin(d phi)/phi, kappa(d, 0) = d,
with the composite-Simpson weight family of quad_weights().  Splitting
sin((t_n - t_m) phi) = sin(t_n phi) cos(t_m phi) - cos(t_n phi) sin(t_m phi)
turns the n_t^2 double sum into parity-indexed prefix sums, O(n_t n_x).

leapfrog_run: explicit two-step march of
    u_tt = u_xx - u_xxxx - (u^2)_xx + F - sigma(x) u_t
on [0, x_max] with u(0) = h1, u_x(0) = h2 imposed through a pinned node
plus one ghost node, and a zero far-end closure behind the sponge.
"""

import numpy as np


def quad_weights(n, dt):
    """Weights w^{(n)}_m (length max(n+1, 3)) for the integral over [0, t_n].

    n = 0: empty integral.  n = 1: one-interval rule with quadratic
    look-ahead (5, 8, -1)/12.  Even n: composite Simpson.  Odd n >= 3:
    Simpson up to n-3 closed with the 3/8 rule.  All O(dt^4).
    """
    if n == 0:
        return np.zeros(3)
    if n == 1:
        return np.array([5.0, 8.0, -1.0]) * dt / 12.0
    w = np.zeros(n + 1)
    if n % 2 == 0:
        w[0] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w[-1] = 1.0
        return w * dt / 3.0
    head = n - 3
    if head >= 2:
        w[:head + 1] = quad_weights(head, dt)
    w[head:] += np.array([1.0, 3.0, 3.0, 1.0]) * 3.0 * dt / 8.0
    return w


def _weighted_prefix(F, dt):
    """X[n] = sum_m w^{(n)}_m F[m] for every n, via parity prefix sums."""
    n_t = F.shape[0]
    X = np.zeros_like(F)
    if n_t < 3:
        for n in range(1, n_t):
            w = quad_weights(n, dt)[:n_t]
            X[n] = np.tensordot(w, F[: w.size], axes=(0, 0))
        return X
    cum = np.cumsum(F, axis=0)
    odd = np.zeros_like(F)
    odd[1::2] = F[1::2]
    cum_odd = np.cumsum(odd, axis=0)
    cum_even = cum - cum_odd

    def simpson_at(n_arr):
        # composite Simpson over [0, t_n] for even n >= 2, vectorized in n
        return (dt / 3.0) * (F[n_arr] - F[0]
                             + 4.0 * cum_odd[n_arr - 1] + 2.0 * cum_even[n_arr - 1])

    X[1] = (dt / 12.0) * (5.0 * F[0] + 8.0 * F[1] - F[2])
    n_even = np.arange(2, n_t, 2)
    if n_even.size:
        X[n_even] = simpson_at(n_even)
    n_odd = np.arange(3, n_t, 2)
    if n_odd.size:
        tail = (3.0 * dt / 8.0) * (F[n_odd - 3] + 3.0 * F[n_odd - 2]
                                   + 3.0 * F[n_odd - 1] + F[n_odd])
        head = n_odd - 3
        X[n_odd] = tail
        pos = head >= 2
        if np.any(pos):
            X[n_odd[pos]] += simpson_at(head[pos])
    return X


def duhamel_convolve(ghat, phi, dt):
    ghat = np.ascontiguousarray(ghat, dtype=complex)
    phi = np.asarray(phi, dtype=float)
    n_t = ghat.shape[0]
    t = dt * np.arange(n_t)
    out = np.zeros_like(ghat)

    nz = phi != 0.0
    if np.any(nz):
        ph = phi[nz]
        tp = np.outer(t, ph)
        cos_tp, sin_tp = np.cos(tp), np.sin(tp)
        g = ghat[:, nz]
        Xc = _weighted_prefix(cos_tp * g, dt)
        Xs = _weighted_prefix(sin_tp * g, dt)
        out[:, nz] = (sin_tp * Xc - cos_tp * Xs) / ph
    if np.any(~nz):
        g = ghat[:, ~nz]
        Xc = _weighted_prefix(g, dt)
        Xs = _weighted_prefix(t[:, None] * g, dt)
        out[:, ~nz] = t[:, None] * Xc - Xs
    return out


def leapfrog_run(u0, u1, h1_vals, h2_vals, dx, dt, n_steps, sigma,
                 nonlinear, forcing, record_steps):
    """March n_steps leapfrog steps; returns u at the requested step indices.

    u0, u1: solution at steps 0 and 1 (m_x physical nodes each).
    h1_vals, h2_vals: boundary values at step times 0..n_steps.
    sigma: damping profile (sponge layer), absorbed semi-implicitly.
    forcing: (n_steps + 1, m_x) array or None.
    record_steps: sorted array of step indices in [0, n_steps].
    """
    m = u0.shape[0]
    prev = np.array(u0, dtype=float)
    cur = np.array(u1, dtype=float)
    record_steps = np.asarray(record_steps, dtype=int)
    records = np.zeros((record_steps.size, m))
    rec_pos = {int(s): i for i, s in enumerate(record_steps)}
    if 0 in rec_pos:
        records[rec_pos[0]] = prev
    if 1 in rec_pos:
        records[rec_pos[1]] = cur

    w = np.zeros(m + 2)  # [ghost at -dx, physical 0..m-1, ghost beyond x_max]
    damp_plus = 1.0 + 0.5 * dt * sigma
    damp_minus = 1.0 - 0.5 * dt * sigma
    inv_dx2 = 1.0 / dx**2
    inv_dx4 = 1.0 / dx**4

    for n in range(1, n_steps):
        w[1:m + 1] = cur
        w[1] = h1_vals[n]
        w[0] = w[2] - 2.0 * dx * h2_vals[n]
        w[m + 1] = 0.0
        i = np.arange(2, m)  # physical j = 1 .. m-2, offset by ghost
        uxx = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * inv_dx2
        uxxxx = (w[i - 2] - 4.0 * w[i - 1] + 6.0 * w[i]
                 - 4.0 * w[i + 1] + w[i + 2]) * inv_dx4
        rhs = uxx - uxxxx
        if nonlinear:
            q = w * w
            rhs = rhs - (q[i + 1] - 2.0 * q[i] + q[i - 1]) * inv_dx2
        if forcing is not None:
            rhs = rhs + forcing[n, 1:m - 1]
        new = np.empty(m)
        new[1:m - 1] = (2.0 * cur[1:m - 1] - prev[1:m - 1] * damp_minus[1:m - 1]
                        + dt * dt * rhs) / damp_plus[1:m - 1]
        new[0] = h1_vals[n + 1]
        new[m - 1] = 0.0
        prev, cur = cur, new
        if n + 1 in rec_pos:
            records[rec_pos[n + 1]] = cur
        if n % 64 == 0 and not np.all(np.abs(cur) < 1e6):
            return records, False
    return records, True
