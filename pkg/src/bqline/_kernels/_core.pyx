# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the two hot kernels.

Mirrors _numpy_impl exactly: same quadrature-weight family, same update
ordering, so both backends agree to roundoff.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def duhamel_convolve(ghat, phi, double dt):
    """Causal spectral time-convolution with composite-Simpson weights.

    out[n, k] = sum_{m<=n} w^(n)_m kappa(t_n - t_m, phi_k) ghat[m, k]
    via parity prefix sums, O(n_t * n_x).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] g = \
        np.ascontiguousarray(ghat, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ph = \
        np.ascontiguousarray(phi, dtype=np.float64)
    cdef Py_ssize_t n_t = g.shape[0]
    cdef Py_ssize_t n_x = g.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = \
        np.zeros((n_t, n_x), dtype=np.complex128)
    if n_t < 3:
        # tiny grids: defer to the reference implementation
        from . import _numpy_impl
        return _numpy_impl.duhamel_convolve(np.asarray(g), np.asarray(ph), dt)

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] C = np.empty(n_t, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] S = np.empty(n_t, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] co = np.empty(n_t, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ce = np.empty(n_t, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] so = np.empty(n_t, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] se = np.empty(n_t, dtype=np.complex128)
    cdef Py_ssize_t k, m, n, head
    cdef double p, tm, cn, sn
    cdef double complex acc_o, acc_e, sacc_o, sacc_e, Xc, Xs, gm

    for k in range(n_x):
        p = ph[k]
        if p != 0.0:
            for m in range(n_t):
                tm = dt * m
                gm = g[m, k]
                C[m] = cos(tm * p) * gm
                S[m] = sin(tm * p) * gm
        else:
            for m in range(n_t):
                gm = g[m, k]
                C[m] = gm
                S[m] = (dt * m) * gm
        acc_o = 0
        acc_e = 0
        sacc_o = 0
        sacc_e = 0
        for m in range(n_t):
            if m % 2 == 1:
                acc_o = acc_o + C[m]
                sacc_o = sacc_o + S[m]
            else:
                acc_e = acc_e + C[m]
                sacc_e = sacc_e + S[m]
            co[m] = acc_o
            ce[m] = acc_e
            so[m] = sacc_o
            se[m] = sacc_e

        out[0, k] = 0
        for n in range(1, n_t):
            if n == 1:
                Xc = (dt / 12.0) * (5.0 * C[0] + 8.0 * C[1] - C[2])
                Xs = (dt / 12.0) * (5.0 * S[0] + 8.0 * S[1] - S[2])
            elif n % 2 == 0:
                Xc = (dt / 3.0) * (C[n] - C[0] + 4.0 * co[n - 1] + 2.0 * ce[n - 1])
                Xs = (dt / 3.0) * (S[n] - S[0] + 4.0 * so[n - 1] + 2.0 * se[n - 1])
            else:
                Xc = (3.0 * dt / 8.0) * (C[n - 3] + 3.0 * C[n - 2]
                                         + 3.0 * C[n - 1] + C[n])
                Xs = (3.0 * dt / 8.0) * (S[n - 3] + 3.0 * S[n - 2]
                                         + 3.0 * S[n - 1] + S[n])
                head = n - 3
                if head >= 2:
                    Xc = Xc + (dt / 3.0) * (C[head] - C[0]
                                            + 4.0 * co[head - 1] + 2.0 * ce[head - 1])
                    Xs = Xs + (dt / 3.0) * (S[head] - S[0]
                                            + 4.0 * so[head - 1] + 2.0 * se[head - 1])
            if p != 0.0:
                cn = cos(dt * n * p)
                sn = sin(dt * n * p)
                out[n, k] = (sn * Xc - cn * Xs) / p
            else:
                out[n, k] = (dt * n) * Xc - Xs
    return out


def leapfrog_run(u0, u1, h1_vals, h2_vals, double dx, double dt,
                 Py_ssize_t n_steps, sigma, bint nonlinear, forcing,
                 record_steps):
    """Explicit two-step march; see _numpy_impl.leapfrog_run for semantics."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prev = \
        np.array(u0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur = \
        np.array(u1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] h1 = \
        np.ascontiguousarray(h1_vals, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] h2 = \
        np.ascontiguousarray(h2_vals, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sig = \
        np.ascontiguousarray(sigma, dtype=np.float64)
    cdef Py_ssize_t m = prev.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] rec = \
        np.ascontiguousarray(record_steps, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] records = \
        np.zeros((rec.shape[0], m), dtype=np.float64)
    cdef bint has_forcing = forcing is not None
    cdef cnp.ndarray[cnp.float64_t, ndim=2] F
    if has_forcing:
        F = np.ascontiguousarray(forcing, dtype=np.float64)
    else:
        F = np.zeros((1, 1))

    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.zeros(m + 2, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] q = np.zeros(m + 2, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] new = np.zeros(m, dtype=np.float64)
    cdef double inv_dx2 = 1.0 / (dx * dx)
    cdef double inv_dx4 = inv_dx2 * inv_dx2
    cdef double rhs, peak
    cdef Py_ssize_t n, i, j, r
    cdef Py_ssize_t n_rec = rec.shape[0]
    cdef Py_ssize_t rpos = 0

    while rpos < n_rec and rec[rpos] <= 1:
        if rec[rpos] == 0:
            for j in range(m):
                records[rpos, j] = prev[j]
        else:
            for j in range(m):
                records[rpos, j] = cur[j]
        rpos += 1

    for n in range(1, n_steps):
        for j in range(m):
            w[j + 1] = cur[j]
        w[1] = h1[n]
        w[0] = w[2] - 2.0 * dx * h2[n]
        w[m + 1] = 0.0
        if nonlinear:
            for j in range(m + 2):
                q[j] = w[j] * w[j]
        for i in range(2, m):
            rhs = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * inv_dx2 \
                - (w[i - 2] - 4.0 * w[i - 1] + 6.0 * w[i]
                   - 4.0 * w[i + 1] + w[i + 2]) * inv_dx4
            if nonlinear:
                rhs = rhs - (q[i + 1] - 2.0 * q[i] + q[i - 1]) * inv_dx2
            if has_forcing:
                rhs = rhs + F[n, i - 1]
            new[i - 1] = (2.0 * w[i] - prev[i - 1] * (1.0 - 0.5 * dt * sig[i - 1])
                          + dt * dt * rhs) / (1.0 + 0.5 * dt * sig[i - 1])
        new[0] = h1[n + 1]
        new[m - 1] = 0.0
        for j in range(m):
            prev[j] = cur[j]
            cur[j] = new[j]
        if rpos < n_rec and rec[rpos] == n + 1:
            for j in range(m):
                records[rpos, j] = cur[j]
            rpos += 1
        if n % 64 == 0:
            peak = 0.0
            for j in range(m):
                if cur[j] > peak:
                    peak = cur[j]
                elif -cur[j] > peak:
                    peak = -cur[j]
            if peak >= 1e6:
                return records, False
    return records, True
