# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled projected-gradient kernel for the sign-consistency quadratic program."""
from libc.math cimport fabs

from scipy.linalg.cython_blas cimport dgemv, ddot

import numpy as np


def pgd_minimize(const double[:, ::1] quad,
                 const double[::1] tau,
                 const signed char[::1] signs,
                 double step,
                 double rel_tol,
                 int max_iter):
    """Minimize z' quad z over the half-lines pinned at tau by the signs.

    Coordinates with signs[i] > 0 are constrained to z_i >= tau_i, the rest
    to z_i <= tau_i. Starts at z = tau, iterates clamped gradient steps
    z <- clamp(z - step * quad @ z), and stops when the objective decrease
    drops below rel_tol * (1 + objective at the start) or after max_iter
    updates. ``quad`` must be symmetric and C-contiguous.

    Returns (z, iterations, hit_iteration_cap, objective).
    """
    cdef int n = quad.shape[0]
    cdef int inc = 1
    cdef char trans_n = b'n'
    cdef double one = 1.0, zero = 0.0
    cdef int it, i
    cdef double zi, f, f_prev, tol

    z_arr = np.ascontiguousarray(tau, dtype=np.float64).copy()
    g_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] z = z_arr
    cdef double[::1] g = g_arr

    # C-order symmetric quad seen column-major is its transpose == itself.
    dgemv(&trans_n, &n, &n, &one, <double*>&quad[0, 0], &n, &z[0], &inc, &zero, &g[0], &inc)
    f_prev = ddot(&n, &z[0], &inc, &g[0], &inc)
    tol = rel_tol * (1.0 + f_prev)

    for it in range(1, max_iter + 1):
        for i in range(n):
            zi = z[i] - step * g[i]
            if signs[i] > 0:
                z[i] = zi if zi > tau[i] else tau[i]
            else:
                z[i] = zi if zi < tau[i] else tau[i]
        dgemv(&trans_n, &n, &n, &one, <double*>&quad[0, 0], &n, &z[0], &inc, &zero, &g[0], &inc)
        f = ddot(&n, &z[0], &inc, &g[0], &inc)
        if fabs(f_prev - f) <= tol:
            return z_arr, it, False, f
        f_prev = f

    return z_arr, max_iter, True, f_prev
