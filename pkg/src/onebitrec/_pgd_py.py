"""Pure-numpy fallback for the projected-gradient kernel.

Mirrors the update and stopping semantics of the compiled extension exactly;
used when the extension is unavailable or explicitly disabled.
"""
from __future__ import annotations

import numpy as np


def pgd_minimize(quad, tau, signs, step, rel_tol, max_iter):
    """See ``onebitrec._pgd.pgd_minimize``; same contract, same return tuple."""
    tau = np.asarray(tau, dtype=np.float64)
    lower = np.where(signs > 0, tau, -np.inf)
    upper = np.where(signs > 0, np.inf, tau)

    z = tau.copy()
    g = quad @ z
    f_prev = float(z @ g)
    tol = rel_tol * (1.0 + f_prev)

    for it in range(1, max_iter + 1):
        np.clip(z - step * g, lower, upper, out=z)
        g = quad @ z
        f = float(z @ g)
        if abs(f_prev - f) <= tol:
            return z, it, False, f
        f_prev = f

    return z, max_iter, True, f_prev
