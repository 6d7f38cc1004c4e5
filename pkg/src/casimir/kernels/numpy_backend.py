"""Vectorized quadrature kernels, pure numpy.

Fallback backend: evaluates each 15-node panel as one array operation
and reuses the generic driver from adaptive.py.  Must produce the same
panels as numba_backend.integrate; only the within-panel summation
order differs.
"""

import numpy as np

from .adaptive import adaptive_panels
from .gk import NODES15, WG15, WGK15


def _reflection_sq(which, z, x, param, mode):
    if mode == 1:
        one = np.ones_like(z)
        return one, one
    if mode == 0:
        eps = param
        em1 = eps - 1.0
        y = np.sqrt(em1 * x * x + z * z)
        r1 = em1 * ((eps + 1.0) * z * z - x * x) / (eps * z + y) ** 2
        r2 = em1 * x * x / (z + y) ** 2
        return r1 * r1, r2 * r2
    if mode == 2:
        w = param
        y = np.sqrt(z * z + w * w)
        r2 = w * w / (y + z) ** 2
        return np.ones_like(z), r2 * r2
    return np.ones_like(z), np.zeros_like(z)


def _integrand(which, z, x, param, mode):
    r1sq, r2sq = _reflection_sq(which, z, x, param, mode)
    e = np.exp(-z)
    t1 = r1sq * e
    t2 = r2sq * e
    if which == 0:
        return z * z * (t1 / (1.0 - t1) + t2 / (1.0 - t2))
    return z * (np.log1p(-t1) + np.log1p(-t2))


def integrate(which, x, param, mode, lo, hi, rel_tol, abs_tol, max_panels):
    def eval_panel(a, b):
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        f = _integrand(which, c + h * NODES15, x, param, mode)
        resk = h * float(WGK15 @ f)
        resg = h * float(WG15 @ f)
        return resk, abs(resk - resg)

    return adaptive_panels(eval_panel, lo, hi, rel_tol, abs_tol, max_panels)
