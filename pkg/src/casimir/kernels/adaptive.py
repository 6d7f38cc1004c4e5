"""Generic adaptive Gauss-Kronrod driver.

Subdivides worst-error-first (leftmost panel wins ties), stops when the
summed Kronrod-Gauss error bound drops under max(rel_tol * |total|,
abs_tol), and accumulates the final sum over panels ordered by left
endpoint so results do not depend on subdivision history.

The integrands here decay exponentially, so seed panels grow
geometrically from the lower endpoint: widths 0.5, 0.5, 1, 2, 4, ...
The numba backend mirrors this driver exactly; keep the two in sync.
"""

from __future__ import annotations

import numpy as np

from .gk import NODES15, WG15, WGK15

STATUS_OK = 0
STATUS_MAX_PANELS = 1


def seed_edges(lo: float, hi: float) -> list[float]:
    """Panel edges at lo + (0.5, 1, 2, 4, ...) capped at hi."""
    edges = [lo]
    off = 0.5
    while lo + off < hi and len(edges) < 62:
        edges.append(lo + off)
        off *= 2.0
    edges.append(hi)
    return edges


def gk_panel(f, a: float, b: float):
    """Apply the 7-15 rule to a scalar callable on [a, b].

    Returns (kronrod_value, |kronrod - gauss|).
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    resk = 0.0
    resg = 0.0
    for j in range(15):
        fj = f(c + h * NODES15[j])
        resk += WGK15[j] * fj
        resg += WG15[j] * fj
    resk *= h
    return resk, abs(resk - h * resg)


def adaptive_panels(eval_panel, lo, hi, rel_tol, abs_tol, max_panels):
    """Run the worst-first subdivision loop.

    eval_panel(a, b) -> (value, error_bound) supplies the rule; this
    function owns seeding, refinement and the deterministic final sum.
    Returns (value, error_bound, status).
    """
    pan_lo = np.empty(max_panels)
    pan_hi = np.empty(max_panels)
    pan_val = np.empty(max_panels)
    pan_err = np.empty(max_panels)

    edges = seed_edges(lo, hi)
    n = len(edges) - 1
    if n > max_panels:
        raise ValueError("max_panels smaller than the seed panel count")
    for i in range(n):
        v, e = eval_panel(edges[i], edges[i + 1])
        pan_lo[i] = edges[i]
        pan_hi[i] = edges[i + 1]
        pan_val[i] = v
        pan_err[i] = e

    status = STATUS_OK
    while True:
        total = 0.0
        err = 0.0
        for i in range(n):
            total += pan_val[i]
            err += pan_err[i]
        if err <= max(rel_tol * abs(total), abs_tol):
            break
        if n >= max_panels:
            status = STATUS_MAX_PANELS
            break
        iw = 0
        ew = pan_err[0]
        for i in range(1, n):
            if pan_err[i] > ew:
                ew = pan_err[i]
                iw = i
        a = pan_lo[iw]
        b = pan_hi[iw]
        c = 0.5 * (a + b)
        v1, e1 = eval_panel(a, c)
        v2, e2 = eval_panel(c, b)
        pan_hi[iw] = c
        pan_val[iw] = v1
        pan_err[iw] = e1
        pan_lo[n] = c
        pan_hi[n] = b
        pan_val[n] = v2
        pan_err[n] = e2
        n += 1

    order = np.argsort(pan_lo[:n], kind="stable")
    total = 0.0
    err = 0.0
    for k in order:
        total += pan_val[k]
        err += pan_err[k]
    return float(total), float(err), status


def adaptive_gk(f, lo, hi, rel_tol, abs_tol, max_panels=400):
    """Adaptively integrate a scalar callable; see adaptive_panels."""
    return adaptive_panels(lambda a, b: gk_panel(f, a, b), lo, hi, rel_tol, abs_tol, max_panels)
