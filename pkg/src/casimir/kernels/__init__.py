"""Quadrature backend selection.

Two interchangeable implementations of ``integrate``:

* ``numba``: scalar kernels compiled with numba (default when numba
  imports cleanly),
* ``numpy``: vectorized pure-numpy fallback.

Pick one explicitly with the ``CASIMIR_BACKEND`` environment variable
(``auto``, ``numba`` or ``numpy``), or programmatically with
:func:`use_backend`.  Results are deterministic within a backend;
across backends they agree to quadrature tolerance, not bitwise.
"""

from __future__ import annotations

import importlib
import os

from .modes import (  # noqa: F401  (re-exported)
    MODE_FINITE,
    MODE_PERFECT,
    MODE_ZERO_PLASMA,
    MODE_ZERO_TM_ONLY,
    WHICH_PL,
    WHICH_PP,
)

BACKEND_ENV = "CASIMIR_BACKEND"

_active = None
_forced: str | None = None


def get_backend(name: str):
    """Import and return a backend module by name ("numba" or "numpy")."""
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    return importlib.import_module(f".{name}_backend", __package__)


def available_backends() -> tuple[str, ...]:
    names = []
    try:
        import numba  # noqa: F401

        names.append("numba")
    except ImportError:
        pass
    names.append("numpy")
    return tuple(names)


def _resolve():
    choice = _forced if _forced is not None else os.environ.get(BACKEND_ENV, "auto")
    if choice in ("", "auto"):
        try:
            return get_backend("numba")
        except ImportError:
            return get_backend("numpy")
    return get_backend(choice)


def use_backend(name: str | None):
    """Force a backend for this process; None restores the env choice."""
    global _active, _forced
    if name is not None and name not in ("numba", "numpy", "auto"):
        raise ValueError(f"unknown backend {name!r}")
    _forced = None if name in (None, "auto") else name
    _active = None


def active_backend():
    """The backend module in effect, resolving it on first use."""
    global _active
    if _active is None:
        _active = _resolve()
    return _active


def active_backend_name() -> str:
    return active_backend().__name__.rsplit(".", 1)[-1].removesuffix("_backend")


def integrate(which, x, param, mode, lo, hi, rel_tol, abs_tol, max_panels=400):
    """Adaptively integrate one integrand family on [lo, hi].

    Parameters
    ----------
    which : int
        WHICH_PP or WHICH_PL.
    x : float
        Dimensionless Matsubara frequency (lower integration limit for
        the thermal sum; 0 for the zero modes).
    param : float
        eps for MODE_FINITE, the dimensionless plasma frequency for
        MODE_ZERO_PLASMA, ignored otherwise.
    mode : int
        One of the MODE_* codes.
    rel_tol, abs_tol : float
        Stop when the error bound <= max(rel_tol * |value|, abs_tol).
    max_panels : int
        Subdivision budget.

    Returns
    -------
    (value, error_bound, status) with status 0 on convergence, 1 when
    the budget ran out (value is then the best partial result).
    """
    lo = float(lo)
    hi = float(hi)
    # the numba driver indexes panel arrays unchecked, so the seed-count
    # guard has to live here rather than in the backend
    seeds = 1
    off = 0.5
    while lo + off < hi and seeds < 62:
        seeds += 1
        off *= 2.0
    if seeds > max_panels:
        raise ValueError(
            f"max_panels={max_panels} is below the {seeds} seed panels "
            f"needed for a window of length {hi - lo!r}"
        )
    value, err, status = active_backend().integrate(
        which, x, param, mode, lo, hi, rel_tol, abs_tol, max_panels
    )
    return float(value), float(err), int(status)
