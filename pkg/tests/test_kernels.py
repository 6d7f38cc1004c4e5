import math

import numpy as np
import pytest
import scipy.integrate

from casimir import kernels
from casimir.kernels import (
    MODE_FINITE,
    MODE_PERFECT,
    MODE_ZERO_PLASMA,
    MODE_ZERO_TM_ONLY,
    WHICH_PL,
    WHICH_PP,
)
from casimir.kernels.adaptive import seed_edges
from casimir.kernels.gk import NODES15, WG15, WGK15
from casimir.units import ZETA3

# generous window: the integrands decay like e**-z
HI = 90.0
TIGHT = dict(rel_tol=1e-12, abs_tol=0.0, max_panels=400)


@pytest.fixture
def restore_backend():
    yield
    kernels.use_backend(None)


def test_gk_weights_and_nodes():
    # both rules integrate 1 exactly over [-1, 1]
    assert float(np.sum(WGK15)) == pytest.approx(2.0, abs=1e-14)
    assert float(np.sum(WG15)) == pytest.approx(2.0, abs=1e-14)
    # nodes ascend symmetrically about 0
    assert np.all(np.diff(NODES15) > 0)
    assert np.allclose(NODES15, -NODES15[::-1])
    assert np.allclose(WGK15, WGK15[::-1])
    # odd monomials vanish by symmetry; x**2 integrates to 2/3
    assert float(WGK15 @ NODES15) == pytest.approx(0.0, abs=1e-15)
    assert float(WGK15 @ NODES15**2) == pytest.approx(2.0 / 3.0, abs=1e-14)


def test_perfect_conductor_anchors():
    # sum_k 2/k**3 per polarization from z**2 e**-z / (1 - e**-z)
    v, err, status = kernels.integrate(WHICH_PP, 0.0, 0.0, MODE_PERFECT, 0.0, HI, **TIGHT)
    assert status == 0
    assert v == pytest.approx(4.0 * ZETA3, rel=1e-11)
    assert abs(v - 4.0 * ZETA3) <= 10 * err + 1e-12
    v, err, status = kernels.integrate(WHICH_PL, 0.0, 0.0, MODE_PERFECT, 0.0, HI, **TIGHT)
    assert status == 0
    assert v == pytest.approx(-2.0 * ZETA3, rel=1e-11)


def test_tm_only_anchors():
    # dropping the TE channel halves the perfect-conductor values
    v, _, _ = kernels.integrate(WHICH_PP, 0.0, 0.0, MODE_ZERO_TM_ONLY, 0.0, HI, **TIGHT)
    assert v == pytest.approx(2.0 * ZETA3, rel=1e-11)
    v, _, _ = kernels.integrate(WHICH_PL, 0.0, 0.0, MODE_ZERO_TM_ONLY, 0.0, HI, **TIGHT)
    assert v == pytest.approx(-ZETA3, rel=1e-11)


def test_zero_plasma_interpolates_between_limits():
    # the TE remnant grows with the dimensionless plasma frequency w,
    # sweeping the zero mode from TM-only (w -> 0) to perfect (w -> inf)
    tm_only = 2.0 * ZETA3
    perfect = 4.0 * ZETA3
    prev = tm_only
    for w in (1.0, 10.0, 100.0, 3000.0):
        v, _, _ = kernels.integrate(WHICH_PP, 0.0, w, MODE_ZERO_PLASMA, 0.0, HI, **TIGHT)
        assert tm_only < v < perfect
        assert v > prev
        prev = v
    assert prev == pytest.approx(perfect, rel=2e-3)  # w = 3000 is nearly ideal


def _sqrt_form_integrand(which, x, eps):
    # independent reference: textbook sqrt form of the reflectances
    def f(z):
        rho = math.sqrt(z * z + (eps - 1.0) * x * x)
        r_tm = (eps * z - rho) / (eps * z + rho)
        r_te = (z - rho) / (z + rho)
        t1 = r_tm * r_tm * math.exp(-z)
        t2 = r_te * r_te * math.exp(-z)
        if which == WHICH_PP:
            return z * z * (t1 / (1.0 - t1) + t2 / (1.0 - t2))
        return z * (math.log1p(-t1) + math.log1p(-t2))

    return f


@pytest.mark.parametrize(
    "which, x, eps",
    [(WHICH_PP, 0.7, 25.0), (WHICH_PL, 1.2, 100.0), (WHICH_PP, 3.0, 2.5), (WHICH_PL, 0.05, 1e4)],
)
def test_finite_eps_against_scipy_quad(which, x, eps):
    oracle, oracle_err = scipy.integrate.quad(
        _sqrt_form_integrand(which, x, eps), x, x + HI, epsabs=1e-14, epsrel=1e-12, limit=200
    )
    v, err, status = kernels.integrate(which, x, eps, MODE_FINITE, x, x + HI, **TIGHT)
    assert status == 0
    assert v == pytest.approx(oracle, rel=1e-9, abs=1e-14)
    assert abs(v - oracle) <= 100 * (err + oracle_err) + 1e-13


def test_finite_eps_frozen_values():
    # mpmath mp.quad at 30 significant digits over [x, x+15, x+60, inf]
    v, _, status = kernels.integrate(WHICH_PP, 0.7, 25.0, MODE_FINITE, 0.7, 0.7 + HI, **TIGHT)
    assert status == 0
    assert v == pytest.approx(1.7384600650164046349, rel=1e-10)
    v, _, status = kernels.integrate(WHICH_PL, 1.2, 100.0, MODE_FINITE, 1.2, 1.2 + HI, **TIGHT)
    assert status == 0
    assert v == pytest.approx(-0.86623166751048628723, rel=1e-10)


CASES = [
    (WHICH_PP, 0.7, 25.0, MODE_FINITE, 0.7),
    (WHICH_PL, 1.2, 100.0, MODE_FINITE, 1.2),
    (WHICH_PP, 0.0, 0.0, MODE_PERFECT, 0.0),
    (WHICH_PL, 0.0, 128.0, MODE_ZERO_PLASMA, 0.0),
    (WHICH_PP, 0.0, 0.0, MODE_ZERO_TM_ONLY, 0.0),
]


@pytest.mark.skipif(
    "numba" not in kernels.available_backends(), reason="numba backend unavailable"
)
def test_backends_agree(restore_backend):
    results = {}
    for name in ("numba", "numpy"):
        kernels.use_backend(name)
        assert kernels.active_backend_name() == name
        results[name] = [
            kernels.integrate(which, x, param, mode, lo, lo + HI, **TIGHT)
            for (which, x, param, mode, lo) in CASES
        ]
    for (va, ea, _), (vb, eb, _) in zip(results["numba"], results["numpy"]):
        assert abs(va - vb) <= ea + eb + 1e-13 * max(abs(va), abs(vb))
        assert va == pytest.approx(vb, rel=1e-10)


def test_bitwise_determinism_within_backend():
    for which, x, param, mode, lo in CASES:
        a = kernels.integrate(which, x, param, mode, lo, lo + HI, **TIGHT)
        b = kernels.integrate(which, x, param, mode, lo, lo + HI, **TIGHT)
        assert a == b  # identical floats, not approximately


def test_budget_exhaustion_returns_partial():
    # an unreachable tolerance parks at the budget with the best sum so far
    v, err, status = kernels.integrate(
        WHICH_PL, 1.2, 100.0, MODE_FINITE, 1.2, 41.2, 0.0, 0.0, 16
    )
    assert status == 1
    assert err > 0.0
    assert v == pytest.approx(-0.86623166751048628723, rel=1e-9)


def test_seed_guard_rejects_small_budget():
    with pytest.raises(ValueError, match="seed panels"):
        kernels.integrate(WHICH_PP, 0.0, 0.0, MODE_PERFECT, 0.0, 1e7, 1e-10, 0.0, 16)


def test_seed_edges_properties():
    edges = seed_edges(2.0, 42.0)
    assert edges[0] == 2.0
    assert edges[-1] == 42.0
    assert all(b > a for a, b in zip(edges, edges[1:]))
    # geometric growth from the lower endpoint, then the cap
    assert edges[1] == 2.5
    assert edges[2] == 3.0
    assert edges[3] == 4.0
    widths = np.diff(edges[1:-1])
    assert np.all(np.diff(np.log2(widths)) >= 0)
    # a window shorter than the first offset collapses to one panel
    assert seed_edges(0.0, 0.3) == [0.0, 0.3]


def test_unknown_backend_rejected(restore_backend):
    with pytest.raises(ValueError, match="unknown backend"):
        kernels.use_backend("fortran")
    with pytest.raises(ValueError, match="unknown backend"):
        kernels.get_backend("quadpack")
    kernels.use_backend("numpy")
    assert kernels.active_backend_name() == "numpy"
    kernels.use_backend(None)
    assert kernels.active_backend_name() in ("numba", "numpy")
