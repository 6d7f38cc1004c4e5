import math

import mpmath
import pytest

from casimir.dielectric import AL_OMEGA_P, Plasma
from casimir.lifshitz import matsubara_force
from casimir.perturbative import (
    PerturbativeBreakdown,
    ValidityError,
    high_T_asymptote_pl,
    ideal_force,
    perturbative_force_pl,
    perturbative_force_pp,
    series_coefficients,
)
from casimir.units import C, HBAR, K_B, PARALLEL_PLATES, SPHERE_PLATE, ZETA3, Scenario


def test_leading_coefficient_exact():
    assert series_coefficients().c[0] == 24.0


def test_coefficients_alternate_in_sign():
    for order, c in zip(range(2, 7), series_coefficients().c):
        assert (c > 0.0) == (order % 2 == 0)


def test_tilde_map_is_exact():
    coeffs = series_coefficients()
    for order, c, ct in zip(range(2, 7), coeffs.c, coeffs.c_tilde):
        assert ct * (3.0 + order) == 3.0 * c  # bitwise, not approximately


def test_coefficients_frozen():
    c = series_coefficients().c
    assert c == (
        24.0,
        -87.1316008049679,
        243.01606275650514,
        -442.7617061792587,
        156.312713918701,
    )
    ct = series_coefficients().c_tilde
    assert ct == (
        14.4,
        -43.56580040248395,
        104.14974118135935,
        -166.035639817222,
        52.104237972900336,
    )


def test_coefficients_against_mpmath():
    mpmath.mp.dps = 30
    pi2 = mpmath.pi**2
    pi4 = mpmath.pi**4
    exact = (
        mpmath.mpf(24),
        -mpmath.mpf(640) / 7 * (1 - pi2 / 210),
        mpmath.mpf(2800) / 9 * (1 - 163 * pi2 / 7350),
        -mpmath.mpf(10752) / 11 * (1 - 305 * pi2 / 5292 + 379 * pi4 / 1693440),
        mpmath.mpf(37632) / 13 * (1 - 1135 * pi2 / 9720 + 2879 * pi4 / 1358280),
    )
    for c, ref in zip(series_coefficients().c, exact):
        assert c == pytest.approx(float(ref), rel=1e-12)


def test_ideal_force_closed_forms():
    a = 1e-6
    assert ideal_force(PARALLEL_PLATES, a) == -math.pi**2 * HBAR * C / (240.0 * a**4)
    assert ideal_force(SPHERE_PLATE, a, 100e-6) == -math.pi**3 * HBAR * C * 100e-6 / (
        360.0 * a**3
    )
    with pytest.raises(ValueError):
        ideal_force(PARALLEL_PLATES, 0.0)
    with pytest.raises(ValueError):
        ideal_force(SPHERE_PLATE, a)
    with pytest.raises(ValueError):
        ideal_force("cylinder", a)


def test_breakdown_total_is_literal_sum():
    sc = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=300.0, R=100e-6)
    res = perturbative_force_pl(sc, C / AL_OMEGA_P)
    assert isinstance(res, PerturbativeBreakdown)
    assert res.total == res.ideal + res.thermal_ideal + sum(res.conductivity_terms) + res.cross_terms
    assert len(res.conductivity_terms) == 6
    sc_pp = Scenario(geometry=PARALLEL_PLATES, a=1e-6, T=300.0)
    res = perturbative_force_pp(sc_pp, C / AL_OMEGA_P)
    assert res.total == res.ideal + res.thermal_ideal + sum(res.conductivity_terms) + res.cross_terms


def test_perfect_conductor_reduction():
    # delta0 = 0 leaves only the ideal value and its thermal correction
    t = 300.0 / 1144.9422596038391
    sc = Scenario(geometry=PARALLEL_PLATES, a=1e-6, T=300.0)
    res = perturbative_force_pp(sc, 0.0)
    assert all(term == 0.0 for term in res.conductivity_terms)
    assert res.cross_terms == 0.0
    assert res.thermal_ideal == pytest.approx(res.ideal * t**4 / 3.0, rel=1e-12)
    sc = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=300.0, R=100e-6)
    res = perturbative_force_pl(sc, 0.0)
    assert all(term == 0.0 for term in res.conductivity_terms)
    assert res.cross_terms == 0.0
    assert res.thermal_ideal == pytest.approx(
        res.ideal * ((45.0 * ZETA3 / math.pi**3) * t**3 - t**4), rel=1e-12
    )


def test_zero_temperature_reduction():
    sc = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=0.0, R=100e-6)
    delta0 = C / AL_OMEGA_P
    res = perturbative_force_pl(sc, delta0)
    assert res.thermal_ideal == 0.0
    assert res.cross_terms == 0.0
    ratio = delta0 / sc.a
    ct = series_coefficients().c_tilde
    expected = res.ideal * (
        1.0 - 4.0 * ratio + sum(c * ratio**i for i, c in zip(range(2, 7), ct))
    )
    assert res.total == pytest.approx(expected, rel=1e-12, abs=0)


def test_geometry_mismatch_rejected():
    pl = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=300.0, R=100e-6)
    pp = Scenario(geometry=PARALLEL_PLATES, a=1e-6, T=300.0)
    with pytest.raises(ValueError):
        perturbative_force_pp(pl, 0.0)
    with pytest.raises(ValueError):
        perturbative_force_pl(pp, 0.0)


def test_validity_bounds():
    # separation only four penetration depths: series unusable
    sc = Scenario(geometry=SPHERE_PLATE, a=4.0 * C / AL_OMEGA_P, T=0.0, R=100e-6)
    with pytest.raises(ValidityError) as exc_info:
        perturbative_force_pl(sc, C / AL_OMEGA_P)
    assert exc_info.value.bound == "delta0/a < 1/4"
    assert isinstance(exc_info.value, ValueError)
    # 300 K is past the effective temperature of a 5 um gap
    sc = Scenario(geometry=SPHERE_PLATE, a=5e-6, T=300.0, R=100e-6)
    with pytest.raises(ValidityError) as exc_info:
        perturbative_force_pl(sc, C / AL_OMEGA_P)
    assert exc_info.value.bound == "T/T_eff < 1"
    with pytest.raises(ValueError):
        perturbative_force_pl(
            Scenario(geometry=SPHERE_PLATE, a=1e-6, T=300.0, R=100e-6), -1e-9
        )


def test_high_T_asymptote_formula():
    sc = Scenario(geometry=SPHERE_PLATE, a=6e-6, T=300.0, R=100e-6)
    delta0 = C / AL_OMEGA_P
    got = high_T_asymptote_pl(sc, delta0)
    assert got == -ZETA3 / (4.0 * sc.a**2) * sc.R * K_B * sc.T * (1.0 - 2.0 * delta0 / sc.a)
    assert got < 0.0
    # no validity clamp: past delta0 = a/2 the linear factor goes positive
    tiny = Scenario(geometry=SPHERE_PLATE, a=delta0, T=300.0, R=100e-6)
    assert high_T_asymptote_pl(tiny, delta0) > 0.0


def test_high_T_asymptote_rejections():
    pp = Scenario(geometry=PARALLEL_PLATES, a=6e-6, T=300.0)
    with pytest.raises(ValueError):
        high_T_asymptote_pl(pp, 0.0)
    cold = Scenario(geometry=SPHERE_PLATE, a=6e-6, T=0.0, R=100e-6)
    with pytest.raises(ValueError):
        high_T_asymptote_pl(cold, 0.0)
    warm = Scenario(geometry=SPHERE_PLATE, a=6e-6, T=300.0, R=100e-6)
    with pytest.raises(ValueError):
        high_T_asymptote_pl(warm, -1e-9)


def test_series_tracks_full_computation():
    # at a = 1 um both expansion parameters are small and the series
    # should sit on top of the full thermal sum
    sc = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=300.0, R=100e-6)
    series = perturbative_force_pl(sc, C / AL_OMEGA_P).total
    full = matsubara_force(sc, Plasma(AL_OMEGA_P)).value
    assert series == pytest.approx(full, rel=1e-4, abs=0)
