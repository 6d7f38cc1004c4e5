"""Closed-form force expansions for small penetration depth and low T.

The working formulas are sixth-order series in delta0 / a (delta0 =
c / omega_p, the effective penetration depth) with thermal corrections
in t = T / T_eff mixed in at third and fourth order:

    plates:       F = F0_pp * (1 + t**4/3
                      - (16/3)(d/a) [1 - (45 zeta3 / 8 pi**3) t**3]
                      + sum_{i=2..6} c_i (d/a)**i)
    sphere-plate: F = F0_pl * (1 + (45 zeta3 / pi**3) t**3 - t**4
                      - 4 (d/a) [1 - (45 zeta3 / 2 pi**3) t**3 + t**4]
                      + sum_{i=2..6} c~_i (d/a)**i)

with the ideal zero-temperature values F0_pp = -pi**2 hbar c/(240 a**4)
and F0_pl = -pi**3 hbar c R/(360 a**3), and c~_i = 3 c_i / (3 + i).
Beyond t ~ 1 the expansion breaks down and the high-temperature closed
form (dominated by the zero mode) takes over:

    F_pl = -(zeta3 / (4 a**2)) R k_B T (1 - 2 d/a).

Coefficients are evaluated from their closed forms at call time, not
stored as decimals, so a transcription slip trips the exactness checks
(c_2 = 24 and the 3/(3+i) map) instead of shifting results silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .units import (
    C,
    HBAR,
    K_B,
    PARALLEL_PLATES,
    SPHERE_PLATE,
    ZETA3,
    Scenario,
    effective_temperature,
)


class ValidityError(ValueError):
    """A perturbative bound was violated; .bound names which one."""

    def __init__(self, bound: str, detail: str):
        self.bound = bound
        super().__init__(f"outside series validity ({bound}): {detail}")


@dataclass(frozen=True)
class SeriesCoefficients:
    """Conductivity-series coefficients for orders 2..6.

    c drives the plates series, c_tilde the sphere-plate one.
    Index [0] is order 2.
    """

    c: tuple[float, float, float, float, float]
    c_tilde: tuple[float, float, float, float, float]


def series_coefficients() -> SeriesCoefficients:
    pi2 = math.pi**2
    pi4 = pi2 * pi2
    c = (
        24.0,
        -(640.0 / 7.0) * (1.0 - pi2 / 210.0),
        (2800.0 / 9.0) * (1.0 - 163.0 * pi2 / 7350.0),
        -(10752.0 / 11.0) * (1.0 - 305.0 * pi2 / 5292.0 + 379.0 * pi4 / 1693440.0),
        (37632.0 / 13.0) * (1.0 - 1135.0 * pi2 / 9720.0 + 2879.0 * pi4 / 1358280.0),
    )
    c_tilde = tuple(3.0 * ci / (3.0 + i) for i, ci in zip(range(2, 7), c))
    return SeriesCoefficients(c=c, c_tilde=c_tilde)


def ideal_force(geometry: str, a: float, R: float | None = None) -> float:
    """Zero-temperature perfect-conductor value: pressure (pp) or force (pl)."""
    if not a > 0.0:
        raise ValueError(f"separation must be positive, got {a!r}")
    if geometry == PARALLEL_PLATES:
        return -math.pi**2 * HBAR * C / (240.0 * a**4)
    if geometry == SPHERE_PLATE:
        if R is None or not R > 0.0:
            raise ValueError("sphere-plate needs a positive radius R")
        return -math.pi**3 * HBAR * C * R / (360.0 * a**3)
    raise ValueError(f"unknown geometry {geometry!r}")


@dataclass(frozen=True)
class PerturbativeBreakdown:
    """Term-by-term decomposition of a perturbative force value.

    conductivity_terms holds orders 1..6 of the pure (d/a)**i series;
    cross_terms collects the mixed conductivity-temperature pieces.
    total is the literal float sum ideal + thermal_ideal +
    sum(conductivity_terms) + cross_terms.
    """

    ideal: float
    thermal_ideal: float
    conductivity_terms: tuple[float, ...]
    cross_terms: float
    total: float


def _check_bounds(scenario: Scenario, delta0: float):
    if delta0 < 0.0:
        raise ValueError(f"penetration depth must be >= 0, got {delta0!r}")
    ratio = delta0 / scenario.a
    t = scenario.T / effective_temperature(scenario.a)
    if ratio >= 0.25:
        raise ValidityError("delta0/a < 1/4", f"delta0/a = {ratio:.4g}")
    if t >= 1.0:
        raise ValidityError("T/T_eff < 1", f"T/T_eff = {t:.4g}")
    return ratio, t


def perturbative_force_pp(scenario: Scenario, delta0: float) -> PerturbativeBreakdown:
    """Sixth-order plates pressure with thermal corrections, in N/m**2."""
    if scenario.geometry != PARALLEL_PLATES:
        raise ValueError("plates formula needs a parallel-plates scenario")
    ratio, t = _check_bounds(scenario, delta0)
    f0 = ideal_force(PARALLEL_PLATES, scenario.a)
    coeffs = series_coefficients().c
    thermal = f0 * t**4 / 3.0
    cond = [f0 * (-16.0 / 3.0) * ratio]
    cond += [f0 * ci * ratio**i for i, ci in zip(range(2, 7), coeffs)]
    cross = f0 * (16.0 / 3.0) * ratio * (45.0 * ZETA3 / (8.0 * math.pi**3)) * t**3
    total = f0 + thermal + sum(cond) + cross
    return PerturbativeBreakdown(
        ideal=f0,
        thermal_ideal=thermal,
        conductivity_terms=tuple(cond),
        cross_terms=cross,
        total=total,
    )


def perturbative_force_pl(scenario: Scenario, delta0: float) -> PerturbativeBreakdown:
    """Sixth-order sphere-plate force with thermal corrections, in N."""
    if scenario.geometry != SPHERE_PLATE:
        raise ValueError("sphere-plate formula needs a sphere-plate scenario")
    ratio, t = _check_bounds(scenario, delta0)
    f0 = ideal_force(SPHERE_PLATE, scenario.a, scenario.R)
    coeffs = series_coefficients().c_tilde
    thermal = f0 * ((45.0 * ZETA3 / math.pi**3) * t**3 - t**4)
    cond = [f0 * (-4.0) * ratio]
    cond += [f0 * ci * ratio**i for i, ci in zip(range(2, 7), coeffs)]
    cross = f0 * 4.0 * ratio * ((45.0 * ZETA3 / (2.0 * math.pi**3)) * t**3 - t**4)
    total = f0 + thermal + sum(cond) + cross
    return PerturbativeBreakdown(
        ideal=f0,
        thermal_ideal=thermal,
        conductivity_terms=tuple(cond),
        cross_terms=cross,
        total=total,
    )


def high_T_asymptote_pl(scenario: Scenario, delta0: float) -> float:
    """Large-separation (zero-mode dominated) sphere-plate force, in N.

    No validity bounds are enforced; at delta0/a = 1/2 the linear
    correction factor crosses zero, which is a series boundary
    artifact, not physics.
    """
    if scenario.geometry != SPHERE_PLATE:
        raise ValueError("the asymptote applies to sphere-plate scenarios")
    if not scenario.T > 0.0:
        raise ValueError("the asymptote describes the thermal zero mode; T must be > 0")
    if delta0 < 0.0:
        raise ValueError(f"penetration depth must be >= 0, got {delta0!r}")
    a = scenario.a
    return -ZETA3 / (4.0 * a**2) * scenario.R * K_B * scenario.T * (1.0 - 2.0 * delta0 / a)
