"""Physical constants and problem geometry.

All quantities are SI throughout the package: separations in meters,
temperatures in kelvin, frequencies in rad/s, forces in newtons and
pressures in Pa.  Display conversion (pN, mPa, um) happens only at the
reporting boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

# CODATA 2018.  hbar in J*s, c in m/s (exact), k_B in J/K (exact).
HBAR = 1.054571817e-34
C = 299792458.0
K_B = 1.380649e-23

# Riemann zeta(3), Apery's constant.
ZETA3 = 1.2020569031595943

# Geometry tags.
PARALLEL_PLATES = "pp"
SPHERE_PLATE = "pl"

# Sphere-plate results use the proximity force approximation, which is
# controlled by a/R.  Below this ratio the scenario carries a flag.
PFA_MIN_RADIUS_RATIO = 20.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the constants the formulas depend on."""

    hbar: float = HBAR
    c: float = C
    k_B: float = K_B
    zeta3: float = ZETA3


CODATA2018 = PhysicalConstants()


@dataclass(frozen=True)
class Scenario:
    """Geometric configuration of a single force evaluation.

    Parameters
    ----------
    geometry : str
        Either ``PARALLEL_PLATES`` ("pp", force per unit area) or
        ``SPHERE_PLATE`` ("pl", force on a sphere of radius R above a
        plate, proximity force approximation).
    a : float
        Surface separation in meters, a > 0.
    T : float
        Temperature in kelvin, T >= 0.  T = 0 selects the genuine
        zero-temperature formulas, not a limit of the thermal sum.
    R : float, optional
        Sphere radius in meters.  Required for sphere-plate, must stay
        None for parallel plates.
    """

    geometry: str
    a: float
    T: float
    R: Optional[float] = None
    pfa_questionable: bool = field(init=False, default=False)

    def __post_init__(self):
        if self.geometry not in (PARALLEL_PLATES, SPHERE_PLATE):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise ValueError(f"separation must be positive, got {self.a!r}")
        if not (self.T >= 0.0) or not math.isfinite(self.T):
            raise ValueError(f"temperature must be >= 0, got {self.T!r}")
        if self.geometry == SPHERE_PLATE:
            if self.R is None:
                raise ValueError("sphere-plate geometry requires a radius R")
            if not (self.R > 0.0) or not math.isfinite(self.R):
                raise ValueError(f"radius must be positive, got {self.R!r}")
            if self.R / self.a < PFA_MIN_RADIUS_RATIO:
                object.__setattr__(self, "pfa_questionable", True)
        elif self.R is not None:
            raise ValueError("parallel plates take no radius")


@dataclass(frozen=True)
class DerivedScales:
    """Dimensionless scales of a scenario.

    Attributes
    ----------
    T_eff : float
        Effective temperature, k_B T_eff = hbar c / (2 a), in kelvin.
    t : float
        Reduced temperature T / T_eff.
    tau : float
        Matsubara spacing 2 pi T / T_eff; the n-th dimensionless
        frequency is x_n = tau * n.
    delta0 : float
        Effective penetration depth c / omega_p in meters.  0 for a
        perfect conductor.
    alpha : float
        1 / omega_p_tilde = delta0 / (2 a).  Note the perturbative
        series run on delta0 / a = 2 * alpha.
    omega_p_tilde : float
        Dimensionless plasma frequency 2 a omega_p / c (inf for a
        perfect conductor).
    lambda_p : float
        Plasma wavelength 2 pi c / omega_p in meters.
    """

    T_eff: float
    t: float
    tau: float
    delta0: float
    alpha: float
    omega_p_tilde: float
    lambda_p: float


def effective_temperature(a: float) -> float:
    """k_B T_eff = hbar c / (2 a), in kelvin."""
    if not a > 0.0:
        raise ValueError("separation must be positive")
    return HBAR * C / (2.0 * a * K_B)


def derive_scales(scenario: Scenario, model=None) -> DerivedScales:
    """Compute the dimensionless scales of a scenario.

    ``model`` is a dielectric model; None is treated as a perfect
    conductor (delta0 = 0, alpha = 0, omega_p_tilde = inf).
    """
    # local import: dielectric has no dependency back on this module
    from .dielectric import model_plasma_frequency

    if not (scenario.T >= 0.0) or not (scenario.a > 0.0):
        raise ValueError("scenario out of range")
    omega_p = math.inf if model is None else model_plasma_frequency(model)
    T_eff = effective_temperature(scenario.a)
    t = scenario.T / T_eff
    if math.isinf(omega_p):
        delta0 = 0.0
        alpha = 0.0
        lambda_p = 0.0
    else:
        delta0 = C / omega_p
        alpha = delta0 / (2.0 * scenario.a)
        lambda_p = 2.0 * math.pi * C / omega_p
    return DerivedScales(
        T_eff=T_eff,
        t=t,
        tau=2.0 * math.pi * t,
        delta0=delta0,
        alpha=alpha,
        omega_p_tilde=2.0 * scenario.a * omega_p / C,
        lambda_p=lambda_p,
    )
