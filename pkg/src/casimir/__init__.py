"""Casimir forces between real metals at finite temperature.

Computes the force between parallel plates and in the sphere-above-plate
geometry (proximity force approximation) from the Lifshitz theory, with
plasma, Drude, perfect-conductor and tabulated permittivity models, plus
perturbative small-correction expansions and high-temperature asymptotes.
"""

__version__ = "0.1.0"

from .units import (
    CODATA2018,
    PARALLEL_PLATES,
    SPHERE_PLATE,
    DerivedScales,
    PhysicalConstants,
    Scenario,
    derive_scales,
)
from .dielectric import (
    AL_GAMMA,
    AL_OMEGA_P,
    Drude,
    PerfectConductor,
    Plasma,
    Tabulated,
    TableParseError,
    ZeroModeClass,
    drude,
    load_permittivity_table,
    permittivity,
    zero_mode_class,
)
from .lifshitz import (
    ForceResult,
    QuadratureError,
    QuadratureSpec,
    ZeroModePolicy,
    matsubara_force,
    phi_pp,
    phi_pl,
    reflection_squares,
    zero_mode_term,
    zero_temperature_force,
)
from .perturbative import (
    PerturbativeBreakdown,
    SeriesCoefficients,
    ValidityError,
    high_T_asymptote_pl,
    ideal_force,
    perturbative_force_pl,
    perturbative_force_pp,
    series_coefficients,
)
from .analysis import (
    ComparisonReport,
    DeltaTForce,
    PrescriptionDiscrepancy,
    SweepSpec,
    compute_force,
    delta_T_force,
    model_label,
    perturbative_force,
    prescription_discrepancy,
    reference_curves,
    separation_grid,
    sweep_forces,
    validity_scan,
)
from .report import (
    SCHEMA_VERSION,
    csv_bytes,
    csv_text,
    json_bytes,
    json_payload,
    parse_report,
    validate_payload,
)

__all__ = [
    "CODATA2018",
    "PARALLEL_PLATES",
    "SPHERE_PLATE",
    "DerivedScales",
    "PhysicalConstants",
    "Scenario",
    "derive_scales",
    "AL_GAMMA",
    "AL_OMEGA_P",
    "Drude",
    "PerfectConductor",
    "Plasma",
    "Tabulated",
    "TableParseError",
    "ZeroModeClass",
    "drude",
    "load_permittivity_table",
    "permittivity",
    "zero_mode_class",
    "ForceResult",
    "QuadratureError",
    "QuadratureSpec",
    "ZeroModePolicy",
    "matsubara_force",
    "phi_pp",
    "phi_pl",
    "reflection_squares",
    "zero_mode_term",
    "zero_temperature_force",
    "PerturbativeBreakdown",
    "SeriesCoefficients",
    "ValidityError",
    "high_T_asymptote_pl",
    "ideal_force",
    "perturbative_force_pl",
    "perturbative_force_pp",
    "series_coefficients",
    "ComparisonReport",
    "DeltaTForce",
    "PrescriptionDiscrepancy",
    "SweepSpec",
    "compute_force",
    "delta_T_force",
    "model_label",
    "perturbative_force",
    "prescription_discrepancy",
    "reference_curves",
    "separation_grid",
    "sweep_forces",
    "validity_scan",
    "SCHEMA_VERSION",
    "csv_bytes",
    "csv_text",
    "json_bytes",
    "json_payload",
    "parse_report",
    "validate_payload",
    "__version__",
]
