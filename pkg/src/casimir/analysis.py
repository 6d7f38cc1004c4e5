"""Comparison studies built on the force engines.

Everything here orchestrates the lower-level evaluators: thermal
corrections (finite-T force minus the zero-point force for the same
model), the dissipative-vs-nondissipative zero-mode discrepancy,
perturbative-vs-numeric validity bands, and aligned reference curves
over a separation grid.  Results come back as ComparisonReport tables
whose rows all share one column set, so they serialize to CSV or JSON
without reshaping.

Row evaluations never abort a sweep: a separation where one series
fails (series outside its validity range, quadrature breakdown) yields
a labeled gap in that column and a message in the row's ``error``
field, and the remaining rows are still computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Optional

import numpy as np

from .dielectric import (
    AL_OMEGA_P,
    DielectricModel,
    Drude,
    PerfectConductor,
    Plasma,
    Tabulated,
    drude,
)
from .lifshitz import (
    ForceResult,
    QuadratureError,
    QuadratureSpec,
    ZeroModePolicy,
    matsubara_force,
    zero_mode_term,
    zero_temperature_force,
)
from .perturbative import (
    PerturbativeBreakdown,
    ValidityError,
    high_T_asymptote_pl,
    perturbative_force_pl,
    perturbative_force_pp,
)
from .units import K_B, PARALLEL_PLATES, SPHERE_PLATE, ZETA3, Scenario, derive_scales

SEPARATION_MIN = 1e-8  # m; below this the continuum dielectric picture is moot
SEPARATION_MAX = 1e-4  # m

METHOD_MATSUBARA = "matsubara"
METHOD_ZERO_T = "zeroT"
METHOD_PERTURBATIVE = "perturbative"
METHOD_ASYMPTOTE = "asymptote"
METHODS = (METHOD_MATSUBARA, METHOD_ZERO_T, METHOD_PERTURBATIVE, METHOD_ASYMPTOTE)

_DEFAULT_QUAD = QuadratureSpec()
_SDM = ZeroModePolicy.SCHWINGER_DERAAD_MILTON
_NATURAL = ZeroModePolicy.MODEL_NATURAL


def model_label(model: DielectricModel) -> str:
    """Short stable token naming a model kind (used in column names)."""
    if isinstance(model, PerfectConductor):
        return "perfect"
    if isinstance(model, Drude):
        return "drude"
    if isinstance(model, Plasma):
        return "plasma"
    if isinstance(model, Tabulated):
        return "table"
    raise TypeError(f"unknown dielectric model {model!r}")


def separation_grid(start: float, stop: float, count: int, log: bool = False) -> tuple[float, ...]:
    """Linear (default) or logarithmic grid of separations in meters."""
    if count < 1:
        raise ValueError(f"grid needs at least one point, got count={count}")
    if not (start > 0.0 and math.isfinite(start) and math.isfinite(stop)):
        raise ValueError(f"grid endpoints must be finite and positive, got {start!r}:{stop!r}")
    if count == 1:
        return (float(start),)
    if not stop > start:
        raise ValueError(f"grid needs stop > start, got {start!r}:{stop!r}")
    if log:
        values = np.geomspace(start, stop, count)
    else:
        values = np.linspace(start, stop, count)
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class SweepSpec:
    """A separation sweep: grid, scenario template, and series to evaluate.

    One series per (model, policy, method) combination; the cartesian
    product is evaluated at every grid point.  ``R`` is required for
    sphere-plate geometry and must be omitted for parallel plates,
    exactly as in Scenario.
    """

    separations: tuple[float, ...]
    geometry: str = SPHERE_PLATE
    T: float = 300.0
    R: Optional[float] = None
    models: tuple[DielectricModel, ...] = (Plasma(AL_OMEGA_P),)
    policies: tuple[ZeroModePolicy, ...] = (_SDM,)
    methods: tuple[str, ...] = (METHOD_MATSUBARA,)
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        seps = tuple(float(a) for a in self.separations)
        object.__setattr__(self, "separations", seps)
        if not seps:
            raise ValueError("separation grid is empty")
        for a in seps:
            if not (SEPARATION_MIN <= a <= SEPARATION_MAX):
                raise ValueError(
                    f"separation {a!r} m outside [{SEPARATION_MIN:g}, {SEPARATION_MAX:g}] m"
                )
        if any(b <= a for a, b in zip(seps, seps[1:])):
            raise ValueError("separation grid must be strictly increasing")
        if not self.models:
            raise ValueError("at least one dielectric model is required")
        if not self.policies:
            raise ValueError("at least one zero-mode policy is required")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
        if len(set(self.methods)) != len(self.methods):
            raise ValueError(f"duplicate methods in {self.methods}")
        if len(set(self.policies)) != len(self.policies):
            raise ValueError(f"duplicate policies in {self.policies}")
        if self.geometry == PARALLEL_PLATES and METHOD_ASYMPTOTE in self.methods:
            raise ValueError("the high-temperature asymptote is sphere-plate only")
        # reuse Scenario's geometry/radius validation
        self.scenario_at(seps[0])

    def scenario_at(self, a: float) -> Scenario:
        return Scenario(geometry=self.geometry, a=a, T=self.T, R=self.R)


@dataclass
class ComparisonReport:
    """Aligned per-separation table plus run metadata.

    Every row is a dict with exactly the keys in ``columns``.  Force
    columns (names ``F*_N``) hold attractive values (<= 0) or None for
    a labeled gap; the ``error`` column collects per-series failure
    messages for the row.
    """

    columns: tuple[str, ...]
    rows: list[dict]
    metadata: dict

    def validate(self) -> None:
        """Raise ValueError if any structural invariant is violated."""
        colset = set(self.columns)
        force_cols = [c for c in self.columns if c.startswith("F") and c.endswith("_N")]
        for i, row in enumerate(self.rows):
            if set(row) != colset:
                raise ValueError(f"row {i} columns {sorted(row)} != {sorted(colset)}")
            for c in force_cols:
                v = row[c]
                if v is None:
                    continue
                if not (math.isfinite(v) and v <= 0.0):
                    raise ValueError(f"row {i} column {c}: force {v!r} is not attractive")


@dataclass(frozen=True)
class DeltaTForce:
    """Thermal correction: finite-T force minus the zero-point force.

    ``value`` is the literal float difference of the two retained
    results, so downstream tables can reproduce it bit-for-bit.
    """

    value: float
    thermal: ForceResult
    zero_temperature: ForceResult


@dataclass(frozen=True)
class PrescriptionDiscrepancy:
    """Gap between dissipative and nondissipative predictions.

    value = dissipative.value - nondissipative.value, both evaluated
    with each model's own zero-frequency limit.  zero_mode_gap is the
    exact part of that gap carried by the n = 0 term alone; the ideal
    counterpart zeta(3) k_B T R / (8 a**2) is what the gap would be if
    the nondissipative model's transverse-electric zero mode sat at the
    perfect-conductor value.
    """

    value: float
    dissipative: ForceResult
    nondissipative: ForceResult
    zero_mode_gap: float
    ideal_zero_mode_gap: float


def compute_force(
    scenario: Scenario,
    model: DielectricModel,
    policy: ZeroModePolicy = _SDM,
    quad: Optional[QuadratureSpec] = None,
) -> ForceResult:
    """Route to the thermal sum for T > 0 and the integral at T = 0."""
    if scenario.T > 0.0:
        return matsubara_force(scenario, model, policy, quad)
    return zero_temperature_force(scenario, model, quad)


def perturbative_force(scenario: Scenario, model: DielectricModel) -> PerturbativeBreakdown:
    """Perturbative series for a scenario, penetration depth taken from the model."""
    delta0 = derive_scales(scenario, model).delta0
    if scenario.geometry == PARALLEL_PLATES:
        return perturbative_force_pp(scenario, delta0)
    return perturbative_force_pl(scenario, delta0)


def delta_T_force(
    scenario: Scenario,
    model: DielectricModel,
    policy: ZeroModePolicy = _SDM,
    quad: Optional[QuadratureSpec] = None,
) -> DeltaTForce:
    """Thermal correction for one scenario and model, diagnostics retained."""
    if not scenario.T > 0.0:
        raise ValueError("the thermal correction needs T > 0")
    thermal = matsubara_force(scenario, model, policy, quad)
    cold = zero_temperature_force(scenario, model, quad)
    return DeltaTForce(value=thermal.value - cold.value, thermal=thermal, zero_temperature=cold)


def prescription_discrepancy(
    scenario: Scenario,
    omega_p: float,
    gamma: float,
    quad: Optional[QuadratureSpec] = None,
) -> PrescriptionDiscrepancy:
    """Force gap between a dissipative metal and its dissipationless twin.

    Both models share ``omega_p`` and are evaluated with their natural
    zero-frequency limits, so the whole gap is physics, not policy: the
    dissipative model has no transverse-electric zero mode, and its
    finite-frequency terms approach the nondissipative ones as gamma
    shrinks.  At gamma = 0 the two models coincide and every field of
    the result is exactly zero except the ideal reference value.
    """
    if scenario.geometry != SPHERE_PLATE:
        raise ValueError("prescription_discrepancy is defined for sphere-plate geometry")
    if not scenario.T > 0.0:
        raise ValueError("the zero-mode discrepancy needs T > 0")
    lossy = drude(omega_p, gamma)
    lossless = Plasma(omega_p)
    dissipative = matsubara_force(scenario, lossy, _NATURAL, quad)
    nondissipative = matsubara_force(scenario, lossless, _NATURAL, quad)
    gap = zero_mode_term(scenario, lossy, _NATURAL, quad) - zero_mode_term(
        scenario, lossless, _NATURAL, quad
    )
    ideal = ZETA3 * K_B * scenario.T * scenario.R / (8.0 * scenario.a**2)
    return PrescriptionDiscrepancy(
        value=dissipative.value - nondissipative.value,
        dissipative=dissipative,
        nondissipative=nondissipative,
        zero_mode_gap=gap,
        ideal_zero_mode_gap=ideal,
    )


def _series_suffixes(sweep: SweepSpec) -> list[tuple[str, DielectricModel, ZeroModePolicy, str]]:
    """One (suffix, model, policy, method) entry per series.

    A component appears in the suffix only when its axis actually
    varies, so a single-series sweep gets the bare column ``F_N``.
    Duplicate model labels (two plasma models with different
    parameters) are disambiguated by position.
    """
    labels = [model_label(m) for m in sweep.models]
    if len(set(labels)) != len(labels):
        labels = [f"{lab}{i + 1}" for i, lab in enumerate(labels)]
    out = []
    for m, mlab in zip(sweep.models, labels):
        for p in sweep.policies:
            for meth in sweep.methods:
                parts = []
                if len(sweep.models) > 1:
                    parts.append(mlab)
                if len(sweep.policies) > 1:
                    parts.append(p.value)
                if len(sweep.methods) > 1:
                    parts.append(meth)
                suffix = ("_" + "_".join(parts)) if parts else ""
                out.append((suffix, m, p, meth))
    return out


def _evaluate_series(
    scenario: Scenario,
    model: DielectricModel,
    policy: ZeroModePolicy,
    method: str,
    quad: QuadratureSpec,
) -> tuple[float, Optional[float]]:
    """(force value, truncation estimate or None) for one series point."""
    if method == METHOD_MATSUBARA:
        r = compute_force(scenario, model, policy, quad)
        return r.value, r.truncation_estimate
    if method == METHOD_ZERO_T:
        r = zero_temperature_force(scenario, model, quad)
        return r.value, r.truncation_estimate
    if method == METHOD_PERTURBATIVE:
        return perturbative_force(scenario, model).total, None
    if method == METHOD_ASYMPTOTE:
        delta0 = derive_scales(scenario, model).delta0
        return high_T_asymptote_pl(scenario, delta0), None
    raise ValueError(f"unknown method {method!r}")


def _base_metadata(sweep: SweepSpec) -> dict:
    return {
        "parameters": {
            "geometry": sweep.geometry,
            "T_K": sweep.T,
            "R_m": sweep.R,
            "models": [model_label(m) for m in sweep.models],
            "policies": [p.value for p in sweep.policies],
            "methods": list(sweep.methods),
            "n_separations": len(sweep.separations),
        },
        "tolerances": {
            "rel_tol": sweep.quad.rel_tol,
            "abs_tol": sweep.quad.abs_tol,
            "max_subdivisions": sweep.quad.max_subdivisions,
        },
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }


def _note(row: dict, tag: str, exc: Exception) -> None:
    msg = f"{tag}: {exc}" if tag else str(exc)
    row["error"] = f"{row['error']}; {msg}" if row["error"] else msg


def sweep_forces(sweep: SweepSpec) -> ComparisonReport:
    """Evaluate every series of a sweep at every separation.

    Rows come out ordered by separation ascending.  Each quadrature
    series carries a companion ``trunc*_N`` column with its truncation
    estimate; series evaluated from closed-form expressions have no
    error budget to report and so no companion column.
    """
    series = _series_suffixes(sweep)
    columns = ["a_m"]
    columns += [f"F{sfx}_N" for sfx, *_ in series]
    columns += [
        f"trunc{sfx}_N"
        for sfx, _, _, meth in series
        if meth in (METHOD_MATSUBARA, METHOD_ZERO_T)
    ]
    columns.append("error")

    rows = []
    for a in sweep.separations:
        row = {c: None for c in columns}
        row["a_m"] = a
        row["error"] = ""
        scenario = sweep.scenario_at(a)
        for sfx, model, policy, method in series:
            tag = sfx.lstrip("_") or method
            try:
                value, trunc = _evaluate_series(scenario, model, policy, method, sweep.quad)
            except (ValidityError, QuadratureError, ValueError) as exc:
                _note(row, tag, exc)
                continue
            if not (math.isfinite(value) and value <= 0.0):
                _note(row, tag, ValueError(f"non-attractive value {value!r} outside validity"))
                continue
            row[f"F{sfx}_N"] = value
            if method in (METHOD_MATSUBARA, METHOD_ZERO_T):
                row[f"trunc{sfx}_N"] = trunc
        rows.append(row)

    report = ComparisonReport(columns=tuple(columns), rows=rows, metadata=_base_metadata(sweep))
    report.validate()
    return report


def _contiguous_band(flags: list[bool]) -> Optional[tuple[int, int]]:
    # longest True run; earliest wins ties
    best = None
    start = None
    for i, ok in enumerate(flags + [False]):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            if best is None or (i - start) > (best[1] - best[0] + 1):
                best = (start, i - 1)
            start = None
    return best


def validity_scan(sweep: SweepSpec, tol: float) -> ComparisonReport:
    """Where does the perturbative series track the full computation?

    For each (model, policy) series the report carries the numeric
    force, the perturbative value, and their relative deviation
    |perturbative - numeric| / |numeric|; metadata records, per series,
    the longest contiguous grid segment with deviation <= tol.  The
    numeric side uses the thermal sum for T > 0 and the zero-point
    integral at T = 0; the sweep's ``methods`` field is ignored.
    """
    if not (tol > 0.0):
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    probe = replace(sweep, methods=(METHOD_MATSUBARA,))
    series = [(sfx, m, p) for sfx, m, p, _ in _series_suffixes(probe)]

    columns = ["a_m"]
    for sfx, _, _ in series:
        columns += [f"F_num{sfx}_N", f"F_pert{sfx}_N", f"rel_dev{sfx}"]
    columns.append("error")

    rows = []
    for a in sweep.separations:
        row = {c: None for c in columns}
        row["a_m"] = a
        row["error"] = ""
        scenario = sweep.scenario_at(a)
        for sfx, model, policy in series:
            tag = sfx.lstrip("_") or "series"
            try:
                numeric = compute_force(scenario, model, policy, sweep.quad).value
                row[f"F_num{sfx}_N"] = numeric
            except (QuadratureError, ValueError) as exc:
                _note(row, tag, exc)
                continue
            try:
                pert = perturbative_force(scenario, model).total
                row[f"F_pert{sfx}_N"] = pert
            except (ValidityError, ValueError) as exc:
                _note(row, tag, exc)
                continue
            row[f"rel_dev{sfx}"] = abs(pert - numeric) / abs(numeric)
        rows.append(row)

    metadata = _base_metadata(sweep)
    metadata["tolerances"]["validity_tol"] = tol
    bands = {}
    for sfx, _, _ in series:
        key = sfx.lstrip("_") or "series"
        flags = [
            row[f"rel_dev{sfx}"] is not None and row[f"rel_dev{sfx}"] <= tol for row in rows
        ]
        span = _contiguous_band(flags)
        if span is None:
            bands[key] = None
        else:
            i, j = span
            bands[key] = {
                "a_lo_m": rows[i]["a_m"],
                "a_hi_m": rows[j]["a_m"],
                "n_points": j - i + 1,
            }
    metadata["validity_bands"] = bands

    report = ComparisonReport(columns=tuple(columns), rows=rows, metadata=metadata)
    report.validate()
    return report


def reference_curves(sweep: SweepSpec) -> ComparisonReport:
    """Aligned force curves for the sphere-plate comparison plots.

    Columns: full thermal computation, perturbative series, zero-point
    force, high-temperature asymptote, and the thermal correction
    delta_T (the literal difference of the numeric and zero-point
    columns).  Uses the sweep's first model and policy.
    """
    if sweep.geometry != SPHERE_PLATE:
        raise ValueError("reference curves are defined for sphere-plate geometry")
    if not sweep.T > 0.0:
        raise ValueError("reference curves need T > 0")
    model = sweep.models[0]
    policy = sweep.policies[0]

    columns = (
        "a_m",
        "F_numeric_N",
        "F_perturbative_N",
        "F_zero_T_N",
        "F_asymptote_N",
        "delta_T_N",
        "error",
    )
    rows = []
    for a in sweep.separations:
        row = {c: None for c in columns}
        row["a_m"] = a
        row["error"] = ""
        scenario = sweep.scenario_at(a)
        try:
            d = delta_T_force(scenario, model, policy, sweep.quad)
            row["F_numeric_N"] = d.thermal.value
            row["F_zero_T_N"] = d.zero_temperature.value
            row["delta_T_N"] = d.value
        except (QuadratureError, ValueError) as exc:
            _note(row, "numeric", exc)
        try:
            row["F_perturbative_N"] = perturbative_force(scenario, model).total
        except (ValidityError, ValueError) as exc:
            _note(row, "perturbative", exc)
        try:
            delta0 = derive_scales(scenario, model).delta0
            asym = high_T_asymptote_pl(scenario, delta0)
            if not (math.isfinite(asym) and asym <= 0.0):
                raise ValueError(f"non-attractive value {asym!r} outside validity")
            row["F_asymptote_N"] = asym
        except (ValidityError, ValueError) as exc:
            _note(row, "asymptote", exc)
        rows.append(row)

    metadata = _base_metadata(sweep)
    metadata["parameters"]["models"] = [model_label(model)]
    metadata["parameters"]["policies"] = [policy.value]
    metadata["parameters"]["methods"] = [
        METHOD_MATSUBARA,
        METHOD_PERTURBATIVE,
        METHOD_ZERO_T,
        METHOD_ASYMPTOTE,
    ]

    report = ComparisonReport(columns=columns, rows=rows, metadata=metadata)
    report.validate()
    return report
