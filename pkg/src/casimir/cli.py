"""Command-line surface: force queries, sweeps, and reproduction studies.

Three subcommands.  ``force`` evaluates one scenario and prints the
force with diagnostics (text, or a JSON payload with the effective
config echoed).  ``sweep`` evaluates a separation grid for one or more
(model, policy, method) series and emits CSV or JSON; results are
cached under a content hash of the effective config so an unchanged
rerun is served byte-for-byte.  ``repro`` runs named studies that
check the package's headline numbers against their acceptance bands
and prints one PASS/FAIL line per check.

Exit codes: 0 success, 1 repro-check failure, 2 usage error,
3 numeric failure.  Length flags accept um/nm suffixes; bare numbers
are meters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import __version__
from .analysis import (
    METHOD_ASYMPTOTE,
    METHOD_MATSUBARA,
    METHOD_PERTURBATIVE,
    METHOD_ZERO_T,
    METHODS,
    ComparisonReport,
    SweepSpec,
    delta_T_force,
    model_label,
    perturbative_force,
    prescription_discrepancy,
    separation_grid,
    sweep_forces,
)
from .cache import cache_dir, config_key, load as cache_load, store as cache_store
from .dielectric import (
    AL_GAMMA,
    AL_OMEGA_P,
    PerfectConductor,
    Plasma,
    TableParseError,
    Tabulated,
    drude,
    load_permittivity_table,
)
from .lifshitz import (
    QuadratureError,
    QuadratureSpec,
    ZeroModePolicy,
    matsubara_force,
    zero_temperature_force,
)
from .perturbative import ValidityError, high_T_asymptote_pl, series_coefficients
from .units import (
    K_B,
    PARALLEL_PLATES,
    SPHERE_PLATE,
    ZETA3,
    Scenario,
    derive_scales,
)

_POLICIES = {
    "sdm": ZeroModePolicy.SCHWINGER_DERAAD_MILTON,
    "natural": ZeroModePolicy.MODEL_NATURAL,
}
_METHOD_CHOICES = ("auto",) + METHODS
STUDIES = ("fig1", "drude-discrepancy", "high-T-174", "coeffs")


def parse_length(text: str) -> float:
    """Meters from '0.1um', '95nm', or a bare number of meters."""
    s = str(text).strip()
    scale = 1.0
    if s.endswith("um"):
        s, scale = s[:-2], 1e-6
    elif s.endswith("nm"):
        s, scale = s[:-2], 1e-9
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid length {text!r}: expected meters, or a number with um/nm suffix"
        ) from None
    return value * scale


def parse_range(text: str):
    """(start_m, stop_m, count, log) from 'start:stop:count[:log]'."""
    parts = str(text).split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(
            f"invalid range {text!r}: expected start:stop:count[:log]"
        )
    start = parse_length(parts[0])
    stop = parse_length(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range count {parts[2]!r}") from None
    if count < 1:
        raise argparse.ArgumentTypeError(f"range count must be >= 1, got {count}")
    log = False
    if len(parts) == 4:
        if parts[3] != "log":
            raise argparse.ArgumentTypeError(
                f"invalid range spacing {parts[3]!r}: only 'log' is recognized"
            )
        log = True
    return start, stop, count, log


def _as_length(value) -> Optional[float]:
    if value is None:
        return None
    if isinstance(value, str):
        return parse_length(value)
    return float(value)


def _build_model(token: str, omega_p: float, gamma: float):
    if token == "perfect":
        return PerfectConductor()
    if token == "plasma":
        return Plasma(omega_p)
    if token == "drude":
        return drude(omega_p, gamma)
    if token.startswith("table:"):
        path = token[len("table:"):]
        if not path:
            raise ValueError("table model needs a file path: table:<path>")
        return load_permittivity_table(path)
    raise ValueError(
        f"unknown model {token!r}: choose perfect, plasma, drude, or table:<path>"
    )


def _model_config(model) -> dict:
    entry = {"kind": model_label(model)}
    if hasattr(model, "omega_p"):
        entry["omega_p_rad_s"] = model.omega_p
    if hasattr(model, "gamma"):
        entry["gamma_rad_s"] = model.gamma
    if isinstance(model, Tabulated):
        entry["omega_p_fit_rad_s"] = model.table.omega_p_fit
        digest = hashlib.sha256()
        digest.update(repr(list(map(float, model.table.xi))).encode())
        digest.update(repr(list(map(float, model.table.eps))).encode())
        entry["table_sha256"] = digest.hexdigest()
    return entry


def _quad_config(quad: QuadratureSpec) -> dict:
    return {
        "rel_tol": quad.rel_tol,
        "abs_tol": quad.abs_tol,
        "max_subdivisions": quad.max_subdivisions,
        "tail_cut": quad.tail_cut,
    }


def _require(args, names) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"missing required flags: {', '.join(missing)}")


def _emit(data: bytes, output: Optional[str]) -> None:
    if output:
        Path(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _scenario(args) -> Scenario:
    return Scenario(
        geometry=args.geometry,
        a=_as_length(args.a),
        T=float(args.T),
        R=_as_length(args.R),
    )


def _quad(args) -> QuadratureSpec:
    kwargs = {}
    if args.rel_tol is not None:
        kwargs["rel_tol"] = float(args.rel_tol)
    if args.max_subdivisions is not None:
        kwargs["max_subdivisions"] = int(args.max_subdivisions)
    if args.tail_cut is not None:
        kwargs["tail_cut"] = float(args.tail_cut)
    return QuadratureSpec(**kwargs)


def _force_units(geometry: str):
    # display scale: pN for the sphere, mPa for plates
    if geometry == SPHERE_PLATE:
        return 1e12, "pN"
    return 1e3, "mPa"


def cmd_force(args) -> int:
    _require(args, ("geometry", "a", "T", "model"))
    scenario = _scenario(args)
    model = _build_model(args.model, args.omega_p, args.gamma)
    policy = _POLICIES[args.policy]
    quad = _quad(args)
    method = args.method
    if method == "auto":
        method = METHOD_MATSUBARA if scenario.T > 0.0 else METHOD_ZERO_T

    row = {
        "a_m": scenario.a,
        "F_N": None,
        "trunc_N": None,
        "n_terms": None,
        "zero_mode_N": None,
        "delta_T_N": None,
        "error": "",
    }
    if method == METHOD_MATSUBARA:
        d = delta_T_force(scenario, model, policy, quad)
        result = d.thermal
        row.update(
            F_N=result.value,
            trunc_N=result.truncation_estimate,
            n_terms=result.n_terms_used,
            zero_mode_N=result.zero_mode_contribution,
            delta_T_N=d.value,
        )
    elif method == METHOD_ZERO_T:
        result = zero_temperature_force(scenario, model, quad)
        row.update(
            F_N=result.value,
            trunc_N=result.truncation_estimate,
            n_terms=result.n_terms_used,
            zero_mode_N=result.zero_mode_contribution,
        )
    elif method == METHOD_PERTURBATIVE:
        row["F_N"] = perturbative_force(scenario, model).total
    elif method == METHOD_ASYMPTOTE:
        row["F_N"] = high_T_asymptote_pl(scenario, derive_scales(scenario, model).delta0)
    else:
        raise ValueError(f"unknown method {method!r}")

    config = {
        "command": "force",
        "geometry": scenario.geometry,
        "a_m": scenario.a,
        "T_K": scenario.T,
        "R_m": scenario.R,
        "models": [_model_config(model)],
        "policies": [args.policy],
        "methods": [method],
        "quad": _quad_config(quad),
        "format": args.format,
        "build": __version__,
    }

    if args.format == "json":
        from .report import json_bytes

        report = ComparisonReport(
            columns=tuple(row),
            rows=[row],
            metadata={
                "parameters": {k: config[k] for k in ("geometry", "a_m", "T_K", "R_m")},
                "created_utc": datetime.now(timezone.utc).isoformat(),
            },
        )
        _emit(json_bytes(report, config), args.output)
        return 0

    scale, unit = _force_units(scenario.geometry)
    lines = [
        f"F = {row['F_N'] * scale:.6g} {unit}  ({row['F_N']!r} "
        f"{'N' if scenario.geometry == SPHERE_PLATE else 'N/m^2'})",
        f"geometry = {scenario.geometry}, a = {scenario.a!r} m, T = {scenario.T!r} K"
        + (f", R = {scenario.R!r} m" if scenario.R is not None else ""),
        f"model = {model_label(model)}, policy = {args.policy}, method = {method}",
    ]
    if row["n_terms"] is not None:
        lines.append(f"n_terms = {row['n_terms']}")
        lines.append(f"truncation_estimate = {row['trunc_N']:.3e}")
        lines.append(f"zero_mode = {row['zero_mode_N']!r}")
    if row["delta_T_N"] is not None:
        lines.append(
            f"delta_T = {row['delta_T_N']!r} (thermal part, {row['delta_T_N'] * scale:.4g} {unit})"
        )
    if scenario.pfa_questionable:
        lines.append("note: R/a < 20, the proximity-force mapping is questionable here")
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _parse_compare(entries) -> dict:
    out = {}
    for entry in entries or ():
        key, sep, rest = entry.partition("=")
        values = [v.strip() for v in rest.split(",") if v.strip()]
        if not sep or key not in ("models", "policies", "methods") or not values:
            raise ValueError(
                f"invalid --compare {entry!r}: expected models=|policies=|methods= "
                "followed by a comma list"
            )
        out[key] = values
    return out


def cmd_sweep(args) -> int:
    compare = _parse_compare(args.compare)
    required = ["geometry", "a_range", "T"]
    if "models" not in compare:
        # a models= comparison axis supplies the models itself
        required.append("model")
    _require(args, tuple(required))
    start, stop, count, log = parse_range(str(args.a_range))
    grid = separation_grid(start, stop, count, log)

    model_tokens = compare.get("models", [args.model])
    models = tuple(_build_model(tok, args.omega_p, args.gamma) for tok in model_tokens)
    policy_tokens = compare.get("policies", [args.policy])
    for tok in policy_tokens:
        if tok not in _POLICIES:
            raise ValueError(f"unknown policy {tok!r}: choose sdm or natural")
    policies = tuple(_POLICIES[tok] for tok in policy_tokens)
    method_tokens = compare.get("methods", [args.method])
    T = float(args.T)
    resolved_methods = []
    for tok in method_tokens:
        if tok == "auto":
            tok = METHOD_MATSUBARA if T > 0.0 else METHOD_ZERO_T
        if tok not in METHODS:
            raise ValueError(f"unknown method {tok!r}: choose from {METHODS}")
        resolved_methods.append(tok)

    quad = _quad(args)
    sweep = SweepSpec(
        separations=grid,
        geometry=args.geometry,
        T=T,
        R=_as_length(args.R),
        models=models,
        policies=policies,
        methods=tuple(resolved_methods),
        quad=quad,
    )

    config = {
        "command": "sweep",
        "geometry": sweep.geometry,
        "a_range": {"start_m": start, "stop_m": stop, "count": count, "log": log},
        "T_K": sweep.T,
        "R_m": sweep.R,
        "models": [_model_config(m) for m in models],
        "policies": policy_tokens,
        "methods": resolved_methods,
        "quad": _quad_config(quad),
        "format": args.format,
        "build": __version__,
    }
    key = config_key(config)
    root = Path(args.cache_dir) if args.cache_dir else cache_dir()

    if not args.no_cache:
        cached = cache_load(key, args.format, root)
        if cached is not None:
            _emit(cached, args.output)
            return 0

    report = sweep_forces(sweep)
    if args.format == "json":
        from .report import json_bytes

        data = json_bytes(report, config)
    else:
        from .report import csv_bytes

        data = csv_bytes(report)

    force_cols = [c for c in report.columns if c.startswith("F") and c.endswith("_N")]
    succeeded = any(row[c] is not None for row in report.rows for c in force_cols)
    if succeeded and not args.no_cache:
        cache_store(key, args.format, data, root)
    _emit(data, args.output)
    return 0 if succeeded else 3


def _check(lines, name: str, ok: bool, detail: str) -> bool:
    lines.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


def _study_high_T(quad) -> list:
    lines = []
    a, T, R = 6e-6, 300.0, 100e-6
    sc = Scenario(geometry=SPHERE_PLATE, a=a, T=T, R=R)
    model = PerfectConductor()
    hot = matsubara_force(sc, model, ZeroModePolicy.SCHWINGER_DERAAD_MILTON, quad).value
    cold = zero_temperature_force(sc, model, quad).value
    excess_sum = (abs(hot) - abs(cold)) / abs(cold)
    asym = -ZETA3 * K_B * T * R / (4.0 * a * a)
    excess_asym = (abs(asym) - abs(cold)) / abs(cold)
    _check(
        lines,
        "thermal excess (full sum)",
        1.70 <= excess_sum <= 1.78,
        f"measured {100 * excess_sum:.2f}% vs band [170%, 178%]",
    )
    _check(
        lines,
        "thermal excess (asymptote)",
        1.70 <= excess_asym <= 1.78,
        f"measured {100 * excess_asym:.2f}% vs band [170%, 178%]",
    )
    return lines


def _study_drude(quad) -> list:
    lines = []
    T, R = 300.0, 100e-6
    natural = ZeroModePolicy.MODEL_NATURAL
    model = drude(AL_OMEGA_P, AL_GAMMA)
    for a in (0.09e-6, 0.095e-6, 0.1e-6):
        sc = Scenario(geometry=SPHERE_PLATE, a=a, T=T, R=R)
        d = delta_T_force(sc, model, natural, quad)
        pn = abs(d.value) * 1e12
        _check(
            lines,
            f"dissipative |delta_T| at a = {a * 1e6:g} um",
            2.5 <= pn <= 8.5,
            f"measured {pn:.3f} pN vs band [2.5, 8.5] pN",
        )
    sc = Scenario(geometry=SPHERE_PLATE, a=0.1e-6, T=T, R=R)
    disc = prescription_discrepancy(sc, AL_OMEGA_P, AL_GAMMA, quad)
    ratio = abs(disc.value) / disc.ideal_zero_mode_gap
    _check(
        lines,
        "force gap vs ideal zero-mode value",
        0.5 <= ratio <= 2.0,
        f"gap {disc.value * 1e12:.3f} pN vs ideal {disc.ideal_zero_mode_gap * 1e12:.3f} pN "
        f"(ratio {ratio:.3f}, band [0.5, 2.0]); exact zero-mode part "
        f"{disc.zero_mode_gap * 1e12:.3f} pN",
    )
    plasma_d = delta_T_force(sc, Plasma(AL_OMEGA_P), natural, quad)
    lines.append(
        f"info  nondissipative delta_T at a = 0.1 um: {plasma_d.value * 1e12:.4f} pN"
    )
    return lines


def _study_fig1(quad) -> list:
    lines = []
    T, R = 300.0, 100e-6
    model = Plasma(AL_OMEGA_P)
    policy = ZeroModePolicy.SCHWINGER_DERAAD_MILTON

    sc6 = Scenario(geometry=SPHERE_PLATE, a=6e-6, T=T, R=R)
    d6 = delta_T_force(sc6, model, policy, quad)
    ratio = abs(d6.thermal.value) / abs(d6.zero_temperature.value)
    _check(
        lines,
        "thermal/zero-T ratio at a = 6 um",
        2.70 <= ratio <= 2.78,
        f"measured {ratio:.3f} vs band [2.70, 2.78]",
    )
    asym6 = high_T_asymptote_pl(sc6, derive_scales(sc6, model).delta0)
    dev6 = abs(asym6 - d6.thermal.value) / abs(d6.thermal.value)
    _check(
        lines,
        "high-T asymptote vs full sum at a = 6 um",
        dev6 < 0.01,
        f"relative deviation {dev6:.4%} vs < 1%",
    )

    sc1 = Scenario(geometry=SPHERE_PLATE, a=1e-6, T=T, R=R)
    num1 = matsubara_force(sc1, model, policy, quad).value
    pert1 = perturbative_force(sc1, model).total
    dev1 = abs(pert1 - num1) / abs(num1)
    _check(
        lines,
        "perturbative vs full sum at a = 1 um",
        dev1 < 0.01,
        f"relative deviation {dev1:.4%} vs < 1%",
    )

    sc01 = Scenario(geometry=SPHERE_PLATE, a=0.1e-6, T=T, R=R)
    d01 = delta_T_force(sc01, model, policy, quad)
    pn = abs(d01.value) * 1e12
    _check(
        lines,
        "thermal correction at a = 0.1 um",
        pn < 0.05,
        f"|delta_T| = {pn:.4f} pN vs < 0.05 pN",
    )
    return lines


def _study_coeffs() -> list:
    lines = []
    sc = series_coefficients()
    for i, (c, ct) in enumerate(zip(sc.c, sc.c_tilde), start=2):
        lines.append(f"info  c{i} = {c!r}   c~{i} = {ct!r}")
    _check(lines, "second-order coefficient", sc.c[0] == 24.0, f"c2 = {sc.c[0]!r}, expected 24")
    identity = all(
        ct * (3 + i) == 3.0 * c for i, (c, ct) in enumerate(zip(sc.c, sc.c_tilde), start=2)
    )
    _check(lines, "c~ identity", identity, "c~_i (3+i) == 3 c_i for i = 2..6")
    signs = all(
        (c > 0) == (i % 2 == 0) for i, c in enumerate(sc.c, start=2)
    )
    _check(lines, "sign alternation", signs, "c_i signs alternate starting positive at i = 2")
    return lines


def cmd_repro(args) -> int:
    quad = _quad(args)
    if args.study == "high-T-174":
        lines = _study_high_T(quad)
    elif args.study == "drude-discrepancy":
        lines = _study_drude(quad)
    elif args.study == "fig1":
        lines = _study_fig1(quad)
    elif args.study == "coeffs":
        lines = _study_coeffs()
    else:
        raise ValueError(f"unknown study {args.study!r}")
    text = "\n".join([f"study {args.study} (build {__version__})"] + lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if not any(line.startswith("FAIL") for line in lines) else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--geometry", choices=(PARALLEL_PLATES, SPHERE_PLATE), default=None)
    p.add_argument("--T", type=float, default=None, help="temperature in K")
    p.add_argument("--R", type=str, default=None, help="sphere radius (length)")
    p.add_argument(
        "--model",
        type=str,
        default=None,
        help="perfect | plasma | drude | table:<path>",
    )
    p.add_argument("--omega-p", dest="omega_p", type=float, default=AL_OMEGA_P)
    p.add_argument("--gamma", type=float, default=AL_GAMMA)
    p.add_argument("--policy", choices=tuple(_POLICIES), default="sdm")
    p.add_argument("--method", choices=_METHOD_CHOICES, default="auto")
    p.add_argument("--output", type=str, default=None)
    p.add_argument("--config", type=str, default=None, help="JSON file of flag defaults")


def _add_quad(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    p.add_argument("--max-subdivisions", dest="max_subdivisions", type=int, default=None)
    p.add_argument("--tail-cut", dest="tail_cut", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir",
        description="Casimir force between real metals at finite temperature",
    )
    parser.add_argument("--version", action="version", version=f"casimir {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("force", help="single-point force with diagnostics")
    f.add_argument("--a", type=str, default=None, help="separation (length)")
    _add_common(f)
    _add_quad(f)
    f.add_argument("--format", choices=("text", "json"), default="text")
    f.set_defaults(func=cmd_force)

    s = sub.add_parser("sweep", help="force over a separation grid")
    s.add_argument(
        "--a-range", dest="a_range", type=str, default=None, help="start:stop:count[:log]"
    )
    _add_common(s)
    _add_quad(s)
    s.add_argument(
        "--compare",
        action="append",
        default=None,
        help="models=...|policies=...|methods=... comma lists (repeatable)",
    )
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--no-cache", dest="no_cache", action="store_true")
    s.add_argument("--cache-dir", dest="cache_dir", type=str, default=None)
    s.set_defaults(func=cmd_sweep)

    r = sub.add_parser("repro", help="reproduce headline numbers with PASS/FAIL checks")
    r.add_argument("--study", choices=STUDIES, required=True)
    _add_quad(r)
    r.add_argument("--output", type=str, default=None)
    r.set_defaults(func=cmd_repro)

    # subparsers copy their own defaults over the parent namespace, so
    # config-file defaults must be installed on each of them directly
    parser._casimir_subparsers = (f, s, r)
    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv) -> None:
    # pre-scan so file values become defaults that explicit flags override
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", type=str, default=None)
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return
    try:
        raw = json.loads(Path(known.config).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read config file {known.config!r}: {exc}") from None
    if not isinstance(raw, dict):
        raise ValueError(f"config file {known.config!r} must hold a JSON object")
    defaults = {key.replace("-", "_"): value for key, value in raw.items()}
    for sp in parser._casimir_subparsers:
        sp.set_defaults(**defaults)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValidityError, QuadratureError) as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 3
    except TableParseError as exc:
        sys.stderr.write(f"casimir: error: {exc}\n")
        return 2
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        sys.stderr.write(f"casimir: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
