"""Serializers for comparison reports: CSV tables and JSON payloads.

CSV is a plain header-plus-rows table in the report's column order:
comma separated, '.' decimal, floats rendered with shortest round-trip
repr (scientific notation for force-scale magnitudes), empty cell for
a labeled gap.  JSON wraps the same rows in a versioned envelope
{schema_version, config, columns, rows, metadata, provenance} whose
``provenance`` carries the package build and the report's creation
timestamp, so re-serializing an unchanged run reproduces identical
bytes.  All floats are emitted with full precision; payloads are
require-finite (a non-finite number is a bug upstream, not data).
"""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .analysis import ComparisonReport

SCHEMA_VERSION = 1


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(report: ComparisonReport) -> str:
    """Render a report as a CSV table (header row first)."""
    report.validate()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_cell(row[c]) for c in report.columns])
    return buf.getvalue()


def csv_bytes(report: ComparisonReport) -> bytes:
    return csv_text(report).encode("utf-8")


def json_payload(report: ComparisonReport, config: Optional[dict] = None) -> dict:
    """Versioned JSON envelope for a report.

    ``config`` is the effective run configuration to echo; it must be
    sufficient to regenerate the rows on the same build.  The
    provenance timestamp is the report's own creation time when the
    metadata carries one, so serialization is a pure function of the
    report.
    """
    report.validate()
    timestamp = report.metadata.get("created_utc") or datetime.now(timezone.utc).isoformat()
    return {
        "schema_version": SCHEMA_VERSION,
        "config": dict(config or {}),
        "columns": list(report.columns),
        "rows": [dict(row) for row in report.rows],
        "metadata": report.metadata,
        "provenance": {"build": __version__, "timestamp": timestamp},
    }


def json_bytes(report: ComparisonReport, config: Optional[dict] = None) -> bytes:
    payload = json_payload(report, config)
    validate_payload(payload)
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
    return (text + "\n").encode("utf-8")


def validate_payload(payload: dict) -> None:
    """Raise ValueError unless ``payload`` matches the report schema."""
    if not isinstance(payload, dict):
        raise ValueError(f"payload must be an object, got {type(payload).__name__}")
    for key in ("schema_version", "config", "columns", "rows", "provenance"):
        if key not in payload:
            raise ValueError(f"payload missing required key {key!r}")
    if payload["schema_version"] != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported schema_version {payload['schema_version']!r}; expected {SCHEMA_VERSION}"
        )
    if not isinstance(payload["config"], dict):
        raise ValueError("config must be an object")
    columns = payload["columns"]
    if not isinstance(columns, list) or not all(isinstance(c, str) for c in columns):
        raise ValueError("columns must be a list of strings")
    rows = payload["rows"]
    if not isinstance(rows, list):
        raise ValueError("rows must be a list")
    colset = set(columns)
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or set(row) != colset:
            raise ValueError(f"row {i} does not match the declared columns")
    prov = payload["provenance"]
    if not isinstance(prov, dict) or "build" not in prov or "timestamp" not in prov:
        raise ValueError("provenance must carry build and timestamp")


def parse_report(payload: dict) -> ComparisonReport:
    """Reconstruct a validated ComparisonReport from a JSON payload."""
    validate_payload(payload)
    report = ComparisonReport(
        columns=tuple(payload["columns"]),
        rows=[dict(r) for r in payload["rows"]],
        metadata=dict(payload.get("metadata") or {}),
    )
    report.validate()
    return report
