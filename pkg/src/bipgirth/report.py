"""Machine-readable run reports shared by every CLI command.

Reports are JSON with sorted keys so that identical inputs, flags and seed
produce byte-identical files apart from the wall-time counter.  The schema
ships in-repo at schemas/run_report.schema.json.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

SCHEMA_VERSION = 1

OUTCOME_SUCCESS = "success"
OUTCOME_ABSENT = "absent"
OUTCOME_ERROR = "error"
_OUTCOMES = (OUTCOME_SUCCESS, OUTCOME_ABSENT, OUTCOME_ERROR)


def make_report(
    command: str,
    parameters: dict[str, Any],
    seed: int | None,
    outcome: str,
    payloads: dict[str, str] | None = None,
    audit_results: list[tuple[str, bool]] | None = None,
    counters: dict[str, Any] | None = None,
    detail: str | None = None,
) -> dict[str, Any]:
    if outcome not in _OUTCOMES:
        raise ValueError(f"outcome must be one of {_OUTCOMES}")
    audits = [
        {"invariant": name, "pass": bool(ok)} for name, ok in (audit_results or [])
    ]
    if outcome == OUTCOME_SUCCESS and not all(a["pass"] for a in audits):
        raise ValueError("a success report may not carry failed audits")
    report: dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "outcome": outcome,
        "payloads": payloads or {},
        "auditResults": audits,
        "counters": counters or {},
    }
    if detail is not None:
        report["detail"] = detail
    return report


def dump_report(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_schema() -> dict[str, Any]:
    text = (
        resources.files("bipgirth").joinpath("schemas/run_report.schema.json").read_text()
    )
    return json.loads(text)
