"""Structured report records shared by the verify commands."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

REPORT_SCHEMA = "commvar.report/1"


def _plain(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return obj


def make_report(operation: str, parameters: dict, result: dict, *, seed: int | None = None,
                budget_used: int = 0, runtime: float | None = None, citations: list[str] | None = None) -> dict:
    """``runtime`` stays ``None`` unless timing was requested, keeping reports reproducible."""
    return _plain({
        "schema": REPORT_SCHEMA,
        "operation": operation,
        "parameters": parameters,
        "result": result,
        "runtime": runtime,
        "budget_used": budget_used,
        "seed": seed,
        "citations": citations or [],
    })


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
