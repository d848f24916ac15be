"""Deterministic CSV and JSON rendering for experiment results."""

from __future__ import annotations

import json
import math
from pathlib import Path


def format_value(value) -> str:
    """CSV cell text: 17 significant digits for reals (round-trip exact)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def rows_to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    """Render dict rows as CSV text with a header row and LF newlines."""
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def result_to_json(tool_version: str, config_echo: dict, results) -> str:
    """Standard result envelope; key order is fixed for byte determinism."""
    payload = {
        "tool_version": tool_version,
        "config_echo": _jsonable(config_echo),
        "results": _jsonable(results),
    }
    return json.dumps(payload, indent=2) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")
