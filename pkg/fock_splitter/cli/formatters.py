import csv
import io
import json
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np

from fock_splitter.scenarios import ScenarioResult

FLOAT_FORMAT = ".17g"


def _plain(value: Any) -> Any:
    """Convert a scenario value into JSON-encodable types; complex becomes {re, im}."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def to_payload(result: ScenarioResult) -> Dict[str, Any]:
    """Top-level object: scenario, inputs, each output, checks, paper_refs and rows if any."""
    payload: Dict[str, Any] = {"scenario": result.scenario, "inputs": _plain(result.inputs)}
    for key, value in result.outputs.items():
        payload[key] = _plain(value)
    payload["checks"] = _plain(result.checks)
    payload["paper_refs"] = list(result.refs)
    if result.rows:
        payload["rows"] = _plain(result.rows)
    return payload


def render_json(result: ScenarioResult) -> str:
    return json.dumps(to_payload(result), indent=2, allow_nan=False)


def _format_cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def _flatten(name: str, value: Any) -> List[Tuple[str, str]]:
    if isinstance(value, (complex, np.complexfloating)):
        return [(f"{name}_re", _format_cell(value.real)), (f"{name}_im", _format_cell(value.imag))]
    if isinstance(value, dict):
        cells = []
        for key, item in value.items():
            cells.extend(_flatten(f"{name}.{key}", item))
        return cells
    if isinstance(value, (list, tuple)):
        cells = []
        for index, item in enumerate(value):
            cells.extend(_flatten(f"{name}[{index}]", item))
        return cells
    return [(name, _format_cell(value))]


def _write(rows: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def render_csv(result: ScenarioResult) -> str:
    """One row per table entry, or name,value pairs for scenarios without a table."""
    if result.rows:
        header = [name for column in result.columns for name, _ in _flatten(column, result.rows[0][column])]
        body = [
            [cell for column in result.columns for _, cell in _flatten(column, row[column])]
            for row in result.rows
        ]
        return _write([header, *body])

    pairs = []
    for key, value in result.outputs.items():
        pairs.extend(_flatten(key, value))
    for key, value in result.checks.items():
        pairs.extend(_flatten(f"checks.{key}", value))
    return _write([["name", "value"], *([name, cell] for name, cell in pairs)])


RENDERERS = {"json": render_json, "csv": render_csv}
