"""The JSON report envelope shared by every CLI command."""
from __future__ import annotations

from typing import Any, Optional

REPORT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rankfix report",
    "type": "object",
    "required": ["command", "inputs", "result", "status"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {"type": ["object", "null"]},
        "status": {"enum": ["ok", "error"]},
        "error": {
            "type": "object",
            "required": ["message"],
            "additionalProperties": False,
            "properties": {
                "message": {"type": "string"},
                "position": {
                    "type": "object",
                    "properties": {
                        "line": {"type": "integer"},
                        "column": {"type": "integer"},
                        "offset": {"type": "integer"},
                    },
                },
            },
        },
    },
    "allOf": [{
        "if": {"properties": {"status": {"const": "error"}}},
        "then": {"required": ["error"]},
    }],
}

TOWER_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["stem", "cycle"],
    "properties": {
        "stem": {"type": "array", "items": {"$ref": "#/$defs/step"}},
        "cycle": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/step"}},
    },
    "$defs": {
        "step": {
            "type": "object",
            "required": ["def", "pair"],
            "properties": {
                "def": {"type": "string"},
                "pair": {"type": "array", "items": {"type": "string"},
                         "minItems": 2, "maxItems": 2},
            },
        },
    },
}


def ok_report(command: str, inputs: dict, result: dict) -> dict:
    return {"command": command, "inputs": inputs, "result": result, "status": "ok"}


def error_report(command: str, inputs: dict, message: str,
                 position: Optional[dict] = None) -> dict:
    error: dict[str, Any] = {"message": message}
    if position:
        error["position"] = position
    return {"command": command, "inputs": inputs, "result": None, "status": "error",
            "error": error}
