"""JSON schemas for CLI reports (version 1).

``docs/schemas/`` holds copies of these documents; a test keeps them in sync.
"""

from __future__ import annotations

from .constraints import FRONTIER_SCHEMA, TABLE_SCHEMA

SCHEMA_VERSION = 1

# closed vocabulary of caveat flags
FLAGS = (
    "asymmetric-values",
    "kouchnirenko-not-applicable",
    "lower-confidence",
    "method-disagreement",
    "newton-not-applicable",
    "non-simplicial-diagram",
    "not-quasi-homogeneous",
)

_RESULT_VALUE = {
    "anyOf": [
        {"type": "string"},
        {"type": "integer"},
        {"type": "boolean"},
        {"type": "null"},
        {"type": "array"},
        {"type": "object"},
    ]
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Report",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "command", "input", "results", "methods", "flags"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "input": {"type": "object"},
        "results": {"type": "object", "additionalProperties": _RESULT_VALUE},
        "methods": {"type": "object", "additionalProperties": {"type": "string"}},
        "flags": {"type": "array", "items": {"enum": list(FLAGS)}},
    },
}

BATCH_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "BatchReport",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "command", "records", "summary"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["line", "status", "input"],
                "properties": {
                    "line": {"type": "integer"},
                    "status": {"enum": ["ok", "error"]},
                    "input": {"type": "object"},
                    "results": {"type": "object"},
                    "methods": {"type": "object"},
                    "flags": {"type": "array", "items": {"enum": list(FLAGS)}},
                    "error": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["kind", "message"],
                        "properties": {
                            "kind": {"enum": ["input", "precondition", "timeout", "violation"]},
                            "message": {"type": "string"},
                        },
                    },
                },
            },
        },
        "summary": {
            "type": "object",
            "additionalProperties": False,
            "required": ["ok", "error"],
            "properties": {"ok": {"type": "integer"}, "error": {"type": "integer"}},
        },
    },
}

ALL_SCHEMAS = {
    "report.schema.json": REPORT_SCHEMA,
    "batch.schema.json": BATCH_SCHEMA,
    "table.schema.json": TABLE_SCHEMA,
    "frontier.schema.json": FRONTIER_SCHEMA,
}
