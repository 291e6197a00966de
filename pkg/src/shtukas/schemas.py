"""JSON Schemas for the reports written by the command-line front end."""

from __future__ import annotations

_INT = {"type": "integer"}
_BOOL = {"type": "boolean"}

FIELD_SPEC = {
    "type": "object",
    "required": ["p", "m", "modulus"],
    "properties": {
        "p": _INT,
        "m": {"type": "integer", "minimum": 1},
        "modulus": {"type": "array", "items": _INT},
    },
}

PRECISION = {
    "type": "object",
    "required": ["zeta", "z"],
    "properties": {"zeta": {"type": "integer", "minimum": 1}, "z": {"type": "integer", "minimum": 1}},
}

SERIES = {
    "type": "object",
    "required": ["var", "low", "prec", "coeffs"],
    "properties": {
        "var": {"type": "string"},
        "low": _INT,
        "prec": {"type": ["integer", "null"]},
        "coeffs": {"type": "array"},
    },
}

OPENNESS_REPORT = {
    "type": "object",
    "required": [
        "q_v", "n", "d", "e", "d_prime", "image_order", "ambient_order",
        "index", "open_in_full", "open_in_ambient", "kernel_order",
    ],
    "properties": {
        "q_v": _INT,
        "n": {"type": "integer", "minimum": 0},
        "d": {"type": "integer", "minimum": 1},
        "e": {"type": "integer", "minimum": 0},
        "d_prime": {"type": "integer", "minimum": 1},
        "image_order": _INT,
        "ambient_order": _INT,
        "index": _INT,
        "open_in_full": _BOOL,
        "open_in_ambient": _BOOL,
        "kernel_order": _INT,
        "full_order": _INT,
        "full_index": _INT,
        "contained": _BOOL,
    },
}

OPENNESS_RUN = {
    "type": "object",
    "required": ["command", "field", "reports", "partial", "ok"],
    "properties": {
        "command": {"const": "openness"},
        "field": FIELD_SPEC,
        "reports": {"type": "array", "items": OPENNESS_REPORT},
        "partial": _BOOL,
        "ok": _BOOL,
    },
}

TOWER_RUN = {
    "type": "object",
    "required": [
        "command", "field", "q_v", "level", "precision", "degree",
        "valuations", "carlitz_residual_zero", "value_group_index", "ok",
    ],
    "properties": {
        "command": {"const": "tower"},
        "field": FIELD_SPEC,
        "q_v": _INT,
        "level": {"type": "integer", "minimum": 0},
        "precision": PRECISION,
        "degree": _INT,
        "valuations": {"type": "array", "items": {"type": "string", "pattern": r"^\d+/\d+$"}},
        "carlitz_residual_zero": _BOOL,
        "value_group_index": _INT,
        "ok": _BOOL,
    },
}

SHTUKA = {
    "type": "object",
    "required": ["rank", "twist", "tau"],
    "properties": {
        "rank": {"type": "integer", "minimum": 1},
        "twist": _INT,
        "zeta_power": {"type": "integer", "minimum": 1},
        "tau": {"type": "array", "items": {"type": "array", "items": SERIES}},
    },
}

MOTIVE_RUN = {
    "type": "object",
    "required": ["command", "place", "rank", "dim", "verdict", "precision", "shtuka", "ok"],
    "properties": {
        "command": {"const": "motive"},
        "place": {
            "type": "object",
            "required": ["q", "v", "f_v", "field"],
            "properties": {"q": _INT, "v": {"type": "array", "items": _INT}, "f_v": _INT, "field": FIELD_SPEC},
        },
        "rank": _INT,
        "dim": _INT,
        "verdict": {"enum": ["Open", "NotOpen", "Inconclusive"]},
        "precision": PRECISION,
        "shtuka": SHTUKA,
        "normal_form": {"type": ["object", "null"]},
        "ok": _BOOL,
    },
}
