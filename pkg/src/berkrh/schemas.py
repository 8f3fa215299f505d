"""JSON Schemas for input files and emitted reports.

Numbers in input files are exact: integers, or strings ``"a"`` / ``"a/b"``.
Files are parsed with decimal literals kept as ``Decimal`` so that any
floating-point literal fails schema validation with its JSON path.
"""

from __future__ import annotations

import json
from decimal import Decimal

import jsonschema

from .exactval import InputError

RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^[+-]?\d+(/[1-9]\d*)?$"},
    ]
}
CENTER = {"oneOf": [RATIONAL, {"const": "inf"}]}
VALQ = {"oneOf": [RATIONAL, {"const": "inf"}]}
POLY = {
    "type": "object",
    "propertyNames": {"pattern": r"^[+-]?\d+$"},
    "additionalProperties": RATIONAL,
}
MAP = {
    "oneOf": [
        {
            "type": "object",
            "required": ["num"],
            "properties": {"num": POLY, "den": POLY},
            "additionalProperties": False,
        },
        {**POLY, "not": {"required": ["num"]}},
    ]
}
DISC = {
    "type": "object",
    "required": ["center", "log_radius"],
    "properties": {"center": CENTER, "log_radius": RATIONAL},
    "additionalProperties": False,
}
DOMAIN = {
    "type": "object",
    "properties": {
        "genus": {"type": "integer", "minimum": 0},
        "removed_open": {"type": "array", "items": DISC},
        "removed_closed": {"type": "array", "items": DISC},
    },
    "additionalProperties": False,
}
DIRECTION = {
    "type": "object",
    "required": ["center", "log_radius"],
    "properties": {
        "center": CENTER,
        "log_radius": RATIONAL,
        "side": {"enum": ["inside", "outside"]},
        "image_center": CENTER,
    },
    "additionalProperties": False,
}
INDEX = {"oneOf": [{"type": "integer", "minimum": 0}, {"type": "string", "pattern": r"^\d+$"}]}
MORPHISM = {
    "type": "object",
    "required": ["map", "domain", "codomain", "p"],
    "properties": {
        "map": MAP,
        "domain": DOMAIN,
        "codomain": DOMAIN,
        "direction_images": {
            "type": "object",
            "propertyNames": {"pattern": r"^\d+$"},
            "additionalProperties": INDEX,
        },
        "p": {"type": "integer", "minimum": 2},
    },
    "additionalProperties": False,
}
EDGE_END = {
    "type": "object",
    "required": ["vertex", "nu"],
    "properties": {"vertex": {"type": "string"}, "nu": {"type": "integer"}},
    "additionalProperties": False,
}
GRAPH = {
    "type": "object",
    "required": ["vertices"],
    "properties": {
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "chi_piece", "deg_local"],
                "properties": {
                    "id": {"type": "string"},
                    "chi_piece": {"type": "integer"},
                    "deg_local": {"type": "integer", "minimum": 1},
                    "ram_local": {"type": "integer", "minimum": 0},
                    "image": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "internal_edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["end_a", "end_b"],
                "properties": {"id": {"type": "string"}, "end_a": EDGE_END, "end_b": EDGE_END},
                "additionalProperties": False,
            },
        },
        "external_ends": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["vertex", "kind", "nu"],
                "properties": {
                    "vertex": {"type": "string"},
                    "kind": {"enum": ["TY", "T_in"]},
                    "nu": {"type": "integer"},
                    "direction": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
        "chi_X_pieces": {"type": "object", "additionalProperties": {"type": "integer"}},
        "chi_total": {"type": "integer"},
        "deg": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}
HINTS = {"type": "array", "items": RATIONAL}

# reports

_NU_LIST = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["direction", "nu"],
        "properties": {"direction": {"type": "string"}, "nu": {"type": "integer"}},
        "additionalProperties": False,
    },
}
RH_REPORT = {
    "type": "object",
    "required": ["chi_Y", "chi_X", "deg", "ram_sum", "nu_out", "nu_in", "lhs", "rhs", "balanced"],
    "properties": {
        "chi_Y": {"type": "integer"},
        "chi_X": {"type": "integer"},
        "deg": {"type": "integer", "minimum": 1},
        "ram_sum": {"type": "integer", "minimum": 0},
        "nu_out": _NU_LIST,
        "nu_in": _NU_LIST,
        "lhs": {"type": "integer"},
        "rhs": {"type": "integer"},
        "balanced": {"type": "boolean"},
    },
    "additionalProperties": False,
}
GERM_REPORT = {
    "type": "object",
    "required": ["d", "sigma", "nu", "eps_val"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "sigma": {"type": "integer"},
        "nu": {"type": "integer"},
        "eps_val": VALQ,
        "separable": {"type": "boolean"},
        "image_center": CENTER,
        "image_log_radius": RATIONAL,
        "different": RATIONAL,
        "discriminant": RATIONAL,
    },
    "additionalProperties": False,
}
POLYGON_REPORT = {
    "type": "object",
    "required": ["vertices", "breakpoints"],
    "properties": {
        "vertices": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "integer"}, RATIONAL], "minItems": 2, "maxItems": 2},
        },
        "breakpoints": {"type": "array", "items": RATIONAL},
        "range": {
            "type": "object",
            "required": ["lo", "hi", "zeros"],
            "properties": {"lo": RATIONAL, "hi": RATIONAL, "zeros": {"type": "integer", "minimum": 0}},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}
EULER_REPORT = {
    "type": "object",
    "required": ["chi", "genus", "m"],
    "properties": {
        "chi": {"type": "integer"},
        "genus": {"type": "integer"},
        "m": {"type": "integer"},
    },
    "additionalProperties": False,
}
CHARP_REPORT = {
    "type": "object",
    "required": ["divisor", "total", "expected", "deg", "status"],
    "properties": {
        "divisor": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["direction", "sigma", "count"],
                "properties": {
                    "direction": {"type": "string"},
                    "sigma": {"type": "integer"},
                    "count": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "total": {"type": "integer"},
        "expected": {"type": "integer"},
        "deg": {"type": "integer", "minimum": 1},
        "status": {"enum": ["VERIFIED", "INCOMPLETE"]},
    },
    "additionalProperties": False,
}
DIAGNOSTICS = {
    "type": "object",
    "required": ["ok", "checks"],
    "properties": {
        "ok": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "ok", "detail"],
                "properties": {
                    "name": {"type": "string"},
                    "ok": {"type": "boolean"},
                    "detail": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
RH_OUTPUT = {
    "oneOf": [
        RH_REPORT,
        {
            "type": "object",
            "required": ["error", "diagnostics"],
            "properties": {"error": {"type": "string"}, "diagnostics": DIAGNOSTICS},
            "additionalProperties": False,
        },
    ]
}
FROBENIUS_REPORT = {
    "type": "object",
    "required": ["p", "maps", "charp"],
    "properties": {
        "p": {"type": "integer"},
        "maps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "report", "germ_inf"],
                "properties": {"name": {"type": "string"}, "report": RH_REPORT, "germ_inf": GERM_REPORT},
                "additionalProperties": False,
            },
        },
        "charp": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["map", "report"],
                "properties": {"map": {"type": "string"}, "report": CHARP_REPORT},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

INPUT_SCHEMAS = {
    "poly": POLY,
    "map": MAP,
    "domain": DOMAIN,
    "direction": DIRECTION,
    "morphism": MORPHISM,
    "graph": GRAPH,
    "hints": HINTS,
}
OUTPUT_SCHEMAS = {
    "polygon": POLYGON_REPORT,
    "germ": GERM_REPORT,
    "euler": EULER_REPORT,
    "rh": RH_OUTPUT,
    "ledger": RH_OUTPUT,
    "charp": CHARP_REPORT,
    "frobenius": FROBENIUS_REPORT,
}


def all_schemas():
    return {"inputs": INPUT_SCHEMAS, "outputs": OUTPUT_SCHEMAS}


def _validator(schema):
    return jsonschema.Draft202012Validator(schema)


def validate(obj, schema, name):
    """Raise ``InputError`` naming the first offending field."""
    e = jsonschema.exceptions.best_match(_validator(schema).iter_errors(obj))
    if e is not None:
        path = e.json_path.replace("$", name, 1)
        msg = e.message
        if isinstance(e.instance, Decimal):
            msg = f"{e.instance} is not exact; write integers or strings like \"a/b\""
        raise InputError(f"{path}: {msg}")
    return obj


def load_json_file(path, schema_name):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh, parse_float=Decimal)
    except FileNotFoundError:
        raise InputError(f"{schema_name}: file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{schema_name}: invalid JSON in {path}: {e}") from None
    return validate(obj, INPUT_SCHEMAS[schema_name], schema_name)
