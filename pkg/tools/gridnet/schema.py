# ====== Code Summary ======
# JSON schema of the native network document. Values are per-unit on `base_mva`; field names
# match the attributes of the dataclasses in `gridnet.models`.

NETWORK_SCHEMA: dict = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "gridmga network",
    "type": "object",
    "required": ["buses"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "base_mva": {"type": "number", "exclusiveMinimum": 0},
        "buses": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "base_kv": {"type": "number"},
                    "v_min": {"type": "number"},
                    "v_max": {"type": "number"},
                },
            },
        },
        "branches": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "origin", "dest", "b", "p_max"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "origin": {"type": "integer"},
                    "dest": {"type": "integer"},
                    "b": {"type": "number"},
                    "g": {"type": "number"},
                    "p_max": {"type": "number"},
                    "switchable": {"type": "boolean"},
                    "x0": {"enum": [0, 1]},
                },
            },
        },
        "devices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "bus", "cost", "p_min", "p_max"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "bus": {"type": "integer"},
                    "cost": {"type": "number"},
                    "p_min": {"type": "number"},
                    "p_max": {"type": "number"},
                    "q_min": {"type": "number"},
                    "q_max": {"type": "number"},
                    "ramp": {"type": ["number", "null"]},
                    "commitable": {"type": "boolean"},
                },
            },
        },
    },
}
