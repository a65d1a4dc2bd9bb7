"""JSON Schema for the machine-readable reports written by the CLI."""

import jsonschema

SCHEMA_VERSION = "ucx-report/1"

_program = {
    "type": "object",
    "required": ["mode", "hex", "bits"],
    "properties": {
        "mode": {"enum": ["basis", "circuit", "state"]},
        "hex": {"type": "string", "pattern": "^[0-9a-f]*$"},
        "bits": {"type": "integer", "minimum": 2},
        "label": {"type": "integer", "minimum": 0},
        "instructions": {"type": "array"},
    },
}

_complexity = {
    "type": "object",
    "required": [
        "subject", "kind", "estimate", "n", "k_hat", "program_length", "penalty",
        "codec_penalty", "fidelity", "witness", "directly_computable", "direct_witness",
        "budget", "bound", "basis_used", "candidates", "truncated",
    ],
    "properties": {
        "kind": {"enum": ["unitary", "state"]},
        "estimate": {"const": "upper estimate"},
        "n": {"type": "integer", "minimum": 1},
        "k_hat": {"type": "integer", "minimum": 0},
        "program_length": {"type": "integer", "minimum": 2},
        "penalty": {"type": "integer", "minimum": 0},
        "codec_penalty": {"type": "integer", "minimum": 1},
        "fidelity": {"type": "number", "minimum": 0, "maximum": 1},
        "witness": _program,
        "directly_computable": {"type": "boolean"},
        "direct_witness": {"oneOf": [{"type": "null"}, _program]},
        "bound": {"type": "integer"},
        "candidates": {"type": "integer", "minimum": 1},
        "truncated": {"type": "boolean"},
    },
}

_relation = {
    "type": "object",
    "required": ["gap", "asserted", "holds", "circuit_direct_witness", "unitary", "state"],
    "properties": {
        "gap": {"type": "integer"},
        "asserted": {"type": "boolean"},
        "holds": {"type": "boolean"},
        "circuit_direct_witness": {"oneOf": [{"type": "null"}, _program]},
        "unitary": _complexity,
        "state": _complexity,
    },
}

_fraction = {"type": "string", "pattern": "^[0-9]+/[0-9]+$"}

_decompose = {
    "type": "object",
    "required": ["basis", "labels", "probs", "lengths", "codewords", "kraft_sum", "kraft_ok"],
    "properties": {
        "probs": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "lengths": {"type": "array", "items": {"oneOf": [{"const": "SKIP"}, {"type": "integer", "minimum": 1}]}},
        "codewords": {"type": "array", "items": {"type": ["string", "null"]}},
        "kraft_sum": _fraction,
        "kraft_ok": {"type": "boolean"},
    },
}

_result_by_command = {
    "complexity": {
        "type": "object",
        "required": ["complexity", "theorem1"],
        "properties": {"complexity": _complexity},
    },
    "state-complexity": {"type": "object", "required": ["complexity"], "properties": {"complexity": _complexity}},
    "relation": _relation,
    "decompose": _decompose,
    "verify": {
        "type": "object",
        "required": ["trials", "parseval_max_deviation", "kraft_max_sum", "passed"],
        "properties": {"kraft_max_sum": _fraction, "passed": {"type": "boolean"}},
    },
    "enumerate": {
        "type": "object",
        "required": ["count", "programs"],
        "properties": {"count": {"type": "integer"}, "programs": {"type": "array", "items": _program}},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "tool", "command", "inputs", "result"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "tool": {"type": "string"},
        "command": {"enum": sorted(_result_by_command)},
        "inputs": {"type": "object"},
        "result": {"type": "object"},
    },
    "allOf": [
        {
            "if": {"properties": {"command": {"const": cmd}}},
            "then": {"properties": {"result": sub}},
        }
        for cmd, sub in _result_by_command.items()
    ],
}


def validate_report(doc: dict) -> None:
    """Raise :class:`jsonschema.ValidationError` if `doc` is not a valid report."""
    jsonschema.validate(doc, REPORT_SCHEMA)
