"""JSON schemas for the envelope each CLI command emits.

``envelope_schema(command)`` returns a draft 2020-12 schema; ``gtorsion schema
COMMAND`` prints it.  The package does not validate at runtime; the schemas
are the published contract that the test suite checks every envelope against.
"""

from __future__ import annotations

import copy

DIALECT = "https://json-schema.org/draft/2020-12/schema"

_INT = {"type": "integer"}
_NZ_INT = {"type": "integer", "not": {"const": 0}}
_POS_INT = {"type": "integer", "minimum": 1}
_PERM = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}
_STR = {"type": "string"}
_SURD = {"type": "string", "pattern": r"^\S+$"}


def _obj(props: dict, required: list[str] | None = None, extra: bool = False) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": extra,
    }


_CONFIG = _obj({
    "max_degree": _POS_INT,
    "search_mode": {"enum": ["pruned", "exhaustive", "both"]},
    "thread_count": _POS_INT,
    "cache_dir": {"type": ["string", "null"]},
    "output_format": {"enum": ["json", "csv", "text"]},
    "chebyshev_k_cap": _POS_INT,
})

_WITNESS = _obj({
    "p": _NZ_INT, "q": _NZ_INT, "n": _POS_INT, "x": _PERM, "y": _PERM,
    "candidate": _STR, "candidate_word": _STR, "candidate_image": _PERM,
    "candidate_cycle_type": {"type": "array", "items": _POS_INT},
})

_DEGREE = _obj({
    "n": _POS_INT,
    "witness": {"anyOf": [{"type": "null"}, _WITNESS]},
    "oracle_agrees": {"type": "boolean"},
}, required=["n", "witness"])

_SEARCH = _obj({
    "p": _NZ_INT, "q": _NZ_INT, "candidate": _STR,
    "mode": {"enum": ["pruned", "exhaustive", "both"]},
    "max_degree": _POS_INT,
    "verdict": {"enum": ["witness", "unknown"]},
    "first_degree": {"type": ["integer", "null"], "minimum": 1},
    "degrees": {"type": "array", "items": _DEGREE},
    "oracle_agrees": {"type": "boolean"},
}, required=["p", "q", "candidate", "mode", "max_degree", "verdict", "first_degree", "degrees"])

_ROW = _obj({
    "index": {"type": "integer", "minimum": 0},
    "p": _INT, "q": _INT, "n": _INT,
    "status": {"enum": ["pass", "fail", "error", "unknown"]},
    "message": _STR,
}, required=["index", "status"])

_COUNT = {"type": "integer", "minimum": 0}
_TABLE = _obj({
    "verdict": {"enum": ["pass", "fail"]},
    "counts": _obj({"pass": _COUNT, "fail": _COUNT, "error": _COUNT, "unknown": _COUNT}),
    "rows": {"type": "array", "items": _ROW},
    "warnings": {"type": "array", "items": _STR},
})

_CERTIFY = _obj({
    "p": _POS_INT, "q": _POS_INT, "k": _POS_INT, "n": _POS_INT, "m": _POS_INT,
    "certificate_word_text": _STR,
    "matrix_identity_verified": {"type": "boolean"},
    "target": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2},
})

_BIORDER = _obj({
    "word": _STR,
    "phi": _obj({
        "level": _INT,
        "vector": {"type": "array", "items": _SURD, "minItems": 2, "maxItems": 2},
        "eigen": _obj({"V+": _SURD, "V-": _SURD}),
    }),
    "sign": {"enum": ["Less", "Equal", "Greater"]},
})

_PIECE = {"type": "string", "pattern": r"^M\(-?[1-9][0-9]*\)$"}


def _pieces(k: int) -> dict:
    return {"type": "array", "items": _PIECE, "minItems": k, "maxItems": k}


_JSJ = {
    "oneOf": [
        _obj({"kind": {"const": "SeifertNoTori"}, "pieces": _pieces(0)}),
        _obj({"kind": {"const": "OneTorus"}, "pieces": _pieces(1)}),
        _obj({"kind": {"const": "TwoTori"}, "pieces": _pieces(2)}),
    ]
}

_INVARIANTS = {
    "p": _NZ_INT, "q": _NZ_INT,
    "alexander": {"type": "array", "items": _INT, "minItems": 3, "maxItems": 3},
    "jsj": _JSJ,
    "class_representative": {"type": "array", "items": _NZ_INT, "minItems": 2, "maxItems": 2},
}
_CLASSIFY = _obj({
    **_INVARIANTS,
    "other": _obj(dict(_INVARIANTS)),
    "zero_surgery_homeomorphic": {"type": "boolean"},
    "knot_relation": {"enum": ["Isotopic", "Mirror", "Neither"]},
}, required=list(_INVARIANTS))

PAYLOADS = {
    "search": _SEARCH,
    "verify-table": _TABLE,
    "certify": _CERTIFY,
    "biorder": _BIORDER,
    "classify": _CLASSIFY,
}


def envelope_schema(command: str) -> dict:
    """Full envelope schema for ``command``; raises ``KeyError`` for unknown commands."""
    payload = PAYLOADS[command]
    schema = _obj({
        "command": {"const": command},
        "params": {"type": "object"},
        "payload": payload,
        "timing": _obj({"seconds": {"type": "number", "minimum": 0}},
                       required=["seconds"], extra=True),
        "version": _STR,
        "config": _CONFIG,
    })
    schema["$schema"] = DIALECT
    schema["title"] = f"gtorsion {command} envelope"
    return copy.deepcopy(schema)
