"""Versioned JSON documents shared by the CLI and library callers."""

from __future__ import annotations

import json

from .expr import BracketExpr, to_json, to_text, witness_stats
from .lattice import Element
from .syntax import format_coefficient, format_element

SCHEMA_VERSION = 1


def element_payload(x: Element) -> dict:
    return {
        "element": format_element(x),
        "mode": x.mode,
        "terms": [[c.i, c.j, format_coefficient(v)] for c, v in x.items()],
    }


def witness_payload(target, gens: str, expr: BracketExpr) -> dict:
    stats = witness_stats(expr)
    return {
        "target": list(target),
        "generators": gens,
        "witness": to_json(expr),
        "text": to_text(expr),
        "stats": stats._asdict(),
    }


def document(kind: str, payload: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "kind": kind, **payload}


def dumps(kind: str, payload: dict) -> str:
    return json.dumps(document(kind, payload), sort_keys=True)
