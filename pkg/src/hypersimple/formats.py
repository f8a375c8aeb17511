"""JSON sequence files and result documents."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .core import DegreeSequence, DirectedDegreeSequence, UndirectedDegreeSequence, validate
from .errors import ParseError

UNDIRECTED_KEYS = ("vertex_degrees", "edge_degrees")
DIRECTED_KEYS = ("out_degrees", "in_degrees", "tail_degrees", "head_degrees")


def _int_list(doc: dict, key: str) -> list[int]:
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise ParseError(f"{key!r} must be a list of integers")
    return value


def sequence_from_dict(doc: Any) -> DegreeSequence:
    if not isinstance(doc, dict):
        raise ParseError("sequence file must hold a JSON object")
    kind = doc.get("type")
    if kind == "undirected":
        seq = UndirectedDegreeSequence(*(_int_list(doc, k) for k in UNDIRECTED_KEYS))
    elif kind == "directed":
        seq = DirectedDegreeSequence(*(_int_list(doc, k) for k in DIRECTED_KEYS))
    else:
        raise ParseError(f"'type' must be 'undirected' or 'directed', got {kind!r}")
    validate(seq)
    return seq


def parse_sequence(text: str) -> DegreeSequence:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, err.lineno, err.colno) from None
    return sequence_from_dict(doc)


def load_sequence(path: Union[str, Path]) -> DegreeSequence:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None
    return parse_sequence(text)


def sequence_to_dict(seq: DegreeSequence) -> dict:
    if isinstance(seq, DirectedDegreeSequence):
        return {"type": "directed", **{k: list(getattr(seq, k)) for k in DIRECTED_KEYS}}
    return {"type": "undirected", **{k: list(getattr(seq, k)) for k in UNDIRECTED_KEYS}}


def rational(value: Fraction) -> dict[str, str]:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def parse_rational(doc: dict) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))
