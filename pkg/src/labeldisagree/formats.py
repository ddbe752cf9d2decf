"""Instance documents, penalty records and the command-line penalty syntax.

An instance document is JSON::

    {"nodes": 3,
     "unary": [[10, 0], [10, 0], [0, 0.5]],
     "hyperedges": [{"members": [0, 1, 2], "g": {"kind": "table", "values": [0, 1]}}]}

A penalty record has ``kind`` in sqrt / log1p / power / trunclin / table and
the optional fields ``p``, ``slope``, ``cap``, ``values`` and ``weight``
(default 1).  Builtin families are sampled up to ``k // 2`` of their edge.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .core import KINDS, ConcaveSpec, make_concave_spec
from .errors import DisagreementError, ParameterError, ParseError, SemanticError
from .solver import Instance

_RECORD_FIELDS = {"kind", "p", "slope", "cap", "values", "weight"}


def spec_from_record(rec: dict, T: int) -> ConcaveSpec:
    if not isinstance(rec, dict) or "kind" not in rec:
        raise ParameterError("penalty record needs a 'kind' field")
    unknown = set(rec) - _RECORD_FIELDS
    if unknown:
        raise ParameterError(f"unknown penalty fields {sorted(unknown)}")
    kind = rec["kind"]
    if kind not in KINDS:
        raise ParameterError(f"unknown penalty kind {kind!r}")
    weight = rec.get("weight", 1.0)
    if kind == "table":
        if "values" not in rec:
            raise ParameterError("table penalty needs 'values'")
        return make_concave_spec("table", None, weight, values=rec["values"])
    if kind == "power" and "p" not in rec:
        raise ParameterError("power penalty needs 'p'")
    if kind == "trunclin" and not {"slope", "cap"} <= set(rec):
        raise ParameterError("trunclin penalty needs 'slope' and 'cap'")
    params = {f: rec[f] for f in ("p", "slope", "cap") if f in rec}
    return make_concave_spec(kind, max(T, 1), weight, **params)


def spec_to_record(spec: ConcaveSpec) -> dict:
    rec: dict[str, Any] = {"kind": spec.kind}
    if spec.kind == "power":
        rec["p"] = spec.params[0]
    elif spec.kind == "trunclin":
        rec["slope"], rec["cap"] = spec.params
    elif spec.kind == "table":
        rec["values"] = list(spec.params)
    if spec.weight != 1.0:
        rec["weight"] = spec.weight
    return rec


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("nodes", "unary"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    nodes = doc["nodes"]
    if not isinstance(nodes, int) or isinstance(nodes, bool):
        raise ParseError("'nodes' must be an integer")
    unary = doc["unary"]
    if not isinstance(unary, list):
        raise ParseError("'unary' must be a list")
    for i, pair in enumerate(unary):
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_number(c) for c in pair)):
            raise ParseError(f"unary[{i}] must be a pair of numbers")
    raw_edges = doc.get("hyperedges", [])
    if not isinstance(raw_edges, list):
        raise ParseError("'hyperedges' must be a list")
    edges = []
    for j, rec in enumerate(raw_edges):
        if not isinstance(rec, dict) or "members" not in rec or "g" not in rec:
            raise ParseError(f"hyperedges[{j}] needs 'members' and 'g'")
        members = rec["members"]
        if not (isinstance(members, list) and all(isinstance(m, int) for m in members)):
            raise ParseError(f"hyperedges[{j}].members must be a list of integers")
        try:
            spec = spec_from_record(rec["g"], len(members) // 2)
        except DisagreementError as exc:
            raise SemanticError(str(exc), j) from exc
        edges.append((members, spec))
    return Instance(nodes, unary, edges)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def serialize_instance(inst: Instance) -> str:
    doc = {
        "nodes": inst.n,
        "unary": [list(u) for u in inst.unary],
        "hyperedges": [
            {"members": list(members), "g": spec_to_record(spec)} for members, spec in inst.hyperedges
        ],
    }
    return json.dumps(doc, indent=1)


def parse_gspec(text: str, T: int, validate: bool = True) -> ConcaveSpec | np.ndarray:
    """Parse ``sqrt``, ``log1p``, ``power:p``, ``trunclin:slope,cap`` or
    ``table:v0,v1,...``, each with an optional ``*weight`` suffix.

    With ``validate=False`` the raw weighted samples are returned as an array
    and no concavity check is made.
    """
    body, _, weight = text.partition("*")
    name, _, args = body.partition(":")
    try:
        w = float(weight) if weight else 1.0
        nums = [float(a) for a in args.split(",")] if args else []
    except ValueError as exc:
        raise ParameterError(f"bad penalty syntax {text!r}") from exc
    rec: dict[str, Any] = {"kind": name, "weight": w}
    if name in ("sqrt", "log1p"):
        if nums:
            raise ParameterError(f"{name} takes no parameters")
    elif name == "power" and len(nums) == 1:
        rec["p"] = nums[0]
    elif name == "trunclin" and len(nums) == 2:
        rec["slope"], rec["cap"] = nums
    elif name == "table" and len(nums) >= 2:
        rec["values"] = nums
    else:
        raise ParameterError(f"bad penalty syntax {text!r}")
    if validate:
        return spec_from_record(rec, T)
    if name == "table":
        return np.asarray(nums) * w
    # builtin families are always admissible; sampling them never fails validation
    return spec_from_record(rec, T).as_array()
