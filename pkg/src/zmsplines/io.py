"""JSON interchange for graphs and generating sets.

Big integers travel as decimal strings. Emission is byte-deterministic:
edges sorted by canonical index ``(j, i)``, fixed key order, two-space
indent and a trailing newline.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .arith import SplineError, factorize
from .constructions import CERTIFICATES, GeneratingSet
from .graph import EdgeLabeledGraph


class FormatError(SplineError):
    pass


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_int(text: str | int) -> int:
    """Decimal integer, optionally written as a product of powers like ``2^5*3^4``."""
    if isinstance(text, bool):
        raise FormatError(f"not an integer: {text!r}")
    if isinstance(text, int):
        return text
    value = 1
    for part in str(text).split("*"):
        mt = _TERM.match(part)
        if not mt:
            raise FormatError(f"not an integer expression: {text!r}")
        base, exp = mt.groups()
        value *= int(base) ** int(exp or 1)
    return value


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def graph_to_dict(g: EdgeLabeledGraph) -> dict:
    edges = sorted(g.labels.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return {
        "modulus": str(g.m),
        "vertices": g.n,
        "edges": [{"u": u, "v": v, "label": str(lab)} for (u, v), lab in edges],
    }


def graph_to_json(g: EdgeLabeledGraph) -> str:
    return _dump(graph_to_dict(g))


def graph_from_dict(data: dict) -> EdgeLabeledGraph:
    try:
        ctx = factorize(parse_int(data["modulus"]))
        n = data["vertices"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise FormatError("'vertices' must be an integer")
        labels = {}
        for e in data["edges"]:
            u, v = e["u"], e["v"]
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
                raise FormatError(f"edge endpoints must be integers: {e}")
            key = (min(u, v), max(u, v))
            if key in labels:
                raise FormatError(f"duplicate edge {key}")
            labels[key] = parse_int(e["label"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed graph JSON: {exc!r}") from exc
    return EdgeLabeledGraph(ctx, n, labels)


def graph_from_json(text: str) -> EdgeLabeledGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def gens_to_dict(gens: GeneratingSet) -> dict:
    return {
        "splines": [[str(x) for x in f] for f in gens.splines],
        "certificate": gens.certificate,
        "rank": gens.rank,
        "invariant_factors": [str(x) for x in gens.invariant_factors],
    }


def gens_to_json(gens: GeneratingSet) -> str:
    return _dump(gens_to_dict(gens))


def gens_from_dict(data: dict) -> GeneratingSet:
    try:
        splines = [[parse_int(x) for x in f] for f in data["splines"]]
        cert = data.get("certificate", "generating-only")
        if cert not in CERTIFICATES:
            raise FormatError(f"unknown certificate {cert!r}")
        rank = data.get("rank")
        factors = tuple(parse_int(x) for x in data.get("invariant_factors", []))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed generating-set JSON: {exc!r}") from exc
    return GeneratingSet(splines, cert, rank, factors)


def gens_from_json(text: str) -> GeneratingSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return gens_from_dict(data)
