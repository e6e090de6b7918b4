"""JSON formats for complexes, hypergraphs, ideals, run descriptors, and
reports.  Serialization is canonical: identical objects produce identical
bytes, so reports are reproducible modulo their timings block.
"""

import hashlib
import json

from .complexes import Hypergraph, SimplicialComplex
from .errors import InputError, ParseError
from .ideals import ideal_from_dicts


def parse_json_text(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_json_text(fh.read())


def complex_to_json(delta):
    return {
        "vertices": list(delta.labels),
        "facets": [list(f) for f in delta.label_facets()],
    }


def complex_from_json(data):
    try:
        vertices = [str(v) for v in data["vertices"]]
        facets = [[str(v) for v in f] for f in data["facets"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad complex object: {exc}") from None
    index = {v: i for i, v in enumerate(vertices)}
    try:
        faces = [tuple(index[v] for v in f) for f in facets]
    except KeyError as exc:
        raise ParseError(f"facet uses unknown vertex {exc}") from None
    try:
        return SimplicialComplex(tuple(vertices), tuple(faces))
    except InputError as exc:
        raise ParseError(str(exc)) from None


def hypergraph_to_json(h):
    return {
        "vertices": [h.labels[v] for v in h.present],
        "edges": [list(e) for e in h.label_edges()],
    }


def hypergraph_from_json(data):
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [[str(v) for v in e] for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad hypergraph object: {exc}") from None
    index = {v: i for i, v in enumerate(vertices)}
    try:
        edge_ids = [tuple(index[v] for v in e) for e in edges]
    except KeyError as exc:
        raise ParseError(f"edge uses unknown vertex {exc}") from None
    try:
        return Hypergraph(tuple(vertices), tuple(range(len(vertices))), edge_ids)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def ideal_to_json(ideal):
    return {
        "variables": list(ideal.variables),
        "generators": ideal.gen_dicts(),
    }


def ideal_from_json(data):
    try:
        variables = [str(v) for v in data["variables"]]
        gens = [dict(g) for g in data["generators"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad ideal object: {exc}") from None
    try:
        return ideal_from_dicts(gens, variables)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def betti_to_json(table):
    return {
        "field": table.field,
        "entries": [
            {"i": i, "j": j, "beta": b} for i, j, b in table.entries
        ],
    }


def detect_and_parse(data):
    """Parse any of the supported object kinds, returning (kind, object)."""
    if not isinstance(data, dict):
        raise ParseError("top-level JSON object expected")
    if "facets" in data:
        return "complex", complex_from_json(data)
    if "edges" in data:
        return "hypergraph", hypergraph_from_json(data)
    if "generators" in data:
        return "ideal", ideal_from_json(data)
    if "complex" in data:
        return "run", data
    raise ParseError("unrecognized object; expected facets/edges/generators")


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def inputs_digest(obj):
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()
