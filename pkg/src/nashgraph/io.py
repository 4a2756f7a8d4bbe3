"""JSON documents for graphs, coverings and reports."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from . import __version__
from .errors import GraphError, InvalidGraphError
from .graph import Vertex, WeightedGraph
from .topology import GraphCovering


class GraphFormatError(GraphError):
    """Malformed document. ``kind`` is ``"syntax"`` or ``"schema"``."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


_GRAPH_FIELDS = {"name", "vertices", "edges"}
_VERTEX_FIELDS = {"id", "genus", "weight"}
_COVERING_FIELDS = {"base", "total", "vertex_map", "edge_map", "degree"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _schema(path: str, msg: str) -> GraphFormatError:
    return GraphFormatError("schema", f"{path}: {msg}")


def _loads(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            "syntax", f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def graph_from_document(doc: Any, path: str = "$", allow_disconnected: bool = False) -> WeightedGraph:
    if not isinstance(doc, dict):
        raise _schema(path, "expected an object")
    extra = set(doc) - _GRAPH_FIELDS
    if extra:
        raise _schema(path, f"unknown field {sorted(extra)[0]!r}")
    for key in ("vertices", "edges"):
        if key not in doc:
            raise _schema(path, f"missing field {key!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise _schema(f"{path}.name", "expected a string")
    if not isinstance(doc["vertices"], list):
        raise _schema(f"{path}.vertices", "expected a list")
    verts = []
    for i, v in enumerate(doc["vertices"]):
        vp = f"{path}.vertices[{i}]"
        if not isinstance(v, dict):
            raise _schema(vp, "expected an object")
        extra = set(v) - _VERTEX_FIELDS
        if extra:
            raise _schema(vp, f"unknown field {sorted(extra)[0]!r}")
        for key in ("id", "genus", "weight"):
            if key not in v:
                raise _schema(vp, f"missing field {key!r}")
        if not isinstance(v["id"], str) or not v["id"]:
            raise _schema(f"{vp}.id", "expected a non-empty string")
        for key in ("genus", "weight"):
            if not _is_int(v[key]):
                raise _schema(f"{vp}.{key}", "expected an integer")
        verts.append(Vertex(v["id"], v["genus"], v["weight"]))
    if not isinstance(doc["edges"], list):
        raise _schema(f"{path}.edges", "expected a list")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise _schema(f"{path}.edges[{i}]", "expected a pair of vertex ids")
        edges.append((e[0], e[1]))
    return WeightedGraph(tuple(verts), tuple(edges), name, allow_disconnected)


def parse_graph(text: str | bytes) -> WeightedGraph:
    """Strictly parse a graph document.

    Raises :class:`GraphFormatError` for malformed JSON or schema problems and
    :class:`~nashgraph.errors.InvalidGraphError` (with a distinct ``kind``) for
    self-loops, dangling edges, disconnected graphs, negative genus and
    duplicate ids.
    """
    return graph_from_document(_loads(text))


def graph_to_document(g: WeightedGraph) -> dict:
    doc: dict[str, Any] = {}
    if g.name is not None:
        doc["name"] = g.name
    doc["vertices"] = [{"id": v.id, "genus": v.genus, "weight": v.weight} for v in g.vertices]
    doc["edges"] = [[a, b] for a, b in g.edges]
    return doc


def serialize_graph(g: WeightedGraph) -> str:
    return json.dumps(graph_to_document(g), indent=2) + "\n"


def graph_digest(g: WeightedGraph) -> str:
    canon = json.dumps(graph_to_document(g), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


def covering_to_document(c: GraphCovering) -> dict:
    return {
        "base": graph_to_document(c.base),
        "total": graph_to_document(c.total),
        "vertex_map": {x: c.vertex_map[x] for x in c.total.ids},
        "edge_map": list(c.edge_map),
        "degree": c.degree,
    }


def covering_from_document(doc: Any) -> GraphCovering:
    if not isinstance(doc, dict):
        raise _schema("$", "expected an object")
    extra = set(doc) - _COVERING_FIELDS
    if extra:
        raise _schema("$", f"unknown field {sorted(extra)[0]!r}")
    missing = _COVERING_FIELDS - set(doc)
    if missing:
        raise _schema("$", f"missing field {sorted(missing)[0]!r}")
    base = graph_from_document(doc["base"], "$.base")
    total = graph_from_document(doc["total"], "$.total", allow_disconnected=True)
    vmap = doc["vertex_map"]
    if not isinstance(vmap, dict) or not all(isinstance(v, str) for v in vmap.values()):
        raise _schema("$.vertex_map", "expected an object of id -> id")
    emap = doc["edge_map"]
    if not isinstance(emap, list) or not all(_is_int(x) for x in emap):
        raise _schema("$.edge_map", "expected a list of edge indices")
    if not _is_int(doc["degree"]) or doc["degree"] < 1:
        raise _schema("$.degree", "expected a positive integer")
    return GraphCovering(total, base, dict(vmap), tuple(emap), doc["degree"])


def parse_covering(text: str | bytes) -> GraphCovering:
    return covering_from_document(_loads(text))


def serialize_covering(c: GraphCovering) -> str:
    return json.dumps(covering_to_document(c), indent=2) + "\n"


def report_document(command: list[str], digest: str | None, result: dict) -> dict:
    return {
        "command": list(command),
        "input_digest": digest,
        "result": result,
        "version": __version__,
    }


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


__all__ = [
    "GraphFormatError",
    "InvalidGraphError",
    "covering_from_document",
    "covering_to_document",
    "graph_digest",
    "graph_from_document",
    "graph_to_document",
    "parse_covering",
    "parse_graph",
    "report_document",
    "serialize_covering",
    "serialize_graph",
]
