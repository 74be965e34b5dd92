"""Graph text and JSON formats.

Text format, one record per line:
    v <count>            optional header fixing the vertex count
    e <u> <w> <len>      one edge; <len> is an integer, a/b rational, or
                         a finite decimal, parsed exactly
    # ...                comment
Endpoint order in the file fixes the orientation of each edge.

JSON equivalent: {"vertices": n, "edges": [[u, w, "a/b"], ...]}.
"""

from __future__ import annotations

import json

from .errors import InputError, MgtError
from .graph import MetrizedGraph, build_graph
from .rational import format_scalar, parse_scalar


def parse_graph_text(text: str) -> MetrizedGraph:
    vcount = None
    edges: list[tuple[int, int, object]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v":
                if len(parts) != 2:
                    raise InputError("expected: v <count>")
                vcount = int(parts[1])
            elif parts[0] == "e":
                if len(parts) != 4:
                    raise InputError("expected: e <u> <w> <len>")
                edges.append((int(parts[1]), int(parts[2]), parse_scalar(parts[3])))
            else:
                raise InputError(f"unknown record {parts[0]!r}")
        except (ValueError, InputError) as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if not edges and vcount is None:
        raise InputError("empty graph file")
    if vcount is None:
        vcount = 1 + max(max(u, w) for u, w, _ in edges)
    try:
        return build_graph(vcount, edges)
    except MgtError as exc:
        raise InputError(str(exc)) from exc


def format_graph_text(g: MetrizedGraph) -> str:
    lines = [f"v {g.vcount}"]
    lines += [f"e {a} {b} {format_scalar(length)}" for a, b, length in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph_json(text: str) -> MetrizedGraph:
    try:
        doc = json.loads(text)
        vcount = int(doc["vertices"])
        edges = [(int(u), int(w), parse_scalar(str(s))) for u, w, s in doc["edges"]]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"bad graph JSON: {exc}") from exc
    try:
        return build_graph(vcount, edges)
    except MgtError as exc:
        raise InputError(str(exc)) from exc


def graph_to_json(g: MetrizedGraph) -> dict:
    return {
        "vertices": g.vcount,
        "edges": [[a, b, format_scalar(length)] for a, b, length in g.edges],
    }


def load_graph(path: str) -> MetrizedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return parse_graph_json(text)
    return parse_graph_text(text)


def save_graph(path: str, g: MetrizedGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if path.endswith(".json"):
            json.dump(graph_to_json(g), fh)
            fh.write("\n")
        else:
            fh.write(format_graph_text(g))
