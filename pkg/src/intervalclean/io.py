"""Text formats: edge-list graphs and interval models.

Graph files: first non-comment line "n m", then m lines "u v" (0-based).
Interval files: one line "id left right" per vertex.  Lines starting with
'#' are ignored in both.
"""

from __future__ import annotations

from .graphs import GraphError, Interval, IntervalGraph, graph_from_intervals


def _data_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split())
    return out


def parse_graph(text: str) -> IntervalGraph:
    lines = _data_lines(text)
    if not lines:
        raise GraphError("empty graph file")
    try:
        n, m = (int(x) for x in lines[0])
    except ValueError as exc:
        raise GraphError(f"bad header line {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for parts in lines[1:]:
        if len(parts) != 2:
            raise GraphError(f"bad edge line {parts!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return IntervalGraph.from_edges(n, edges)


def format_graph(g: IntervalGraph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_intervals(text: str) -> dict[int, tuple[int, int]]:
    model: dict[int, tuple[int, int]] = {}
    for parts in _data_lines(text):
        if len(parts) != 3:
            raise GraphError(f"bad interval line {parts!r}")
        vid, left, right = (int(x) for x in parts)
        if vid in model:
            raise GraphError(f"duplicate vertex id {vid}")
        model[vid] = (left, right)
    if not model:
        raise GraphError("empty interval file")
    return model


def format_intervals(g: IntervalGraph) -> str:
    if g.model is None:
        raise GraphError("graph has no interval model")
    lines = [f"{v} {iv.left} {iv.right}" for v, iv in enumerate(g.model)]
    return "\n".join(lines) + "\n"


def read_graph(path, model_path=None) -> IntervalGraph:
    with open(path, encoding="utf-8") as fh:
        g = parse_graph(fh.read())
    if model_path is not None:
        with open(model_path, encoding="utf-8") as fh:
            model = parse_intervals(fh.read())
        modeled = graph_from_intervals(model)
        if modeled.n != g.n or modeled.adj != g.adj:
            raise GraphError("interval model disagrees with the edge list")
        return modeled
    return g


def read_interval_graph(path) -> IntervalGraph:
    with open(path, encoding="utf-8") as fh:
        return graph_from_intervals(parse_intervals(fh.read()))


def write_graph(path, g: IntervalGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def write_intervals(path, g: IntervalGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_intervals(g))
