"""CG text format and DOT export.

CG text, one item per line:
    node <name>      isolated node
    <u> -> <v>       directed edge
    <u> -- <v>       undirected edge
    # ...            comment
Nodes are declared on first mention; first-mention order fixes indices.
"""

import re
from pathlib import Path

import structlog

from ..core.exceptions import ErrorCode, GraphError
from ..models.graph import GraphLike, HybridGraph, as_hybrid, normalize_pair

log = structlog.get_logger(__name__)

_NAME = r"[A-Za-z0-9_]+"
_EDGE_RE = re.compile(rf"^({_NAME})\s*(->|--)\s*({_NAME})$")
_NODE_RE = re.compile(rf"^node\s+({_NAME})$")


def parse_cg(text: str) -> HybridGraph:
    names: list[str] = []
    index: dict[str, int] = {}
    directed: set[tuple[int, int]] = set()
    undirected: set[tuple[int, int]] = set()
    seen: dict[tuple[int, int], int] = {}

    def declare(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        edge = _EDGE_RE.match(line)
        if edge:
            a, op, b = edge.groups()
            if a == b:
                raise GraphError(
                    f"line {lineno}: self-loop on {a}",
                    error_code=ErrorCode.GRAPH_SELF_LOOP,
                    context={"line": lineno, "text": raw},
                )
            u, v = declare(a), declare(b)
            key = normalize_pair(u, v)
            if key in seen:
                raise GraphError(
                    f"line {lineno}: second edge between {a} and {b} (first on line {seen[key]})",
                    error_code=ErrorCode.GRAPH_DUPLICATE_EDGE,
                    context={"line": lineno, "text": raw},
                )
            seen[key] = lineno
            (directed if op == "->" else undirected).add((u, v))
            continue

        node = _NODE_RE.match(line)
        if node:
            declare(node.group(1))
            continue

        raise GraphError(
            f"line {lineno}: cannot parse {line!r}",
            error_code=ErrorCode.GRAPH_PARSE_FAILED,
            context={"line": lineno, "text": raw},
        )

    return HybridGraph(names=tuple(names), directed=frozenset(directed), undirected=frozenset(undirected))


def format_cg(graph: GraphLike) -> str:
    """Inverse of parse_cg: node declarations first, so indices survive a round trip"""
    g = as_hybrid(graph)
    lines = [f"node {node.name}" for node in g.nodes]
    edges = [(u, v, "->") for u, v in g.directed] + [(u, v, "--") for u, v in g.undirected]
    for u, v, op in sorted(edges, key=lambda e: (normalize_pair(e[0], e[1]), e[0])):
        lines.append(f"{g.names[u]} {op} {g.names[v]}")
    return "\n".join(lines) + "\n"


def to_dot(graph: GraphLike, name: str = "G") -> str:
    g = as_hybrid(graph)
    lines = [f"digraph {name} {{"]
    lines += [f"  {node.name};" for node in g.nodes]
    for u, v in sorted(g.directed):
        lines.append(f"  {g.names[u]} -> {g.names[v]};")
    for u, v in sorted(g.undirected):
        lines.append(f"  {g.names[u]} -> {g.names[v]} [dir=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(path: Path) -> HybridGraph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        log.error("graph_read_failed", path=str(path), error=str(e))
        raise GraphError(f"cannot read {path}: {e}", error_code=ErrorCode.IO_FAILED, cause=e) from e
    return parse_cg(text)


def write_text(path: Path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        log.error("write_failed", path=str(path), error=str(e))
        raise GraphError(f"cannot write {path}: {e}", error_code=ErrorCode.IO_FAILED, cause=e) from e
