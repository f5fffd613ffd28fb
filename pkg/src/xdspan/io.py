"""Edge-list text format.

::

    n m weighted|unweighted
    u v [w]
    ...

Ids are 0-based ASCII decimals, one edge per line, LF line ends. The writer
emits edges sorted by ``(u, v)`` and omits weights for unweighted graphs.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Union

from .errors import GraphError, GraphFormatError
from .graph import DirectedGraph, build_graph

PathLike = Union[str, os.PathLike]

SCHEMA_VERSION = 1


def format_edge_list(g: DirectedGraph) -> str:
    kind = "weighted" if g.weighted else "unweighted"
    lines = [f"{g.n} {g.m} {kind}"]
    if g.weighted:
        lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    else:
        lines.extend(f"{u} {v}" for u, v, _ in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> DirectedGraph:
    lines = [ln.strip() for ln in text.split("\n")]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge-list file")
    header = lines[0].split()
    if len(header) != 3 or header[2] not in ("weighted", "unweighted"):
        raise GraphFormatError(f"bad header {lines[0]!r}; want 'n m weighted|unweighted'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}") from exc
    weighted = header[2] == "weighted"
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header says {m} edges, found {len(body)}")
    edges = []
    for lineno, ln in enumerate(body, start=2):
        parts = ln.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer token in {ln!r}") from exc
        if weighted and len(nums) != 3:
            raise GraphFormatError(f"line {lineno}: weighted edge needs 'u v w'")
        if not weighted and len(nums) != 2:
            raise GraphFormatError(f"line {lineno}: unweighted edge needs 'u v'")
        edges.append(tuple(nums))
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from exc


def write_edge_list(g: DirectedGraph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(g), encoding="ascii", newline="\n")


def read_edge_list(path: PathLike) -> DirectedGraph:
    return parse_edge_list(Path(path).read_text(encoding="ascii"))


def dump_json(obj: Any, path: PathLike) -> None:
    """Write ``obj`` with a schema tag, sorted keys and a trailing newline."""
    payload = {"schema": SCHEMA_VERSION, **obj}
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
