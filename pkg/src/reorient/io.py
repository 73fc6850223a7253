"""Instance file formats.

Text graph grammar (one record per line, `#` starts a comment):

    v <count>          optional vertex-count header
    e <u> <v>          undirected edge
    a <tail> <head>    arc

Repeated lines create parallel elements.  Sidecar provenance files reuse
the grammar and add `label <kind> <index> <text>` lines.  SAT instances are
DIMACS cnf restricted to two literals per clause; requirement files hold
`r <x> <y> <value>` lines; weight files hold `w <kind> <index> <p>[/<q>]`.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from typing import Iterable, TextIO

from .core import Arc, Edge, GraphError, MixedGraph
from .exact import Requirement, SatInstance


class FormatError(GraphError):
    """Malformed instance file; carries a line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _records(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_graph(text: str) -> MixedGraph:
    n = 0
    edges: list[Edge] = []
    arcs: list[Arc] = []
    for line_no, parts in _records(text):
        kind = parts[0]
        if kind == "v":
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError(line_no, "expected: v <count>")
            n = max(n, int(parts[1]))
        elif kind in ("e", "a"):
            if len(parts) != 3:
                raise FormatError(line_no, f"expected: {kind} <from> <to>")
            try:
                x, y = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(line_no, "endpoints must be integers")
            if x < 0 or y < 0:
                raise FormatError(line_no, "endpoints must be nonnegative")
            if x == y:
                raise FormatError(line_no, "loops are not allowed")
            n = max(n, x + 1, y + 1)
            if kind == "e":
                edges.append(Edge(x, y))
            else:
                arcs.append(Arc(x, y))
        elif kind == "label":
            continue  # sidecar lines are legal to skip when reading the instance
        else:
            raise FormatError(line_no, f"unknown record '{kind}'")
    return MixedGraph(n, tuple(edges), tuple(arcs))


def emit_graph(g: MixedGraph) -> str:
    lines = [f"v {g.n}"]
    lines.extend(f"e {e.u} {e.v}" for e in g.edges)
    lines.extend(f"a {a.tail} {a.head}" for a in g.arcs)
    return "\n".join(lines) + "\n"


def emit_labels(g: MixedGraph, vertex_labels: Iterable[str] | None = None) -> str:
    """Sidecar: the instance records plus label lines for tagged elements."""
    lines = [emit_graph(g).rstrip("\n")]
    if vertex_labels is not None:
        for i, lab in enumerate(vertex_labels):
            lines.append(f"label v {i} {lab}")
    for i, e in enumerate(g.edges):
        if e.label is not None:
            lines.append(f"label e {i} {e.label}")
    for i, a in enumerate(g.arcs):
        if a.label is not None:
            lines.append(f"label a {i} {a.label}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: MixedGraph) -> dict:
    return {
        "n": g.n,
        "edges": [{"u": e.u, "v": e.v, "label": e.label} for e in g.edges],
        "arcs": [{"tail": a.tail, "head": a.head, "label": a.label} for a in g.arcs],
    }


def graph_from_json(doc: dict) -> MixedGraph:
    return MixedGraph(
        int(doc["n"]),
        tuple(Edge(int(e["u"]), int(e["v"]), e.get("label")) for e in doc.get("edges", [])),
        tuple(
            Arc(int(a["tail"]), int(a["head"]), a.get("label"))
            for a in doc.get("arcs", [])
        ),
    )


def parse_sat(text: str) -> SatInstance:
    nvars = None
    clauses: list[tuple[int, int]] = []
    for line_no, parts in _records(text):
        if parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(line_no, "expected: p cnf <vars> <clauses>")
            nvars = int(parts[2])
            continue
        if nvars is None:
            raise FormatError(line_no, "clause before the p cnf header")
        try:
            lits = [int(x) for x in parts]
        except ValueError:
            raise FormatError(line_no, "literals must be integers")
        if lits[-1] != 0:
            raise FormatError(line_no, "clause line must end with 0")
        lits = lits[:-1]
        if len(lits) != 2:
            raise FormatError(line_no, "exactly two literals per clause")
        if any(l == 0 or abs(l) > nvars for l in lits):
            raise FormatError(line_no, "literal out of range")
        clauses.append((lits[0], lits[1]))
    if nvars is None:
        raise FormatError(0, "missing p cnf header")
    return SatInstance(nvars, tuple(clauses))


def emit_sat(sat: SatInstance) -> str:
    lines = [f"p cnf {sat.num_vars} {len(sat.clauses)}"]
    lines.extend(f"{a} {b} 0" for a, b in sat.clauses)
    return "\n".join(lines) + "\n"


def parse_requirement(text: str) -> Requirement:
    pairs: dict[tuple[int, int], int] = {}
    for line_no, parts in _records(text):
        if parts[0] != "r" or len(parts) != 4:
            raise FormatError(line_no, "expected: r <x> <y> <value>")
        try:
            x, y, val = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise FormatError(line_no, "requirement entries must be integers")
        if val < 0:
            raise FormatError(line_no, "requirements are nonnegative")
        if x == y:
            raise FormatError(line_no, "requirements apply to distinct vertices")
        pairs[(x, y)] = val
    return Requirement(pairs)


def emit_requirement(req: Requirement) -> str:
    lines = [f"r {x} {y} {val}" for (x, y), val in sorted(req.pairs.items())]
    return "\n".join(lines) + "\n"


def parse_weights(text: str) -> dict[tuple[str, int], Fraction]:
    out: dict[tuple[str, int], Fraction] = {}
    for line_no, parts in _records(text):
        if parts[0] != "w" or len(parts) != 4 or parts[1] not in ("e", "a"):
            raise FormatError(line_no, "expected: w <e|a> <index> <p>[/<q>]")
        try:
            idx = int(parts[2])
            if "/" in parts[3]:
                p, q = parts[3].split("/", 1)
                val = Fraction(int(p), int(q))
            else:
                val = Fraction(int(parts[3]))
        except (ValueError, ZeroDivisionError):
            raise FormatError(line_no, "malformed weight value")
        if val < 0:
            raise FormatError(line_no, "weights are nonnegative")
        out[(parts[1], idx)] = val
    return out


def edge_weight_list(
    g: MixedGraph, wmap: dict[tuple[str, int], Fraction], default: Fraction = Fraction(1)
) -> list[Fraction]:
    return [wmap.get(("e", i), default) for i in range(g.m_edges)]


def arc_weight_list(
    g: MixedGraph, wmap: dict[tuple[str, int], Fraction], default: Fraction = Fraction(1)
) -> list[Fraction]:
    return [wmap.get(("a", i), default) for i in range(g.m_arcs)]


def instance_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def read_text(path_or_stream: str | TextIO) -> str:
    if hasattr(path_or_stream, "read"):
        return path_or_stream.read()
    with open(path_or_stream, "r", encoding="utf-8") as fh:
        return fh.read()


def parse_instance(path_or_stream: str | TextIO, kind: str = "graph"):
    """Parse a graph, SAT, or requirement file by declared kind."""
    text = read_text(path_or_stream)
    if kind == "graph":
        return parse_graph(text)
    if kind == "sat":
        return parse_sat(text)
    if kind == "requirement":
        return parse_requirement(text)
    raise GraphError(f"unknown instance kind {kind}")
