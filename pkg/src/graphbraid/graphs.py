"""Finite multigraphs and the subdivision analysis behind discretized token spaces.

Graphs are immutable: dense integer vertex ids ``0..|V|-1`` with optional text
labels, dense integer edge ids ``0..|E|-1``.  Parallel edges and self-loops are
allowed.  Every edge carries a global orientation from its lower-id endpoint
(the *tail*) to its higher-id endpoint (the *head*); a self-loop keeps its
declared endpoint order.

Structural notions used throughout the package:

* an *essential vertex* is a vertex of degree != 2 (a self-loop contributes 2
  to the degree of its vertex);
* an *essential path* joins two essential vertices through degree-2 interior
  vertices; the edge set of a connected graph partitions into essential paths,
  with a single flagged whole-graph path when no essential vertex exists
  (i.e. the graph is a cycle);
* the *girth* is the length of a shortest cycle: a self-loop counts 1, a
  parallel pair counts 2, forests have infinite girth.

``check_sufficient`` decides whether a graph is subdivided finely enough for
``n`` tokens.  Criterion ``"improved"`` requires every essential path between
*distinct* essential vertices to have length >= n-1 and the girth to be
>= n+1; criterion ``"original"`` raises the path bound to n+1 as well.
``sufficiently_subdivide`` repairs a failing graph by edge subdivision only,
so the result is homeomorphic to the input.
"""

from __future__ import annotations

import hashlib
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "Graph",
    "EssentialPath",
    "Violation",
    "SufficiencyReport",
    "GraphFormatError",
    "parse_graph",
    "graph_text",
    "graph_hash",
    "essential_vertices",
    "essential_path_decomposition",
    "girth",
    "girth_with_witness",
    "check_sufficient",
    "subdivide_edge",
    "sufficiently_subdivide",
]


class GraphFormatError(ValueError):
    """Malformed graph file.  ``line`` is the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """A finite multigraph with dense vertex and edge ids.

    ``labels[v]`` is an optional text label for vertex ``v``; ``edges[e]`` is
    the declared endpoint pair of edge ``e``.
    """

    labels: tuple[str | None, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        nv = len(self.labels)
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < nv and 0 <= v < nv):
                raise ValueError(f"edge {e} endpoint out of range: ({u}, {v})")

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the (edge id, other endpoint) pairs sorted by edge id.

        A self-loop appears twice at its vertex, so ``len(incidence[v])`` is
        the degree of ``v``.
        """
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append((e, v))
            inc[v].append((e, u))
        return tuple(tuple(sorted(lst)) for lst in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def tail_head(self, e: int) -> tuple[int, int]:
        """Endpoints of ``e`` in global orientation order (tail, head)."""
        u, v = self.edges[e]
        return (u, v) if u <= v else (v, u)

    def closure(self, e: int) -> frozenset[int]:
        """Endpoint set of edge ``e`` (a single vertex for a self-loop)."""
        return frozenset(self.edges[e])

    def is_connected(self) -> bool:
        nv = self.num_vertices
        if nv <= 1:
            return True
        seen = [False] * nv
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            v = stack.pop()
            for _, w in self.incidence[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == nv


@dataclass(frozen=True)
class EssentialPath:
    """A maximal path through degree-2 vertices between essential endpoints.

    ``endpoints`` may coincide (a cycle attached to one essential vertex).
    ``edges`` lists the traversed edge ids from ``endpoints[0]`` to
    ``endpoints[1]``; ``interior`` lists the intermediate degree-2 vertices in
    the same order.  ``whole_graph`` flags the degenerate case of a graph with
    no essential vertices at all (a cycle graph), where the path covers the
    whole graph starting and ending at its lowest-id vertex.
    """

    endpoints: tuple[int, int]
    edges: tuple[int, ...]
    interior: tuple[int, ...]
    whole_graph: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)

    def vertex_seq(self) -> tuple[int, ...]:
        """Vertices visited in order, endpoints included (first == last for
        equal endpoints)."""
        return (self.endpoints[0], *self.interior, self.endpoints[1])


@dataclass(frozen=True)
class Violation:
    """One failed subdivision condition with its witness subgraph."""

    condition: str  # "A", "A'", or "B"
    required: int
    length: int
    edges: tuple[int, ...]


@dataclass(frozen=True)
class SufficiencyReport:
    """Outcome of ``check_sufficient``.

    ``shortest_path`` is the shortest essential path between distinct
    essential vertices as ``(length, edge ids)``, or None when no such path
    exists.  ``girth`` is ``(length, witness edge ids)`` with
    ``(math.inf, None)`` for forests.  ``too_few_vertices`` is informational:
    with fewer than ``n`` vertices the discretized space is empty, so the
    conditions say nothing about a retraction.
    """

    criterion: str
    n: int
    passes: bool
    vertex_count: int
    too_few_vertices: bool
    shortest_path: tuple[int, tuple[int, ...]] | None
    girth: tuple[int | float, tuple[int, ...] | None]
    violations: tuple[Violation, ...]


# ---------------------------------------------------------------------------
# parsing and serialization


def parse_graph(text: str) -> Graph:
    """Parse the line-based graph format.

    Lines: ``# comment``, ``v <id> [label]``, ``e <id> <u> <v>``.  The i-th
    vertex line must declare id i, likewise for edges; endpoints must name
    declared vertices.
    """
    labels: list[str | None] = []
    edges: list[tuple[int, int]] = []
    edge_lines: list[tuple[int, int, int, int]] = []  # (line, id, u, v)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "v":
            if len(fields) < 2:
                raise GraphFormatError("vertex line needs an id", lineno)
            vid = _parse_id(fields[1], lineno)
            if vid != len(labels):
                raise GraphFormatError(
                    f"expected vertex id {len(labels)}, got {vid}"
                    + (" (duplicate id)" if vid < len(labels) else ""),
                    lineno,
                )
            labels.append(" ".join(fields[2:]) if len(fields) > 2 else None)
        elif kind == "e":
            if len(fields) != 4:
                raise GraphFormatError("edge line needs: e <id> <u> <v>", lineno)
            eid = _parse_id(fields[1], lineno)
            if eid != len(edge_lines):
                raise GraphFormatError(
                    f"expected edge id {len(edge_lines)}, got {eid}"
                    + (" (duplicate id)" if eid < len(edge_lines) else ""),
                    lineno,
                )
            u = _parse_id(fields[2], lineno)
            v = _parse_id(fields[3], lineno)
            edge_lines.append((lineno, eid, u, v))
        else:
            raise GraphFormatError(f"unknown record type {kind!r}", lineno)
    for lineno, eid, u, v in edge_lines:
        if u >= len(labels) or v >= len(labels):
            bad = u if u >= len(labels) else v
            raise GraphFormatError(f"edge {eid} references unknown vertex {bad}", lineno)
        edges.append((u, v))
    return Graph(labels=tuple(labels), edges=tuple(edges))


def _parse_id(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise GraphFormatError(f"negative id: {value}", lineno)
    return value


def graph_text(G: Graph) -> str:
    """Serialize ``G`` to the line format (inverse of ``parse_graph``)."""
    lines = []
    for v, label in enumerate(G.labels):
        lines.append(f"v {v}" if label is None else f"v {v} {label}")
    for e, (u, v) in enumerate(G.edges):
        lines.append(f"e {e} {u} {v}")
    return "\n".join(lines) + "\n"


def graph_hash(G: Graph) -> str:
    """SHA-256 of the canonical serialization; stable across comment and
    whitespace differences in source files."""
    return hashlib.sha256(graph_text(G).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# structure


def essential_vertices(G: Graph) -> list[int]:
    """Vertices of degree != 2, ascending."""
    return [v for v in range(G.num_vertices) if G.degree(v) != 2]


def essential_path_decomposition(G: Graph) -> list[EssentialPath]:
    """Partition the edge set into essential paths.

    Each edge appears in exactly one returned path.  A graph with no
    essential vertices (a cycle) yields one whole-graph flagged path based at
    its lowest-id vertex.  Requires a connected graph.
    """
    if not G.is_connected():
        raise ValueError("essential path decomposition requires a connected graph")
    ess = set(essential_vertices(G))
    if not ess:
        if G.num_edges == 0:
            return []
        return [_cycle_walk(G, 0)]

    # Darts: (edge, 0) traverses the stored (u, v) forward, (edge, 1) backward.
    used: set[tuple[int, int]] = set()
    paths: list[EssentialPath] = []
    for v in sorted(ess):
        for dart in _darts_at(G, v):
            if dart in used:
                continue
            paths.append(_trace_path(G, v, dart, ess, used))
    return paths


def _darts_at(G: Graph, v: int) -> list[tuple[int, int]]:
    darts = []
    for e, (u, w) in enumerate(G.edges):
        if u == v:
            darts.append((e, 0))
        if w == v:
            darts.append((e, 1))
    return sorted(darts)


def _dart_target(G: Graph, dart: tuple[int, int]) -> int:
    e, d = dart
    u, v = G.edges[e]
    return v if d == 0 else u


def _trace_path(
    G: Graph,
    start: int,
    dart: tuple[int, int],
    ess: set[int],
    used: set[tuple[int, int]],
) -> EssentialPath:
    edges: list[int] = []
    interior: list[int] = []
    cur = dart
    while True:
        e, d = cur
        used.add(cur)
        used.add((e, 1 - d))
        edges.append(e)
        b = _dart_target(G, cur)
        if b in ess:
            return EssentialPath(
                endpoints=(start, b), edges=tuple(edges), interior=tuple(interior)
            )
        interior.append(b)
        # b has degree 2: continue along the dart that is not the reverse.
        back = (e, 1 - d)
        nxt = [dd for dd in _darts_at(G, b) if dd != back]
        cur = nxt[0]


def _cycle_walk(G: Graph, base: int) -> EssentialPath:
    dart = _darts_at(G, base)[0]
    edges: list[int] = []
    interior: list[int] = []
    cur = dart
    while True:
        e, d = cur
        edges.append(e)
        b = _dart_target(G, cur)
        if b == base:
            return EssentialPath(
                endpoints=(base, base),
                edges=tuple(edges),
                interior=tuple(interior),
                whole_graph=True,
            )
        interior.append(b)
        back = (e, 1 - d)
        cur = [dd for dd in _darts_at(G, b) if dd != back][0]


def girth(G: Graph) -> int | float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    return girth_with_witness(G)[0]


def girth_with_witness(G: Graph) -> tuple[int | float, tuple[int, ...] | None]:
    """Girth plus a witness cycle as an ordered closed edge walk.

    A self-loop is a cycle of length 1 and a parallel pair a cycle of
    length 2.  Ties are broken toward the lexicographically earliest witness
    (lowest starting edge id, breadth-first routes with sorted incidence).
    """
    for e, (u, v) in enumerate(G.edges):
        if u == v:
            return 1, (e,)
    best: tuple[int, tuple[int, ...]] | None = None
    for e, (u, v) in enumerate(G.edges):
        found = _shortest_route_avoiding(G, u, v, e)
        if found is None:
            continue
        route = found
        length = len(route) + 1
        if best is None or length < best[0]:
            best = (length, (*route, e))
            if length == 2:
                break
    if best is None:
        return math.inf, None
    return best


def _shortest_route_avoiding(
    G: Graph, src: int, dst: int, skip: int
) -> tuple[int, ...] | None:
    """Edge ids of a shortest src->dst walk not using edge ``skip``."""
    parent: dict[int, tuple[int, int]] = {}  # vertex -> (prev vertex, edge)
    seen = {src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        if a == dst:
            break
        for e, b in G.incidence[a]:
            if e == skip or b in seen:
                continue
            seen.add(b)
            parent[b] = (a, e)
            queue.append(b)
    if dst not in seen and src != dst:
        return None
    route: list[int] = []
    cur = dst
    while cur != src:
        prev, e = parent[cur]
        route.append(e)
        cur = prev
    route.reverse()
    return tuple(route)


# ---------------------------------------------------------------------------
# sufficiency


def check_sufficient(G: Graph, n: int, criterion: str = "improved") -> SufficiencyReport:
    """Check the subdivision conditions for ``n`` tokens.

    ``improved``: essential paths between distinct essential vertices must
    have length >= n-1 (condition "A") and the girth must be >= n+1
    (condition "B").  ``original``: the path bound becomes n+1 (condition
    "A'"); the girth bound is unchanged.  Paths whose endpoints coincide are
    governed by the girth bound only.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if criterion not in ("improved", "original"):
        raise ValueError(f"unknown criterion {criterion!r}")
    if G.num_vertices <= 1:
        raise ValueError("sufficiency check requires at least 2 vertices")
    if not G.is_connected():
        raise ValueError("sufficiency check requires a connected graph")

    paths = essential_path_decomposition(G)
    distinct = [
        p for p in paths if not p.whole_graph and p.endpoints[0] != p.endpoints[1]
    ]
    if criterion == "improved":
        path_bound, path_label = n - 1, "A"
    else:
        path_bound, path_label = n + 1, "A'"

    violations = [
        Violation(path_label, path_bound, p.length, p.edges)
        for p in distinct
        if p.length < path_bound
    ]
    g, witness = girth_with_witness(G)
    if g < n + 1:
        violations.append(Violation("B", n + 1, int(g), witness))

    shortest = None
    if distinct:
        p = min(distinct, key=lambda p: (p.length, p.edges))
        shortest = (p.length, p.edges)
    return SufficiencyReport(
        criterion=criterion,
        n=n,
        passes=not violations,
        vertex_count=G.num_vertices,
        too_few_vertices=G.num_vertices < n,
        shortest_path=shortest,
        girth=(g, witness),
        violations=tuple(violations),
    )


def subdivide_edge(G: Graph, e: int, k: int) -> Graph:
    """Replace edge ``e`` by a path of ``k+1`` edges through ``k`` new
    degree-2 vertices.

    Existing ids are preserved: edge ``e`` becomes the first segment and the
    remaining segments and the new vertices get fresh appended ids.  ``k=0``
    returns the graph unchanged.
    """
    if not (0 <= e < G.num_edges):
        raise ValueError(f"unknown edge id {e}")
    if k < 0:
        raise ValueError(f"subdivision count must be >= 0, got {k}")
    if k == 0:
        return G
    nv = G.num_vertices
    u, v = G.edges[e]
    new_vertices = list(range(nv, nv + k))
    labels = G.labels + (None,) * k
    edges = list(G.edges)
    chain = [u, *new_vertices, v]
    edges[e] = (chain[0], chain[1])
    for i in range(1, k + 1):
        edges.append((chain[i], chain[i + 1]))
    return Graph(labels=labels, edges=tuple(edges))


def sufficiently_subdivide(G: Graph, n: int) -> Graph:
    """Subdivide until the improved criterion for ``n`` tokens passes.

    First each too-short essential path between distinct essential vertices
    is lengthened (its lowest-id edge takes all the new vertices), then edges
    on shortest cycles are subdivided one at a time (lowest edge id on the
    witness cycle) until the girth reaches n+1.  Idempotent: a passing graph
    is returned unchanged.  The result is homeomorphic to the input but not
    claimed vertex-minimal.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if G.num_vertices <= 1:
        raise ValueError("subdivision target requires at least 2 vertices")
    if not G.is_connected():
        raise ValueError("subdivision requires a connected graph")
    if check_sufficient(G, n, "improved").passes:
        return G

    cur = G
    for p in essential_path_decomposition(G):
        if p.whole_graph or p.endpoints[0] == p.endpoints[1]:
            continue
        deficit = (n - 1) - p.length
        if deficit > 0:
            # Prior subdivisions never reassign existing edge ids.
            cur = subdivide_edge(cur, min(p.edges), deficit)
    while True:
        g, witness = girth_with_witness(cur)
        if g >= n + 1:
            break
        cur = subdivide_edge(cur, min(witness), 1)
    return cur
