"""Cube complexes of discretized token configurations on a graph.

A k-cell of the ordered complex is an n-tuple of vertices and edges of the
graph, k of which are edges, whose closures (endpoint sets) are pairwise
disjoint — so no two tokens ever get closer than a full edge.  The unordered
complex identifies tuples up to coordinate permutation; since disjointness
forces all entries to be distinct, the permutation action is free and each
orbit is stored through its canonical representative (vertex entries sorted
by id, then edge entries sorted by id).

Cell entries are ``(kind, id)`` pairs with kind 0 for vertices and 1 for
edges, so the canonical entry order is just tuple order.  Each edge is
oriented from its lower-id endpoint (tail) to its higher-id endpoint (head).
The boundary of a cell replaces one edge entry by its head (sign +) or tail
(sign -), weighted by (-1)^(j-1) for the j-th edge coordinate; re-sorting a
face of a canonical representative never swaps two edge coordinates, so
orbit boundaries need no extra sign.  Self-loop entries contribute a zero
boundary in their coordinate (head and tail faces cancel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph
from .intmatrix import SparseIntMatrix

__all__ = [
    "KIND_VERTEX",
    "KIND_EDGE",
    "Cell",
    "CubeComplex",
    "CellCapExceededError",
    "SurfaceReport",
    "build_complex",
    "f_vector",
    "maximal_cell_vector",
    "euler_characteristic",
    "boundary_matrix",
    "component_count",
    "surface_report",
    "edgepath_chain",
]

KIND_VERTEX = 0
KIND_EDGE = 1

CellEntry = tuple[int, int]
Cell = tuple[CellEntry, ...]

DEFAULT_CELL_CAP = 10**7


class CellCapExceededError(RuntimeError):
    """Estimated 0-cell count exceeds the enumeration cap."""


@dataclass(frozen=True)
class SurfaceReport:
    """Diagnostics for 2-dimensional complexes.

    ``is_closed_surface`` requires every 1-cell to lie in exactly two
    2-cells and every 0-cell link to be a single cycle.  ``orientable`` is
    None when the complex is not a closed surface.
    """

    is_closed_surface: bool
    orientable: bool | None


class CubeComplex:
    """The discretized configuration complex of ``n`` tokens on a graph.

    Construct via :func:`build_complex`.  Cells are registered per dimension
    in lexicographic order of their entry tuples, and boundary matrices are
    built eagerly (rows index (k-1)-cells, columns index k-cells).
    """

    def __init__(
        self,
        graph: Graph,
        n: int,
        labeling: str,
        cells: list[list[Cell]],
        boundaries: list[SparseIntMatrix],
    ):
        self.graph = graph
        self.n = n
        self.labeling = labeling
        self._cells = cells
        self._index = [
            {cell: i for i, cell in enumerate(layer)} for layer in cells
        ]
        self._boundaries = boundaries  # boundaries[k-1] is d_k

    @property
    def dimension(self) -> int:
        return len(self._cells) - 1

    def num_cells(self, k: int) -> int:
        if 0 <= k <= self.dimension:
            return len(self._cells[k])
        return 0

    def cells(self, k: int) -> tuple[Cell, ...]:
        if not (0 <= k <= self.dimension):
            raise IndexError(f"no cells in dimension {k}")
        return tuple(self._cells[k])

    def cell_index(self, k: int, cell: Cell) -> int:
        return self._index[k][cell]

    def has_cell(self, k: int, cell: Cell) -> bool:
        return 0 <= k <= self.dimension and cell in self._index[k]

    def boundary(self, k: int) -> SparseIntMatrix:
        if not (1 <= k <= self.dimension):
            raise IndexError(f"boundary defined for 1 <= k <= {self.dimension}, got {k}")
        return self._boundaries[k - 1]

    def canonical_cell(self, entries: Iterable[CellEntry]) -> Cell:
        """The registry form of a cell: sorted for unordered complexes,
        coordinate order for ordered ones."""
        tup = tuple(entries)
        return tuple(sorted(tup)) if self.labeling == "unordered" else tup

    def zero_cell_of_vertices(self, vertices: Iterable[int]) -> Cell:
        return self.canonical_cell((KIND_VERTEX, v) for v in vertices)

    def __repr__(self) -> str:
        return (
            f"CubeComplex({self.labeling} n={self.n}, f={tuple(len(c) for c in self._cells)})"
        )


def build_complex(
    G: Graph,
    n: int,
    labeling: str = "unordered",
    cell_cap: int = DEFAULT_CELL_CAP,
) -> CubeComplex:
    """Enumerate all cells and boundary operators of the configuration
    complex.

    ``n`` larger than the vertex count gives a valid empty complex.  The
    estimated number of 0-cells must not exceed ``cell_cap``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if labeling not in ("ordered", "unordered"):
        raise ValueError(f"labeling must be 'ordered' or 'unordered', got {labeling!r}")
    nv = G.num_vertices
    estimate = math.perm(nv, n) if labeling == "ordered" else math.comb(nv, n)
    if estimate > cell_cap:
        raise CellCapExceededError(
            f"estimated {estimate} zero-cells exceeds cap {cell_cap}"
        )

    entries: list[CellEntry] = [(KIND_VERTEX, v) for v in range(nv)]
    entries += [(KIND_EDGE, e) for e in range(G.num_edges)]
    closures = [
        frozenset({i}) if kind == KIND_VERTEX else G.closure(i)
        for kind, i in entries
    ]

    by_dim: list[list[Cell]] = [[] for _ in range(n + 1)]
    if labeling == "unordered":
        _enumerate_sorted(entries, closures, n, by_dim)
    else:
        _enumerate_ordered(entries, closures, n, by_dim)
    while by_dim and not by_dim[-1]:
        by_dim.pop()

    boundaries = _boundary_matrices(G, labeling, by_dim)
    return CubeComplex(G, n, labeling, by_dim, boundaries)


def _enumerate_sorted(entries, closures, n, by_dim):
    total = len(entries)
    chosen: list[int] = []

    def rec(start: int, used: frozenset[int], num_edges: int) -> None:
        if len(chosen) == n:
            by_dim[num_edges].append(tuple(entries[i] for i in chosen))
            return
        remaining = n - len(chosen)
        for idx in range(start, total - remaining + 1):
            cl = closures[idx]
            if used & cl:
                continue
            chosen.append(idx)
            rec(idx + 1, used | cl, num_edges + entries[idx][0])
            chosen.pop()

    rec(0, frozenset(), 0)


def _enumerate_ordered(entries, closures, n, by_dim):
    total = len(entries)
    chosen: list[int] = []

    def rec(used: frozenset[int], num_edges: int) -> None:
        if len(chosen) == n:
            by_dim[num_edges].append(tuple(entries[i] for i in chosen))
            return
        for idx in range(total):
            cl = closures[idx]
            if used & cl:
                continue
            chosen.append(idx)
            rec(used | cl, num_edges + entries[idx][0])
            chosen.pop()

    rec(frozenset(), 0)


def _boundary_matrices(
    G: Graph, labeling: str, by_dim: list[list[Cell]]
) -> list[SparseIntMatrix]:
    index = [{cell: i for i, cell in enumerate(layer)} for layer in by_dim]
    mats: list[SparseIntMatrix] = []
    for k in range(1, len(by_dim)):
        acc: dict[tuple[int, int], int] = {}
        lower = index[k - 1]
        for col, cell in enumerate(by_dim[k]):
            edge_positions = [p for p, (kind, _) in enumerate(cell) if kind == KIND_EDGE]
            for j, p in enumerate(edge_positions):
                e = cell[p][1]
                tail, head = G.tail_head(e)
                sign = -1 if j % 2 else 1
                for target, s in ((head, sign), (tail, -sign)):
                    face = list(cell)
                    face[p] = (KIND_VERTEX, target)
                    if labeling == "unordered":
                        face.sort()
                    row = lower[tuple(face)]
                    key = (row, col)
                    acc[key] = acc.get(key, 0) + s
        mats.append(
            SparseIntMatrix(len(by_dim[k - 1]), len(by_dim[k]), acc)
        )
    return mats


# ---------------------------------------------------------------------------
# queries


def f_vector(K: CubeComplex) -> tuple[int, ...]:
    """Cell counts by dimension; empty tuple for the empty complex."""
    return tuple(K.num_cells(k) for k in range(K.dimension + 1))


def maximal_cell_vector(K: CubeComplex) -> tuple[int, ...]:
    """Counts of cells not contained in any higher-dimensional cell, by
    dimension 0..dim.

    Face containment is computed structurally (a self-loop entry still
    covers its faces even though its signed boundary cancels).
    """
    dim = K.dimension
    if dim < 0:
        return ()
    out = []
    for k in range(dim + 1):
        total = K.num_cells(k)
        if k == dim:
            out.append(total)
            continue
        with_coface: set[int] = set()
        for cell in K.cells(k + 1):
            for p, (kind, e) in enumerate(cell):
                if kind != KIND_EDGE:
                    continue
                for target in K.graph.tail_head(e):
                    face = list(cell)
                    face[p] = (KIND_VERTEX, target)
                    with_coface.add(K.cell_index(k, K.canonical_cell(face)))
        out.append(total - len(with_coface))
    return tuple(out)


def euler_characteristic(K: CubeComplex) -> int:
    return sum((-1) ** k * fk for k, fk in enumerate(f_vector(K)))


def boundary_matrix(K: CubeComplex, k: int) -> SparseIntMatrix:
    return K.boundary(k)


def component_count(K: CubeComplex) -> int:
    """Connected components of the 1-skeleton (union-find over 0-cells)."""
    n0 = K.num_cells(0)
    if n0 == 0:
        return 0
    parent = list(range(n0))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if K.dimension >= 1:
        incident: dict[int, list[int]] = {}
        for (row, col), _v in K.boundary(1).entries.items():
            incident.setdefault(col, []).append(row)
        for rows in incident.values():
            a = find(rows[0])
            for r in rows[1:]:
                b = find(r)
                if a != b:
                    parent[b] = a
    return sum(1 for x in range(n0) if find(x) == x)


def surface_report(K: CubeComplex) -> SurfaceReport:
    """Closed-surface and orientability diagnostics for a 2-dimensional
    complex."""
    if K.dimension != 2:
        raise ValueError(f"surface report requires dimension 2, got {K.dimension}")
    d2 = K.boundary(2)
    d1 = K.boundary(1)

    cofaces: dict[int, list[tuple[int, int]]] = {}
    faces_of: dict[int, list[tuple[int, int]]] = {}
    for (row, col), v in d2.entries.items():
        cofaces.setdefault(row, []).append((col, v))
        faces_of.setdefault(col, []).append((row, v))

    closed = all(
        len(cofaces.get(c, ())) == 2
        and all(abs(v) == 1 for _q, v in cofaces[c])
        for c in range(K.num_cells(1))
    )
    if closed:
        closed = all(len(faces_of.get(q, ())) == 4 for q in range(K.num_cells(2)))

    endpoints: dict[int, list[int]] = {}
    for (row, col), _v in d1.entries.items():
        endpoints.setdefault(col, []).append(row)
    if closed:
        closed = all(
            len(set(endpoints.get(c, ()))) == 2 for c in range(K.num_cells(1))
        )

    if closed:
        closed = _links_are_circles(K, faces_of, endpoints)
    if not closed:
        return SurfaceReport(is_closed_surface=False, orientable=None)
    return SurfaceReport(
        is_closed_surface=True, orientable=_orientable(K, cofaces)
    )


def _links_are_circles(K, faces_of, endpoints) -> bool:
    # link of a 0-cell: vertices are incident 1-cells; each 2-cell with that
    # corner joins its two 1-cell faces through the corner
    link_edges: dict[int, list[tuple[int, int]]] = {}
    for q in range(K.num_cells(2)):
        sides = [c for c, _v in faces_of[q]]
        corner_to_sides: dict[int, list[int]] = {}
        for c in sides:
            for x in endpoints[c]:
                corner_to_sides.setdefault(x, []).append(c)
        if len(corner_to_sides) != 4:
            return False
        for x, cs in corner_to_sides.items():
            if len(cs) != 2:
                return False
            link_edges.setdefault(x, []).append((cs[0], cs[1]))
    incident_cells: dict[int, set[int]] = {}
    for c, xs in endpoints.items():
        for x in xs:
            incident_cells.setdefault(x, set()).add(c)
    for x in range(K.num_cells(0)):
        nodes = incident_cells.get(x, set())
        edges = link_edges.get(x, [])
        if not nodes or len(edges) != len(nodes):
            return False
        deg: dict[int, int] = {c: 0 for c in nodes}
        adj: dict[int, list[int]] = {c: [] for c in nodes}
        for a, b in edges:
            if a not in deg or b not in deg:
                return False
            deg[a] += 1
            deg[b] += 1
            adj[a].append(b)
            adj[b].append(a)
        if any(d != 2 for d in deg.values()):
            return False
        # connectivity of the link
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if seen != nodes:
            return False
    return True


def _orientable(K, cofaces) -> bool:
    n2 = K.num_cells(2)
    sign: list[int | None] = [None] * n2
    adjacency: dict[int, list[tuple[int, int]]] = {q: [] for q in range(n2)}
    for _c, pair in cofaces.items():
        (q1, v1), (q2, v2) = pair
        # consistent global orientation needs s1*v1 + s2*v2 == 0
        rel = -v1 * v2
        adjacency[q1].append((q2, rel))
        adjacency[q2].append((q1, rel))
    for start in range(n2):
        if sign[start] is not None:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            q = stack.pop()
            for r, rel in adjacency[q]:
                want = sign[q] * rel
                if sign[r] is None:
                    sign[r] = want
                    stack.append(r)
                elif sign[r] != want:
                    return False
    return True


# ---------------------------------------------------------------------------
# edge paths as 1-chains


def edgepath_chain(K: CubeComplex, path) -> dict[int, int]:
    """Express a token edge path as an integer 1-chain of ``K``.

    ``path`` provides ``start`` (token-indexed vertex ids) and ``moves``
    ((token, edge, dir) triples, dir +1 for tail->head).  Raises KeyError if
    a traversed state or move is not a registered cell of ``K``.
    """
    state = list(path.start)
    if len(state) != K.n:
        raise ValueError(f"path has {len(state)} tokens, complex has n={K.n}")
    # the start must be a registered 0-cell
    K.cell_index(0, K.zero_cell_of_vertices(state))
    chain: dict[int, int] = {}
    for token, edge, direction in path.moves:
        tail, head = K.graph.tail_head(edge)
        src, dst = (tail, head) if direction == 1 else (head, tail)
        if state[token] != src:
            raise ValueError(
                f"token {token} is at {state[token]}, not at edge {edge} endpoint {src}"
            )
        entries = [
            (KIND_EDGE, edge) if i == token else (KIND_VERTEX, v)
            for i, v in enumerate(state)
        ]
        idx = K.cell_index(1, K.canonical_cell(entries))
        chain[idx] = chain.get(idx, 0) + direction
        state[token] = dst
        K.cell_index(0, K.zero_cell_of_vertices(state))
    return {i: v for i, v in chain.items() if v}
