"""The combinatorial retraction layer: components, combinatorics, the
standard-vertex map, standard moves, and witness loops.

Fix a rational ``delta`` (default 1/4) with 0 < delta < 1/2 and remove from
the graph every point at distance exactly delta from an essential vertex.
What remains splits into *vertex components* (an essential vertex plus its
open delta-stubs) and *arc components* (the rest of each essential path).
Arc components carry a deterministic orientation: the tail is the endpoint
with the lower essential-vertex id, and a component whose two ends meet the
same essential vertex is oriented so that its lowest-id edge runs from its
own tail endpoint to its head.

A configuration of n pairwise-distinct points that avoids the cut set and
puts at most one token in each vertex component has *combinatorics*: the
per-component ordered token lists.  The *standard vertex* of such a
configuration is a 0-cell of the discretized complex: tokens in arc
components slide to the first interior vertices along the orientation,
tokens in vertex components sit at the essential vertex, and overcrowded arc
components (more tokens than interior vertices, possible when essential
paths are shorter than n+1 edges) spill deterministically onto the
endpoint vertices.  *Standard moves* join the standard vertices of two
configurations related by a single crossing of the cut set; chains of them
standardize whole walks.

The witness generators build explicit closed edge paths: the rotation of n
tokens around a cycle, the nine-step loop around a short essential path with
branching at both ends, and the two-token dance at a degree-3 vertex next to
a short leaf path (emitted in a sufficiently subdivided copy of the graph).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graphs import (
    EssentialPath,
    Graph,
    essential_path_decomposition,
    essential_vertices,
    sufficiently_subdivide,
)

__all__ = [
    "VertexPoint",
    "EdgePoint",
    "GraphPoint",
    "VertexComponent",
    "ArcComponent",
    "Decomposition",
    "Combinatorics",
    "EdgePath",
    "Case1Witness",
    "OnDeltaSphereError",
    "NoCombinatoricsError",
    "NotSufficientlySubdividedError",
    "NotSingleCrossingError",
    "InvalidPathError",
    "WitnessConstructionError",
    "CycleTooShortError",
    "decompose",
    "combinatorics",
    "standard_vertex",
    "standard_vertex_of",
    "standard_move",
    "standardize_path",
    "rotation_loop",
    "case2_witness_loop",
    "case1_dance_loop",
    "point_from_json",
    "point_to_json",
    "configuration_from_json",
    "configuration_to_json",
    "edgepath_to_json",
    "edgepath_from_json",
]


class OnDeltaSphereError(ValueError):
    """A token sits at distance exactly delta from an essential vertex."""

    def __init__(self, message: str, token: int | None = None):
        self.token = token
        super().__init__(message)


class NoCombinatoricsError(ValueError):
    """Two tokens share a vertex component: configuration without
    combinatorics."""


class NotSufficientlySubdividedError(ValueError):
    """The standard-vertex map is undefined because the graph is not
    sufficiently subdivided for this many tokens."""


class NotSingleCrossingError(ValueError):
    """Two configurations do not differ by exactly one cut-set crossing."""


class InvalidPathError(ValueError):
    """An edge path step is not a cell of the discretized complex."""


class WitnessConstructionError(ValueError):
    """A witness-loop precondition fails."""


class CycleTooShortError(WitnessConstructionError):
    """Discrete rotation needs at least n+1 cycle vertices."""


# ---------------------------------------------------------------------------
# points and configurations


@dataclass(frozen=True)
class VertexPoint:
    vertex: int


@dataclass(frozen=True)
class EdgePoint:
    """An interior edge point; ``t`` is measured from the edge's global tail
    (its lower-id endpoint) and must satisfy 0 < t < 1."""

    edge: int
    t: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", Fraction(self.t))
        if not (0 < self.t < 1):
            raise ValueError(f"edge parameter must lie strictly in (0, 1), got {self.t}")


GraphPoint = VertexPoint | EdgePoint
Configuration = Sequence[GraphPoint]


def point_to_json(pt: GraphPoint) -> dict:
    if isinstance(pt, VertexPoint):
        return {"vertex": pt.vertex}
    return {"edge": pt.edge, "t": f"{pt.t.numerator}/{pt.t.denominator}"}


def point_from_json(obj: Mapping) -> GraphPoint:
    if "vertex" in obj:
        return VertexPoint(int(obj["vertex"]))
    if "edge" in obj:
        return EdgePoint(int(obj["edge"]), Fraction(str(obj["t"])))
    raise ValueError(f"not a graph point: {obj!r}")


def configuration_to_json(x: Configuration) -> list[dict]:
    return [point_to_json(p) for p in x]


def configuration_from_json(data: Iterable[Mapping]) -> tuple[GraphPoint, ...]:
    return tuple(point_from_json(obj) for obj in data)


# ---------------------------------------------------------------------------
# the decomposition


@dataclass(frozen=True)
class VertexComponent:
    """An essential vertex together with its open delta-stubs."""

    index: int
    vertex: int


@dataclass(frozen=True)
class ArcComponent:
    """An oriented arc component of one essential path.

    ``vertex_seq`` runs tail, interior..., head (first == last when both
    ends meet the same essential vertex); ``steps[i]`` is the edge traversed
    from ``vertex_seq[i]`` to ``vertex_seq[i+1]`` with its direction
    relative to the edge's global tail->head orientation.  ``q`` counts the
    interior vertices.  For the flagged whole-graph component (a graph with
    no essential vertices) the component contains every vertex, with the
    lowest-id vertex as basepoint.
    """

    index: int
    tail: int
    head: int
    vertex_seq: tuple[int, ...]
    steps: tuple[tuple[int, int], ...]
    whole_graph: bool = False

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertex_seq[1:-1]

    @property
    def q(self) -> int:
        return len(self.vertex_seq) - 2


class Decomposition:
    """The partition of a connected graph induced by the delta cut set."""

    def __init__(
        self,
        graph: Graph,
        delta: Fraction,
        vertex_components: tuple[VertexComponent, ...],
        arc_components: tuple[ArcComponent, ...],
    ):
        self.graph = graph
        self.delta = delta
        self.vertex_components = vertex_components
        self.arc_components = arc_components
        self.components: tuple[VertexComponent | ArcComponent, ...] = (
            *vertex_components,
            *arc_components,
        )
        self._vcomp_by_vertex = {vc.vertex: vc for vc in vertex_components}
        self._arc_by_edge: dict[int, tuple[ArcComponent, int]] = {}
        self._arc_by_interior: dict[int, tuple[ArcComponent, int]] = {}
        for arc in arc_components:
            for i, (e, _d) in enumerate(arc.steps):
                self._arc_by_edge[e] = (arc, i)
            if arc.whole_graph:
                for i, v in enumerate(arc.vertex_seq[:-1]):
                    self._arc_by_interior[v] = (arc, i)
            else:
                for i, v in enumerate(arc.interior, start=1):
                    self._arc_by_interior[v] = (arc, i)

    @property
    def whole_graph(self) -> bool:
        return bool(self.arc_components) and self.arc_components[0].whole_graph

    def vertex_component_at(self, v: int) -> VertexComponent:
        return self._vcomp_by_vertex[v]

    def arc_of_edge(self, e: int) -> ArcComponent:
        return self._arc_by_edge[e][0]

    def locate(
        self, pt: GraphPoint
    ) -> tuple[VertexComponent | ArcComponent, Fraction | None]:
        """Component containing ``pt`` plus its position along an arc
        (distance from the tail endpoint); vertex components report None.

        Raises OnDeltaSphereError for points at distance exactly delta from
        an essential vertex.
        """
        if isinstance(pt, VertexPoint):
            v = pt.vertex
            if not (0 <= v < self.graph.num_vertices):
                raise ValueError(f"unknown vertex {v}")
            if v in self._vcomp_by_vertex:
                return self._vcomp_by_vertex[v], None
            arc, pos = self._arc_by_interior[v]
            return arc, Fraction(pos)
        e = pt.edge
        if not (0 <= e < self.graph.num_edges):
            raise ValueError(f"unknown edge {e}")
        arc, step_idx = self._arc_by_edge[e]
        _e, d = arc.steps[step_idx]
        p = step_idx + (pt.t if d == 1 else 1 - pt.t)
        if arc.whole_graph:
            return arc, p
        L = arc.length
        delta = self.delta
        if p == delta or p == L - delta:
            raise OnDeltaSphereError(
                f"point at distance {delta} from an essential vertex"
            )
        if p < delta:
            return self._vcomp_by_vertex[arc.tail], None
        if p > L - delta:
            return self._vcomp_by_vertex[arc.head], None
        return arc, p


def decompose(G: Graph, delta: Fraction | int | str = Fraction(1, 4)) -> Decomposition:
    """Split a connected graph into vertex and arc components."""
    delta = Fraction(delta)
    if not (0 < delta < Fraction(1, 2)):
        raise ValueError(f"delta must satisfy 0 < delta < 1/2, got {delta}")
    if not G.is_connected():
        raise ValueError("decomposition requires a connected graph")
    paths = essential_path_decomposition(G)
    ess = essential_vertices(G)
    if not ess:
        path = paths[0]
        seq, steps = _oriented_walk(G, path, start=path.endpoints[0])
        arc = ArcComponent(
            index=0,
            tail=seq[0],
            head=seq[-1],
            vertex_seq=seq,
            steps=steps,
            whole_graph=True,
        )
        return Decomposition(G, delta, (), (arc,))
    vcomps = tuple(
        VertexComponent(index=i, vertex=v) for i, v in enumerate(sorted(ess))
    )
    arcs = []
    for path in paths:
        a, b = path.endpoints
        if a == b:
            seq, steps = _oriented_walk(G, path, start=a)
            # orient so the lowest-id edge runs along its own tail->head
            e0 = min(path.edges)
            i0 = next(i for i, (e, _d) in enumerate(steps) if e == e0)
            if steps[i0][1] == -1:
                seq = tuple(reversed(seq))
                redges = tuple(e for e, _d in reversed(steps))
                steps = _walk_steps(G, seq, redges)
        else:
            seq, steps = _oriented_walk(G, path, start=min(a, b))
        arcs.append(
            ArcComponent(
                index=len(vcomps) + len(arcs),
                tail=seq[0],
                head=seq[-1],
                vertex_seq=seq,
                steps=steps,
            )
        )
    return Decomposition(G, delta, vcomps, tuple(arcs))


def _oriented_walk(
    G: Graph, path: EssentialPath, start: int
) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    seq = path.vertex_seq()
    if seq[0] != start:
        seq = tuple(reversed(seq))
        edges = tuple(reversed(path.edges))
    else:
        edges = path.edges
    return seq, _walk_steps(G, seq, edges)


def _walk_steps(
    G: Graph, seq: tuple[int, ...], edges: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    steps = []
    for i, e in enumerate(edges):
        frm, to = seq[i], seq[i + 1]
        tail, head = G.tail_head(e)
        if tail == head or (frm, to) == (tail, head):
            steps.append((e, 1))
        else:
            steps.append((e, -1))
    return tuple(steps)


# ---------------------------------------------------------------------------
# combinatorics


@dataclass(frozen=True)
class Combinatorics:
    """Ordered token lists per component (component index order)."""

    lists: tuple[tuple[int, ...], ...]

    def component_of(self, token: int) -> int:
        for idx, lst in enumerate(self.lists):
            if token in lst:
                return idx
        raise KeyError(token)


def combinatorics(x: Configuration, dec: Decomposition) -> Combinatorics:
    """Token lists per component; arc lists are ordered along the
    orientation.

    Errors: a token on the cut set (OnDeltaSphereError, naming the token)
    or two tokens in one vertex component (NoCombinatoricsError).
    """
    points = list(x)
    if len(set(points)) != len(points):
        raise ValueError("configuration points must be pairwise distinct")
    vlists: dict[int, list[int]] = {}
    alists: dict[int, list[tuple[Fraction, int]]] = {}
    for i, pt in enumerate(points):
        try:
            comp, pos = dec.locate(pt)
        except OnDeltaSphereError as exc:
            raise OnDeltaSphereError(f"token {i}: {exc}", token=i) from None
        if isinstance(comp, VertexComponent):
            bucket = vlists.setdefault(comp.index, [])
            if bucket:
                raise NoCombinatoricsError(
                    "configuration without combinatorics: tokens "
                    f"{bucket[0]} and {i} share the vertex component at "
                    f"vertex {comp.vertex}"
                )
            bucket.append(i)
        else:
            alists.setdefault(comp.index, []).append((pos, i))
    lists: list[tuple[int, ...]] = []
    for comp in dec.components:
        if isinstance(comp, VertexComponent):
            lists.append(tuple(vlists.get(comp.index, ())))
        else:
            entries = sorted(alists.get(comp.index, ()))
            positions = [p for p, _t in entries]
            assert len(set(positions)) == len(positions)
            lists.append(tuple(t for _p, t in entries))
    return Combinatorics(lists=tuple(lists))


# ---------------------------------------------------------------------------
# the standard vertex


def standard_vertex(x: Configuration, dec: Decomposition) -> tuple[int, ...]:
    """The 0-cell canonically assigned to a configuration with
    combinatorics (token-indexed vertex ids)."""
    return standard_vertex_of(combinatorics(x, dec), dec, len(x))


def standard_vertex_of(
    comb: Combinatorics, dec: Decomposition, n: int
) -> tuple[int, ...]:
    """Standard vertex from combinatorics alone (the map is constant on
    combinatorics classes)."""
    placement: dict[int, int] = {}
    if dec.whole_graph:
        arc = dec.arc_components[0]
        seats = arc.vertex_seq[:-1]
        tokens = comb.lists[arc.index]
        if len(tokens) > len(seats):
            raise ValueError(
                "more tokens than vertices: the discretized space is empty"
            )
        for i, tok in enumerate(tokens):
            placement[tok] = seats[i]
        return _placement_tuple(placement, n)

    arcs = dec.arc_components
    theta = {arc.index: len(comb.lists[arc.index]) - arc.q for arc in arcs}
    over = [arc for arc in arcs if theta[arc.index] > 0]
    for arc in over:
        t = theta[arc.index]
        if t >= 3:
            raise NotSufficientlySubdividedError(
                f"arc component {arc.index} has overcrowding {t} >= 3; "
                "essential paths must have at least n-1 edges"
            )
        if arc.tail == arc.head:
            raise NotSufficientlySubdividedError(
                f"arc component {arc.index} returns to vertex {arc.tail} and is "
                "overcrowded; the girth bound (n+1) is violated"
            )

    handled: set[int] = set()
    if len(over) == 1:
        _dispatch_overcrowded(over[0], comb, dec, n, placement)
        handled.add(over[0].index)
    elif len(over) == 2:
        if n == 2 and all(arc.q == 0 for arc in over):
            _two_short_arcs(over, comb, placement)
            handled.update(arc.index for arc in over)
        else:
            raise NotSufficientlySubdividedError(
                "two overcrowded arc components; essential paths must have "
                "at least n-1 edges"
            )
    elif len(over) > 2:
        raise NotSufficientlySubdividedError(
            f"{len(over)} overcrowded arc components"
        )

    for vc in dec.vertex_components:
        tokens = comb.lists[vc.index]
        if tokens:
            placement[tokens[0]] = vc.vertex
    for arc in arcs:
        if arc.index in handled:
            continue
        for i, tok in enumerate(comb.lists[arc.index]):
            placement[tok] = arc.interior[i]
    return _placement_tuple(placement, n)


def _placement_tuple(placement: dict[int, int], n: int) -> tuple[int, ...]:
    if len(placement) != n:
        raise NotSufficientlySubdividedError(
            f"standard placement assigned {len(placement)} of {n} tokens"
        )
    out = tuple(placement[i] for i in range(n))
    if len(set(out)) != n:
        raise NotSufficientlySubdividedError(
            "standard placement collides; the graph is not sufficiently "
            "subdivided for this many tokens"
        )
    return out


def _dispatch_overcrowded(
    arc: ArcComponent,
    comb: Combinatorics,
    dec: Decomposition,
    n: int,
    placement: dict[int, int],
) -> None:
    """Place the tokens of the single overcrowded arc component.

    With overcrowding 2 the first token spills onto the tail vertex and the
    last onto the head.  With overcrowding 1 the spill direction depends on
    whether the tail vertex component already holds a token: if so, the arc
    shifts toward the head (its last token lands on the head vertex),
    otherwise toward the tail.  Any remaining tokens keep their own
    components' standard positions; genuine collisions are detected by the
    caller and reported as insufficient subdivision.
    """
    tokens = comb.lists[arc.index]
    t = len(tokens) - arc.q
    if t == 2:
        placement[tokens[0]] = arc.tail
        for i, tok in enumerate(tokens[1:-1]):
            placement[tok] = arc.interior[i]
        placement[tokens[-1]] = arc.head
        return
    # overcrowding 1: len(tokens) == q + 1
    tail_comp = dec.vertex_component_at(arc.tail)
    if comb.lists[tail_comp.index]:
        for i, tok in enumerate(tokens[:-1]):
            placement[tok] = arc.interior[i]
        placement[tokens[-1]] = arc.head
    else:
        placement[tokens[0]] = arc.tail
        for i, tok in enumerate(tokens[1:]):
            placement[tok] = arc.interior[i]


def _two_short_arcs(
    over: list[ArcComponent], comb: Combinatorics, placement: dict[int, int]
) -> None:
    """Two tokens on two length-1 arc components (n = 2).

    Sharing an essential vertex, each token moves to the far endpoint of its
    own arc, regardless of orientations; otherwise each token moves to its
    own tail.
    """
    a1, a2 = over
    t1 = comb.lists[a1.index][0]
    t2 = comb.lists[a2.index][0]
    ends1 = {a1.tail, a1.head}
    ends2 = {a2.tail, a2.head}
    shared = ends1 & ends2
    if len(shared) >= 2:
        raise NotSufficientlySubdividedError(
            "two parallel length-1 essential paths form a 2-cycle; the girth "
            "bound is violated"
        )
    if len(shared) == 1:
        w = next(iter(shared))
        placement[t1] = (ends1 - {w}).pop()
        placement[t2] = (ends2 - {w}).pop()
    else:
        placement[t1] = a1.tail
        placement[t2] = a2.tail


# ---------------------------------------------------------------------------
# edge paths


@dataclass(frozen=True)
class EdgePath:
    """A walk in the 1-skeleton of the discretized complex.

    ``start`` lists the tokens' vertices (token-indexed); every move is
    (token, edge, dir) with dir +1 for tail->head.
    """

    start: tuple[int, ...]
    moves: tuple[tuple[int, int, int], ...] = ()

    def validate(self, G: Graph) -> tuple[int, ...]:
        """Check 0-cell/1-cell validity of every step; returns the final
        token placement."""
        state = list(self.start)
        n = len(state)
        if len(set(state)) != n:
            raise InvalidPathError("start places two tokens on one vertex")
        for v in state:
            if not (0 <= v < G.num_vertices):
                raise InvalidPathError(f"start names unknown vertex {v}")
        for step, (tok, e, d) in enumerate(self.moves):
            if not (0 <= tok < n):
                raise InvalidPathError(f"move {step}: unknown token {tok}")
            if not (0 <= e < G.num_edges):
                raise InvalidPathError(f"move {step}: unknown edge {e}")
            if d not in (1, -1):
                raise InvalidPathError(f"move {step}: direction must be +1/-1")
            tail, head = G.tail_head(e)
            src, dst = (tail, head) if d == 1 else (head, tail)
            if state[tok] != src:
                raise InvalidPathError(
                    f"move {step}: token {tok} is at {state[tok]}, not at "
                    f"endpoint {src} of edge {e}"
                )
            closure = G.closure(e)
            for j, v in enumerate(state):
                if j != tok and v in closure:
                    raise InvalidPathError(
                        f"move {step}: edge {e} closure meets token {j} at {v}"
                    )
            state[tok] = dst
        return tuple(state)

    def end(self, G: Graph) -> tuple[int, ...]:
        return self.validate(G)

    def is_loop(self, G: Graph) -> bool:
        return self.end(G) == self.start

    def concat(self, other: "EdgePath", G: Graph) -> "EdgePath":
        if self.end(G) != other.start:
            raise InvalidPathError("paths do not chain: end != start")
        return EdgePath(start=self.start, moves=self.moves + other.moves)


def edgepath_to_json(path: EdgePath, G: Graph) -> dict:
    return {
        "start": list(path.start),
        "moves": [
            {"token": t, "edge": e, "dir": d} for (t, e, d) in path.moves
        ],
        "loop": path.is_loop(G),
    }


def edgepath_from_json(data: Mapping) -> EdgePath:
    return EdgePath(
        start=tuple(int(v) for v in data["start"]),
        moves=tuple(
            (int(m["token"]), int(m["edge"]), int(m["dir"])) for m in data["moves"]
        ),
    )


# ---------------------------------------------------------------------------
# standard moves


@dataclass(frozen=True)
class _Crossing:
    token: int
    arc: ArcComponent
    vcomp: VertexComponent
    end: str  # "tail" or "head"
    entering: bool


def standard_move(
    before: Configuration, after: Configuration, dec: Decomposition
) -> EdgePath:
    """The canonical edge path joining the standard vertices of two
    configurations related by (at most) one cut-set crossing.

    The path is constant exactly when the two standard vertices agree.
    Tokens move one at a time, each along its route inside the closure of
    the essential path it rearranges on, scheduled so that a token only
    moves when its whole route is vacant.
    """
    n = len(before)
    if len(after) != n:
        raise ValueError("configurations have different token counts")
    Kb = combinatorics(before, dec)
    Ka = combinatorics(after, dec)
    cross = _single_crossing(before, after, Kb, Ka, dec)
    A = standard_vertex_of(Kb, dec, n)
    B = standard_vertex_of(Ka, dec, n)
    if A == B:
        return EdgePath(start=A)
    moves = _schedule_moves(A, B, dec, cross)
    path = EdgePath(start=A, moves=tuple(moves))
    path.validate(dec.graph)
    return path


def _single_crossing(
    before: Configuration,
    after: Configuration,
    Kb: Combinatorics,
    Ka: Combinatorics,
    dec: Decomposition,
) -> _Crossing | None:
    if Kb == Ka:
        return None
    if dec.whole_graph:
        raise NotSingleCrossingError(
            "a graph without essential vertices has no cut set to cross"
        )
    n = len(before)
    comp_b = _token_components(Kb, n)
    comp_a = _token_components(Ka, n)
    diffs = [t for t in range(n) if comp_b[t] != comp_a[t]]
    if len(diffs) != 1:
        raise NotSingleCrossingError(
            f"{len(diffs)} tokens change component (need exactly 1)"
        )
    tok = diffs[0]
    for idx in range(len(Kb.lists)):
        if _strip(Kb.lists[idx], tok) != _strip(Ka.lists[idx], tok):
            raise NotSingleCrossingError(
                f"stationary tokens reorder in component {idx}"
            )
    pair = {comp_b[tok], comp_a[tok]}
    arcs = [dec.components[i] for i in pair if isinstance(dec.components[i], ArcComponent)]
    vcs = [dec.components[i] for i in pair if isinstance(dec.components[i], VertexComponent)]
    if len(arcs) != 1 or len(vcs) != 1:
        raise NotSingleCrossingError(
            "a crossing joins an arc component and a vertex component"
        )
    arc, vc = arcs[0], vcs[0]
    if vc.vertex not in (arc.tail, arc.head):
        raise NotSingleCrossingError(
            f"vertex component at {vc.vertex} does not bound arc component "
            f"{arc.index}"
        )
    entering = comp_a[tok] == arc.index
    lst = (Ka if entering else Kb).lists[arc.index]
    if arc.tail != arc.head:
        end = "tail" if vc.vertex == arc.tail else "head"
        ok = lst[0] == tok if end == "tail" else lst[-1] == tok
        if not ok:
            raise NotSingleCrossingError(
                f"token {tok} crosses at the {end} but is not at that end of "
                "the arc's token list"
            )
    else:
        is_first = lst[0] == tok
        is_last = lst[-1] == tok
        if not (is_first or is_last):
            raise NotSingleCrossingError(
                f"token {tok} crosses but sits mid-list on arc {arc.index}"
            )
        if is_first and is_last:
            # sole token on a two-ended-at-one-vertex arc: infer the crossed
            # end from its sampled position (ties toward the tail)
            sample = (after if entering else before)[tok]
            _comp, pos = dec.locate(sample)
            end = "tail" if pos <= arc.length - pos else "head"
        else:
            end = "tail" if is_first else "head"
    return _Crossing(token=tok, arc=arc, vcomp=vc, end=end, entering=entering)


def _token_components(K: Combinatorics, n: int) -> list[int]:
    comp = [-1] * n
    for idx, lst in enumerate(K.lists):
        for t in lst:
            comp[t] = idx
    if any(c < 0 for c in comp):
        raise ValueError("combinatorics does not cover every token")
    return comp


def _strip(lst: tuple[int, ...], tok: int) -> tuple[int, ...]:
    return tuple(t for t in lst if t != tok)


def _schedule_moves(
    A: tuple[int, ...],
    B: tuple[int, ...],
    dec: Decomposition,
    cross: _Crossing | None,
) -> list[tuple[int, int, int]]:
    n = len(A)
    pending = {t: B[t] for t in range(n) if A[t] != B[t]}
    routes: dict[int, list[tuple[int, int, int]]] = {}  # token -> [(to, edge, dir)]
    for t in pending:
        hint = cross if (cross and t == cross.token) else None
        routes[t] = _route(A[t], B[t], dec, hint)
    occupied = set(A)
    state = dict(enumerate(A))
    moves: list[tuple[int, int, int]] = []
    left = set(pending)
    while left:
        ready = None
        for t in sorted(left):
            if all(v not in occupied for (v, _e, _d) in routes[t]):
                ready = t
                break
        if ready is None:
            raise InvalidPathError("no vacant route: cannot schedule the move")
        occupied.discard(state[ready])
        for v, e, d in routes[ready]:
            moves.append((ready, e, d))
            state[ready] = v
        occupied.add(state[ready])
        left.remove(ready)
    return moves


def _route(
    src: int, dst: int, dec: Decomposition, hint: _Crossing | None
) -> list[tuple[int, int, int]]:
    """Steps [(target vertex, edge, dir), ...] from src to dst inside one
    essential path's closure."""
    arc = None
    if hint is not None and src in hint.arc.vertex_seq and dst in hint.arc.vertex_seq:
        arc = hint.arc
    else:
        candidates = [
            a
            for a in dec.arc_components
            if src in a.vertex_seq and dst in a.vertex_seq
        ]
        if len(candidates) != 1:
            raise InvalidPathError(
                f"route {src}->{dst} does not lie in a unique essential path"
            )
        arc = candidates[0]
    seq = arc.vertex_seq
    L = arc.length
    if arc.tail != arc.head:
        i, j = seq.index(src), seq.index(dst)
        return _slice_steps(arc, i, j)
    # both ends meet one essential vertex: resolve indices via the crossed end
    def index_of(v: int, prefer_end: str) -> int:
        if v == seq[0]:
            return 0 if prefer_end == "tail" else L
        return seq.index(v, 1)  # interior vertices appear once

    if hint is None:
        # interior-to-interior shift
        i, j = seq.index(src, 1), seq.index(dst, 1)
        if src == seq[0] or dst == seq[0]:
            raise InvalidPathError(
                f"route {src}->{dst} touches the shared endpoint without a "
                "crossing context"
            )
        return _slice_steps(arc, i, j)
    i = index_of(src, hint.end)
    j = index_of(dst, hint.end)
    return _slice_steps(arc, i, j)


def _slice_steps(arc: ArcComponent, i: int, j: int) -> list[tuple[int, int, int]]:
    seq = arc.vertex_seq
    out = []
    if j >= i:
        for s in range(i, j):
            e, d = arc.steps[s]
            out.append((seq[s + 1], e, d))
    else:
        for s in range(i - 1, j - 1, -1):
            e, d = arc.steps[s]
            out.append((seq[s], e, -d))
    return out


def standardize_path(
    waypoints: Sequence[Configuration], dec: Decomposition
) -> EdgePath:
    """Concatenate the standard moves along a sequence of sampled
    configurations.

    Consecutive waypoints must have combinatorics and differ by at most one
    cut-set crossing; equal combinatorics contribute a constant segment.
    """
    pts = list(waypoints)
    if not pts:
        raise ValueError("at least one waypoint is required")
    start = standard_vertex(pts[0], dec)
    moves: list[tuple[int, int, int]] = []
    for i in range(len(pts) - 1):
        try:
            seg = standard_move(pts[i], pts[i + 1], dec)
        except NotSingleCrossingError as exc:
            raise NotSingleCrossingError(f"waypoints {i} and {i + 1}: {exc}") from None
        moves.extend(seg.moves)
    return EdgePath(start=start, moves=tuple(moves))


# ---------------------------------------------------------------------------
# witness loops


def rotation_loop(
    G: Graph, cycle: Sequence[int], n: int, mode: str = "full"
) -> EdgePath:
    """Rotate ``n`` tokens around a simple cycle, one token at a time into
    the gap ahead.

    ``mode="unit"`` emits one shift (every token advances one cycle vertex,
    n moves); ``mode="full"`` composes the unit L times for an L-cycle,
    returning every token to its own start (a closed loop).  Requires
    L >= n + 1; with L <= n no token can move at all.
    """
    if mode not in ("unit", "full"):
        raise ValueError(f"mode must be 'unit' or 'full', got {mode!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    edges = [int(e) for e in cycle]
    if not edges:
        raise ValueError("empty cycle")
    for e in edges:
        if not (0 <= e < G.num_edges):
            raise ValueError(f"unknown edge id {e}")
    walk = _cycle_vertex_walk(G, edges)
    L = len(edges)
    if L <= n:
        raise CycleTooShortError(
            f"cycle of length {L} cannot rotate {n} tokens: at least {n + 1} "
            "vertices are needed"
        )
    start = tuple(walk[i] for i in range(n))
    moves: list[tuple[int, int, int]] = []
    units = L if mode == "full" else 1
    for k in range(units):
        for j in range(n - 1, -1, -1):
            s = (j + k) % L
            e = edges[s]
            frm, to = walk[s], walk[(s + 1) % L]
            moves.append((j, e, _move_dir(G, e, frm, to)))
    return EdgePath(start=start, moves=tuple(moves))


def _cycle_vertex_walk(G: Graph, edges: list[int]) -> tuple[int, ...]:
    L = len(edges)
    a, b = G.edges[edges[0]]
    if L >= 2:
        s1 = set(G.edges[edges[1]])
        if a in s1 and b in s1:
            v0 = min(a, b)
        elif b in s1:
            v0 = a
        elif a in s1:
            v0 = b
        else:
            raise ValueError("cycle edges 0 and 1 share no vertex")
    else:
        v0 = a
    seq = [v0]
    cur = v0
    for e in edges:
        u, v = G.edges[e]
        if cur == u:
            cur = v
        elif cur == v:
            cur = u
        else:
            raise ValueError(f"edge {e} does not continue the cycle at vertex {cur}")
        seq.append(cur)
    if seq[-1] != v0:
        raise ValueError("edge sequence does not close up")
    verts = seq[:-1]
    if len(set(verts)) != L:
        raise ValueError("edge sequence is not a simple cycle")
    return tuple(verts)


def _move_dir(G: Graph, e: int, frm: int, to: int) -> int:
    tail, head = G.tail_head(e)
    if tail == head:
        return 1
    if (frm, to) == (tail, head):
        return 1
    if (frm, to) == (head, tail):
        return -1
    raise ValueError(f"edge {e} does not join {frm} and {to}")


def case2_witness_loop(
    G: Graph,
    path: EssentialPath,
    n: int,
    aux: tuple[int, int, int, int] | None = None,
) -> EdgePath:
    """The nine-step loop around a short essential path with degree >= 3
    endpoints.

    ``path`` must run between distinct essential vertices and have length
    m <= n - 2.  Two dancing tokens visit auxiliary edges at either end
    while the m tokens parked on the path shuttle back and forth; the loop
    closes after exactly 4m + 8 elementary moves.  Auxiliary edges
    (e1, e2 at the first endpoint, f1, f2 at the second) are picked
    lexicographically unless supplied; their far endpoints must be four
    distinct vertices off the path, otherwise the graph contains a short
    cycle and no valid choice exists.
    """
    m = path.length
    v0, v1 = path.endpoints
    if v0 == v1:
        raise WitnessConstructionError(
            "the essential path must join two distinct essential vertices"
        )
    if m > n - 2:
        raise WitnessConstructionError(
            f"path of length {m} needs at least n = {m + 2} tokens, got {n}"
        )
    if G.degree(v0) < 3 or G.degree(v1) < 3:
        raise WitnessConstructionError("both endpoints must have degree >= 3")
    if G.num_vertices <= n + 2:
        raise WitnessConstructionError(
            f"vertex budget violated: the construction needs n < |G| - 2, "
            f"but |G| = {G.num_vertices} and n = {n}"
        )
    e1, w1, e2, w2, f1, z1, f2, z2 = _select_aux_edges(G, v0, v1, path, aux)

    seq, steps = _oriented_walk(G, path, start=v0)
    H = set(seq) | {w1, w2, z1, z2}
    parked = [v for v in range(G.num_vertices) if v not in H][: n - m - 2]

    start = [0] * n
    start[0] = w1
    start[1] = z1
    for i in range(m):
        start[2 + i] = seq[i]
    for i, v in enumerate(parked):
        start[m + 2 + i] = v

    def shift_toward_far() -> list[tuple[int, int, int]]:
        # head-most parked token first: seq[i] -> seq[i+1] for i = m-1..0
        return [(2 + i, steps[i][0], steps[i][1]) for i in range(m - 1, -1, -1)]

    def shift_toward_near() -> list[tuple[int, int, int]]:
        return [(2 + i, steps[i][0], -steps[i][1]) for i in range(m)]

    moves: list[tuple[int, int, int]] = []
    moves += shift_toward_far()
    moves += [(0, e1, _move_dir(G, e1, w1, v0)), (0, e2, _move_dir(G, e2, v0, w2))]
    moves += shift_toward_near()
    moves += [(1, f1, _move_dir(G, f1, z1, v1)), (1, f2, _move_dir(G, f2, v1, z2))]
    moves += shift_toward_far()
    moves += [(0, e2, _move_dir(G, e2, w2, v0)), (0, e1, _move_dir(G, e1, v0, w1))]
    moves += shift_toward_near()
    moves += [(1, f2, _move_dir(G, f2, z2, v1)), (1, f1, _move_dir(G, f1, v1, z1))]
    return EdgePath(start=tuple(start), moves=tuple(moves))


def _aux_candidates(G: Graph, v: int, path: EssentialPath) -> list[tuple[int, int]]:
    """Edges at ``v`` leaving the path whose far endpoint is off the path."""
    interior = set(path.interior)
    path_edges = set(path.edges)
    return [
        (e, other)
        for (e, other) in G.incidence[v]
        if e not in path_edges
        and other not in interior
        and other not in path.endpoints
    ]


def _select_aux_edges(
    G: Graph,
    v0: int,
    v1: int,
    path: EssentialPath,
    aux: tuple[int, int, int, int] | None,
) -> tuple[int, int, int, int, int, int, int, int]:
    """Pick (e1, w1, e2, w2, f1, z1, f2, z2): two edges at each endpoint
    with four pairwise-distinct far endpoints off the path."""
    cands0 = _aux_candidates(G, v0, path)
    cands1 = _aux_candidates(G, v1, path)
    if aux is not None:
        e1, e2, f1, f2 = aux
        look0 = dict(cands0)
        look1 = dict(cands1)
        if e1 == e2 or e1 not in look0 or e2 not in look0:
            raise WitnessConstructionError(
                f"supplied edges ({e1}, {e2}) are not two distinct auxiliary "
                f"edges at vertex {v0}"
            )
        if f1 == f2 or f1 not in look1 or f2 not in look1:
            raise WitnessConstructionError(
                f"supplied edges ({f1}, {f2}) are not two distinct auxiliary "
                f"edges at vertex {v1}"
            )
        far = (look0[e1], look0[e2], look1[f1], look1[f2])
        if len(set(far)) != 4:
            raise WitnessConstructionError(
                f"auxiliary far endpoints {far} are not pairwise distinct: "
                "a short cycle is forced"
            )
        return e1, far[0], e2, far[1], f1, far[2], f2, far[3]
    for i in range(len(cands0)):
        for j in range(i + 1, len(cands0)):
            (ea, wa), (eb, wb) = cands0[i], cands0[j]
            if wa == wb:
                continue
            for k in range(len(cands1)):
                for l in range(k + 1, len(cands1)):
                    (fa, za), (fb, zb) = cands1[k], cands1[l]
                    if za == zb or za in (wa, wb) or zb in (wa, wb):
                        continue
                    return ea, wa, eb, wb, fa, za, fb, zb
    raise WitnessConstructionError(
        "no auxiliary edges with four distinct far endpoints exist: every "
        "choice closes a short cycle, so the girth bound fails instead"
    )


@dataclass(frozen=True)
class Case1Witness:
    """A dance loop together with the subdivided graph it lives in."""

    graph: Graph
    loop: EdgePath


def case1_dance_loop(G: Graph, path: EssentialPath, n: int) -> Case1Witness:
    """The double token exchange at the branch vertex of a short leaf path.

    ``path`` must have one endpoint of degree 1 and length m <= n - 2; its
    other endpoint then has degree >= 3.  The exchange needs room that the
    input graph lacks, so the loop is emitted in a sufficiently subdivided
    copy: two dancers swap twice at the branch vertex through two branch
    edges and the path's first edge, with m tokens parked at the far end of
    the path's image and any remaining tokens parked on free vertices.
    """
    m = path.length
    if m > n - 2:
        raise WitnessConstructionError(
            f"path of length {m} needs at least n = {m + 2} tokens, got {n}"
        )
    deg = {v: G.degree(v) for v in path.endpoints}
    leaves = [v for v in path.endpoints if deg[v] == 1]
    if not leaves:
        raise WitnessConstructionError("the path has no degree-1 endpoint")
    if len(set(path.endpoints)) == 2 and all(deg[v] == 1 for v in path.endpoints):
        raise WitnessConstructionError(
            "both endpoints have degree 1: the graph is a path with fewer "
            f"than {n} vertices, so the discretized space is empty"
        )
    v1 = leaves[0]
    v0 = path.endpoints[1] if path.endpoints[0] == v1 else path.endpoints[0]

    Gp = sufficiently_subdivide(G, n)
    gamma = next(
        p for p in essential_path_decomposition(Gp) if v1 in p.endpoints
    )
    seq, steps = _oriented_walk(Gp, gamma, start=v0)
    first_edge = steps[0][0]
    branches = [
        (e, other) for (e, other) in Gp.incidence[v0] if e != first_edge
    ][:2]
    if len(branches) < 2:
        raise WitnessConstructionError(f"vertex {v0} has too few branches")
    (e_a, a1), (e_b, b1) = branches
    c1 = seq[1]

    parked_gamma = list(seq[len(seq) - m :])
    reserved = {v0, a1, b1, c1, *parked_gamma}
    extras = [v for v in range(Gp.num_vertices) if v not in reserved][: n - m - 2]
    if len(extras) < n - m - 2:
        raise WitnessConstructionError("not enough free vertices for parked tokens")

    start = [a1, c1, *parked_gamma, *extras]
    hop = lambda tok, e, frm, to: (tok, e, _move_dir(Gp, e, frm, to))
    moves = [
        hop(0, e_a, a1, v0),
        hop(0, e_b, v0, b1),
        hop(1, first_edge, c1, v0),
        hop(1, e_a, v0, a1),
        hop(0, e_b, b1, v0),
        hop(0, first_edge, v0, c1),
        hop(1, e_a, a1, v0),
        hop(1, e_b, v0, b1),
        hop(0, first_edge, c1, v0),
        hop(0, e_a, v0, a1),
        hop(1, e_b, b1, v0),
        hop(1, first_edge, v0, c1),
    ]
    return Case1Witness(graph=Gp, loop=EdgePath(start=tuple(start), moves=tuple(moves)))
