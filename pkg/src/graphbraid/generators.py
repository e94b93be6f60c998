"""Small named graphs used in tests, demos, and the worked examples."""

from __future__ import annotations

from itertools import combinations

from .graphs import Graph

__all__ = [
    "cycle_graph",
    "path_graph",
    "star_graph",
    "complete_graph",
    "complete_bipartite",
    "p_graph",
    "subdivided_y",
    "h_tree",
]


def cycle_graph(length: int) -> Graph:
    """Cycle on ``length`` vertices (a self-loop for length 1, a parallel
    pair for length 2)."""
    if length < 1:
        raise ValueError("cycle length must be >= 1")
    edges = tuple((i, (i + 1) % length) for i in range(length))
    return Graph(labels=(None,) * length, edges=edges)


def path_graph(num_vertices: int) -> Graph:
    if num_vertices < 1:
        raise ValueError("path needs at least one vertex")
    edges = tuple((i, i + 1) for i in range(num_vertices - 1))
    return Graph(labels=(None,) * num_vertices, edges=edges)


def star_graph(arms: int) -> Graph:
    """Center vertex 0 with ``arms`` leaves 1..arms."""
    edges = tuple((0, i) for i in range(1, arms + 1))
    return Graph(labels=(None,) * (arms + 1), edges=edges)


def complete_graph(k: int) -> Graph:
    edges = tuple(combinations(range(k), 2))
    return Graph(labels=(None,) * k, edges=edges)


def complete_bipartite(a: int, b: int) -> Graph:
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    return Graph(labels=(None,) * (a + b), edges=edges)


def p_graph() -> Graph:
    """The letter P: a 4-cycle 0-1-2-3 with a two-edge tail 0-4-5.

    Optimally subdivided for 3 tokens: its one essential path between
    distinct essential vertices (0 and 5) has 2 edges and its girth is 4.
    """
    return Graph(
        labels=(None,) * 6,
        edges=((0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)),
    )


def subdivided_y() -> Graph:
    """The letter Y with one degree-2 vertex per arm: center 0, arms
    0-1-2, 0-3-4, 0-5-6.  Optimally subdivided for 3 tokens."""
    return Graph(
        labels=(None,) * 7,
        edges=((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)),
    )


def h_tree() -> Graph:
    """The letter H: bridge 0-1, leaves 2,3 at 0 and 4,5 at 1."""
    return Graph(
        labels=(None,) * 6,
        edges=((0, 1), (0, 2), (0, 3), (1, 4), (1, 5)),
    )
