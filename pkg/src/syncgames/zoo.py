"""Constructors for the named games and graphs used throughout the suite."""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .game import Game, Graph

__all__ = [
    "trivial_sync",
    "hom_game",
    "iso_game",
    "complete_graph",
    "cycle_graph",
    "edgeless_graph",
]


def trivial_sync(n: int, k: int) -> Game:
    """The trivial synchronous game: everything is allowed except distinct
    answers to a repeated question (rule value ``delta_ab`` when ``x == y``,
    1 when ``x != y``)."""
    if n < 1 or k < 1:
        raise PreconditionError(f"trivial_sync needs n >= 1 and k >= 1, got ({n}, {k})")
    allow = np.ones((k, k, n, n), dtype=bool)
    off = ~np.eye(k, dtype=bool)
    for x in range(n):
        allow[:, :, x, x] &= ~off
    return Game(n, k, allow, name=f"trivial_sync({n},{k})")


def hom_game(g: Graph, h: Graph) -> Game:
    """The graph homomorphism game from ``g`` to ``h``.

    Questions are vertices of ``g``, answers vertices of ``h``.  Forbidden:
    distinct answers to the same question, and answer pairs that are not
    adjacent in ``h`` when the questions are adjacent in ``g`` (equal answers
    to adjacent questions are always forbidden since ``h`` is simple).
    """
    if g.vertices == 0 or h.vertices == 0:
        raise PreconditionError("hom_game needs nonempty graphs")
    n, k = g.vertices, h.vertices
    allow = np.ones((k, k, n, n), dtype=bool)
    off_ans = ~np.eye(k, dtype=bool)
    for x in range(n):
        allow[:, :, x, x] &= ~off_ans
    not_adj_h = ~h.adjacency
    for x in range(n):
        for y in range(n):
            if g.adjacency[x, y]:
                allow[:, :, x, y] &= ~not_adj_h
    return Game(n, k, allow, name=f"hom({_graph_label(g)},{_graph_label(h)})")


def iso_game(g: Graph, h: Graph) -> Game:
    """The graph isomorphism game between ``g`` and ``h``.

    Questions and answers both range over the disjoint union of the vertex
    sets (``g`` first).  An answer must come from the opposite graph to the
    question, and the relation (equal / adjacent / distinct non-adjacent)
    between the two g-vertices named by a round must match the relation
    between the two h-vertices.
    """
    if g.vertices != h.vertices:
        raise PreconditionError(
            f"iso_game needs equally sized graphs, got {g.vertices} and {h.vertices}"
        )
    m = g.vertices
    n = 2 * m

    def side(v):
        return 0 if v < m else 1

    def rel(graph, u, v):
        # 0 = equal, 1 = adjacent, 2 = distinct non-adjacent
        if u == v:
            return 0
        return 1 if graph.adjacency[u, v] else 2

    allow = np.zeros((n, n, n, n), dtype=bool)
    for x in range(n):
        for a in range(n):
            if side(a) == side(x):
                continue
            # the (g-vertex, h-vertex) pair named by (question x, answer a)
            ga, ha = (x, a - m) if side(x) == 0 else (a, x - m)
            for y in range(n):
                for b in range(n):
                    if side(b) == side(y):
                        continue
                    gb, hb = (y, b - m) if side(y) == 0 else (b, y - m)
                    if rel(g, ga, gb) == rel(h, ha, hb):
                        allow[a, b, x, y] = True
    return Game(n, n, allow, name=f"iso({_graph_label(g)},{_graph_label(h)})")


def complete_graph(m: int) -> Graph:
    if m < 1:
        raise PreconditionError(f"complete_graph needs m >= 1, got {m}")
    adj = ~np.eye(m, dtype=bool)
    return Graph(m, adj)


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise PreconditionError(f"cycle_graph needs m >= 3, got {m}")
    adj = np.zeros((m, m), dtype=bool)
    for v in range(m):
        adj[v, (v + 1) % m] = adj[(v + 1) % m, v] = True
    return Graph(m, adj)


def edgeless_graph(m: int) -> Graph:
    if m < 1:
        raise PreconditionError(f"edgeless_graph needs m >= 1, got {m}")
    return Graph(m, np.zeros((m, m), dtype=bool))


def _graph_label(g: Graph) -> str:
    m = g.vertices
    if np.array_equal(g.adjacency, ~np.eye(m, dtype=bool)):
        return f"K{m}"
    if m >= 3 and np.array_equal(g.adjacency, cycle_graph(m).adjacency):
        return f"C{m}"
    if not g.adjacency.any():
        return f"E{m}"
    return f"G{m}v{len(g.edges())}e"
