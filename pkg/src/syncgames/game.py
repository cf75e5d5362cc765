"""Finite non-local games: canonical representation, validation, (de)serialization.

A game is a rule function ``allow(a, b, x, y) in {0, 1}`` on answer pairs
``(a, b)`` and question pairs ``(x, y)``; 1 means the referee accepts.
Indices are 0-based everywhere: answers ``0..k-1``, questions ``0..n-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GameFormatError

__all__ = [
    "Game",
    "Graph",
    "StructureReport",
    "validate_game",
    "parse_game",
    "serialize_game",
    "parse_graph",
    "serialize_graph",
]


@dataclass(frozen=True)
class Game:
    """A finite non-local game with ``n`` questions and ``k`` answers.

    ``allow`` is a boolean tensor of shape ``(k, k, n, n)`` indexed
    ``(a, b, x, y)``.  ``index_maps`` optionally records how composite
    questions/answers of a transformed game decode into the source game's
    labels; validation never reads it.
    """

    n: int
    k: int
    allow: np.ndarray
    name: str | None = None
    index_maps: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise GameFormatError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        arr = np.asarray(self.allow, dtype=bool)
        expected = (self.k, self.k, self.n, self.n)
        if arr.shape != expected:
            raise GameFormatError(f"allow tensor has shape {arr.shape}, expected {expected}")
        arr.setflags(write=False)
        object.__setattr__(self, "allow", arr)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.name == other.name
            and np.array_equal(self.allow, other.allow)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.name, self.allow.tobytes()))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Game{label} n={self.n} k={self.k}>"

    # -- convenience views ------------------------------------------------

    def zeros(self) -> list[tuple[int, int, int, int]]:
        """Forbidden tuples ``(a, b, x, y)`` in lexicographic order."""
        return [tuple(int(v) for v in idx) for idx in np.argwhere(~self.allow)]

    def ones(self) -> list[tuple[int, int, int, int]]:
        """Allowed tuples ``(a, b, x, y)`` in lexicographic order."""
        return [tuple(int(v) for v in idx) for idx in np.argwhere(self.allow)]

    @property
    def is_synchronous(self) -> bool:
        return validate_game(self).synchronous

    @property
    def is_bisynchronous(self) -> bool:
        return validate_game(self).bisynchronous

    @property
    def is_symmetric(self) -> bool:
        return validate_game(self).symmetric

    def with_name(self, name: str | None) -> "Game":
        return Game(self.n, self.k, self.allow, name=name, index_maps=self.index_maps)


def game_from_zeros(n: int, k: int, zeros, name=None, index_maps=None) -> Game:
    """Build a game whose rule function is 1 everywhere except ``zeros``."""
    allow = np.ones((k, k, n, n), dtype=bool)
    for a, b, x, y in zeros:
        allow[a, b, x, y] = False
    return Game(n, k, allow, name=name, index_maps=index_maps)


@dataclass(frozen=True)
class StructureReport:
    """Structural flags of a game, computed exactly from the tensor."""

    well_formed: bool
    synchronous: bool
    bisynchronous: bool
    symmetric: bool

    def as_dict(self) -> dict:
        return {
            "well_formed": self.well_formed,
            "synchronous": self.synchronous,
            "bisynchronous": self.bisynchronous,
            "symmetric": self.symmetric,
        }


def validate_game(g: Game) -> StructureReport:
    """Scan the rule tensor and report structural flags.

    synchronous:   allow[a][b][x][x] = 0 for all a != b
    bisynchronous: synchronous and allow[a][a][x][y] = 0 for all x != y
    symmetric:     allow[a][b][x][y] = allow[b][a][y][x] everywhere
    """
    allow = g.allow
    k, n = g.k, g.n
    off_ans = ~np.eye(k, dtype=bool)  # a != b
    diag_q = np.einsum("abxx->abx", allow)  # views allow[a,b,x,x]
    synchronous = not np.any(diag_q & off_ans[:, :, None])
    diag_a = np.einsum("aaxy->axy", allow)  # views allow[a,a,x,y]
    off_q = ~np.eye(n, dtype=bool)
    bisynchronous = synchronous and not np.any(diag_a & off_q[None, :, :])
    symmetric = bool(np.array_equal(allow, allow.transpose(1, 0, 3, 2)))
    return StructureReport(True, synchronous, bisynchronous, symmetric)


# -- file format ----------------------------------------------------------
#
# UTF-8 JSON object:
#   {"n": int, "k": int, "mode": "zeros"|"ones",
#    "cells": [[a, b, x, y], ...], "name"?: str, "index_maps"?: object}
# In "zeros" mode the listed cells have rule value 0 and all others 1;
# "ones" mode is the complement.


def serialize_game(g: Game) -> str:
    """Serialize in whichever of the two cell-list modes is shorter."""
    zeros = g.zeros()
    total = g.k * g.k * g.n * g.n
    if len(zeros) <= total - len(zeros):
        mode, cells = "zeros", zeros
    else:
        mode, cells = "ones", g.ones()
    doc = {"n": g.n, "k": g.k, "mode": mode, "cells": [list(c) for c in cells]}
    if g.name is not None:
        doc["name"] = g.name
    if g.index_maps is not None:
        doc["index_maps"] = g.index_maps
    return json.dumps(doc, indent=None, separators=(",", ":")) + "\n"


def parse_game(text: str) -> Game:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise GameFormatError("top-level value must be an object")
    for key in ("n", "k", "mode", "cells"):
        if key not in doc:
            raise GameFormatError(f"missing required field {key!r}")
    n, k = doc["n"], doc["k"]
    if not isinstance(n, int) or not isinstance(k, int) or n < 1 or k < 1:
        raise GameFormatError(f"n and k must be positive integers, got n={n!r}, k={k!r}")
    mode = doc["mode"]
    if mode not in ("zeros", "ones"):
        raise GameFormatError(f"mode must be 'zeros' or 'ones', got {mode!r}")
    fill = mode == "zeros"
    allow = np.full((k, k, n, n), fill, dtype=bool)
    for cell in doc["cells"]:
        if not (isinstance(cell, list) and len(cell) == 4 and all(isinstance(v, int) for v in cell)):
            raise GameFormatError(f"cell {cell!r} is not a 4-int array")
        a, b, x, y = cell
        if not (0 <= a < k and 0 <= b < k):
            raise GameFormatError(f"answer index out of range in cell {cell!r} (k={k})")
        if not (0 <= x < n and 0 <= y < n):
            raise GameFormatError(f"question index out of range in cell {cell!r} (n={n})")
        allow[a, b, x, y] = not fill
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise GameFormatError("name must be a string")
    index_maps = doc.get("index_maps")
    return Game(n, k, allow, name=name, index_maps=index_maps)


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc


# -- graphs ---------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph given by an adjacency matrix."""

    vertices: int
    adjacency: np.ndarray

    def __post_init__(self):
        if self.vertices < 0:
            raise GameFormatError("vertex count must be nonnegative")
        adj = np.asarray(self.adjacency, dtype=bool)
        if adj.shape != (self.vertices, self.vertices):
            raise GameFormatError(
                f"adjacency has shape {adj.shape}, expected {(self.vertices, self.vertices)}"
            )
        if np.any(np.diag(adj)):
            raise GameFormatError("graph must be irreflexive (zero diagonal)")
        if not np.array_equal(adj, adj.T):
            raise GameFormatError("graph must be undirected (symmetric adjacency)")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.vertices, self.adjacency.tobytes()))

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in np.argwhere(np.triu(self.adjacency))]


def graph_from_edges(vertices: int, edges) -> Graph:
    adj = np.zeros((vertices, vertices), dtype=bool)
    for u, v in edges:
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise GameFormatError(f"edge ({u},{v}) out of range for {vertices} vertices")
        if u == v:
            raise GameFormatError(f"loop ({u},{u}) not allowed in a simple graph")
        adj[u, v] = adj[v, u] = True
    return Graph(vertices, adj)


def serialize_graph(g: Graph) -> str:
    return json.dumps({"vertices": g.vertices, "edges": [list(e) for e in g.edges()]}) + "\n"


def parse_graph(text: str) -> Graph:
    doc = _load_json(text)
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GameFormatError("graph file must be an object with 'vertices' and 'edges'")
    vertices = doc["vertices"]
    if not isinstance(vertices, int) or vertices < 0:
        raise GameFormatError(f"vertices must be a nonnegative integer, got {vertices!r}")
    edges = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise GameFormatError(f"edge {e!r} is not a 2-int array")
        edges.append((e[0], e[1]))
    return graph_from_edges(vertices, edges)
