"""Perfect-deterministic-strategy search: precomputation and kernel dispatch.

The inner depth-first search is the one hot loop in the package, so it has a
compiled implementation (``_solver_core``, built from Cython) with a
pure-Python fallback (``_solver_py``); whichever imported is used for every
search.  ``benchmarks/bench_enumeration.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from .game import Game

try:  # pragma: no cover - exercised indirectly via backend_name()
    from . import _solver_core as _kernel

    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    from . import _solver_py as _kernel

    BACKEND = "python"

from . import _solver_py

DEFAULT_BUDGET = 10_000_000

__all__ = ["perfect_strategies", "count_perfect_strategies", "resolve_budget", "backend_name"]


def backend_name() -> str:
    return BACKEND


def resolve_budget(budget: int | None = None) -> int:
    """Explicit budget, else SYNCGAME_BUDGET from the environment, else 10^7.

    The budget caps explored search nodes (candidate answer trials), which for
    a constraint-free game coincides with the k^n assignment count.
    """
    if budget is not None:
        return int(budget)
    env = os.environ.get("SYNCGAME_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _prepare(g: Game):
    n, k = g.n, g.k
    allow = np.ascontiguousarray(g.allow, dtype=np.uint8).reshape(-1)
    diag = np.zeros(n * k, dtype=np.uint8)
    for x in range(n):
        for i in range(k):
            diag[x * k + i] = g.allow[i, i, x, x]
    # questions sharing any forbidden cell constrain each other
    zero_any = ~g.allow.all(axis=(0, 1))
    constrained = zero_any | zero_any.T
    nbr = []
    nbr_start = [0]
    for x in range(n):
        nbr.extend(int(y) for y in range(x) if constrained[x, y])
        nbr_start.append(len(nbr))
    nbr_arr = np.asarray(nbr, dtype=np.int32) if nbr else np.zeros(0, dtype=np.int32)
    return allow, diag, nbr_arr, np.asarray(nbr_start, dtype=np.int32)


def _run(g: Game, budget, collect, kernel):
    allow, diag, nbr, nbr_start = _prepare(g)
    return kernel.search(allow, g.n, g.k, diag, nbr, nbr_start, resolve_budget(budget), collect)


def perfect_strategies(g: Game, budget: int | None = None, *, _backend=None) -> list[tuple[int, ...]]:
    """All functions ``f`` with ``allow[f(x), f(y), x, y] = 1`` for every
    question pair, in lexicographic order."""
    kernel = _solver_py if _backend == "python" else _kernel
    _, _, results = _run(g, budget, True, kernel)
    return results


def count_perfect_strategies(g: Game, budget: int | None = None, *, _backend=None) -> int:
    kernel = _solver_py if _backend == "python" else _kernel
    _, count, _ = _run(g, budget, False, kernel)
    return int(count)
