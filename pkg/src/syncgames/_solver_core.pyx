# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking search for perfect deterministic strategies.

Mirrors ``_solver_py.search`` exactly; see that module for the contract.
"""

from libc.stdlib cimport free, malloc

from .errors import ResourceBudgetError


def search(const unsigned char[::1] allow, int n, int k,
           const unsigned char[::1] diag_ok, const int[::1] nbr,
           const int[::1] nbr_start, long long budget, bint collect):
    cdef int *f = <int *> malloc(n * sizeof(int))
    cdef int *trial = <int *> malloc(n * sizeof(int))
    if f == NULL or trial == NULL:
        free(f)
        free(trial)
        raise MemoryError()
    cdef long long nodes = 0
    cdef long long count = 0
    cdef int depth = 0
    cdef int i, j, y, t
    cdef bint ok
    results = [] if collect else None
    trial[0] = 0
    try:
        while depth >= 0:
            if depth == n:
                count += 1
                if collect:
                    results.append(tuple([f[t] for t in range(n)]))
                depth -= 1
                continue
            i = trial[depth]
            if i >= k:
                depth -= 1
                continue
            trial[depth] = i + 1
            nodes += 1
            if nodes > budget:
                raise ResourceBudgetError(
                    f"strategy search exceeded budget of {budget} nodes"
                )
            if not diag_ok[depth * k + i]:
                continue
            ok = True
            for t in range(nbr_start[depth], nbr_start[depth + 1]):
                y = nbr[t]
                j = f[y]
                if (not allow[((i * k + j) * n + depth) * n + y]
                        or not allow[((j * k + i) * n + y) * n + depth]):
                    ok = False
                    break
            if ok:
                f[depth] = i
                depth += 1
                if depth < n:
                    trial[depth] = 0
    finally:
        free(f)
        free(trial)
    return nodes, count, results
