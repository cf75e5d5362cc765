"""Pure-Python backtracking search for perfect deterministic strategies.

Same contract as the compiled kernel in ``_solver_core``; selected at import
time by ``solver`` when the extension is unavailable.
"""

from .errors import ResourceBudgetError


def search(allow, n, k, diag_ok, nbr, nbr_start, budget, collect):
    """Depth-first search over assignments ``question -> answer``.

    ``allow`` is the flattened rule tensor (index ``((a*k+b)*n+x)*n+y``),
    ``diag_ok[x*k+i]`` marks answers allowed on the repeated question, and
    ``nbr``/``nbr_start`` give, per question, the earlier questions that share
    any forbidden cell with it.  Returns ``(nodes, count, strategies)`` with
    strategies in lexicographic order (``None`` unless ``collect``).
    ``budget`` caps the number of candidate trials.
    """
    f = [0] * n
    trial = [0] * n
    results = [] if collect else None
    count = 0
    nodes = 0
    depth = 0
    while depth >= 0:
        if depth == n:
            count += 1
            if collect:
                results.append(tuple(f))
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
            if (
                not allow[((i * k + j) * n + depth) * n + y]
                or not allow[((j * k + i) * n + y) * n + depth]
            ):
                ok = False
                break
        if ok:
            f[depth] = i
            depth += 1
            if depth < n:
                trial[depth] = 0
    return nodes, count, results
