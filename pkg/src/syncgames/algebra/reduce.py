"""Sound rewriting of noncommutative polynomials against a closure.

``reduce_poly`` rewrites to a (not necessarily unique) normal form using,
in order and repeated to fixpoint:

1. equality-representative substitution and null elimination,
2. word rules ``g g -> g`` and ``g h -> 0`` for zero pairs,
3. sum-fact substitution on terms differing in one position,
4. full-family collapse (a whole projection family inside a common
   left/right context sums to the identity; missing members must be null),
5. completeness elimination: the highest representative of each family is
   rewritten as one minus the others, re-expanded, and the rules re-run
   (bounded passes).

Every step is an identity of the game algebra, so a zero result certifies
the input is zero in the algebra; a nonzero result is merely "unverified".
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ResourceBudgetError
from .poly import NCPoly
from .presentation import Closure

__all__ = ["ReduceConfig", "reduce_poly"]


@dataclass(frozen=True)
class ReduceConfig:
    degree_bound: int = 4
    elimination_passes: int = 3


def reduce_poly(poly: NCPoly, closure: Closure, config: ReduceConfig | None = None, cert_log=None) -> NCPoly:
    cfg = config or ReduceConfig()
    if closure.one_is_zero:
        result = NCPoly.zero()
    else:
        if poly.degree() > cfg.degree_bound:
            raise ResourceBudgetError(
                f"polynomial degree {poly.degree()} exceeds bound {cfg.degree_bound}"
            )
        terms = _normalize(poly.terms.items(), closure)
        _linear_fixpoint(terms, closure)
        elim = _build_elimination(closure)
        for _ in range(cfg.elimination_passes):
            if not terms:
                break
            expanded = _eliminate(terms, closure, elim)
            if expanded is None:
                break
            _linear_fixpoint(expanded, closure)
            if expanded == terms:
                break
            terms = expanded
        result = NCPoly(terms)
    if cert_log is not None and result.is_zero() and not poly.is_zero():
        cert_log.add(closure.game, poly)
    return result


# -- term-level helpers -----------------------------------------------------


def _add_term(terms, word, coeff):
    new = terms.get(word, 0) + coeff
    if new:
        terms[word] = new
    else:
        terms.pop(word, None)


def _rewrite_word(word, closure):
    """Idempotent contraction and zero-pair annihilation on one word.

    Generators must already be non-null representatives.  Returns the
    rewritten word, or ``None`` if the word is zero.
    """
    w = list(word)
    i = 0
    while i < len(w) - 1:
        g, h = w[i], w[i + 1]
        if g == h:
            del w[i + 1]
            if i:
                i -= 1
            continue
        if closure.zero_rep[g, h]:
            return None
        i += 1
    return tuple(w)


def _normalize(items, closure):
    rep = closure.rep
    null = closure.null
    out: dict = {}
    for word, coeff in items:
        if any(g in null for g in word):
            continue
        w = _rewrite_word(tuple(rep[g] for g in word), closure)
        if w is not None:
            _add_term(out, w, coeff)
    return out


def _buckets(terms):
    """(left, right) -> {generator at the hole: its term's coefficient}."""
    buckets: dict = {}
    for word, coeff in terms.items():
        for pos in range(len(word)):
            buckets.setdefault((word[:pos], word[pos + 1 :]), {})[word[pos]] = coeff
    return buckets


def _apply_sum_fact(terms, closure):
    facts = closure.sum_facts
    if not facts:
        return False
    for (left, right), gens in sorted(_buckets(terms).items(), key=_bucket_key):
        present = sorted(gens)
        for i, g in enumerate(present):
            for h in present[i + 1 :]:
                r = facts.get((g, h))
                if r is None or gens[g] != gens[h]:
                    continue
                c = gens[g]
                _add_term(terms, left + (g,) + right, -c)
                _add_term(terms, left + (h,) + right, -c)
                w = _rewrite_word(left + (r,) + right, closure)
                if w is not None:
                    _add_term(terms, w, c)
                return True
    return False


def _apply_collapse(terms, closure):
    game = closure.game
    for (left, right), gens in sorted(_buckets(terms).items(), key=_bucket_key):
        for q in range(game.n):
            mem = closure.group_members_rep(q)
            if not mem or len(set(mem)) != len(mem):
                continue
            if not all(m in gens for m in mem):
                continue
            coeffs = {gens[m] for m in mem}
            if len(coeffs) != 1:
                continue
            c = coeffs.pop()
            for m in mem:
                _add_term(terms, left + (m,) + right, -c)
            w = _rewrite_word(left + right, closure)
            if w is not None:
                _add_term(terms, w, c)
            return True
    return False


def _bucket_key(item):
    (left, right), _ = item
    return (len(left) + len(right), left, right)


def _expansion_facts(closure):
    """Reverse view of the sum facts: r -> [(g, h), ...]."""
    rev: dict = {}
    for (g, h), r in sorted(closure.sum_facts.items()):
        rev.setdefault(r, []).append((g, h))
    return rev


def _measure(terms):
    """Well-founded measure: term count, then the descending multiset of
    words compared via their descending letter multisets.  Every accepted
    rewrite strictly decreases it, so the expansion loop terminates."""
    return (
        len(terms),
        sorted((tuple(sorted(w, reverse=True)) for w in terms), reverse=True),
    )


def _try_swap(terms, trial):
    if _measure(trial) < _measure(terms):
        terms.clear()
        terms.update(trial)
        return True
    return False


def _apply_guarded_expansions(terms, closure, expansions):
    """Expanding rewrites kept only when they strictly shrink the polynomial.

    Two sound moves: replace an occurrence of ``r`` by ``g + h`` for a sum
    fact ``g + h = r``, and complete a family-minus-one sub-sum
    ``sum_{m' != m} m'`` (common context, equal coefficients) to
    ``1 - m``.  The shrink guard makes the rewrite loop terminate.
    """
    for word in sorted(terms, key=lambda w: (len(w), w)):
        coeff = terms[word]
        for pos, r in enumerate(word):
            for g, h in expansions.get(r, ()):
                trial = dict(terms)
                _add_term(trial, word, -coeff)
                for mid in (g, h):
                    w = _rewrite_word(word[:pos] + (mid,) + word[pos + 1 :], closure)
                    if w is not None:
                        _add_term(trial, w, coeff)
                if _try_swap(terms, trial):
                    return True
    game = closure.game
    for (left, right), gens in sorted(_buckets(terms).items(), key=_bucket_key):
        for q in range(game.n):
            mem = closure.group_members_rep(q)
            if len(mem) < 2 or len(set(mem)) != len(mem):
                continue
            absent = [m for m in mem if m not in gens]
            if len(absent) != 1:
                continue
            present = [m for m in mem if m != absent[0]]
            coeffs = {gens[m] for m in present}
            if len(coeffs) != 1:
                continue
            c = coeffs.pop()
            trial = dict(terms)
            for m in present:
                _add_term(trial, left + (m,) + right, -c)
            w = _rewrite_word(left + right, closure)
            if w is not None:
                _add_term(trial, w, c)
            w = _rewrite_word(left + (absent[0],) + right, closure)
            if w is not None:
                _add_term(trial, w, -c)
            if _try_swap(terms, trial):
                return True
    return False


def _linear_fixpoint(terms, closure):
    expansions = _expansion_facts(closure)
    while True:
        if _apply_sum_fact(terms, closure):
            continue
        if _apply_collapse(terms, closure):
            continue
        if _apply_guarded_expansions(terms, closure, expansions):
            continue
        return


# -- completeness elimination -------------------------------------------------


def _build_elimination(closure):
    """question-family completeness solved for the highest representative."""
    elim: dict = {}
    for q in range(closure.game.n):
        mem = closure.group_members_rep(q)
        if not mem:
            continue
        e = mem[-1]
        if mem.count(e) != 1 or e in elim:
            continue
        elim[e] = mem[:-1]
    return elim


def _eliminate(terms, closure, elim):
    """Substitute eliminated generators by ``1 - sum(others)`` everywhere.

    Returns ``None`` when no eliminated generator occurs.  Terminates since
    the expansion of a generator only mentions strictly smaller ids.
    """
    if not any(g in elim for word in terms for g in word):
        return None
    out: dict = {}
    stack = list(terms.items())
    while stack:
        word, coeff = stack.pop()
        for i, g in enumerate(word):
            if g in elim:
                left, right = word[:i], word[i + 1 :]
                stack.append((left + right, coeff))
                for m in elim[g]:
                    stack.append((left + (m,) + right, -coeff))
                break
        else:
            _add_term(out, word, coeff)
    return _normalize(out.items(), closure)
