"""Game-algebra presentations and the saturation of derived facts.

``presentation_of`` wraps a synchronous game as its universal presentation:
one self-adjoint idempotent generator per (question, answer), completeness
sums per question, and a zero product for every forbidden cell.

``saturate`` computes a least fixpoint of sound derivation rules over that
presentation and returns an immutable :class:`Closure` holding

* null generators (provably 0),
* zero product pairs (adjoint-closed, propagated across equalities),
* equality classes of generators with minimal-id representatives,
* two-projection sum facts ``g + h = r`` (only derived between 3-output
  projection families, which is the shape the verification suite needs).

Every recorded fact is an identity of the game algebra; the closure makes
no completeness claim beyond its rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError
from ..game import Game, validate_game

__all__ = ["Presentation", "Closure", "presentation_of", "saturate"]


@dataclass(frozen=True)
class Presentation:
    """A synchronous game viewed as its universal algebra presentation."""

    game: Game

    @property
    def num_generators(self) -> int:
        return self.game.n * self.game.k

    def question_of(self, gid: int) -> int:
        return gid // self.game.k

    def answer_of(self, gid: int) -> int:
        return gid % self.game.k

    def group(self, question: int) -> range:
        """Generator ids of the projection family of one question."""
        k = self.game.k
        return range(question * k, (question + 1) * k)

    def groups(self) -> list[range]:
        return [self.group(q) for q in range(self.game.n)]

    def seed_is_zero(self, g: int, h: int) -> bool:
        """Whether ``e_g e_h = 0`` is a defining relation (a forbidden cell)."""
        k = self.game.k
        return not self.game.allow[g % k, h % k, g // k, h // k]


def presentation_of(g: Game) -> Presentation:
    if not validate_game(g).synchronous:
        raise PreconditionError("presentation_of requires a synchronous game")
    return Presentation(g)


@dataclass(frozen=True)
class Closure:
    """Saturated derived knowledge about one game algebra. Immutable."""

    game: Game
    presentation: Presentation
    null: frozenset
    rep: tuple
    zero_rep: np.ndarray  # rep-level zero-product matrix, symmetric
    sum_facts: dict = field(default_factory=dict)  # (rep_min, rep_max) -> rep
    one_is_zero: bool = False

    def __post_init__(self):
        self.zero_rep.setflags(write=False)

    def is_null(self, gid: int) -> bool:
        return gid in self.null

    def rep_of(self, gid: int) -> int:
        return self.rep[gid]

    def is_zero_pair(self, g: int, h: int) -> bool:
        if g in self.null or h in self.null:
            return True
        return bool(self.zero_rep[self.rep[g], self.rep[h]])

    def group_members_rep(self, question: int) -> tuple:
        """Sorted representatives (with multiplicity) of one question's
        projection family, nulls dropped; their sum is the identity."""
        out = [self.rep[g] for g in self.presentation.group(question) if g not in self.null]
        return tuple(sorted(out))

    def equality_classes(self) -> dict:
        """rep -> sorted non-null members (singletons included)."""
        classes: dict[int, list[int]] = {}
        for g in range(self.presentation.num_generators):
            if g in self.null:
                continue
            classes.setdefault(self.rep[g], []).append(g)
        return {r: sorted(m) for r, m in classes.items()}


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, g):
        p = self.parent
        root = g
        while p[root] != root:
            root = p[root]
        while p[g] != root:
            p[g], g = root, p[g]
        return root

    def union(self, g, h):
        rg, rh = self.find(g), self.find(h)
        if rg == rh:
            return False
        if rg > rh:
            rg, rh = rh, rg
        self.parent[rh] = rg  # minimal id becomes the representative
        return True


def saturate(p: Presentation) -> Closure:
    """Least fixpoint of the sound derivation rules.

    Rules applied per pass until stable:

    * null: ``(g, g)`` a zero pair (idempotent with zero square);
    * null: ``g`` orthogonal to every member of a full projection family
      (then ``g = g * 1 = 0``);
    * nulls propagate across equality classes, and any pair touching a null
      is a zero pair (absorption is implicit in the pair query);
    * adjoint closure of zero pairs is maintained by symmetry of the matrix;
    * equality: ``g = h`` when ``g`` kills every other member of ``h``'s
      family and ``h`` kills every other member of ``g``'s (the
      multiply-by-one argument);
    * zero pairs transfer across equality classes (rep-level matrix);
    * sum facts between 3-output families: ``q1 + q2 = r1`` when
      ``r1 q3 = 0`` and ``q_i r_j = 0`` for ``i in {1,2}``, ``j in {2,3}``;
      degenerate coincidences instead prove a generator null, and two facts
      for the same pair force their right-hand sides equal.
    """
    game = p.game
    n, k = game.n, game.k
    num = n * k
    a_of = np.arange(num) % k
    q_of = np.arange(num) // k

    # raw zero-cell matrix over all generators, symmetric (adjoint closure)
    raw_zero = ~game.allow[a_of[:, None], a_of[None, :], q_of[:, None], q_of[None, :]]
    raw_zero |= raw_zero.T

    null = np.array(np.diag(raw_zero))  # lambda(a, a, x, x) = 0 seeds
    uf = _UnionFind(num)
    sum_facts: dict[tuple[int, int], int] = {}
    groups = [list(p.group(q)) for q in range(n)]

    while True:
        changed = False

        # propagate nulls across equality classes
        reps = np.fromiter((uf.find(g) for g in range(num)), dtype=np.int64, count=num)
        null_reps = set(reps[null])
        for g in range(num):
            if not null[g] and reps[g] in null_reps:
                null[g] = True
                changed = True

        # rep-level zero matrix: fold raw pairs through the current classes
        zero_rep = np.zeros((num, num), dtype=bool)
        nn = np.flatnonzero(~null)
        if nn.size:
            rows = reps[nn]
            sub = raw_zero[np.ix_(nn, nn)]
            np.logical_or.at(zero_rep, (rows[:, None], rows[None, :]), sub)
        eff = zero_rep[reps[:, None], reps[None, :]] | null[:, None] | null[None, :]

        # null via (g, g) at class level or orthogonality to a full family
        diag_null = np.flatnonzero(np.diag(eff) & ~null)
        if diag_null.size:
            null[diag_null] = True
            changed = True
        else:
            for members in groups:
                full = eff[:, members].all(axis=1) & ~null
                hit = np.flatnonzero(full)
                if hit.size:
                    null[hit] = True
                    changed = True
            if changed:
                continue

        if changed:
            continue

        # equality scan from the current snapshot
        merges = []
        for members in groups:
            block = eff[:, members]
            counts = block.shape[1] - block.sum(axis=1)
            for g in np.flatnonzero((counts == 1) & ~null):
                h = members[int(np.flatnonzero(~block[g])[0])]
                if h == g or null[h] or uf.find(g) == uf.find(h):
                    continue
                own = groups[q_of[g]]
                own_block = eff[h, own]
                if own_block.sum() == len(own) - 1 and not own_block[own.index(g)]:
                    merges.append((g, h))
        for g, h in merges:
            if uf.union(g, h):
                changed = True
        if changed:
            continue

        # sum facts between distinct 3-output families
        if k == 3:
            cross = eff.reshape(n, k, n, k).sum(axis=(1, 3))
            for qq in range(n):
                for qr in range(n):
                    if qq == qr or cross[qq, qr] + cross[qr, qq] < 5:
                        continue
                    if any(null[m] for m in groups[qq]) or any(null[m] for m in groups[qr]):
                        continue
                    changed |= _scan_sum_facts(
                        groups[qq], groups[qr], eff, reps, null, uf, sum_facts
                    )
            if changed:
                continue

        break

    reps = tuple(uf.find(g) for g in range(num))
    null_set = frozenset(int(g) for g in np.flatnonzero(null))
    # rebuild the rep-level matrix against the final classes
    zero_rep = np.zeros((num, num), dtype=bool)
    rep_arr = np.asarray(reps)
    nn = np.flatnonzero(~null)
    if nn.size:
        rows = rep_arr[nn]
        sub = raw_zero[np.ix_(nn, nn)]
        np.logical_or.at(zero_rep, (rows[:, None], rows[None, :]), sub)
    facts = {
        (int(min(rep_arr[a], rep_arr[b])), int(max(rep_arr[a], rep_arr[b]))): int(rep_arr[r])
        for (a, b), r in sum_facts.items()
    }
    one_is_zero = any(
        all(g in null_set for g in p.group(q)) for q in range(n)
    )
    return Closure(
        game=game,
        presentation=p,
        null=null_set,
        rep=reps,
        zero_rep=zero_rep,
        sum_facts=facts,
        one_is_zero=one_is_zero,
    )


def _scan_sum_facts(q_members, r_members, eff, reps, null, uf, sum_facts):
    """Record ``q1 + q2 = r1`` facts between two 3-output families."""
    changed = False
    for r1 in r_members:
        others_r = [m for m in r_members if m != r1]
        for i3, q3 in enumerate(q_members):
            q12 = [m for m in q_members if m != q3]
            q1, q2 = q12
            if not eff[r1, q3]:
                continue
            if not all(eff[qi, rj] for qi in q12 for rj in others_r):
                continue
            rr, r_q1, r_q2 = reps[r1], reps[q1], reps[q2]
            if rr == r_q1:
                if not null[q2]:
                    null[q2] = True
                    changed = True
            elif rr == r_q2:
                if not null[q1]:
                    null[q1] = True
                    changed = True
            elif r_q1 == r_q2:
                # 2*q1 is idempotent only when q1 = 0
                for m in (q1, q2, r1):
                    if not null[m]:
                        null[m] = True
                        changed = True
            else:
                key = (min(r_q1, r_q2), max(r_q1, r_q2))
                prev = sum_facts.get(key)
                if prev is None:
                    sum_facts[key] = rr
                    changed = True
                elif reps[prev] != rr:
                    if uf.union(prev, r1):
                        changed = True
    return changed
