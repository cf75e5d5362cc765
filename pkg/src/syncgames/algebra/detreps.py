"""Falsification oracle: evaluate polynomials in deterministic representations.

Every perfect deterministic strategy ``f`` of a game induces the
one-dimensional representation ``e_{a,x} -> delta_{a, f(x)}`` of its game
algebra, so a polynomial that is 0 in the algebra evaluates to 0 under every
such strategy.  A nonzero evaluation therefore certifies a polynomial is
*not* zero; vanishing everywhere is necessary-only evidence.

``CertLog`` collects the polynomials the rewriting engine certified to be
zero so a suite run can replay all of them against this oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import solver
from ..game import Game
from .poly import NCPoly

__all__ = ["DetRepResult", "check_in_deterministic_reps", "CertLog", "replay_certificates"]


@dataclass(frozen=True)
class DetRepResult:
    holds_in_all: bool
    num_strategies: int
    counterexample: tuple | None = None  # (strategy, value) when not holding


def _word_assignment(word, game):
    """The partial assignment a word's evaluation requires, or ``None`` when
    the word contains two answers to one question (then it evaluates to 0
    under every strategy)."""
    sigma: dict[int, int] = {}
    for g in word:
        q, a = divmod(g, game.k)
        if sigma.setdefault(q, a) != a:
            return None
    return tuple(sorted(sigma.items()))


def _grouped(poly: NCPoly, game: Game):
    groups: dict[tuple, Fraction] = {}
    for word, coeff in poly.terms.items():
        sigma = _word_assignment(word, game)
        if sigma is None:
            continue
        new = groups.get(sigma, 0) + coeff
        if new:
            groups[sigma] = new
        else:
            groups.pop(sigma, None)
    return groups


def _realized_matrix(game: Game, strategies):
    mat = np.zeros((len(strategies), game.n * game.k), dtype=bool)
    for s, f in enumerate(strategies):
        for x, a in enumerate(f):
            mat[s, x * game.k + a] = True
    return mat


def check_in_deterministic_reps(
    poly: NCPoly, game: Game, strategies=None, budget=None
) -> DetRepResult:
    """Evaluate ``poly`` under every perfect deterministic strategy."""
    if strategies is None:
        strategies = solver.perfect_strategies(game, budget)
    groups = _grouped(poly, game)
    if not groups or not strategies:
        return DetRepResult(True, len(strategies))
    realized = _realized_matrix(game, strategies)
    values = [Fraction(0)] * len(strategies)
    for sigma, coeff in groups.items():
        mask = np.ones(len(strategies), dtype=bool)
        for q, a in sigma:
            mask &= realized[:, q * game.k + a]
        for s in np.flatnonzero(mask):
            values[s] += coeff
    for s, value in enumerate(values):
        if value:
            return DetRepResult(False, len(strategies), (tuple(strategies[s]), value))
    return DetRepResult(True, len(strategies))


class CertLog:
    """Certified-zero polynomials, deduplicated, grouped by game."""

    def __init__(self):
        self._games: list[Game] = []
        self._index: dict[int, int] = {}
        self.word_certs: set = set()  # (game_idx, word): single-term polynomials
        self.poly_certs: set = set()  # (game_idx, frozenset of (word, coeff))

    def _game_index(self, game: Game) -> int:
        idx = self._index.get(id(game))
        if idx is None:
            idx = len(self._games)
            self._games.append(game)
            self._index[id(game)] = idx
        return idx

    def add(self, game: Game, poly: NCPoly):
        idx = self._game_index(game)
        if len(poly.terms) == 1:
            # a single word is zero iff its coefficient-free word is
            self.word_certs.add((idx, next(iter(poly.terms))))
        else:
            self.poly_certs.add((idx, frozenset(poly.terms.items())))

    def __len__(self):
        return len(self.word_certs) + len(self.poly_certs)

    @property
    def games(self):
        return tuple(self._games)


def replay_certificates(log: CertLog, budget=None):
    """Re-check every certified polynomial in every deterministic
    representation of its game.  Returns the list of discrepancies
    (empty = consistent)."""
    discrepancies = []
    strategies_by_game = {}
    realized_by_game = {}
    for idx, game in enumerate(log.games):
        strategies = solver.perfect_strategies(game, budget)
        strategies_by_game[idx] = strategies
        realized_by_game[idx] = _realized_matrix(game, strategies) if strategies else None

    for idx, word in sorted(log.word_certs):
        game = log.games[idx]
        realized = realized_by_game[idx]
        if realized is None:
            continue
        sigma = _word_assignment(word, game)
        if sigma is None:
            continue
        mask = np.ones(realized.shape[0], dtype=bool)
        for q, a in sigma:
            mask &= realized[:, q * game.k + a]
        hit = np.flatnonzero(mask)
        if hit.size:
            discrepancies.append((game, NCPoly({word: Fraction(1)}), tuple(strategies_by_game[idx][hit[0]])))

    for idx, items in sorted(log.poly_certs, key=lambda e: (e[0], sorted(e[1]))):
        game = log.games[idx]
        poly = NCPoly(dict(items))
        res = check_in_deterministic_reps(poly, game, strategies=strategies_by_game[idx])
        if not res.holds_in_all:
            discrepancies.append((game, poly, res.counterexample[0]))
    return discrepancies
