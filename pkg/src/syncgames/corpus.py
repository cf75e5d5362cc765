"""The game corpus exercised by the verification and acceptance suites."""

from __future__ import annotations

from .game import Game
from .transforms import three_output_reduce
from .zoo import complete_graph, cycle_graph, hom_game, iso_game, trivial_sync

__all__ = [
    "corpus_games",
    "bisync_corpus",
    "threeout_corpus",
    "zr_corpus",
    "lemma32_exact_corpus",
]


def corpus_games() -> list[Game]:
    """Trivial synchronous games with n <= 4, k <= 6; homomorphism games over
    graphs with at most 5 vertices; the K3 isomorphism game."""
    games = [trivial_sync(n, k) for n in range(1, 5) for k in range(2, 7)]
    games += [
        hom_game(complete_graph(3), complete_graph(3)),
        hom_game(complete_graph(4), complete_graph(3)),
        hom_game(complete_graph(4), complete_graph(4)),
        hom_game(complete_graph(5), complete_graph(4)),
        hom_game(complete_graph(5), complete_graph(5)),
        hom_game(cycle_graph(5), complete_graph(3)),
        hom_game(cycle_graph(5), complete_graph(4)),
    ]
    games.append(iso_game(complete_graph(3), complete_graph(3)))
    return games


def bisync_corpus(games=None) -> list[Game]:
    return list(games if games is not None else corpus_games())


def threeout_corpus(games=None) -> list[Game]:
    return [g for g in (games if games is not None else corpus_games()) if 4 <= g.k <= 6]


def zr_corpus(games=None) -> list[Game]:
    """Direct 3-output corpus games plus three-output reductions of small
    corpus games (the paper's pipeline feeds reduced games into the
    zero/relation normal form)."""
    base = [g for g in (games if games is not None else corpus_games()) if g.k == 3]
    reduced = [
        three_output_reduce(trivial_sync(1, 4)),
        three_output_reduce(trivial_sync(1, 5)),
        three_output_reduce(trivial_sync(2, 4)),
    ]
    return base + reduced


def lemma32_exact_corpus(games=None) -> list[Game]:
    """Corpus games whose bisynchronization has *exactly* the derived
    structure of the offset-class lemma: everything except the isomorphism
    game, whose base algebra carries genuine extra generator identities
    (same-side answers are null and transposed generators coincide)."""
    return [
        g
        for g in (games if games is not None else corpus_games())
        if not (g.name or "").startswith("iso(")
    ]
