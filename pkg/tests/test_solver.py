"""The strategy-search kernels against exhaustive enumeration."""

import pytest

from syncgames import bisynchronize, complete_graph, hom_game, three_output_reduce, trivial_sync
from syncgames.errors import ResourceBudgetError
from syncgames.solver import backend_name, count_perfect_strategies, perfect_strategies
from syncgames.transforms import zero_relation_normalize

from oracles import brute_force_strategies

SMALL_GAMES = [
    trivial_sync(2, 3),
    trivial_sync(3, 2),
    hom_game(complete_graph(3), complete_graph(3)),
    hom_game(complete_graph(3), complete_graph(2)),
    bisynchronize(trivial_sync(1, 2)),
    bisynchronize(trivial_sync(2, 2)),
    three_output_reduce(trivial_sync(1, 4)),
    zero_relation_normalize(trivial_sync(1, 3))[0],
]


@pytest.mark.parametrize("game", SMALL_GAMES, ids=lambda g: g.name)
def test_matches_exhaustive_enumeration(game):
    assert perfect_strategies(game) == brute_force_strategies(game)


def test_known_counts():
    assert count_perfect_strategies(trivial_sync(2, 3)) == 9
    assert count_perfect_strategies(hom_game(complete_graph(3), complete_graph(3))) == 6
    assert count_perfect_strategies(hom_game(complete_graph(5), complete_graph(4))) == 0


def test_lexicographic_order():
    strategies = perfect_strategies(trivial_sync(2, 3))
    assert strategies == sorted(strategies)


def test_budget_error():
    with pytest.raises(ResourceBudgetError):
        perfect_strategies(trivial_sync(4, 6), budget=100)


def test_env_budget_override(monkeypatch):
    monkeypatch.setenv("SYNCGAME_BUDGET", "10")
    with pytest.raises(ResourceBudgetError):
        perfect_strategies(trivial_sync(4, 6))


@pytest.mark.parametrize("game", SMALL_GAMES, ids=lambda g: g.name)
def test_python_fallback_agrees(game):
    compiled = perfect_strategies(game)
    fallback = perfect_strategies(game, _backend="python")
    assert compiled == fallback


def test_backend_reports_a_name():
    assert backend_name() in ("compiled", "python")
