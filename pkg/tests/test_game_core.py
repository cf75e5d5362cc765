"""Representation, validation, and serialization of games and graphs."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syncgames import (
    Game,
    Graph,
    bisynchronize,
    parse_game,
    parse_graph,
    serialize_game,
    serialize_graph,
    trivial_sync,
    validate_game,
)
from syncgames.corpus import corpus_games
from syncgames.errors import GameFormatError
from syncgames.game import game_from_zeros, graph_from_edges

from oracles import scan_flags


def test_trivial_sync_flags():
    report = validate_game(trivial_sync(2, 2))
    assert report.synchronous
    assert not report.bisynchronous  # repeated answers to distinct questions allowed
    assert report.symmetric


def test_bisynchronized_game_is_bisynchronous():
    assert validate_game(bisynchronize(trivial_sync(2, 2))).bisynchronous


def test_diagonal_violation_breaks_synchronicity():
    g = game_from_zeros(1, 2, [])
    allow = np.array(g.allow, copy=True)
    assert allow[0, 1, 0, 0]  # all-allowed game is not synchronous
    assert not validate_game(Game(1, 2, allow)).synchronous


@pytest.mark.parametrize("game", corpus_games(), ids=lambda g: g.name)
def test_flags_match_direct_scan(game):
    report = validate_game(game)
    sync, bisync, sym = scan_flags(game)
    assert (report.synchronous, report.bisynchronous, report.symmetric) == (sync, bisync, sym)


def test_bad_tensor_shape_rejected():
    with pytest.raises(GameFormatError):
        Game(2, 2, np.ones((2, 2, 2, 3), dtype=bool))


# -- serialization -------------------------------------------------------------


def test_serialize_trivial_1_2_lists_diagonal_zeros():
    import json

    doc = json.loads(serialize_game(trivial_sync(1, 2)))
    assert doc["n"] == 1 and doc["k"] == 2
    assert doc["mode"] == "zeros"
    assert doc["cells"] == [[0, 1, 0, 0], [1, 0, 0, 0]]


def test_parse_empty_zeros_is_all_allowed():
    g = parse_game('{"n": 1, "k": 1, "mode": "zeros", "cells": []}')
    assert g.allow.all()


def test_parse_out_of_range_cell():
    with pytest.raises(GameFormatError, match="out of range"):
        parse_game('{"n": 1, "k": 2, "mode": "zeros", "cells": [[5, 0, 0, 0]]}')


def test_parse_reports_line_and_column():
    with pytest.raises(GameFormatError, match="line 1"):
        parse_game("{not json")


def test_parse_rejects_bad_mode_and_missing_fields():
    with pytest.raises(GameFormatError, match="mode"):
        parse_game('{"n": 1, "k": 1, "mode": "sparse", "cells": []}')
    with pytest.raises(GameFormatError, match="missing"):
        parse_game('{"n": 1, "k": 1, "cells": []}')


@pytest.mark.parametrize("game", corpus_games(), ids=lambda g: g.name)
def test_round_trip_on_corpus(game):
    assert parse_game(serialize_game(game)) == game


def test_round_trip_preserves_index_maps():
    g = bisynchronize(trivial_sync(2, 2))
    back = parse_game(serialize_game(g))
    assert back == g
    assert back.index_maps == g.index_maps


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 3),
    k=st.integers(1, 3),
    data=st.data(),
)
def test_round_trip_random_games(n, k, data):
    bits = data.draw(st.lists(st.booleans(), min_size=k * k * n * n, max_size=k * k * n * n))
    allow = np.array(bits, dtype=bool).reshape(k, k, n, n)
    g = Game(n, k, allow, name=data.draw(st.one_of(st.none(), st.text(max_size=6))))
    assert parse_game(serialize_game(g)) == g


# -- graphs --------------------------------------------------------------------


def test_graph_round_trip():
    g = graph_from_edges(4, [(0, 1), (2, 3), (1, 2)])
    assert parse_graph(serialize_graph(g)) == g


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(GameFormatError, match="loop"):
        graph_from_edges(2, [(0, 0)])
    adj = np.zeros((2, 2), dtype=bool)
    adj[0, 1] = True
    with pytest.raises(GameFormatError, match="undirected"):
        Graph(2, adj)
