"""The four rule-function transformations against independent oracles."""

from pathlib import Path

import numpy as np
import pytest

from syncgames import (
    Game,
    ZeroRelationSpec,
    bisynchronize,
    complete_graph,
    hom_game,
    parse_game,
    serialize_game,
    symmetrize,
    three_output_reduce,
    trivial_sync,
    validate_game,
    zero_relation_normalize,
    zr_to_game,
)
from syncgames.errors import PreconditionError
from syncgames.game import game_from_zeros
from syncgames.transforms import bisync_rule_conflicts
from syncgames.corpus import corpus_games

from oracles import bisync_reference_tensor, brute_force_strategies

GOLDEN = Path(__file__).parent / "golden"


# -- symmetrize ----------------------------------------------------------------


def test_symmetrize_fixes_symmetric_input():
    g = hom_game(complete_graph(3), complete_graph(3))
    assert symmetrize(g).allow.tobytes() == g.allow.tobytes()


def test_symmetrize_product_rule():
    g = game_from_zeros(2, 2, [(1, 0, 1, 0)])  # transpose cell of (0,1,0,1)
    assert g.allow[0, 1, 0, 1]
    out = symmetrize(g)
    assert not out.allow[0, 1, 0, 1]
    assert not out.allow[1, 0, 1, 0]


def test_symmetrize_idempotent_and_dominated():
    for g in corpus_games()[:8]:
        once = symmetrize(g)
        assert np.array_equal(symmetrize(once).allow, once.allow)
        assert not (once.allow & ~g.allow).any()  # never adds allowed cells


# -- bisynchronize -------------------------------------------------------------


def test_bisync_k5_k4_sizes():
    g = bisynchronize(hom_game(complete_graph(5), complete_graph(4)))
    assert (g.n, g.k) == (20, 20)
    assert validate_game(g).bisynchronous


def test_bisync_trivial_1_2_allowed_cells():
    g = bisynchronize(trivial_sync(1, 2))
    # exactly the 8 tuples with matching answer offsets (a - i = b - j mod 2)
    allowed = {cell for cell in np.ndindex(2, 2, 2, 2) if g.allow[cell]}
    expected = {
        (i, j, a, b)
        for i in range(2)
        for j in range(2)
        for a in range(2)
        for b in range(2)
        if (a - i) % 2 == (b - j) % 2
    }
    assert allowed == expected
    assert len(allowed) == 8


@pytest.mark.parametrize("game", corpus_games()[:10], ids=lambda g: g.name)
def test_bisync_matches_reference_rules(game):
    assert np.array_equal(bisynchronize(game).allow, bisync_reference_tensor(game))


def test_bisync_no_shortcut_for_bisynchronous_input():
    g = bisynchronize(trivial_sync(2, 2))  # already bisynchronous, n == k
    again = bisynchronize(g)
    assert again.n == g.n * g.k


def test_bisync_requires_synchronous():
    with pytest.raises(PreconditionError):
        bisynchronize(game_from_zeros(1, 2, []))


@pytest.mark.parametrize("game", corpus_games(), ids=lambda g: g.name)
def test_bisync_rules_never_conflict(game):
    assert bisync_rule_conflicts(game) == []


def test_bisync_golden_table():
    assert serialize_game(bisynchronize(trivial_sync(2, 2))) == GOLDEN.joinpath(
        "bisync_trivial_2_2.json"
    ).read_text()


# -- three-output reduction ------------------------------------------------------


def test_threeout_k5_k4_sizes():
    g = three_output_reduce(hom_game(complete_graph(5), complete_graph(4)))
    assert (g.n, g.k) == (10, 3)


def test_threeout_question_count_formula():
    assert three_output_reduce(trivial_sync(3, 6)).n == 3 * 4


def test_threeout_pinned_orthogonality_cell():
    # 1-based table cell (1,3,(2,x),(1,x)) = 0 translates to (0,2,(1,x),(0,x))
    g = three_output_reduce(trivial_sync(1, 4))
    assert not g.allow[0, 2, 1, 0]


def test_threeout_output_is_symmetric_synchronous():
    g = three_output_reduce(trivial_sync(2, 5))
    report = validate_game(g)
    assert report.symmetric
    assert report.synchronous


def test_threeout_preconditions():
    with pytest.raises(PreconditionError, match="k > 3"):
        three_output_reduce(trivial_sync(2, 3))
    lopsided = game_from_zeros(2, 4, [(0, 1, 0, 1)] + [
        (a, b, x, x) for x in range(2) for a in range(4) for b in range(4) if a != b
    ])
    with pytest.raises(PreconditionError, match="symmetric"):
        three_output_reduce(lopsided)


def test_threeout_golden_table():
    assert serialize_game(three_output_reduce(trivial_sync(1, 4))) == GOLDEN.joinpath(
        "threeout_trivial_1_4.json"
    ).read_text()


# -- zero/relation normal form ----------------------------------------------------


def test_zr_question_count_and_relations():
    g, spec = zero_relation_normalize(trivial_sync(1, 3))
    assert g.n == 1 + 6  # one question per forbidden tuple
    assert len(spec.relation_set) == 12  # two equalities per tuple
    assert spec.zero_set == frozenset()


def test_zr_dedupe_halves_offdiagonal_tuples():
    g, _ = zero_relation_normalize(trivial_sync(1, 3), dedupe_symmetric=True)
    assert g.n == 1 + 3


def test_zr_requires_three_outputs():
    with pytest.raises(PreconditionError, match="k = 3"):
        zero_relation_normalize(trivial_sync(1, 4))


def test_zr_dedupe_requires_symmetric():
    lopsided = game_from_zeros(2, 3, [(0, 1, 0, 1)] + [
        (a, b, x, x) for x in range(2) for a in range(3) for b in range(3) if a != b
    ])
    with pytest.raises(PreconditionError, match="symmetric"):
        zero_relation_normalize(lopsided, dedupe_symmetric=True)


def test_zr_to_game_of_empty_spec_is_trivial():
    g = zr_to_game(ZeroRelationSpec(2))
    assert g == trivial_sync(2, 3).with_name("zr_spec_game")


def test_zr_to_game_zero_set_clears_row_and_column():
    g = zr_to_game(ZeroRelationSpec(2, zero_set=frozenset({(0, 0)})))
    assert not g.allow[0, :, 0, :].any()
    assert not g.allow[:, 0, :, 0].any()


def test_zr_spec_round_trips_to_the_same_game():
    out, spec = zero_relation_normalize(trivial_sync(1, 3))
    assert spec.n == 7
    rebuilt = zr_to_game(spec)
    assert np.array_equal(rebuilt.allow, out.allow)


def test_zr_spec_json_round_trip():
    _, spec = zero_relation_normalize(trivial_sync(2, 3))
    assert ZeroRelationSpec.from_json(spec.to_json()) == spec


def test_zr_golden_table():
    out, spec = zero_relation_normalize(trivial_sync(1, 3))
    assert serialize_game(out) == GOLDEN.joinpath("zr_trivial_1_3.json").read_text()
    assert spec.to_json() == GOLDEN.joinpath("zr_trivial_1_3_spec.json").read_text()


# -- structural invariants across all transforms -----------------------------------


@pytest.mark.parametrize(
    "game",
    [trivial_sync(1, 2), trivial_sync(2, 2), trivial_sync(1, 4), trivial_sync(2, 4),
     hom_game(complete_graph(3), complete_graph(3)),
     hom_game(complete_graph(3), complete_graph(2))],
    ids=lambda g: g.name,
)
def test_strategy_count_preserved_by_all_transforms(game):
    # the searcher itself is validated against exhaustive enumeration in
    # test_solver.py; here it makes the larger transformed games tractable
    from syncgames.solver import count_perfect_strategies

    base = len(brute_force_strategies(game))
    assert count_perfect_strategies(game) == base
    transformed = [symmetrize(game), bisynchronize(game)]
    if game.k > 3:
        transformed.append(three_output_reduce(game))
    if game.k == 3:
        transformed.append(zero_relation_normalize(game)[0])
    for tg in transformed:
        assert count_perfect_strategies(tg) == base


@pytest.mark.parametrize("game", corpus_games()[:6], ids=lambda g: g.name)
def test_transforms_preserve_synchronicity(game):
    assert validate_game(symmetrize(game)).synchronous
    assert validate_game(bisynchronize(game)).synchronous
    if game.k > 3 and validate_game(game).symmetric:
        assert validate_game(three_output_reduce(game)).synchronous
    if game.k == 3:
        assert validate_game(zero_relation_normalize(game)[0]).synchronous
