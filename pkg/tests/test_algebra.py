"""Presentations, saturation, and the rewriting engine."""

from fractions import Fraction

import pytest

from syncgames import bisynchronize, complete_graph, hom_game, three_output_reduce, trivial_sync
from syncgames.algebra import (
    NCPoly,
    check_in_deterministic_reps,
    gen_id,
    presentation_of,
    reduce_poly,
    saturate,
)
from syncgames.algebra.reduce import ReduceConfig
from syncgames.errors import PreconditionError, ResourceBudgetError
from syncgames.game import game_from_zeros


def closure_of(game):
    return saturate(presentation_of(game))


# -- presentations ---------------------------------------------------------------


def test_trivial_presentation_groups_and_seeds():
    p = presentation_of(trivial_sync(1, 2))
    assert [list(g) for g in p.groups()] == [[0, 1]]
    assert p.seed_is_zero(0, 1) and p.seed_is_zero(1, 0)
    assert not p.seed_is_zero(0, 0)


def test_hom_k5_k4_presentation_shape():
    p = presentation_of(hom_game(complete_graph(5), complete_graph(4)))
    groups = p.groups()
    assert len(groups) == 5
    assert all(len(g) == 4 for g in groups)


def test_bisync_presentation_shape():
    p = presentation_of(bisynchronize(trivial_sync(2, 2)))
    assert len(p.groups()) == 4
    assert all(len(g) == 4 for g in p.groups())


def test_presentation_requires_synchronous():
    with pytest.raises(PreconditionError):
        presentation_of(game_from_zeros(1, 2, []))


# -- saturation -------------------------------------------------------------------


def test_lemma_structure_on_bisync_trivial_2_2():
    game = bisynchronize(trivial_sync(2, 2))
    cl = closure_of(game)
    big = 4
    # generators whose answer (i, v) names a different question than (a, x)
    expected_nulls = {
        q * big + alpha for q in range(big) for alpha in range(big) if alpha % 2 != q % 2
    }
    assert set(cl.null) == expected_nulls
    classes = cl.equality_classes()
    assert sorted(len(m) for m in classes.values()) == [2, 2, 2, 2]
    for members in classes.values():
        keys = {((q % 2), ((q // 2) - (alpha // 2)) % 2) for q, alpha in
                ((m // big, m % big) for m in members)}
        assert len(keys) == 1  # one (question, offset) class each


def test_threeout_sum_facts_follow_the_chain():
    game = three_output_reduce(trivial_sync(1, 4))
    cl = closure_of(game)
    # f(answer 0, question (0,x)) + f(answer 1, same) = f(answer 0, question (1,x))
    assert cl.sum_facts.get((0, 1)) == 3


def test_saturate_deterministic_and_stable():
    p = presentation_of(bisynchronize(trivial_sync(2, 3)))
    a, b = saturate(p), saturate(p)
    assert a.null == b.null
    assert a.rep == b.rep
    assert a.sum_facts == b.sum_facts


def test_closure_invariants():
    cl = closure_of(bisynchronize(trivial_sync(2, 2)))
    num = 16
    for g in range(num):
        for h in range(num):
            # adjoint closure
            assert cl.is_zero_pair(g, h) == cl.is_zero_pair(h, g)
            # nulls absorb
            if g in cl.null or h in cl.null:
                assert cl.is_zero_pair(g, h)
    # equality respects zero pairs: replacing a member by its representative
    for rep, members in cl.equality_classes().items():
        for m in members:
            for h in range(num):
                assert cl.is_zero_pair(m, h) == cl.is_zero_pair(rep, h)


# -- rewriting --------------------------------------------------------------------


def test_synchronous_zero_pair_reduces():
    cl = closure_of(trivial_sync(1, 2))
    assert reduce_poly(NCPoly.generator(0) * NCPoly.generator(1), cl).is_zero()


def test_completeness_reduces():
    cl = closure_of(trivial_sync(1, 2))
    poly = NCPoly.generator(0) + NCPoly.generator(1) - NCPoly.one()
    assert reduce_poly(poly, cl).is_zero()


@pytest.mark.parametrize("k", [4, 5, 6])
def test_threeout_image_completeness(k):
    """The recovered k-output projection family sums to 1 in the 3-output
    algebra (the chain-of-sums argument, for several k)."""
    from syncgames.algebra import builtin_maps

    g = trivial_sync(2, k)
    _fwd, bwd = builtin_maps("threeout", g)
    cl = closure_of(bwd.target)
    for x in range(g.n):
        total = NCPoly.zero()
        for a in range(k):
            total = total + bwd.images[gen_id(g, x, a)]
        assert reduce_poly(total - NCPoly.one(), cl).is_zero()


def test_unverified_is_not_a_disproof():
    cl = closure_of(trivial_sync(1, 2))
    half = NCPoly.from_gens([(Fraction(1, 2), 0), (Fraction(1, 2), 1)])
    residual = reduce_poly(half * half - half, cl)
    assert not residual.is_zero()  # genuinely not zero in the algebra
    res = check_in_deterministic_reps(residual, trivial_sync(1, 2))
    assert not res.holds_in_all  # and the oracle falsifies it


def test_degree_bound():
    cl = closure_of(trivial_sync(1, 2))
    word = NCPoly({(0, 1, 0, 1, 0): Fraction(1)})
    with pytest.raises(ResourceBudgetError):
        reduce_poly(word, cl)
    assert reduce_poly(word, cl, ReduceConfig(degree_bound=5)).is_zero()


def test_rowsum_identity_on_bisync_games():
    game = bisynchronize(trivial_sync(2, 3))
    cl = closure_of(game)
    big = game.n
    for alpha in range(big):
        poly = NCPoly.from_gens((1, q * big + alpha) for q in range(big)) - NCPoly.one()
        assert reduce_poly(poly, cl).is_zero()


def test_certified_zero_matches_oracle_everywhere():
    game = three_output_reduce(trivial_sync(1, 4))
    cl = closure_of(game)
    polys = [
        NCPoly.generator(0) + NCPoly.generator(1) - NCPoly.generator(3),
        NCPoly.generator(0) * NCPoly.generator(1),
        NCPoly.from_gens((1, g) for g in range(3)) - NCPoly.one(),
    ]
    for poly in polys:
        if reduce_poly(poly, cl).is_zero():
            assert check_in_deterministic_reps(poly, game).holds_in_all


def test_deterministic_rep_counterexample():
    game = trivial_sync(1, 2)
    poly = NCPoly.generator(0) - NCPoly.generator(1)
    res = check_in_deterministic_reps(poly, game)
    assert not res.holds_in_all
    strategy, value = res.counterexample
    assert strategy == (0,) and value == 1


def test_deterministic_rep_holds_for_zero_pair():
    game = trivial_sync(1, 2)
    poly = NCPoly.generator(0) * NCPoly.generator(1)
    assert check_in_deterministic_reps(poly, game).holds_in_all
