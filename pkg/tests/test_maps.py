"""Builtin generator maps and the homomorphism verification reports."""

import json
from fractions import Fraction

import pytest

from syncgames import bisynchronize, complete_graph, hom_game, trivial_sync
from syncgames.algebra import (
    GeneratorMap,
    NCPoly,
    apply_map,
    builtin_maps,
    gen_id,
    identity_map,
    presentation_of,
    saturate,
    verify_hom,
    verify_mutual_inverse,
)
from syncgames.errors import PreconditionError


def closure_of(game):
    return saturate(presentation_of(game))


def test_bisync_backward_sends_generators_to_generators():
    g = trivial_sync(2, 3)
    _fwd, bwd = builtin_maps("bisync", g)
    big = g.n * g.k
    for x in range(g.n):
        for a in range(g.k):
            img = bwd.images[gen_id(g, x, a)]
            assert len(img.terms) == 1
            ((word, coeff),) = img.terms.items()
            assert coeff == 1
            tq, talpha = divmod(word[0], big)
            assert (tq, talpha) == (a * g.n + x, 0 * g.n + x)  # answer (0, x)


def test_bisync_forward_offsets_or_kills():
    g = trivial_sync(2, 3)
    fwd, _bwd = builtin_maps("bisync", g)
    big = g.n * g.k
    for gid, img in enumerate(fwd.images):
        q, alpha = divmod(gid, big)
        a, x = divmod(q, g.n)
        i, v = divmod(alpha, g.n)
        if v != x:
            assert img.is_zero()
        else:
            assert img == NCPoly.generator(gen_id(g, x, (a - i) % g.k))


def test_threeout_forward_tail_sums():
    g = trivial_sync(1, 5)
    fwd, _bwd = builtin_maps("threeout", g)
    # answer 2 on question (a, x) recovers the tail sum over answers >= a + 2
    for a in range(g.k - 2):
        img = fwd.images[(a * g.n + 0) * 3 + 2]
        expected = NCPoly.from_gens((1, gen_id(g, 0, c)) for c in range(a + 2, g.k))
        assert img == expected


def test_map_validation():
    g = trivial_sync(1, 2)
    with pytest.raises(PreconditionError, match="images"):
        GeneratorMap(g, g, (NCPoly.generator(0),))
    with pytest.raises(PreconditionError, match="degree exactly 1"):
        GeneratorMap(g, g, (NCPoly.one(), NCPoly.generator(1)))
    with pytest.raises(PreconditionError, match="out-of-range"):
        GeneratorMap(g, g, (NCPoly.generator(7), NCPoly.generator(1)))


def test_apply_map_is_multiplicative():
    g = trivial_sync(1, 2)
    m = identity_map(g)
    poly = NCPoly.generator(0) * NCPoly.generator(1) - NCPoly.generator(0)
    assert apply_map(m, poly) == poly


def test_verify_hom_bisync_backward_fully_proven():
    g = trivial_sync(2, 2)
    _fwd, bwd = builtin_maps("bisync", g)
    report = verify_hom(bwd, closure_of(bwd.target))
    assert report.all_proven
    names = [c.name for c in report.checks]
    assert names == ["coefficients-real", "idempotent", "complete", "zero-products"]


def test_verify_hom_rejects_averaged_map():
    g = trivial_sync(1, 2)
    half = NCPoly.from_gens([(Fraction(1, 2), 0), (Fraction(1, 2), 1)])
    m = GeneratorMap(g, g, (half, half), name="averaged")
    report = verify_hom(m, closure_of(g))
    idem = report.check("idempotent")
    assert idem.status == "failed"  # deterministic representations falsify it
    assert not report.all_proven


def test_verify_mutual_inverse_identity():
    g = trivial_sync(2, 2)
    report = verify_mutual_inverse(identity_map(g), identity_map(g))
    assert report.all_proven


def test_verify_mutual_inverse_threeout_pair():
    g = trivial_sync(1, 4)
    fwd, bwd = builtin_maps("threeout", g)
    report = verify_mutual_inverse(fwd, bwd, closure_of(g), closure_of(fwd.source))
    assert report.all_proven


def test_verify_threeout_forward_on_hom_k5_k4():
    g = hom_game(complete_graph(5), complete_graph(4))
    fwd, _bwd = builtin_maps("threeout", g)
    assert verify_hom(fwd, closure_of(g)).all_proven


def test_report_json_shape():
    g = trivial_sync(1, 2)
    _fwd, bwd = builtin_maps("bisync", g)
    report = verify_hom(bwd, closure_of(bwd.target))
    doc = json.loads(report.to_json())
    assert doc["all_proven"] is True
    assert {c["name"] for c in doc["checks"]} == {
        "coefficients-real",
        "idempotent",
        "complete",
        "zero-products",
    }
    assert all(c["status"] == "proven" for c in doc["checks"])


def test_report_json_carries_residuals_on_failure():
    g = trivial_sync(1, 2)
    half = NCPoly.from_gens([(Fraction(1, 2), 0), (Fraction(1, 2), 1)])
    m = GeneratorMap(g, g, (half, half))
    doc = verify_hom(m, closure_of(g)).as_jsonable(g)
    idem = next(c for c in doc["checks"] if c["name"] == "idempotent")
    assert idem["failures"]
    assert idem["failures"][0]["residual"]  # word/coefficient list present


def test_mutual_inverse_shape_mismatch():
    g = trivial_sync(1, 2)
    h = trivial_sync(2, 2)
    with pytest.raises(ValueError):
        verify_mutual_inverse(identity_map(g), identity_map(h))
