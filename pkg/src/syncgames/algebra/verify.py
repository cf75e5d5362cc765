"""Homomorphism and mutual-inverse verification for generator maps.

``verify_hom`` checks that a generator map extends to a unital
*-homomorphism: every image is an idempotent (self-adjointness is
structural: images are rational combinations of projections, so the only
thing to record is that coefficients are real), each question's images sum
to the identity, and every forbidden product of the source is sent to zero.
Each check reduces a polynomial in the target algebra's closure; "proven"
means it reduced to 0, "failed" means a deterministic representation
falsified the residual, and "unverified" is everything else (which is not a
disproof).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from ..game import Game
from .detreps import check_in_deterministic_reps
from .maps import GeneratorMap, apply_map
from .poly import NCPoly, gen_label
from .presentation import Closure, presentation_of, saturate
from .reduce import ReduceConfig, reduce_poly

__all__ = ["Check", "Report", "verify_hom", "verify_mutual_inverse"]

PROVEN = "proven"
UNVERIFIED = "unverified"
FAILED = "failed"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    total: int = 1
    failures: tuple = ()  # (subject, status, residual NCPoly) for non-proven items

    def as_jsonable(self, game: Game | None = None) -> dict:
        doc = {"name": self.name, "status": self.status, "total": self.total}
        if self.failures:
            doc["failures"] = [
                {
                    "subject": subject,
                    "status": status,
                    "residual": residual.as_jsonable(game) if residual is not None else None,
                }
                for subject, status, residual in self.failures
            ]
        return doc


@dataclass(frozen=True)
class Report:
    checks: tuple
    context: dict = field(default_factory=dict)

    @property
    def all_proven(self) -> bool:
        return all(c.status == PROVEN for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_jsonable(self, game: Game | None = None) -> dict:
        return {
            "context": self.context,
            "all_proven": self.all_proven,
            "checks": [c.as_jsonable(game) for c in self.checks],
        }

    def to_json(self, game: Game | None = None) -> str:
        return json.dumps(self.as_jsonable(game), indent=2)


def _status_of_residual(residual: NCPoly, game: Game, strategies) -> str:
    res = check_in_deterministic_reps(residual, game, strategies=strategies)
    return UNVERIFIED if res.holds_in_all else FAILED


def _aggregate(name, total, failures) -> Check:
    if not failures:
        return Check(name, PROVEN, total)
    status = FAILED if any(s == FAILED for _, s, _ in failures) else UNVERIFIED
    return Check(name, status, total, tuple(failures))


def closure_of(game: Game) -> Closure:
    return saturate(presentation_of(game))


def verify_hom(
    m: GeneratorMap,
    target_closure: Closure | None = None,
    config: ReduceConfig | None = None,
    cert_log=None,
) -> Report:
    """Check that a generator map is a unital *-homomorphism candidate."""
    closure = target_closure if target_closure is not None else closure_of(m.target)
    tgt = m.target
    src = m.source
    strategies = None  # lazy: only needed to classify non-proven residuals

    def residual_status(residual):
        nonlocal strategies
        if strategies is None:
            from .. import solver

            strategies = solver.perfect_strategies(tgt)
        return _status_of_residual(residual, tgt, strategies)

    checks = []

    # structural self-adjointness: rational coefficients are real
    checks.append(Check("coefficients-real", PROVEN, total=len(m.images)))

    failures = []
    for gid, img in enumerate(m.images):
        poly = img * img - img
        if poly.is_zero():
            continue
        residual = reduce_poly(poly, closure, config, cert_log)
        if not residual.is_zero():
            failures.append((f"generator {gen_label(src, gid)}", residual_status(residual), residual))
    checks.append(_aggregate("idempotent", len(m.images), failures))

    failures = []
    for q in range(src.n):
        total = NCPoly.zero()
        for a in range(src.k):
            total = total + m.images[q * src.k + a]
        poly = total - NCPoly.one()
        residual = reduce_poly(poly, closure, config, cert_log)
        if not residual.is_zero():
            failures.append((f"question {q}", residual_status(residual), residual))
    checks.append(_aggregate("complete", src.n, failures))

    zero_check = _verify_zero_products(m, closure, config, cert_log, residual_status)
    checks.append(zero_check)

    return Report(
        tuple(checks),
        context={"map": m.name, "source": src.name, "target": tgt.name},
    )


def _verify_zero_products(m, closure, config, cert_log, residual_status):
    """Images of every forbidden source pair must multiply to zero.

    Pairs whose images are single generators (or zero) are checked against
    the closure in one vectorized pass; the remainder go through the
    rewriting engine.
    """
    src, tgt = m.source, m.target
    k = src.k
    cells = np.argwhere(~src.allow)
    total = len(cells)
    if total == 0:
        return Check("zero-products", PROVEN, 0)
    gid1 = cells[:, 2] * k + cells[:, 0]  # (a, b, x, y) -> (x, a), (y, b)
    gid2 = cells[:, 3] * k + cells[:, 1]

    # -2 = multi-term image, -1 = zero image, else the single target generator
    single = np.full(len(m.images), -2, dtype=np.int64)
    for g, img in enumerate(m.images):
        if img.is_zero():
            single[g] = -1
        elif len(img.terms) == 1:
            ((word, coeff),) = img.terms.items()
            if coeff == 1:
                single[g] = word[0]
    s1, s2 = single[gid1], single[gid2]

    null_mask = np.zeros(tgt.n * tgt.k, dtype=bool)
    for g in closure.null:
        null_mask[g] = True
    rep = np.asarray(closure.rep)

    easy = (s1 >= 0) & (s2 >= 0)
    ok = np.zeros(total, dtype=bool)
    ok |= (s1 == -1) | (s2 == -1)
    if easy.any():
        t1, t2 = s1[easy], s2[easy]
        ok[easy] = null_mask[t1] | null_mask[t2] | closure.zero_rep[rep[t1], rep[t2]]

    failures = []
    certified_words = set()
    for idx in np.flatnonzero(~ok):
        g1, g2 = int(gid1[idx]), int(gid2[idx])
        poly = m.images[g1] * m.images[g2]
        residual = reduce_poly(poly, closure, config, cert_log)
        if residual.is_zero():
            continue
        a, b, x, y = (int(v) for v in cells[idx])
        failures.append((f"zero cell (a={a},b={b},x={x},y={y})", residual_status(residual), residual))
    if cert_log is not None:
        for idx in np.flatnonzero(ok & easy):
            word = (int(s1[idx]), int(s2[idx]))
            if word not in certified_words:
                certified_words.add(word)
                cert_log.add(tgt, NCPoly({word: 1}))
    return _aggregate("zero-products", total, failures)


def verify_mutual_inverse(
    forward: GeneratorMap,
    backward: GeneratorMap,
    forward_closure: Closure | None = None,
    backward_closure: Closure | None = None,
    config: ReduceConfig | None = None,
    cert_log=None,
    include_hom_checks: bool = True,
) -> Report:
    """Check two generator maps are mutually inverse *-isomorphism data.

    ``forward`` must map the transformed game's algebra into the original's
    and ``backward`` the other way around (``forward.source ==
    backward.target`` and vice versa).  The round trip through both maps is
    reduced against each game's closure; homomorphism checks for both maps
    are included first (they are the precondition).
    """
    if forward.source is not backward.target and forward.source != backward.target:
        raise ValueError("forward.source must equal backward.target")
    if forward.target is not backward.source and forward.target != backward.source:
        raise ValueError("forward.target must equal backward.source")
    original = forward.target
    transformed = forward.source
    cl_original = forward_closure if forward_closure is not None else closure_of(original)
    cl_transformed = backward_closure if backward_closure is not None else closure_of(transformed)

    checks = []
    if include_hom_checks:
        rep_f = verify_hom(forward, cl_original, config, cert_log)
        rep_b = verify_hom(backward, cl_transformed, config, cert_log)
        checks.append(Check("forward-is-hom", PROVEN if rep_f.all_proven else UNVERIFIED))
        checks.append(Check("backward-is-hom", PROVEN if rep_b.all_proven else UNVERIFIED))

    strategies = {}

    def residual_status(residual, game):
        if game not in strategies:
            from .. import solver

            strategies[game] = solver.perfect_strategies(game)
        return _status_of_residual(residual, game, strategies[game])

    failures = []
    for gid in range(original.n * original.k):
        poly = apply_map(forward, backward.images[gid]) - NCPoly.generator(gid)
        residual = reduce_poly(poly, cl_original, config, cert_log)
        if not residual.is_zero():
            failures.append(
                (f"generator {gen_label(original, gid)}", residual_status(residual, original), residual)
            )
    checks.append(_aggregate("roundtrip-original", original.n * original.k, failures))

    failures = []
    for gid in range(transformed.n * transformed.k):
        poly = apply_map(backward, forward.images[gid]) - NCPoly.generator(gid)
        residual = reduce_poly(poly, cl_transformed, config, cert_log)
        if not residual.is_zero():
            failures.append(
                (
                    f"generator {gen_label(transformed, gid)}",
                    residual_status(residual, transformed),
                    residual,
                )
            )
    checks.append(_aggregate("roundtrip-transformed", transformed.n * transformed.k, failures))

    return Report(
        tuple(checks),
        context={
            "forward": forward.name,
            "backward": backward.name,
            "original": original.name,
            "transformed": transformed.name,
        },
    )
