"""Generator-level maps between game algebras and the builtin transform maps.

A :class:`GeneratorMap` sends each generator of its source game to a
rational combination of generators of its target game (never the identity).
Applied to correlations it acts contravariantly: a correlation on the
*target* game pulls back to one on the *source* game (see
``correlations.transport``).

``builtin_maps(kind, g)`` returns the mutually inverse pair for a transform:

* ``forward``  — source: the transformed game, target: ``g``.  Its
  transport carries correlations of ``g`` forward onto the transformed game.
* ``backward`` — source: ``g``, target: the transformed game.  Its
  transport carries transformed-game correlations back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from ..game import Game
from ..transforms import bisynchronize, three_output_reduce, zero_relation_normalize
from .poly import NCPoly

__all__ = ["GeneratorMap", "identity_map", "builtin_maps", "apply_map"]

KINDS = ("bisync", "threeout", "zr")


@dataclass(frozen=True)
class GeneratorMap:
    source: Game
    target: Game
    images: tuple
    name: str = ""

    def __post_init__(self):
        expect = self.source.n * self.source.k
        if len(self.images) != expect:
            raise PreconditionError(
                f"map must provide {expect} images, got {len(self.images)}"
            )
        limit = self.target.n * self.target.k
        for gid, img in enumerate(self.images):
            if not isinstance(img, NCPoly):
                raise PreconditionError(f"image of generator {gid} is not a polynomial")
            for word in img.terms:
                if len(word) != 1:
                    raise PreconditionError(
                        f"image of generator {gid} must be a pure generator"
                        " combination (degree exactly 1, no identity term)"
                    )
                if not 0 <= word[0] < limit:
                    raise PreconditionError(
                        f"image of generator {gid} references out-of-range generator {word[0]}"
                    )

    def image(self, gid: int) -> NCPoly:
        return self.images[gid]

    def coefficient(self, source_gid: int, target_gid: int) -> Fraction:
        return self.images[source_gid].coefficient((target_gid,))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<GeneratorMap{label} {self.source!r} -> {self.target!r}>"


def apply_map(m: GeneratorMap, poly: NCPoly) -> NCPoly:
    """Extend the generator map multiplicatively to a polynomial."""
    out = NCPoly.zero()
    for word, coeff in poly.terms.items():
        acc = NCPoly({(): coeff})
        for g in word:
            acc = acc * m.images[g]
        out = out + acc
    return out


def identity_map(g: Game) -> GeneratorMap:
    images = tuple(NCPoly.generator(i) for i in range(g.n * g.k))
    return GeneratorMap(g, g, images, name="identity")


def builtin_maps(kind: str, g: Game) -> tuple[GeneratorMap, GeneratorMap]:
    if kind == "bisync":
        return _bisync_maps(g)
    if kind == "threeout":
        return _threeout_maps(g)
    if kind == "zr":
        return _zr_maps(g)
    raise PreconditionError(f"unknown map kind {kind!r}; expected one of {KINDS}")


def _bisync_maps(g: Game):
    gt = bisynchronize(g)
    n, k = g.n, g.k
    big = n * k
    forward = []
    for gid in range(big * big):
        q, alpha = divmod(gid, big)
        a, x = divmod(q, n)
        i, v = divmod(alpha, n)
        if v != x:
            forward.append(NCPoly.zero())
        else:
            forward.append(NCPoly.generator(x * k + (a - i) % k))
    backward = []
    for gid in range(n * k):
        x, a = divmod(gid, k)
        backward.append(NCPoly.generator((a * n + x) * big + x))
    return (
        GeneratorMap(gt, g, tuple(forward), name="bisync-forward"),
        GeneratorMap(g, gt, tuple(backward), name="bisync-backward"),
    )


def _threeout_maps(g: Game):
    gt = three_output_reduce(g)
    n, k = g.n, g.k
    m = k - 2
    forward = []
    for gid in range(gt.n * 3):
        q, i = divmod(gid, 3)
        a, x = divmod(q, n)
        if i == 0:
            img = NCPoly.from_gens((1, x * k + c) for c in range(a + 1))
        elif i == 1:
            img = NCPoly.generator(x * k + a + 1)
        else:
            img = NCPoly.from_gens((1, x * k + c) for c in range(a + 2, k))
        forward.append(img)
    backward = []
    for gid in range(n * k):
        x, c = divmod(gid, k)
        if c == 0:
            tq, ti = 0 * n + x, 0
        elif c <= k - 2:
            tq, ti = (c - 1) * n + x, 1
        else:
            tq, ti = (m - 1) * n + x, 2
        backward.append(NCPoly.generator(tq * 3 + ti))
    return (
        GeneratorMap(gt, g, tuple(forward), name="threeout-forward"),
        GeneratorMap(g, gt, tuple(backward), name="threeout-backward"),
    )


def _zr_maps(g: Game):
    gt, _spec = zero_relation_normalize(g)
    n = g.n
    tuples = [tuple(t) for t in gt.index_maps["tuples"]]
    forward = []
    for gid in range(gt.n * 3):
        q, i = divmod(gid, 3)
        if q < n:
            forward.append(NCPoly.generator(q * 3 + i))
            continue
        a, b, x, y = tuples[q - n]
        if i == 0:
            forward.append(NCPoly.generator(x * 3 + a))
        elif i == 1:
            forward.append(NCPoly.generator(y * 3 + b))
        else:
            # 1 - e_{a,x} - e_{b,y}, identity removed via completeness at x
            pairs = [(Fraction(1), x * 3 + c) for c in range(3) if c != a]
            pairs.append((Fraction(-1), y * 3 + b))
            forward.append(NCPoly.from_gens(pairs))
    backward = [NCPoly.generator(x * 3 + a) for x in range(n) for a in range(3)]
    return (
        GeneratorMap(gt, g, tuple(forward), name="zr-forward"),
        GeneratorMap(g, gt, tuple(backward), name="zr-backward"),
    )
