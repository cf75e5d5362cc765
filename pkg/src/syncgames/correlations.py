"""Explicit correlations: classification, transport, and the non-signalling
midpoint counterexample.

A correlation stores exact rational probabilities ``p(a, b | x, y)`` in a
sparse map (absent cells are 0).  Transport along a generator map is the
coefficient pushforward: for a map sending source generators to
combinations of target generators, a correlation on the *target* game pulls
back to one on the *source* game by contracting both answer slots against
the coefficient tensor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import solver
from .algebra.maps import GeneratorMap
from .errors import GameFormatError, PreconditionError
from .game import Game, validate_game
from .transforms import bisynchronize
from .zoo import trivial_sync

__all__ = [
    "Correlation",
    "DeterministicStrategy",
    "CorrelationFlags",
    "classify",
    "is_winning",
    "strategy_to_correlation",
    "enumerate_perfect_deterministic",
    "transport",
    "decode_bisync_range",
    "ns_counterexample",
]


@dataclass(frozen=True)
class DeterministicStrategy:
    """A function table ``question -> answer``."""

    table: tuple

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __len__(self):
        return len(self.table)


class Correlation:
    """Exact rational tensor ``p(a, b | x, y)``, sparse over nonzero cells."""

    __slots__ = ("n", "k", "entries")

    def __init__(self, n: int, k: int, entries, validate: bool = True):
        self.n = n
        self.k = k
        clean: dict[tuple[int, int, int, int], Fraction] = {}
        for (a, b, x, y), value in entries.items() if isinstance(entries, dict) else entries:
            v = value if type(value) is Fraction else Fraction(value)
            if v == 0:
                continue
            if not (0 <= a < k and 0 <= b < k and 0 <= x < n and 0 <= y < n):
                raise GameFormatError(f"correlation cell ({a},{b},{x},{y}) out of range")
            clean[(a, b, x, y)] = v
        self.entries = clean
        if validate:
            self._validate()

    def _validate(self):
        sums: dict[tuple[int, int], Fraction] = {}
        for (a, b, x, y), v in self.entries.items():
            if v < 0:
                raise GameFormatError(f"negative probability at ({a},{b},{x},{y})")
            sums[(x, y)] = sums.get((x, y), Fraction(0)) + v
        for x in range(self.n):
            for y in range(self.n):
                if sums.get((x, y), Fraction(0)) != 1:
                    raise GameFormatError(
                        f"probabilities for question pair ({x},{y}) sum to"
                        f" {sums.get((x, y), 0)}, expected 1"
                    )

    def value(self, a, b, x, y) -> Fraction:
        return self.entries.get((a, b, x, y), Fraction(0))

    def marginal_a(self, a, x, y) -> Fraction:
        return sum(
            (v for (aa, _b, xx, yy), v in self.entries.items() if aa == a and xx == x and yy == y),
            Fraction(0),
        )

    def marginal_b(self, b, x, y) -> Fraction:
        return sum(
            (v for (_a, bb, xx, yy), v in self.entries.items() if bb == b and xx == x and yy == y),
            Fraction(0),
        )

    def __eq__(self, other):
        if not isinstance(other, Correlation):
            return NotImplemented
        return (self.n, self.k, self.entries) == (other.n, other.k, other.entries)

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.entries.items())))

    def __repr__(self):
        return f"<Correlation n={self.n} k={self.k} support={len(self.entries)}>"

    def scale_add(self, coeff, other: "Correlation") -> "Correlation":
        """``self + coeff * other`` without validation (convex algebra helper)."""
        out = dict(self.entries)
        for cell, v in other.entries.items():
            new = out.get(cell, Fraction(0)) + Fraction(coeff) * v
            if new:
                out[cell] = new
            else:
                out.pop(cell, None)
        res = Correlation.__new__(Correlation)
        res.n, res.k, res.entries = self.n, self.k, out
        return res

    def to_json(self) -> str:
        cells = [
            [a, b, x, y, str(v)] for (a, b, x, y), v in sorted(self.entries.items())
        ]
        return json.dumps({"n": self.n, "k": self.k, "entries": cells}) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Correlation":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GameFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
        try:
            entries = {
                (int(a), int(b), int(x), int(y)): Fraction(value)
                for a, b, x, y, value in doc["entries"]
            }
            return cls(int(doc["n"]), int(doc["k"]), entries)
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"malformed correlation file: {exc}") from exc


@dataclass(frozen=True)
class CorrelationFlags:
    nonsignalling: bool
    synchronous: bool
    bisynchronous_support: bool
    winning: bool

    def as_dict(self):
        return {
            "nonsignalling": self.nonsignalling,
            "synchronous": self.synchronous,
            "bisynchronous_support": self.bisynchronous_support,
            "winning": self.winning,
        }


def is_winning(c: Correlation, g: Game) -> bool:
    """Support of the correlation avoids every forbidden cell."""
    if (c.n, c.k) != (g.n, g.k):
        raise PreconditionError(
            f"correlation dimensions ({c.n},{c.k}) do not match game ({g.n},{g.k})"
        )
    return all(g.allow[a, b, x, y] for (a, b, x, y) in c.entries)


def classify(c: Correlation, g: Game) -> CorrelationFlags:
    """Exact rational checks of the standard support and marginal conditions."""
    if (c.n, c.k) != (g.n, g.k):
        raise PreconditionError(
            f"correlation dimensions ({c.n},{c.k}) do not match game ({g.n},{g.k})"
        )
    marg_a: dict[tuple[int, int, int], Fraction] = {}
    marg_b: dict[tuple[int, int, int], Fraction] = {}
    for (a, b, x, y), v in c.entries.items():
        marg_a[(a, x, y)] = marg_a.get((a, x, y), Fraction(0)) + v
        marg_b[(b, x, y)] = marg_b.get((b, x, y), Fraction(0)) + v
    zero = Fraction(0)
    nonsignalling = all(
        len({marg_a.get((a, x, y), zero) for y in range(c.n)}) == 1
        for a in range(c.k)
        for x in range(c.n)
    ) and all(
        len({marg_b.get((b, x, y), zero) for x in range(c.n)}) == 1
        for b in range(c.k)
        for y in range(c.n)
    )
    synchronous = all(a == b for (a, b, x, y) in c.entries if x == y)
    bisynchronous_support = synchronous and all(
        x == y for (a, b, x, y) in c.entries if a == b
    )
    return CorrelationFlags(nonsignalling, synchronous, bisynchronous_support, is_winning(c, g))


def strategy_to_correlation(f: DeterministicStrategy, g: Game) -> Correlation:
    """``p(a, b | x, y) = [a = f(x)][b = f(y)]``."""
    if len(f) != g.n:
        raise PreconditionError(f"strategy has {len(f)} entries, game has {g.n} questions")
    entries = {
        (f(x), f(y), x, y): Fraction(1) for x in range(g.n) for y in range(g.n)
    }
    return Correlation(g.n, g.k, entries, validate=False)  # valid by construction


def enumerate_perfect_deterministic(g: Game, budget=None) -> list[DeterministicStrategy]:
    """All strategies winning with certainty, in lexicographic order."""
    if not validate_game(g).synchronous:
        raise PreconditionError("enumerate_perfect_deterministic requires a synchronous game")
    return [DeterministicStrategy(f) for f in solver.perfect_strategies(g, budget)]


def _reverse_index(m: GeneratorMap):
    """target generator -> [(source generator, coefficient, coefficient == 1)],
    cached on the map."""
    cached = getattr(m, "_transport_reverse", None)
    if cached is None:
        cached = {}
        for gid, img in enumerate(m.images):
            for (tg,), coeff in img.terms.items():
                cached.setdefault(tg, []).append((gid, coeff, coeff == 1))
        object.__setattr__(m, "_transport_reverse", cached)
    return cached


def transport(c: Correlation, m: GeneratorMap) -> Correlation:
    """Pull a correlation on ``m.target`` back to one on ``m.source``.

    ``out(a, b | x, y) = sum over target generator pairs of the two
    coefficients times ``c`` at the pair's cells`` - the affine map induced
    by a generator-combination homomorphism.
    """
    src, tgt = m.source, m.target
    if (c.n, c.k) != (tgt.n, tgt.k):
        raise PreconditionError(
            f"correlation dimensions ({c.n},{c.k}) do not match the map's target"
            f" game ({tgt.n},{tgt.k})"
        )
    reverse = _reverse_index(m)
    out: dict[tuple[int, int, int, int], Fraction] = {}
    zero = Fraction(0)
    kt, ks = tgt.k, src.k
    for (a, b, x, y), v in c.entries.items():
        for g1, c1, one1 in reverse.get(x * kt + a, ()):
            for g2, c2, one2 in reverse.get(y * kt + b, ()):
                cell = (g1 % ks, g2 % ks, g1 // ks, g2 // ks)
                w = v if one1 and one2 else c1 * c2 * v
                new = out.get(cell, zero) + w
                if new:
                    out[cell] = new
                else:
                    out.pop(cell, None)
    return Correlation(src.n, src.k, out)


def decode_bisync_range(c: Correlation, base: Game) -> Correlation | None:
    """Structural membership test for the image of the forward transport onto
    a bisynchronized game.

    Succeeds iff ``c`` vanishes whenever an answer names a different
    question than asked and the remaining values depend only on the answer
    offsets, i.e. ``c = [v=x][w=y] * p0((a-i) mod k, (b-j) mod k | x, y)``
    for a well-defined ``p0`` on the base game; returns that ``p0``.
    """
    n, k = base.n, base.k
    big = n * k
    if (c.n, c.k) != (big, big):
        raise PreconditionError("correlation does not live on the bisynchronization")
    for (alpha, beta, qa, qb) in c.entries:
        if alpha % n != qa % n or beta % n != qb % n:
            return None
    values: dict[tuple[int, int, int, int], Fraction] = {}
    for x in range(n):
        for y in range(n):
            for cc in range(k):
                for d in range(k):
                    samples = {
                        c.value(
                            i * n + x,
                            j * n + y,
                            ((cc + i) % k) * n + x,
                            ((d + j) % k) * n + y,
                        )
                        for i in range(k)
                        for j in range(k)
                    }
                    if len(samples) > 1:
                        return None
                    v = samples.pop()
                    if v:
                        values[(cc, d, x, y)] = v
    try:
        return Correlation(n, k, values)
    except GameFormatError:
        return None


# -- the non-signalling midpoint counterexample -------------------------------


def _delta(u, v):
    return Fraction(1) if u == v else Fraction(0)


def ns_counterexample():
    """Three explicit correlations on the bisynchronization of the 2-question
    2-answer trivial synchronous game showing the forward-transport range is
    not a face of the non-signalling winning set.

    ``p`` is the transported uniform classical point; ``q`` and ``r`` agree
    with it on equal question pairs but, on distinct question pairs, condition
    on the two answer *indices* being equal (``q``) or distinct (``r``).  All
    three are non-signalling and winning, ``p = (q + r) / 2`` exactly, ``p``
    decodes into the transport range, and ``q`` and ``r`` do not.

    Returns ``(p, q, r, report)``; raises if any asserted property fails.
    """
    base = trivial_sync(2, 2)
    game = bisynchronize(base)
    n, k = base.n, base.k
    big = n * k

    def build(rule):
        entries = {}
        for alpha in range(big):
            i, v = divmod(alpha, n)
            for beta in range(big):
                j, w = divmod(beta, n)
                for qa in range(big):
                    a, x = divmod(qa, n)
                    for qb in range(big):
                        b, y = divmod(qb, n)
                        if v != x or w != y:
                            continue
                        val = rule(i, j, a, b, x, y)
                        if val:
                            entries[(alpha, beta, qa, qb)] = val
        return Correlation(big, big, entries)

    half = Fraction(1, 2)
    quarter = Fraction(1, 4)

    p = build(
        lambda i, j, a, b, x, y: half * _delta((a - i) % k, (b - j) % k)
        if x == y
        else quarter
    )
    q = build(
        lambda i, j, a, b, x, y: half * _delta((a - i) % k, (b - j) % k)
        if x == y
        else half * _delta(i, j)
    )
    r = build(
        lambda i, j, a, b, x, y: half * _delta((a - i) % k, (b - j) % k)
        if x == y
        else half * (1 - _delta(i, j))
    )

    report = {}
    for name, corr in (("p", p), ("q", q), ("r", r)):
        flags = classify(corr, game)
        report[f"{name}_nonsignalling"] = flags.nonsignalling
        report[f"{name}_winning"] = flags.winning
    midpoint = q.scale_add(1, r)  # q + r
    report["midpoint_identity"] = all(
        midpoint.value(*cell) == 2 * v for cell, v in p.entries.items()
    ) and len(midpoint.entries) == len(p.entries)
    decoded_p = decode_bisync_range(p, base)
    report["p_in_range"] = decoded_p is not None
    report["q_in_range"] = decode_bisync_range(q, base) is not None
    report["r_in_range"] = decode_bisync_range(r, base) is not None

    expected = {
        "p_nonsignalling": True,
        "p_winning": True,
        "q_nonsignalling": True,
        "q_winning": True,
        "r_nonsignalling": True,
        "r_winning": True,
        "midpoint_identity": True,
        "p_in_range": True,
        "q_in_range": False,
        "r_in_range": False,
    }
    if report != expected:
        bad = {key: report[key] for key in expected if report[key] != expected[key]}
        raise AssertionError(f"counterexample self-verification failed: {bad}")
    return p, q, r, report
