"""The four rule-function transformations.

Each transform consumes a game and emits a new game plus index provenance
(recorded in ``index_maps``).  Composite labels are flattened as
``a*n + x``: for the bisynchronous construction both questions and answers
are pairs ``(a, x)`` with ``a`` an answer and ``x`` a question of the
source game; for the three-output construction questions are pairs
``(a, x)`` with ``a in 0..k-3``.

Output-label conventions are 0-based throughout; rule tables that are
1-based in their usual statement are translated by subtracting 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstructionError, GameFormatError, PreconditionError
from .game import Game, validate_game

__all__ = [
    "symmetrize",
    "bisynchronize",
    "bisync_rule_conflicts",
    "three_output_reduce",
    "zero_relation_normalize",
    "zr_to_game",
    "ZeroRelationSpec",
]


def symmetrize(g: Game) -> Game:
    """Pointwise product of the rule function with its transpose
    ``(a,b,x,y) -> (b,a,y,x)``.  Idempotent; never adds allowed cells."""
    allow = g.allow & g.allow.transpose(1, 0, 3, 2)
    name = None if g.name is None else f"sym({g.name})"
    return Game(g.n, g.k, allow, name=name, index_maps=g.index_maps)


# -- bisynchronization ------------------------------------------------------


def _require_synchronous(g: Game, op: str) -> None:
    if not validate_game(g).synchronous:
        raise PreconditionError(f"{op} requires a synchronous game")


def bisynchronize(g: Game) -> Game:
    """Bisynchronous game on ``n*k`` questions and ``n*k`` answers.

    Both questions and answers encode pairs ``(a, x)`` (flattened
    ``a*n + x``).  A cell is evaluated as: 0 if the answer pairs name
    different questions than asked; else 0 on identical answers to distinct
    questions; else 0 on distinct answers to an identical question; else the
    source rule at the offset answers ``((a-i) mod k, (b-j) mod k)``.
    """
    _require_synchronous(g, "bisynchronize")
    n, k = g.n, g.k
    big = n * k
    idx = np.arange(big)
    ans_a, ans_q = idx // n, idx % n  # answer label (i, v) -> i, v
    i = ans_a.reshape(big, 1, 1, 1)
    v = ans_q.reshape(big, 1, 1, 1)
    j = ans_a.reshape(1, big, 1, 1)
    w = ans_q.reshape(1, big, 1, 1)
    a = ans_a.reshape(1, 1, big, 1)
    x = ans_q.reshape(1, 1, big, 1)
    b = ans_a.reshape(1, 1, 1, big)
    y = ans_q.reshape(1, 1, 1, big)

    mismatch = (v != x) | (w != y)
    same_ans = (i == j) & (v == w)
    same_q = (a == b) & (x == y)
    offset = g.allow[(a - i) % k, (b - j) % k, x, y]
    allow = ~(mismatch | (same_ans & ~same_q) | (same_q & ~same_ans)) & offset

    pairs = [[int(p // n), int(p % n)] for p in range(big)]
    index_maps = {
        "kind": "bisync",
        "source_n": n,
        "source_k": k,
        "questions": pairs,
        "answers": pairs,
    }
    name = None if g.name is None else f"bisync({g.name})"
    return Game(big, big, allow, name=name, index_maps=index_maps)


def bisync_rule_conflicts(g: Game) -> list[tuple[int, int, int, int]]:
    """Cells where the offset rule would assign 1 while a zero rule fires.

    Empty for every synchronous input; exposed so tests can assert that
    exhaustively.  Cells are reported in source-pair coordinates
    ``(i, v, j, w, a, x, b, y)`` flattened to the transformed indices.
    """
    n, k = g.n, g.k
    big = n * k
    idx = np.arange(big)
    ans_a, ans_q = idx // n, idx % n
    i = ans_a.reshape(big, 1, 1, 1)
    v = ans_q.reshape(big, 1, 1, 1)
    j = ans_a.reshape(1, big, 1, 1)
    w = ans_q.reshape(1, big, 1, 1)
    a = ans_a.reshape(1, 1, big, 1)
    x = ans_q.reshape(1, 1, big, 1)
    b = ans_a.reshape(1, 1, 1, big)
    y = ans_q.reshape(1, 1, 1, big)
    matched = (v == x) & (w == y)
    same_ans = (i == j) & (v == w)
    same_q = (a == b) & (x == y)
    zero_rule = (same_ans & ~same_q) | (same_q & ~same_ans)
    offset = g.allow[(a - i) % k, (b - j) % k, x, y]
    conflict = matched & zero_rule & offset
    return [tuple(int(t) for t in cell) for cell in np.argwhere(conflict)]


# -- three-output reduction --------------------------------------------------


def three_output_reduce(g: Game) -> Game:
    """Symmetric synchronous 3-output game on ``n*(k-2)`` questions.

    Questions encode pairs ``(a, x)`` with ``a in 0..k-3`` (flattened
    ``a*n + x``).  The rule table carries the source rule values on the
    designated cells and zeroes that pin each question block into a chain of
    projection sums; cells hit by several assignments take the minimum, and
    any two source-valued assignments to one cell must agree.  The result is
    symmetrized and carries the synchronous diagonal.
    """
    report = validate_game(g)
    if g.k <= 3:
        raise PreconditionError(f"three_output_reduce requires k > 3, got k={g.k}")
    if not report.synchronous:
        raise PreconditionError("three_output_reduce requires a synchronous game")
    if not report.symmetric:
        raise PreconditionError(
            "three_output_reduce requires a symmetric game; apply symmetrize first"
        )
    n, k = g.n, g.k
    m = k - 2  # answers per question block
    big = n * m

    def q(a, x):
        return a * n + x

    lam_value = np.full((3, 3, big, big), -1, dtype=np.int8)
    forced_zero = np.zeros((3, 3, big, big), dtype=bool)

    def assign(i, j, qa, qb, value):
        prev = lam_value[i, j, qa, qb]
        if prev >= 0 and prev != value:
            raise ConstructionError(
                f"conflicting source-valued assignments at cell ({i},{j},{qa},{qb})"
            )
        lam_value[i, j, qa, qb] = value

    lam = g.allow
    for x in range(n):
        for y in range(n):
            assign(0, 0, q(0, x), q(0, y), lam[0, 0, x, y])
            for b in range(m):
                assign(0, 1, q(0, x), q(b, y), lam[0, b + 1, x, y])
            assign(0, 2, q(0, x), q(m - 1, y), lam[0, k - 1, x, y])
            for a in range(m):
                for b in range(m):
                    assign(1, 1, q(a, x), q(b, y), lam[a + 1, b + 1, x, y])
                assign(1, 2, q(a, x), q(m - 1, y), lam[a + 1, k - 1, x, y])
            assign(2, 2, q(m - 1, x), q(m - 1, y), lam[k - 1, k - 1, x, y])
    for x in range(n):
        for a in range(m - 1):
            forced_zero[0, 2, q(a + 1, x), q(a, x)] = True
            for i in (0, 1):
                for j in (1, 2):
                    forced_zero[i, j, q(a, x), q(a + 1, x)] = True

    mu = np.where(forced_zero, False, lam_value != 0)  # unassigned (-1) defaults to 1
    allow = mu & mu.transpose(1, 0, 3, 2)
    off = ~np.eye(3, dtype=bool)
    for qq in range(big):
        allow[:, :, qq, qq] &= ~off

    index_maps = {
        "kind": "threeout",
        "source_n": n,
        "source_k": k,
        "questions": [[p // n, p % n] for p in range(big)],
    }
    name = None if g.name is None else f"threeout({g.name})"
    return Game(big, 3, allow, name=name, index_maps=index_maps)


# -- zero/relation normal form ------------------------------------------------


@dataclass(frozen=True)
class ZeroRelationSpec:
    """Zero set and equal-generator relation set of a 3-output presentation.

    ``zero_set`` holds ``(answer, question)`` pairs whose generators vanish;
    ``relation_set`` holds ``((answer, question), (answer, question))``
    pairs of equal generators.  Answers live in ``{0, 1, 2}``.
    """

    n: int
    zero_set: frozenset = field(default_factory=frozenset)
    relation_set: tuple = ()

    def __post_init__(self):
        for a, x in self.zero_set:
            self._check(a, x)
        for (a, x), (b, y) in self.relation_set:
            self._check(a, x)
            self._check(b, y)

    def _check(self, a, x):
        if not (0 <= a < 3):
            raise GameFormatError(f"answer {a} out of range for 3-output spec")
        if not (0 <= x < self.n):
            raise GameFormatError(f"question {x} out of range for n={self.n}")

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "Z": sorted([list(p) for p in self.zero_set]),
            "R": [[list(p), list(q)] for p, q in self.relation_set],
        }
        return json.dumps(doc) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ZeroRelationSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GameFormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
        try:
            zero = frozenset((int(a), int(x)) for a, x in doc["Z"])
            rel = tuple((tuple(map(int, p)), tuple(map(int, q))) for p, q in doc["R"])
            return cls(int(doc["n"]), zero, rel)
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"malformed zero/relation spec: {exc}") from exc


def zero_relation_normalize(
    g: Game, dedupe_symmetric: bool = False
) -> tuple[Game, ZeroRelationSpec]:
    """Re-present a synchronous 3-output game by zero/equality relations only.

    The new question set is the old one followed by one question per
    forbidden tuple ``t = (a, b, x, y)``; the rule function ties the tuple
    question's answers 0 and 1 to ``(a, x)`` and ``(b, y)`` so that the only
    relations left are generator equalities (returned in the spec's ``R``)
    plus projection-valued-measure completeness.  The zero set ``Z`` of this
    construction is always empty.  With ``dedupe_symmetric`` (valid only for
    symmetric games) one tuple per transpose orbit is kept.
    """
    report = validate_game(g)
    if g.k != 3:
        raise PreconditionError(
            f"zero_relation_normalize requires k = 3, got k={g.k};"
            " reduce with three_output_reduce first"
        )
    if not report.synchronous:
        raise PreconditionError("zero_relation_normalize requires a synchronous game")
    if dedupe_symmetric and not report.symmetric:
        raise PreconditionError("symmetric-dedupe requires a symmetric game")

    n = g.n
    tuples = g.zeros()
    if dedupe_symmetric:
        tuples = [t for t in tuples if t <= (t[1], t[0], t[3], t[2])]
    big = n + len(tuples)

    allow = np.ones((3, 3, big, big), dtype=bool)
    off = ~np.eye(3, dtype=bool)
    for qq in range(big):
        allow[:, :, qq, qq] &= ~off
    relations = []
    for t_idx, (a, b, x, y) in enumerate(tuples):
        tq = n + t_idx
        for i in (1, 2):  # answering x with a forces answer 0 on the tuple
            allow[a, i, x, tq] = False
        for j in range(3):  # answer 0 on the tuple forces a on x
            if j != a:
                allow[j, 0, x, tq] = False
        for i in (0, 2):
            allow[b, i, y, tq] = False
        for j in range(3):
            if j != b:
                allow[j, 1, y, tq] = False
        relations.append(((0, tq), (a, x)))
        relations.append(((1, tq), (b, y)))
    allow &= allow.transpose(1, 0, 3, 2)

    index_maps = {
        "kind": "zero_relation",
        "source_n": n,
        "tuples": [list(t) for t in tuples],
    }
    name = None if g.name is None else f"zr({g.name})"
    out = Game(big, 3, allow, name=name, index_maps=index_maps)
    spec = ZeroRelationSpec(big, frozenset(), tuple(relations))
    return out, spec


def zr_to_game(spec: ZeroRelationSpec) -> Game:
    """Encode a zero/relation spec back into a synchronous 3-output game."""
    n = spec.n
    allow = np.ones((3, 3, n, n), dtype=bool)
    off = ~np.eye(3, dtype=bool)
    for qq in range(n):
        allow[:, :, qq, qq] &= ~off
    for a, x in spec.zero_set:
        allow[a, :, x, :] = False
        allow[:, a, :, x] = False
    for (a, x), (b, y) in spec.relation_set:
        for a2 in range(3):
            if a2 != a:
                allow[a2, b, x, y] = False
        for b2 in range(3):
            if b2 != b:
                allow[a, b2, x, y] = False
    allow &= allow.transpose(1, 0, 3, 2)
    return Game(n, 3, allow, name="zr_spec_game")
