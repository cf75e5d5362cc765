"""Noncommutative *-polynomials over game-algebra generators.

A polynomial is a rational linear combination of words; the empty word is
the identity.  Words are tuples of integer generator ids
(``gid = question * k + answer`` for the owning game).  All coefficients
are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from ..game import Game


class GeneratorId(NamedTuple):
    question: int
    answer: int


def gen_id(game: Game, question: int, answer: int) -> int:
    if not (0 <= question < game.n):
        raise ValueError(f"question {question} out of range for n={game.n}")
    if not (0 <= answer < game.k):
        raise ValueError(f"answer {answer} out of range for k={game.k}")
    return question * game.k + answer


def gen_label(game: Game, gid: int) -> GeneratorId:
    return GeneratorId(gid // game.k, gid % game.k)


class NCPoly:
    """Canonical form: no duplicate words, no zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for word, coeff in terms.items() if isinstance(terms, dict) else terms:
                c = Fraction(coeff)
                if c:
                    word = tuple(word)
                    new = clean.get(word, 0) + c
                    if new:
                        clean[word] = new
                    else:
                        clean.pop(word, None)
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def generator(cls, gid: int) -> "NCPoly":
        return cls({(gid,): Fraction(1)})

    @classmethod
    def from_gens(cls, pairs) -> "NCPoly":
        """Degree-1 polynomial from ``(coefficient, gid)`` pairs."""
        return cls(((gid,), coeff) for coeff, gid in pairs)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def gens(self) -> set[int]:
        return {g for w in self.terms for g in w}

    def coefficient(self, word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for word, c in other.terms.items():
            new = out.get(word, 0) + c
            if new:
                out[word] = new
            else:
                out.pop(word, None)
        res = NCPoly.__new__(NCPoly)
        res.terms = out
        return res

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        res = NCPoly.__new__(NCPoly)
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                new = out.get(word, 0) + c1 * c2
                if new:
                    out[word] = new
                else:
                    out.pop(word, None)
        res = NCPoly.__new__(NCPoly)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if not c:
            return NCPoly.zero()
        res = NCPoly.__new__(NCPoly)
        res.terms = {w: c * v for w, v in self.terms.items()}
        return res

    def adjoint(self) -> "NCPoly":
        """Reverse every word; coefficients are rational, hence self-conjugate."""
        res = NCPoly.__new__(NCPoly)
        res.terms = {tuple(reversed(w)): c for w, c in self.terms.items()}
        return res

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def canonical_items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.terms:
            return "NCPoly<0>"
        parts = [f"{c}*{'.'.join(map(str, w)) if w else '1'}" for w, c in self.canonical_items()]
        return f"NCPoly<{' + '.join(parts)}>"

    def as_jsonable(self, game: Game | None = None) -> list:
        """Word/coefficient list; words become [question, answer] pairs when
        the owning game is supplied."""
        out = []
        for word, coeff in self.canonical_items():
            if game is not None:
                word_repr = [list(gen_label(game, g)) for g in word]
            else:
                word_repr = list(word)
            out.append({"word": word_repr, "coeff": str(coeff)})
        return out


def format_poly(poly: NCPoly, game: Game) -> str:
    if poly.is_zero():
        return "0"
    parts = []
    for word, coeff in poly.canonical_items():
        if word:
            body = "".join(f"e[{q},{a}]" for q, a in (gen_label(game, g) for g in word))
        else:
            body = "1"
        parts.append(f"({coeff})*{body}")
    return " + ".join(parts)
