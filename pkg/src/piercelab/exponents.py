"""Exact rational bookkeeping for the step-count exponent budget.

The middle dyadic range admits a saving of gamma = min of three linear
forms in the tuning pair (delta, lambda); the overall step-count exponent
is then 1/3 - min(delta, gamma).  Everything here is Fraction arithmetic:
the optimizer enumerates vertices of the max-min program instead of
calling a numeric LP, because the answer is a specific rational and must
come out exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .euler import Bracket, alternating_partial_sum, inv_e_bracket

ONE_THIRD = Fraction(1, 3)
DELTA_SUP = Fraction(1, 18)  # open bound on delta
FORM3_CONST = Fraction(4, 63)
FORM3_DELTA = Fraction(349, 84)
FORM3_LAMBDA = Fraction(13, 84)


def _pq(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ExponentPoint:
    """A tuning pair with its three saving forms and their minimum."""

    delta: Fraction
    lam: Fraction
    form1: Fraction  # lam - 2*delta
    form2: Fraction  # delta
    form3: Fraction  # 4/63 - (349/84) delta - (13/84) lam
    gamma: Fraction
    delta_feasible: bool  # delta < 1/18, strict
    lambda_feasible: bool  # lam <= 1/3 - delta

    @property
    def feasible(self) -> bool:
        return self.delta_feasible and self.lambda_feasible

    @property
    def forms(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.form1, self.form2, self.form3)

    @property
    def overall_exponent(self) -> Fraction:
        return ONE_THIRD - min(self.delta, self.gamma)

    @property
    def on_delta_boundary(self) -> bool:
        """Whether the point sits on the closed-for-enumeration edge delta = 1/18."""
        return self.delta == DELTA_SUP

    def to_json_dict(self) -> dict:
        return {
            "delta": _pq(self.delta),
            "lambda": _pq(self.lam),
            "forms": [_pq(f) for f in self.forms],
            "gamma": _pq(self.gamma),
            "feasible": self.feasible,
            "overall_exponent": _pq(self.overall_exponent),
        }


@dataclass(frozen=True)
class BudgetReport:
    """Per-range step-count exponents and their maximum (the budget)."""

    delta: Fraction
    lam: Fraction
    head_exponent: Fraction  # bands above n^(2/3 + delta)
    tail_exponent: Fraction  # bands below n^(2/3 - 2 delta)
    middle_exponent: Fraction  # the band window in between
    overall: Fraction

    def to_json_dict(self) -> dict:
        return {
            "delta": _pq(self.delta),
            "lambda": _pq(self.lam),
            "head_exponent": _pq(self.head_exponent),
            "tail_exponent": _pq(self.tail_exponent),
            "middle_exponent": _pq(self.middle_exponent),
            "overall_exponent": _pq(self.overall),
        }


def gamma(delta, lam) -> ExponentPoint:
    """Evaluate the three saving forms at (delta, lam), all exact."""
    delta = Fraction(delta)
    lam = Fraction(lam)
    f1 = lam - 2 * delta
    f2 = delta
    f3 = FORM3_CONST - FORM3_DELTA * delta - FORM3_LAMBDA * lam
    return ExponentPoint(
        delta=delta,
        lam=lam,
        form1=f1,
        form2=f2,
        form3=f3,
        gamma=min(f1, f2, f3),
        delta_feasible=delta < DELTA_SUP,
        lambda_feasible=lam <= ONE_THIRD - delta,
    )


def exponent_budget(delta, lam) -> BudgetReport:
    """Combine the three dyadic ranges into the overall exponent."""
    point = gamma(delta, lam)
    head = ONE_THIRD - point.delta
    tail = ONE_THIRD - point.delta
    middle = ONE_THIRD - point.gamma
    return BudgetReport(
        delta=point.delta,
        lam=point.lam,
        head_exponent=head,
        tail_exponent=tail,
        middle_exponent=middle,
        overall=max(head, tail, middle),
    )


def _solve3(rows):
    """Solve three linear equations in (delta, lam, g) by Cramer's rule.

    rows are (cd, cl, cg, rhs); returns None when singular.
    """
    (a1, b1, c1, r1), (a2, b2, c2, r2), (a3, b3, c3, r3) = rows
    det = (
        a1 * (b2 * c3 - b3 * c2)
        - b1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * b3 - a3 * b2)
    )
    if det == 0:
        return None
    dd = (
        r1 * (b2 * c3 - b3 * c2)
        - b1 * (r2 * c3 - r3 * c2)
        + c1 * (r2 * b3 - r3 * b2)
    )
    dl = (
        a1 * (r2 * c3 - r3 * c2)
        - r1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * r3 - a3 * r2)
    )
    dg = (
        a1 * (b2 * r3 - b3 * r2)
        - b1 * (a2 * r3 - a3 * r2)
        + r1 * (a2 * b3 - a3 * b2)
    )
    return (dd / det, dl / det, dg / det)


def maximize_min_forms(forms, box_constraints):
    """Exact vertex solution of max min_i of linear forms over a polygon.

    forms: (cd, cl, c0) triples meaning cd*delta + cl*lam + c0.
    box_constraints: (ad, al, rhs) meaning ad*delta + al*lam <= rhs.
    Lifts to the LP max g s.t. g <= every form, enumerates all vertex
    candidates (triples of tight constraints), and returns the best
    feasible one as ((delta, lam, g), vertices) where vertices lists every
    feasible candidate for audit.
    """
    # each constraint as (cd, cl, cg, rhs) for cd*d + cl*l + cg*g <= rhs
    rows = []
    for cd, cl, c0 in forms:
        rows.append((-Fraction(cd), -Fraction(cl), Fraction(1), Fraction(c0)))
    for ad, al, rhs in box_constraints:
        rows.append((Fraction(ad), Fraction(al), Fraction(0), Fraction(rhs)))

    def satisfied(pt):
        d, l, g = pt
        return all(cd * d + cl * l + cg * g <= rhs for cd, cl, cg, rhs in rows)

    vertices = []
    for triple in combinations(rows, 3):
        pt = _solve3(triple)
        if pt is not None and satisfied(pt):
            vertices.append(pt)
    if not vertices:
        raise ValueError("max-min program is infeasible")
    best = max(vertices, key=lambda pt: pt[2])
    return best, vertices


#: the standard program: three saving forms over the documented box,
#: with the open edge delta < 1/18 closed for enumeration purposes
STANDARD_FORMS = (
    (Fraction(-2), Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(0)),
    (-FORM3_DELTA, -FORM3_LAMBDA, FORM3_CONST),
)
STANDARD_BOX = (
    (Fraction(-1), Fraction(0), Fraction(0)),  # delta >= 0
    (Fraction(1), Fraction(0), DELTA_SUP),  # delta <= 1/18 (closed)
    (Fraction(0), Fraction(-1), Fraction(0)),  # lam >= 0
    (Fraction(1), Fraction(1), ONE_THIRD),  # lam <= 1/3 - delta
)


def optimize_gamma() -> ExponentPoint:
    """Exact maximizer of the minimum saving over the feasible box.

    Certifies optimality by construction: every vertex of the lifted LP is
    enumerated and the best is returned.  The optimum is interior to the
    delta edge, so treating the open constraint as closed changes nothing;
    on_delta_boundary on the result records whether that mattered.
    """
    (d, l, g), vertices = maximize_min_forms(STANDARD_FORMS, STANDARD_BOX)
    point = gamma(d, l)
    assert point.gamma == g == max(v[2] for v in vertices)
    return point


def check_k2_expansion(k: int, max_width: Fraction = Fraction(1, 10**12)) -> Bracket:
    """Bracket the deviation E(k) of the tail identity behind the witness bound.

    E(k) = (-1)^k (k+2) k! (S_k - 1/e) - (1 + 1/k^2), which the alternating
    tail expansion predicts to be O(1/k^3).  The bracket is exact-rational
    with width below max_width.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    scale = (k + 2) * math.factorial(k)
    br = inv_e_bracket(Fraction(max_width) / scale)
    sign = -1 if k % 2 else 1
    # (-1)^k (k+2) k! (S_k - 1/e) = sign * scale * S_k - sign * scale * (1/e)
    exact_part = sign * scale * alternating_partial_sum(k) - 1 - Fraction(1, k * k)
    return br.scale(-sign * scale).shift(exact_part)


def tail_factor_bracket(k: int, max_width: Fraction = Fraction(1, 10**12)) -> Bracket:
    """Bracket of (-1)^k (k+2) k! (S_k - 1/e), the factor that exceeds 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    scale = (k + 2) * math.factorial(k)
    br = inv_e_bracket(Fraction(max_width) / scale)
    sign = -1 if k % 2 else 1
    return br.scale(-sign * scale).shift(sign * scale * alternating_partial_sum(k))
