"""Constructions that force provably long orbits, with certified checks.

Two families: the floor-of-(1-1/e)n start, whose early terms follow the
linear recurrence a_k = n - k*a_{k-1} and track the real sequence
b_k = (-1)^k k! (S_k - 1/e) n to within k!, and the lcm construction
n = lcm(1..m) - 1, whose orbit from m decrements by exactly one each step.
Every comparison against the b_k is decided by refining rational brackets
around 1/e, never by floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .euler import Bracket, alternating_partial_sum, certified_floor, inv_e_terms, terms_for_width
from .trajectory import DomainError, mod_step, steps_count, trajectory


@dataclass(frozen=True)
class PerKCheck:
    """One induction step of a witness validation."""

    k: int
    a_k: int
    bracket: Bracket  # certified range for b_k
    bound: int  # k!
    recurrence_ok: bool  # floor(n / a_{k-1}) == k
    within_bound: bool  # |a_k - b_k| <= k!, bracket-certified

    @property
    def passed(self) -> bool:
        return self.recurrence_ok and self.within_bound


@dataclass(frozen=True)
class WitnessReport:
    n: int
    start: int
    observed_length: int
    validated_k: int
    predicted_floor: float  # c * log n / log log n
    c: float
    per_k: tuple[PerKCheck, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "start": self.start,
            "observed_length": self.observed_length,
            "validated_k": self.validated_k,
            "predicted_floor": self.predicted_floor,
            "c": self.c,
            "per_k": [
                {
                    "k": chk.k,
                    "a_k": chk.a_k,
                    "b_lower": f"{chk.bracket.lo.numerator}/{chk.bracket.lo.denominator}",
                    "b_upper": f"{chk.bracket.hi.numerator}/{chk.bracket.hi.denominator}",
                    "bound_k_factorial": chk.bound,
                    "pass": chk.passed,
                }
                for chk in self.per_k
            ],
        }


@dataclass(frozen=True)
class ArithmeticWitness:
    n: int
    start: int
    guaranteed_length: int


def archimedean_start(n: int) -> int:
    """floor((1 - 1/e) n), certified by bracket refinement.

    (1 - 1/e) n is irrational for n >= 1, so some refinement pins the floor.
    """
    if n < 3:
        raise DomainError(f"the archimedean start needs n >= 3, got {n}")

    def refinements():
        m = terms_for_width(Fraction(1, 8 * n))
        while True:
            yield inv_e_terms(m).rsub(1).scale(n)
            m += 4

    return certified_floor(refinements())


def predicted_b(k: int, n: int, max_width: Fraction = Fraction(1, 10**6)) -> Bracket:
    """Bracket for b_k = (-1)^k k! (S_k - 1/e) n (and (1 - 1/e) n at k = 0)."""
    if k < 0:
        raise DomainError(f"index must be >= 0, got {k}")
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    max_width = Fraction(max_width)
    if k == 0:
        return inv_e_terms(terms_for_width(max_width / n)).rsub(1).scale(n)
    scale = math.factorial(k) * n
    br = inv_e_terms(terms_for_width(max_width / scale))
    sign = -1 if k % 2 else 1
    # b_k = sign * k! * n * S_k - sign * k! * n * (1/e)
    return br.scale(-sign * scale).shift(sign * scale * alternating_partial_sum(k))


def check_elementary_inequality(k: int, n: int) -> bool:
    """Decide (-1)^k k! (S_k - 1/e) n > n/(k+2) + k!, rigorously.

    The left side is irrational, so bracket refinement always reaches a
    verdict; the returned bool is certified, not approximate.
    """
    if k < 1 or n < 2:
        raise DomainError(f"inequality check needs k >= 1 and n >= 2, got k={k}, n={n}")
    rhs = Fraction(n, k + 2) + math.factorial(k)
    width = Fraction(1, max(n, 16))
    while True:
        br = predicted_b(k, n, max_width=width)
        if br.lo > rhs:
            return True
        if br.hi <= rhs:
            return False
        width /= 2**8


def validate_witness(n: int, c: float = 0.3, k_limit: int | None = None) -> WitnessReport:
    """Run the real orbit from the archimedean start and certify its opening.

    For k = 1..floor(c log n / log log n) (or k_limit if given) checks both
    the quotient identity floor(n / a_{k-1}) = k, which is the recurrence
    a_k = n - k*a_{k-1} in disguise, and the bracket-certified proximity
    |a_k - b_k| <= k!.  A break before the predicted floor is recorded in
    the report, not raised: c is an empirical knob.
    """
    if n < 4:
        raise DomainError(f"witness validation needs n >= 4, got {n}")
    start = archimedean_start(n)
    if start < 2:
        raise DomainError(f"archimedean start for n={n} is {start}; nothing to validate")
    predicted = c * math.log(n) / math.log(math.log(n))
    kmax = k_limit if k_limit is not None else math.floor(predicted)

    per_k = []
    validated = 0
    prev = start
    k = 1
    while k <= kmax and prev != 0:
        a_k = mod_step(n, prev)
        recurrence_ok = n // prev == k
        bound = math.factorial(k)
        width = Fraction(1, max(n, 16))
        while True:
            br = predicted_b(k, n, max_width=width)
            if br.hi <= a_k + bound and br.lo >= a_k - bound:
                within = True
                break
            if br.lo > a_k + bound or br.hi < a_k - bound:
                within = False
                break
            width /= 2**8
        chk = PerKCheck(
            k=k,
            a_k=a_k,
            bracket=br,
            bound=bound,
            recurrence_ok=recurrence_ok,
            within_bound=within,
        )
        per_k.append(chk)
        if chk.passed and validated == k - 1:
            validated = k
        if not chk.passed:
            break
        prev = a_k
        k += 1

    return WitnessReport(
        n=n,
        start=start,
        observed_length=steps_count(start, n),
        validated_k=validated,
        predicted_floor=predicted,
        c=c,
        per_k=tuple(per_k),
    )


def arithmetic_witness(m: int) -> ArithmeticWitness:
    """n = lcm(1..m) - 1, whose orbit from m walks m, m-1, ..., 1, 0.

    Verified by actually running the orbit; the construction works because
    n = -1 modulo every j <= m.
    """
    if m < 2:
        raise DomainError(f"arithmetic witness needs m >= 2, got {m}")
    n = math.lcm(*range(1, m + 1)) - 1
    t = trajectory(m, n)
    expected = tuple(range(m, -1, -1))
    if t.terms != expected:
        raise AssertionError(
            f"lcm witness orbit for m={m} deviated from the countdown: {t.terms[:8]}..."
        )
    return ArithmeticWitness(n=n, start=m, guaranteed_length=t.length)
