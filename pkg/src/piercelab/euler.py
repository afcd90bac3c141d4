"""Rigorous rational brackets around 1/e.

The partial sums S_m = sum_{j<=m} (-1)^j / j! straddle 1/e: even m gives an
upper bound, odd m a lower bound, and |S_m - 1/e| < 1/(m+1)!.  That turns
every floor, comparison, or error bound involving e into a terminating
refine-until-decidable computation over exact rationals.  No float ever
participates in a pass/fail decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

#: default bracket width, well past anything the witness computations need
DEFAULT_WIDTH = Fraction(1, 10**30)


@dataclass(frozen=True)
class Bracket:
    """Closed rational interval [lo, hi] certified to contain a real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"bracket endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def scale(self, c) -> "Bracket":
        """Bracket of c * value; c may be negative."""
        c = Fraction(c)
        if c >= 0:
            return Bracket(self.lo * c, self.hi * c)
        return Bracket(self.hi * c, self.lo * c)

    def shift(self, c) -> "Bracket":
        c = Fraction(c)
        return Bracket(self.lo + c, self.hi + c)

    def rsub(self, c) -> "Bracket":
        """Bracket of c - value."""
        c = Fraction(c)
        return Bracket(c - self.hi, c - self.lo)

    def contains(self, value) -> bool:
        value = Fraction(value)
        return self.lo <= value <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())


def alternating_partial_sum(m: int) -> Fraction:
    """S_m = sum_{j=0}^{m} (-1)^j / j!, exact."""
    if m < 0:
        raise ValueError("partial sum index must be >= 0")
    total = Fraction(0)
    fact = 1
    for j in range(m + 1):
        if j:
            fact *= j
        total += Fraction((-1) ** j, fact)
    return total


def inv_e_terms(m: int) -> Bracket:
    """Bracket of 1/e from the consecutive partial sums S_m, S_{m+1}."""
    s_m = alternating_partial_sum(m)
    s_next = s_m + Fraction((-1) ** (m + 1), math.factorial(m + 1))
    return Bracket(min(s_m, s_next), max(s_m, s_next))


def terms_for_width(max_width: Fraction) -> int:
    """Smallest m with 1/(m+1)! < max_width (the S_m/S_{m+1} bracket width)."""
    if max_width <= 0:
        raise ValueError("bracket width must be positive")
    m = 0
    fact = 1
    while Fraction(1, fact) >= max_width:
        m += 1
        fact *= m + 1
    return m


def inv_e_bracket(max_width: Fraction = DEFAULT_WIDTH) -> Bracket:
    """Bracket of 1/e no wider than max_width."""
    return inv_e_terms(terms_for_width(Fraction(max_width)))


def one_minus_inv_e_bracket(max_width: Fraction = DEFAULT_WIDTH) -> Bracket:
    """Bracket of 1 - 1/e, same width guarantee."""
    return inv_e_bracket(max_width).rsub(1)


def certified_floor(brackets) -> int:
    """Floor of a real given an iterator of ever-tighter brackets around it.

    Consumes brackets until both endpoints share a floor.  Diverges only if
    the value is an exact integer, which no caller here can produce (the
    bracketed values are all irrational multiples of e).
    """
    for br in brackets:
        flo = math.floor(br.lo)
        if flo == math.floor(br.hi):
            return flo
    raise RuntimeError("bracket refinement exhausted without deciding the floor")
