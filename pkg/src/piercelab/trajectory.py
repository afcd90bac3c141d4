"""Exact orbits of the map x -> n mod x and their Pierce digit expansions.

An orbit starts at a_0 = a and repeatedly reduces n modulo the current
term until it hits 0; the number of steps is the quantity everything else
in this package measures.  Digit reconstruction runs in exact rational
arithmetic (Fraction) so the alternating-sum identity can be asserted with
no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class CapExceededError(RuntimeError):
    """Orbit ran past its step budget; orbits are never silently truncated."""


class InvalidExpansionError(ValueError):
    """Digit sequence is not a valid Pierce expansion."""


def default_cap(n: int) -> int:
    """Step budget for orbits with modulus n: 10 * ceil(n^(1/3)) + 64.

    Generous against every observed step count at desk scale; running past
    it signals a bug rather than a long orbit.
    """
    c = max(1, round(n ** (1.0 / 3.0)))
    while c ** 3 < n:
        c += 1
    while c > 1 and (c - 1) ** 3 >= n:
        c -= 1
    return 10 * c + 64


def mod_step(n: int, x: int) -> int:
    """One step of the process: the remainder of n divided by x."""
    if x <= 0:
        raise DomainError(f"mod_step needs x >= 1, got x={x} (process already terminated?)")
    if n < 1:
        raise DomainError(f"mod_step needs n >= 1, got n={n}")
    return n % x


@dataclass(frozen=True)
class Trajectory:
    """Full orbit a_0 > a_1 > ... > 0 of x -> n mod x, with quotients.

    terms includes the terminal 0; quotients[j] = floor(n / terms[j]) for
    each nonzero term; length is the index of the first (and only) zero.
    """

    n: int
    terms: tuple[int, ...]
    quotients: tuple[int, ...]
    length: int

    def check(self) -> None:
        """Recompute every invariant from scratch; raise ValueError on any failure."""
        t = self.terms
        if len(t) < 2 or t[-1] != 0:
            raise ValueError("orbit must end with the terminal 0")
        if any(x == 0 for x in t[:-1]):
            raise ValueError("0 may appear only as the final term")
        if self.length != len(t) - 1:
            raise ValueError("length must index the first zero")
        for j in range(len(t) - 1):
            if t[j + 1] != self.n % t[j]:
                raise ValueError(f"terms[{j + 1}] != n mod terms[{j}]")
            if t[j + 1] >= t[j]:
                raise ValueError(f"terms must strictly decrease at index {j}")
        if self.quotients != tuple(self.n // x for x in t[:-1]):
            raise ValueError("stored quotients disagree with floor(n / term)")


@dataclass(frozen=True)
class PierceExpansion:
    """Digits b_1 < b_2 < ... of a/n together with the source pair."""

    digits: tuple[int, ...]
    numerator: int
    denominator: int


def trajectory(a: int, n: int, cap: int | None = None) -> Trajectory:
    """Compute the full orbit of a under x -> n mod x, ending at 0."""
    if a < 1 or n < 1:
        raise DomainError(f"trajectory needs a >= 1 and n >= 1, got a={a}, n={n}")
    if cap is None:
        cap = default_cap(n)
    terms = [a]
    x = a
    while x != 0:
        if len(terms) > cap:
            raise CapExceededError(
                f"orbit of (a={a}, n={n}) exceeded the {cap}-step cap; "
                "this contradicts every known bound and likely signals a bug"
            )
        x = n % x
        terms.append(x)
    return Trajectory(
        n=n,
        terms=tuple(terms),
        quotients=tuple(n // t for t in terms[:-1]),
        length=len(terms) - 1,
    )


def steps_count(a: int, n: int) -> int:
    """Number of steps until the orbit of a reaches 0, in constant memory."""
    if a < 1 or n < 1:
        raise DomainError(f"steps_count needs a >= 1 and n >= 1, got a={a}, n={n}")
    x = a
    k = 0
    while x != 0:
        x = n % x
        k += 1
    return k


def pierce_digits(a: int, n: int) -> PierceExpansion:
    """Digit sequence of the rational a/n, read off the orbit quotients."""
    if not 1 <= a <= n:
        raise DomainError(f"pierce digits are defined for 1 <= a <= n, got a={a}, n={n}")
    t = trajectory(a, n)
    return PierceExpansion(digits=t.quotients, numerator=a, denominator=n)


def reconstruct(expansion: PierceExpansion) -> Fraction:
    """Evaluate the alternating sum 1/b1 - 1/(b1 b2) + ... exactly."""
    digits = expansion.digits
    if not digits:
        raise InvalidExpansionError("expansion has no digits")
    prev = 0
    for b in digits:
        if b <= prev:
            raise InvalidExpansionError(f"digits must be strictly increasing, got {digits}")
        prev = b
    total = Fraction(0)
    prod = 1
    for i, b in enumerate(digits):
        prod *= b
        total += Fraction((-1) ** i, prod)
    return total


def reconstruction_holds(expansion: PierceExpansion) -> bool:
    """Whether the digits rebuild numerator/denominator exactly."""
    return reconstruct(expansion) == Fraction(expansion.numerator, expansion.denominator)


__all__ = [
    "CapExceededError",
    "DomainError",
    "InvalidExpansionError",
    "PierceExpansion",
    "Trajectory",
    "default_cap",
    "mod_step",
    "pierce_digits",
    "reconstruct",
    "reconstruction_holds",
    "steps_count",
    "trajectory",
]
