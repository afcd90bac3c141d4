"""Shared brute-force oracles for the test suite.

These deliberately reimplement the definitions by direct iteration and
stay independent of the package code paths they are used to check.
"""

from fractions import Fraction


def orbit_oracle(a, n):
    terms = [a]
    while terms[-1] != 0:
        terms.append(n % terms[-1])
    return terms


def steps_oracle(a, n):
    return len(orbit_oracle(a, n)) - 1


def pmax_oracle(n):
    best, besta = 0, 1
    for a in range(1, n + 1):
        p = steps_oracle(a, n)
        if p > best:
            best, besta = p, a
    return best, besta


def digits_oracle(a, n):
    return [n // x for x in orbit_oracle(a, n)[:-1]]


def alternating_sum_oracle(digits):
    total, prod = Fraction(0), 1
    for i, b in enumerate(digits):
        prod *= b
        total += Fraction((-1) ** i, prod)
    return total
