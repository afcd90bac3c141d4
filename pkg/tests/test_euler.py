import math
from fractions import Fraction

import pytest

from piercelab.euler import (
    Bracket,
    alternating_partial_sum,
    certified_floor,
    inv_e_bracket,
    inv_e_terms,
    one_minus_inv_e_bracket,
    terms_for_width,
)

# 1/e to 40 places, for sanity comparisons only (never used in verdicts)
INV_E_REF = Fraction("0.3678794411714423215955237701614608674458")


def test_partial_sums_alternate_around_the_limit():
    for m in range(1, 30):
        s = alternating_partial_sum(m)
        if m % 2 == 0:
            assert s > INV_E_REF
        else:
            assert s < INV_E_REF


def test_bracket_width_is_next_factorial():
    for m in (3, 7, 12):
        br = inv_e_terms(m)
        assert br.width == Fraction(1, math.factorial(m + 1))
        assert br.lo < INV_E_REF < br.hi


def test_terms_for_width():
    assert terms_for_width(Fraction(1, 10**30)) == 28  # 29! ~ 8.8e30
    for target in (Fraction(1, 10), Fraction(1, 10**6), Fraction(1, 10**40)):
        m = terms_for_width(target)
        assert Fraction(1, math.factorial(m + 1)) < target
        assert m == 0 or Fraction(1, math.factorial(m)) >= target


def test_inv_e_bracket_default_width():
    br = inv_e_bracket()
    assert br.width < Fraction(1, 10**30)
    assert br.lo < INV_E_REF < br.hi


def test_brackets_nest_as_they_refine():
    prev = inv_e_terms(2)
    for m in range(3, 25):
        cur = inv_e_terms(m)
        assert prev.lo <= cur.lo < cur.hi <= prev.hi
        assert cur.width < prev.width
        prev = cur


def test_one_minus_inv_e():
    br = one_minus_inv_e_bracket(Fraction(1, 10**12))
    assert br.lo < 1 - INV_E_REF < br.hi
    assert br.width < Fraction(1, 10**12)


def test_bracket_arithmetic():
    br = Bracket(Fraction(1, 3), Fraction(1, 2))
    assert br.scale(-2) == Bracket(Fraction(-1), Fraction(-2, 3))
    assert br.shift(1) == Bracket(Fraction(4, 3), Fraction(3, 2))
    assert br.rsub(1) == Bracket(Fraction(1, 2), Fraction(2, 3))
    assert br.contains(Fraction(2, 5))
    assert not br.contains(Fraction(3, 5))
    with pytest.raises(ValueError):
        Bracket(Fraction(1), Fraction(0))


def test_certified_floor_terminates():
    def refinements():
        m = 4
        while True:
            yield inv_e_terms(m).scale(100)
            m += 1

    assert certified_floor(refinements()) == 36  # floor(100/e)
