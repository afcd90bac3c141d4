import random

import numpy as np
import pytest

from conftest import pmax_oracle, steps_oracle
from piercelab import DomainError, pmax_dp, pmax_naive, steps_count, steps_table


def test_trivial_moduli():
    assert (pmax_dp(1).pmax, pmax_dp(1).argmax) == (1, 1)
    assert pmax_naive(2).pmax == 1


def test_worked_modulus_35():
    # brute force gives pmax 7 at the smallest witness 22
    for res in (pmax_dp(35), pmax_naive(35)):
        assert (res.pmax, res.argmax) == (7, 22)


def test_oracle_frozen_values():
    # enumerated independently: P(36) = 4 (a = 22), P(2519) = 17 (a = 1482)
    assert (pmax_dp(36).pmax, pmax_dp(36).argmax) == (4, 22)
    assert (pmax_dp(59).pmax, pmax_dp(59).argmax) == (8, 34)
    res = pmax_dp(2519)
    assert (res.pmax, res.argmax) == (17, 1482)
    assert res.pmax >= 10 and steps_count(10, 2519) == 10


def test_dp_matches_naive_small_range():
    for n in range(1, 350):
        dp = pmax_dp(n)
        naive = pmax_naive(n)
        assert (dp.pmax, dp.argmax) == (naive.pmax, naive.argmax), f"n={n}"


def test_dp_matches_brute_oracle_random():
    rng = random.Random(99)
    for _ in range(12):
        n = rng.randint(1, 3000)
        res = pmax_dp(n)
        assert (res.pmax, res.argmax) == pmax_oracle(n)


def test_dp_dominates_random_starts():
    rng = random.Random(7)
    for n in (35, 1000, 99991):
        p = pmax_dp(n).pmax
        for _ in range(100):
            assert p >= steps_count(rng.randint(1, n), n)


def test_steps_table_entries():
    table = {}
    for start, block in steps_table(35):
        for i, v in enumerate(block):
            table[start + i] = int(v)
    assert len(table) == 35
    assert table[13] == 6 and table[22] == 7 and table[35] == 1
    assert table == {a: steps_oracle(a, 35) for a in range(1, 36)}


def test_steps_table_tiny_and_chunking():
    blocks = list(steps_table(4, chunk=3))
    assert [start for start, _ in blocks] == [1, 4]
    flat = [int(v) for _, block in blocks for v in block]
    assert flat == [1, 1, 2, 1]


def test_steps_table_last_entry_always_one():
    for n in (1, 17, 4096):
        *_, (start, block) = steps_table(n)
        assert int(block[-1]) == 1


def test_table_digest_is_stable():
    d1 = pmax_dp(5000, digest=True).table_digest
    d2 = pmax_dp(5000, digest=True).table_digest
    assert d1 == d2 and len(d1) == 8
    assert pmax_dp(5000).table_digest is None


def test_rejects_nonpositive():
    with pytest.raises(DomainError):
        pmax_dp(0)
    with pytest.raises(DomainError):
        pmax_naive(-3)
    with pytest.raises(DomainError):
        list(steps_table(0))


def test_kernel_and_python_fallback_agree():
    # the kernels are plain Python under the hood; run the uncompiled twin
    from piercelab import _kernels

    py_fill = getattr(_kernels.dp_fill, "py_func", _kernels.dp_fill)
    buf = np.zeros(36, np.uint16)
    assert tuple(int(v) for v in py_fill(35, buf)) == (7, 22)
    assert [int(buf[a]) for a in (13, 22, 35)] == [6, 7, 1]
