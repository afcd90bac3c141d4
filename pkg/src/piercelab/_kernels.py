"""Compiled integer kernels for the table passes and corpus sweeps.

All loops are 64-bit integer arithmetic; callers must keep n < 2**40 so the
shifted dyadic-bound comparisons cannot overflow int64.  Bound checks here
use integer cross-multiplication, which is the exact rational comparison
T <= n/(2A) + 2 written without denominators.
"""

import numpy as np

from ._jit import njit

# Step counters are uint16; a count that would not fit is a hard error,
# signalled by the (-1, -1) return, never wrapped.
COUNTER_MAX = 0xFFFF


@njit(cache=True)
def dp_fill(n, buf):
    """Fill buf[1..n] with step counts and return (pmax, smallest argmax).

    Walks a ascending by blocks of constant quotient q = n // a, so the
    remainder updates by r -= q and the loop performs no division at all.
    Returns (-1, -1) if any count would exceed the uint16 range.
    """
    best = 0
    besta = 1
    a = 1
    while a <= n:
        q = n // a
        hi = n // q
        r = n - q * a
        for x in range(a, hi + 1):
            if r == 0:
                s = 1
            else:
                s = 1 + int(buf[r])
            if s > COUNTER_MAX:
                return -1, -1
            buf[x] = np.uint16(s)
            if s > best:
                best = s
                besta = x
            r -= q
        a = hi + 1
    return best, besta


@njit(cache=True)
def pmax_range(lo, hi, buf, out_p, out_a):
    """pmax and argmax for every n in [lo, hi]; buf must hold hi+1 entries.

    Returns 0 on success, 1 on counter overflow.
    """
    for n in range(lo, hi + 1):
        p, a = dp_fill(n, buf)
        if p < 0:
            return 1
        out_p[n - lo] = p
        out_a[n - lo] = a
    return 0


@njit(cache=True)
def orbit_check(a, n, counts):
    """Structural checks along one orbit; counts is int64 scratch of size >= 66.

    Returns (arch, mono, div, two, steps): violation counts of the dyadic
    occupancy bound, quotient monotonicity, the divisibility relation
    x | n + x - y, and two-step certificate integrality, plus the orbit
    length.  counts[b] accumulates occupancy of the dyadic band with
    exponent b - 1 (band (2^(b-1), 2^b]; b = 0 holds the term 1).
    """
    for i in range(66):
        counts[i] = 0
    mono = 0
    div = 0
    two = 0
    prev_q = -1
    p1 = -1
    x = a
    steps = 0
    while x != 0:
        v = x - 1
        b = 0
        while v != 0:
            v >>= 1
            b += 1
        counts[b] += 1
        y = n % x
        if (n + x - y) % x != 0:
            div += 1
        if x <= n:
            q = n // x
            if prev_q >= 0 and q <= prev_q:
                mono += 1
            prev_q = q
        if p1 >= 1 and p1 <= n:
            h = p1 - x
            hp = x - y
            if (n + h) % p1 != 0:
                two += 1
            if (n + hp) % x != 0:
                two += 1
        p1 = x
        x = y
        steps += 1
    arch = 0
    if counts[0] > n + 2:
        arch += 1
    for b in range(1, 66):
        t = counts[b]
        if t != 0 and (t << b) > n + (1 << (b + 1)):
            arch += 1
    return arch, mono, div, two, steps


@njit(cache=True)
def sweep_checks(n, a_lo, a_hi):
    """Run orbit_check over every start in [a_lo, a_hi] for one modulus.

    Returns (arch, mono, div, two, orbits, steps) violation totals.
    """
    counts = np.zeros(66, np.int64)
    arch = 0
    mono = 0
    div = 0
    two = 0
    steps = 0
    for a in range(a_lo, a_hi + 1):
        va, vm, vd, vt, st = orbit_check(a, n, counts)
        arch += va
        mono += vm
        div += vd
        two += vt
        steps += st
    return arch, mono, div, two, a_hi - a_lo + 1, steps


@njit(cache=True)
def sqrt_stat_max(n):
    """Maximize T(A)^2 / A over all starts a in [1, n] and dyadic bands A.

    Works on the integer pair (T^2, 2A): T1/sqrt(A1) > T2/sqrt(A2) iff
    T1^2 * (2 A2) > T2^2 * (2 A1), so the comparison is exact.  Returns
    (best_T, best_2A, best_a) with 2A an integer even for the band A = 1/2.
    """
    counts = np.zeros(66, np.int64)
    best_t = 0
    best_as = 1
    best_a = 1
    for a in range(1, n + 1):
        for i in range(66):
            counts[i] = 0
        x = a
        while x != 0:
            v = x - 1
            b = 0
            while v != 0:
                v >>= 1
                b += 1
            counts[b] += 1
            x = n % x
        for b in range(66):
            t = counts[b]
            if t != 0 and t * t * best_as > best_t * best_t * (1 << b):
                best_t = t
                best_as = 1 << b
                best_a = a
    return best_t, best_as, best_a


@njit(cache=True)
def orbit_length(a, n):
    """Step count of one orbit (compiled twin of trajectory.steps_count)."""
    x = a
    k = 0
    while x != 0:
        x = n % x
        k += 1
    return k
