"""Seeded invariant suites behind the `verify` command.

Each suite runs one module's documented invariants over a deterministic
corpus and reports per-invariant counts.  Bulk sweeps go through the
compiled kernels; a random subsample of every sweep is re-run through the
plain Python API so the kernel and the reference implementation certify
each other.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import dyadic, exponents, euler, pmax, witness
from .trajectory import pierce_digits, reconstruct, steps_count, trajectory

SUITE_NAMES = ("core", "dyadic", "exponent", "witness")


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    name: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _random_pairs(rng: random.Random, count: int, n_max: int):
    for _ in range(count):
        n = rng.randint(1, n_max)
        a = rng.randint(1, n)
        yield a, n


def core_suite(n_max: int = 2000, seed: int = 0, samples: int = 4000) -> SuiteReport:
    rng = random.Random(seed)
    checks = []

    ok = 0
    for a, n in _random_pairs(rng, samples, n_max):
        t = trajectory(a, n)
        t.check()
        ok += 1
    checks.append(Check("orbit invariants (decrease, terminal zero, recompute)", True, f"{ok} orbits"))

    ok = 0
    bad = None
    for a, n in _random_pairs(rng, samples, n_max):
        exp = pierce_digits(a, n)
        if list(exp.digits) != sorted(set(exp.digits)):
            bad = (a, n)
            break
        if reconstruct(exp) != Fraction(a, n):
            bad = (a, n)
            break
        ok += 1
    checks.append(
        Check(
            "digit monotonicity and exact reconstruction",
            bad is None,
            f"{ok} pairs" if bad is None else f"failed at {bad}",
        )
    )

    ok = 0
    bad = None
    for a, n in _random_pairs(rng, samples, n_max):
        if steps_count(a, n) != trajectory(a, n).length:
            bad = (a, n)
            break
        ok += 1
    checks.append(
        Check(
            "steps_count equals orbit length",
            bad is None,
            f"{ok} pairs" if bad is None else f"failed at {bad}",
        )
    )

    ok = 0
    bad = None
    for _ in range(samples):
        n = rng.randint(1, n_max)
        a = rng.randint(n + 1, 2 * n)
        if steps_count(a, n) != 2:
            bad = (a, n)
            break
        ok += 1
    checks.append(
        Check(
            "P(a, n) = 2 whenever a > n",
            bad is None,
            f"{ok} pairs" if bad is None else f"failed at {bad}",
        )
    )
    return SuiteReport("core", tuple(checks))


def _api_orbit_checks(a: int, n: int) -> tuple[bool, bool, bool, bool, int]:
    """Reference-path twin of the compiled orbit_check, via the public API."""
    t = trajectory(a, n)
    prof = dyadic.profile(t)
    arch_ok = dyadic.check_arch_bound(prof).passed
    mono_ok = dyadic.check_quotient_monotone(t).passed
    div_ok = dyadic.check_divisibility(t).passed
    two_ok = True
    try:
        dyadic.certificates(t)
    except Exception:
        two_ok = False
    return arch_ok, mono_ok, div_ok, two_ok, t.length


def dyadic_suite(
    n_max: int = 2000,
    seed: int = 0,
    random_pairs: int = 10**4,
    random_n_max: int = 10**7,
    api_subsample: int = 300,
) -> SuiteReport:
    from . import _kernels
    import numpy as np

    rng = random.Random(seed)
    checks = []

    arch = mono = div = two = orbits = 0
    for n in range(1, n_max + 1):
        va, vm, vd, vt, cnt, _ = _kernels.sweep_checks(n, 1, n)
        arch += int(va)
        mono += int(vm)
        div += int(vd)
        two += int(vt)
        orbits += int(cnt)
    checks.append(
        Check(
            f"full sweep a <= n <= {n_max}: occupancy bound",
            arch == 0,
            f"{orbits} orbits, {arch} violations",
        )
    )
    checks.append(Check(f"full sweep a <= n <= {n_max}: quotient monotonicity", mono == 0, f"{mono} violations"))
    checks.append(Check(f"full sweep a <= n <= {n_max}: divisibility relation", div == 0, f"{div} violations"))
    checks.append(Check(f"full sweep a <= n <= {n_max}: two-step integrality", two == 0, f"{two} violations"))

    counts = np.zeros(66, np.int64)
    arch = mono = div = two = 0
    pairs = list(_random_pairs(rng, random_pairs, random_n_max))
    for a, n in pairs:
        va, vm, vd, vt, _ = _kernels.orbit_check(a, n, counts)
        arch += int(va)
        mono += int(vm)
        div += int(vd)
        two += int(vt)
    checks.append(
        Check(
            f"{random_pairs} random pairs up to n = {random_n_max}: all four relations",
            arch + mono + div + two == 0,
            f"violations arch={arch} mono={mono} div={div} two={two}",
        )
    )

    agree = True
    witness_pair = None
    for a, n in rng.sample(pairs, min(api_subsample, len(pairs))):
        api = _api_orbit_checks(a, n)
        va, vm, vd, vt, st = _kernels.orbit_check(a, n, counts)
        kern = (int(va) == 0, int(vm) == 0, int(vd) == 0, int(vt) == 0, int(st))
        if api != kern:
            agree = False
            witness_pair = (a, n)
            break
    checks.append(
        Check(
            "kernel agrees with the Python API on a subsample",
            agree,
            "ok" if agree else f"disagreement at {witness_pair}",
        )
    )

    bad = None
    for a, n in _random_pairs(rng, 2000, n_max):
        t = trajectory(a, n)
        if dyadic.profile(t).total != t.length:
            bad = (a, n)
            break
    checks.append(
        Check(
            "band partition: occupancy counts sum to orbit length",
            bad is None,
            "ok" if bad is None else f"failed at {bad}",
        )
    )
    return SuiteReport("dyadic", tuple(checks))


def exponent_suite(seed: int = 0, random_points: int = 1000, audit_points: int = 10**4) -> SuiteReport:
    rng = random.Random(seed)
    checks = []

    bad = None
    for _ in range(random_points):
        d = Fraction(rng.randint(0, 400), rng.randint(1, 4000))
        l = Fraction(rng.randint(0, 400), rng.randint(1, 4000))
        pt = exponents.gamma(d, l)
        recomputed = min(
            l - 2 * d,
            d,
            Fraction(4, 63) - Fraction(349, 84) * d - Fraction(13, 84) * l,
        )
        if pt.gamma != recomputed:
            bad = (d, l)
            break
    checks.append(
        Check(
            f"gamma exactness on {random_points} random rational points",
            bad is None,
            "ok" if bad is None else f"failed at {bad}",
        )
    )

    named = exponents.gamma(Fraction(2, 177), Fraction(6, 177))
    checks.append(
        Check(
            "gamma(2/177, 6/177) = 2/177 with all three forms equal",
            named.gamma == Fraction(2, 177) and len(set(named.forms)) == 1,
            f"forms {tuple(str(f) for f in named.forms)}",
        )
    )

    opt = exponents.optimize_gamma()
    checks.append(
        Check(
            "optimizer returns (2/177, 2/59) with value 2/177",
            (opt.delta, opt.lam, opt.gamma) == (Fraction(2, 177), Fraction(2, 59), Fraction(2, 177)),
            f"got ({opt.delta}, {opt.lam}, {opt.gamma})",
        )
    )

    beaten = None
    for _ in range(audit_points):
        d = Fraction(rng.randint(0, 10**6), 18 * 10**6 + 1)  # delta < 1/18
        lmax = Fraction(1, 3) - d
        l = lmax * Fraction(rng.randint(0, 10**6), 10**6)
        pt = exponents.gamma(d, l)
        if pt.gamma > opt.gamma:
            beaten = (d, l, pt.gamma)
            break
    checks.append(
        Check(
            f"optimum beats {audit_points} random feasible points",
            beaten is None,
            "ok" if beaten is None else f"beaten by {beaten}",
        )
    )

    b0 = exponents.exponent_budget(0, 0)
    bstar = exponents.exponent_budget(Fraction(2, 177), Fraction(2, 59))
    checks.append(
        Check(
            "budget identities at (0,0) and the optimum",
            b0.overall == Fraction(1, 3) and bstar.overall == Fraction(1, 3) - Fraction(2, 177),
            f"got {b0.overall} and {bstar.overall}",
        )
    )

    nested = True
    prev = euler.inv_e_terms(4)
    for m in range(5, 40):
        cur = euler.inv_e_terms(m)
        if not (prev.lo <= cur.lo <= cur.hi <= prev.hi and cur.width < prev.width):
            nested = False
            break
        prev = cur
    checks.append(Check("1/e brackets are nested and shrinking", nested))

    sign_ok = True
    for k in range(1, 41):
        br = exponents.tail_factor_bracket(k)
        if not br.lo > 1:
            sign_ok = False
            break
    checks.append(Check("tail factor exceeds 1 for k = 1..40 (certified)", sign_ok))
    return SuiteReport("exponent", tuple(checks))


def witness_suite(seed: int = 0, count: int = 100, c: float = 0.3) -> SuiteReport:
    rng = random.Random(seed)
    checks = []

    failures = []
    max_valid_c = math.inf
    for _ in range(count):
        n = rng.randint(10**4, 10**12)
        rep = witness.validate_witness(n, c=c)
        target = math.floor(rep.predicted_floor)
        if rep.validated_k < target:
            failures.append((n, rep.validated_k, target))
            if rep.validated_k >= 1:
                max_valid_c = min(
                    max_valid_c, rep.validated_k * math.log(math.log(n)) / math.log(n)
                )
    detail = f"{count} moduli at c={c}"
    if failures:
        detail = f"{len(failures)} failures, e.g. {failures[0]}; largest working c <= {max_valid_c:.3f}"
    checks.append(Check("archimedean witness validates to c*log n/log log n", not failures, detail))

    bad = None
    for m in range(2, 31):
        w = witness.arithmetic_witness(m)
        if w.guaranteed_length != m or steps_count(w.start, max(w.n, 1)) != m:
            bad = m
            break
    checks.append(
        Check(
            "lcm witness gives P(m, lcm(1..m)-1) = m for m = 2..30",
            bad is None,
            "ok" if bad is None else f"failed at m={bad}",
        )
    )

    bad = None
    for n in (10**6, 10**9, 10**12):
        kmax = math.floor(c * math.log(n) / math.log(math.log(n)))
        for k in range(1, kmax + 1):
            if not witness.check_elementary_inequality(k, n):
                bad = (k, n)
                break
    checks.append(
        Check(
            "elementary inequality holds through the predicted range",
            bad is None,
            "ok" if bad is None else f"failed at (k, n) = {bad}",
        )
    )

    bad = None
    for _ in range(200):
        n = rng.randint(10, 10**9)
        k = rng.randint(0, 8)
        br = witness.predicted_b(k, n)
        tighter = witness.predicted_b(k, n, max_width=br.width / 1024)
        if not (br.lo <= tighter.lo <= tighter.hi <= br.hi):
            bad = (k, n)
            break
    checks.append(
        Check(
            "refining a b_k bracket never escapes the wider bracket",
            bad is None,
            "ok" if bad is None else f"failed at {bad}",
        )
    )
    return SuiteReport("witness", tuple(checks))


def run_suites(names, n_max: int = 2000, seed: int = 0) -> list[SuiteReport]:
    """Run the named suites (or all of them) and return their reports."""
    wanted = list(SUITE_NAMES) if "all" in names else list(names)
    unknown = [w for w in wanted if w not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown suite(s): {unknown}; choose from {SUITE_NAMES + ('all',)}")
    reports = []
    for name in wanted:
        if name == "core":
            reports.append(core_suite(n_max=n_max, seed=seed))
        elif name == "dyadic":
            reports.append(dyadic_suite(n_max=min(n_max, 2000), seed=seed))
        elif name == "exponent":
            reports.append(exponent_suite(seed=seed))
        elif name == "witness":
            reports.append(witness_suite(seed=seed))
    return reports
