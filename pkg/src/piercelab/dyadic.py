"""Dyadic occupancy profiles of orbits and the structural checks on them.

A nonzero term x lives in exactly one band (A, 2A] with A = 2^i; admitting
i = -1 (the band holding x = 1) makes the bands a true partition, so the
occupancy counts sum to the orbit length exactly.  All pass/fail
comparisons run in exact rational arithmetic; floats appear only in fitted
slopes, which are reporting artifacts, never verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .trajectory import DomainError, Trajectory, mod_step

#: orbits at or below this modulus may use the compiled sweep kernels
KERNEL_N_LIMIT = 1 << 30


def bucket_exponent(x: int) -> int:
    """The unique i with 2^i < x <= 2^(i+1); i = -1 exactly for x = 1."""
    if x < 1:
        raise DomainError(f"no dyadic band holds {x}")
    return (x - 1).bit_length() - 1


def scale_of(exponent: int) -> Fraction:
    """The band's left endpoint A = 2^i as an exact rational (i may be -1)."""
    if exponent >= 0:
        return Fraction(2**exponent)
    return Fraction(1, 2 ** (-exponent))


@dataclass(frozen=True)
class DyadicProfile:
    """Occupancy count per dyadic band for one orbit."""

    n: int
    start: int
    buckets: tuple[tuple[int, int], ...]  # (exponent, count), ascending exponent

    def count(self, exponent: int) -> int:
        for e, c in self.buckets:
            if e == exponent:
                return c
        return 0

    @property
    def total(self) -> int:
        return sum(c for _, c in self.buckets)


@dataclass(frozen=True)
class ArchBucketCheck:
    exponent: int
    count: int
    bound: Fraction  # n/(2A) + 2, exact
    passed: bool


@dataclass(frozen=True)
class ArchReport:
    n: int
    start: int
    buckets: tuple[ArchBucketCheck, ...]

    @property
    def passed(self) -> bool:
        return all(b.passed for b in self.buckets)


@dataclass(frozen=True)
class MonotoneReport:
    passed: bool
    first_violation: int | None  # orbit index j of the offending pair


@dataclass(frozen=True)
class DivisibilityReport:
    passed: bool
    counterexample: tuple[int, int, int] | None  # (j, a_j, a_{j+1})


@dataclass(frozen=True)
class TwoStepCert:
    """Exact two-step decomposition of consecutive terms a, a-h, a-h-h'.

    b and k are the integers with a*b = n + h and (a-h)*(b+k) = n + h';
    h0 = n*k / (b*(b+k)) is the predicted value of h and residual = h - h0.
    """

    a: int
    h: int
    h_prime: int
    b: int
    k: int
    h0: Fraction
    residual: Fraction

    @property
    def n(self) -> int:
        return self.a * self.b - self.h


@dataclass(frozen=True)
class BoundFit:
    """Scale points (n, statistic) with their log-log least-squares fit.

    fitted_exponent is the slope, fitted_constant the exponential of the
    intercept; points with statistic 0 stay in scale_points but cannot
    enter the fit.  The fit is a reporting device: thresholds on it are
    artifact-level configuration, not exact claims.
    """

    scale_points: tuple[tuple[int, object], ...]
    fitted_exponent: float
    fitted_constant: float

    @property
    def max_statistic(self):
        return max(s for _, s in self.scale_points)

    def csv_lines(self) -> list[str]:
        lines = ["n,statistic"]
        for n, s in self.scale_points:
            if isinstance(s, Fraction):
                lines.append(f"{n},{s.numerator}/{s.denominator}")
            else:
                lines.append(f"{n},{float(s):.6g}")
        return lines

    def to_json_dict(self) -> dict:
        pts = []
        for n, s in self.scale_points:
            if isinstance(s, Fraction):
                pts.append({"n": n, "statistic": f"{s.numerator}/{s.denominator}"})
            else:
                pts.append({"n": n, "statistic": float(s)})
        return {
            "scale_points": pts,
            "fitted_exponent": self.fitted_exponent,
            "fitted_constant": self.fitted_constant,
        }


def profile(traj: Trajectory) -> DyadicProfile:
    """Count how many orbit terms fall in each dyadic band."""
    counts: dict[int, int] = {}
    for x in traj.terms[:-1]:
        e = bucket_exponent(x)
        counts[e] = counts.get(e, 0) + 1
    return DyadicProfile(
        n=traj.n,
        start=traj.terms[0],
        buckets=tuple(sorted(counts.items())),
    )


def arch_bound(n: int, exponent: int) -> Fraction:
    """The occupancy ceiling n/(2A) + 2 for the band at 2^exponent."""
    return Fraction(n, 1) / (2 * scale_of(exponent)) + 2


def check_arch_bound(prof: DyadicProfile) -> ArchReport:
    """Compare every band's occupancy against n/(2A) + 2, exactly."""
    checks = []
    for e, c in prof.buckets:
        bound = arch_bound(prof.n, e)
        checks.append(ArchBucketCheck(exponent=e, count=c, bound=bound, passed=c <= bound))
    return ArchReport(n=prof.n, start=prof.start, buckets=tuple(checks))


def check_quotient_monotone(traj: Trajectory) -> MonotoneReport:
    """Quotients floor(n/a_j) must strictly increase along nonzero terms <= n."""
    prev = None
    for j, x in enumerate(traj.terms[:-1]):
        if x > traj.n:
            continue
        q = traj.quotients[j]
        if prev is not None and q <= prev:
            return MonotoneReport(passed=False, first_violation=j)
        prev = q
    return MonotoneReport(passed=True, first_violation=None)


def check_divisibility(traj: Trajectory) -> DivisibilityReport:
    """Each nonzero term must divide n + (a_j - a_{j+1})."""
    t = traj.terms
    for j in range(len(t) - 1):
        if (traj.n + t[j] - t[j + 1]) % t[j] != 0:
            return DivisibilityReport(passed=False, counterexample=(j, t[j], t[j + 1]))
    return DivisibilityReport(passed=True, counterexample=None)


def two_step_decompose(a_prev2: int, a_prev1: int, a_curr: int, n: int) -> TwoStepCert:
    """Exact certificate for a consecutive orbit triple.

    Validates that the three values really are consecutive orbit terms and
    produces the integers b, k plus the rational prediction h0 for h.
    """
    if not (1 <= a_prev2 <= n and 1 <= a_prev1):
        raise DomainError(
            f"two-step decomposition needs 1 <= a_prev1 and 1 <= a_prev2 <= n, "
            f"got ({a_prev2}, {a_prev1}) with n={n}"
        )
    if mod_step(n, a_prev2) != a_prev1 or mod_step(n, a_prev1) != a_curr:
        raise DomainError(
            f"({a_prev2}, {a_prev1}, {a_curr}) are not consecutive orbit terms for n={n}"
        )
    h = a_prev2 - a_prev1
    h_prime = a_prev1 - a_curr
    num_b = n + h
    num_bk = n + h_prime
    if num_b % a_prev2 != 0 or num_bk % a_prev1 != 0:
        # impossible for genuine consecutive terms; guards internal misuse
        raise DomainError("two-step divisibility failed; inputs are not orbit terms")
    b = num_b // a_prev2
    k = num_bk // a_prev1 - b
    h0 = Fraction(n * k, b * (b + k))
    return TwoStepCert(a=a_prev2, h=h, h_prime=h_prime, b=b, k=k, h0=h0, residual=h - h0)


def certificates(traj: Trajectory) -> list[TwoStepCert]:
    """Two-step certificates for every consecutive triple with a_{j-2} <= n."""
    t = traj.terms
    return [
        two_step_decompose(t[j - 2], t[j - 1], t[j], traj.n)
        for j in range(2, len(t))
        if t[j - 2] <= traj.n
    ]


def fit_loglog(points) -> BoundFit:
    """Least-squares slope of log(statistic) against log(n)."""
    pts = tuple(points)
    fit_pts = [(n, s) for n, s in pts if n > 1 and s > 0]
    if len(fit_pts) < 2 or len({n for n, _ in fit_pts}) < 2:
        return BoundFit(scale_points=pts, fitted_exponent=0.0, fitted_constant=0.0)
    xs = [math.log(n) for n, _ in fit_pts]
    ys = [math.log(float(s)) for _, s in fit_pts]
    m = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    slope = (m * sxy - sx * sy) / (m * sxx - sx * sx)
    intercept = (sy - slope * sx) / m
    return BoundFit(
        scale_points=pts,
        fitted_exponent=slope,
        fitted_constant=math.exp(intercept),
    )


def default_survey_h(n: int, a_scale) -> int:
    """Survey window of the shape 10*A/T0 with T0 = ceil(n^(1/3 - 2/177))."""
    t0 = math.ceil(n ** float(Fraction(1, 3) - Fraction(2, 177)))
    return max(1, math.ceil(10 * Fraction(a_scale) / t0))


def residual_survey(certs, a_scale, h_window: int | None = None) -> BoundFit:
    """Distribution of |residual| / (A*H/n) over a certificate corpus.

    The prediction is that this statistic stays O(1); the fit records how
    it moves with n, and max_statistic on the result is its exact peak.
    h_window defaults to the 10*A/T0 shape at the corpus's largest modulus.
    """
    certs = list(certs)
    if not certs:
        raise DomainError("residual survey needs a non-empty certificate corpus")
    if h_window is None:
        h_window = default_survey_h(max(c.n for c in certs), a_scale)
    if h_window < 1:
        raise DomainError(f"survey window must be >= 1, got {h_window}")
    a_scale = Fraction(a_scale)
    points = []
    for cert in certs:
        stat = abs(cert.residual) * cert.n / (a_scale * h_window)
        points.append((cert.n, stat))
    return fit_loglog(points)


def _sqrt_stat_python(n: int) -> tuple[int, int, int]:
    """Pure-integer twin of the compiled band-statistic kernel."""
    best_t, best_as, best_a = 0, 1, 1
    for a in range(1, n + 1):
        counts: dict[int, int] = {}
        x = a
        while x:
            e = bucket_exponent(x)
            counts[e] = counts.get(e, 0) + 1
            x = n % x
        for e, t in counts.items():
            cand_as = 2 ** (e + 1)
            if t * t * best_as > best_t * best_t * cand_as:
                best_t, best_as, best_a = t, cand_as, a
    return best_t, best_as, best_a


def max_band_statistic(n: int) -> tuple[float, int, Fraction, int]:
    """S(n) = max over starts and bands of T(A)/sqrt(A).

    Returns (statistic, T, A, argmax start).  The maximization compares
    T^2/A in integers, so the winner is exact; only the returned float
    involves a square root.
    """
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    if n <= KERNEL_N_LIMIT:
        from . import _kernels

        t, a_scaled, a = (int(v) for v in _kernels.sqrt_stat_max(n))
    else:
        t, a_scaled, a = _sqrt_stat_python(n)
    scale = Fraction(a_scaled, 2)
    return t / math.sqrt(float(scale)), t, scale, a


def sqrt_bound_fit(n_values) -> BoundFit:
    """Fit how the peak band statistic S(n) moves across moduli.

    The divisor-based ceiling predicts S(n) grows slower than any power;
    the fitted slope should therefore be near 0.
    """
    ns = sorted(set(int(n) for n in n_values))
    if len(ns) < 3:
        raise DomainError("slope fitting needs at least 3 distinct moduli")
    points = []
    for n in ns:
        stat, _, _, _ = max_band_statistic(n)
        points.append((n, stat))
    return fit_loglog(points)
