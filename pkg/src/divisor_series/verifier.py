"""Monotone-sandwich grid verification, Sturm root counts, analytic spot
checks, and certificate emission.

The sandwich scheme: to certify lower(q) > upper(q) on a span where both
functions are increasing in q, it is enough to check
lower(cell_left) - upper(cell_right) > 0 on every cell of a grid tiling the
span.  Cell endpoints are exact rationals; every evaluation is an
outward-rounded enclosure, and a cell passes only when the enclosure of its
margin is strictly positive.  Certificates record the grid, the smallest
verified margin, the monotonicity premises taken as input, and pass/fail.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from mpmath import iv

from .intervals import (
    DomainError,
    Enclosure,
    Mode,
    interval_precision,
    to_ivmpf,
    working_precision,
    _float_down,
)
from .lemma_functions import (
    delta_polynomial,
    g0_polynomial,
    h1_raw,
    h2_raw,
    h3_raw,
    phi_antiderivative_raw,
    phi_limit_at_one,
    phi_prime_raw,
    theta_raw,
    u_raw,
    v_raw,
    v_prime_raw,
)
from .polynomials import Polynomial, sturm_root_count

SCHEMA_VERSION = 1

_SPOT_CHECK_SEED = 20260810
_SPOT_CHECK_PAIRS = 100


# -- grids ---------------------------------------------------------------------


@dataclass(frozen=True)
class GridSegment:
    start: Fraction
    step: Fraction
    count: int

    def __post_init__(self):
        if self.step <= 0 or self.count < 1:
            raise DomainError("grid segments need positive step and count")

    @property
    def end(self) -> Fraction:
        return self.start + self.count * self.step


@dataclass(frozen=True)
class GridSpec:
    segments: tuple[GridSegment, ...]

    def __post_init__(self):
        if not self.segments:
            raise DomainError("a grid needs at least one segment")
        for a, b in zip(self.segments, self.segments[1:]):
            if a.end != b.start:
                raise DomainError(f"grid segments leave a gap: {a.end} != {b.start}")

    @property
    def span(self) -> tuple[Fraction, Fraction]:
        return self.segments[0].start, self.segments[-1].end

    @property
    def total_cells(self) -> int:
        return sum(s.count for s in self.segments)

    def cells(self):
        """Yield (index, left, right) with exact rational endpoints."""
        idx = 0
        for seg in self.segments:
            for k in range(seg.count):
                yield idx, seg.start + k * seg.step, seg.start + (k + 1) * seg.step
                idx += 1

    def to_json_dict(self) -> dict:
        return {
            "segments": [
                {"start": str(s.start), "step": str(s.step), "count": s.count}
                for s in self.segments
            ]
        }


def lemma_2_4_ii_grid() -> GridSpec:
    """[0.117, 0.91]: coarse to 0.835, finer to 0.9, finest to 0.91."""
    return GridSpec((
        GridSegment(Fraction(117, 1000), Fraction(1, 1000), 718),
        GridSegment(Fraction(835, 1000), Fraction(1, 20000), 1300),
        GridSegment(Fraction(9, 10), Fraction(1, 500000), 5000),
    ))


def lemma_2_9_grid() -> GridSpec:
    """[0.91, 1.0] in 900 cells of width 1e-4."""
    return GridSpec((GridSegment(Fraction(91, 100), Fraction(1, 10000), 900),))


def lemma_2_4_i_v_prime_grid() -> GridSpec:
    """y-grid [2.145, 50] in steps of 0.005."""
    return GridSpec((GridSegment(Fraction(2145, 1000), Fraction(5, 1000), 9571),))


# -- certificates ----------------------------------------------------------------


@dataclass
class Certificate:
    """Machine-checkable record of one verification run.

    passed is True only for CERTIFIED runs with no failing cells and a
    strictly positive minimum margin.
    """

    target: str
    grid: Optional[GridSpec]
    cells_checked: int
    min_margin: float
    mode: Mode
    passed: bool
    failures: tuple[int, ...] = ()
    premises: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "target": self.target,
            "grid": self.grid.to_json_dict() if self.grid is not None else None,
            "cells_checked": self.cells_checked,
            "min_margin": self.min_margin,
            "mode": self.mode.value,
            "passed": self.passed,
            "failures": list(self.failures),
            "premises": list(self.premises),
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


# -- sandwich engine --------------------------------------------------------------


def _cell_margin(args) -> tuple[int, bool, float]:
    lower, upper, idx, left, right, certified = args
    lo_val = lower(left)
    hi_val = upper(right)
    if certified:
        margin = lo_val - hi_val
        return idx, margin.lo > 0, float(_float_down(margin.lo))
    margin = lo_val - hi_val
    return idx, margin > 0.0, margin


def sandwich_verify(
    lower: Callable[[Fraction], object],
    upper: Callable[[Fraction], object],
    grid: GridSpec,
    mode: Mode = Mode.CERTIFIED,
    target: str = "sandwich",
    premises: Sequence[str] = (),
    jobs: int = 1,
    details: Optional[dict] = None,
) -> Certificate:
    """Check lower(cell_left) - upper(cell_right) > 0 on every grid cell.

    The caller asserts (and should document via `premises`) that both
    functions are increasing on the grid span; under that premise a passing
    certificate proves lower > upper on the whole span.  Refining the grid
    can only grow cell margins, so min_margin of a 2x-refined run is never
    below ~0.99 of the coarse run's (up to outward-rounding slack).

    In CERTIFIED mode the callables must return Enclosure and a cell passes
    only when the margin enclosure is strictly positive; FAST margins are
    informational and the certificate never passes.
    """
    certified = mode is Mode.CERTIFIED
    tasks = [(lower, upper, idx, left, right, certified) for idx, left, right in grid.cells()]
    if jobs > 1:
        chunk = max(1, len(tasks) // (jobs * 8))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell_margin, tasks, chunksize=chunk))
    else:
        results = [_cell_margin(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    failures = tuple(idx for idx, ok, _ in results if not ok)
    min_margin = min(m for _, _, m in results)
    passed = certified and not failures and min_margin > 0
    return Certificate(
        target=target,
        grid=grid,
        cells_checked=len(results),
        min_margin=float(min_margin),
        mode=mode,
        passed=passed,
        failures=failures,
        premises=tuple(premises),
        details=details or {},
    )


# -- lemma-specific evaluators (module level so --jobs can pickle them) ---------


def _phi_integer_sum_iv(q_iv, k_max: int, half_last: bool = False):
    total = iv.mpf(0)
    qk = q_iv
    for k in range(1, k_max + 1):
        term = qk * (qk - q_iv * k + (k - 1)) / (1 - qk) ** 2
        if half_last and k == k_max:
            term = term / 2
        total = total + term
        qk = qk * q_iv
    return total


def w1_lower(q: Fraction) -> Enclosure:
    """W1(q) = integral of phi over [1, 40] as an antiderivative difference."""
    with interval_precision(working_precision()):
        q_iv = to_ivmpf(q)
        return Enclosure(phi_antiderivative_raw(q_iv, 40) - phi_antiderivative_raw(q_iv, 1))


def w2_upper(q: Fraction) -> Enclosure:
    """W2(q) = sum_{k=1}^{40} phi_q(k).

    The k = 1 term vanishes (phi_q(1) = 0 identically), so this sum equals
    the rectangle-rule value sum_{k=2}^{40} phi_q(k) that pairs with W1 in
    the error sum C_q(39); starting at k = 1 keeps the loop uniform.
    """
    with interval_precision(working_precision()):
        return Enclosure(_phi_integer_sum_iv(to_ivmpf(q), 40))


def j2_limit_exact() -> Fraction:
    """Limit of J2 at q -> 1-, from lim phi_q(k) = (k-1)/(2k), exactly."""
    total = sum(phi_limit_at_one(Fraction(k)) for k in range(1, 11))
    return total + phi_limit_at_one(Fraction(11)) / 2


#: Exact value of the J2 limit; reproduced by j2_limit_exact() and pinned here.
J2_LIMIT = Fraction(208609, 55440)


def j1_lower(q: Fraction) -> Enclosure:
    """J1(q) = integral of phi over [1, 11] minus 0.036."""
    with interval_precision(working_precision()):
        q_iv = to_ivmpf(q)
        integral = phi_antiderivative_raw(q_iv, 11) - phi_antiderivative_raw(q_iv, 1)
        return Enclosure(integral - to_ivmpf(Fraction(36, 1000)))


def j2_upper(q: Fraction) -> Enclosure:
    """J2(q) = sum_{k=1}^{10} phi_q(k) + phi_q(11)/2; exact limit at q = 1."""
    if q == 1:
        limit = j2_limit_exact()
        return Enclosure.from_fraction_pair(limit, limit)
    with interval_precision(working_precision()):
        return Enclosure(_phi_integer_sum_iv(to_ivmpf(q), 11, half_last=True))


def _w1_float(q: Fraction) -> float:
    qf = float(q)
    return phi_antiderivative_raw(qf, 40.0) - phi_antiderivative_raw(qf, 1.0)


def _w2_float(q: Fraction) -> float:
    qf = float(q)
    from .lemma_functions import phi_raw
    return sum(phi_raw(qf, float(k)) for k in range(1, 41))


def _j1_float(q: Fraction) -> float:
    qf = float(q)
    return phi_antiderivative_raw(qf, 11.0) - phi_antiderivative_raw(qf, 1.0) - 0.036


def _j2_float(q: Fraction) -> float:
    if q == 1:
        return float(j2_limit_exact())
    qf = float(q)
    from .lemma_functions import phi_raw
    return sum(phi_raw(qf, float(k)) for k in range(1, 11)) + phi_raw(qf, 11.0) / 2


# -- monotonicity spot checks -----------------------------------------------------


def _spot_check_monotone(
    fn: Callable[[Fraction], Enclosure],
    lo: Fraction,
    hi: Fraction,
    increasing: bool,
    pairs: int = _SPOT_CHECK_PAIRS,
    min_gap: Fraction = Fraction(1, 100),
) -> bool:
    """Certified ordering of fn at `pairs` random point pairs (seeded RNG)."""
    rng = random.Random(_SPOT_CHECK_SEED)
    span = hi - lo - min_gap
    for _ in range(pairs):
        a = lo + span * Fraction(rng.randrange(10**6), 10**6)
        b = a + min_gap + (hi - a - min_gap) * Fraction(rng.randrange(10**6), 10**6)
        va, vb = fn(a), fn(b)
        ok = va.strictly_below(vb) if increasing else vb.strictly_below(va)
        if not ok:
            return False
    return True


# -- lemma pipelines ---------------------------------------------------------------


def verify_lemma_2_4_i(mode: Mode = Mode.CERTIFIED) -> Certificate:
    """C_q(1) > 0 on (0, 0.117]: endpoint value of V, positivity of V' on a
    grid, and the closed-form chain C_q(1) = U/((q+1)^2 log^2 q),
    U >= q V(-log q), sampled over the span."""
    grid = lemma_2_4_i_v_prime_grid()
    premises = (
        "every term of V'(y) = (y^2-3)e^-y + 4y e^-2y + 3e^-3y is nonnegative for y >= sqrt(3)",
        "grid start 2.145 satisfies 2.145^2 = 4.601025 > 3 exactly, so the analytic"
        " positivity covers [2.145, inf); the grid evaluation witnesses it on [2.145, 50]",
        "U(q) >= q V(-log q) uses log(1+q) <= q and q - 1 - log(q) > 0",
    )
    checks_ok = True
    details: dict = {}
    wp = working_precision()
    with interval_precision(wp):
        y0 = -iv.log(to_ivmpf(Fraction(117, 1000)))
        v0 = Enclosure(v_raw(y0))
    details["v_at_minus_log_0.117"] = v0.to_floats()
    if not (v0.contained_in(Fraction(17, 10000), Fraction(27, 10000)) and v0.is_positive()):
        checks_ok = False

    # V' > 0 at every grid boundary point
    min_vp = None
    points = [grid.segments[0].start + k * grid.segments[0].step
              for k in range(grid.segments[0].count + 1)]
    with interval_precision(wp):
        for y in points:
            vp = Enclosure(v_prime_raw(to_ivmpf(y)))
            if not vp.is_positive():
                checks_ok = False
            lo_f = vp.to_floats()[0]
            min_vp = lo_f if min_vp is None else min(min_vp, lo_f)
    details["min_v_prime_on_grid"] = min_vp

    # chain samples over q in (0, 0.117]
    min_u = None
    min_c1 = None
    min_gap = None
    with interval_precision(wp):
        for k in range(1, 118):
            q = Fraction(k, 1000)
            q_iv = to_ivmpf(q)
            u_enc = Enclosure(u_raw(q_iv))
            c1 = u_enc / Enclosure((1 + q_iv) ** 2 * iv.log(q_iv) ** 2)
            gap = u_enc - Enclosure(q_iv * v_raw(-iv.log(q_iv)))
            if not (u_enc.is_positive() and c1.is_positive() and gap.lo >= 0):
                checks_ok = False
            min_u = min(min_u, u_enc.to_floats()[0]) if min_u is not None else u_enc.to_floats()[0]
            min_c1 = min(min_c1, c1.to_floats()[0]) if min_c1 is not None else c1.to_floats()[0]
            min_gap = min(min_gap, gap.to_floats()[0]) if min_gap is not None else gap.to_floats()[0]
    details["min_U_on_samples"] = min_u
    details["min_C1_on_samples"] = min_c1
    details["min_U_minus_qV_on_samples"] = min_gap
    details["chain_samples"] = 117

    passed = mode is Mode.CERTIFIED and checks_ok and (min_vp or 0) > 0
    return Certificate(
        target="2.4i",
        grid=grid,
        cells_checked=grid.total_cells,
        min_margin=min(min_vp, min_c1),
        mode=mode,
        passed=passed,
        failures=(),
        premises=premises,
        details=details,
    )


def verify_lemma_2_4_ii(mode: Mode = Mode.CERTIFIED, jobs: int = 1) -> Certificate:
    """C_q(39) > 0 on (0.117, 0.91] by the W1/W2 monotone sandwich."""
    premises = (
        "W1(q) = Phi_q(40) - Phi_q(1) and W2(q) = sum_{k=1}^{40} phi_q(k) are"
        " increasing in q (q -> phi_q(x) is increasing for each x >= 1)",
        "monotonicity spot-checked on 100 seeded random pairs",
    )
    details = {}
    if mode is Mode.CERTIFIED:
        ok1 = _spot_check_monotone(w1_lower, Fraction(117, 1000), Fraction(91, 100), True)
        ok2 = _spot_check_monotone(w2_upper, Fraction(117, 1000), Fraction(91, 100), True)
        details["monotonicity_spot_checks"] = bool(ok1 and ok2)
        lower, upper = w1_lower, w2_upper
    else:
        details["monotonicity_spot_checks"] = None
        lower, upper = _w1_float, _w2_float
    cert = sandwich_verify(
        lower, upper, lemma_2_4_ii_grid(), mode=mode, target="2.4ii",
        premises=premises, jobs=jobs, details=details,
    )
    if mode is Mode.CERTIFIED and not details["monotonicity_spot_checks"]:
        cert.passed = False
    return cert


def verify_lemma_2_9(mode: Mode = Mode.CERTIFIED, jobs: int = 1) -> Certificate:
    """D_q(10) > 0.036 on [0.91, 1) by the J1/J2 monotone sandwich; the last
    cell's right endpoint q = 1 uses the exact limit J2(1) = 208609/55440."""
    premises = (
        "J1 and J2 are increasing in q on [0.91, 1) (q -> phi_q(x) increasing)",
        "J2 extends to q = 1 by its exact rational limit 208609/55440,"
        " re-derived from lim phi_q(k) = (k-1)/(2k)",
        "monotonicity spot-checked on 100 seeded random pairs",
    )
    details = {"j2_limit": str(j2_limit_exact())}
    if j2_limit_exact() != J2_LIMIT:
        raise ArithmeticError("exact J2 limit does not match the pinned fixture")
    if mode is Mode.CERTIFIED:
        ok1 = _spot_check_monotone(j1_lower, Fraction(91, 100), Fraction(9999, 10000), True)
        ok2 = _spot_check_monotone(j2_upper, Fraction(91, 100), Fraction(9999, 10000), True)
        details["monotonicity_spot_checks"] = bool(ok1 and ok2)
        lower, upper = j1_lower, j2_upper
    else:
        details["monotonicity_spot_checks"] = None
        lower, upper = _j1_float, _j2_float
    cert = sandwich_verify(
        lower, upper, lemma_2_9_grid(), mode=mode, target="2.9",
        premises=premises, jobs=jobs, details=details,
    )
    if mode is Mode.CERTIFIED and not details["monotonicity_spot_checks"]:
        cert.passed = False
    return cert


def verify_lemma_2_5(mode: Mode = Mode.CERTIFIED) -> Certificate:
    """N_q >= 14 on [0.91, 1): Delta and G0 each have exactly one root in
    [0.91, 1] (Sturm), and the endpoint values pin their signs."""
    delta = delta_polynomial()
    g0 = g0_polynomial()
    a, b = Fraction(91, 100), Fraction(1)
    roots_delta = sturm_root_count(delta, a, b)
    roots_g0 = sturm_root_count(g0, a, b)
    delta_at_a = delta(a)
    g0_at_a = g0(a)
    delta_at_1 = delta(b)
    g0_at_1 = g0(b)
    checks_ok = (
        roots_delta == 1
        and roots_g0 == 1
        and delta_at_a > 0
        and g0_at_a < 0
        and delta_at_1 == 0
        and g0_at_1 == 0
    )
    details = {
        "delta_roots_in_0.91_1": roots_delta,
        "g0_roots_in_0.91_1": roots_g0,
        "delta_at_0.91": float(delta_at_a),
        "g0_at_0.91": float(g0_at_a),
        "delta_at_1_is_zero": delta_at_1 == 0,
        "g0_at_1_is_zero": g0_at_1 == 0,
    }
    premises = (
        "Delta > 0 on [0.91, 1) follows from one root in [0.91, 1], Delta(0.91) > 0,"
        " Delta(1) = 0; likewise G0 < 0 from G0(0.91) < 0, G0(1) = 0",
        "-log(q) <= (1-q) + (11/20)(1-q)^2 bridges G/(1-q) <= G0 wherever Delta > 0",
        "G(q) = a_q(14), so G < 0 places the inflection point N_q beyond 14",
    )
    return Certificate(
        target="2.5",
        grid=None,
        cells_checked=2,
        min_margin=float(min(delta_at_a, -g0_at_a)),
        mode=mode,
        passed=mode is Mode.CERTIFIED and checks_ok,
        failures=(),
        premises=premises,
        details=details,
    )


def _h_enclosure(fn, q: Fraction) -> Enclosure:
    with interval_precision(working_precision()):
        return Enclosure(fn(to_ivmpf(q)))


def verify_lemma_2_8(mode: Mode = Mode.CERTIFIED) -> Certificate:
    """phi'_q(x) >= -0.035 for q in [0.91, 1), x >= 1, via the h1/h2/h3
    envelope of -Theta_q(14) and monotonicity endpoints."""
    premises = (
        "h1 is increasing, h2 and h3 decreasing on (0,1) (integral representations);"
        " spot-checked on 100 seeded random pairs",
        "h1 < lim_{q->1} h1 = 1/14, so h1 (h2+h3) <= (h2(0.91)+h3(0.91))/14 on [0.91, 1)",
        "phi' >= Theta at and beyond the inflection point, and Theta_q is increasing,"
        " so phi'_q(x) >= Theta_q(14) >= -(h2(0.91)+h3(0.91))/14 for x >= 1",
    )
    details: dict = {}
    checks_ok = True
    lo, hi = Fraction(91, 100), Fraction(1) - Fraction(1, 10**6)
    ok_h1 = _spot_check_monotone(lambda q: _h_enclosure(h1_raw, q), lo, hi, True)
    ok_h2 = _spot_check_monotone(lambda q: _h_enclosure(h2_raw, q), lo, hi, False)
    ok_h3 = _spot_check_monotone(lambda q: _h_enclosure(h3_raw, q), lo, hi, False)
    details["h_monotonicity_spot_checks"] = bool(ok_h1 and ok_h2 and ok_h3)
    checks_ok &= ok_h1 and ok_h2 and ok_h3

    h1_near_one = _h_enclosure(h1_raw, Fraction(1) - Fraction(1, 10**9))
    details["h1_near_1"] = h1_near_one.to_floats()
    checks_ok &= h1_near_one.strictly_below(Fraction(1, 14))

    with interval_precision(working_precision()):
        q91 = to_ivmpf(Fraction(91, 100))
        envelope = Enclosure((h2_raw(q91) + h3_raw(q91)) / 14)
    details["envelope_(h2+h3)/14_at_0.91"] = envelope.to_floats()
    checks_ok &= envelope.contained_in(Fraction(33, 1000), Fraction(35, 1000))
    bound_ok = envelope.hi < float(Fraction(35, 1000))
    checks_ok &= bound_ok

    # -Theta_q(14) <= h1 (h2 + h3) on sampled q (inequality (1-q)/log q <= -q)
    min_env_gap = None
    with interval_precision(working_precision()):
        for k in range(0, 10):
            q = Fraction(91, 100) + k * Fraction(9, 1000)
            q_iv = to_ivmpf(q)
            gap = Enclosure(
                h1_raw(q_iv) * (h2_raw(q_iv) + h3_raw(q_iv)) + theta_raw(q_iv, 14)
            )
            g = gap.to_floats()[0]
            min_env_gap = g if min_env_gap is None else min(min_env_gap, g)
            if not gap.lo >= 0:
                checks_ok = False
    details["min_envelope_slack"] = min_env_gap

    # direct spot grid: phi' >= -0.035 on sampled (q, x)
    threshold = Fraction(-35, 1000)
    min_phi_prime = None
    qs = [Fraction(91, 100) + k * Fraction(1, 100) for k in range(9)]
    qs += [Fraction(999, 1000), Fraction(9999, 10000)]
    xs = [1, 2, 3, 5, 8, 11, 14, 17, 20, 35, 50, 100, 200]
    with interval_precision(working_precision()):
        for q in qs:
            q_iv = to_ivmpf(q)
            for x in xs:
                val = Enclosure(phi_prime_raw(q_iv, x))
                lo_f = val.to_floats()[0]
                min_phi_prime = lo_f if min_phi_prime is None else min(min_phi_prime, lo_f)
                if not val.strictly_above(threshold):
                    checks_ok = False
    details["min_phi_prime_on_grid"] = min_phi_prime
    details["grid_points"] = len(qs) * len(xs)

    return Certificate(
        target="2.8",
        grid=None,
        cells_checked=len(qs) * len(xs),
        min_margin=float(Fraction(35, 1000)) - envelope.to_floats()[1],
        mode=mode,
        passed=mode is Mode.CERTIFIED and bool(checks_ok),
        failures=(),
        premises=premises,
        details=details,
    )


LEMMA_VERIFIERS = {
    "2.4i": verify_lemma_2_4_i,
    "2.4ii": verify_lemma_2_4_ii,
    "2.5": verify_lemma_2_5,
    "2.8": verify_lemma_2_8,
    "2.9": verify_lemma_2_9,
}


def verify_lemma(lemma_id: str, mode: Mode = Mode.CERTIFIED, jobs: int = 1) -> Certificate:
    """Run one lemma pipeline by id ('2.4i', '2.4ii', '2.5', '2.8', '2.9')."""
    if lemma_id not in LEMMA_VERIFIERS:
        raise DomainError(f"unknown lemma id {lemma_id!r}; "
                          f"choose from {sorted(LEMMA_VERIFIERS)}")
    fn = LEMMA_VERIFIERS[lemma_id]
    if lemma_id in ("2.4ii", "2.9"):
        return fn(mode=mode, jobs=jobs)
    return fn(mode=mode)


#: Exact roll-up margin 36/1000 - 35/2000 - 35/8000 = 113/8000 = 0.014125.
THEOREM_3_2_MARGIN = Fraction(36, 1000) - Fraction(35, 2000) - Fraction(35, 8000)


def combine_theorem_3_2(certificates: dict[str, Certificate]) -> Certificate:
    """Roll up the five ingredient certificates into the F-monotonicity
    verdict: sum of trapezoid errors > 0.036 - 0.035/2 - 0.035/8 > 0."""
    required = ("2.4i", "2.4ii", "2.5", "2.8", "2.9")
    missing = [k for k in required if k not in certificates]
    if missing:
        raise DomainError(f"missing ingredient certificates: {missing}")
    all_passed = all(certificates[k].passed for k in required)
    margin = THEOREM_3_2_MARGIN
    if margin != Fraction(113, 8000) or margin <= 0:
        raise ArithmeticError("roll-up margin arithmetic is broken")
    details = {
        "margin_exact": str(margin),
        "margin_decimal": float(margin),
        "ingredients": {k: certificates[k].passed for k in required},
    }
    return Certificate(
        target="thm3.2",
        grid=None,
        cells_checked=len(required),
        min_margin=float(margin),
        mode=Mode.CERTIFIED,
        passed=all_passed,
        failures=tuple(i for i, k in enumerate(required) if not certificates[k].passed),
        premises=("case q <= 0.91 from 2.4i/2.4ii; case q > 0.91 from 2.5/2.8/2.9",),
        details=details,
    )
