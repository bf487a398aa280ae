"""Optimality ratios, size sweeps and declaration audits."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .correlation import CorrelationReport, measure_theta_max
from .field import build_field, prime_power
from .generators import (gen_prop1_family, gen_thm41_family, gen_thm42_family,
                         smallest_prime_factor)
from .interleave import interleave_family
from .model import QcssFamily, SequenceFamily, qcss_lower_bound

TREND_KINDS = ("prop1", "thm41", "thm42")
K_RULE_NOTE = "K rule: smallest nontrivial divisor of q-1 (a tool choice, not fixed by the construction)"

CASE_TOL = 1e-6


def optimality_ratio(report: CorrelationReport, M: int, K: int, N: int) -> float:
    """Measured maximum divided by the lower bound for (M, K, N)."""
    bound = qcss_lower_bound(M, K, N)
    if bound == 0:
        raise ValueError(f"the bound is zero for M = K = {K}; the ratio is undefined")
    return report.measured_max / bound


def smallest_nontrivial_divisor(m: int) -> int:
    """Smallest divisor d of m with 1 < d < m."""
    for d in range(2, math.isqrt(m) + 1):
        if m % d == 0:
            return d
    raise ValueError(f"{m} has no divisor strictly between 1 and itself")


@dataclass(frozen=True)
class TrendRow:
    size: int
    M: int
    K: int
    N: int
    measured: float
    bound: float
    ratio: float
    predicted: float


@dataclass
class TrendResult:
    kind: str
    rows: list[TrendRow]
    direction: str
    notes: list[str] = field(default_factory=list)


def _direction(ratios: Sequence[float]) -> str:
    if len(ratios) < 2:
        return "single point"
    diffs = [b - a for a, b in zip(ratios, ratios[1:])]
    if all(d < 0 for d in diffs):
        return "decreasing"
    if all(d > 0 for d in diffs):
        return "increasing"
    return "non-monotone"


def _prop1_point(q: int, K: int | None, engine: str):
    p, n = prime_power(q)
    if K is None:
        K = smallest_nontrivial_divisor(q - 1)
    if (q - 1) % K or not 1 < K < q - 1:
        raise ValueError(f"K={K} is not a nontrivial divisor of q-1={q - 1}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fam = interleave_family(gen_prop1_family(build_field(p, n)), K)
    return fam, math.sqrt(q)


def ratio_trend(kind: str, points: Iterable[int], flocks: Sequence[int | None] | None = None,
                engine: str = "auto") -> TrendResult:
    """Measure the family at each size and tabulate measured/bound ratios.

    ``points`` are field orders q for ``prop1`` (interleaved with flock
    size K, by default the smallest nontrivial divisor of q-1) and odd
    lengths N for ``thm41``/``thm42``. Invalid points are skipped with a
    note. ``predicted`` holds the construction's stated maximum
    (sqrt(q) or N) for cross-checking the measurement.
    """
    if kind not in TREND_KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(TREND_KINDS)}")
    points = list(points)
    if flocks is not None and len(flocks) != len(points):
        raise ValueError("flocks must have one entry per point")
    notes: list[str] = []
    if kind == "prop1" and (flocks is None or any(k is None for k in flocks)):
        notes.append(K_RULE_NOTE)

    rows = []
    for idx, size in sorted(enumerate(points), key=lambda t: t[1]):
        try:
            if kind == "prop1":
                fam, predicted = _prop1_point(size, flocks[idx] if flocks else None, engine)
            elif kind == "thm41":
                fam, predicted = gen_thm41_family(size), float(size)
            else:
                fam, predicted = gen_thm42_family(size), float(size)
        except ValueError as exc:
            notes.append(f"skipped {size}: {exc}")
            warnings.warn(f"skipped sweep point {size}: {exc}", stacklevel=2)
            continue
        report = measure_theta_max(fam, engine)
        M, K, N = fam.dims
        bound = qcss_lower_bound(M, K, N)
        rows.append(TrendRow(size, M, K, N, report.measured_max, bound,
                             report.measured_max / bound, predicted))
        if kind != "prop1" and smallest_prime_factor(size) == 3:
            notes.append(f"N={size} has smallest prime factor 3: M/K is about 2, the ratio stays away from 1")
    return TrendResult(kind, rows, _direction([r.ratio for r in rows]), notes)


# -- case structure and table constraints --------------------------------------

def expected_support(fam: SequenceFamily | QcssFamily) -> set[float] | None:
    """Magnitudes the construction allows off the in-phase peak, or None for unknown kinds."""
    kind = fam.params.get("kind", "")
    M, K, N = fam.dims
    if kind == "prop1":
        return {0.0, 1.0, math.sqrt(N + 1)}
    if kind == "prop1-interleaved":
        return {0.0, 1.0, math.sqrt(K * N + 1)}
    if kind in ("thm41", "thm42", "thm41-del"):
        return {0.0, float(N)}
    return None


def _support_matches(support: Iterable[float], allowed: set[float]) -> bool:
    return all(any(abs(s - a) <= CASE_TOL for a in allowed) for s in support)


def _is_odd_prime(v: int) -> bool:
    return v > 2 and smallest_prime_factor(v) == v


def _table_row(M, K, N, theta, p=None, n=None, r=None) -> dict[int, Callable[[], bool]]:
    """Constraint checks for table rows 10-18, keyed by row number."""
    tol = 1e-9

    def need(*vals):
        return all(v is not None for v in vals)

    def flocked(total):
        return K > 1 and total % K == 0 and N == total // K

    return {
        10: lambda: need(p, n) and _is_odd_prime(p) and M == p**n and flocked(p**n - 1)
        and theta <= p ** (n / 2) + 1 + tol,
        11: lambda: need(n) and n % 2 == 0 and M == 2 ** (n // 2) + 1 and flocked(2**n - 1)
        and theta <= 2 ** (n / 2) + 1 + tol,
        12: lambda: need(p, n) and _is_odd_prime(p) and n % 2 == 0 and M == p ** (n // 2)
        and flocked(p**n - 1) and theta <= p ** (n / 2) + 1 + tol,
        13: lambda: need(n) and M == 2**n + 1 and flocked(2**n - 1) and theta <= 2 ** (n / 2) + 1 + tol,
        14: lambda: need(n) and M == 2**n and flocked(2 ** (n + 1) - 2)
        and theta <= 2 ** ((n + 1) / 2) + 2 + tol,
        15: lambda: need(p) and _is_odd_prime(p) and M == p and flocked(p * p - p) and theta <= p + tol,
        16: lambda: need(p, n) and M == (r if r is not None else M) and (p**n - 1) % M == 0
        and flocked(p**n - 1) and theta <= p ** (n / 2) + tol,
        17: lambda: N > 1 and N % 2 == 1 and K == N and M == (smallest_prime_factor(N) - 1) * N
        and abs(theta - N) <= tol,
        18: lambda: N > 1 and N % 2 == 1 and K == N - 1 and M == (smallest_prime_factor(N) - 1) * N
        and abs(theta - N) <= tol,
    }


KIND_TO_ROW = {"prop1-interleaved": 16, "thm41": 17, "thm42": 18, "thm41-del": 18}


def table_row_check(fam: QcssFamily, row: int | None = None) -> tuple[int, bool] | None:
    """Check declared (M, K, N, theta) against a parameter-table row.

    The row is taken from ``row``, the ``table_row`` metadata entry or the
    family kind. Asymptotic K = o(.) conditions cannot be certified for a
    single family and are not checked. Returns None when no row applies.
    """
    if row is None:
        if "table_row" in fam.params:
            row = int(fam.params["table_row"])
        else:
            row = KIND_TO_ROW.get(fam.params.get("kind", ""))
    if row is None or fam.declared is None:
        return None

    def opt(key):
        v = fam.params.get(key)
        return int(v) if v not in (None, "") else None

    M, K, N = fam.dims
    checks = _table_row(M, K, N, fam.declared, opt("p"), opt("n"), opt("r"))
    if row not in checks:
        raise ValueError(f"no constraint check for table row {row}; rows 10-18 are supported")
    return row, bool(checks[row]())


@dataclass(frozen=True)
class Verdict:
    measured: float
    declared: float | None
    bound: float | None
    within_declared: bool
    above_bound: bool
    case_structure: bool | None
    support: list[float]
    expected: list[float] | None
    table_row: tuple[int, bool] | None
    report: CorrelationReport

    @property
    def passed(self) -> bool:
        flags = [self.within_declared, self.above_bound]
        if self.case_structure is not None:
            flags.append(self.case_structure)
        if self.table_row is not None:
            flags.append(self.table_row[1])
        return all(flags)


def verify_declared(fam: SequenceFamily | QcssFamily, engine: str = "auto") -> Verdict:
    """Measure the family and audit it against its declaration, the bound and its case values."""
    report = measure_theta_max(fam, engine)
    measured = report.measured_max
    declared = fam.declared
    within = declared is not None and measured <= declared + 1e-6
    bound = report.bound
    above = bound is None or measured >= bound - 1e-9
    allowed = expected_support(fam)
    case_ok = None if allowed is None else _support_matches(report.support, allowed)
    table = table_row_check(fam) if isinstance(fam, QcssFamily) else None
    return Verdict(measured, declared, bound, within, above, case_ok, report.support,
                   sorted(allowed) if allowed is not None else None, table, report)
