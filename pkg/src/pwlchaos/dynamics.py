"""Periodic orbits of PWL interval maps and the Sharkovsky ordering."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .pwl import (
    DEFAULT_PIECE_CAP,
    Interval,
    PwlFunction,
    ResourceLimitExceeded,
    evaluate,
    format_rational,
    iterate,
    solve_equals_identity,
)


class ForcingViolation(AssertionError):
    """A period required by Sharkovsky forcing was not found: cycle detection is broken."""


@dataclass(frozen=True, order=True)
class SharkovskyKey:
    """``n = 2**exponent * odd``."""

    exponent: int
    odd: int

    @classmethod
    def of(cls, n: int) -> "SharkovskyKey":
        if n < 1:
            raise ValueError("periods are positive integers")
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        return cls(e, n)

    @property
    def n(self) -> int:
        return (1 << self.exponent) * self.odd

    @property
    def power_of_two(self) -> bool:
        return self.odd == 1

    def rank(self) -> tuple:
        # smaller rank = further left in the ordering
        if self.odd > 1:
            return (0, self.exponent, self.odd)
        return (1, -self.exponent, 0)


def sharkovsky_rank(n: int) -> tuple:
    return SharkovskyKey.of(n).rank()


def sharkovsky_precedes(a: int, b: int) -> bool:
    """True iff ``a`` is strictly left of ``b`` (a forces b)."""
    return sharkovsky_rank(a) < sharkovsky_rank(b)


def sharkovsky_sorted(ns) -> list[int]:
    return sorted(ns, key=sharkovsky_rank)


def orbit_of(f: PwlFunction, x0: Fraction, limit: int) -> list[Fraction] | None:
    """Orbit of ``x0`` if it returns to ``x0`` within ``limit`` steps, else None."""
    pts = [x0]
    x = evaluate(f, x0)
    while x != x0:
        if len(pts) >= limit:
            return None
        pts.append(x)
        x = evaluate(f, x)
    return pts


def least_period(f: PwlFunction, x0, limit: int) -> int | None:
    orb = orbit_of(f, Fraction(x0), limit)
    return None if orb is None else len(orb)


@dataclass(frozen=True)
class Cycle:
    """Exact periodic orbit listed in iteration order, starting at its smallest point.

    ``family`` is set when the orbit was drawn from a segment of ``f^n``
    lying on the diagonal: then uncountably many points share this period
    and the orbit is only a representative.
    """

    points: tuple
    period: int
    family: Interval | None = None

    def __post_init__(self):
        if len(self.points) != self.period:
            raise ValueError("orbit length differs from period")
        if len(set(self.points)) != self.period:
            raise ValueError("orbit points are not distinct")

    def verify(self, f: PwlFunction) -> bool:
        n = self.period
        for i, x in enumerate(self.points):
            if evaluate(f, x) != self.points[(i + 1) % n]:
                return False
        return True

    @property
    def sorted_points(self) -> tuple:
        return tuple(sorted(self.points))

    def format(self) -> str:
        line = f"period={self.period} orbit=" + ",".join(format_rational(p) for p in self.points)
        if self.family is not None:
            line += f" family={self.family}"
        return line


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def _segment_representative(f: PwlFunction, seg: Interval, n: int, cap) -> Fraction | None:
    """A point of ``seg`` with least period exactly ``n``, or None if none exists.

    Preference: the midpoint; failing that, the midpoint of the leftmost gap
    left after removing every point of ``seg`` with a smaller period.
    """
    mid = seg.midpoint
    if least_period(f, mid, n) == n:
        return mid
    banned: list[Interval] = []
    for d in _divisors(n):
        sol = solve_equals_identity(iterate(f, d, cap))
        banned.extend(Interval(r, r) for r in sol.roots if r in seg)
        banned.extend(
            Interval(max(s.lo, seg.lo), min(s.hi, seg.hi)) for s in sol.segments if s.hi >= seg.lo and s.lo <= seg.hi
        )
    banned.sort(key=lambda iv: (iv.lo, iv.hi))
    cursor = seg.lo
    gaps: list[tuple[Fraction, Fraction]] = []
    for b in banned:
        if b.lo > cursor:
            gaps.append((cursor, b.lo))
        cursor = max(cursor, b.hi)
    if cursor < seg.hi:
        gaps.append((cursor, seg.hi))
    for lo, hi in gaps:
        cand = (lo + hi) / 2
        if least_period(f, cand, n) == n:
            return cand
    return None


def find_cycles(f: PwlFunction, n: int, cap: int | None = DEFAULT_PIECE_CAP) -> list[Cycle]:
    """All cycles of least period exactly ``n``, sorted by their smallest point.

    Raises :class:`ResourceLimitExceeded` when ``f^n`` exceeds ``cap``
    breakpoints, which is distinct from returning an empty list.
    """
    if n < 1:
        raise ValueError("period must be positive")
    if not f.maps_into_itself():
        raise ValueError("map does not send its domain into itself")
    fn = iterate(f, n, cap)
    sol = solve_equals_identity(fn)
    seen: set[Fraction] = set()
    cycles: list[Cycle] = []
    for r in sol.roots:
        if r in seen:
            continue
        orb = orbit_of(f, r, n)
        if orb is None or len(orb) != n:
            continue
        seen.update(orb)
        cycles.append(_normalised(orb, n, None))
    for seg in sol.segments:
        rep = _segment_representative(f, seg, n, cap)
        if rep is None or rep in seen:
            continue
        orb = orbit_of(f, rep, n)
        seen.update(orb)
        cycles.append(_normalised(orb, n, seg))
    cycles.sort(key=lambda c: c.points[0])
    return cycles


def _normalised(orb: list, n: int, family) -> Cycle:
    k = orb.index(min(orb))
    return Cycle(tuple(orb[k:] + orb[:k]), n, family)


def candidate_periods(search_cap: int) -> list[int]:
    """1..search_cap in Sharkovsky order, greatest (most forcing) first."""
    return sharkovsky_sorted(range(1, search_cap + 1))


@dataclass
class PrimePeriodResult:
    """Outcome of a bounded prime-period search.

    ``key`` is None when no period up to ``search_cap`` was found.  The
    answer is only certified relative to the searched candidates: periods
    beyond the cap are never examined.
    """

    key: SharkovskyKey | None
    search_cap: int
    cycles: list[Cycle] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    @property
    def period(self) -> int | None:
        return None if self.key is None else self.key.n

    def describe(self) -> str:
        if self.key is None:
            text = f"none found up to {self.search_cap}"
        else:
            text = f"{self.key.n} (up to cap {self.search_cap})"
        if self.skipped:
            text += " skipped=" + ",".join(map(str, self.skipped))
        return text


def prime_period(f: PwlFunction, search_cap: int, cap: int | None = DEFAULT_PIECE_CAP) -> PrimePeriodResult:
    """Sharkovsky-greatest period ``<= search_cap`` that f has."""
    skipped = []
    for n in candidate_periods(search_cap):
        try:
            cyc = find_cycles(f, n, cap)
        except ResourceLimitExceeded:
            skipped.append(n)
            continue
        if cyc:
            return PrimePeriodResult(SharkovskyKey.of(n), search_cap, cyc, skipped)
    return PrimePeriodResult(None, search_cap, [], skipped)


@dataclass
class ForcingReport:
    n: int
    cap: int
    witnesses: list[tuple[int, Cycle]]
    skipped: list[int]

    def lines(self) -> Iterator[str]:
        for m, c in self.witnesses:
            yield f"{self.n} forces {m}: {c.format()}"
        for m in self.skipped:
            yield f"{self.n} forces {m}: skipped (piece cap)"


def verify_forcing(f: PwlFunction, n: int, cap: int, piece_cap: int | None = DEFAULT_PIECE_CAP) -> ForcingReport:
    """Check that every period forced by ``n`` (and ``<= cap``) is present.

    A missing forced period means cycle detection is wrong, since the
    forcing theorem guarantees it; that is raised as :class:`ForcingViolation`.
    """
    if not find_cycles(f, n, piece_cap):
        raise ValueError(f"map has no cycle of period {n}")
    witnesses = []
    skipped = []
    for m in candidate_periods(cap):
        if not sharkovsky_precedes(n, m):
            continue
        try:
            cyc = find_cycles(f, m, piece_cap)
        except ResourceLimitExceeded:
            skipped.append(m)
            continue
        if not cyc:
            raise ForcingViolation(f"period {n} present but forced period {m} not found")
        witnesses.append((m, cyc[0]))
    return ForcingReport(n, cap, witnesses, skipped)


def format_cycle_report(cycles) -> str:
    """``period=<n> orbit=...`` lines sorted by period then by first point."""
    rows = sorted(cycles, key=lambda c: (c.period, c.points[0]))
    return "".join(c.format() + "\n" for c in rows)
