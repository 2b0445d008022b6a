"""Alternating-point datasets and depth-width classification-error bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .covering import compare_rho_power, floor_rho_power, rho
from .pwl import DEFAULT_PIECE_CAP, PwlFunction, as_rational, count_crossings, evaluate, format_rational, iterate
from .relu import piece_bound


class InsufficientCrossings(ValueError):
    """The iterate does not cross ``[x, y]`` often enough for the requested dataset."""


class BoundViolation(AssertionError):
    """The oracle fell below the analytic lower bound: the oracle or the dataset is wrong."""


@dataclass(frozen=True)
class LabeledDataset:
    points: tuple
    threshold: Fraction
    n: int
    k: int | None = None
    p: int | None = None
    m: int = 1

    def __post_init__(self):
        labels = [lab for _, lab in self.points]
        if any(lab != i % 2 for i, lab in enumerate(labels)):
            raise ValueError("labels must alternate 0,1,0,1,...")
        if len(labels) % 2:
            raise ValueError("dataset size must be even")
        xs = [x for x, _ in self.points]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("points must be strictly increasing")

    @property
    def labels(self) -> list[int]:
        return [lab for _, lab in self.points]

    def lines(self) -> str:
        return "".join(f"{format_rational(x)},{lab}\n" for x, lab in self.points)


def half_floor_rho_power(p: int, k: int) -> int:
    """``n = floor(floor(rho_{p-2}**k) / 2)``, certified exactly."""
    return floor_rho_power(p - 2, k) // 2


def _level_hits(h: PwlFunction, x: Fraction, y: Fraction) -> list[tuple[Fraction, int]]:
    """Collapsed sequence of (first position, level) where h attains x (0) or y (1)."""
    xs, ys = h.xs, h.ys
    events: list[tuple[Fraction, int]] = []

    def hit(pos, level):
        if not events or events[-1][1] != level:
            events.append((pos, level))

    def at(i, level_value):
        v0, v1 = ys[i], ys[i + 1]
        return xs[i] + (level_value - v0) * (xs[i + 1] - xs[i]) / (v1 - v0)

    if ys[0] == x:
        hit(xs[0], 0)
    elif ys[0] == y:
        hit(xs[0], 1)
    for i in range(len(ys) - 1):
        v0, v1 = ys[i], ys[i + 1]
        if v0 < v1:
            if v0 <= x <= v1:
                hit(at(i, x), 0)
            if v0 <= y <= v1:
                hit(at(i, y), 1)
        elif v0 > v1:
            if v1 <= y <= v0:
                hit(at(i, y), 1)
            if v1 <= x <= v0:
                hit(at(i, x), 0)
    return events


def build_alternating_dataset(
    f: PwlFunction, m: int, p: int, k: int, x, y, cap: int | None = DEFAULT_PIECE_CAP
) -> LabeledDataset:
    """``2n`` points on which ``h = f^(k m)`` alternates between ``x`` (label 0) and ``y`` (label 1).

    Points are exact preimages, the leftmost one of each traversal.
    """
    x, y = as_rational(x), as_rational(y)
    if not x < y:
        raise ValueError("need x < y")
    h = iterate(f, k * m, cap)
    n = half_floor_rho_power(p, k)
    crossings = count_crossings(h, x, y)
    if crossings < 2 * n:
        raise InsufficientCrossings(f"f^{k * m} crosses [{x}, {y}] {crossings} times, need {2 * n}")
    events = _level_hits(h, x, y)
    if events and events[0][1] == 1:
        events = events[1:]
    chosen = events[: 2 * n]
    if len(chosen) < 2 * n:  # pragma: no cover - guarded by the crossing count
        raise InsufficientCrossings("not enough alternating preimages")
    return LabeledDataset(tuple(chosen), (x + y) / 2, n, k, p, m)


def classification_error(g: PwlFunction, d: LabeledDataset) -> Fraction:
    wrong = sum(1 for x, lab in d.points if int(evaluate(g, x) >= d.threshold) != lab)
    return Fraction(wrong, len(d.points))


def oracle_min_error(d: LabeledDataset, pieces: int) -> Fraction:
    """Least error of any labelling made of at most ``pieces`` constant runs (DP over position, runs, value)."""
    if pieces < 1:
        raise ValueError("need at least one run")
    labels = d.labels
    runs = min(pieces, len(labels))
    inf = math.inf
    # best[j][v]: fewest errors so far using j runs, current run outputs v
    best = [[inf, inf] for _ in range(runs + 1)]
    best[1][0] = int(labels[0] != 0)
    best[1][1] = int(labels[0] != 1)
    for lab in labels[1:]:
        nxt = [[inf, inf] for _ in range(runs + 1)]
        for j in range(1, runs + 1):
            for v in (0, 1):
                stay = best[j][v]
                switch = best[j - 1][1 - v] if j > 1 else inf
                nxt[j][v] = min(stay, switch) + (lab != v)
        best = nxt
    return Fraction(min(min(row) for row in best[1:]), len(labels))


def error_lower_bound(n: int, l: int, u: int) -> Fraction:
    """``max(0, (n - 4 (2u)^l) / (2n))``."""
    return max(Fraction(0), Fraction(n - 4 * piece_bound(l, u), 2 * n))


def width_guarantees_quarter(p: int, k: int, l: int, u: int) -> bool:
    """Exact test of ``u <= rho_{p-2}^(k/l) / 8``, i.e. ``(8u)^l <= rho^k``."""
    return compare_rho_power(p - 2, k, Fraction((8 * u) ** l)) > 0


def u_max(p: int, k: int, l: int) -> int:
    """Largest width u with ``u <= rho_{p-2}^(k/l) / 8`` (0 if none)."""
    u = max(0, int(rho(p - 2) ** (k / l) / 8))
    while width_guarantees_quarter(p, k, l, u + 1):
        u += 1
    while u >= 1 and not width_guarantees_quarter(p, k, l, u):
        u -= 1
    return u


@dataclass
class ErrorBoundReport:
    l: int
    u: int
    n: int
    pieces: int
    runs: int
    bound: Fraction
    oracle: Fraction
    quarter_claimed: bool
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"l={self.l} u={self.u} n={self.n} pieces={self.pieces} runs={self.runs}",
            f"bound={format_rational(self.bound)} oracle={format_rational(self.oracle)}",
        ]
        if self.quarter_claimed:
            out.append("u <= rho^(k/l)/8: bound >= 1/4 holds")
        out.extend(self.notes)
        return out


def verify_error_bound(d: LabeledDataset, l: int, u: int) -> ErrorBoundReport:
    """Check the oracle against ``(n - 4(2u)^l)/(2n)`` for depth l, width u.

    A thresholded P-piece function changes sign at most once per piece, so
    it has at most P + 1 constant runs along the line; the oracle is run
    with that many runs so it never understates what such a network can do.
    """
    pieces = piece_bound(l, u)
    runs = pieces + 1
    bound = error_lower_bound(d.n, l, u)
    oracle = oracle_min_error(d, runs)
    if oracle < bound:
        raise BoundViolation(f"oracle {oracle} below bound {bound} at l={l}, u={u}")
    notes = []
    claimed = False
    if d.p is not None and d.k is not None and width_guarantees_quarter(d.p, d.k, l, u):
        if l >= 2:
            claimed = True
            if bound < Fraction(1, 4):
                raise BoundViolation(f"u={u} within the width threshold but bound {bound} < 1/4")
        else:
            notes.append("l=1: the 1/4 guarantee needs 4^l >= 8 and is not asserted")
    return ErrorBoundReport(l, u, d.n, pieces, runs, bound, oracle, claimed, notes)


@dataclass(frozen=True)
class TradeoffRow:
    l: int
    u_max: int
    bound_value: float

    @property
    def vacuous(self) -> bool:
        return self.u_max == 0


def tradeoff_table(p: int, k: int, l_range) -> list[TradeoffRow]:
    """Per depth l: the widest network still forced to error >= 1/4, and the threshold ``rho^(k/l)/8``."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    r = rho(p - 2)
    return [TradeoffRow(l, u_max(p, k, l), r ** (k / l) / 8) for l in l_range]


def tradeoff_csv(rows) -> str:
    out = ["l,u_max,bound"]
    out.extend(f"{row.l},{row.u_max},{row.bound_value:.12g}" for row in rows)
    return "\n".join(out) + "\n"


def tradeoff_text(rows) -> str:
    out = []
    for row in rows:
        line = f"l={row.l} u_max={row.u_max} threshold={row.bound_value:.12g}"
        if row.vacuous:
            line += " (bound vacuous at this depth)"
        out.append(line)
    return "\n".join(out) + "\n"
