"""Exact continuous piecewise-linear maps on a closed rational interval.

All function data is held as :class:`fractions.Fraction`; nothing here ever
touches a float.  A :class:`PwlFunction` is stored as its sorted breakpoint
list and is always kept in canonical form (no interior breakpoint collinear
with its neighbours), so ``==`` is structural equality of the maps.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Rational = Fraction

#: default ceiling on breakpoints produced while composing
DEFAULT_PIECE_CAP = 10**7


class DomainError(ValueError):
    """A point or interval lies outside the domain of a map."""


class ResourceLimitExceeded(RuntimeError):
    """Composition would exceed the configured breakpoint cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"breakpoint cap exceeded: more than {cap} breakpoints (reached {needed})")
        self.needed = needed
        self.cap = cap


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or rational string ("p", "p/q", "0.25") to a Fraction.

    Floats are refused on purpose: function data must be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def covers(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def _canonical(xs: list, ys: list) -> tuple[tuple, tuple]:
    out_x = [xs[0]]
    out_y = [ys[0]]
    for i in range(1, len(xs)):
        x, y = xs[i], ys[i]
        if len(out_x) >= 2:
            x0, y0 = out_x[-2], out_y[-2]
            x1, y1 = out_x[-1], out_y[-1]
            # drop the middle point when (x0,y0),(x1,y1),(x,y) are collinear
            if (y1 - y0) * (x - x1) == (y - y1) * (x1 - x0):
                out_x[-1] = x
                out_y[-1] = y
                continue
        out_x.append(x)
        out_y.append(y)
    return tuple(out_x), tuple(out_y)


@dataclass(frozen=True, eq=True)
class PwlFunction:
    """Continuous PWL map given by breakpoints ``(xs[i], ys[i])``.

    The constructor validates the breakpoint list and merges collinear
    points, so two maps that agree everywhere compare equal.
    """

    xs: tuple
    ys: tuple

    def __post_init__(self):
        xs = [as_rational(v) for v in self.xs]
        ys = [as_rational(v) for v in self.ys]
        if len(xs) != len(ys):
            raise ValueError("xs and ys differ in length")
        if len(xs) < 2:
            raise ValueError("a PWL function needs at least two breakpoints")
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise ValueError(f"breakpoint x-coordinates must be strictly increasing ({a} !< {b})")
        cx, cy = _canonical(xs, ys)
        object.__setattr__(self, "xs", cx)
        object.__setattr__(self, "ys", cy)

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "PwlFunction":
        pts = [(as_rational(x), as_rational(y)) for x, y in points]
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts))

    @property
    def breakpoints(self) -> tuple:
        return tuple(zip(self.xs, self.ys))

    @property
    def domain(self) -> Interval:
        return Interval(self.xs[0], self.xs[-1])

    @property
    def pieces(self) -> int:
        return len(self.xs) - 1

    @property
    def range(self) -> Interval:
        return Interval(min(self.ys), max(self.ys))

    def maps_into_itself(self) -> bool:
        return self.xs[0] <= min(self.ys) and max(self.ys) <= self.xs[-1]

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __repr__(self) -> str:
        pts = ", ".join(f"({format_rational(x)}, {format_rational(y)})" for x, y in self.breakpoints)
        return f"PwlFunction([{pts}])"


def pieces(f: PwlFunction) -> int:
    return f.pieces


def tent(mu) -> PwlFunction:
    """The tent map ``mu*x`` on [0,1/2], ``mu*(1-x)`` on [1/2,1]."""
    mu = as_rational(mu)
    return PwlFunction((Fraction(0), Fraction(1, 2), Fraction(1)), (Fraction(0), mu / 2, Fraction(0)))


def identity(lo=0, hi=1) -> PwlFunction:
    lo, hi = as_rational(lo), as_rational(hi)
    return PwlFunction((lo, hi), (lo, hi))


def evaluate(f: PwlFunction, x) -> Fraction:
    x = as_rational(x)
    xs, ys = f.xs, f.ys
    if x < xs[0] or x > xs[-1]:
        raise DomainError(f"{x} outside domain {f.domain}")
    i = bisect_right(xs, x) - 1
    if xs[i] == x:
        return ys[i]
    x0, x1 = xs[i], xs[i + 1]
    y0, y1 = ys[i], ys[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def compose(f: PwlFunction, g: PwlFunction, cap: int | None = DEFAULT_PIECE_CAP) -> PwlFunction:
    """Return ``f o g`` exactly.

    Each of f's breakpoints lying strictly inside the image of a piece of g
    is pulled back through that (affine) piece; together with g's own
    breakpoints this is the coarsest partition on which ``f o g`` is affine.
    """
    lo, hi = min(g.ys), max(g.ys)
    if lo < f.xs[0] or hi > f.xs[-1]:
        raise DomainError(f"range [{lo}, {hi}] of inner map not inside domain {f.domain} of outer map")
    fx, fy = f.xs, f.ys
    gx, gy = g.xs, g.ys
    out_x = [gx[0]]
    out_y = [evaluate(f, gy[0])]
    for i in range(len(gx) - 1):
        x0, x1 = gx[i], gx[i + 1]
        y0, y1 = gy[i], gy[i + 1]
        if y0 < y1:
            j0, j1 = bisect_right(fx, y0), bisect_left(fx, y1)
            idx = range(j0, j1)
        elif y0 > y1:
            j0, j1 = bisect_right(fx, y1), bisect_left(fx, y0)
            idx = range(j1 - 1, j0 - 1, -1)
        else:
            idx = ()
        if idx:
            inv = (x1 - x0) / (y1 - y0)
            for j in idx:
                out_x.append(x0 + (fx[j] - y0) * inv)
                out_y.append(fy[j])
        out_x.append(x1)
        out_y.append(evaluate(f, y1))
        if cap is not None and len(out_x) > cap:
            raise ResourceLimitExceeded(len(out_x), cap)
    return PwlFunction(tuple(out_x), tuple(out_y))


def iterate(f: PwlFunction, t: int, cap: int | None = DEFAULT_PIECE_CAP) -> PwlFunction:
    """``f`` composed with itself ``t`` times; ``t = 0`` gives the identity on the domain."""
    if t < 0:
        raise ValueError("iteration count must be nonnegative")
    if t == 0:
        return identity(f.xs[0], f.xs[-1])
    h = f
    for _ in range(t - 1):
        h = compose(f, h, cap)
    return h


def iterates(f: PwlFunction, t_max: int, cap: int | None = DEFAULT_PIECE_CAP):
    """Yield ``(t, f^t)`` for t = 1..t_max, reusing each composition."""
    h = f
    for t in range(1, t_max + 1):
        if t > 1:
            h = compose(f, h, cap)
        yield t, h


def image(f: PwlFunction, iv: Interval) -> Interval:
    """Exact ``[min, max]`` of f over ``iv``."""
    if iv.lo < f.xs[0] or iv.hi > f.xs[-1]:
        raise DomainError(f"{iv} outside domain {f.domain}")
    vals = [evaluate(f, iv.lo), evaluate(f, iv.hi)]
    j0, j1 = bisect_right(f.xs, iv.lo), bisect_left(f.xs, iv.hi)
    vals.extend(f.ys[j0:j1])
    return Interval(min(vals), max(vals))


def count_crossings(f: PwlFunction, x, y) -> int:
    """Number of times f crosses ``[x, y]``.

    Walk the graph left to right, recording each time the level ``x`` or
    ``y`` is attained; repeated hits of the same level collapse into one
    event.  Every switch between the two levels is one traversal, i.e.
    one crossing.  Touching a level at a local extremum counts as
    attaining it.
    """
    x, y = as_rational(x), as_rational(y)
    if not x < y:
        raise ValueError(f"crossing interval needs x < y, got [{x}, {y}]")
    ys = f.ys
    last = None
    count = 0

    def hit(level):
        nonlocal last, count
        if level != last:
            if last is not None:
                count += 1
            last = level

    v = ys[0]
    if v == x:
        hit(0)
    elif v == y:
        hit(1)
    for i in range(len(ys) - 1):
        v0, v1 = ys[i], ys[i + 1]
        if v0 < v1:
            if v0 <= x <= v1:
                hit(0)
            if v0 <= y <= v1:
                hit(1)
        elif v0 > v1:
            if v1 <= y <= v0:
                hit(1)
            if v1 <= x <= v0:
                hit(0)
    return count


class FixedPoints(NamedTuple):
    """Solutions of ``f(x) = x``: isolated roots plus whole segments on the diagonal."""

    roots: tuple
    segments: tuple

    def is_empty(self) -> bool:
        return not self.roots and not self.segments


def solve_equals_identity(f: PwlFunction) -> FixedPoints:
    xs, ys = f.xs, f.ys
    roots: list[Fraction] = []
    segs: list[list[Fraction]] = []
    for i in range(len(xs) - 1):
        x0, x1 = xs[i], xs[i + 1]
        d0, d1 = ys[i] - x0, ys[i + 1] - x1
        if d0 == 0 and d1 == 0:
            if segs and segs[-1][1] == x0:
                segs[-1][1] = x1
            else:
                segs.append([x0, x1])
            continue
        if d0 == 0:
            roots.append(x0)
        if d1 == 0:
            roots.append(x1)
        if (d0 < 0 < d1) or (d1 < 0 < d0):
            roots.append(x0 + d0 * (x1 - x0) / (d0 - d1))
    intervals = tuple(Interval(a, b) for a, b in segs)
    isolated = sorted({r for r in roots if not any(r in s for s in intervals)})
    return FixedPoints(tuple(isolated), intervals)


def indicator_pieces(f: PwlFunction, threshold) -> int:
    """Number of maximal intervals (points included) on which ``1[f(z) >= threshold]`` is constant."""
    c = as_rational(threshold)
    ys = f.ys
    states = [ys[0] >= c]
    for i in range(len(ys) - 1):
        d0, d1 = ys[i] - c, ys[i + 1] - c
        near_left = d0 if d0 != 0 else d1
        near_right = d1 if d1 != 0 else d0
        states.append(near_left >= 0)
        states.append(near_right >= 0)
        states.append(d1 >= 0)
    return 1 + sum(1 for a, b in zip(states, states[1:]) if a != b)
