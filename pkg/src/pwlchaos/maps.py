"""Map library: tent maps, canonical periodic fixtures, grid approximations of smooth maps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from pathlib import Path
from typing import Callable

from .pwl import PwlFunction, as_rational, tent

ROUNDING_DENOMINATOR = 10**15


def period3_map() -> PwlFunction:
    """Orbit 1 -> 2 -> 3 -> 1 on [1, 3]."""
    return PwlFunction.from_points([(1, 2), (2, 3), (3, 1)])


def period5_map() -> PwlFunction:
    """Orbit 1 -> 3 -> 4 -> 2 -> 5 -> 1 on [1, 5]; has period 5 but not period 3."""
    return PwlFunction.from_points([(1, 3), (2, 5), (3, 4), (4, 2), (5, 1)])


def period4_map() -> PwlFunction:
    """``-x+5`` on [1,2], ``-2x+7`` on [2,3], ``x-2`` on [3,4]: prime period 4, linear crossing growth."""
    return PwlFunction.from_points([(1, 4), (2, 3), (3, 1), (4, 2)])


def flip_map() -> PwlFunction:
    """``1 - x`` on [0, 1]."""
    return PwlFunction.from_points([(0, 1), (1, 0)])


CANONICAL = {3: period3_map, 4: period4_map, 5: period5_map, 2: flip_map}


def _round(v) -> Fraction:
    if isinstance(v, Fraction) and v.denominator <= ROUNDING_DENOMINATOR:
        return v
    q = Fraction(v)
    return Fraction(round(q * ROUNDING_DENOMINATOR), ROUNDING_DENOMINATOR)


def approximate_map(func: Callable, n: int, lo=0, hi=1) -> PwlFunction:
    """PWL interpolant of ``func`` on ``n + 1`` uniform grid points of [lo, hi].

    Exact rational values with denominator up to 10^15 are kept as they
    are; everything else (floats included) is rounded to that denominator.
    """
    if n < 2:
        raise ValueError("grid needs N >= 2")
    lo, hi = as_rational(lo), as_rational(hi)
    xs = [lo + (hi - lo) * Fraction(i, n) for i in range(n + 1)]
    return PwlFunction(tuple(xs), tuple(_round(func(x)) for x in xs))


def logistic(r) -> Callable[[Fraction], Fraction]:
    r = as_rational(r)
    return lambda x: r * x * (1 - x)


def golden_ratio_above(tol: Fraction = Fraction(1, 10**12)) -> Fraction:
    """Rational q with ``phi < q < phi + tol``, phi = (1 + sqrt 5)/2."""
    d = 1
    while True:
        scale = 10**d
        s = isqrt(5 * scale * scale) + 1  # s/scale > sqrt(5)
        q = Fraction(scale + s, 2 * scale)
        lower = q - tol
        if (2 * lower - 1) ** 2 < 5 or 2 * lower < 1:
            return q
        d += 1


@dataclass(frozen=True)
class MapSpec:
    """Parsed ``kind:params`` map description.

    kinds: ``tent:<mu>``, ``logistic:<r>[:<N>]``, ``canonical:<n>`` (n in 2..5),
    ``file:<path>``.
    """

    kind: str
    params: tuple
    text: str

    @property
    def approximate(self) -> bool:
        return self.kind == "logistic"

    def build(self) -> PwlFunction:
        from .formats import parse_pwl

        if self.kind == "tent":
            return tent(self.params[0])
        if self.kind == "logistic":
            r, n = self.params
            return approximate_map(logistic(r), n)
        if self.kind == "canonical":
            return CANONICAL[self.params[0]]()
        if self.kind == "file":
            return parse_pwl(Path(self.params[0]).read_text())
        raise ValueError(f"unknown map kind {self.kind}")  # pragma: no cover


def parse_map_spec(text: str) -> MapSpec:
    kind, _, rest = text.partition(":")
    try:
        if kind == "tent":
            mu = as_rational(rest)
            if not 0 < mu <= 2:
                raise ValueError("tent parameter must lie in (0, 2]")
            return MapSpec(kind, (mu,), text)
        if kind == "logistic":
            parts = rest.split(":")
            r = as_rational(parts[0])
            n = int(parts[1]) if len(parts) > 1 else 4096
            if not 0 <= r <= 4:
                raise ValueError("logistic parameter must lie in [0, 4]")
            return MapSpec(kind, (r, n), text)
        if kind == "canonical":
            n = int(rest)
            if n not in CANONICAL:
                raise ValueError(f"no canonical fixture for period {n}")
            return MapSpec(kind, (n,), text)
        if kind == "file":
            if not rest:
                raise ValueError("file: needs a path")
            return MapSpec(kind, (rest,), text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad map spec {text!r}: {exc}") from exc
    raise ValueError(f"bad map spec {text!r}: kind must be tent, logistic, canonical or file")
