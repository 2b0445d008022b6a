"""Covering graphs of periodic orbits and the crossing-growth bounds they certify."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dynamics import Cycle, SharkovskyKey, find_cycles, prime_period
from .pwl import (
    DEFAULT_PIECE_CAP,
    Interval,
    PwlFunction,
    count_crossings,
    evaluate,
    iterate,
    iterates,
)


class NoChainFound(ValueError):
    """The covering graph has no self-loop vertex on a directed cycle."""


@dataclass(frozen=True)
class CoveringGraph:
    """Intervals between consecutive orbit points and the cover relation.

    ``(i, j)`` in ``edges`` means interval i covers interval j: j lies
    inside the hull of the images of i's endpoints.
    """

    intervals: tuple
    edges: frozenset

    def successors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.edges if a == i)

    def self_loops(self) -> list[int]:
        return sorted(i for (i, j) in self.edges if i == j)

    def adjacency(self) -> tuple:
        """``A[j][i] = 1`` iff interval i covers interval j (the crossing recursion's orientation)."""
        k = len(self.intervals)
        return tuple(tuple(int((i, j) in self.edges) for i in range(k)) for j in range(k))


def build_covering_graph(f: PwlFunction, cycle: Cycle) -> CoveringGraph:
    if cycle.period < 2:
        raise ValueError("covering graph needs a cycle of period >= 2")
    beta = sorted(cycle.points)
    images = [evaluate(f, b) for b in beta]
    intervals = tuple(Interval(beta[i], beta[i + 1]) for i in range(len(beta) - 1))
    edges = set()
    for i in range(len(intervals)):
        hull = Interval(min(images[i], images[i + 1]), max(images[i], images[i + 1]))
        for j, iv in enumerate(intervals):
            if hull.covers(iv):
                edges.add((i, j))
    return CoveringGraph(intervals, frozenset(edges))


def chain_matrix(r: int) -> tuple:
    """The (r+1)x(r+1) adjacency of a directed (r+1)-cycle with a self-loop at vertex 0."""
    if r < 1:
        raise ValueError("r must be >= 1")
    rows = [[0] * (r + 1) for _ in range(r + 1)]
    rows[0][0] = 1
    for i in range(r):
        rows[i + 1][i] = 1
    rows[0][r] = 1
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class CoveringChain:
    """``J_0 .. J_r``: J_0 covers itself and J_1, J_i covers J_{i+1}, J_r covers J_0."""

    chain: tuple
    intervals: tuple

    @property
    def r(self) -> int:
        return len(self.chain) - 1

    @property
    def matrix_a(self) -> tuple:
        return chain_matrix(self.r)


def _distances_to(graph: CoveringGraph, target: int) -> dict[int, int]:
    preds: dict[int, list[int]] = {}
    for a, b in graph.edges:
        preds.setdefault(b, []).append(a)
    dist = {target: 0}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in preds.get(v, ()):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def extract_chain(graph: CoveringGraph) -> CoveringChain:
    """Shortest chain through a self-loop vertex.

    Minimal r first (smaller r means a larger growth rate), then smallest
    J_0 index, then the lexicographically smallest chain.
    """
    best = None
    for j0 in graph.self_loops():
        dist = _distances_to(graph, j0)
        succ = [v for v in graph.successors(j0) if v != j0 and v in dist]
        if not succ:
            continue
        r = min(dist[v] for v in succ)
        chain = [j0]
        v = min(v for v in succ if dist[v] == r)
        while v != j0:
            chain.append(v)
            step = dist[v] - 1
            v = min(w for w in graph.successors(v) if dist.get(w) == step)
        if best is None or (r, chain) < (best[0], best[1]):
            best = (r, chain)
    if best is None:
        raise NoChainFound("no vertex with a self-loop lies on a directed cycle of length >= 2")
    chain = tuple(best[1])
    return CoveringChain(chain, tuple(graph.intervals[i] for i in chain))


@dataclass(frozen=True)
class CrossingVector:
    t: int
    delta: tuple


def crossing_counts(h: PwlFunction, intervals: Sequence[Interval]) -> tuple:
    return tuple(count_crossings(h, iv.lo, iv.hi) for iv in intervals)


def crossing_vector(f: PwlFunction, chain: CoveringChain, t: int, cap: int | None = DEFAULT_PIECE_CAP) -> CrossingVector:
    """Crossings of ``f^t`` over each chain interval, in chain order."""
    h = iterate(f, t, cap)
    return CrossingVector(t, crossing_counts(h, chain.intervals))


def crossing_vectors(f: PwlFunction, intervals: Sequence[Interval], t_max: int, cap: int | None = DEFAULT_PIECE_CAP):
    """``CrossingVector`` for t = 1..t_max over arbitrary intervals, composing incrementally."""
    return [CrossingVector(t, crossing_counts(h, intervals)) for t, h in iterates(f, t_max, cap)]


def characteristic(r: int, lam: float) -> float:
    return lam ** (r + 1) - lam**r - 1


def rho(r: int, tol: float = 1e-15) -> float:
    """Root in (1, 2) of ``x^(r+1) - x^r - 1`` by bisection.

    Bisection stops once the bracket is narrower than ``tol`` (or cannot
    shrink further in double precision), so the error is below ``tol``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    lo, hi = 1.0, 2.0
    while True:
        mid = (lo + hi) / 2
        val = characteristic(r, mid)
        if hi - lo <= tol or mid in (lo, hi) or val == 0:
            return mid
        if val < 0:
            lo = mid
        else:
            hi = mid


def rho_bracket(r: int, width: Fraction = Fraction(1, 10**30)) -> tuple[Fraction, Fraction]:
    """Exact rational ``(lo, hi)`` with ``lo < rho_r < hi`` and ``hi - lo <= width``."""
    lo, hi = Fraction(1), Fraction(2)
    # work with dyadic endpoints to keep denominators small
    while hi - lo > width:
        mid = (lo + hi) / 2
        val = mid ** (r + 1) - mid**r - 1
        if val == 0:  # pragma: no cover - root is irrational
            return mid, mid
        if val < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def floor_rho_power(r: int, k: int) -> int:
    """Certified ``floor(rho_r ** k)``: bracket rho until both ends agree on the floor."""
    digits = 30 + k
    for _ in range(20):
        lo, hi = rho_bracket(r, Fraction(1, 10**digits))
        a, b = lo**k, hi**k
        if a.__floor__() == b.__floor__():
            return a.__floor__()
        digits *= 2
    raise ArithmeticError(f"could not certify floor(rho_{r}^{k})")


def compare_rho_power(r: int, k: int, value: Fraction) -> int:
    """Sign of ``rho_r**k - value`` decided with exact brackets (never 0 for rational ``value``)."""
    digits = 30 + k
    for _ in range(20):
        lo, hi = rho_bracket(r, Fraction(1, 10**digits))
        if lo**k > value:
            return 1
        if hi**k < value:
            return -1
        digits *= 2
    raise ArithmeticError(f"could not separate rho_{r}^{k} from {value}")


def matrix_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def matrix_power(a: Sequence[Sequence[int]], t: int) -> tuple:
    """Exact integer matrix power by repeated squaring."""
    n = len(a)
    result = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    base = tuple(tuple(row) for row in a)
    while t:
        if t & 1:
            result = matrix_mul(result, base)
        base = matrix_mul(base, base)
        t >>= 1
    return result


def matrix_power_rowsum(r: int, t: int) -> int:
    """First-row sum of ``A^t`` for the chain matrix of size r+1."""
    return sum(matrix_power(chain_matrix(r), t)[0])


def total_entry_sum(a, t: int) -> int:
    return sum(sum(row) for row in matrix_power(a, t))


def crossing_lower_bound(p: int, t: int) -> float:
    """``rho_{p-2} ** t``: guaranteed crossings of ``f^(m t)`` when f has period ``m p``."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    return rho(p - 2, 1e-12) ** t


def lower_bound_for_period(n: int, s: int) -> float:
    """Crossing lower bound for ``f^s`` given a cycle of period n with odd part > 1.

    Only whole blocks of ``m = 2**e`` compositions count, so this is
    ``rho_{p-2} ** (s // m)``.
    """
    key = SharkovskyKey.of(n)
    if key.odd == 1:
        raise ValueError("powers of two certify no exponential growth")
    return crossing_lower_bound(key.odd, s // (1 << key.exponent))


def cofactor_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Laplace expansion along the first row, skipping zero entries."""
    n = len(matrix)
    if n == 1:
        return Fraction(matrix[0][0])
    total = Fraction(0)
    for j, a in enumerate(matrix[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = Fraction(a) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def charpoly_at(r: int, lam: Fraction) -> Fraction:
    """``det(A^T - lam I)`` for the chain matrix of size r+1."""
    a = chain_matrix(r)
    n = r + 1
    m = [[Fraction(a[j][i]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return cofactor_det(m)


@dataclass
class OddCertificate:
    """An odd-period covering chain for ``f^m``: crossings of ``f^(m t)`` grow like ``rho_r ** t``."""

    key: SharkovskyKey
    m: int
    base: PwlFunction
    cycle: Cycle
    graph: CoveringGraph
    chain: CoveringChain

    @property
    def r(self) -> int:
        return self.chain.r


def odd_certificate(f: PwlFunction, n: int, cap: int | None = DEFAULT_PIECE_CAP) -> OddCertificate | None:
    """Chain certifying exponential growth from the period-``n`` cycles of f.

    For ``n = m p`` each period-n cycle of f splits into period-p cycles of
    ``f^m``; among all of those the one with the smallest chain length wins
    (ties: smallest starting point).
    """
    key = SharkovskyKey.of(n)
    if key.odd == 1:
        return None
    m = 1 << key.exponent
    g = iterate(f, m, cap)
    best = None
    for cyc in find_cycles(g, key.odd, cap):
        graph = build_covering_graph(g, cyc)
        try:
            chain = extract_chain(graph)
        except NoChainFound:
            continue
        cand = (chain.r, cyc.points[0])
        if best is None or cand < best[0]:
            best = (cand, OddCertificate(key, m, g, cyc, graph, chain))
    return None if best is None else best[1]


def certificate_for(f: PwlFunction, search_cap: int, cap: int | None = DEFAULT_PIECE_CAP):
    """Prime-period search followed by :func:`odd_certificate` on the result."""
    pp = prime_period(f, search_cap, cap)
    if pp.key is None or pp.key.odd == 1:
        return pp, None
    return pp, odd_certificate(f, pp.key.n, cap)
