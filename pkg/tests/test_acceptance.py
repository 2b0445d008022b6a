"""Acceptance gate: ten end-to-end checks, each with a runtime budget.

Run ``pytest tests/test_acceptance.py`` (summary lines appear at the end of
the session) or ``python tests/test_acceptance.py`` for a plain report.
"""
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import crossings_by_preimages, fibonacci_from  # noqa: E402
from pwlchaos.bounds import (  # noqa: E402
    build_alternating_dataset,
    classification_error,
    error_lower_bound,
    oracle_min_error,
    u_max,
    verify_error_bound,
)
from pwlchaos.cli import bias_experiment  # noqa: E402
from pwlchaos.covering import (  # noqa: E402
    build_covering_graph,
    charpoly_at,
    crossing_counts,
    crossing_vectors,
    extract_chain,
    matrix_power_rowsum,
    rho,
    total_entry_sum,
)
from pwlchaos.dynamics import Cycle, find_cycles  # noqa: E402
from pwlchaos.maps import golden_ratio_above, period3_map, period4_map, period5_map  # noqa: E402
from pwlchaos.pwl import Interval, iterate, iterates, tent  # noqa: E402
from pwlchaos.relu import compile_tent, extract_pwl, piece_bound, stack  # noqa: E402

CRITERIA = {}
RESULTS = []


def criterion(num, title, budget):
    def register(fn):
        CRITERIA[num] = (title, budget, fn)
        return fn

    return register


def _chain(f, n):
    (c, *_) = find_cycles(f, n)
    return extract_chain(build_covering_graph(f, c))


@criterion(1, "period-3 crossing vectors (2,1),(3,2),(5,3),(8,5)", 1.0)
def c1():
    got = [v.delta for v in crossing_vectors(period3_map(), _chain(period3_map(), 3).intervals, 4)]
    assert got == [(2, 1), (3, 2), (5, 3), (8, 5)], got
    return f"delta={got}"


@criterion(2, "period-5 crossing vectors over I0..I3", 1.0)
def c2():
    f = period5_map()
    assert Cycle((F(1), F(3), F(4), F(2), F(5)), 5).verify(f)
    g = build_covering_graph(f, find_cycles(f, 5)[0])
    expected = [(1, 1, 2, 2), (2, 2, 3, 2), (2, 3, 5, 4), (4, 5, 7, 5)]
    for t, want in enumerate(expected, start=1):
        h = iterate(f, t)
        brute = tuple(crossings_by_preimages(h, iv.lo, iv.hi) for iv in g.intervals)
        assert brute == want, f"fixture validation failed at t={t}: {brute}"
    got = [v.delta for v in crossing_vectors(f, g.intervals, 4)]
    assert got == expected, got
    return f"delta={got}"


@criterion(3, "period-4 map: sum A^t = t+3 and crossings grow linearly", 5.0)
def c3():
    a = ((0, 1, 1), (0, 1, 0), (1, 0, 0))
    sums = [total_entry_sum(a, t) for t in range(1, 21)]
    assert sums == [t + 3 for t in range(1, 21)], sums
    f = period4_map()
    ivs = [Interval(1, 2), Interval(2, 3), Interval(3, 4)]
    totals = [sum(crossing_counts(h, ivs)) for _, h in iterates(f, 20)]
    steps = {b - a for a, b in zip(totals, totals[1:])}
    assert len(steps) == 1, totals
    return f"sum A^t = t+3 for t<=20; crossings {totals[0]}..{totals[-1]} step {steps.pop()}"


@criterion(4, "delta_0 >= rho^t (tent t<=14, period-5 t<=10)", 30.0)
def c4():
    worst = []
    for f, n, t_max in ((tent(2), 3, 14), (period5_map(), 5, 10)):
        ch = _chain(f, n)
        rate = rho(ch.r)
        margin = min(v.delta[0] / rate**v.t for v in crossing_vectors(f, ch.intervals, t_max))
        assert margin >= 1 - 1e-9, (n, margin)
        worst.append(f"r={ch.r} min delta_0/rho^t={margin:.4f}")
    return "; ".join(worst)


@criterion(5, "rho(1)=phi, rho decreasing, determinant identity", 5.0)
def c5():
    phi = (1 + 5**0.5) / 2
    assert abs(rho(1) - phi) <= 1e-12
    vals = [rho(r) for r in range(1, 21)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    samples = [F(k, 7) - 2 for k in range(20)]
    for r in range(1, 9):
        for lam in samples:
            assert charpoly_at(r, lam) == (-1) ** (r + 1) * (lam ** (r + 1) - lam**r - 1)
    return f"|rho(1)-phi|={abs(rho(1) - phi):.1e}; 160 determinant samples exact"


@criterion(6, "row sums of A^t are Fibonacci for t<=40", 5.0)
def c6():
    got = [matrix_power_rowsum(1, t) for t in range(1, 41)]
    assert got == fibonacci_from(2, 3, 40)
    return f"t=40 -> {got[-1]}"


@criterion(7, "stacked tent network equals t^k for k<=12", 10.0)
def c7():
    base = compile_tent(2)
    for k in range(1, 13):
        f = extract_pwl(stack(base, k))
        assert f == iterate(tent(2), k), k
        assert f.pieces == 2**k <= piece_bound(k, 2)
    return "pieces 2^k for k=1..12"


@criterion(8, "alternating dataset, DP oracle and 1/4 guarantee (k=12)", 10.0)
def c8():
    k, l = 12, 2
    d = build_alternating_dataset(tent(2), 1, 3, k, F(4, 9), F(8, 9))
    assert classification_error(iterate(tent(2), k), d) == 0
    n = d.n
    # the literal constant 4*16 alongside the general (n - 4(2u)^l)/(2n) at u=1
    rep = verify_error_bound(d, l, 1)
    assert rep.oracle >= F(n - 4 * 16, 2 * n)
    assert rep.oracle >= error_lower_bound(n, l, 1)
    assert oracle_min_error(d, piece_bound(l, 1)) >= error_lower_bound(n, l, 1)
    u = u_max(3, k, l)
    assert u == int(rho(1) ** (k / l) / 8)
    bound = error_lower_bound(n, l, u)
    assert bound >= F(1, 4)
    verify_error_bound(d, l, u)
    return f"n={n} oracle(u=1)={rep.oracle} bound(u={u})={bound}"


@criterion(9, "forced periods: tent {1,2,4..8}; period-5 map lacks 3", 60.0)
def c9():
    t2 = tent(2)
    missing = [n for n in (1, 2, 4, 5, 6, 7, 8) if not find_cycles(t2, n)]
    assert not missing, missing
    p5 = period5_map()
    assert find_cycles(p5, 3) == []
    missing = [n for n in (1, 2, 4, 5, 6, 7) if not find_cycles(p5, n)]
    assert not missing, missing
    return "all forced periods found"


@criterion(10, "period 3 near the golden ratio is brittle", 5.0)
def c10():
    q = golden_ratio_above()
    # phi < q < phi + 1e-12, checked through (2q - 1)^2 against 5
    assert (2 * q - 1) ** 2 > 5 > (2 * (q - F(1, 10**12)) - 1) ** 2
    assert find_cycles(tent(q), 3)
    for eps in (F(1, 100), F(1, 10**6)):
        assert not find_cycles(tent(q - eps), 3)
        assert bias_experiment(eps)[3].endswith("absent")
    return f"phi_hat={q}"


def run_criterion(num):
    title, budget, fn = CRITERIA[num]
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        ok, detail = False, f"{detail}; over budget"
    line = f"[{'PASS' if ok else 'FAIL'}] C{num} {title} ({elapsed:.2f}s / {budget:g}s): {detail}"
    return ok, line


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    ok, line = run_criterion(num)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for num in sorted(CRITERIA):
        ok, line = run_criterion(num)
        failures += not ok
        print(line)
    sys.exit(1 if failures else 0)
