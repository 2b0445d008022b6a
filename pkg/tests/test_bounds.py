from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import min_errors_closed_form, min_errors_enumerated
from pwlchaos.bounds import (
    BoundViolation,
    InsufficientCrossings,
    LabeledDataset,
    build_alternating_dataset,
    classification_error,
    error_lower_bound,
    half_floor_rho_power,
    oracle_min_error,
    tradeoff_csv,
    tradeoff_table,
    tradeoff_text,
    u_max,
    verify_error_bound,
    width_guarantees_quarter,
)
from pwlchaos.covering import rho
from pwlchaos.pwl import PwlFunction, iterate, tent
from pwlchaos.relu import extract_pwl, piece_bound
from test_relu import networks


def alternating(n):
    return LabeledDataset(tuple((F(i, 2 * n), i % 2) for i in range(2 * n)), F(1, 2), n)


@pytest.fixture(scope="module")
def tent_k6():
    return build_alternating_dataset(tent(2), 1, 3, 6, F(4, 9), F(8, 9))


def test_dataset_tent_k6(tent_k6):
    assert tent_k6.n == 8 and len(tent_k6.points) == 16
    assert tent_k6.threshold == F(2, 3)
    assert classification_error(iterate(tent(2), 6), tent_k6) == 0


def test_dataset_points_are_exact_preimages(tent_k6):
    h = iterate(tent(2), 6)
    for x, lab in tent_k6.points:
        assert h(x) == (F(8, 9) if lab else F(4, 9))


def test_dataset_period5(p5):
    assert half_floor_rho_power(5, 8) == 6
    d = build_alternating_dataset(p5, 1, 5, 8, 2, 3)
    assert len(d.points) == 12
    assert classification_error(iterate(p5, 8), d) == 0


def test_dataset_insufficient_crossings():
    with pytest.raises(InsufficientCrossings):
        build_alternating_dataset(tent(1), 1, 3, 6, F(1, 4), F(1, 2))
    with pytest.raises(ValueError):
        build_alternating_dataset(tent(2), 1, 3, 6, F(1, 2), F(1, 4))


def test_dataset_invariants_enforced():
    with pytest.raises(ValueError):
        LabeledDataset(((F(0), 1), (F(1), 0)), F(1, 2), 1)
    with pytest.raises(ValueError):
        LabeledDataset(((F(0), 0),), F(1, 2), 1)
    with pytest.raises(ValueError):
        LabeledDataset(((F(1), 0), (F(0), 1)), F(1, 2), 1)


def test_error_examples(tent_k6):
    zero = PwlFunction.from_points([(0, 0), (1, 0)])
    assert classification_error(zero, tent_k6) == F(1, 2)
    assert classification_error(iterate(tent(2), 5), tent_k6) > 0


def test_oracle_examples():
    assert oracle_min_error(alternating(4), 1) == F(1, 2)
    assert oracle_min_error(alternating(4), 8) == 0
    assert oracle_min_error(alternating(4), 100) == 0
    with pytest.raises(ValueError):
        oracle_min_error(alternating(4), 0)


def test_oracle_matches_enumeration():
    for n in range(1, 6):
        d = alternating(n)
        for runs in range(1, 2 * n + 2):
            want = min_errors_enumerated(d.labels, runs)
            assert oracle_min_error(d, runs) == F(want, 2 * n)


@given(st.integers(1, 200), st.integers(1, 500))
def test_oracle_matches_closed_form(n, runs):
    assert oracle_min_error(alternating(n), runs) == F(min_errors_closed_form(2 * n, runs), 2 * n)


def test_oracle_monotone_in_runs():
    d = alternating(20)
    vals = [oracle_min_error(d, p) for p in range(1, 45)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[39] == 0


def test_error_lower_bound_values():
    assert error_lower_bound(160, 2, 1) == F(160 - 16, 320)
    assert error_lower_bound(160, 2, 2) == F(160 - 64, 320) == F(3, 10)
    assert error_lower_bound(10, 3, 3) == 0


def test_verify_k12_examples():
    d = build_alternating_dataset(tent(2), 1, 3, 12, F(4, 9), F(8, 9))
    assert d.n == 160
    rep = verify_error_bound(d, 2, 1)
    assert rep.bound == F(9, 20) and rep.oracle >= rep.bound
    assert rep.quarter_claimed
    rep2 = verify_error_bound(d, 2, 2)
    assert rep2.bound == F(3, 10) >= F(1, 4) and rep2.quarter_claimed
    big = verify_error_bound(d, 2, 10**6)
    assert big.bound == 0 and not big.quarter_claimed


def test_verify_depth_one_does_not_claim_quarter():
    d = build_alternating_dataset(tent(2), 1, 3, 12, F(4, 9), F(8, 9))
    rep = verify_error_bound(d, 1, 40)
    assert not rep.quarter_claimed
    assert any("l=1" in note for note in rep.notes)


def test_verify_flags_broken_oracle(monkeypatch):
    import pwlchaos.bounds as b

    monkeypatch.setattr(b, "oracle_min_error", lambda d, p: F(0))
    with pytest.raises(BoundViolation):
        b.verify_error_bound(alternating(20), 1, 1)


def test_quarter_guarantee_arithmetic():
    # p=3, k=24, l=2: phi^12 = 321.99..., so u <= 40.25 and u=40 is the last width
    assert width_guarantees_quarter(3, 24, 2, 40)
    assert not width_guarantees_quarter(3, 24, 2, 41)
    n = half_floor_rho_power(3, 24)
    assert n == 51840
    assert error_lower_bound(n, 2, 40) == F(51840 - 4 * 80**2, 2 * 51840) >= F(1, 4)
    assert error_lower_bound(n, 2, 41) < error_lower_bound(n, 2, 40)


def test_tradeoff_examples():
    (row,) = tradeoff_table(3, 40, [4])
    assert row.u_max == 15
    assert row.bound_value == pytest.approx(rho(1) ** 10 / 8)
    (row,) = tradeoff_table(3, 7, [7])
    assert row.u_max == 0 and row.vacuous
    with pytest.raises(ValueError):
        tradeoff_table(4, 10, [1])


def test_tradeoff_monotonicity():
    for k in (10, 24, 40):
        for l in range(1, 6):
            col = [u_max(p, k, l) for p in (3, 5, 7, 9, 11)]
            assert all(a >= b for a, b in zip(col, col[1:]))
        row = [u_max(3, k, l) for l in range(1, k + 1)]
        assert all(a >= b for a, b in zip(row, row[1:]))


def test_u_max_is_floor_of_threshold():
    for k in range(1, 30):
        for l in range(1, 5):
            u = u_max(3, k, l)
            assert (8 * u) ** l <= rho(1) ** k * (1 + 1e-12)
            assert (8 * (u + 1)) ** l > rho(1) ** k * (1 - 1e-12)


def test_tradeoff_formats():
    rows = tradeoff_table(3, 12, range(1, 4))
    csv = tradeoff_csv(rows)
    assert csv.splitlines()[0] == "l,u_max,bound"
    assert csv.splitlines()[1].startswith("1,40,")
    assert len(csv.splitlines()) == 4
    assert "vacuous" in tradeoff_text(tradeoff_table(3, 5, [5]))


@settings(max_examples=40, deadline=None)
@given(networks(max_depth=2, max_width=3))
def test_random_networks_respect_bound(tent_k6, drawn):
    net, l, u = drawn
    g = extract_pwl(net)
    err = classification_error(g, tent_k6)
    assert err >= error_lower_bound(tent_k6.n, l, u)
    assert err >= oracle_min_error(tent_k6, piece_bound(l, u) + 1)
