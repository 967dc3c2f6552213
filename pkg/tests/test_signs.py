"""Tests for the alternating-sign analytics of the pendant-path orbit."""

import math
from fractions import Fraction

import pytest

from treespec.errors import OutOfDomainError, PatternNotFoundError, PreconditionViolatedError
from treespec.recurrence import solve, zeros_and_poles
from treespec.signs import (
    DoubleBroom,
    PendantConfig,
    RootSign,
    b_at,
    b_sequence,
    build_report,
    double_broom_layout,
    double_broom_sigma,
    double_broom_tree,
    h_function,
    in_domain,
    j_star,
    k0,
    mlas,
    mlas_direct,
    mlas_lower_bound,
    omega_r,
    period_n,
    phi_n,
    r0,
    star_up,
)
from treespec.treediag import MatrixKind, build_matrix, locate


# ---------------------------------------------------------------------------
# the b orbit


def test_b1_exact_value():
    cfg = PendantConfig(19, 2)
    assert cfg.x1 == Fraction(2, 19) - 1
    assert cfg.x2 > 1
    assert cfg.b1 == Fraction(-3979, 7505)


def test_b_sequence_signs_and_r0_consistency():
    orbit = b_sequence(PendantConfig(19, 2), 11, exact=True)
    signs = [v > 0 for v in orbit.values]
    assert signs == [False, True] * 5 + [True]


def test_b_sequence_r0_is_plain_path_start():
    cfg = PendantConfig(19, 0)
    orbit = b_sequence(cfg, 1, exact=True)
    assert orbit.values[0] == Fraction(2, 19) - 1


def test_b_far_value_large_n():
    # first positive odd-index element for n=183, r=1 sits at index 143
    value = float(b_at(PendantConfig(183, 1), 143))
    assert value == pytest.approx(0.0096876957, rel=1e-6)


def test_r0_exact_and_bounds():
    assert r0(8) == Fraction(57, 28)
    for n in range(7, 201):
        assert Fraction(n, 4) < r0(n)


def test_b1_negative_iff_r_below_threshold():
    for n in range(3, 201):
        cutoff = math.floor(r0(n))
        for r in range(0, n + 1):
            assert (PendantConfig(n, r).b1 < 0) == (r <= cutoff)


# ---------------------------------------------------------------------------
# phase, period


def test_period_values():
    assert period_n(7) == pytest.approx(2.20084, abs=1e-5)
    assert period_n(19) == pytest.approx(2.069368956, abs=1e-8)
    assert 2.0 < period_n(1000) < 2.002


def test_period_decreasing_to_two():
    values = [period_n(n) for n in range(3, 1001)]
    for a, b in zip(values, values[1:]):
        assert b < a
    assert values[-1] - 2.0 < 2e-3
    assert all(v > 2.0 for v in values)


def test_omega_r_reference_and_window():
    assert omega_r(PendantConfig(19, 2)) == pytest.approx(-0.9898518437, abs=1e-9)
    for n in range(8, 101):
        for r in range(1, n // 4 + 1):
            w = omega_r(PendantConfig(n, r))
            assert -math.pi / 2 < w < -math.pi / 4


def test_omega_r_decreasing_in_r():
    for n in (8, 19, 60, 100):
        values = [omega_r(PendantConfig(n, r)) for r in range(1, n // 4 + 1)]
        for a, b in zip(values, values[1:]):
            assert b < a


def test_omega_r_zero_pendants_is_half_phase():
    for n in (8, 19, 100):
        assert omega_r(PendantConfig(n, 0)) == pytest.approx(-phi_n(n) / 2.0, abs=1e-12)


def test_omega_r_domain():
    with pytest.raises(OutOfDomainError):
        omega_r(PendantConfig(7, 1))
    with pytest.raises(OutOfDomainError):
        omega_r(PendantConfig(19, 5))
    assert not in_domain(19, 5) and in_domain(19, 4)


# ---------------------------------------------------------------------------
# k0, j*, mlas


def test_k0_worked_values():
    assert k0(PendantConfig(19, 2)) == 4
    assert 4.51 < h_function(19, 2, 0) < 4.52
    assert k0(PendantConfig(183, 1)) == 70
    assert k0(PendantConfig(183, 45)) == 1


def test_h_sign_pattern():
    for n in range(8, 101):
        for r in range(1, n // 4 + 1):
            assert h_function(n, r, -1) > 0
            assert h_function(n, r, 0) > 0
            assert h_function(n, r, 1) < 0


def test_j_star_worked_value_and_window():
    cfg = PendantConfig(19, 2)
    assert j_star(cfg) == pytest.approx(0.6867, abs=5e-5)
    assert math.floor((1.0 - j_star(cfg)) / (period_n(19) - 2.0)) == 4 == k0(cfg)
    for n in (8, 23, 77):
        for r in range(1, n // 4 + 1):
            js = j_star(PendantConfig(n, r))
            assert 0.0 < js < period_n(n)


def test_j_star_is_first_positive_zero_of_extension():
    for n, r in ((19, 2), (31, 4), (64, 9)):
        cfg = PendantConfig(n, r)
        sol = solve(cfg.params(exact=False), float(cfg.b1))
        zeros, _ = zeros_and_poles(sol, 0.0, period_n(n) + 1.0)
        first = min(z for z in zeros if z > 0)
        assert first == pytest.approx(j_star(cfg), abs=1e-9)


def test_mlas_worked_values():
    assert [mlas(PendantConfig(19, r)) for r in (1, 2, 3, 4)] == [12, 10, 8, 4]
    assert mlas(PendantConfig(183, 26)) == 76
    assert mlas(PendantConfig(183, 29)) == 64
    assert mlas(PendantConfig(19, 0)) == mlas(PendantConfig(19, 1)) + 2


def test_mlas_direct_worked_values():
    assert mlas_direct(PendantConfig(19, 2), 40) == 10
    assert mlas_direct(PendantConfig(183, 1), 800) == 142
    assert mlas_direct(PendantConfig(19, 4), 80) == 4
    orbit = b_sequence(PendantConfig(19, 2), 11, exact=True)
    assert orbit.values[10] > 0  # index 11 is the first positive odd entry


def test_mlas_direct_pattern_not_found():
    # r beyond the sign threshold starts positive: no alternating prefix
    assert PendantConfig(19, 5).b1 > 0
    with pytest.raises(PatternNotFoundError):
        mlas_direct(PendantConfig(19, 5))
    with pytest.raises(PatternNotFoundError):
        mlas_direct(PendantConfig(183, 1), j_max=10)  # window too short


def test_formula_matches_scan_on_sample():
    for n in (8, 9, 12, 19, 40, 83):
        for r in range(1, n // 4 + 1):
            cfg = PendantConfig(n, r)
            assert mlas(cfg) == mlas_direct(cfg)


def test_alternation_content():
    for n, r in ((8, 1), (19, 2), (50, 7), (120, 30)):
        cfg = PendantConfig(n, r)
        k = k0(cfg)
        orbit = b_sequence(cfg, 2 * k + 3, exact=True)
        assert orbit.completed
        for i in range(0, k + 1):
            assert orbit.values[2 * i] < 0      # b_{2k+1}
            assert orbit.values[2 * i + 1] > 0  # b_{2k+2}
        assert orbit.values[2 * k + 2] > 0      # b_{2k0+3}


def test_mlas_lower_bound():
    assert mlas_lower_bound(PendantConfig(183, 1)) == 142 == mlas(PendantConfig(183, 1))
    assert mlas_lower_bound(PendantConfig(183, 44)) == 2
    assert mlas_lower_bound(PendantConfig(19, 1)) == 12 == mlas(PendantConfig(19, 1))
    for n in (8, 16, 45, 100):
        for r in range(1, n // 4 + 1):
            cfg = PendantConfig(n, r)
            assert mlas_lower_bound(cfg) <= mlas(cfg)


def test_build_report_fields():
    report = build_report(PendantConfig(19, 2))
    assert report.mlas == 2 * report.k0 + 2 == 10
    assert report.period > 2.0
    assert -math.pi / 2 < report.omega_r < -math.pi / 4
    assert report.lower_bound <= report.mlas


# ---------------------------------------------------------------------------
# double brooms


def test_double_broom_tree_structure():
    b = DoubleBroom(r=3, q=2, p=2, R=2)
    assert b.n == 19
    layout = double_broom_layout(b)
    t = layout.tree
    assert t.n == 19
    assert t.degree(layout.root) == 2
    assert t.degree(layout.left_star) == 4   # r + 1
    assert t.degree(layout.right_star) == 3  # R + 1
    small = DoubleBroom(r=1, q=1, p=1, R=1)
    assert small.n == 9
    assert double_broom_tree(small).n == 9


def test_double_broom_sigma_example():
    result = double_broom_sigma(DoubleBroom(r=3, q=2, p=2, R=2))
    assert result.sigma == 9
    assert result.root_sign is RootSign.NEGATIVE
    assert result.hypotheses_met
    assert tuple(result.inertia) == (10, 0, 9)


def test_double_broom_sigma_matches_sweep():
    for b in (
        DoubleBroom(1, 1, 1, 1),
        DoubleBroom(2, 1, 1, 2),
        DoubleBroom(2, 2, 3, 3),
        DoubleBroom(4, 2, 2, 3),
        DoubleBroom(3, 3, 3, 3),
    ):
        result = double_broom_sigma(b)
        lap = build_matrix(double_broom_tree(b), MatrixKind.LAPLACIAN)
        direct = locate(lap, 2 - Fraction(2, b.n), exact=True)
        assert result.sigma == direct.above
        assert result.sigma in (b.n // 2, b.n // 2 + 1)


def test_double_broom_sigma_fallback():
    # r = 4 >= floor((15-1)/4) = 3 breaks the side-count hypotheses
    result = double_broom_sigma(DoubleBroom(r=4, q=1, p=1, R=1))
    assert not result.hypotheses_met
    assert result.sigma == result.inertia.above


# ---------------------------------------------------------------------------
# star-up


def test_star_up_chain_keeps_sigma():
    layout = double_broom_layout(DoubleBroom(r=3, q=2, p=2, R=2))
    d = 2 - Fraction(2, 19)

    def sigma(tree):
        return locate(build_matrix(tree, MatrixKind.LAPLACIAN), d, exact=True).above

    chain = [layout.tree]
    for star in (layout.right_star, layout.left_star, layout.right_star):
        chain.append(star_up(chain[-1], star))
    assert [t.n for t in chain] == [19, 19, 19, 19]
    assert [sigma(t) for t in chain] == [9, 9, 9, 9]
    # final tree: both stars carry 4 pendant 2-paths through one middle vertex
    degrees = sorted(chain[-1].degree(v) for v in range(1, 20))
    assert degrees == [1] * 8 + [2] * 9 + [5, 5]


def test_star_up_moves_one_path_pair():
    layout = double_broom_layout(DoubleBroom(r=3, q=2, p=2, R=2))
    before = layout.tree
    after = star_up(before, layout.right_star)
    assert after.n == before.n
    assert after.degree(layout.right_star) == before.degree(layout.right_star) + 1
    removed = set(map(frozenset, (e for e in _undirected(before)))) - set(
        map(frozenset, _undirected(after))
    )
    added = set(map(frozenset, _undirected(after))) - set(map(frozenset, _undirected(before)))
    assert len(removed) == 1 and len(added) == 1


def _undirected(tree):
    return [tuple(sorted(e)) for e in tree.edges()]


def test_star_up_preconditions():
    from treespec.treediag import build_tree

    layout = double_broom_layout(DoubleBroom(r=3, q=2, p=2, R=2))
    with pytest.raises(PreconditionViolatedError):
        star_up(layout.tree, layout.root)  # two non-pendant neighbors
    # path neighbor with degree 3: no clean two-vertex segment to remove
    branchy = build_tree([(1, 2), (2, 3), (1, 4), (4, 5), (4, 6), (5, 7), (6, 8)], root=1)
    with pytest.raises(PreconditionViolatedError):
        star_up(branchy, 1)
    # pendant budget exhausted: r = 4 > floor(19/4) - 1
    full = double_broom_layout(DoubleBroom(r=4, q=2, p=1, R=2))
    assert full.tree.n == 19
    with pytest.raises(PreconditionViolatedError):
        star_up(full.tree, full.left_star)
