"""Tests for the power-law degree sequence model.

Counts are checked against a direct per-degree recomputation
floor(scale / i**beta), which is fast enough at the scales used here.
"""

import math

import numpy as np
import pytest

from plgds.degree_model import (
    DELTA_CAP,
    BetaFunction,
    GrowthClass,
    PlgParams,
    build_sequence,
    closed_form_counts,
    exact_interval_sums,
    interval_estimate,
    iter_count_blocks,
    multiplicative_band,
    parity_bump,
    sequence_totals,
    tau_bound,
)
from plgds.errors import DomainError, ScaleError

SMALL_GRID = [
    (50.0, 2.5),
    (100.0, 1.5),
    (30.0, 1.0),
    (200.0, 3.0),
    (80.0, 0.5),
    (1000.0, 2.0),
]


def _params(scale, beta, parity="total_degree"):
    return PlgParams(alpha=math.log(scale), beta=beta, parity=parity)


def _brute_counts(scale, beta):
    delta = int(math.floor((scale + 1e-9) ** (1.0 / beta) + 1e-9))
    return {i: int(scale / i**beta + 1e-9) for i in range(1, delta + 1)}


def _log2_fn():
    return BetaFunction(
        f=lambda n: max(1, math.ceil(math.log(max(n, 2)) ** 2)),
        growth_class=GrowthClass.OMEGA_LOG_N,
        label="ceil(ln(n)^2)",
    )


# -- PlgParams ----------------------------------------------------------------


def test_scale_snaps_to_integer():
    p = PlgParams(alpha=math.log(1000), beta=2.5)
    assert p.scale == 1000.0
    assert p.scale_floor == 1000


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_delta_matches_direct_floor(scale, beta):
    p = _params(scale, beta)
    assert p.delta == max(1, int(math.floor((scale + 1e-9) ** (1.0 / beta) + 1e-9)))


def test_params_require_exactly_one_beta():
    with pytest.raises(DomainError):
        PlgParams(alpha=3.0)
    with pytest.raises(DomainError):
        PlgParams(alpha=3.0, beta=2.5, beta_fn=_log2_fn())


def test_params_reject_bad_values():
    with pytest.raises(DomainError):
        PlgParams(alpha=-1.0, beta=2.5)
    with pytest.raises(DomainError):
        PlgParams(alpha=3.0, beta=0.0)
    with pytest.raises(DomainError):
        PlgParams(alpha=3.0, beta=2.5, parity="weird")


def test_functional_beta_needs_n():
    p = PlgParams(alpha=4.0, beta_fn=_log2_fn())
    with pytest.raises(DomainError):
        p.beta_value(None)
    assert p.beta_value(100) == pytest.approx(2.0 + 1.0 / _log2_fn().f(100))


# -- build_sequence ------------------------------------------------------------


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_counts_match_brute_force(scale, beta):
    seq = build_sequence(_params(scale, beta))
    brute = _brute_counts(scale, beta)
    bump = 1 if seq.bump_applied else 0
    assert seq.delta == max(brute)
    for i, y in brute.items():
        expected = y + (bump if i == 1 else 0)
        assert seq.count(i) == expected, f"count({i}) at scale={scale}, beta={beta}"


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_total_degree_even_under_default_parity(scale, beta):
    seq = build_sequence(_params(scale, beta))
    assert seq.total_degree % 2 == 0
    brute = _brute_counts(scale, beta)
    raw_degree = sum(i * y for i, y in brute.items())
    assert seq.bump_applied == (raw_degree % 2 == 1)
    assert seq.total_degree == raw_degree + (1 if seq.bump_applied else 0)


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_node_count_parity_mode(scale, beta):
    seq = build_sequence(_params(scale, beta, parity="node_count"))
    assert seq.total_nodes % 2 == 0
    brute = _brute_counts(scale, beta)
    raw_nodes = sum(brute.values())
    assert seq.bump_applied == (raw_nodes % 2 == 1)


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_totals_consistent_with_counts(scale, beta):
    seq = build_sequence(_params(scale, beta))
    items = list(seq.nonzero_items())
    assert sum(y for _, y in items) == seq.total_nodes
    assert sum(i * y for i, y in items) == seq.total_degree
    assert sequence_totals(_params(scale, beta)) == (
        seq.total_nodes,
        seq.total_degree,
    )


def test_functional_sequence_uses_effective_beta():
    p = PlgParams(alpha=4.0, beta_fn=_log2_fn())
    n = 79
    seq = build_sequence(p, n_for_functional=n)
    beta_eff = 2.0 + 1.0 / _log2_fn().f(n)
    brute = _brute_counts(p.scale, beta_eff)
    bump = 1 if seq.bump_applied else 0
    for i, y in brute.items():
        assert seq.count(i) == y + (bump if i == 1 else 0)


def test_build_sequence_respects_delta_cap():
    # beta = 0.5 squares the scale into the maximum degree.
    with pytest.raises(ScaleError):
        build_sequence(PlgParams(alpha=math.log(10**4), beta=0.5))
    assert 10**8 > DELTA_CAP


def test_to_csv_layout(tmp_path):
    seq = build_sequence(_params(50.0, 2.5))
    path = tmp_path / "seq.csv"
    seq.to_csv(path)
    text = path.read_text()
    assert text == "degree,count\n1,51\n2,8\n3,3\n4,1\n"


# -- block enumeration and interval sums ----------------------------------------


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_blocks_reconstruct_counts(scale, beta):
    p = _params(scale, beta)
    brute = _brute_counts(scale, beta)
    seen = {}
    for lo, hi, y in iter_count_blocks(scale, beta, 1, p.delta):
        assert lo <= hi
        for i in range(lo, hi + 1):
            assert i not in seen
            seen[i] = y
    assert seen == brute


def test_blocks_partial_interval():
    p = _params(1000.0, 2.0)
    brute = _brute_counts(1000.0, 2.0)
    covered = {
        i: y
        for lo, hi, y in iter_count_blocks(1000.0, 2.0, 3, 17)
        for i, y in ((j, y) for j in range(lo, hi + 1))
    }
    assert covered == {i: brute[i] for i in range(3, 18)}


def test_blocks_reject_huge_scale():
    with pytest.raises(ScaleError):
        list(iter_count_blocks(2.0**53 * 4.0, 2.5, 1, 10))


@pytest.mark.parametrize("seed", range(5))
def test_interval_sums_match_brute_slices(seed):
    rng = np.random.default_rng(seed)
    scale, beta = SMALL_GRID[seed % len(SMALL_GRID)]
    p = _params(scale, beta)
    brute = _brute_counts(scale, beta)
    bump = 1 if parity_bump(p) else 0
    for _ in range(20):
        a = int(rng.integers(1, p.delta + 1))
        b = int(rng.integers(a, p.delta + 1))
        size, volume = exact_interval_sums(p, a, b)
        want_size = sum(brute[i] for i in range(a, b + 1))
        want_volume = sum(i * brute[i] for i in range(a, b + 1))
        if a == 1:
            want_size += bump
            want_volume += bump
        assert (size, volume) == (want_size, want_volume)


def test_interval_sums_domain():
    p = _params(1000.0, 2.0)
    with pytest.raises(DomainError):
        exact_interval_sums(p, 0, 3)
    with pytest.raises(DomainError):
        exact_interval_sums(p, 5, 4)
    with pytest.raises(DomainError):
        exact_interval_sums(p, 1, p.delta + 1)


def test_interval_sums_scale_beyond_materialization():
    # Far beyond the per-degree array cap, the block walk still sums exactly.
    p = PlgParams(alpha=30.0, beta=2.5)
    size, volume = exact_interval_sums(p, 1, p.delta)
    nodes, degree = sequence_totals(p)
    assert (size, volume) == (nodes, degree)
    assert degree % 2 == 0


@pytest.mark.parametrize("scale, beta", SMALL_GRID)
def test_interval_estimate_brackets_exact(scale, beta):
    p = _params(scale, beta)
    est = interval_estimate(p, 1, p.delta)
    assert est.size_bracket[0] <= est.exact_size <= est.size_bracket[1]
    assert est.rounding_bracket[0] <= est.exact_volume <= est.rounding_bracket[1]
    assert est.closed_form_size > 0.0


# -- closed forms ---------------------------------------------------------------


def test_closed_form_above_two():
    from plgds.bounds import zeta

    p = PlgParams(alpha=7.0, beta=3.0)
    n_approx, m_approx = closed_form_counts(p)
    assert n_approx == pytest.approx(zeta(3.0) * math.exp(7.0), rel=1e-12)
    assert m_approx == pytest.approx(0.5 * zeta(2.0) * math.exp(7.0), rel=1e-12)


def test_closed_form_branch_beta_two():
    p = PlgParams(alpha=7.0, beta=2.0)
    from plgds.bounds import zeta

    n_approx, m_approx = closed_form_counts(p)
    assert n_approx == pytest.approx(zeta(2.0) * math.exp(7.0), rel=1e-12)
    assert m_approx == pytest.approx(7.0 * math.exp(7.0) / 4.0, rel=1e-12)


def test_closed_form_branch_beta_one():
    p = PlgParams(alpha=7.0, beta=1.0)
    n_approx, m_approx = closed_form_counts(p)
    assert n_approx == pytest.approx(7.0 * math.exp(7.0), rel=1e-12)
    assert m_approx == pytest.approx(
        0.5 * math.exp(14.0) / 1.0, rel=1e-12
    )


def test_closed_form_below_one():
    p = PlgParams(alpha=7.0, beta=0.5)
    n_approx, m_approx = closed_form_counts(p)
    assert n_approx == pytest.approx(math.exp(14.0) / 0.5, rel=1e-12)
    assert m_approx == pytest.approx(math.exp(28.0) / 3.0, rel=1e-12)


def test_closed_form_warns_near_branch_point():
    with pytest.warns(RuntimeWarning):
        closed_form_counts(PlgParams(alpha=7.0, beta=2.0 + 1e-10))
    with pytest.warns(RuntimeWarning):
        closed_form_counts(PlgParams(alpha=7.0, beta=1.0 - 1e-10))


@pytest.mark.parametrize("scale", [10**3, 10**4, 10**5])
def test_closed_form_tracks_exact_above_two(scale):
    p = PlgParams(alpha=math.log(scale), beta=3.0)
    nodes, degree = sequence_totals(p)
    n_approx, m_approx = closed_form_counts(p)
    assert nodes == pytest.approx(n_approx, rel=0.06)
    assert degree / 2.0 == pytest.approx(m_approx, rel=0.08)


# -- functional-beta helpers -----------------------------------------------------


def test_beta_function_validation():
    with pytest.raises(DomainError):
        BetaFunction(f=lambda n: 0, label="zero").f_at(10)
    with pytest.raises(DomainError):
        BetaFunction(f=lambda n: 1.5, label="frac").f_at(10)


def test_beta_at_is_two_plus_inverse():
    bf = _log2_fn()
    for n in (10, 100, 10**4):
        assert bf.beta_at(n) == pytest.approx(2.0 + 1.0 / bf.f(n), rel=1e-12)


@pytest.mark.parametrize("n", [16, 100, 10**4])
def test_multiplicative_band_contains_exact(n):
    bf = _log2_fn()
    beta = bf.beta_at(n)
    for j in (1, 2, 3, n // 2, n):
        lo, hi = multiplicative_band(bf, n, j)
        exact = float(j) ** -beta
        assert lo <= exact <= hi


def test_multiplicative_band_domain():
    bf = _log2_fn()
    with pytest.raises(DomainError):
        multiplicative_band(bf, 10, 0)
    with pytest.raises(DomainError):
        multiplicative_band(bf, 10, 11)


@pytest.mark.parametrize("n", [16, 100, 10**4])
def test_tau_bound_dominates_gap(n):
    bf = _log2_fn()
    tau = tau_bound(bf, n)
    beta = bf.beta_at(n)
    gaps = [float(j) ** -2.0 - float(j) ** -beta for j in range(1, min(n, 500) + 1)]
    assert tau + 1e-15 >= max(gaps)
    assert max(gaps) == pytest.approx(2.0**-2.0 - 2.0**-beta, rel=1e-12)
