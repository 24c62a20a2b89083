"""Tests for the dominating-set solvers and lower bounds.

The exact solver is checked against subset enumeration on small random
graphs; the heuristics are checked for feasibility and their guaranteed
ratios.
"""

import itertools
import math

import numpy as np
import pytest

from plgds.degree_model import PlgParams
from plgds.errors import BudgetExceeded, DomainError, RegimeViolation
from plgds.graph_core import MultiGraph, is_dominating
from plgds.solvers import (
    Algo,
    LbKind,
    exact_min_ds,
    greedy_min_ds,
    lemma2_lower_bound,
    structured_min_ds,
    trivial_lower_bound,
)

LEMMA2_AT_BETA3_SCALE1000 = (0.2, 194)


def _random_graph(rng, n_max=10, p_edge=0.3):
    n = int(rng.integers(2, n_max + 1))
    g = MultiGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                g.add_edge(u, v)
    g.freeze()
    return g


def _brute_min_ds(g):
    vertices = range(g.n)
    for size in range(g.n + 1):
        for cand in itertools.combinations(vertices, size):
            if is_dominating(g, cand):
                return set(cand)
    raise AssertionError("unreachable: V always dominates")


# -- exact solver ----------------------------------------------------------------


@pytest.mark.parametrize("seed", range(25))
def test_exact_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    g = _random_graph(rng)
    report = exact_min_ds(g)
    brute = _brute_min_ds(g)
    assert is_dominating(g, report.solution)
    assert report.size == len(brute)
    assert report.lb_kind is LbKind.EXACT_OPT
    assert report.lower_bound == report.size
    assert report.ratio_vs_lb == pytest.approx(1.0)


def test_exact_on_path():
    g = MultiGraph(6)
    for u in range(5):
        g.add_edge(u, u + 1)
    g.freeze()
    assert exact_min_ds(g).size == 2


def test_exact_handles_isolated_vertices():
    g = MultiGraph(4)
    g.add_edge(0, 1)
    g.freeze()
    report = exact_min_ds(g)
    assert is_dominating(g, report.solution)
    assert report.size == 3  # one endpoint plus both isolated vertices


def test_exact_budget_exhaustion_payload():
    rng = np.random.default_rng(0)
    g = MultiGraph(24)
    for _ in range(40):
        u, v = int(rng.integers(24)), int(rng.integers(24))
        if u != v:
            g.add_edge(u, v)
    g.freeze()
    with pytest.raises(BudgetExceeded) as excinfo:
        exact_min_ds(g, budget=3)
    exc = excinfo.value
    assert is_dominating(g, exc.incumbent)
    assert exc.lower_bound <= len(exc.incumbent)


@pytest.mark.parametrize("seed", range(5))
def test_exact_deterministic(seed):
    rng = np.random.default_rng(100 + seed)
    g = _random_graph(rng)
    a = exact_min_ds(g)
    b = exact_min_ds(g)
    assert a.solution == b.solution


# -- greedy ----------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(25))
def test_greedy_feasible_and_within_ln_ratio(seed):
    rng = np.random.default_rng(200 + seed)
    g = _random_graph(rng)
    report = greedy_min_ds(g)
    assert report.algorithm is Algo.GREEDY
    assert is_dominating(g, report.solution)
    opt = len(_brute_min_ds(g))
    delta = int(g.degrees.max())
    assert report.size <= (math.log(delta + 1) + 1) * opt


def test_greedy_star_is_optimal():
    g = MultiGraph(7)
    for leaf in range(1, 7):
        g.add_edge(0, leaf)
    g.freeze()
    assert greedy_min_ds(g).size == 1


@pytest.mark.parametrize("seed", range(5))
def test_greedy_deterministic(seed):
    rng = np.random.default_rng(300 + seed)
    g = _random_graph(rng)
    assert greedy_min_ds(g).solution == greedy_min_ds(g).solution


# -- structured ------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(25))
def test_structured_feasible_and_at_least_opt(seed):
    rng = np.random.default_rng(400 + seed)
    g = _random_graph(rng)
    report = structured_min_ds(g)
    assert report.algorithm is Algo.STRUCTURED
    assert is_dominating(g, report.solution)
    assert report.size >= len(_brute_min_ds(g))
    assert report.decomposition is not None


def test_structured_keeps_support_vertices():
    # Vertices with a degree-1 neighbor always enter the solution.
    g = MultiGraph(5)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.add_edge(1, 3)
    g.add_edge(3, 4)
    g.freeze()
    report = structured_min_ds(g)
    assert {1, 3} <= set(report.solution)


def test_structured_isolated_pairs_take_one_each():
    g = MultiGraph(4)
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    g.freeze()
    report = structured_min_ds(g)
    assert report.size == 2
    assert is_dominating(g, report.solution)


# -- lower bounds -----------------------------------------------------------------


def test_trivial_lower_bound_formula():
    g = MultiGraph(7)
    for leaf in range(1, 7):
        g.add_edge(0, leaf)
    g.freeze()
    assert trivial_lower_bound(g) == math.ceil(7 / (6 + 1))


@pytest.mark.parametrize("seed", range(10))
def test_trivial_lower_bound_below_opt(seed):
    rng = np.random.default_rng(500 + seed)
    g = _random_graph(rng)
    assert trivial_lower_bound(g) <= len(_brute_min_ds(g))


def test_lemma2_frozen_value():
    p = PlgParams(alpha=math.log(1000), beta=3.0)
    assert lemma2_lower_bound(p, "a") == LEMMA2_AT_BETA3_SCALE1000
    assert lemma2_lower_bound(p, "b") == LEMMA2_AT_BETA3_SCALE1000


def test_lemma2_validation():
    p = PlgParams(alpha=math.log(1000), beta=3.0)
    with pytest.raises(DomainError):
        lemma2_lower_bound(p, "c")
    with pytest.raises(RegimeViolation):
        lemma2_lower_bound(PlgParams(alpha=5.0, beta=2.0))


@pytest.mark.parametrize("scale", [200, 1000, 5000])
@pytest.mark.parametrize("variant", ["a", "b"])
def test_lemma2_cutoff_definition(scale, variant):
    # The returned bound is the size of the top degree interval at the
    # smallest qualifying cutoff, and the cutoff's volume is too small to
    # dominate the compared population.
    from plgds.degree_model import exact_interval_sums

    p = PlgParams(alpha=math.log(scale), beta=3.0)
    x_star, bound = lemma2_lower_bound(p, variant)
    delta = p.delta
    c = round(x_star * delta)
    size, vol = exact_interval_sums(p, c, delta)
    assert size == bound
    target = p.scale_floor if variant == "a" else exact_interval_sums(p, 1, c - 1)[0]
    assert vol < target
    if c > 1:
        _, vol_prev = exact_interval_sums(p, c - 1, delta)
        if variant == "a":
            prev_target = p.scale_floor
        else:
            prev_target = exact_interval_sums(p, 1, c - 2)[0] if c > 2 else 0
        assert vol_prev >= prev_target


# -- report plumbing -----------------------------------------------------------------


def test_csv_row_shapes():
    g = MultiGraph(6)
    for u in range(5):
        g.add_edge(u, u + 1)
    g.freeze()
    row = exact_min_ds(g).csv_row()
    assert row == "exact,6,5,NA,2,2,ExactOpt,1.000000"
    row_beta = exact_min_ds(g, beta=2.5).csv_row()
    assert row_beta.split(",")[3] == "2.5"


def test_with_lower_bound_keeps_the_larger():
    g = MultiGraph(6)
    for u in range(5):
        g.add_edge(u, u + 1)
    g.freeze()
    base = greedy_min_ds(g)
    upgraded = base.with_lower_bound(base.lower_bound + 1, LbKind.LEMMA2A)
    assert upgraded.lower_bound == base.lower_bound + 1
    assert upgraded.lb_kind is LbKind.LEMMA2A
    assert upgraded.ratio_vs_lb == pytest.approx(base.size / (base.lower_bound + 1))
    unchanged = base.with_lower_bound(base.lower_bound - 1, LbKind.LEMMA2A)
    assert unchanged.lb_kind is base.lb_kind
