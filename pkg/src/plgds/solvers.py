"""Dominating-set solvers and the interval-volume lower bound.

Three solvers share one report type: an exact branch-and-bound (bitset
based, with standard reductions and component decomposition), the classic
greedy, and the structured heuristic that combines the degree-1
decomposition with greedy on the remainder.  The module also computes the
volume-argument lower bound for power-law degree sequences with beta > 2.
"""

from __future__ import annotations

import heapq
import math
import sys
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .degree_model import PlgParams, exact_interval_sums
from .errors import (
    BudgetExceeded,
    DomainError,
    RegimeViolation,
)
from .graph_core import (
    MultiGraph,
    connected_components,
    induced_subgraph,
    is_dominating,
    structural_decomposition,
)

__all__ = [
    "Algo",
    "CSV_HEADER",
    "LbKind",
    "SolveReport",
    "exact_min_ds",
    "greedy_min_ds",
    "lemma2_lower_bound",
    "structured_min_ds",
    "trivial_lower_bound",
]


class Algo(Enum):
    EXACT = "exact"
    GREEDY = "greedy"
    STRUCTURED = "structured"


class LbKind(Enum):
    EXACT_OPT = "ExactOpt"
    LEMMA2A = "Lemma2a"
    LEMMA2B = "Lemma2b"
    TRIVIAL = "Trivial"


CSV_HEADER = "algo,n,m,beta,size,lower_bound,lb_kind,ratio"


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run, with a provenance-tagged lower bound."""

    solution: frozenset[int]
    algorithm: Algo
    n: int
    m: int
    beta: float | None
    lower_bound: int
    lb_kind: LbKind
    decomposition: dict[str, int] | None = None

    @property
    def size(self) -> int:
        return len(self.solution)

    @property
    def ratio_vs_lb(self) -> float:
        if self.size == 0 and self.lower_bound == 0:
            return 1.0
        return self.size / max(self.lower_bound, 1)

    def csv_row(self) -> str:
        beta_txt = "NA" if self.beta is None else f"{self.beta:.12g}"
        return (
            f"{self.algorithm.value},{self.n},{self.m},{beta_txt},"
            f"{self.size},{self.lower_bound},{self.lb_kind.value},"
            f"{self.ratio_vs_lb:.6f}"
        )

    def with_lower_bound(self, bound: int, kind: LbKind) -> "SolveReport":
        """This report with a better lower bound, if the new one is larger."""
        if bound > self.lower_bound:
            return replace(self, lower_bound=bound, lb_kind=kind)
        return self


def trivial_lower_bound(g: MultiGraph) -> int:
    """ceil(n / (max degree + 1)): any vertex dominates at most deg+1 nodes."""
    if g.n == 0:
        return 0
    dmax = int(g.degrees.max())
    return max(1, -(-g.n // (dmax + 1)))


# -- greedy -----------------------------------------------------------------


def _distinct_closed_cover(g: MultiGraph, v: int, covered: np.ndarray) -> int:
    gain = 0 if covered[v] else 1
    nbrs = g.neighbors(v)
    if len(nbrs):
        gain += int((~covered[np.unique(nbrs)]).sum())
    return gain


def greedy_min_ds(g: MultiGraph, beta: float | None = None) -> SolveReport:
    """Classic greedy: repeatedly take the vertex covering the most
    uncovered vertices, breaking ties by lowest vertex id."""
    covered = np.zeros(g.n, dtype=bool)
    heap = [(-(int(g.degrees[v]) + 1), v) for v in range(g.n)]
    heapq.heapify(heap)
    chosen: set[int] = set()
    remaining = g.n
    while remaining > 0:
        neg_gain, v = heapq.heappop(heap)
        gain = _distinct_closed_cover(g, v, covered)
        if gain < -neg_gain:
            if gain > 0:
                heapq.heappush(heap, (-gain, v))
            continue
        chosen.add(v)
        if not covered[v]:
            covered[v] = True
            remaining -= 1
        nbrs = g.neighbors(v)
        if len(nbrs):
            fresh = np.unique(nbrs)
            fresh = fresh[~covered[fresh]]
            covered[fresh] = True
            remaining -= len(fresh)
    return SolveReport(
        solution=frozenset(chosen),
        algorithm=Algo.GREEDY,
        n=g.n,
        m=g.m,
        beta=beta,
        lower_bound=trivial_lower_bound(g),
        lb_kind=LbKind.TRIVIAL,
    )


# -- structured ---------------------------------------------------------------


def structured_min_ds(g: MultiGraph, beta: float | None = None) -> SolveReport:
    """W plus one endpoint per degree-1 pair plus greedy on the remainder.

    The degree-1 decomposition covers every degree-1 vertex (through its
    support in W, or through its pair partner in M'); greedy then
    dominates the remainder R from within R.
    """
    dec = structural_decomposition(g)
    sub, old_ids = induced_subgraph(g, sorted(dec.r))
    greedy_r = greedy_min_ds(sub)
    chosen = set(dec.w) | set(dec.m_prime)
    chosen.update(int(old_ids[v]) for v in greedy_r.solution)
    if not is_dominating(g, chosen):
        raise DomainError("structured solution failed domination check")
    stats = {
        "w": len(dec.w),
        "v1": len(dec.v1),
        "m": len(dec.m),
        "m_prime": len(dec.m_prime),
        "r": len(dec.r),
        "greedy_r": len(greedy_r.solution),
    }
    return SolveReport(
        solution=frozenset(chosen),
        algorithm=Algo.STRUCTURED,
        n=g.n,
        m=g.m,
        beta=beta,
        lower_bound=trivial_lower_bound(g),
        lb_kind=LbKind.TRIVIAL,
        decomposition=stats,
    )


# -- exact --------------------------------------------------------------------


class _OutOfBudget(Exception):
    pass


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, nodes: int | None):
        self.remaining = math.inf if nodes is None else int(nodes)

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise _OutOfBudget


def _component_reductions(
    sub: MultiGraph,
) -> tuple[set[int], np.ndarray, list[set[int]]]:
    """Force isolated vertices and pendant supports; returns (forced,
    dominated mask, distinct neighbor sets)."""
    nc = sub.n
    nbr_sets: list[set[int]] = [set(np.unique(sub.neighbors(v)).tolist()) for v in range(nc)]
    forced: set[int] = set()
    dominated = np.zeros(nc, dtype=bool)

    def force(v: int) -> None:
        forced.add(v)
        dominated[v] = True
        for w in nbr_sets[v]:
            dominated[w] = True

    for v in range(nc):
        if not nbr_sets[v] and not dominated[v]:
            force(v)
    for v in range(nc):
        if len(nbr_sets[v]) == 1 and not dominated[v]:
            (u,) = nbr_sets[v]
            if u not in forced:
                force(u)
    return forced, dominated, nbr_sets


def _bitset_greedy(covers: list[int], universe: int) -> set[int]:
    chosen: set[int] = set()
    u = universe
    while u:
        best_v = -1
        best_gain = 0
        for v, cov in enumerate(covers):
            gain = (cov & u).bit_count()
            if gain > best_gain:
                best_gain, best_v = gain, v
        chosen.add(best_v)
        u &= ~covers[best_v]
    return chosen


def _counting_lb(covers: list[int], universe: int) -> int:
    if universe == 0:
        return 0
    cmax = max((cov & universe).bit_count() for cov in covers)
    return -(-universe.bit_count() // cmax)


def _solve_component_exact(
    sub: MultiGraph, budget: _Budget
) -> tuple[set[int], int, set[int]]:
    """Returns (optimal solution, optimum size, incumbent-on-abort).

    Raises _OutOfBudget with the incumbent recoverable via the third
    element of the caller-side fallback (greedy incumbent computed first).
    """
    forced, dominated, nbr_sets = _component_reductions(sub)
    nc = sub.n
    universe = 0
    for v in range(nc):
        if not dominated[v]:
            universe |= 1 << v
    if universe == 0:
        return set(forced), len(forced), set(forced)
    covers = [(1 << v) | sum(1 << w for w in nbr_sets[v]) for v in range(nc)]
    coverer_count = [0] * nc
    for v in range(nc):
        for w in nbr_sets[v]:
            coverer_count[w] += 1
    incumbent_extra = _bitset_greedy(covers, universe)
    best_extra = sorted(incumbent_extra)
    best_size = len(incumbent_extra)
    seen: dict[int, int] = {}
    bit_coverers: dict[int, list[int]] = {}

    def coverers_of(bit_index: int) -> list[int]:
        found = bit_coverers.get(bit_index)
        if found is None:
            mask = 1 << bit_index
            found = [v for v in range(nc) if covers[v] & mask]
            bit_coverers[bit_index] = found
        return found

    def bb(u: int, chosen: list[int]) -> None:
        nonlocal best_extra, best_size
        budget.tick()
        if u == 0:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_extra = list(chosen)
            return
        size = len(chosen)
        prev = seen.get(u)
        if prev is not None and prev <= size:
            return
        seen[u] = size
        if size + _counting_lb(covers, u) >= best_size:
            return
        pivot = -1
        pivot_deg = nc + 2
        rest = u
        while rest:
            bit = (rest & -rest).bit_length() - 1
            ways = coverer_count[bit] + 1
            if ways < pivot_deg:
                pivot_deg, pivot = ways, bit
            rest &= rest - 1
        options = coverers_of(pivot)
        options = sorted(options, key=lambda v: (-(covers[v] & u).bit_count(), v))
        for v in options:
            chosen.append(v)
            bb(u & ~covers[v], chosen)
            chosen.pop()

    try:
        bb(universe, [])
    except _OutOfBudget:
        raise _OutOfBudget(set(forced) | set(best_extra))
    return set(forced) | set(best_extra), len(forced) + best_size, set(forced) | set(incumbent_extra)


def exact_min_ds(
    g: MultiGraph, budget: int | None = None, beta: float | None = None
) -> SolveReport:
    """Minimum dominating set by reductions plus bitset branch and bound.

    Parameters
    ----------
    g : MultiGraph
        Input graph; components are solved independently.
    budget : int, optional
        Search-node budget across all components.  Required when the
        graph has more than 64 vertices.  On exhaustion raises
        BudgetExceeded carrying the best incumbent and a proven bound.
    beta : float, optional
        Tail exponent recorded in the report (metadata only).

    Returns
    -------
    SolveReport
        Optimal solution with lower_bound equal to its size (ExactOpt).
    """
    if g.n > 64 and budget is None:
        raise DomainError(
            f"graph has {g.n} > 64 vertices; supply a search budget"
        )
    sys.setrecursionlimit(max(sys.getrecursionlimit(), g.n + 2000))
    tracker = _Budget(budget)
    labels = connected_components(g)
    n_comp = int(labels.max()) + 1 if g.n else 0
    solution: set[int] = set()
    solved_lb = 0
    comps = [np.nonzero(labels == c)[0] for c in range(n_comp)]
    for idx, verts in enumerate(comps):
        sub, old_ids = induced_subgraph(g, verts)
        try:
            local, opt_size, _ = _solve_component_exact(sub, tracker)
        except _OutOfBudget as signal:
            incumbent = set(solution)
            local_best: set[int] = signal.args[0] if signal.args else set()
            incumbent.update(int(old_ids[v]) for v in local_best)
            lb_total = solved_lb + _component_root_lb(sub)
            for rest in comps[idx + 1 :]:
                rest_sub, rest_old = induced_subgraph(g, rest)
                incumbent.update(
                    int(rest_old[v]) for v in greedy_min_ds(rest_sub).solution
                )
                lb_total += _component_root_lb(rest_sub)
            raise BudgetExceeded(
                f"search budget {budget} exhausted in component {idx}",
                incumbent=frozenset(incumbent),
                lower_bound=lb_total,
            ) from None
        solved_lb += opt_size
        solution.update(int(old_ids[v]) for v in local)
    return SolveReport(
        solution=frozenset(solution),
        algorithm=Algo.EXACT,
        n=g.n,
        m=g.m,
        beta=beta,
        lower_bound=len(solution),
        lb_kind=LbKind.EXACT_OPT,
    )


def _component_root_lb(sub: MultiGraph) -> int:
    forced, dominated, nbr_sets = _component_reductions(sub)
    universe = 0
    for v in range(sub.n):
        if not dominated[v]:
            universe |= 1 << v
    if universe == 0:
        return len(forced)
    covers = [(1 << v) | sum(1 << w for w in nbr_sets[v]) for v in range(sub.n)]
    return len(forced) + _counting_lb(covers, universe)


# -- interval-volume lower bound ----------------------------------------------


def lemma2_lower_bound(
    p: PlgParams,
    variant: str = "a",
    n_for_functional: int | None = None,
) -> tuple[float, int]:
    """Volume-argument lower bound on the minimum dominating set size.

    Searches the smallest degree cutoff c such that the top interval
    [c, delta] has too little volume to dominate, which makes its size a
    lower bound on any dominating set.  Variant "a" compares the volume
    against the degree-1 population floor(e^alpha); variant "b" compares
    it against the size of the complementary interval [1, c-1].

    Parameters
    ----------
    p : PlgParams
        Degree-model parameters; the effective tail exponent must exceed 2.
    variant : {"a", "b"}
        Which comparison drives the cutoff search.
    n_for_functional : int, optional
        Evaluation size when p carries a functional exponent.

    Returns
    -------
    (x_star, bound) : tuple of float and int
        Relative cutoff c/delta and the bound |[c, delta]|.  When no
        cutoff qualifies the trivial bound (1.0, 1) is returned.
    """
    if variant not in ("a", "b"):
        raise DomainError(f"variant must be 'a' or 'b', got {variant!r}")
    beta_eff = p.beta_value(n_for_functional)
    if beta_eff <= 2.0:
        raise RegimeViolation(
            f"interval-volume bound needs beta > 2, got beta = {beta_eff:g}"
        )
    delta = p.delta_for(n_for_functional)
    target_a = p.scale_floor

    def qualifies(c: int) -> bool:
        _, vol = exact_interval_sums(p, c, delta, n_for_functional=n_for_functional)
        if variant == "a":
            return vol < target_a
        size_low, _ = exact_interval_sums(p, 1, c - 1, n_for_functional=n_for_functional)
        return vol < size_low

    lo, hi = 2, delta
    if hi < lo or not qualifies(hi):
        return 1.0, 1
    while lo < hi:
        mid = (lo + hi) // 2
        if qualifies(mid):
            hi = mid
        else:
            lo = mid + 1
    size, _ = exact_interval_sums(p, lo, delta, n_for_functional=n_for_functional)
    return lo / delta, int(size)
