"""Embedding graphs into power-law degree sequences, and generating PLGs.

The pipeline has four stages.  ``choose_parameters`` selects the scale
exponent alpha, the scaling depth d and the dominator-interval bounds
``[x*delta, y*delta]`` for a given tail regime, then re-evaluates the
three feasibility certificates exactly on the integer degree sequence.
``scale_instance`` produces the d-fold disjoint union.  ``construct_plg``
realizes the degree sequence around the (scaled) core graph: core
vertices keep their degrees plus one edge into a private degree-2 gadget
vertex (GAMMA), every remaining vertex of degree below the interval gets
exactly one edge into the interval (X), and leftover degrees are closed
off by ``fill_wheel``, which pairs residuals while keeping, inside every
target-degree class, the residuals sorted and within a spread of one.
``generate_plg`` runs the same wiring with an empty core to sample plain
sequence realizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from heapq import heapify, heappop, heappush
from typing import Iterable, NamedTuple

import numpy as np

from .bounds import BetaRegime, RegimeKind, classify_regime, zeta
from .degree_model import (
    MIN_BETA_GAP,
    BetaFunction,
    PlgParams,
    build_sequence,
    exact_interval_sums,
    sequence_totals,
)
from .errors import (
    DomainError,
    InfeasibleEmbedding,
    InfeasibleScale,
    InternalInvariantViolation,
    NotDominating,
    ParityError,
    RegimeViolation,
    ScaleError,
    WheelStall,
)
from .graph_core import MultiGraph, ResidualState, Role, RoleMap, is_dominating

__all__ = [
    "CertCheck",
    "CertificateReport",
    "EmbeddingParams",
    "EmbeddingResult",
    "THETA_SMALLNESS",
    "WheelTrace",
    "certify_parameters",
    "choose_parameters",
    "construct_plg",
    "fill_wheel",
    "generate_plg",
    "params_comment",
    "parse_params_comment",
    "replay_wheel_invariant",
    "scale_instance",
    "transfer_solution",
    "verify_embedding",
]

THETA_SMALLNESS = 0.9
_D_SEARCH_CAP = 4096
_SCALE_NODE_CAP = 4_000_000
_SCALE_EDGE_CAP = 8_000_000
# Exact certification walks the equal-count blocks of the degree sequence;
# the block enumerator demands e^alpha < 2**53 (exact integer counts in
# floats), so a depth scan must stop certifying candidates before that.
_CERT_ALPHA_CAP = 36.7
_BUILD_NODE_CAP = 8_000_000
_BUILD_EDGE_CAP = 8_000_000
_MIN_N_PROBE_CAP = 1 << 22


# -- parameter records --------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingParams:
    """Frozen outcome of parameter selection for one embedding.

    n_core is the unscaled input size N0 and n_scaled = n_core**d_scale
    is the size N the certificates refer to.  For functional exponents,
    n_functional records the PLG size at which beta was frozen.  A gen
    flavored record (no core) uses n_core = 0 and a_exp = b_exp = 0.
    """

    alpha: float
    beta: float | None
    beta_fn: BetaFunction | None
    eps: float
    a_exp: float
    b_exp: float
    d_scale: int
    x: float
    y: float
    n_core: int
    n_scaled: int
    n_functional: int | None = None
    relax_window: bool = False
    notes: tuple[str, ...] = ()

    @property
    def plg_params(self) -> PlgParams:
        return PlgParams(alpha=self.alpha, beta=self.beta, beta_fn=self.beta_fn)

    @property
    def beta_eff(self) -> float:
        return self.plg_params.beta_value(self.n_functional)

    @property
    def delta(self) -> int:
        return self.plg_params.delta_for(self.n_functional)

    @property
    def x_lo(self) -> int:
        """Smallest degree inside the dominator interval X."""
        if self.x <= 0.0:
            return self.delta + 1
        return max(2, math.ceil(self.x * self.delta - 1e-9))

    @property
    def x_hi(self) -> int:
        """Largest degree inside X (y = 1 makes this delta)."""
        return min(self.delta, math.floor(self.y * self.delta + 1e-9))

    @property
    def window_lo(self) -> int:
        """Smallest core-window degree ceil(N^(a/d))."""
        return math.ceil(self.n_scaled ** (self.a_exp / self.d_scale) - 1e-9)

    @property
    def window_hi(self) -> int:
        """Largest core-window degree floor(N^(b/d))."""
        return math.floor(self.n_scaled ** (self.b_exp / self.d_scale) + 1e-9)


class WheelTrace(NamedTuple):
    """One fill_wheel run: participating nodes, entry residuals, edges."""

    label: str
    nodes: np.ndarray
    entry_residuals: np.ndarray
    edges: np.ndarray


@dataclass(frozen=True)
class EmbeddingResult:
    """A constructed PLG with roles, the parameters used, and statistics."""

    graph: MultiGraph
    roles: RoleMap
    params: EmbeddingParams
    x_interval: tuple[int, int]
    stats: dict[str, int]
    wheel_traces: tuple[WheelTrace, ...] = ()


# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class CertCheck:
    name: str
    lhs: float
    rel: str
    rhs: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        suffix = f" ({self.note})" if self.note else ""
        return f"cert {self.name}: {self.lhs:.6g} {self.rel} {self.rhs:.6g} {verdict}{suffix}"


@dataclass(frozen=True)
class CertificateReport:
    checks: tuple[CertCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]


def _regime_kind_of(params: EmbeddingParams) -> RegimeKind:
    if params.beta_fn is not None:
        return RegimeKind.FUNCTIONAL_HARD
    return classify_regime(params.beta).kind


def certify_parameters(params: EmbeddingParams) -> CertificateReport:
    """Exactly re-evaluate the feasibility certificates on integer data.

    The three headline constraints are evaluated with exact interval sums
    of the realized degree sequence: the core window must hold N nodes,
    the dominator interval X must stay small against the optimum scale
    N^((d-1)/d), and X must carry enough volume to dominate the rest.
    Regime-specific side conditions (strict d bounds, x caps, interval
    disjointness) are reported alongside.
    """
    p = params.plg_params
    nfn = params.n_functional
    kind = _regime_kind_of(params)
    beta = params.beta_eff
    delta = params.delta
    d = params.d_scale
    n_scaled = params.n_scaled
    checks: list[CertCheck] = []

    w_lo, w_hi = params.window_lo, params.window_hi
    if w_lo < 1 or w_hi < w_lo or w_lo > delta:
        window_size = 0
    else:
        window_size, _ = exact_interval_sums(p, w_lo, min(w_hi, delta), n_for_functional=nfn)
    checks.append(
        CertCheck(
            "window_size",
            float(window_size),
            ">=",
            float(n_scaled),
            window_size >= n_scaled,
            note=f"window [{w_lo}, {w_hi}]",
        )
    )

    x_lo, x_hi = params.x_lo, params.x_hi
    if x_lo > x_hi:
        x_size = 0
        x_vol = 0
    else:
        x_size, x_vol = exact_interval_sums(p, x_lo, x_hi, n_for_functional=nfn)
    if d >= 2:
        smallness_target = THETA_SMALLNESS * n_scaled ** ((d - 1) / d)
        smallness_note = "theta * N^((d-1)/d)"
    else:
        smallness_target = THETA_SMALLNESS * n_scaled
        smallness_note = "theta * N (unscaled regime)"
    checks.append(
        CertCheck(
            "x_smallness",
            float(x_size),
            "<=",
            smallness_target,
            x_size <= smallness_target,
            note=smallness_note,
        )
    )

    total_nodes, _ = sequence_totals(p, n_for_functional=nfn)
    if beta > 1.0 + MIN_BETA_GAP:
        vol_target = zeta(beta) * math.exp(params.alpha)
        vol_note = "zeta(beta) * e^alpha"
    else:
        vol_target = float(total_nodes)
        vol_note = "exact node count"
    checks.append(
        CertCheck(
            "x_volume",
            float(x_vol),
            ">=",
            vol_target,
            x_vol >= vol_target,
            note=vol_note,
        )
    )

    checks.append(
        CertCheck(
            "window_disjoint",
            float(w_hi),
            "<",
            float(x_lo),
            w_hi < x_lo,
            note="core window below X",
        )
    )

    a, b = params.a_exp, params.b_exp
    if kind is RegimeKind.ONE_TO_TWO:
        d_min = (b + 1.0) * beta / (beta - 1.0)
        checks.append(CertCheck("d_strict", float(d), ">", d_min, d > d_min))
        x_cap = (beta / 2.0) ** (1.0 / (2.0 - beta))
        checks.append(CertCheck("x_cap", params.x, "<", x_cap, params.x < x_cap))
    elif kind is RegimeKind.TWO:
        z2 = zeta(2.0)
        x_cap = math.exp(-z2)
        checks.append(CertCheck("x_cap", params.x, "<", x_cap, params.x < x_cap))
        if params.alpha / 2.0 > z2:
            d_min = params.alpha * b / (params.alpha / 2.0 - z2) - 2.0 * b
            checks.append(CertCheck("d_strict", float(d), ">", d_min, d > d_min))
        else:
            checks.append(
                CertCheck(
                    "d_strict",
                    params.alpha / 2.0,
                    ">",
                    z2,
                    False,
                    note="alpha too small for any d",
                )
            )
    elif kind is RegimeKind.SUB_ONE:
        lo_x, hi_x = _sub_one_x_window(params.alpha, beta, b, d)
        ok = lo_x is not None and lo_x <= params.x <= hi_x
        checks.append(
            CertCheck(
                "x_window",
                params.x,
                "in",
                float(hi_x if hi_x is not None else math.nan),
                bool(ok),
                note=f"window [{lo_x!r}, {hi_x!r}]",
            )
        )
    elif kind is RegimeKind.FUNCTIONAL_HARD:
        d_min = (b + 1.0) * beta / (beta - 1.0)
        checks.append(CertCheck("d_strict", float(d), ">", d_min, d > d_min))
        lhs = params.x * delta
        rhs = n_scaled ** (b / d)
        checks.append(CertCheck("x_disjoint", lhs, ">", rhs, lhs > rhs))
    return CertificateReport(checks=tuple(checks))


def _sub_one_x_window(
    alpha: float, beta: float, b_exp: float, d: int
) -> tuple[float | None, float | None]:
    """The admissible x range for beta < 1 (size cap, volume floor)."""
    one_minus_delta = (d - 1) / (d + b_exp * beta) if d >= 2 else 0.5
    one_minus_dp = 0.9 * one_minus_delta
    expo = alpha * (1.0 / beta - one_minus_dp)
    inner = 1.0 - (1.0 - beta) * math.exp(-expo)
    if inner <= 0.0:
        return None, None
    lo = inner ** (1.0 / (1.0 - beta))
    denom = (1.0 / (2.0 - beta) - 0.5) * math.exp(alpha / beta)
    if denom <= 1.0:
        return None, None
    hi = math.sqrt(1.0 - 1.0 / denom)
    if lo > hi:
        return None, None
    return lo, hi


# -- parameter selection -------------------------------------------------------


def functional_fixed_point(
    bf: BetaFunction, alpha: float
) -> tuple[int, float]:
    """Find n with node-count(alpha, beta_fn(n)) == n (few iterations)."""
    n_est = max(4, round(zeta(2.25) * math.exp(alpha)))
    seen: dict[int, int] = {}
    for _ in range(30):
        p = PlgParams(alpha=alpha, beta=bf.beta_at(n_est))
        n_new, _ = sequence_totals(p)
        if n_new == n_est:
            return n_est, bf.beta_at(n_est)
        if n_new in seen:
            n_est = max(n_new, n_est)
            return n_est, bf.beta_at(n_est)
        seen[n_new] = 1
        n_est = n_new
    return n_est, bf.beta_at(n_est)


def choose_parameters(
    regime: BetaRegime,
    n_core: int,
    a_exp: float,
    b_exp: float,
    eps: float = 0.2,
    *,
    relax_window: bool = False,
    alpha_override: float | None = None,
    d_override: int | None = None,
) -> EmbeddingParams:
    """Select (alpha, d, x, y) for a lower-bound regime and certify them.

    Parameters
    ----------
    regime : BetaRegime
        Target regime; must be one of the lower-bound regimes.
    n_core : int
        Size N0 of the unscaled core graph.
    a_exp, b_exp : float
        Degree-window exponents with 0 < a < b < 1.
    eps : float
        Hardness parameter in (0, 1), recorded on the result.
    relax_window : bool, keyword only
        When set, certificates are computed but failures do not raise;
        alpha_override / d_override allow desk-scale materialization.

    Returns
    -------
    EmbeddingParams
        Frozen parameters with selection notes.

    Raises
    ------
    RegimeViolation
        For regimes without an embedding lower bound.
    InfeasibleScale
        When a certificate fails at this n_core (carries a feasible size
        estimate when one exists within the probe range).
    """
    if not regime.has_lower_bound:
        raise RegimeViolation(
            f"regime {regime.kind.value} has no embedding lower bound"
        )
    if not 0.0 < a_exp < b_exp < 1.0:
        raise DomainError(f"need 0 < a < b < 1, got a={a_exp}, b={b_exp}")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    if n_core < 2:
        raise DomainError(f"core size must be >= 2, got {n_core}")

    try:
        params = _select(regime, n_core, a_exp, b_exp, eps, relax_window,
                         alpha_override, d_override)
    except InfeasibleScale as exc:
        if exc.min_feasible_n is not None:
            raise
        raise InfeasibleScale(
            str(exc),
            min_feasible_n=_min_feasible_core(regime, n_core, a_exp, b_exp, eps),
        ) from None
    report = certify_parameters(params)
    if not relax_window and not report.all_pass:
        failing = ", ".join(report.failing())
        raise InfeasibleScale(
            f"certificates failed at n_core={n_core}: {failing}",
            min_feasible_n=_min_feasible_core(regime, n_core, a_exp, b_exp, eps),
        )
    return params


def _select(
    regime: BetaRegime,
    n_core: int,
    a_exp: float,
    b_exp: float,
    eps: float,
    relax_window: bool,
    alpha_override: float | None,
    d_override: int | None,
) -> EmbeddingParams:
    kind = regime.kind
    log_n0 = math.log(n_core)
    notes: list[str] = []
    beta = regime.beta
    beta_fn = regime.beta_fn
    n_functional: int | None = None

    if kind is RegimeKind.ONE_TO_TWO:
        d = d_override or (math.floor((b_exp + 1.0) * beta / (beta - 1.0)) + 1)
        alpha = alpha_override or (d + b_exp * beta) * log_n0
        x = 0.5 * (beta / 2.0) ** (1.0 / (2.0 - beta))
        notes.append(f"d > (b+1)beta/(beta-1) = {(b_exp + 1) * beta / (beta - 1):.6g}")
    elif kind is RegimeKind.TWO:
        z2 = zeta(2.0)
        x_cap = math.exp(-z2)
        x = 0.5 * x_cap
        notes.append(
            f"x = exp(-zeta(2))/2 = {x:.6g}"
            f" (half the volume cap {x_cap:.6g})"
        )
        d = d_override or 0
        if not d:
            scanned = False
            for cand in range(2, _D_SEARCH_CAP + 1):
                alpha_c = (cand + 2.0 * b_exp) * log_n0
                if alpha_c / 2.0 <= z2:
                    continue
                if cand <= alpha_c * b_exp / (alpha_c / 2.0 - z2) - 2.0 * b_exp:
                    continue
                if relax_window:
                    d = cand
                    break
                if alpha_c > _CERT_ALPHA_CAP:
                    raise InfeasibleScale(
                        f"certifying depth {cand} needs alpha = "
                        f"{alpha_c:.4g} > {_CERT_ALPHA_CAP:g}, past desk "
                        f"scale at n_core={n_core}"
                    )
                scanned = True
                trial = EmbeddingParams(
                    alpha=float(alpha_c),
                    beta=beta,
                    beta_fn=None,
                    eps=eps,
                    a_exp=a_exp,
                    b_exp=b_exp,
                    d_scale=cand,
                    x=x,
                    y=1.0,
                    n_core=n_core,
                    n_scaled=n_core**cand,
                )
                if certify_parameters(trial).all_pass:
                    d = cand
                    break
            if not d:
                raise InfeasibleScale(
                    f"no scaling depth below {_D_SEARCH_CAP} balances the "
                    f"disjointness bound at n_core={n_core}",
                    min_feasible_n=math.ceil(math.exp(2.0 * z2)) + 1,
                )
            if scanned:
                notes.append(f"depth scan: first certifying d = {d}")
        alpha = alpha_override or (d + 2.0 * b_exp) * log_n0
    elif kind is RegimeKind.ONE:
        d = d_override or 1
        alpha = alpha_override or (1.0 + b_exp) * log_n0
        x = 0.0  # placeholder; cutoff search below
        notes.append("scaling omitted (d = 1), e^alpha = N0^(1+b)")
    elif kind is RegimeKind.SUB_ONE:
        d = d_override or 2
        alpha = alpha_override or (d + b_exp * beta) * log_n0
        lo_x, hi_x = _sub_one_x_window(alpha, beta, b_exp, d)
        if lo_x is None:
            raise InfeasibleScale(
                f"the x window for beta={beta:g} is empty at n_core={n_core}"
            )
        x = 0.5 * (lo_x + hi_x)
        notes.append(f"x window [{lo_x:.12g}, {hi_x:.12g}], midpoint chosen")
        notes.append(
            f"1-delta = {(d - 1) / (d + b_exp * beta):.6g}, "
            f"1-delta' = {0.9 * (d - 1) / (d + b_exp * beta):.6g}"
        )
    elif kind is RegimeKind.FUNCTIONAL_HARD:
        d = d_override or (math.floor(2.0 * (b_exp + 1.0)) + 1)
        n_scaled = n_core**d
        base_alpha = (1.0 + a_exp / d) * math.log(n_scaled)
        alpha = alpha_override or base_alpha
        n_functional, beta_val = functional_fixed_point(beta_fn, alpha)
        if alpha_override is None:
            # e^alpha = N^(1+a/d) is only the leading order; the window
            # certificate loses a factor about (beta_f - 1) * N^(a/(d f)),
            # so raise alpha by the exact measured deficit until the
            # realized window holds N nodes.
            w_lo = math.ceil(n_scaled ** (a_exp / d) - 1e-9)
            w_hi = math.floor(n_scaled ** (b_exp / d) + 1e-9)
            for _ in range(60):
                if alpha > _CERT_ALPHA_CAP:
                    raise InfeasibleScale(
                        f"meeting the window certificate needs alpha = "
                        f"{alpha:.4g} > {_CERT_ALPHA_CAP:g}, past desk scale "
                        f"at n_core={n_core}"
                    )
                p = PlgParams(alpha=alpha, beta_fn=beta_fn)
                n_functional, beta_val = functional_fixed_point(beta_fn, alpha)
                delta_t = p.delta_for(n_functional)
                if w_lo > delta_t:
                    size = 0
                else:
                    size, _ = exact_interval_sums(
                        p, w_lo, min(w_hi, delta_t), n_for_functional=n_functional
                    )
                if size >= n_scaled:
                    break
                alpha += math.log(n_scaled / max(size, 1)) + 1e-6
            if alpha > base_alpha:
                notes.append(
                    f"alpha raised from {base_alpha:.12g} to {alpha:.12g} "
                    "to meet the window certificate exactly"
                )
        notes.append(
            f"beta frozen at n={n_functional}: beta_f = {beta_val:.12g}"
        )
        p = PlgParams(alpha=alpha, beta_fn=beta_fn)
        delta = p.delta_for(n_functional)
        floor_deg = n_scaled ** (b_exp / d)
        if floor_deg >= delta:
            raise InfeasibleScale(
                f"N^(b/d) = {floor_deg:.6g} reaches delta = {delta}; "
                "no room for the dominator interval"
            )
        x = math.sqrt(floor_deg / delta)
        notes.append("x = sqrt(N^(b/d) / delta)")
    else:  # pragma: no cover - guarded by has_lower_bound
        raise RegimeViolation(f"unsupported regime {kind.value}")

    n_scaled = n_core**d
    params = EmbeddingParams(
        alpha=float(alpha),
        beta=beta,
        beta_fn=beta_fn,
        eps=eps,
        a_exp=a_exp,
        b_exp=b_exp,
        d_scale=d,
        x=float(x),
        y=1.0,
        n_core=n_core,
        n_scaled=n_scaled,
        n_functional=n_functional,
        relax_window=relax_window,
        notes=tuple(notes),
    )
    if kind is RegimeKind.ONE:
        cutoff = _volume_cutoff(
            params.plg_params, params.n_functional, demand="total"
        )
        delta = params.delta
        params = replace(
            params,
            x=cutoff / delta,
            notes=params.notes + (f"cutoff search: x*delta = {cutoff}",),
        )
    return params


def _volume_cutoff(p: PlgParams, nfn: int | None, demand: str = "rest") -> int:
    """Largest cutoff c whose top interval [c, delta] has enough volume.

    demand="rest" asks vol >= nodes outside the interval (the wiring
    requirement); demand="total" asks vol >= all nodes (the stronger
    volume certificate used when beta <= 1).
    """
    delta = p.delta_for(nfn)
    total_nodes, _ = sequence_totals(p, n_for_functional=nfn)

    def qualifies(c: int) -> bool:
        size, vol = exact_interval_sums(p, c, delta, n_for_functional=nfn)
        floor_needed = total_nodes if demand == "total" else total_nodes - size
        return vol >= floor_needed

    lo, hi = 2, delta
    if delta < 2 or not qualifies(2):
        raise InfeasibleScale(
            "no degree cutoff gives the top interval enough volume to "
            "dominate the rest of the sequence"
        )
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if qualifies(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _min_feasible_core(
    regime: BetaRegime, start: int, a_exp: float, b_exp: float, eps: float
) -> int | None:
    """Smallest probed core size whose certificates all pass, if any."""
    last_bad = start
    probe = max(2 * start, 4)
    found: int | None = None
    while probe <= _MIN_N_PROBE_CAP:
        try:
            params = _select(regime, probe, a_exp, b_exp, eps, True, None, None)
            if certify_parameters(params).all_pass:
                found = probe
                break
        except (InfeasibleScale, ScaleError, OverflowError):
            pass
        except DomainError:
            return None
        last_bad = probe
        probe *= 2
    if found is None:
        return None
    lo, hi = last_bad, found
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        try:
            params = _select(regime, mid, a_exp, b_exp, eps, True, None, None)
            ok = certify_parameters(params).all_pass
        except (InfeasibleScale, ScaleError, OverflowError, DomainError):
            ok = False
        if ok:
            hi = mid
        else:
            lo = mid
    return hi


# -- scaling -------------------------------------------------------------------


def scale_instance(g: MultiGraph, d: int) -> MultiGraph:
    """The d-fold disjoint union: copy i maps vertex v to i*n + v."""
    if d < 1:
        raise DomainError(f"scaling depth must be >= 1, got {d}")
    if g.n < 1:
        raise DomainError("cannot scale an empty graph")
    copies = g.n ** (d - 1)
    n_total = g.n**d
    if n_total > _SCALE_NODE_CAP or g.m * copies > _SCALE_EDGE_CAP:
        raise ScaleError(
            f"scaled instance needs {n_total} vertices and {g.m * copies} "
            f"edges, beyond the materialization caps"
        )
    out = MultiGraph(n_total)
    eu, ev = g.edge_arrays()
    if len(eu):
        offsets = np.arange(copies, dtype=np.int64) * g.n
        out.add_edges_bulk(
            (eu[None, :] + offsets[:, None]).ravel(),
            (ev[None, :] + offsets[:, None]).ravel(),
        )
    return out.freeze()


# -- wheel filling -------------------------------------------------------------


class _WheelClass:
    """One target-degree class: ids canonically ordered, residuals shaped
    as a low prefix at r and a high suffix at r+1 (entry spread <= 1)."""

    __slots__ = ("ids", "r", "a")

    def __init__(self, ids: np.ndarray, residuals: np.ndarray):
        order = np.lexsort((ids, residuals))
        self.ids = ids[order]
        res_sorted = residuals[order]
        lo = int(res_sorted[0])
        hi = int(res_sorted[-1])
        if hi - lo > 1:
            raise DomainError(
                f"wheel entry residuals spread {hi - lo} > 1 within a class"
            )
        self.r = lo
        self.a = int(np.searchsorted(res_sorted, lo, side="right"))

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def high_count(self) -> int:
        return self.n - self.a

    def classmax(self) -> int:
        return self.r + 1 if self.a < self.n else self.r

    def next_id(self) -> int:
        return int(self.ids[self.a] if self.a < self.n else self.ids[0])

    def take_one(self) -> int:
        """Remove one legal residual unit; returns the node it came from."""
        if self.a < self.n:
            v = int(self.ids[self.a])
            self.a += 1
            return v
        self.r -= 1
        v = int(self.ids[0])
        self.a = 1
        return v


def _peek_second_value(cls: _WheelClass) -> int:
    """Residual value available right after one take from cls (0 if none)."""
    b = cls.n - cls.a
    if b >= 2:
        return cls.r + 1
    if cls.n < 2:
        return 0
    if b == 1:
        return cls.r if cls.r > 0 else 0
    return cls.r if cls.r >= 1 else 0


def fill_wheel(
    g: MultiGraph,
    rs: ResidualState,
    nodes: Iterable[int] | np.ndarray,
    rng_seed: int = 0,
) -> np.ndarray:
    """Close all residual degrees on ``nodes`` by pairing them into edges.

    Residuals are consumed degree-wise: each step pairs a unit from a
    class holding the global maximum residual with the largest other
    available unit, preferring class-internal pairs on ties.  This keeps
    every target-degree class sorted with spread at most one (the wheel
    invariant) and terminates whenever the residual profile is realizable
    at all (even total, no node above half the total).

    Parameters
    ----------
    g : MultiGraph
        Graph under construction (targets are current degree + residual).
    rs : ResidualState
        Residual budgets; entries for ``nodes`` are driven to zero.
    nodes : array-like of int
        Participating vertices; zero-residual entries are ignored.
    rng_seed : int
        Accepted for interface uniformity and reserved; the schedule is
        fully deterministic.

    Returns
    -------
    numpy.ndarray
        Emitted edges, shape (k, 2); not yet added to g.

    Raises
    ------
    ParityError
        If the residual total over ``nodes`` is odd.
    WheelStall
        If one node is left holding all remaining residual.
    DomainError
        If entry residuals are negative or spread more than 1 in a class.
    """
    del rng_seed
    node_arr = np.asarray(
        list(nodes) if not isinstance(nodes, np.ndarray) else nodes,
        dtype=np.int64,
    )
    if len(node_arr) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    res = rs.residual[node_arr]
    if (res < 0).any():
        raise DomainError("negative residual handed to the wheel")
    total = int(res.sum())
    if total % 2 != 0:
        raise ParityError(f"wheel residual total {total} is odd")
    live = res > 0
    node_arr = node_arr[live]
    res = res[live]
    if len(node_arr) == 0:
        return np.zeros((0, 2), dtype=np.int64)

    targets = g.degrees[node_arr] + res
    classes: list[_WheelClass] = []
    for t in np.unique(targets):
        sel = targets == t
        classes.append(_WheelClass(node_arr[sel], res[sel]))

    # Lazy max-heap over classes.  Only the entry carrying a class's
    # latest push stamp is live; anything older is discarded on sight.
    # This guarantees the "best other class" lookup can never surface a
    # second entry of the class just selected.
    stamps = [0] * len(classes)
    heap: list[tuple[int, int, int]] = [
        (-c.classmax(), i, 0) for i, c in enumerate(classes) if c.classmax() > 0
    ]
    heapify(heap)

    def push(i: int) -> None:
        if classes[i].classmax() > 0:
            stamps[i] += 1
            heappush(heap, (-classes[i].classmax(), i, stamps[i]))

    def clean_top() -> tuple[int, int] | None:
        while heap:
            neg, idx, st = heap[0]
            if st == stamps[idx] and classes[idx].classmax() == -neg:
                return -neg, idx
            heappop(heap)
        return None

    chunks_u: list[np.ndarray] = []
    chunks_v: list[np.ndarray] = []
    singles_u: list[int] = []
    singles_v: list[int] = []

    def flush_singles() -> None:
        # Emission order is part of the invariant; singles buffered since
        # the last bulk chunk must land before the next one.
        if singles_u:
            chunks_u.append(np.asarray(singles_u, dtype=np.int64))
            chunks_v.append(np.asarray(singles_v, dtype=np.int64))
            singles_u.clear()
            singles_v.clear()

    while True:
        top = clean_top()
        if top is None:
            break
        v1, i1 = top
        heappop(heap)
        c1 = classes[i1]
        other = clean_top()
        v2o = other[0] if other else 0
        s2 = _peek_second_value(c1)
        if s2 == 0 and v2o == 0:
            raise WheelStall(
                f"node {c1.next_id()} stranded with residual {v1}",
                node=c1.next_id(),
                residual=v1,
            )
        if s2 >= v2o:
            b = c1.high_count
            if b >= 2:
                k = b // 2
                start = c1.a
                flush_singles()
                chunks_u.append(c1.ids[start : start + 2 * k : 2].copy())
                chunks_v.append(c1.ids[start + 1 : start + 2 * k : 2].copy())
                c1.a += 2 * k
            else:
                singles_u.append(c1.take_one())
                singles_v.append(c1.take_one())
        else:
            _, i2 = other
            c2 = classes[i2]
            u = c1.take_one()
            v = c2.take_one()
            if u == v:
                raise InternalInvariantViolation(
                    f"wheel schedule tried to pair node {u} with itself"
                )
            singles_u.append(u)
            singles_v.append(v)
            push(i2)
        push(i1)

    flush_singles()
    if chunks_u:
        all_u = np.concatenate(chunks_u)
        all_v = np.concatenate(chunks_v)
    else:
        all_u = np.zeros(0, dtype=np.int64)
        all_v = np.zeros(0, dtype=np.int64)
    rs.residual[node_arr] = 0
    return np.column_stack([all_u, all_v])


def replay_wheel_invariant(
    nodes: np.ndarray,
    targets: np.ndarray,
    entry_residuals: np.ndarray,
    edges: np.ndarray,
) -> None:
    """Replay a wheel edge stream, checking the class invariant per edge.

    Within every target-degree class (canonical order: entry residual
    ascending, id ascending) residuals must stay non-decreasing along the
    order with spread at most one, and no residual may go negative.
    Raises InternalInvariantViolation on the first violation.
    """
    nodes = np.asarray(nodes, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    entry = np.asarray(entry_residuals, dtype=np.int64)
    order = np.lexsort((nodes, entry, targets))
    pos_of: dict[int, int] = {}
    class_of: list[int] = []
    class_start: list[int] = []
    res: list[int] = []
    prev_t = None
    for rank, idx in enumerate(order.tolist()):
        node = int(nodes[idx])
        pos_of[node] = rank
        t = int(targets[idx])
        if t != prev_t:
            class_start.append(rank)
            prev_t = t
        class_of.append(len(class_start) - 1)
        res.append(int(entry[idx]))
    class_end = class_start[1:] + [len(res)]

    def fail(msg: str) -> None:
        raise InternalInvariantViolation(f"wheel invariant violated: {msg}")

    eu = edges[:, 0].tolist()
    ev = edges[:, 1].tolist()
    for step, (u, v) in enumerate(zip(eu, ev)):
        if u == v:
            fail(f"edge {step} is a self-loop at {u}")
        for w in (u, v):
            p = pos_of.get(int(w))
            if p is None:
                fail(f"edge {step} touches foreign node {w}")
            res[p] -= 1
            if res[p] < 0:
                fail(f"node {w} driven below zero at edge {step}")
            c = class_of[p]
            lo, hi = class_start[c], class_end[c]
            if p > lo and res[p] < res[p - 1]:
                fail(
                    f"class order broken at node {w} (edge {step}): "
                    f"{res[p]} < left neighbor {res[p - 1]}"
                )
            if res[hi - 1] - res[lo] > 1:
                fail(f"class spread exceeds 1 at edge {step}")


# -- construction ---------------------------------------------------------------


def _balanced_assign(
    res_x: np.ndarray, x_ids: np.ndarray, n_out: int, constraint: str
) -> np.ndarray:
    """Give each of n_out outsiders one X partner, always serving the
    X vertices of currently largest residual first (ties: lowest id).
    Returns partner positions into x_ids; decrements res_x in place."""
    partners = np.empty(n_out, dtype=np.int64)
    pos = 0
    while pos < n_out:
        act = np.nonzero(res_x > 0)[0]
        if len(act) == 0:
            raise InfeasibleEmbedding(
                "dominator interval ran out of degree capacity",
                constraint=constraint,
            )
        order = act[np.lexsort((act, -res_x[act]))]
        take = min(len(order), n_out - pos)
        chosen = order[:take]
        partners[pos : pos + take] = chosen
        res_x[chosen] -= 1
        pos += take
    return partners


def _drain_balance(
    res_x: np.ndarray,
    x_ids: np.ndarray,
    w_partners: dict[int, list[int]],
    res_w_of: dict[int, int],
    w_targets_of: dict[int, int],
) -> list[tuple[int, int]]:
    """Make the X residual pool realizable by parallel drain edges.

    Drains repeat (max residual over half the total, then parity) and
    each drain adds one parallel edge between a currently-maximal X
    vertex and one of its W partners that sits at its own class maximum,
    so both sides keep their class spread at one.
    """
    drains: list[tuple[int, int]] = []
    # Per W target-degree class: residuals start uniform, and we only
    # ever drain a member sitting at the class maximum, so every class
    # stays two-valued {max, max - 1}.  Track (max, count at max, size).
    class_state: dict[int, list[int]] = {}
    for w, t in w_targets_of.items():
        state = class_state.get(t)
        if state is None:
            class_state[t] = [res_w_of[w], 1, 1]
        else:
            if res_w_of[w] != state[0]:
                raise InternalInvariantViolation(
                    "W residuals not uniform per class before draining"
                )
            state[1] += 1
            state[2] += 1

    def drain_once() -> bool:
        top = int(res_x.max())
        for pos in np.nonzero(res_x == top)[0].tolist():
            xv = int(x_ids[pos])
            for w in w_partners.get(xv, ()):
                t = w_targets_of[w]
                state = class_state[t]
                if res_w_of[w] >= 1 and res_w_of[w] == state[0]:
                    drains.append((xv, w))
                    res_x[pos] -= 1
                    res_w_of[w] -= 1
                    state[1] -= 1
                    if state[1] == 0:
                        state[0] -= 1
                        state[1] = state[2]
                    return True
        return False

    guard = 0
    while True:
        total = int(res_x.sum())
        if total == 0:
            break
        mx = int(res_x.max())
        need_balance = 2 * mx > total
        need_parity = total % 2 == 1
        if not need_balance and not need_parity:
            break
        guard += 1
        if guard > 10_000_000 or not drain_once():
            raise InfeasibleEmbedding(
                "cannot rebalance the dominator-interval residual pool",
                constraint="wheel_balance",
            )
    return drains


def _wire(
    g: MultiGraph,
    targets: np.ndarray,
    x_ids: np.ndarray,
    w_ids: np.ndarray,
    v1_ids: np.ndarray,
    gamma_ids: np.ndarray,
    rng_seed: int,
) -> tuple[dict[str, int], list[WheelTrace]]:
    """Shared wiring: one X edge per outsider, drains, then both wheels."""
    res_x = targets[x_ids] - g.degrees[x_ids]
    stats: dict[str, int] = {}
    order_groups = (("v1", v1_ids), ("w", w_ids), ("gamma", gamma_ids))
    w_partner_map: dict[int, list[int]] = {}
    for label, group in order_groups:
        if len(group) == 0:
            continue
        partners = _balanced_assign(res_x, x_ids, len(group), "x_capacity")
        g.add_edges_bulk(x_ids[partners], group)
        if label == "w":
            for pos, w in zip(partners.tolist(), group.tolist()):
                w_partner_map.setdefault(int(x_ids[pos]), []).append(w)
    res_w = targets[w_ids] - g.degrees[w_ids]
    res_w_of = {int(w): int(r) for w, r in zip(w_ids, res_w)}
    w_targets_of = {int(w): int(targets[w]) for w in w_ids}
    drains = _drain_balance(
        res_x, x_ids, w_partner_map, res_w_of, w_targets_of
    )
    if drains:
        du = np.asarray([d[0] for d in drains], dtype=np.int64)
        dv = np.asarray([d[1] for d in drains], dtype=np.int64)
        g.add_edges_bulk(du, dv)
    stats["drain_edges"] = len(drains)

    rs = ResidualState.from_targets(g, targets)
    traces: list[WheelTrace] = []
    for label, pool in (("x", x_ids), ("w", w_ids)):
        entry = rs.residual[pool].copy()
        edges = fill_wheel(g, rs, pool, rng_seed)
        if len(edges):
            g.add_edges_bulk(edges[:, 0], edges[:, 1])
        traces.append(
            WheelTrace(
                label=label,
                nodes=pool.copy(),
                entry_residuals=entry,
                edges=edges,
            )
        )
        stats[f"wheel_edges_{label}"] = len(edges)
    leftover = targets - g.degrees
    if leftover.any():
        bad = int(np.nonzero(leftover)[0][0])
        raise InternalInvariantViolation(
            f"vertex {bad} finished {int(leftover[bad])} short of its target"
        )
    return stats, traces


def _slot_layout(
    counts: np.ndarray,
    core_targets: np.ndarray,
    x_lo: int,
    x_hi: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Assign vertex ids: core first, then GAMMA, then ascending degrees.

    Returns (targets, x_ids, w_ids, v1_ids, gamma_ids); raises
    InfeasibleEmbedding with the violated constraint name on shortage.
    """
    delta = len(counts) - 1
    n0 = len(core_targets)
    avail = counts.astype(np.int64).copy()
    if n0:
        core_max = int(core_targets.max())
        if core_max >= x_lo:
            raise InfeasibleEmbedding(
                f"core target degree {core_max} reaches the dominator "
                f"interval start {x_lo}",
                constraint="core_window",
            )
        if x_lo <= 2:
            raise InfeasibleEmbedding(
                "dominator interval would swallow the degree-2 gadget slots",
                constraint="gamma_window",
            )
        hist = np.bincount(core_targets, minlength=delta + 1)
        avail -= hist
        avail[2] -= n0
        if (avail < 0).any():
            j = int(np.nonzero(avail < 0)[0][0])
            name = "gamma_slots" if j == 2 else "core_slots"
            raise InfeasibleEmbedding(
                f"degree-{j} slots exhausted by {-int(avail[j])}",
                constraint=name,
            )
    n_total = int(counts.sum())
    targets = np.zeros(n_total, dtype=np.int64)
    targets[:n0] = core_targets
    targets[n0 : 2 * n0] = 2
    cursor = 2 * n0
    starts = np.zeros(delta + 2, dtype=np.int64)
    for j in range(1, delta + 1):
        starts[j] = cursor
        cnt = int(avail[j])
        targets[cursor : cursor + cnt] = j
        cursor += cnt
    starts[delta + 1] = cursor
    if cursor != n_total:
        raise InternalInvariantViolation("slot layout does not cover all ids")

    def block(j_from: int, j_to: int) -> np.ndarray:
        if j_from > j_to:
            return np.zeros(0, dtype=np.int64)
        return np.arange(starts[j_from], starts[j_to + 1], dtype=np.int64)

    v1_ids = block(1, 1)
    w_ids = block(2, min(x_lo - 1, delta))
    x_ids = block(x_lo, min(x_hi, delta)) if x_lo <= delta else np.zeros(0, np.int64)
    gamma_ids = np.arange(n0, 2 * n0, dtype=np.int64)
    return targets, x_ids, w_ids, v1_ids, gamma_ids


def _precheck(
    counts: np.ndarray,
    x_ids_count: int,
    x_volume: int,
    v1_count: int,
    w_count: int,
    gamma_count: int,
) -> None:
    if x_ids_count == 0:
        raise InfeasibleEmbedding(
            "dominator interval X is empty", constraint="x_nonempty"
        )
    if v1_count < x_ids_count:
        raise InfeasibleEmbedding(
            f"{x_ids_count} X vertices but only {v1_count} degree-1 "
            "vertices to witness them",
            constraint="v1_for_x",
        )
    demand = v1_count + w_count + gamma_count
    if x_volume < demand:
        raise InfeasibleEmbedding(
            f"X volume {x_volume} cannot serve {demand} outside vertices",
            constraint="x_capacity",
        )


def construct_plg(
    core: MultiGraph, params: EmbeddingParams, rng_seed: int = 0
) -> EmbeddingResult:
    """Realize the degree sequence around a core graph.

    Core vertices 0..N0-1 keep their core edges and target degree
    deg+1; ids N0..2N0-1 are their private degree-2 GAMMA partners; the
    remaining ids fill the sequence in ascending degree order.  Every
    GAMMA, W and degree-1 vertex receives exactly one edge into the
    dominator interval X, every X vertex at least one degree-1 witness,
    and residual degrees close via parity-safe drains plus two wheel
    phases (X, then W).

    Raises InfeasibleEmbedding (named constraint) when the sequence
    cannot host the core, ScaleError beyond materialization caps, and
    ParityError when an odd-total parity mode is used.
    """
    p = params.plg_params
    nfn = params.n_functional
    n_nodes, total_degree = sequence_totals(p, n_for_functional=nfn)
    if total_degree % 2 != 0:
        raise ParityError(
            f"degree sequence total {total_degree} is odd; wheel phases "
            "need an even total"
        )
    if n_nodes > _BUILD_NODE_CAP or total_degree // 2 > _BUILD_EDGE_CAP:
        raise ScaleError(
            f"materializing {n_nodes} nodes / {total_degree // 2} edges "
            "exceeds the build caps"
        )
    seq = build_sequence(p, n_for_functional=nfn)
    counts = seq.counts
    if params.x_hi < seq.delta:
        raise DomainError(
            "construction realizes the full top interval (y = 1); "
            f"x_hi = {params.x_hi} < delta = {seq.delta}"
        )
    n0 = core.n
    core_targets = (core.degrees + 1).astype(np.int64)
    targets, x_ids, w_ids, v1_ids, gamma_ids = _slot_layout(
        counts, core_targets, params.x_lo, params.x_hi
    )
    x_size = len(x_ids)
    x_volume = int(targets[x_ids].sum())
    _precheck(counts, x_size, x_volume, len(v1_ids), len(w_ids), len(gamma_ids))
    if not params.relax_window and n0:
        w_lo, w_hi = params.window_lo, params.window_hi
        tmin, tmax = int(core_targets.min()), int(core_targets.max())
        if tmin < w_lo or tmax > w_hi:
            raise InfeasibleEmbedding(
                f"core degrees+1 span [{tmin}, {tmax}] outside the window "
                f"[{w_lo}, {w_hi}]; use the relaxed window mode to proceed",
                constraint="core_window",
            )

    g = MultiGraph(len(targets))
    eu, ev = core.edge_arrays()
    if len(eu):
        g.add_edges_bulk(eu, ev)
    if n0:
        base = np.arange(n0, dtype=np.int64)
        g.add_edges_bulk(base, base + n0)
    roles = RoleMap(g.n)
    roles.assign(np.arange(n0, dtype=np.int64), Role.CORE)
    roles.assign(gamma_ids, Role.GAMMA)
    roles.assign(v1_ids, Role.V1)
    roles.assign(w_ids, Role.W)
    roles.assign(x_ids, Role.X)
    stats, traces = _wire(
        g, targets, x_ids, w_ids, v1_ids, gamma_ids, rng_seed
    )
    g.freeze()
    g.recount_check()
    stats.update(
        n=g.n,
        m=g.m,
        core=n0,
        gamma=len(gamma_ids),
        x=x_size,
        w=len(w_ids),
        v1=len(v1_ids),
    )
    return EmbeddingResult(
        graph=g,
        roles=roles,
        params=params,
        x_interval=(params.x_lo, min(params.x_hi, seq.delta)),
        stats=stats,
        wheel_traces=tuple(traces),
    )


def generate_plg(
    p: PlgParams, rng_seed: int = 0, n_for_functional: int | None = None
) -> EmbeddingResult:
    """Build a deterministic realization of the degree sequence (no core).

    When the top of the sequence carries enough volume to dominate the
    rest (a degree cutoff c with vol([c, delta]) >= nodes outside
    exists), roles X/W/V1 are wired exactly as in ``construct_plg`` with
    an empty core.  Otherwise (heavy degree-1 tail) every vertex of
    degree j >= 2 is made the center of a star on fresh degree-1 leaves
    and leftover leaves pair up, which realizes the sequence with the
    degree-1 pair structure the regime implies.
    """
    n_nodes, total_degree = sequence_totals(p, n_for_functional=n_for_functional)
    if total_degree % 2 != 0:
        raise ParityError(
            f"degree sequence total {total_degree} is odd; choose the "
            "total-degree parity mode or adjust alpha"
        )
    if n_nodes > _BUILD_NODE_CAP or total_degree // 2 > _BUILD_EDGE_CAP:
        raise ScaleError(
            f"materializing {n_nodes} nodes / {total_degree // 2} edges "
            "exceeds the build caps"
        )
    seq = build_sequence(p, n_for_functional=n_for_functional)
    counts = seq.counts
    delta = seq.delta
    beta_val = p.beta_value(n_for_functional)
    gen_params = EmbeddingParams(
        alpha=p.alpha,
        beta=p.beta,
        beta_fn=p.beta_fn,
        eps=0.0,
        a_exp=0.0,
        b_exp=0.0,
        d_scale=1,
        x=0.0,
        y=1.0,
        n_core=0,
        n_scaled=0,
        n_functional=n_for_functional,
        notes=(f"gen mode, beta = {beta_val:.12g}",),
    )
    try:
        cutoff = _volume_cutoff(p, n_for_functional)
    except InfeasibleScale:
        cutoff = 0
    if cutoff >= 2:
        gen_params = replace(gen_params, x=cutoff / delta)
        targets, x_ids, w_ids, v1_ids, gamma_ids = _slot_layout(
            counts, np.zeros(0, dtype=np.int64), cutoff, delta
        )
        x_volume = int(targets[x_ids].sum())
        _precheck(counts, len(x_ids), x_volume, len(v1_ids), len(w_ids), 0)
        g = MultiGraph(len(targets))
        roles = RoleMap(g.n)
        roles.assign(v1_ids, Role.V1)
        roles.assign(w_ids, Role.W)
        roles.assign(x_ids, Role.X)
        stats, traces = _wire(
            g, targets, x_ids, w_ids, v1_ids, gamma_ids, rng_seed
        )
        g.freeze()
        g.recount_check()
        stats.update(
            n=g.n, m=g.m, core=0, gamma=0,
            x=len(x_ids), w=len(w_ids), v1=len(v1_ids), star_mode=0,
        )
        return EmbeddingResult(
            graph=g,
            roles=roles,
            params=gen_params,
            x_interval=(cutoff, delta),
            stats=stats,
            wheel_traces=tuple(traces),
        )
    return _generate_stars(seq, gen_params)


def _generate_stars(seq, gen_params: EmbeddingParams) -> EmbeddingResult:
    """Star-and-pair realization for sequences with a heavy degree-1 tail."""
    counts = seq.counts
    delta = seq.delta
    y1 = int(counts[1])
    centers_total = int(counts[2:].sum())
    internal = int((np.arange(2, delta + 1) * counts[2 : delta + 1]).sum())
    if internal > y1:
        raise InternalInvariantViolation(
            "star mode selected although the degree-1 tail is too small"
        )
    n_total = y1 + centers_total
    g = MultiGraph(n_total)
    targets = np.zeros(n_total, dtype=np.int64)
    targets[:y1] = 1
    cursor = y1
    center_ids: list[np.ndarray] = []
    for j in range(2, delta + 1):
        cnt = int(counts[j])
        targets[cursor : cursor + cnt] = j
        center_ids.append(np.arange(cursor, cursor + cnt, dtype=np.int64))
        cursor += cnt
    centers = (
        np.concatenate(center_ids) if center_ids else np.zeros(0, np.int64)
    )
    leaf_counts = targets[centers]
    hubs = np.repeat(centers, leaf_counts)
    leaves = np.arange(internal, dtype=np.int64)
    if len(hubs):
        g.add_edges_bulk(hubs, leaves)
    leftover = y1 - internal
    if leftover % 2 != 0:
        raise InternalInvariantViolation(
            "odd number of leftover degree-1 vertices despite even total"
        )
    if leftover:
        lo = np.arange(internal, y1, 2, dtype=np.int64)
        g.add_edges_bulk(lo, lo + 1)
    g.freeze()
    g.recount_check()
    roles = RoleMap(n_total)
    roles.assign(np.arange(y1, dtype=np.int64), Role.V1)
    roles.assign(centers, Role.W)
    stats = {
        "n": g.n,
        "m": g.m,
        "core": 0,
        "gamma": 0,
        "x": 0,
        "w": len(centers),
        "v1": y1,
        "star_mode": 1,
        "pair_edges": leftover // 2,
        "drain_edges": 0,
        "wheel_edges_x": 0,
        "wheel_edges_w": 0,
    }
    return EmbeddingResult(
        graph=g,
        roles=roles,
        params=gen_params,
        x_interval=(0, 0),
        stats=stats,
        wheel_traces=(),
    )


# -- verification and transfer ---------------------------------------------------


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[VerificationCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [
            f"check {c.name}: {'PASS' if c.passed else 'FAIL'}"
            + (f" ({c.detail})" if c.detail else "")
            for c in self.checks
        ]


def verify_embedding(result: EmbeddingResult) -> VerificationReport:
    """Non-raising structural audit of a construction result.

    Checks the exact degree histogram against the model, the handshake
    identity, role totality, the core-GAMMA perfect matching, the
    one-distinct-X-neighbor property of GAMMA, W and degree-1 vertices,
    and that every X vertex has a degree-1 witness.  Checks that do not
    apply (empty X, no core) pass vacuously with a note.
    """
    g = result.graph
    roles = result.roles
    p = result.params.plg_params
    nfn = result.params.n_functional
    checks: list[VerificationCheck] = []

    seq = build_sequence(p, n_for_functional=nfn)
    hist = g.degree_histogram()
    want = seq.counts
    pad = max(len(hist), len(want))
    hist_p = np.zeros(pad, dtype=np.int64)
    want_p = np.zeros(pad, dtype=np.int64)
    hist_p[: len(hist)] = hist
    want_p[: len(want)] = want
    same = bool(np.array_equal(hist_p, want_p))
    detail = ""
    if not same:
        j = int(np.nonzero(hist_p != want_p)[0][0])
        detail = f"first mismatch at degree {j}: {hist_p[j]} vs {want_p[j]}"
    checks.append(VerificationCheck("degree_histogram", same, detail))

    checks.append(
        VerificationCheck(
            "handshake",
            int(g.degrees.sum()) == 2 * g.m,
            f"sum deg = {int(g.degrees.sum())}, 2m = {2 * g.m}",
        )
    )
    checks.append(
        VerificationCheck("roles_partition", roles.complete())
    )

    core_ids = roles.vertices_with(Role.CORE)
    gamma_ids = roles.vertices_with(Role.GAMMA)
    n0 = len(core_ids)
    if n0 == 0:
        checks.append(
            VerificationCheck("gamma_matching", True, "vacuous (no core)")
        )
    else:
        ok = len(gamma_ids) == n0
        if ok:
            gamma_set = set(gamma_ids.tolist())
            for v in core_ids.tolist():
                nbrs = set(g.neighbors(v).tolist()) & gamma_set
                if nbrs != {v + n0}:
                    ok = False
                    break
        checks.append(VerificationCheck("gamma_matching", ok))

    x_ids = roles.vertices_with(Role.X)
    x_set = set(x_ids.tolist())
    if not x_set:
        checks.append(
            VerificationCheck("one_x_neighbor", True, "vacuous (X empty)")
        )
        checks.append(
            VerificationCheck("x_has_v1", True, "vacuous (X empty)")
        )
    else:
        need_one = np.concatenate(
            [roles.vertices_with(Role.W), roles.vertices_with(Role.V1), gamma_ids]
        )
        ok = True
        detail = ""
        for v in need_one.tolist():
            cnt = len({w for w in g.neighbors(v).tolist() if w in x_set})
            if cnt != 1:
                ok = False
                detail = f"vertex {v} has {cnt} distinct X neighbors"
                break
        checks.append(VerificationCheck("one_x_neighbor", ok, detail))
        v1_set = set(roles.vertices_with(Role.V1).tolist())
        ok = True
        detail = ""
        for v in x_ids.tolist():
            if not any(w in v1_set for w in g.neighbors(v).tolist()):
                ok = False
                detail = f"X vertex {v} has no degree-1 witness"
                break
        checks.append(VerificationCheck("x_has_v1", ok, detail))
    return VerificationReport(checks=tuple(checks))


def transfer_solution(
    result: EmbeddingResult, d_plg: Iterable[int]
) -> frozenset[int]:
    """Map a PLG dominating set back to one of the core graph.

    Core members of d_plg are kept; each GAMMA member contributes its
    core partner.  The result dominates the core graph and is never
    larger than d_plg.

    Raises NotDominating when d_plg does not dominate the PLG, and
    DomainError when the result has no core.
    """
    n0 = result.stats.get("core", 0)
    if n0 == 0:
        raise DomainError("result has no core to transfer a solution onto")
    d_set = set(int(v) for v in d_plg)
    if not is_dominating(result.graph, d_set):
        raise NotDominating("input set does not dominate the PLG")
    out: set[int] = set()
    for v in d_set:
        if v < n0:
            out.add(v)
        elif v < 2 * n0:
            out.add(v - n0)
    return frozenset(out)


# -- parameter comments -----------------------------------------------------------


def params_comment(params: EmbeddingParams) -> str:
    """One-line `params:` comment embedding all scalar fields."""
    fields = [
        f"alpha={params.alpha!r}",
        f"beta={params.beta!r}" if params.beta is not None else
        f"beta_fn={params.beta_fn.label}",
        f"eps={params.eps!r}",
        f"a_exp={params.a_exp!r}",
        f"b_exp={params.b_exp!r}",
        f"d_scale={params.d_scale}",
        f"x={params.x!r}",
        f"y={params.y!r}",
        f"n_core={params.n_core}",
        f"n_scaled={params.n_scaled}",
        f"n_functional={params.n_functional}",
        f"relax={int(params.relax_window)}",
    ]
    return "params: " + " ".join(fields)


def parse_params_comment(line: str) -> dict[str, str]:
    """Parse a `params:` comment back into a key-value dict of strings."""
    body = line.split("params:", 1)
    if len(body) != 2:
        raise DomainError(f"not a params comment: {line!r}")
    out: dict[str, str] = {}
    for token in body[1].split():
        if "=" not in token:
            raise DomainError(f"bad params token {token!r}")
        key, value = token.split("=", 1)
        out[key] = value
    return out
