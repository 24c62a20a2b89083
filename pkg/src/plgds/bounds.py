"""Closed-form approximation bounds and threshold constants.

This module evaluates every closed-form quantity the rest of the package
reports: the zeta normalization constant of the power-law degree model, the
ratio bounds of the structured dominating-set algorithm for beta > 2 (the
"case I" branch where adjacent degree-one pairs must exist and the "case II"
branch where high-degree volume suffices), the comparison ratio of Shen et
al., the beta thresholds of the lemma3_bound family, and the logarithmic
hardness factors of the lower-bound regimes.

All asymptotic factors are evaluated under the leading-term convention:
o(1) and O(1) terms are dropped, and reports state so.  Root finding uses
plain bisection with bracket width 1e-4 (values are quoted to two decimals).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING

from .errors import (
    AmbiguousGrowth,
    DivergentSeries,
    DomainError,
    InfeasibleScale,
    InternalInvariantViolation,
    RegimeViolation,
)

if TYPE_CHECKING:  # pragma: no cover - typing only, avoids an import cycle
    from .degree_model import BetaFunction

__all__ = [
    "MIN_BETA_GAP",
    "BetaRegime",
    "BoundReport",
    "RegimeKind",
    "beta_threshold",
    "bound_report",
    "case_i_crossover",
    "case_i_ratio",
    "case_ii_bound",
    "classify_regime",
    "hardness_factor",
    "hardness_prefactor",
    "lemma1_b",
    "lemma3_bound",
    "shen_ratio",
    "zeta",
]

# Betas closer than this to a divergence point are rejected outright.
MIN_BETA_GAP = 1e-6

# Euler-Maclaurin correction coefficients B_{2k}/(2k)! for k = 1..5.  The
# fifth entry is only used for the certified remainder bound (the remainder
# of the truncated expansion is at most the first omitted term).
_EM_COEFFS = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
)


def _em_remainder_bound(beta: float, n: int) -> float:
    """Magnitude bound for the first omitted Euler-Maclaurin term at cutoff n."""
    prod = 1.0
    for i in range(9):  # rising factorial beta * (beta+1) * ... * (beta+8)
        prod *= beta + i
    return abs(_EM_COEFFS[4]) * prod * n ** (-beta - 9.0)


def zeta(beta: float, tol: float = 1e-12) -> float:
    """Evaluate the zeta series sum_{j>=1} j**-beta within absolute error tol.

    The series is truncated at a cutoff N and the tail is replaced by its
    integral value N**(1-beta)/(beta-1) plus Euler-Maclaurin corrections;
    the certified remainder (first omitted correction term) drives the
    choice of N, doubling from 16 until the remainder is below tol/2.

    Parameters
    ----------
    beta : float
        Series exponent; must exceed 1 by at least ``MIN_BETA_GAP``.
    tol : float
        Absolute error budget, > 0.

    Raises
    ------
    DivergentSeries
        If beta <= 1 + MIN_BETA_GAP.
    DomainError
        If tol <= 0.
    """
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not beta > 1.0 + MIN_BETA_GAP:
        raise DivergentSeries(
            f"zeta series diverges (or is numerically unstable) at beta={beta}; "
            f"need beta > 1 + {MIN_BETA_GAP}"
        )
    n = 16
    while _em_remainder_bound(beta, n) > 0.5 * tol and n < (1 << 22):
        n <<= 1
    head = math.fsum(j ** -beta for j in range(1, n + 1))
    tail = n ** (1.0 - beta) / (beta - 1.0) - 0.5 * n ** -beta
    prod = beta  # rising factorial (beta)_{2k-1}
    power = n ** (-beta - 1.0)
    corr = 0.0
    for k, coef in enumerate(_EM_COEFFS[:4], start=1):
        corr += coef * prod * power
        prod *= (beta + 2 * k - 1) * (beta + 2 * k)
        power /= float(n) * float(n)
    return head + tail + corr


def _partial_zeta(beta: float, m: int) -> float:
    """Partial sum sum_{j=1}^{m} j**-beta (0 for m <= 0)."""
    if m <= 0:
        return 0.0
    if m <= 1 << 16:
        return math.fsum(j ** -beta for j in range(1, m + 1))
    # Large m: subtract the certified tail from the full series value.
    tail = m ** (1.0 - beta) / (beta - 1.0) - 0.5 * m ** -beta
    prod = beta
    power = m ** (-beta - 1.0)
    for k, coef in enumerate(_EM_COEFFS[:4], start=1):
        tail += coef * prod * power
        prod *= (beta + 2 * k - 1) * (beta + 2 * k)
        power /= float(m) * float(m)
    return zeta(beta) - tail


def _zeta_or_inf(beta: float) -> float:
    """zeta(beta), treating anything at or below the divergence gap as +inf."""
    if beta <= 1.0 + MIN_BETA_GAP:
        return math.inf
    return zeta(beta)


def _bisect(fn, lo: float, hi: float, tol: float = 1e-4) -> float:
    """Root of a sign-changing function by bisection; fn(lo) <= 0 <= fn(hi)."""
    flo, fhi = fn(lo), fn(hi)
    if flo > 0.0 or fhi < 0.0:
        raise InternalInvariantViolation(
            f"bisection bracket [{lo}, {hi}] does not straddle a sign change"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=None)
def case_i_crossover() -> float:
    """Beta value where zeta(beta - 1) = 2, found by bisection to 1e-4.

    Below this value (but above 2) the high-degree volume suffices to
    dominate all degree-one nodes (case II); above it, adjacent degree-one
    pairs are forced to exist (case I).
    """
    return _bisect(lambda b: 2.0 - zeta(b - 1.0), 2.5, 3.0)


def case_i_ratio(beta: float) -> float:
    """Ratio bound (zeta(b) - zeta(b-1)/2) / (1 - zeta(b-1)/2) for case I.

    Defined only where zeta(beta - 1) < 2, i.e. beta above
    ``case_i_crossover()``; elsewhere the case II analysis applies and
    RegimeViolation is raised.
    """
    if beta <= 2.0 + MIN_BETA_GAP:
        raise RegimeViolation(
            f"case_i_ratio needs beta > 2 with zeta(beta-1) < 2; got beta={beta}"
        )
    z1 = _zeta_or_inf(beta - 1.0)
    if not z1 < 2.0:
        raise RegimeViolation(
            f"zeta(beta-1) = {z1:.6g} >= 2 at beta={beta}; case II applies"
        )
    return (zeta(beta) - z1 / 2.0) / (1.0 - z1 / 2.0)


def shen_ratio(beta: float) -> float:
    """Comparison ratio (zeta(b) - 1/2) / (zeta(b) - 1) of Shen et al."""
    if beta <= 2.0:
        raise RegimeViolation(f"shen_ratio is defined for beta > 2, got {beta}")
    z = zeta(beta)
    return (z - 0.5) / (z - 1.0)


@lru_cache(maxsize=None)
def beta_threshold(k: int, base: int | None = None) -> float:
    """Smallest beta with sum_{j<=k} j**-beta > 1/(base**(beta-2) * (beta-2)).

    ``base`` defaults to k + 1, which is the form that reproduces the
    reference values beta_2 = 2.48, beta_3 = 2.44, beta_4 = 2.40; passing
    ``base=k`` evaluates the alternative base-k reading for comparison.
    Bisection on [2 + 1e-6, 12] to width 1e-4.
    """
    if k < 2:
        raise DomainError(f"threshold index k must be >= 2, got {k}")
    b = (k + 1) if base is None else base
    if b < 2:
        raise DomainError(f"denominator base must be >= 2, got {b}")
    lhs_terms = [float(j) for j in range(1, k + 1)]

    def gap(beta: float) -> float:
        lhs = math.fsum(t ** -beta for t in lhs_terms)
        rhs = 1.0 / (b ** (beta - 2.0) * (beta - 2.0))
        return lhs - rhs

    return _bisect(gap, 2.0 + MIN_BETA_GAP, 12.0)


def lemma3_bound(beta: float, k: int) -> float:
    """Ratio bound (zeta(b) - 1/2) * (b - 2) * (k+1)**(b-2) above threshold.

    Valid for beta >= beta_threshold(k); below the threshold the defining
    inequality fails and RegimeViolation is raised.
    """
    thr = beta_threshold(k)
    if beta < thr:
        raise RegimeViolation(
            f"beta={beta} is below beta_threshold({k}) = {thr:.4f}"
        )
    return (zeta(beta) - 0.5) * (beta - 2.0) * (k + 1) ** (beta - 2.0)


def case_ii_bound(beta: float, alpha: float) -> tuple[int, float]:
    """Case II ratio bound and its witness degree d.

    Finds the largest integer d with vol([d, Delta]) > floor(e**alpha)
    (volumes computed exactly from the degree model) and returns
    ``(d, (zeta(b) - 1) / (zeta(b) - sum_{j<d} j**-beta))``.

    Requires 2 < beta with zeta(beta - 1) >= 2 (case II condition); in
    particular beta must lie at or below ``case_i_crossover()``.  Raises
    RegimeViolation when case I applies instead, and also when the scale is
    so small that even vol([2, Delta]) fails to exceed floor(e**alpha)
    (the bound would degenerate to d = 1 and a ratio below 1).
    """
    if beta <= 2.0:
        raise RegimeViolation(f"case_ii_bound needs beta > 2, got {beta}")
    z1 = _zeta_or_inf(beta - 1.0)
    if z1 < 2.0:
        raise RegimeViolation(
            f"zeta(beta-1) = {z1:.6g} < 2 at beta={beta}; case I applies"
        )
    from .degree_model import PlgParams, exact_interval_sums

    p = PlgParams(alpha=alpha, beta=beta)
    delta = p.delta
    target = p.scale_floor

    def vol_from(d: int) -> int:
        if d > delta:
            return 0
        return exact_interval_sums(p, d, delta)[1]

    if delta < 2 or vol_from(2) <= target:
        raise RegimeViolation(
            f"vol([2, Delta]) <= floor(e^alpha) at alpha={alpha}, beta={beta}: "
            "scale too small for a non-degenerate case II bound"
        )
    lo, hi = 2, delta + 1  # vol_from(lo) > target, vol_from(hi) == 0 <= target
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if vol_from(mid) > target:
            lo = mid
        else:
            hi = mid
    d = lo
    z = zeta(beta)
    return d, (z - 1.0) / (z - _partial_zeta(beta, d - 1))


def lemma1_b(eps: float) -> float:
    """Leading term (eps + 4) / (2*eps + 4) of the degree-window exponent b."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    return (eps + 4.0) / (2.0 * eps + 4.0)


def hardness_prefactor(eps: float) -> float:
    """Common prefactor ((1-eps)*eps/(2+eps)) * (1/2)**(eps/(2+eps))."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    return (1.0 - eps) * eps / (2.0 + eps) * 0.5 ** (eps / (2.0 + eps))


class RegimeKind(Enum):
    """The mutually exclusive beta regimes of the bound table."""

    SUB_ONE = "SubOne"
    ONE = "One"
    ONE_TO_TWO = "OneToTwo"
    TWO = "Two"
    ABOVE_TWO = "AboveTwo"
    CASE_I = "CaseI"
    FUNCTIONAL_HARD = "FunctionalHard"
    FUNCTIONAL_APX = "FunctionalApx"


_LOWER_BOUND_KINDS = frozenset(
    {
        RegimeKind.SUB_ONE,
        RegimeKind.ONE,
        RegimeKind.ONE_TO_TWO,
        RegimeKind.TWO,
        RegimeKind.FUNCTIONAL_HARD,
    }
)


@dataclass(frozen=True)
class BetaRegime:
    """Classification of a beta value (or functional beta) into one regime.

    Exactly one of ``beta`` / ``beta_fn`` is set.  ``CASE_I`` refines
    ``ABOVE_TWO`` (both satisfy ``is_above_two``); classification always
    returns the most specific kind.
    """

    kind: RegimeKind
    beta: float | None = None
    beta_fn: "BetaFunction | None" = None

    @property
    def has_lower_bound(self) -> bool:
        """True for regimes with a logarithmic hardness factor."""
        return self.kind in _LOWER_BOUND_KINDS

    @property
    def has_upper_bound(self) -> bool:
        """True for regimes with a constant-factor upper ratio."""
        return not self.has_lower_bound

    @property
    def is_above_two(self) -> bool:
        return self.kind in (RegimeKind.ABOVE_TWO, RegimeKind.CASE_I)

    def describe(self) -> str:
        if self.beta_fn is not None:
            return f"{self.kind.value}(beta_f=2+1/{self.beta_fn.label})"
        return f"{self.kind.value}(beta={self.beta:g})"


def classify_regime(beta, n: int | None = None) -> BetaRegime:
    """Map a beta value or a functional beta to its unique regime.

    Scalar betas split at 1 and 2 (exact comparison) and, above 2, at the
    zeta(beta-1) = 2 crossover into CASE_I / ABOVE_TWO.  Functional betas
    are classified purely by their declared growth class; deciding
    omega/o(log n) from samples is impossible, so an undeclared class
    raises AmbiguousGrowth.  ``n`` is accepted for interface symmetry with
    the report builders; classification itself never depends on it.
    """
    from .degree_model import BetaFunction, GrowthClass

    if isinstance(beta, BetaFunction):
        if beta.growth_class is GrowthClass.OMEGA_LOG_N:
            return BetaRegime(RegimeKind.FUNCTIONAL_HARD, beta_fn=beta)
        if beta.growth_class is GrowthClass.LITTLE_O_LOG_N:
            return BetaRegime(RegimeKind.FUNCTIONAL_APX, beta_fn=beta)
        raise AmbiguousGrowth(
            "functional beta has no declared growth class; declare it as "
            "omega(log n) or o(log n)"
        )
    beta = float(beta)
    if not beta > 0.0 or math.isnan(beta):
        raise DomainError(f"beta must be positive, got {beta}")
    if beta < 1.0:
        return BetaRegime(RegimeKind.SUB_ONE, beta=beta)
    if beta == 1.0:
        return BetaRegime(RegimeKind.ONE, beta=beta)
    if beta < 2.0:
        return BetaRegime(RegimeKind.ONE_TO_TWO, beta=beta)
    if beta == 2.0:
        return BetaRegime(RegimeKind.TWO, beta=beta)
    if _zeta_or_inf(beta - 1.0) < 2.0:
        return BetaRegime(RegimeKind.CASE_I, beta=beta)
    return BetaRegime(RegimeKind.ABOVE_TWO, beta=beta)


def _functional_beta_at(regime: BetaRegime, n: int) -> float:
    if regime.beta_fn is None:
        raise DomainError("regime does not carry a functional beta")
    return regime.beta_fn.beta_at(n)


def hardness_factor(
    regime: BetaRegime | float,
    n: int,
    eps: float,
    d_scale: int,
    b_exp: float | None = None,
) -> float:
    """Logarithmic inapproximability factor of the matching lower-bound regime.

    Evaluates, under the leading-term convention, with
    pref = ``hardness_prefactor(eps)`` and b = ``b_exp``:

    * 1 < beta < 2 and beta = 2 (also the functional hard case with
      beta_f at n): pref * (ln n - ln zeta(beta)) / (d_scale + b*beta)
    * 0 < beta < 1: pref * (beta / (d_scale + b*beta))
      * (ln n - ln(1/(1-beta)))
    * beta = 1: pref * ln n / (1 + b), with d_scale required to be 1
      (no scaling is used in this regime).

    Parameters are validated per regime; in particular for 1 < beta < 2
    (and functionally) d_scale must exceed (b+1)*beta/(beta-1).

    Raises
    ------
    RegimeViolation
        For regimes without a lower bound (AboveTwo, CaseI, FunctionalApx).
    DomainError
        For parameter combinations invalid in the regime.
    """
    if not isinstance(regime, BetaRegime):
        regime = classify_regime(regime)
    if not regime.has_lower_bound:
        raise RegimeViolation(
            f"regime {regime.kind.value} has no hardness factor (upper-bound side)"
        )
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if d_scale < 1:
        raise DomainError(f"d_scale must be >= 1, got {d_scale}")
    b = lemma1_b(eps) if b_exp is None else float(b_exp)
    if b <= 0.0:
        raise DomainError(f"b_exp must be positive, got {b}")
    pref = hardness_prefactor(eps)
    ln_n = math.log(n)
    kind = regime.kind
    if kind is RegimeKind.SUB_ONE:
        beta = regime.beta
        return pref * (beta / (d_scale + b * beta)) * (ln_n - math.log(1.0 / (1.0 - beta)))
    if kind is RegimeKind.ONE:
        if d_scale != 1:
            raise DomainError("beta = 1 uses no scaling; d_scale must be 1")
        return pref * ln_n / (1.0 + b)
    beta = regime.beta if kind is not RegimeKind.FUNCTIONAL_HARD else _functional_beta_at(regime, n)
    if kind in (RegimeKind.ONE_TO_TWO, RegimeKind.FUNCTIONAL_HARD):
        d_min = (b + 1.0) * beta / (beta - 1.0)
        if not d_scale > d_min:
            raise DomainError(
                f"d_scale must exceed (b+1)*beta/(beta-1) = {d_min:.4f}, got {d_scale}"
            )
    return pref * (ln_n - math.log(zeta(beta))) / (d_scale + b * beta)


@dataclass(frozen=True)
class BoundReport:
    """One regime's bound values with the inputs echoed.

    ``hardness_factor`` is present exactly for lower-bound regimes and
    ``upper_ratio`` exactly for upper-bound regimes.  ``min_n_above_one``
    documents the smallest instance size at which the present value
    exceeds 1 (hardness factors start below 1 at desk scale; the value can
    be astronomically large and is reported rather than hidden).
    """

    regime: BetaRegime
    n: int
    eps: float
    d_scale: int
    b_exp: float
    hardness_factor: float | None = None
    upper_ratio: float | None = None
    min_n_above_one: float | None = None
    notes: tuple[str, ...] = field(default=())

    def serialize(self) -> str:
        """Flat key=value text block, one pair per line."""
        lines = [f"regime={self.regime.kind.value}"]
        if self.regime.beta is not None:
            lines.append(f"beta={self.regime.beta:.10g}")
        if self.regime.beta_fn is not None:
            lines.append(f"beta_fn=2+1/{self.regime.beta_fn.label}")
            lines.append(f"beta_at_n={self.regime.beta_fn.beta_at(self.n):.10g}")
        lines.append(f"n={self.n}")
        lines.append(f"eps={self.eps:.10g}")
        lines.append(f"d_scale={self.d_scale}")
        lines.append(f"b_exp={self.b_exp:.10g}")
        if self.hardness_factor is not None:
            lines.append(f"hardness_factor={self.hardness_factor:.10g}")
        if self.upper_ratio is not None:
            lines.append(f"upper_ratio={self.upper_ratio:.10g}")
        if self.min_n_above_one is not None:
            lines.append(f"min_n_above_one={self.min_n_above_one:.10g}")
        lines.append("convention=leading-term")
        for i, note in enumerate(self.notes, start=1):
            lines.append(f"note_{i}={note}")
        return "\n".join(lines) + "\n"


def _default_d_scale(regime: BetaRegime, n: int, b: float) -> tuple[int, str | None]:
    """Regime-specific default scaling exponent, with an explanatory note."""
    kind = regime.kind
    if kind is RegimeKind.ONE:
        return 1, None
    if kind is RegimeKind.SUB_ONE:
        return 2, "d_scale defaulted to 2 (minimal scaling) for 0 < beta < 1"
    if kind in (RegimeKind.ONE_TO_TWO, RegimeKind.FUNCTIONAL_HARD):
        beta = regime.beta if kind is RegimeKind.ONE_TO_TWO else _functional_beta_at(regime, n)
        d = math.floor((b + 1.0) * beta / (beta - 1.0)) + 1
        return d, f"d_scale defaulted to smallest integer > (b+1)*beta/(beta-1) = {d}"
    if kind is RegimeKind.TWO:
        z = zeta(2.0)
        alpha = math.log(n / z)
        if alpha / 2.0 <= z:
            min_n = math.ceil(z * math.exp(2.0 * z)) + 1
            raise InfeasibleScale(
                f"beta = 2 scaling needs ln(n/zeta(2))/2 > zeta(2); n >= {min_n} required",
                min_feasible_n=min_n,
            )
        d = max(2, math.floor(alpha * b / (alpha / 2.0 - z) - 2.0 * b) + 1)
        return d, f"d_scale defaulted per the beta = 2 disjointness condition to {d}"
    return 1, None  # upper-bound regimes never use d_scale


def bound_report(
    beta,
    n: int,
    eps: float = 0.2,
    d_scale: int | None = None,
    b_exp: float | None = None,
) -> BoundReport:
    """Classify beta and evaluate its bound value at instance size n.

    Lower-bound regimes get ``hardness_factor`` plus the closed-form
    ``min_n_above_one``; upper-bound regimes get ``upper_ratio``:
    the case I ratio for CASE_I, the case II ratio at e**alpha = n/zeta(beta)
    for ABOVE_TWO, and for FUNCTIONAL_APX the certified fraction bound
    n_exact / lemma2_lower_bound (every dominating set has size >= c*n with
    c = bound/n_exact, so no algorithm needs a ratio above 1/c).
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    regime = classify_regime(beta, n)
    b = lemma1_b(eps) if b_exp is None else float(b_exp)
    notes: list[str] = []
    if regime.has_lower_bound:
        if d_scale is None:
            d_scale, note = _default_d_scale(regime, n, b)
            if note:
                notes.append(note)
        factor = hardness_factor(regime, n, eps, d_scale, b)
        pref = hardness_prefactor(eps)
        kind = regime.kind
        try:
            if kind is RegimeKind.SUB_ONE:
                beta_v = regime.beta
                ln_star = math.log(1.0 / (1.0 - beta_v)) + (d_scale + b * beta_v) / (pref * beta_v)
            elif kind is RegimeKind.ONE:
                ln_star = (1.0 + b) / pref
            else:
                beta_v = (
                    regime.beta
                    if kind is not RegimeKind.FUNCTIONAL_HARD
                    else _functional_beta_at(regime, n)
                )
                ln_star = math.log(zeta(beta_v)) + (d_scale + b * beta_v) / pref
                if kind is RegimeKind.FUNCTIONAL_HARD:
                    notes.append("min_n_above_one uses beta_f frozen at the input n")
            min_n = math.exp(ln_star)
        except OverflowError:
            min_n = math.inf
        return BoundReport(
            regime=regime,
            n=n,
            eps=eps,
            d_scale=d_scale,
            b_exp=b,
            hardness_factor=factor,
            min_n_above_one=min_n,
            notes=tuple(notes),
        )
    # Upper-bound side.
    d_scale = 1 if d_scale is None else d_scale
    if regime.kind is RegimeKind.CASE_I:
        ratio = case_i_ratio(regime.beta)
    elif regime.kind is RegimeKind.ABOVE_TWO:
        alpha = math.log(n / zeta(regime.beta))
        d, ratio = case_ii_bound(regime.beta, alpha)
        notes.append(f"case_ii witness degree d={d} at e^alpha = n/zeta(beta)")
    else:  # FUNCTIONAL_APX
        from .degree_model import PlgParams, sequence_totals
        from .solvers import lemma2_lower_bound

        beta_v = _functional_beta_at(regime, n)
        alpha = math.log(n / zeta(beta_v))
        p = PlgParams(alpha=alpha, beta=beta_v)
        total_nodes, _ = sequence_totals(p)
        _, bound = lemma2_lower_bound(p, variant="a")
        c = bound / total_nodes
        if c <= 0.0:
            raise InternalInvariantViolation(
                "lemma2 certificate returned a non-positive fraction"
            )
        ratio = 1.0 / c
        notes.append(
            f"every dominating set has size >= c*n with c={c:.6g} "
            f"(lemma2 variant a at n_exact={total_nodes})"
        )
    return BoundReport(
        regime=regime,
        n=n,
        eps=eps,
        d_scale=d_scale,
        b_exp=b,
        upper_ratio=ratio,
        notes=tuple(notes),
    )
