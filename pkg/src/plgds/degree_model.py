"""Exact power-law degree sequences, totals, and interval estimates.

The combinatorial model: a graph with scale parameter alpha and exponent
beta has maximum degree Delta = floor(e**(alpha/beta)) and exactly
``floor(e**alpha / i**beta)`` nodes of degree i for i >= 2.  Degree 1 gets
``floor(e**alpha)`` nodes plus, when a parity rule asks for it, one extra
node.  The functional variant replaces the fixed exponent by
``beta_f = 2 + 1/f(n)`` evaluated at the intended graph size n.

Exact sums over degree intervals (sizes and volumes) are computed by a
run-length ("block") decomposition of the count function: floors of
``scale / j**beta`` are constant on runs of j, each run boundary is located
by a float candidate and then verified and fixed in integer space.  Every
exact quantity in the package (histograms, totals, interval sums) flows
through this single code path, so the materialized sequences and the
large-scale arithmetic can never disagree.

All floating-point floors use a tiny relative nudge so that values which
are mathematically integral (e.g. 10**5 ** 0.4 == 100) floor exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .bounds import MIN_BETA_GAP, zeta
from .errors import DomainError, InternalInvariantViolation, ScaleError

__all__ = [
    "DELTA_CAP",
    "BetaFunction",
    "DegreeSequence",
    "GrowthClass",
    "IntervalEstimate",
    "PlgParams",
    "build_sequence",
    "closed_form_counts",
    "exact_interval_sums",
    "interval_estimate",
    "iter_count_blocks",
    "multiplicative_band",
    "parity_bump",
    "sequence_totals",
    "tau_bound",
]

# Per-degree materialization limit: beyond this Delta only block-decomposed
# totals are offered, never full count arrays.
DELTA_CAP = 10_000_000

# Exact integer counts require every count to be exactly representable as a
# double, hence floor(e**alpha) must stay below 2**53.
_SCALE_CAP = float(1 << 53)

# Safety valve on the number of constant-count runs a single sum may visit.
_BLOCK_CAP = 4_000_000

_PARITY_MODES = ("total_degree", "node_count")


def _nudged_floor(x: float) -> int:
    """floor(x) robust against floats sitting a hair below an exact integer."""
    return math.floor(x * (1.0 + 1e-12))


class GrowthClass(Enum):
    """Declared asymptotic growth of a functional beta's f(n)."""

    OMEGA_LOG_N = "omega_log_n"
    LITTLE_O_LOG_N = "o_log_n"
    UNDECLARED = "undeclared"


@dataclass(frozen=True)
class BetaFunction:
    """A functional exponent beta_f(n) = 2 + 1/f(n).

    ``f`` must map positive sizes to positive integers and be monotone
    increasing and unbounded; monotonicity is the caller's contract and is
    spot-checked by the test suite, not at call time.  The growth class is
    a declared field because omega/o(log n) cannot be decided from samples.
    """

    f: Callable[[int], int]
    growth_class: GrowthClass = GrowthClass.UNDECLARED
    label: str = "f(n)"

    def f_at(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"size n must be >= 1, got {n}")
        value = self.f(n)
        if value != int(value) or int(value) < 1:
            raise DomainError(
                f"{self.label} must take positive integer values; got {value!r} at n={n}"
            )
        return int(value)

    def beta_at(self, n: int) -> float:
        return 2.0 + 1.0 / self.f_at(n)


@dataclass(frozen=True)
class PlgParams:
    """Degree-model parameters: scale alpha plus a fixed or functional beta.

    Exactly one of ``beta`` / ``beta_fn`` is set.  ``parity`` selects which
    sum the degree-1 correction keeps even: "total_degree" (default; makes
    the sequence realizable as a multigraph) or "node_count" (the literal
    evenness condition on the number of nodes).

    ``exp(alpha)`` is snapped to the nearest integer when within 1e-9
    relative distance, so scales specified as ``math.log(1000)`` behave as
    exactly 1000; the snapped value is authoritative for all floors.
    """

    alpha: float
    beta: float | None = None
    beta_fn: BetaFunction | None = None
    parity: str = "total_degree"

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha}")
        if self.alpha > 700.0:
            raise ScaleError(f"exp(alpha) overflows at alpha={self.alpha}")
        if (self.beta is None) == (self.beta_fn is None):
            raise DomainError("exactly one of beta / beta_fn must be set")
        if self.beta is not None and not (self.beta > 0.0 and math.isfinite(self.beta)):
            raise DomainError(f"beta must be positive and finite, got {self.beta}")
        if self.beta_fn is not None and not isinstance(self.beta_fn, BetaFunction):
            raise DomainError("beta_fn must be a BetaFunction")
        if self.parity not in _PARITY_MODES:
            raise DomainError(f"parity must be one of {_PARITY_MODES}, got {self.parity!r}")

    @property
    def scale(self) -> float:
        """e**alpha, snapped to an integer when within 1e-9 relative."""
        s = math.exp(self.alpha)
        r = round(s)
        if r > 0 and abs(s - r) <= 1e-9 * max(1.0, s):
            return float(r)
        return s

    @property
    def scale_floor(self) -> int:
        return math.floor(self.scale)

    def beta_value(self, n_for_functional: int | None = None) -> float:
        """The effective scalar exponent (functional betas need the size n)."""
        if self.beta is not None:
            return self.beta
        if n_for_functional is None:
            raise DomainError("functional parameters need n_for_functional")
        return self.beta_fn.beta_at(n_for_functional)

    def delta_for(self, n_for_functional: int | None = None) -> int:
        """Maximum degree floor(scale**(1/beta)) for the effective beta."""
        beta = self.beta_value(n_for_functional)
        return max(1, _nudged_floor(self.scale ** (1.0 / beta)))

    @property
    def delta(self) -> int:
        return self.delta_for(None)

    def scalar_for(self, n_for_functional: int | None = None) -> "PlgParams":
        """Equivalent fixed-beta parameters (identity when already fixed)."""
        if self.beta is not None:
            return self
        return PlgParams(
            alpha=self.alpha,
            beta=self.beta_value(n_for_functional),
            parity=self.parity,
        )


def _count_at(scale: float, beta: float, j: int) -> int:
    """Exact count floor(scale / j**beta) for a single degree j."""
    return _nudged_floor(scale / j ** beta)


def iter_count_blocks(
    scale: float, beta: float, a: int, b: int
) -> Iterator[tuple[int, int, int]]:
    """Yield maximal runs (lo, hi, v) with floor(scale / j**beta) == v on [lo, hi].

    Runs are emitted left to right; the trailing zero-count run (if any) is
    emitted as a single block.  Run boundaries come from the float solution
    of scale / j**beta >= v and are then verified and corrected by +-1 steps
    in exact integer space, so float rounding can never misplace a boundary.
    """
    if scale >= _SCALE_CAP:
        raise ScaleError(
            f"scale {scale:.6g} exceeds the exact-count cap 2**53"
        )
    if a < 1 or b < a:
        raise DomainError(f"invalid degree range [{a}, {b}]")
    j = a
    blocks = 0
    inv_beta = 1.0 / beta
    while j <= b:
        v = _count_at(scale, beta, j)
        if v <= 0:
            yield j, b, 0
            return
        cand = _nudged_floor((scale / v) ** inv_beta)
        if cand < j:
            cand = j
        while _count_at(scale, beta, cand) < v:
            cand -= 1
        steps = 0
        while _count_at(scale, beta, cand + 1) >= v:
            cand += 1
            steps += 1
            if steps > 1_000_000:
                raise InternalInvariantViolation(
                    "count-run boundary search failed to converge"
                )
        hi = min(cand, b)
        yield j, hi, v
        j = hi + 1
        blocks += 1
        if blocks > _BLOCK_CAP:
            raise ScaleError(
                f"degree range [{a}, {b}] at beta={beta} needs more than "
                f"{_BLOCK_CAP} constant-count runs"
            )


def _range_sums(scale: float, beta: float, a: int, b: int) -> tuple[int, int]:
    """Exact (size, volume) of the pre-parity sequence restricted to [a, b]."""
    size = 0
    volume = 0
    for lo, hi, v in iter_count_blocks(scale, beta, a, b):
        if v == 0:
            break
        width = hi - lo + 1
        size += v * width
        volume += v * (lo + hi) * width // 2
    return size, volume


@lru_cache(maxsize=256)
def _full_totals(scale: float, beta: float, delta: int) -> tuple[int, int]:
    return _range_sums(scale, beta, 1, delta)


def parity_bump(p: PlgParams, n_for_functional: int | None = None) -> bool:
    """Whether the degree-1 count receives the +1 parity correction.

    Under "total_degree" parity the bump fires when the pre-correction sum
    of i * count(i) is odd (the corrected sequence then has even total
    degree and is realizable).  Under "node_count" parity it fires when the
    pre-correction number of nodes is odd, which is the literal reading;
    note that this variant may leave the total degree odd.
    """
    beta = p.beta_value(n_for_functional)
    delta = p.delta_for(n_for_functional)
    nodes, degree = _full_totals(p.scale, beta, delta)
    if p.parity == "total_degree":
        return degree % 2 == 1
    return nodes % 2 == 1


def sequence_totals(
    p: PlgParams, n_for_functional: int | None = None
) -> tuple[int, int]:
    """Exact (total_nodes, total_degree) of the parity-corrected sequence.

    Works at any scale the block decomposition can reach; never
    materializes per-degree arrays.
    """
    beta = p.beta_value(n_for_functional)
    delta = p.delta_for(n_for_functional)
    nodes, degree = _full_totals(p.scale, beta, delta)
    if parity_bump(p, n_for_functional):
        nodes += 1
        degree += 1
    return nodes, degree


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    """Materialized per-degree node counts, parity correction applied.

    ``counts[i]`` is the number of nodes of degree i (index 0 unused).
    """

    params: PlgParams
    counts: np.ndarray
    total_nodes: int
    total_degree: int
    bump_applied: bool

    @property
    def delta(self) -> int:
        return len(self.counts) - 1

    def count(self, degree: int) -> int:
        if degree < 1 or degree > self.delta:
            return 0
        return int(self.counts[degree])

    def nonzero_items(self) -> Iterator[tuple[int, int]]:
        """(degree, count) pairs with count > 0, ascending by degree."""
        for degree in np.nonzero(self.counts)[0]:
            yield int(degree), int(self.counts[degree])

    def to_csv(self, path) -> None:
        """Write ``degree,count`` rows (nonzero counts only, ascending)."""
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("degree,count\n")
            for degree, count in self.nonzero_items():
                fh.write(f"{degree},{count}\n")


def build_sequence(
    p: PlgParams, n_for_functional: int | None = None
) -> DegreeSequence:
    """Materialize the exact degree sequence for the given parameters.

    Parameters
    ----------
    p : PlgParams
        Model parameters; functional betas additionally need
        ``n_for_functional``, the intended graph size at which
        beta_f = 2 + 1/f(n) is evaluated.

    Returns
    -------
    DegreeSequence
        Counts for every degree 1..Delta with the parity correction
        applied to degree 1.

    Raises
    ------
    ScaleError
        If Delta exceeds the per-degree materialization cap or the scale
        exceeds the exact-count range.
    """
    beta = p.beta_value(n_for_functional)
    delta = p.delta_for(n_for_functional)
    if delta > DELTA_CAP:
        raise ScaleError(
            f"Delta = {delta} exceeds the materialization cap {DELTA_CAP}; "
            "use sequence_totals / exact_interval_sums for totals at this scale"
        )
    counts = np.zeros(delta + 1, dtype=np.int64)
    for lo, hi, v in iter_count_blocks(p.scale, beta, 1, delta):
        counts[lo : hi + 1] = v
    bump = parity_bump(p, n_for_functional)
    if bump:
        counts[1] += 1
    nodes, degree = _full_totals(p.scale, beta, delta)
    if bump:
        nodes += 1
        degree += 1
    return DegreeSequence(
        params=p,
        counts=counts,
        total_nodes=nodes,
        total_degree=degree,
        bump_applied=bump,
    )


def closed_form_counts(
    p: PlgParams, n_for_functional: int | None = None
) -> tuple[float, float]:
    """Branch closed forms (n_approx, m_approx) for node and edge counts.

    n: zeta(beta)*e^alpha for beta > 1; alpha*e^alpha at beta = 1;
    e^(alpha/beta)/(1-beta) for beta < 1.  m: zeta(beta-1)*e^alpha/2 for
    beta > 2; alpha*e^alpha/4 at beta = 2; e^(2*alpha/beta)/(2*(2-beta))
    for beta < 2.  Branch points are selected by exact comparison; a beta
    within 1e-9 of a branch point (but not on it) triggers a warning since
    the neighbouring branches disagree there.
    """
    beta = p.beta_value(n_for_functional)
    scale = p.scale
    for point in (1.0, 2.0):
        if beta != point and abs(beta - point) < 1e-9:
            warnings.warn(
                f"beta={beta!r} is within 1e-9 of branch point {point}; "
                "closed forms are discontinuous there",
                RuntimeWarning,
                stacklevel=2,
            )
    if beta > 1.0:
        n_approx = zeta(beta) * scale
    elif beta == 1.0:
        n_approx = p.alpha * scale
    else:
        n_approx = scale ** (1.0 / beta) / (1.0 - beta)
    if beta > 2.0:
        if beta - 1.0 <= 1.0 + MIN_BETA_GAP:
            m_approx = math.inf  # zeta(beta-1) blows up this close to 2
        else:
            m_approx = 0.5 * zeta(beta - 1.0) * scale
    elif beta == 2.0:
        m_approx = 0.25 * p.alpha * scale
    else:
        m_approx = 0.5 * scale ** (2.0 / beta) / (2.0 - beta)
    return n_approx, m_approx


def exact_interval_sums(
    p: PlgParams, a: int, b: int, n_for_functional: int | None = None
) -> tuple[int, int]:
    """Exact (size, volume) of the degree interval [a, b].

    Size counts the nodes with degree in [a, b]; volume sums their degrees.
    The parity node at degree 1 is included whenever a == 1, so these sums
    always describe the realized sequence.
    """
    beta = p.beta_value(n_for_functional)
    delta = p.delta_for(n_for_functional)
    if a < 1 or a > b or b > delta:
        raise DomainError(f"invalid interval [{a}, {b}] for Delta = {delta}")
    size, volume = _range_sums(p.scale, beta, a, b)
    if a == 1 and parity_bump(p, n_for_functional):
        size += 1
        volume += 1
    return size, volume


@dataclass(frozen=True)
class IntervalEstimate:
    """Exact and closed-form descriptions of one degree interval.

    ``size_bracket`` and ``rounding_bracket`` are rigorous two-sided
    enclosures of the exact size and exact volume respectively, derived
    from monotone integral comparison plus one unit of floor loss per
    degree; the closed-form point values are the bracket midpoints.
    """

    a: int
    b: int
    exact_size: int
    exact_volume: int
    closed_form_size: float
    closed_form_volume: float
    size_bracket: tuple[float, float]
    rounding_bracket: tuple[float, float]


def _power_integral(exponent: float, lo: float, hi: float) -> float:
    """Integral of t**exponent over [lo, hi] (handles the log branch)."""
    if exponent == -1.0:
        return math.log(hi / lo)
    p1 = exponent + 1.0
    return (hi ** p1 - lo ** p1) / p1


def interval_estimate(
    p: PlgParams, a: int, b: int, n_for_functional: int | None = None
) -> IntervalEstimate:
    """Exact interval sums together with closed-form rounding brackets.

    The size bracket uses that the count function c(j) = scale * j**-beta
    is decreasing: ``integral(a, b+1) <= sum c(j) <= c(a) + integral(a, b)``
    and each floor loses less than one node.  The volume bracket uses
    g(j) = scale * j**(1-beta), which is decreasing for beta > 1, constant
    at beta = 1 and increasing for beta < 1; each floor loses less than j,
    i.e. at most the arithmetic sum over [a, b] in total.  When the parity
    node sits in the interval (a == 1), the upper ends grow by one.
    """
    exact_size, exact_volume = exact_interval_sums(p, a, b, n_for_functional)
    beta = p.beta_value(n_for_functional)
    scale = p.scale
    cnt = b - a + 1
    # Size: sum of scale * j**-beta over [a, b], bracketed by integrals.
    sum_size_lo = scale * _power_integral(-beta, a, b + 1.0)
    sum_size_hi = scale * (a ** -beta + (_power_integral(-beta, a, b) if b > a else 0.0))
    size_lo = sum_size_lo - cnt
    size_hi = sum_size_hi
    # Volume: sum of scale * j**(1-beta) over [a, b], monotonicity branch.
    g_exp = 1.0 - beta
    if beta > 1.0:  # g decreasing
        sum_vol_lo = scale * _power_integral(g_exp, a, b + 1.0)
        sum_vol_hi = scale * (a ** g_exp + (_power_integral(g_exp, a, b) if b > a else 0.0))
    elif beta == 1.0:  # g constant == scale
        sum_vol_lo = sum_vol_hi = scale * cnt
    else:  # g increasing
        sum_vol_lo = scale * _power_integral(g_exp, a - 1.0, float(b))
        sum_vol_hi = scale * _power_integral(g_exp, float(a), b + 1.0)
    arithmetic = (a + b) * cnt / 2.0
    vol_lo = sum_vol_lo - arithmetic
    vol_hi = sum_vol_hi
    if a == 1 and parity_bump(p, n_for_functional):
        size_hi += 1.0
        vol_hi += 1.0
    return IntervalEstimate(
        a=a,
        b=b,
        exact_size=exact_size,
        exact_volume=exact_volume,
        closed_form_size=0.5 * (size_lo + size_hi),
        closed_form_volume=0.5 * (vol_lo + vol_hi),
        size_bracket=(size_lo, size_hi),
        rounding_bracket=(vol_lo, vol_hi),
    )


def tau_bound(bf: BetaFunction, n: int) -> float:
    """Additive gap bound tau = (2**(1/f(n)) - 1) / 2**(2 + 1/f(n)).

    tau is the maximum over j of j**-2 - j**-beta_f, attained at j = 2
    provided (1 + 1/(2 f(n)))**f(n) < 2; both the proviso and the
    maximizer are re-verified numerically on a log-spaced degree sample
    (failures would indicate the derivation's precondition broke, and
    raise InternalInvariantViolation).
    """
    f_val = bf.f_at(n)
    if (1.0 + 1.0 / (2.0 * f_val)) ** f_val >= 2.0:
        raise InternalInvariantViolation(
            f"(1 + 1/(2f))**f >= 2 at f={f_val}; maximizer derivation invalid"
        )
    inv_f = 1.0 / f_val
    tau = (2.0 ** inv_f - 1.0) / 2.0 ** (2.0 + inv_f)

    def gap(j: float) -> float:
        return j ** -2.0 - j ** (-2.0 - inv_f)

    top = max(4, n)
    samples = {1.0, 2.0, 3.0, 4.0}
    samples.update(
        float(round(math.exp(t)))
        for t in np.linspace(0.0, math.log(top), num=64)
    )
    worst = max(samples, key=gap)
    if gap(worst) > tau + 1e-15:
        raise InternalInvariantViolation(
            f"degree {worst} exceeds the j=2 gap maximum; tau bound invalid"
        )
    return tau


def multiplicative_band(bf: BetaFunction, n: int, j: int) -> tuple[float, float]:
    """Two-sided multiplicative bracket for j**-beta_f at size n.

    Returns ``(n**(-1/f(n)) * j**-2, j**-2)``; the exact value j**-beta_f
    lies inside for every degree j <= n (degrees never exceed the graph
    size, so the domain check is j in [1, n]).
    """
    if j < 1 or j > n:
        raise DomainError(f"degree j must lie in [1, n] = [1, {n}], got {j}")
    inv_f = 1.0 / bf.f_at(n)
    high = float(j) ** -2.0
    return n ** -inv_f * high, high
