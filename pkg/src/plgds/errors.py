"""Exception types shared across the package.

Every error raised by the library derives from :class:`PlgdsError` so that
callers (in particular the CLI) can distinguish domain failures from plain
bugs.  A few exceptions carry structured payloads: :class:`BudgetExceeded`
transports the best incumbent found before the search budget ran out, and
:class:`InfeasibleScale` reports the smallest instance size that would have
been feasible when that size is known.
"""

from __future__ import annotations


class PlgdsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PlgdsError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class DivergentSeries(DomainError):
    """A zeta-type series was requested at or below its abscissa of convergence."""


class RegimeViolation(PlgdsError):
    """A formula was evaluated outside the beta regime where it is defined."""


class AmbiguousGrowth(PlgdsError):
    """A functional beta was used without a declared growth class."""


class ScaleError(PlgdsError):
    """The requested computation exceeds the documented size caps."""


class SelfLoopError(PlgdsError):
    """An edge with identical endpoints was rejected."""


class ParityError(PlgdsError):
    """A residual-degree profile has odd total and cannot be wired."""


class WheelStall(PlgdsError):
    """The wheel filler was left with a single positive-residual node.

    Attributes
    ----------
    node : int
        Vertex identifier left stranded.
    residual : int
        Its remaining residual degree.
    """

    def __init__(self, message: str, node: int = -1, residual: int = 0):
        super().__init__(message)
        self.node = node
        self.residual = residual


class InfeasibleEmbedding(PlgdsError):
    """The target degree sequence cannot host the requested core graph.

    ``constraint`` names the violated capacity check.
    """

    def __init__(self, message: str, constraint: str = ""):
        super().__init__(message)
        self.constraint = constraint


class InfeasibleScale(PlgdsError):
    """Parameter selection failed at this instance size.

    ``min_feasible_n`` is the smallest size found (by doubling search) at
    which the selection succeeds, or ``None`` when no such size was found
    within the search range.
    """

    def __init__(self, message: str, min_feasible_n: int | None = None):
        super().__init__(message)
        self.min_feasible_n = min_feasible_n


class NotDominating(PlgdsError):
    """A vertex set claimed to dominate a graph does not."""


class DivisibilityError(PlgdsError, ValueError):
    """Partition-system parameters violate a divisibility requirement."""


class DegreeZeroError(PlgdsError):
    """An operation requiring positive degrees met an isolated vertex."""


class InternalInvariantViolation(PlgdsError):
    """A numerically verified internal invariant failed; indicates a bug."""


class BudgetExceeded(PlgdsError):
    """Exact search ran out of budget.

    Carries the best incumbent solution found so far together with the best
    proven lower bound, so callers can still emit a bounds row.
    """

    def __init__(self, message: str, incumbent: frozenset[int] = frozenset(),
                 lower_bound: int = 0):
        super().__init__(message)
        self.incumbent = incumbent
        self.lower_bound = lower_bound
