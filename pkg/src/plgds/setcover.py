"""Partition systems, Feige-shaped set cover instances, and the GUS graph.

A partition system over a ground set of size m is a family of L random
partitions, each cutting the ground set into k equal parts.  Instances
shaped like Feige's reduction take R such systems (blocks), and each set
unites one part from each of sqrt(R) blocks.  The GUS graph turns a set
cover instance into a domination instance: set vertices are pairwise
connected when they intersect, and each element hangs off the sets that
contain it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DegreeZeroError,
    DivisibilityError,
    DomainError,
    NotDominating,
    ScaleError,
)
from .graph_core import MultiGraph, is_dominating
from .rngutil import derive_seed, substream

__all__ = [
    "FeigeShapeParams",
    "PartitionSystem",
    "SetCoverInstance",
    "build_partition_system",
    "covering_probability",
    "d_cover_schedule",
    "degree_window",
    "ds_to_cover",
    "feige_shaped_instance",
    "gus_graph",
    "read_setcover",
    "write_setcover",
]

_UNIVERSE_CAP = 1_000_000
_MAX_RESAMPLES = 32


@dataclass(frozen=True)
class PartitionSystem:
    """L partitions of [0, m) into k equal parts, plus cover metadata.

    parts[j][h] is part h of partition j; d_cover records how many
    pairwise-part-distinct picks the covering argument budgets for.
    """

    m_ground: int
    n_partitions: int
    k_parts: int
    d_cover: int
    parts: tuple[tuple[frozenset[int], ...], ...]

    def validate(self) -> None:
        size = self.m_ground // self.k_parts
        for j, partition in enumerate(self.parts):
            if len(partition) != self.k_parts:
                raise DomainError(f"partition {j} has {len(partition)} parts")
            union: set[int] = set()
            for part in partition:
                if len(part) != size:
                    raise DomainError(f"partition {j} has a part of size {len(part)}")
                union |= part
            if union != set(range(self.m_ground)):
                raise DomainError(f"partition {j} does not cover the ground set")


def d_cover_schedule(
    m: int, k: int, f: Callable[[int], float] | None = None
) -> int:
    """Cover distance (1 - f(k)) * k * ln m, rounded up (default f = 1/sqrt k)."""
    if m < 2 or k < 1:
        raise DomainError(f"need m >= 2 and k >= 1, got m={m}, k={k}")
    f_val = (1.0 / math.sqrt(k)) if f is None else float(f(k))
    return max(1, math.ceil((1.0 - f_val) * k * math.log(m)))


def build_partition_system(
    m: int, n_partitions: int, k: int, rng_seed: int
) -> PartitionSystem:
    """Sample L independent uniform partitions of [0, m) into k equal parts.

    Each partition gets its own derived substream and is produced by a
    Fisher-Yates shuffle of the ground set followed by slicing into k
    consecutive blocks of size m/k.
    """
    if m <= 0 or n_partitions <= 0 or k <= 0:
        raise DomainError("m, n_partitions and k must be positive")
    if m % k != 0:
        raise DivisibilityError(f"k = {k} does not divide m = {m}")
    size = m // k
    partitions = []
    for j in range(n_partitions):
        rng = substream(rng_seed, "partition", j)
        perm = rng.permutation(m)
        partitions.append(
            tuple(
                frozenset(perm[h * size : (h + 1) * size].tolist())
                for h in range(k)
            )
        )
    return PartitionSystem(
        m_ground=m,
        n_partitions=n_partitions,
        k_parts=k,
        d_cover=d_cover_schedule(m, k) if m >= 2 else 1,
        parts=tuple(partitions),
    )


def covering_probability(k: int, d: int) -> float:
    """Probability 1 - (1 - 1/k)^d that d independent part picks cover a point."""
    if k < 1 or d < 0:
        raise DomainError(f"need k >= 1 and d >= 0, got k={k}, d={d}")
    return 1.0 - (1.0 - 1.0 / k) ** d


@dataclass(frozen=True)
class FeigeShapeParams:
    """Shape parameters for a Feige-style set cover instance.

    r_strings must be a perfect square (each set draws parts from
    sqrt(r_strings) distinct blocks) and k_provers must divide m_block.
    """

    r_strings: int
    m_block: int
    k_provers: int
    n_partitions: int
    q_queries: int
    epsilon: float = 0.2

    def __post_init__(self) -> None:
        if self.r_strings < 1 or self.m_block < 1:
            raise DomainError("r_strings and m_block must be positive")
        root = math.isqrt(self.r_strings)
        if root * root != self.r_strings:
            raise DomainError(
                f"r_strings = {self.r_strings} is not a perfect square"
            )
        if self.k_provers < 1 or self.m_block % self.k_provers != 0:
            raise DivisibilityError(
                f"k_provers = {self.k_provers} must divide m_block = {self.m_block}"
            )
        if self.n_partitions < 1 or self.q_queries < 1:
            raise DomainError("n_partitions and q_queries must be positive")
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @property
    def sqrt_r(self) -> int:
        return math.isqrt(self.r_strings)

    @property
    def universe_size(self) -> int:
        return self.r_strings * self.m_block

    @property
    def set_count(self) -> int:
        return self.q_queries * self.k_provers

    @property
    def set_size(self) -> int:
        return self.sqrt_r * (self.m_block // self.k_provers)


@dataclass(frozen=True)
class SetCoverInstance:
    """A set cover instance over universe [0, universe)."""

    universe: int
    sets: tuple[frozenset[int], ...]
    names: tuple[tuple[int, int, int], ...] | None = None
    resample_count: int = 0

    def validate(self) -> None:
        covered: set[int] = set()
        for idx, s in enumerate(self.sets):
            if not s:
                raise DomainError(f"set {idx} is empty")
            if min(s) < 0 or max(s) >= self.universe:
                raise DomainError(f"set {idx} leaves the universe")
            covered |= s
        if len(covered) != self.universe:
            raise DomainError(
                f"{self.universe - len(covered)} elements are uncovered"
            )


def feige_shaped_instance(
    fsp: FeigeShapeParams, rng_seed: int
) -> SetCoverInstance:
    """Sample a set cover instance with the shape of Feige's reduction.

    The universe is r_strings blocks of m_block elements; each block
    carries its own partition system.  Every query touches sqrt(r_strings)
    uniformly chosen distinct blocks and picks one partition per touched
    block; the query's k_provers sets share those choices and set #i
    unions part #i of the chosen partitions, so the k sets of one query
    are disjoint and jointly cover all touched blocks (each set has
    exactly sqrt(r_strings) * m_block/k_provers elements).  Sampling
    repeats with fresh substreams until every element is covered; the
    attempt count is recorded on the instance.
    """
    if fsp.universe_size > _UNIVERSE_CAP:
        raise ScaleError(
            f"universe {fsp.universe_size} exceeds cap {_UNIVERSE_CAP}"
        )
    m, k, big_r = fsp.m_block, fsp.k_provers, fsp.r_strings
    for attempt in range(_MAX_RESAMPLES):
        systems = [
            build_partition_system(
                m,
                fsp.n_partitions,
                k,
                derive_seed(rng_seed, "feige", attempt, "block", r),
            )
            for r in range(big_r)
        ]
        sets: list[frozenset[int]] = []
        names: list[tuple[int, int, int]] = []
        covered = np.zeros(fsp.universe_size, dtype=bool)
        for q in range(fsp.q_queries):
            rng = substream(rng_seed, "feige", attempt, "query", q)
            blocks = rng.choice(big_r, size=fsp.sqrt_r, replace=False)
            parts = rng.integers(fsp.n_partitions, size=fsp.sqrt_r)
            for i in range(k):
                members: list[int] = []
                for r, j in zip(blocks.tolist(), parts.tolist()):
                    members.extend(
                        r * m + e for e in systems[r].parts[j][i]
                    )
                sets.append(frozenset(members))
                names.append((q, 0, i))
                covered[members] = True
        if covered.all():
            return SetCoverInstance(
                universe=fsp.universe_size,
                sets=tuple(sets),
                names=tuple(names),
                resample_count=attempt,
            )
    raise DomainError(
        f"no coverable instance after {_MAX_RESAMPLES} attempts; "
        "increase q_queries or decrease r_strings"
    )


def gus_graph(sc: SetCoverInstance) -> tuple[MultiGraph, list[str]]:
    """Domination form of a set cover instance (simple graph).

    Vertices 0..S-1 are the sets, S..S+U-1 the elements.  Two set
    vertices are adjacent when the sets intersect; each element vertex is
    adjacent to exactly the sets containing it.  A dominating set of this
    graph maps back to a cover of no larger size via :func:`ds_to_cover`.
    """
    n_sets = len(sc.sets)
    inverted: list[list[int]] = [[] for _ in range(sc.universe)]
    for idx, s in enumerate(sc.sets):
        for e in s:
            inverted[e].append(idx)
    us: list[int] = []
    vs: list[int] = []
    seen_pairs: set[tuple[int, int]] = set()
    for e, owners in enumerate(inverted):
        owners.sort()
        for idx in owners:
            us.append(idx)
            vs.append(n_sets + e)
        for pos, first in enumerate(owners):
            for second in owners[pos + 1 :]:
                if (first, second) not in seen_pairs:
                    seen_pairs.add((first, second))
                    us.append(first)
                    vs.append(second)
    g = MultiGraph(n_sets + sc.universe)
    g.add_edges_bulk(us, vs)
    g.freeze()
    tags = ["set"] * n_sets + ["element"] * sc.universe
    return g, tags


def ds_to_cover(sc: SetCoverInstance, d: Iterable[int]) -> frozenset[int]:
    """Convert a dominating set of the GUS graph into a set cover.

    Set vertices in d are kept; each element vertex in d is replaced by
    the lowest-index set containing it.  The result covers the universe
    and is never larger than d.
    """
    g, _ = gus_graph(sc)
    d_set = set(int(v) for v in d)
    if not is_dominating(g, d_set):
        raise NotDominating("input is not a dominating set of the GUS graph")
    n_sets = len(sc.sets)
    first_owner: dict[int, int] = {}
    for idx in range(n_sets - 1, -1, -1):
        for e in sc.sets[idx]:
            first_owner[e] = idx
    cover: set[int] = set()
    for v in sorted(d_set):
        if v < n_sets:
            cover.add(v)
        else:
            cover.add(first_owner[v - n_sets])
    return frozenset(cover)


def degree_window(g: MultiGraph) -> tuple[float, float]:
    """Empirical degree-window exponents (a, b) with degrees in [n^a, n^b]."""
    if g.n < 2:
        raise DomainError(f"need at least 2 vertices, got {g.n}")
    deg = g.degrees
    dmin = int(deg.min())
    if dmin == 0:
        v = int(np.argmin(deg))
        raise DegreeZeroError(f"vertex {v} has degree 0")
    dmax = int(deg.max())
    log_n = math.log(g.n)
    return math.log(dmin) / log_n, math.log(dmax) / log_n


# -- file format ------------------------------------------------------------
#
#   c <comment>
#   sc <universe> <n_sets>
#   s <name> <e1> <e2> ...


_SC_LINE = re.compile(r"^sc\s+(\d+)\s+(\d+)\s*$")
_NAME_TRIPLE = re.compile(r"^(\d+)\.(\d+)\.(\d+)$")


def write_setcover(
    sc: SetCoverInstance, path, comments: Sequence[str] = ()
) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for comment in comments:
            fh.write(f"c {comment}\n")
        fh.write(f"sc {sc.universe} {len(sc.sets)}\n")
        for idx, s in enumerate(sc.sets):
            if sc.names is not None:
                q, a, i = sc.names[idx]
                name = f"{q}.{a}.{i}"
            else:
                name = str(idx)
            elements = " ".join(str(e) for e in sorted(s))
            fh.write(f"s {name} {elements}\n")


def read_setcover(path) -> SetCoverInstance:
    universe = -1
    declared_sets = -1
    sets: list[frozenset[int]] = []
    names: list[tuple[int, int, int]] = []
    all_named = True
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("c"):
                continue
            if line.startswith("sc"):
                match = _SC_LINE.match(line)
                if match is None or universe >= 0:
                    raise DomainError(f"{path}:{lineno}: bad or duplicate sc-line")
                universe = int(match.group(1))
                declared_sets = int(match.group(2))
            elif line.startswith("s "):
                parts = line.split()
                if len(parts) < 3 or universe < 0:
                    raise DomainError(f"{path}:{lineno}: bad s-line")
                triple = _NAME_TRIPLE.match(parts[1])
                if triple is None:
                    all_named = False
                else:
                    names.append(tuple(int(x) for x in triple.groups()))
                members = frozenset(int(e) for e in parts[2:])
                if members and not 0 <= min(members) <= max(members) < universe:
                    raise DomainError(
                        f"{path}:{lineno}: element outside [0, {universe})"
                    )
                sets.append(members)
            else:
                raise DomainError(f"{path}:{lineno}: unknown line {line!r}")
    if universe < 0:
        raise DomainError(f"{path}: missing sc-line")
    if len(sets) != declared_sets:
        raise DomainError(
            f"{path}: header declares {declared_sets} sets, found {len(sets)}"
        )
    return SetCoverInstance(
        universe=universe,
        sets=tuple(sets),
        names=tuple(names) if (all_named and names) else None,
    )
