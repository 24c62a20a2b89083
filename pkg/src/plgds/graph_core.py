"""Undirected multigraph substrate with role labels and file I/O.

Vertices are dense integers 0..n-1.  Parallel edges are allowed, self-loops
are not.  Graphs are mutable while being built (single writer) and can then
be frozen, after which they are safely shareable read-only.

The module also provides the degree-1 structural decomposition used by the
structured solver: W (vertices of degree >= 2 adjacent to a degree-1
vertex), V1 (degree-1 vertices), M (degree-1 vertices whose neighbor also
has degree 1), M' (one endpoint per M-pair, lexicographically smaller) and
R (everything outside W and V1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    DomainError,
    InternalInvariantViolation,
    PlgdsError,
    SelfLoopError,
)

__all__ = [
    "Decomposition",
    "LoadedGraph",
    "MultiGraph",
    "ResidualState",
    "Role",
    "RoleMap",
    "connected_components",
    "induced_subgraph",
    "is_dominating",
    "read_graph",
    "structural_decomposition",
    "write_graph",
]


class MultiGraph:
    """Undirected multigraph over vertices 0..n-1 (loop-free).

    Edges live in two parallel endpoint arrays; per-vertex degrees are
    maintained incrementally and can be re-derived with
    :meth:`recount_check`.  Adjacency is materialized lazily in CSR form
    the first time a neighborhood query needs it and is invalidated by
    mutation.
    """

    __slots__ = ("n", "_eu", "_ev", "_deg", "_frozen", "_indptr", "_indices")

    def __init__(self, n: int):
        if n < 0:
            raise DomainError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._eu: list[np.ndarray] = []
        self._ev: list[np.ndarray] = []
        self._deg = np.zeros(n, dtype=np.int64)
        self._frozen = False
        self._indptr: np.ndarray | None = None
        self._indices: np.ndarray | None = None

    # -- mutation ---------------------------------------------------------

    def _check_mutable(self) -> None:
        if self._frozen:
            raise PlgdsError("graph is frozen; no further mutation allowed")

    def add_edge(self, u: int, v: int) -> None:
        self.add_edges_bulk([u], [v])

    def add_edges_bulk(self, us: Sequence[int], vs: Sequence[int]) -> None:
        """Append edges given as two parallel endpoint sequences."""
        self._check_mutable()
        u_arr = np.asarray(us, dtype=np.int64)
        v_arr = np.asarray(vs, dtype=np.int64)
        if u_arr.shape != v_arr.shape or u_arr.ndim != 1:
            raise DomainError("endpoint sequences must be 1-d and equal length")
        if len(u_arr) == 0:
            return
        if u_arr.min() < 0 or v_arr.min() < 0 or max(u_arr.max(), v_arr.max()) >= self.n:
            raise DomainError("edge endpoint out of range")
        loops = u_arr == v_arr
        if loops.any():
            v = int(u_arr[np.argmax(loops)])
            raise SelfLoopError(f"self-loop at vertex {v} rejected")
        self._eu.append(u_arr)
        self._ev.append(v_arr)
        np.add.at(self._deg, u_arr, 1)
        np.add.at(self._deg, v_arr, 1)
        self._indptr = None
        self._indices = None

    def freeze(self) -> "MultiGraph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- queries ----------------------------------------------------------

    @property
    def m(self) -> int:
        return sum(len(chunk) for chunk in self._eu)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """The edge multiset as two parallel endpoint arrays (copies)."""
        if not self._eu:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy()
        if len(self._eu) > 1:
            self._eu = [np.concatenate(self._eu)]
            self._ev = [np.concatenate(self._ev)]
        return self._eu[0].copy(), self._ev[0].copy()

    def degree(self, v: int) -> int:
        return int(self._deg[v])

    @property
    def degrees(self) -> np.ndarray:
        """Per-vertex degree array (do not mutate)."""
        return self._deg

    def degree_histogram(self) -> np.ndarray:
        """counts[i] = number of vertices of degree i (index 0 included)."""
        return np.bincount(self._deg)

    def recount_check(self) -> bool:
        """Recompute degrees from the edge multiset and compare."""
        fresh = np.zeros(self.n, dtype=np.int64)
        for chunk_u, chunk_v in zip(self._eu, self._ev):
            np.add.at(fresh, chunk_u, 1)
            np.add.at(fresh, chunk_v, 1)
        if not np.array_equal(fresh, self._deg):
            bad = int(np.nonzero(fresh != self._deg)[0][0])
            raise InternalInvariantViolation(
                f"degree bookkeeping mismatch at vertex {bad}: "
                f"recounted {int(fresh[bad])}, stored {int(self._deg[bad])}"
            )
        return True

    def _ensure_adjacency(self) -> None:
        if self._indptr is not None:
            return
        eu, ev = self.edge_arrays()
        ends = np.concatenate([eu, ev])
        starts = np.concatenate([ev, eu])
        order = np.argsort(starts, kind="stable")
        self._indices = ends[order]
        counts = np.bincount(starts, minlength=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        self._indptr = indptr

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbors of v with edge multiplicity (parallel edges repeat)."""
        self._ensure_adjacency()
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency (indptr, indices); indices repeat per parallel edge."""
        self._ensure_adjacency()
        return self._indptr, self._indices

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MultiGraph(n={self.n}, m={self.m})"


class Role(Enum):
    """Construction roles; GAMMA members are also W members structurally."""

    CORE = "CORE"
    GAMMA = "GAMMA"
    X = "X"
    W = "W"
    V1 = "V1"


class RoleMap:
    """Per-vertex role labels backed by a small-int array.

    GAMMA is a sub-role of W (the gadget vertices live inside W); use
    :meth:`is_w_member` when the structural W set is meant.
    """

    _CODES = {role: i for i, role in enumerate(Role)}
    _ROLES = list(Role)

    def __init__(self, n: int):
        self._codes = np.full(n, -1, dtype=np.int8)

    @property
    def n(self) -> int:
        return len(self._codes)

    def assign(self, vertices: Iterable[int] | np.ndarray, role: Role) -> None:
        idx = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray) else vertices)
        if len(idx):
            self._codes[idx] = self._CODES[role]

    def role_of(self, v: int) -> Role:
        code = int(self._codes[v])
        if code < 0:
            raise DomainError(f"vertex {v} has no assigned role")
        return self._ROLES[code]

    def vertices_with(self, role: Role) -> np.ndarray:
        return np.nonzero(self._codes == self._CODES[role])[0]

    def is_w_member(self, v: int) -> bool:
        return self._codes[v] in (self._CODES[Role.W], self._CODES[Role.GAMMA])

    def w_members(self) -> np.ndarray:
        """All structural W vertices (role W plus role GAMMA)."""
        mask = (self._codes == self._CODES[Role.W]) | (
            self._codes == self._CODES[Role.GAMMA]
        )
        return np.nonzero(mask)[0]

    def complete(self) -> bool:
        """True iff every vertex carries a role (roles partition V)."""
        return bool((self._codes >= 0).all())

    def counts(self) -> dict[str, int]:
        return {
            role.value: int((self._codes == code).sum())
            for role, code in self._CODES.items()
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RoleMap):
            return NotImplemented
        return np.array_equal(self._codes, other._codes)


@dataclass
class ResidualState:
    """Remaining degree budget per vertex during construction.

    ``residual[v]`` = target degree of v minus its current degree; it must
    never go negative, and every wheel-filling call requires the total to
    be even.
    """

    residual: np.ndarray

    @classmethod
    def from_targets(cls, g: MultiGraph, targets: np.ndarray) -> "ResidualState":
        res = np.asarray(targets, dtype=np.int64) - g.degrees
        state = cls(residual=res)
        state.check()
        return state

    def check(self) -> None:
        if (self.residual < 0).any():
            v = int(np.nonzero(self.residual < 0)[0][0])
            raise DomainError(
                f"vertex {v} exceeds its target degree by {-int(self.residual[v])}"
            )

    def total(self) -> int:
        return int(self.residual.sum())


def is_dominating(g: MultiGraph, d: Iterable[int]) -> bool:
    """True iff every vertex outside d has at least one neighbor in d."""
    mask = np.zeros(g.n, dtype=bool)
    d_idx = np.fromiter(d, dtype=np.int64) if not isinstance(d, np.ndarray) else d
    if len(d_idx):
        if d_idx.min() < 0 or d_idx.max() >= g.n:
            raise DomainError("dominating-set vertex out of range")
        mask[d_idx] = True
    covered = mask.copy()
    eu, ev = g.edge_arrays()
    covered[eu[mask[ev]]] = True
    covered[ev[mask[eu]]] = True
    return bool(covered.all())


@dataclass(frozen=True)
class Decomposition:
    """Degree-1 structure of a graph: W, V1, M, M' and the remainder R."""

    w: frozenset[int]
    v1: frozenset[int]
    m: frozenset[int]
    m_prime: frozenset[int]
    r: frozenset[int]


def structural_decomposition(g: MultiGraph) -> Decomposition:
    """Partition vertices by their relation to degree-1 vertices.

    W is the set of vertices of degree >= 2 with a degree-1 neighbor; V1
    the degree-1 vertices; M the degree-1 vertices whose unique neighbor
    also has degree 1 (M decomposes into adjacent pairs); M' keeps the
    lexicographically smaller vertex of each pair; R = V minus W minus V1.
    """
    deg = g.degrees
    v1_mask = deg == 1
    eu, ev = g.edge_arrays()
    w_mask = np.zeros(g.n, dtype=bool)
    w_mask[eu[v1_mask[ev] & (deg[eu] >= 2)]] = True
    w_mask[ev[v1_mask[eu] & (deg[ev] >= 2)]] = True
    m_mask = np.zeros(g.n, dtype=bool)
    pair_sel = v1_mask[eu] & v1_mask[ev]
    m_mask[eu[pair_sel]] = True
    m_mask[ev[pair_sel]] = True
    m_prime = frozenset(
        int(min(u, v)) for u, v in zip(eu[pair_sel], ev[pair_sel])
    )
    r_mask = ~(w_mask | v1_mask)
    return Decomposition(
        w=frozenset(np.nonzero(w_mask)[0].tolist()),
        v1=frozenset(np.nonzero(v1_mask)[0].tolist()),
        m=frozenset(np.nonzero(m_mask)[0].tolist()),
        m_prime=m_prime,
        r=frozenset(np.nonzero(r_mask)[0].tolist()),
    )


def connected_components(g: MultiGraph) -> np.ndarray:
    """Component labels 0..k-1 per vertex (union-find over the edge list)."""
    parent = np.arange(g.n, dtype=np.int64)

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    eu, ev = g.edge_arrays()
    for u, v in zip(eu.tolist(), ev.tolist()):
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    roots = np.array([find(v) for v in range(g.n)], dtype=np.int64)
    _, labels = np.unique(roots, return_inverse=True)
    return labels


def induced_subgraph(
    g: MultiGraph, vertices: Iterable[int]
) -> tuple[MultiGraph, np.ndarray]:
    """Induced subgraph on the given vertices plus the new-to-old id map."""
    keep = np.zeros(g.n, dtype=bool)
    idx = np.fromiter(vertices, dtype=np.int64) if not isinstance(vertices, np.ndarray) else vertices
    keep[idx] = True
    old_ids = np.nonzero(keep)[0]
    new_of = np.full(g.n, -1, dtype=np.int64)
    new_of[old_ids] = np.arange(len(old_ids))
    sub = MultiGraph(len(old_ids))
    eu, ev = g.edge_arrays()
    sel = keep[eu] & keep[ev]
    sub.add_edges_bulk(new_of[eu[sel]], new_of[ev[sel]])
    return sub, old_ids


# -- file format ----------------------------------------------------------
#
#   c <free-form comment>          (anywhere)
#   p plg <n> <m>                  (exactly once, before e/r lines)
#   e <u> <v>                      (m lines, 0-indexed endpoints)
#   r <v> <ROLE>                   (optional role labels)


class LoadedGraph(NamedTuple):
    graph: MultiGraph
    roles: RoleMap | None
    comments: list[str]


def write_graph(
    g: MultiGraph,
    path,
    roles: RoleMap | None = None,
    comments: Sequence[str] = (),
) -> None:
    """Write the graph in the text format above (LF endings, bit-exact)."""
    eu, ev = g.edge_arrays()
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for comment in comments:
            fh.write(f"c {comment}\n")
        fh.write(f"p plg {g.n} {len(eu)}\n")
        for u, v in zip(eu.tolist(), ev.tolist()):
            fh.write(f"e {u} {v}\n")
        if roles is not None:
            for v in range(g.n):
                fh.write(f"r {v} {roles.role_of(v).value}\n")


_P_LINE = re.compile(r"^p\s+plg\s+(\d+)\s+(\d+)\s*$")


def read_graph(path) -> LoadedGraph:
    """Parse the text format; raises DomainError on malformed input."""
    n = -1
    m_declared = -1
    us: list[int] = []
    vs: list[int] = []
    comments: list[str] = []
    role_lines: list[tuple[int, str]] = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            kind = line[0]
            if kind == "c":
                comments.append(line[2:] if line.startswith("c ") else line[1:])
            elif kind == "p":
                match = _P_LINE.match(line)
                if match is None or n >= 0:
                    raise DomainError(f"{path}:{lineno}: bad or duplicate p-line")
                n, m_declared = int(match.group(1)), int(match.group(2))
            elif kind == "e":
                parts = line.split()
                if len(parts) != 3 or n < 0:
                    raise DomainError(f"{path}:{lineno}: bad e-line")
                us.append(int(parts[1]))
                vs.append(int(parts[2]))
            elif kind == "r":
                parts = line.split()
                if len(parts) != 3 or n < 0:
                    raise DomainError(f"{path}:{lineno}: bad r-line")
                role_lines.append((int(parts[1]), parts[2]))
            else:
                raise DomainError(f"{path}:{lineno}: unknown line kind {kind!r}")
    if n < 0:
        raise DomainError(f"{path}: missing p-line")
    if len(us) != m_declared:
        raise DomainError(
            f"{path}: p-line declares {m_declared} edges, found {len(us)}"
        )
    g = MultiGraph(n)
    g.add_edges_bulk(us, vs)
    g.freeze()
    roles: RoleMap | None = None
    if role_lines:
        roles = RoleMap(n)
        try:
            for v, name in role_lines:
                roles.assign([v], Role[name])
        except KeyError as exc:
            raise DomainError(f"{path}: unknown role {exc}") from exc
    return LoadedGraph(graph=g, roles=roles, comments=comments)
