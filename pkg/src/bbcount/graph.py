"""Immutable signed bipartite graph with degree/priority queries.

The graph stores, for each vertex on each side, a sorted neighbor list and a
parallel sign list (+1 / -1).  Everything the counting engines need on their
hot paths (degrees, priority ranks) is precomputed at build time; the object
is treated as read-only afterwards and is safe to share across workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateEdgeError, EmptySideError, IndexOutOfRangeError


class EdgeSign(enum.Enum):
    """Polarity of one edge; the numeric value is used in sign products."""

    POSITIVE = 1
    NEGATIVE = -1

    def flipped(self) -> "EdgeSign":
        return EdgeSign.NEGATIVE if self is EdgeSign.POSITIVE else EdgeSign.POSITIVE


class Side(enum.Enum):
    U = "u"
    V = "v"

    def other(self) -> "Side":
        return Side.V if self is Side.U else Side.U


@dataclass(frozen=True)
class VertexRef:
    """A (side, index) vertex handle; indices are dense and 0-based per side."""

    side: Side
    index: int


@dataclass(frozen=True)
class GraphStats:
    """Structural summary: smaller partition size, its average degree, density."""

    n_min: int
    d_min_avg: float
    density: float


class SignedBipartiteGraph:
    """Two-sided adjacency structure with per-edge signs.

    Attributes (read-only by convention):
        u_count, v_count: partition sizes.
        edge_count: total number of edges.
        adj_u[i] / signs_u[i]: sorted V-neighbors of U-vertex i and their signs.
        adj_v[j] / signs_v[j]: sorted U-neighbors of V-vertex j and their signs.
        deg_u, deg_v: degree arrays.
        prank_u, prank_v: per-side priority ranks; within one side,
            prank[a] < prank[b] iff (deg, global id) of a sorts before b.
    """

    __slots__ = (
        "u_count",
        "v_count",
        "edge_count",
        "adj_u",
        "signs_u",
        "adj_v",
        "signs_v",
        "deg_u",
        "deg_v",
        "prank_u",
        "prank_v",
    )

    def __init__(self, u_count: int, v_count: int,
                 adj_u: list[list[int]], signs_u: list[list[int]],
                 adj_v: list[list[int]], signs_v: list[list[int]],
                 edge_count: int):
        self.u_count = u_count
        self.v_count = v_count
        self.edge_count = edge_count
        self.adj_u = adj_u
        self.signs_u = signs_u
        self.adj_v = adj_v
        self.signs_v = signs_v
        self.deg_u = [len(a) for a in adj_u]
        self.deg_v = [len(a) for a in adj_v]
        # Priority rank: position in the (degree, global id) order restricted
        # to one side.  Global ids run 0..u_count-1 on U, then continue on V,
        # so within a side the id order is the index order.
        self.prank_u = _priority_ranks(self.deg_u)
        self.prank_v = _priority_ranks(self.deg_v)

    @classmethod
    def build(cls, u_count: int, v_count: int,
              edges: list[tuple[int, int, "EdgeSign | int"]]) -> "SignedBipartiteGraph":
        """Build from an edge list; validates ranges and rejects duplicates."""
        adj_u: list[list[int]] = [[] for _ in range(u_count)]
        signs_u: list[list[int]] = [[] for _ in range(u_count)]
        adj_v: list[list[int]] = [[] for _ in range(v_count)]
        signs_v: list[list[int]] = [[] for _ in range(v_count)]

        normalized = []
        for u, v, sign in edges:
            if not 0 <= u < u_count:
                raise IndexOutOfRangeError(f"u index {u} out of range [0, {u_count})")
            if not 0 <= v < v_count:
                raise IndexOutOfRangeError(f"v index {v} out of range [0, {v_count})")
            normalized.append((u, v, EdgeSign(sign).value))

        normalized.sort(key=lambda e: (e[0], e[1]))
        prev_u, prev_v = -1, -1
        for u, v, s in normalized:
            if u == prev_u and v == prev_v:
                raise DuplicateEdgeError(u, v)
            prev_u, prev_v = u, v
            adj_u[u].append(v)
            signs_u[u].append(s)
        for u in range(u_count):
            for v, s in zip(adj_u[u], signs_u[u]):
                adj_v[v].append(u)
                signs_v[v].append(s)
        # adj_v is filled in ascending u order, so it is already sorted.
        return cls(u_count, v_count, adj_u, signs_u, adj_v, signs_v, len(normalized))

    # -- basic queries -----------------------------------------------------

    def side_count(self, side: Side) -> int:
        return self.u_count if side is Side.U else self.v_count

    def degree(self, ref: VertexRef) -> int:
        self._check(ref)
        return (self.deg_u if ref.side is Side.U else self.deg_v)[ref.index]

    def global_id(self, ref: VertexRef) -> int:
        """Id over both partitions: U keeps its index, V is offset by u_count."""
        self._check(ref)
        return ref.index if ref.side is Side.U else self.u_count + ref.index

    def neighbors(self, ref: VertexRef) -> list[int]:
        self._check(ref)
        return (self.adj_u if ref.side is Side.U else self.adj_v)[ref.index]

    def edge_sign(self, u: int, v: int) -> EdgeSign | None:
        """Sign of edge (u, v), or None when absent.  Linear in deg(u)."""
        nbrs = self.adj_u[u]
        for i, w in enumerate(nbrs):
            if w == v:
                return EdgeSign(self.signs_u[u][i])
        return None

    def _check(self, ref: VertexRef) -> None:
        if not 0 <= ref.index < self.side_count(ref.side):
            raise IndexOutOfRangeError(f"{ref.side.name} index {ref.index} out of range")

    # -- priority / side selection ----------------------------------------

    def priority_less(self, a: VertexRef, b: VertexRef) -> bool:
        """True iff a has strictly lower priority than b.

        Priority compares degree first, then the global id; the induced order
        is total and strict for distinct vertices.
        """
        da, db = self.degree(a), self.degree(b)
        if da != db:
            return da < db
        return self.global_id(a) < self.global_id(b)

    def min_side(self) -> Side:
        """The smaller partition (ties go to U); the counting anchor side."""
        return Side.U if self.u_count <= self.v_count else Side.V

    def fanout(self, u: VertexRef) -> int:
        """Sum of neighbor degrees plus own degree; a per-anchor work estimate."""
        other_deg = self.deg_v if u.side is Side.U else self.deg_u
        nbrs = self.neighbors(u)
        return sum(other_deg[v] for v in nbrs) + len(nbrs)

    def stats(self) -> GraphStats:
        """n_min, |E|/n_min and |E|/(|U|*|V|), computed as exact ratios."""
        if self.u_count == 0 or self.v_count == 0:
            raise EmptySideError("stats need both partitions nonempty")
        n_min = min(self.u_count, self.v_count)
        d_min_avg = Fraction(self.edge_count, n_min)
        density = Fraction(self.edge_count, self.u_count * self.v_count)
        return GraphStats(n_min=n_min, d_min_avg=float(d_min_avg), density=float(density))

    # -- engine plumbing ---------------------------------------------------

    def side_arrays(self, side: Side):
        """(adjacency, signs, priority ranks, count) for one side."""
        if side is Side.U:
            return self.adj_u, self.signs_u, self.prank_u, self.u_count
        return self.adj_v, self.signs_v, self.prank_v, self.v_count

    def with_flipped_vertex(self, ref: VertexRef) -> "SignedBipartiteGraph":
        """Copy of the graph with every sign incident to one vertex negated."""
        self._check(ref)
        edges = []
        for u in range(self.u_count):
            for v, s in zip(self.adj_u[u], self.signs_u[u]):
                touches = (ref.side is Side.U and u == ref.index) or (
                    ref.side is Side.V and v == ref.index)
                edges.append((u, v, -s if touches else s))
        return SignedBipartiteGraph.build(self.u_count, self.v_count, edges)

    def with_all_flipped(self) -> "SignedBipartiteGraph":
        """Copy of the graph with every edge sign negated."""
        edges = [(u, v, -s)
                 for u in range(self.u_count)
                 for v, s in zip(self.adj_u[u], self.signs_u[u])]
        return SignedBipartiteGraph.build(self.u_count, self.v_count, edges)

    def edges(self) -> list[tuple[int, int, EdgeSign]]:
        """All edges as (u, v, sign), sorted by (u, v)."""
        return [(u, v, EdgeSign(s))
                for u in range(self.u_count)
                for v, s in zip(self.adj_u[u], self.signs_u[u])]

    def __repr__(self) -> str:
        return (f"SignedBipartiteGraph(|U|={self.u_count}, |V|={self.v_count}, "
                f"|E|={self.edge_count})")


def _priority_ranks(degrees: list[int]) -> list[int]:
    order = sorted(range(len(degrees)), key=lambda i: (degrees[i], i))
    ranks = [0] * len(degrees)
    for rank, vertex in enumerate(order):
        ranks[vertex] = rank
    return ranks


def build(u_count: int, v_count: int,
          edges: list[tuple[int, int, "EdgeSign | int"]]) -> SignedBipartiteGraph:
    """Module-level alias for SignedBipartiteGraph.build."""
    return SignedBipartiteGraph.build(u_count, v_count, edges)
