"""Wedge-bucket counting engines.

The core idea: anchored at a vertex u, every two-hop path (u, v, w) to a
same-side endpoint w is a wedge, and it is *symmetric* when its two edges
share a sign, *asymmetric* otherwise.  A butterfly on {u, w} is balanced
exactly when its two wedges are of the same kind, so per-endpoint tallies
b1 (symmetric) and b2 (asymmetric) turn balanced counting into
C(b1, 2) + C(b2, 2) per endpoint -- and C(b1, k) + C(b2, k) counts the
balanced (2,k)-bicliques whose size-2 side is {u, w}.

A priority filter (degree, then global id) admits each unordered endpoint
pair exactly once, anchored at its higher-priority vertex.

Two engines live here: the serial engine (general k) and a multi-process
engine for k = 2 that distributes anchors dynamically over worker processes
and combines per-anchor subtotals with an exact integer sum.
"""

from __future__ import annotations

import enum
import math
import multiprocessing
from dataclasses import dataclass, field

from .errors import CountOverflowError, InvalidKError, U64_MAX
from .graph import EdgeSign, Side, SignedBipartiteGraph


class WedgeKind(enum.Enum):
    SYMMETRIC = "symmetric"
    ASYMMETRIC = "asymmetric"


def wedge_kind(sign_uv: EdgeSign, sign_vw: EdgeSign) -> WedgeKind:
    """Symmetric iff the wedge's two edge signs are equal."""
    return WedgeKind.SYMMETRIC if sign_uv is sign_vw else WedgeKind.ASYMMETRIC


@dataclass
class WedgeCounters:
    """Optional instrumentation filled by the serial engine."""

    admitted_per_anchor: list[int] = field(default_factory=list)
    bucket_sums_per_anchor: list[int] = field(default_factory=list)
    scanned: int = 0

    @property
    def admitted(self) -> int:
        return sum(self.admitted_per_anchor)


def wedge_scan_bound(g: SignedBipartiteGraph, side: Side) -> int:
    """Upper bound on scanned wedges from ``side``: sum over centers of
    deg(center)^2, equal to the anchors' full two-hop traversal size."""
    other_deg = g.deg_v if side is Side.U else g.deg_u
    return sum(d * d for d in other_deg)


def _center_pairs(adj_o: list[list[int]], sgn_o: list[list[int]]) -> list[list[tuple[int, int]]]:
    return [list(zip(a, s)) for a, s in zip(adj_o, sgn_o)]


def count_balanced_2k_serial(g: SignedBipartiteGraph, k: int,
                             anchor_side: Side = Side.U,
                             sort_neighbors: bool = False,
                             counters: WedgeCounters | None = None) -> int:
    """Balanced (2,k)-biclique count with the size-2 side on ``anchor_side``.

    For k = 2 this is the balanced butterfly count and is independent of the
    anchor side.  ``sort_neighbors`` enables the early-exit optimization of
    iterating each center's neighbors in ascending priority; it changes the
    traversal order only, never the result.
    """
    if k < 2:
        raise InvalidKError(f"k must be >= 2, got {k}")
    adj_s, sgn_s, prank, n = g.side_arrays(anchor_side)
    if n == 0:
        return 0
    other = anchor_side.other()
    adj_o, sgn_o, _, _ = g.side_arrays(other)

    if k == 2 and not sort_neighbors and counters is None:
        return _pair_subtotal(adj_s, sgn_s, _center_pairs(adj_o, sgn_o),
                              prank, range(n))

    if sort_neighbors:
        # (prank[w], w, sign) per center, ascending by rank: once a rank at or
        # above the anchor's shows up, the rest of the list is inadmissible.
        centers = [sorted(((prank[w], w, s) for w, s in zip(a, sg)))
                   for a, sg in zip(adj_o, sgn_o)]
    else:
        centers_plain = _center_pairs(adj_o, sgn_o)

    b1 = [0] * n
    b2 = [0] * n
    stamp = [-1] * n
    touched: list[int] = []
    total = 0
    fast_pairs = k == 2

    for u in range(n):
        pu = prank[u]
        admitted = 0
        for v, suv in zip(adj_s[u], sgn_s[u]):
            if sort_neighbors:
                for pw, w, svw in centers[v]:
                    if counters is not None:
                        counters.scanned += 1
                    if pw >= pu:
                        break
                    admitted += 1
                    if stamp[w] != u:
                        stamp[w] = u
                        b1[w] = 0
                        b2[w] = 0
                        touched.append(w)
                    if svw == suv:
                        b1[w] += 1
                    else:
                        b2[w] += 1
            else:
                for w, svw in centers_plain[v]:
                    if counters is not None:
                        counters.scanned += 1
                    if prank[w] < pu:
                        admitted += 1
                        if stamp[w] != u:
                            stamp[w] = u
                            b1[w] = 0
                            b2[w] = 0
                            touched.append(w)
                        if svw == suv:
                            b1[w] += 1
                        else:
                            b2[w] += 1
        sub = 0
        bucket_sum = 0
        for w in touched:
            c1 = b1[w]
            c2 = b2[w]
            bucket_sum += c1 + c2
            if fast_pairs:
                sub += c1 * (c1 - 1) // 2 + c2 * (c2 - 1) // 2
            else:
                sub += math.comb(c1, k) + math.comb(c2, k)
        touched.clear()
        total += sub
        if total > U64_MAX:
            raise CountOverflowError(f"balanced count exceeded 64-bit range at anchor {u}")
        if counters is not None:
            counters.admitted_per_anchor.append(admitted)
            counters.bucket_sums_per_anchor.append(bucket_sum)
    return total


# -- multi-process engine ----------------------------------------------------

# Work estimate below which spawning processes costs more than it saves.
DEFAULT_INLINE_BELOW = 250_000

# Shared with forked workers; set immediately before the pool starts.
_SHARED_PAYLOAD = None


def _pair_subtotal(adj_s, sgn_s, center_pairs, prank, anchors) -> int:
    """Balanced butterfly subtotal over ``anchors`` (the k = 2 hot kernel)."""
    n = len(adj_s)
    b1 = [0] * n
    b2 = [0] * n
    stamp = [-1] * n
    touched: list[int] = []
    total = 0
    for u in anchors:
        pu = prank[u]
        for v, suv in zip(adj_s[u], sgn_s[u]):
            for w, svw in center_pairs[v]:
                if prank[w] < pu:
                    if stamp[w] != u:
                        stamp[w] = u
                        b1[w] = 0
                        b2[w] = 0
                        touched.append(w)
                    if svw == suv:
                        b1[w] += 1
                    else:
                        b2[w] += 1
        sub = 0
        for w in touched:
            c1 = b1[w]
            c2 = b2[w]
            sub += c1 * (c1 - 1) // 2 + c2 * (c2 - 1) // 2
        touched.clear()
        total += sub
        if total > U64_MAX:
            raise CountOverflowError(f"balanced count exceeded 64-bit range at anchor {u}")
    return total


def _run_chunk(bounds: tuple[int, int]) -> int:
    adj_s, sgn_s, center_pairs, prank = _SHARED_PAYLOAD
    return _pair_subtotal(adj_s, sgn_s, center_pairs, prank, range(bounds[0], bounds[1]))


def _chunk_ranges(n: int, workers: int) -> list[tuple[int, int]]:
    # Several chunks per worker so idle workers keep pulling pending ranges.
    target = min(n, workers * 16)
    step = max(1, n // target)
    bounds = list(range(0, n, step)) + [n]
    return [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)]


def count_balanced_parallel(g: SignedBipartiteGraph, workers: int,
                            inline_below: int = DEFAULT_INLINE_BELOW) -> int:
    """Balanced butterfly count over a dynamically scheduled worker pool.

    Anchors on the smaller side are split into many contiguous ranges; idle
    workers pull the next pending range, so skewed anchors do not serialize
    the run.  Subtotals are exact integers combined by addition, so the
    result is bit-identical for every worker count and equals the serial
    engine.  Work below ``inline_below`` scanned wedges (or workers == 1)
    runs in-process.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    side = g.min_side()
    adj_s, sgn_s, prank, n = g.side_arrays(side)
    if n == 0:
        return 0
    adj_o, sgn_o, _, _ = g.side_arrays(side.other())
    center_pairs = _center_pairs(adj_o, sgn_o)

    if workers == 1 or wedge_scan_bound(g, side) < inline_below:
        return _pair_subtotal(adj_s, sgn_s, center_pairs, prank, range(n))

    global _SHARED_PAYLOAD
    _SHARED_PAYLOAD = (adj_s, sgn_s, center_pairs, prank)
    try:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            total = sum(pool.imap_unordered(_run_chunk, _chunk_ranges(n, workers)))
    finally:
        _SHARED_PAYLOAD = None
    if total > U64_MAX:
        raise CountOverflowError("balanced count exceeded 64-bit range")
    return total
