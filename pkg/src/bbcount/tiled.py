"""Deterministic CPU models of tile-based and dynamically scheduled counting.

These engines reproduce the *scheduling and memory discipline* of two
block-parallel execution strategies while keeping the arithmetic identical
to the bucket engines, so their counts can be validated exactly:

* ``count_balanced_tiled``: anchors are preassigned to blocks round-robin;
  each anchor's endpoint id space is swept in fixed-capacity tiles, and the
  anchor's two-hop traversal is replayed once per tile, accumulating only
  endpoints that fall inside the current tile.

* ``count_balanced_dynamic``: anchors are sorted by decreasing fanout and
  claimed one at a time from a shared monotone task counter by a small set
  of persistent workers; a cooperation regime (warp / partial block / full
  block) is chosen per anchor from its degree for accounting purposes only.

Both use the raw id filter (endpoint id > anchor id) to count each butterfly
once, and both report per-block work as admitted wedge visits.
"""

from __future__ import annotations

import enum
import heapq
import threading
from dataclasses import dataclass

from .buckets import _center_pairs
from .errors import (
    CountOverflowError,
    InvalidThresholdsError,
    NoWorkError,
    U64_MAX,
)
from .graph import Side, SignedBipartiteGraph

DEFAULT_TILE_SIZE = 128
DEFAULT_WARP_MAX = 32
DEFAULT_PARTIAL_MAX = 512


class CooperationRegime(enum.Enum):
    WARP = "warp"
    PARTIAL_BLOCK = "partial_block"
    FULL_BLOCK = "full_block"


@dataclass(frozen=True)
class TileConfig:
    """tile_size bounds the per-tile counter span; block_count the workers."""

    tile_size: int = DEFAULT_TILE_SIZE
    block_count: int = 1

    def __post_init__(self):
        if self.tile_size < 1:
            raise ValueError(f"tile_size must be >= 1, got {self.tile_size}")
        if self.block_count < 1:
            raise ValueError(f"block_count must be >= 1, got {self.block_count}")


@dataclass
class ScheduleReport:
    """Per-run load accounting.

    per_block_work counts admitted wedge visits per block; task_order is the
    anchor sequence in dispatch order; regime_histogram is present only for
    the dynamically scheduled engine.
    """

    per_block_work: list[int]
    max_over_mean: float
    task_order: list[int]
    regime_histogram: dict[CooperationRegime, int] | None = None

    @property
    def total_work(self) -> int:
        return sum(self.per_block_work)

    def to_json_dict(self) -> dict:
        out: dict = {
            "per_block_work": self.per_block_work,
            "max_over_mean": self.max_over_mean,
            "task_order": self.task_order,
        }
        if self.regime_histogram is not None:
            out["regime_histogram"] = {
                regime.value: n for regime, n in self.regime_histogram.items()}
        return out


def _max_over_mean(per_block_work: list[int]) -> float:
    total = sum(per_block_work)
    if total == 0:
        return 1.0
    mean = total / len(per_block_work)
    return max(per_block_work) / mean


def load_imbalance(report: ScheduleReport) -> float:
    """max(per_block_work) / mean(per_block_work); 1.0 when perfectly even."""
    if report.total_work == 0:
        raise NoWorkError("schedule report has no work")
    return _max_over_mean(report.per_block_work)


def count_balanced_tiled(g: SignedBipartiteGraph,
                         cfg: TileConfig) -> tuple[int, ScheduleReport]:
    """Static round-robin blocks sweeping fixed-capacity endpoint tiles.

    Block b processes anchors b, b + block_count, ...; per anchor the
    endpoint ids [0, n) are covered by ceil(n / tile_size) tiles, each backed
    by two zeroed counter arrays of length tile_size.  The returned count
    equals every other engine's for all configurations.
    """
    side = g.min_side()
    adj_s, sgn_s, _, n = g.side_arrays(side)
    blocks = cfg.block_count
    if n == 0:
        report = ScheduleReport([0] * blocks, 1.0, [])
        return 0, report

    adj_o, sgn_o, _, _ = g.side_arrays(side.other())
    center_pairs = _center_pairs(adj_o, sgn_o)

    tile = cfg.tile_size
    ntiles = (n + tile - 1) // tile
    b1 = [0] * tile
    b2 = [0] * tile
    stamp = [-1] * tile
    touched: list[int] = []
    epoch = 0

    per_block_work = [0] * blocks
    total = 0
    for u in range(n):
        block = u % blocks
        anchor_edges = list(zip(adj_s[u], sgn_s[u]))
        for t in range(ntiles):
            lo = t * tile
            hi = min(n, lo + tile)
            # Replay the anchor's full two-hop traversal for this tile.
            for v, suv in anchor_edges:
                for w, svw in center_pairs[v]:
                    if w > u and lo <= w < hi:
                        slot = w - lo
                        if stamp[slot] != epoch:
                            stamp[slot] = epoch
                            b1[slot] = 0
                            b2[slot] = 0
                            touched.append(slot)
                        if svw == suv:
                            b1[slot] += 1
                        else:
                            b2[slot] += 1
                        per_block_work[block] += 1
            for slot in touched:
                c1 = b1[slot]
                c2 = b2[slot]
                total += c1 * (c1 - 1) // 2 + c2 * (c2 - 1) // 2
            touched.clear()
            epoch += 1
        if total > U64_MAX:
            raise CountOverflowError(f"balanced count exceeded 64-bit range at anchor {u}")

    report = ScheduleReport(per_block_work, _max_over_mean(per_block_work),
                            list(range(n)))
    return total, report


def regime_for_degree(degree: int, warp_max: int = DEFAULT_WARP_MAX,
                      partial_max: int = DEFAULT_PARTIAL_MAX) -> CooperationRegime:
    """Execution width band for one anchor: warp below warp_max, full block
    above partial_max, partial block between (inclusive)."""
    if degree < warp_max:
        return CooperationRegime.WARP
    if degree <= partial_max:
        return CooperationRegime.PARTIAL_BLOCK
    return CooperationRegime.FULL_BLOCK


def count_balanced_dynamic(
        g: SignedBipartiteGraph, block_count: int,
        thresholds: tuple[int, int] = (DEFAULT_WARP_MAX, DEFAULT_PARTIAL_MAX),
        mode: str = "threads") -> tuple[int, ScheduleReport]:
    """Fanout-sorted anchors claimed from a shared task counter.

    ``mode="threads"`` runs block_count worker threads against a real shared
    counter: the count and task order are deterministic, the per-block split
    is not.  ``mode="replay"`` simulates the claiming deterministically (the
    worker with the least accumulated work claims next), which is the mode
    scheduling tests should use.
    """
    warp_max, partial_max = thresholds
    if warp_max >= partial_max:
        raise InvalidThresholdsError(
            f"warp_max {warp_max} must be below partial_max {partial_max}")
    if block_count < 1:
        raise ValueError(f"block_count must be >= 1, got {block_count}")
    if mode not in ("threads", "replay"):
        raise ValueError(f"unknown mode {mode!r}")

    side = g.min_side()
    adj_s, sgn_s, _, n = g.side_arrays(side)
    histogram = {regime: 0 for regime in CooperationRegime}
    if n == 0:
        return 0, ScheduleReport([0] * block_count, 1.0, [], histogram)

    adj_o, sgn_o, _, _ = g.side_arrays(side.other())
    center_pairs = _center_pairs(adj_o, sgn_o)
    deg_o = g.deg_v if side is Side.U else g.deg_u

    fanout = [sum(deg_o[v] for v in adj_s[u]) + len(adj_s[u]) for u in range(n)]
    order = sorted(range(n), key=lambda u: (-fanout[u], u))
    for u in range(n):
        histogram[regime_for_degree(len(adj_s[u]), warp_max, partial_max)] += 1

    def process_anchor(u: int, b1: list[int], b2: list[int], stamp: list[int],
                       touched: list[int]) -> tuple[int, int]:
        work = 0
        for v, suv in zip(adj_s[u], sgn_s[u]):
            for w, svw in center_pairs[v]:
                if w > u:
                    if stamp[w] != u:
                        stamp[w] = u
                        b1[w] = 0
                        b2[w] = 0
                        touched.append(w)
                    if svw == suv:
                        b1[w] += 1
                    else:
                        b2[w] += 1
                    work += 1
        sub = 0
        for w in touched:
            c1 = b1[w]
            c2 = b2[w]
            sub += c1 * (c1 - 1) // 2 + c2 * (c2 - 1) // 2
        touched.clear()
        return sub, work

    per_block_work = [0] * block_count
    if mode == "replay":
        # Deterministic claim model: the least-loaded worker (lowest id on
        # ties) claims the next task in order.
        total = 0
        b1 = [0] * n
        b2 = [0] * n
        stamp = [-1] * n
        touched: list[int] = []
        clocks = [(0, wid) for wid in range(block_count)]
        heapq.heapify(clocks)
        for u in order:
            clock, wid = heapq.heappop(clocks)
            sub, work = process_anchor(u, b1, b2, stamp, touched)
            total += sub
            per_block_work[wid] += work
            heapq.heappush(clocks, (clock + work, wid))
    else:
        lock = threading.Lock()
        next_task = 0
        subtotals = [0] * block_count

        def run_worker(wid: int) -> None:
            nonlocal next_task
            b1 = [0] * n
            b2 = [0] * n
            stamp = [-1] * n
            touched: list[int] = []
            while True:
                with lock:
                    task = next_task
                    next_task += 1
                if task >= n:
                    break
                sub, work = process_anchor(order[task], b1, b2, stamp, touched)
                subtotals[wid] += sub
                per_block_work[wid] += work

        workers = [threading.Thread(target=run_worker, args=(wid,))
                   for wid in range(block_count)]
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()
        total = sum(subtotals)

    if total > U64_MAX:
        raise CountOverflowError("balanced count exceeded 64-bit range")
    report = ScheduleReport(per_block_work, _max_over_mean(per_block_work),
                            list(order), histogram)
    return total, report
