"""Brute-force ground truth for butterfly counting and classification.

Everything here favors obviousness over speed: butterflies are enumerated
explicitly, balance is checked by counting negative edges, and the
(2,k)-biclique count checks every k-subset of each pair's common
neighborhood.  Intended for desk-scale graphs used to validate the engines.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidKError
from .graph import EdgeSign, SignedBipartiteGraph, Side


@dataclass(frozen=True)
class Butterfly:
    """Canonical 4-cycle: u1 < u2, v1 < v2; signs in order
    (u1-v1, u1-v2, u2-v1, u2-v2)."""

    u1: int
    u2: int
    v1: int
    v2: int
    signs: tuple[EdgeSign, EdgeSign, EdgeSign, EdgeSign]


@dataclass
class ButterflyClassCounts:
    """Six-way split by the two wedges through v1 and v2 (endpoints u1, u2).

    Both wedges symmetric -> coherent, keyed by the unordered pair of wedge
    sign patterns; both asymmetric -> incoherent; one of each -> mixed, keyed
    by the symmetric wedge's pattern.
    """

    coherent_pp_pp: int = 0
    coherent_pp_mm: int = 0
    coherent_mm_mm: int = 0
    incoherent_pm_pm: int = 0
    mixed_pp_pm: int = 0
    mixed_pm_mm: int = 0

    def total(self) -> int:
        return (self.coherent_pp_pp + self.coherent_pp_mm + self.coherent_mm_mm
                + self.incoherent_pm_pm + self.mixed_pp_pm + self.mixed_pm_mm)

    def balanced(self) -> int:
        """Coherent plus incoherent: exactly the balanced butterflies."""
        return (self.coherent_pp_pp + self.coherent_pp_mm + self.coherent_mm_mm
                + self.incoherent_pm_pm)

    def as_dict(self) -> dict[str, int]:
        return {
            "coherent_pp_pp": self.coherent_pp_pp,
            "coherent_pp_mm": self.coherent_pp_mm,
            "coherent_mm_mm": self.coherent_mm_mm,
            "incoherent_pm_pm": self.incoherent_pm_pm,
            "mixed_pp_pm": self.mixed_pp_pm,
            "mixed_pm_mm": self.mixed_pm_mm,
        }


def _sign_map(g: SignedBipartiteGraph) -> dict[tuple[int, int], int]:
    return {(u, v): s
            for u in range(g.u_count)
            for v, s in zip(g.adj_u[u], g.signs_u[u])}


def enumerate_butterflies(g: SignedBipartiteGraph) -> Iterator[Butterfly]:
    """Yield every butterfly once, in (u1, u2, v1, v2) lexicographic order.

    Pivots on the smaller side's vertex pairs; when that is the V side the
    results are collected and sorted so the output order stays canonical.
    """
    sign = _sign_map(g)

    def from_u_pairs() -> Iterator[Butterfly]:
        for u1 in range(g.u_count):
            n1 = set(g.adj_u[u1])
            for u2 in range(u1 + 1, g.u_count):
                common = sorted(n1.intersection(g.adj_u[u2]))
                for v1, v2 in itertools.combinations(common, 2):
                    yield Butterfly(u1, u2, v1, v2, (
                        EdgeSign(sign[(u1, v1)]), EdgeSign(sign[(u1, v2)]),
                        EdgeSign(sign[(u2, v1)]), EdgeSign(sign[(u2, v2)])))

    def from_v_pairs() -> Iterator[Butterfly]:
        found = []
        for v1 in range(g.v_count):
            n1 = set(g.adj_v[v1])
            for v2 in range(v1 + 1, g.v_count):
                common = sorted(n1.intersection(g.adj_v[v2]))
                for u1, u2 in itertools.combinations(common, 2):
                    found.append(Butterfly(u1, u2, v1, v2, (
                        EdgeSign(sign[(u1, v1)]), EdgeSign(sign[(u1, v2)]),
                        EdgeSign(sign[(u2, v1)]), EdgeSign(sign[(u2, v2)]))))
        found.sort(key=lambda b: (b.u1, b.u2, b.v1, b.v2))
        yield from found

    if g.min_side() is Side.U:
        yield from from_u_pairs()
    else:
        yield from from_v_pairs()


def is_balanced(b: Butterfly) -> bool:
    """Even number of negative edges."""
    negatives = sum(1 for s in b.signs if s is EdgeSign.NEGATIVE)
    return negatives % 2 == 0


def count_balanced_bruteforce(g: SignedBipartiteGraph) -> tuple[int, int]:
    """(balanced, total) butterfly counts by explicit enumeration."""
    balanced = 0
    total = 0
    for b in enumerate_butterflies(g):
        total += 1
        if is_balanced(b):
            balanced += 1
    return balanced, total


def sign_product_total(g: SignedBipartiteGraph) -> int:
    """Sum over butterflies of the product of the four edge signs (+-1).

    Independent accumulation path used to cross-check balanced counts via
    2 * balanced == total + sign_product_total.
    """
    return sum(b.signs[0].value * b.signs[1].value * b.signs[2].value * b.signs[3].value
               for b in enumerate_butterflies(g))


def count_balanced_2k_bruteforce(g: SignedBipartiteGraph, k: int,
                                 anchor_side: Side = Side.U) -> int:
    """Balanced (2,k)-bicliques with the size-2 side on ``anchor_side``.

    For every same-side vertex pair, checks each k-subset of the common
    neighborhood for containing no unbalanced butterfly.
    """
    if k < 2:
        raise InvalidKError(f"k must be >= 2, got {k}")
    adj, _, _, n = g.side_arrays(anchor_side)
    sign = _sign_map(g)

    def edge(a: int, c: int) -> int:
        return sign[(a, c)] if anchor_side is Side.U else sign[(c, a)]

    count = 0
    for a in range(n):
        na = set(adj[a])
        for b in range(a + 1, n):
            common = sorted(na.intersection(adj[b]))
            if len(common) < k:
                continue
            for subset in itertools.combinations(common, k):
                ok = True
                for c, d in itertools.combinations(subset, 2):
                    negatives = sum(s < 0 for s in
                                    (edge(a, c), edge(a, d), edge(b, c), edge(b, d)))
                    if negatives % 2 == 1:
                        ok = False
                        break
                if ok:
                    count += 1
    return count


def classify_butterflies(g: SignedBipartiteGraph) -> ButterflyClassCounts:
    """Tally the six wedge-pattern classes over all butterflies."""
    counts = ButterflyClassCounts()
    for b in enumerate_butterflies(g):
        s_u1v1, s_u1v2, s_u2v1, s_u2v2 = b.signs
        wedge1 = (s_u1v1, s_u2v1)  # through v1
        wedge2 = (s_u1v2, s_u2v2)  # through v2
        sym1 = wedge1[0] is wedge1[1]
        sym2 = wedge2[0] is wedge2[1]
        if sym1 and sym2:
            positives = (wedge1[0] is EdgeSign.POSITIVE) + (wedge2[0] is EdgeSign.POSITIVE)
            if positives == 2:
                counts.coherent_pp_pp += 1
            elif positives == 1:
                counts.coherent_pp_mm += 1
            else:
                counts.coherent_mm_mm += 1
        elif not sym1 and not sym2:
            counts.incoherent_pm_pm += 1
        else:
            sym_sign = wedge1[0] if sym1 else wedge2[0]
            if sym_sign is EdgeSign.POSITIVE:
                counts.mixed_pp_pm += 1
            else:
                counts.mixed_pm_mm += 1
    return counts
