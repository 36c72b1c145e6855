"""Edge-list ingestion: parse, sign, deduplicate, build.

Input files are plain text, one edge per line, 2-4 whitespace-separated
tokens ``u v [value] [timestamp]``; lines starting with '%' or '#' are
comments.  Labels are mapped to dense 0-based indices per side in
first-occurrence order so downstream vertex ids are reproducible from the
file alone.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass
from typing import IO, Iterable, Union

from .errors import (
    InvalidSignValueError,
    MalformedLineError,
    MissingValueError,
)
from .graph import EdgeSign, SignedBipartiteGraph


@dataclass(frozen=True)
class RawEdge:
    u_label: str
    v_label: str
    value: float | None = None
    timestamp: int | None = None


@dataclass(frozen=True)
class ExplicitSign:
    """Edge values already are signs: 1 -> positive, 0 or -1 -> negative."""


@dataclass(frozen=True)
class RatingThreshold:
    """Binarize ratings against a threshold.

    With at_or_above_is_positive, value >= threshold maps to positive;
    otherwise only value > threshold does (the strictly-greater variant used
    for 10-star scales thresholded at 6).
    """

    threshold: float
    at_or_above_is_positive: bool = True


@dataclass(frozen=True)
class RandomBernoulli:
    """Independent random signs, positive with probability p_positive.

    The draw for edge ordinal i is a pure function of (seed, i), so sign
    assignment is reproducible and independent of traversal order.
    """

    p_positive: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.p_positive <= 1.0:
            raise ValueError(f"p_positive must be in [0, 1], got {self.p_positive}")


SignPolicy = Union[ExplicitSign, RatingThreshold, RandomBernoulli]

# (u_label, v_label, sign, timestamp) after sign assignment
SignedEdge = tuple[str, str, EdgeSign, "int | None"]


@dataclass
class ParseResult:
    edges: list[RawEdge]
    u_ids: dict[str, int]  # label -> dense index, first-occurrence order
    v_ids: dict[str, int]


def parse_edge_list(stream: IO[str] | str) -> ParseResult:
    """Parse a whitespace-separated edge list.

    Accepts an open text stream or a string.  Raises MalformedLineError with
    the 1-based line number for lines with 1 or >4 tokens or non-numeric
    value/timestamp fields.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    edges: list[RawEdge] = []
    u_ids: dict[str, int] = {}
    v_ids: dict[str, int] = {}
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(("%", "#")):
            continue
        tokens = stripped.split()
        if len(tokens) < 2 or len(tokens) > 4:
            raise MalformedLineError(lineno, f"expected 2-4 tokens, got {len(tokens)}")
        u_label, v_label = tokens[0], tokens[1]
        value = None
        timestamp = None
        if len(tokens) >= 3:
            try:
                value = float(tokens[2])
            except ValueError:
                raise MalformedLineError(lineno, f"non-numeric value {tokens[2]!r}") from None
        if len(tokens) == 4:
            try:
                timestamp = int(tokens[3])
            except ValueError:
                raise MalformedLineError(lineno, f"non-numeric timestamp {tokens[3]!r}") from None
        edges.append(RawEdge(u_label, v_label, value, timestamp))
        u_ids.setdefault(u_label, len(u_ids))
        v_ids.setdefault(v_label, len(v_ids))
    return ParseResult(edges=edges, u_ids=u_ids, v_ids=v_ids)


def _bernoulli_draw(seed: int, ordinal: int, p_positive: float) -> EdgeSign:
    # Counter-based stream: hash (seed, ordinal) to a uniform in [0, 1).
    key = (seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little")
    digest = hashlib.blake2b(ordinal.to_bytes(8, "little"), key=key, digest_size=8)
    unit = int.from_bytes(digest.digest(), "little") / 2.0**64
    return EdgeSign.POSITIVE if unit < p_positive else EdgeSign.NEGATIVE


def apply_sign_policy(edges: Iterable[RawEdge], policy: SignPolicy) -> list[SignedEdge]:
    """Assign an EdgeSign to every edge according to the policy."""
    out: list[SignedEdge] = []
    if isinstance(policy, ExplicitSign):
        for e in edges:
            if e.value is None:
                raise MissingValueError(f"edge ({e.u_label}, {e.v_label}) has no sign value")
            if e.value == 1:
                sign = EdgeSign.POSITIVE
            elif e.value in (0, -1):
                sign = EdgeSign.NEGATIVE
            else:
                raise InvalidSignValueError(
                    f"edge ({e.u_label}, {e.v_label}) has sign value {e.value}, "
                    "expected 1, 0 or -1")
            out.append((e.u_label, e.v_label, sign, e.timestamp))
    elif isinstance(policy, RatingThreshold):
        for e in edges:
            if e.value is None:
                raise MissingValueError(f"edge ({e.u_label}, {e.v_label}) has no rating")
            if policy.at_or_above_is_positive:
                positive = e.value >= policy.threshold
            else:
                positive = e.value > policy.threshold
            sign = EdgeSign.POSITIVE if positive else EdgeSign.NEGATIVE
            out.append((e.u_label, e.v_label, sign, e.timestamp))
    elif isinstance(policy, RandomBernoulli):
        for ordinal, e in enumerate(edges):
            sign = _bernoulli_draw(policy.seed, ordinal, policy.p_positive)
            out.append((e.u_label, e.v_label, sign, e.timestamp))
    else:
        raise TypeError(f"unknown sign policy {policy!r}")
    return out


def dedup_latest(edges: Iterable[SignedEdge]) -> list[tuple[str, str, EdgeSign]]:
    """Keep one edge per (u, v) pair: maximal timestamp, ties to the latest
    input position; missing timestamps sort below all real ones.  Output
    preserves each pair's first-occurrence order.
    """
    best: dict[tuple[str, str], tuple[tuple[int, int, int], EdgeSign]] = {}
    for position, (u, v, sign, ts) in enumerate(edges):
        # leading flag keeps missing timestamps below every real one
        rank = (0, 0, position) if ts is None else (1, ts, position)
        key = (u, v)
        # Replacing a value keeps the key's insertion position, which fixes
        # the first-occurrence output order.
        if key not in best or rank > best[key][0]:
            best[key] = (rank, sign)
    return [(u, v, sign) for (u, v), (_, sign) in best.items()]


def to_graph(deduped: Iterable[tuple[str, str, EdgeSign]],
             u_ids: dict[str, int], v_ids: dict[str, int]) -> SignedBipartiteGraph:
    """Materialize deduplicated labeled edges as a graph via the id maps."""
    edges = [(u_ids[u], v_ids[v], sign) for u, v, sign in deduped]
    return SignedBipartiteGraph.build(len(u_ids), len(v_ids), edges)


def load_graph(stream: IO[str] | str,
               policy: SignPolicy = ExplicitSign()) -> SignedBipartiteGraph:
    """parse -> sign -> dedup -> build, the standard ingestion pipeline."""
    parsed = parse_edge_list(stream)
    signed = apply_sign_policy(parsed.edges, policy)
    deduped = dedup_latest(signed)
    return to_graph(deduped, parsed.u_ids, parsed.v_ids)


def dump_edge_list(g: SignedBipartiteGraph, stream: IO[str]) -> None:
    """Write the normalized form: ``u v {1|-1}`` lines sorted by (u, v)."""
    for u, v, sign in g.edges():
        stream.write(f"{u} {v} {sign.value}\n")
