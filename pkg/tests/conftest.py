import random

import hypothesis.strategies as st

from bbcount import EdgeSign, SignedBipartiteGraph, build


def random_graph(rng: random.Random, max_u: int = 30, max_v: int = 30,
                 p_edge: float = 0.2, p_pos: float = 0.5) -> SignedBipartiteGraph:
    nu = rng.randint(1, max_u)
    nv = rng.randint(1, max_v)
    edges = [(u, v, 1 if rng.random() < p_pos else -1)
             for u in range(nu) for v in range(nv) if rng.random() < p_edge]
    return build(nu, nv, edges)


def complete_graph(nu: int, nv: int, sign: int = 1) -> SignedBipartiteGraph:
    return build(nu, nv, [(u, v, sign) for u in range(nu) for v in range(nv)])


def graph_from_rows(rows: list[str]) -> SignedBipartiteGraph:
    """Rows of '+', '-', '.' characters: row u, column v."""
    nu = len(rows)
    nv = len(rows[0]) if rows else 0
    edges = []
    for u, row in enumerate(rows):
        for v, ch in enumerate(row):
            if ch == "+":
                edges.append((u, v, 1))
            elif ch == "-":
                edges.append((u, v, -1))
    return build(nu, nv, edges)


def dense_mixed_4x4() -> SignedBipartiteGraph:
    """Complete 4x4 with three negative edges; 19 of its 36 butterflies
    are balanced (hand-enumerated)."""
    return graph_from_rows([
        "++++",
        "++++",
        "-+++",
        "--++",
    ])


@st.composite
def signed_graphs(draw, max_u: int = 8, max_v: int = 8):
    nu = draw(st.integers(1, max_u))
    nv = draw(st.integers(1, max_v))
    cells = draw(st.sets(
        st.tuples(st.integers(0, nu - 1), st.integers(0, nv - 1)),
        max_size=nu * nv))
    signs = draw(st.lists(st.sampled_from((1, -1)),
                          min_size=len(cells), max_size=len(cells)))
    edges = [(u, v, s) for (u, v), s in zip(sorted(cells), signs)]
    return build(nu, nv, edges)


def positive_fraction(g: SignedBipartiteGraph) -> float:
    pos = sum(1 for _, _, s in g.edges() if s is EdgeSign.POSITIVE)
    return pos / g.edge_count if g.edge_count else 0.0
