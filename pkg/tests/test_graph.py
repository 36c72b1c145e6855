import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from bbcount import (
    DuplicateEdgeError,
    EmptySideError,
    IndexOutOfRangeError,
    Side,
    VertexRef,
    build,
)
from conftest import complete_graph, random_graph, signed_graphs


def test_build_complete_2x2():
    g = complete_graph(2, 2)
    assert g.edge_count == 4
    assert g.deg_u == [2, 2] and g.deg_v == [2, 2]


def test_build_empty():
    g = build(1, 1, [])
    assert g.edge_count == 0
    assert g.adj_u == [[]] and g.adj_v == [[]]


def test_build_duplicate_pair_rejected_regardless_of_sign():
    with pytest.raises(DuplicateEdgeError):
        build(2, 2, [(0, 0, 1), (0, 0, -1)])


@pytest.mark.parametrize("edge", [(2, 0, 1), (0, 2, 1), (-1, 0, 1), (0, -1, 1)])
def test_build_index_out_of_range(edge):
    with pytest.raises(IndexOutOfRangeError):
        build(2, 2, [edge])


def test_adjacency_symmetry_and_sorting():
    rng = random.Random(91)
    for _ in range(30):
        g = random_graph(rng, 12, 12, 0.4)
        for u in range(g.u_count):
            assert g.adj_u[u] == sorted(g.adj_u[u])
            for v, s in zip(g.adj_u[u], g.signs_u[u]):
                i = g.adj_v[v].index(u)
                assert g.signs_v[v][i] == s
        for v in range(g.v_count):
            assert g.adj_v[v] == sorted(g.adj_v[v])
        assert sum(g.deg_u) == g.edge_count == sum(g.deg_v)


def test_priority_less_degree_dominates():
    # u0 has degree 1, u1 has degree 3
    g = build(2, 3, [(0, 0, 1), (1, 0, 1), (1, 1, 1), (1, 2, 1)])
    a = VertexRef(Side.U, 0)
    b = VertexRef(Side.U, 1)
    assert g.priority_less(a, b)
    assert not g.priority_less(b, a)


def test_priority_less_id_breaks_ties():
    g = complete_graph(3, 3)
    assert g.priority_less(VertexRef(Side.U, 0), VertexRef(Side.U, 2))
    # cross-side tie: U ids precede V ids
    assert g.priority_less(VertexRef(Side.U, 2), VertexRef(Side.V, 0))


def test_priority_less_irreflexive():
    g = complete_graph(2, 2)
    a = VertexRef(Side.U, 1)
    assert not g.priority_less(a, a)


@settings(max_examples=50, deadline=None)
@given(signed_graphs())
def test_priority_is_strict_total_order(g):
    refs = [VertexRef(Side.U, i) for i in range(g.u_count)] + \
           [VertexRef(Side.V, j) for j in range(g.v_count)]
    for a in refs:
        for b in refs:
            if a == b:
                assert not g.priority_less(a, b)
            else:
                assert g.priority_less(a, b) != g.priority_less(b, a)


@pytest.mark.parametrize("nu,nv,expected", [
    (145, 1201, Side.U),
    (6040, 3706, Side.V),
    (5, 5, Side.U),
])
def test_min_side(nu, nv, expected):
    g = build(nu, nv, [])
    assert g.min_side() is expected


def test_fanout_examples():
    # u0 with neighbors of degrees 2 and 3, own degree 2 -> 7
    g = build(3, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1), (2, 1, 1)])
    assert g.fanout(VertexRef(Side.U, 0)) == 2 + 3 + 2
    # isolated vertex
    g2 = build(2, 1, [(0, 0, 1)])
    assert g2.fanout(VertexRef(Side.U, 1)) == 0
    assert complete_graph(2, 2).fanout(VertexRef(Side.U, 0)) == 6


@settings(max_examples=50, deadline=None)
@given(signed_graphs())
def test_fanout_at_least_twice_degree(g):
    for u in range(g.u_count):
        ref = VertexRef(Side.U, u)
        if g.deg_u[u] >= 1:
            assert g.fanout(ref) >= 2 * g.deg_u[u]


def test_stats_complete_2x2():
    s = complete_graph(2, 2).stats()
    assert s.n_min == 2
    assert s.d_min_avg == 2.0
    assert s.density == 1.0


def test_stats_senate_sized_graph():
    # |U|=145, |V|=1201, |E|=27083; placement does not affect the stats
    u_count, v_count, e = 145, 1201, 27083
    edges = [(i // v_count, i % v_count, 1) for i in range(e)]
    s = build(u_count, v_count, edges).stats()
    assert s.n_min == 145
    assert f"{s.d_min_avg:.4g}" == "186.8"
    assert s.density == pytest.approx(27083 / 174145, rel=1e-12)


def test_stats_extreme_sparsity_ratio():
    # 2.77M edges over a 255k x 1.85M grid: density math keeps precision
    value = float(Fraction(2766393, 255170 * 1848114))
    assert f"{value:.2g}" == "5.9e-06"


def test_stats_density_roundtrip():
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng, 20, 20, 0.3)
        if g.edge_count == 0:
            continue
        s = g.stats()
        assert math.isclose(s.density * g.u_count * g.v_count, g.edge_count,
                            rel_tol=1e-12)


def test_stats_empty_side():
    with pytest.raises(EmptySideError):
        build(0, 3, []).stats()


def test_flip_helpers_preserve_structure():
    g = complete_graph(3, 2, sign=1)
    flipped = g.with_all_flipped()
    assert flipped.edge_count == g.edge_count
    assert all(s.value == -1 for _, _, s in flipped.edges())
    one = g.with_flipped_vertex(VertexRef(Side.U, 1))
    negs = [(u, v) for u, v, s in one.edges() if s.value == -1]
    assert negs == [(1, 0), (1, 1)]
