import random

import pytest
from hypothesis import given, strategies as st

from smalehom.corpus import random_graphs
from smalehom.errors import CommutationError, ValidationError
from smalehom.graphs import (
    Edge,
    Graph,
    GraphHom,
    bowen_franks,
    complete_graph,
    cycle_graph,
    dimension_group,
    fold_hom,
    full_shift,
    gamma_s,
    higher_block_graph,
    higher_block_iso,
    induced_bf_maps,
    induced_map_pi_sK,
    product_graph,
    random_graph,
    recoding_hom,
)
from smalehom.limits import limit_invariants
from smalehom.linalg import IntMatrix

graphs = st.integers(0, 10**6).map(lambda s: random_graph(random.Random(s), 4, 7))


def test_graph_validation():
    with pytest.raises(ValidationError):
        Graph(("a",), (Edge("e", "a", "b"),))
    with pytest.raises(ValidationError):
        Graph(("a", "a"), ())
    G = cycle_graph(2)
    with pytest.raises(ValidationError):
        GraphHom(G, G, {"v0": "v1", "v1": "v1"}, {"e0": "e0", "e1": "e1"})


def test_gamma_examples():
    assert gamma_s(full_shift(4)) == IntMatrix.from_rows([[4]])
    assert gamma_s(complete_graph(3)) == IntMatrix.from_rows([[1] * 3] * 3)
    C = gamma_s(cycle_graph(3))
    assert C @ C @ C == IntMatrix.identity(3) and C != IntMatrix.identity(3)


def test_higher_block_examples():
    G2 = higher_block_graph(full_shift(3), 2)
    assert G2.n_vertices == 3 and G2.n_edges == 9
    assert gamma_s(G2) == gamma_s(complete_graph(3))
    G = cycle_graph(4)
    assert higher_block_graph(G, 1) is G
    H = higher_block_graph(G, 3)
    assert (H.n_vertices, H.n_edges) == (4, 4) and H.is_strongly_connected()


def test_dimension_group_examples():
    h = limit_invariants(dimension_group(full_shift(5)))
    assert h.display() == "Z[1/5]"
    assert limit_invariants(dimension_group(cycle_graph(4))).tag == "free"
    assert limit_invariants(dimension_group(Graph(("a", "b"), ()))).is_zero()


def test_bowen_franks_examples():
    for m in (2, 3, 4):
        bf, ker = bowen_franks(complete_graph(m))
        assert bf.torsion == ((m - 1,) if m > 2 else ()) and bf.free_rank == 0 and ker.is_trivial()
    bf, ker = bowen_franks(full_shift(1))
    assert bf.invariants() == (1, []) and ker.invariants() == (1, [])
    bf, ker = bowen_franks(cycle_graph(2))
    assert bf.invariants() == (1, []) and ker.invariants() == (1, [])


def test_higher_block_iso_on_full_shift():
    M = higher_block_iso(full_shift(3), 1)
    assert M == IntMatrix.from_rows([[1], [1], [1]])


@given(graphs, st.sampled_from([1, 2]))
def test_higher_block_iso_intertwines(G, k):
    M = higher_block_iso(G, k)
    assert gamma_s(higher_block_graph(G, k + 1)) @ M == M @ gamma_s(G)


@given(graphs)
def test_transpose_graph(G):
    assert gamma_s(G.reversed()) == gamma_s(G).T
    a, b = bowen_franks(G)
    c, d = bowen_franks(G.reversed())
    assert a.is_isomorphic(c) and b.is_isomorphic(d)


def test_pi_sK_identity_and_fold():
    G = full_shift(2)
    assert induced_map_pi_sK(GraphHom.identity(G), 0) == IntMatrix.identity(1)
    assert induced_map_pi_sK(fold_hom(G), 0) == IntMatrix.from_rows([[1, 1]])
    G = cycle_graph(3)
    M = induced_map_pi_sK(fold_hom(G), 0)
    assert M == IntMatrix.identity(3).hstack(IntMatrix.identity(3))
    # identity with K = 1 is the higher block map
    assert induced_map_pi_sK(GraphHom.identity(full_shift(3)), 1) == higher_block_iso(full_shift(3), 1)


def test_pi_sK_detects_bad_hom():
    # collapsing a 2-cycle onto a loop merges incoming edges only partially
    H = Graph.from_pairs(["a", "b"], [("a", "b"), ("b", "a"), ("a", "a")])
    G = full_shift(1)
    pi = GraphHom(H, G, {"a": "v", "b": "v"}, {"e0": "a0", "e1": "a0", "e2": "a0"})
    with pytest.raises(CommutationError):
        induced_map_pi_sK(pi, 0)


def test_induced_bf_maps_for_fold():
    G = full_shift(3)
    M = induced_map_pi_sK(fold_hom(G), 0)
    H = fold_hom(G).source
    bf, ker = induced_bf_maps(M, gamma_s(H), gamma_s(G))
    assert bf.source.torsion == (2, 2) and bf.target.torsion == (2,)
    assert bf.cokernel().is_trivial()


def test_product_graph():
    P = product_graph(full_shift(2), full_shift(3))
    assert (P.n_vertices, P.n_edges) == (1, 6)
    C2 = cycle_graph(2)
    assert gamma_s(product_graph(C2, C2)) == gamma_s(C2).kron(gamma_s(C2))
    G = cycle_graph(3)
    assert gamma_s(product_graph(G, full_shift(1))) == gamma_s(G)


def test_corpus_higher_block_invariance(corpus_config):
    for G in random_graphs(corpus_config)[:20]:
        base = bowen_franks(G), limit_invariants(dimension_group(G))
        for k in (2, 3):
            Gk = higher_block_graph(G, k)
            bf, ker = bowen_franks(Gk)
            assert bf.is_isomorphic(base[0][0]) and ker.is_isomorphic(base[0][1])
            assert limit_invariants(dimension_group(Gk)).same_group(base[1])


def test_recoding_is_in_edge_bijective(corpus_config):
    for G in random_graphs(corpus_config)[:10]:
        pi = recoding_hom(G)
        assert pi.is_in_edge_bijective()
        for K in (0, 1):
            induced_map_pi_sK(pi, K)
        for k in (1, 2):
            induced_map_pi_sK(fold_hom(G), 1, k)
