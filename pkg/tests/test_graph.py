import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C5, K13, K3K1, P3K1, P4
from deckrecon.canon import MAX_VERTICES, canonical_code, canonical_form, canonical_graph
from deckrecon.graph import (Graph, add_edges, complement, num_slots, relabel_bits,
                             remove_edges, slot, slot_pair)
from oracles import brute_min_code


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    return Graph(n, draw(st.integers(0, (1 << num_slots(n)) - 1)))


def test_slot_roundtrip():
    for v in range(40):
        for u in range(v):
            assert slot_pair(slot(u, v)) == (u, v)
    assert [slot_pair(s) for s in range(6)] == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]


def test_slot_rejects_loop():
    with pytest.raises(ValueError):
        slot(2, 2)


def test_graph_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        Graph(3, 1 << 3)
    with pytest.raises(ValueError):
        Graph(0)


def test_remove_edges_examples():
    assert remove_edges(K3K1, []) == K3K1
    k3 = Graph.complete(3)
    for s in k3.edge_slots():
        h = remove_edges(k3, [s])
        assert sorted(h.degrees()) == [1, 1, 2]
    for s in K13.edge_slots():
        assert canonical_form(remove_edges(K13, [s])) == canonical_form(P3K1)


def test_remove_edges_rejects_non_edge():
    with pytest.raises(ValueError):
        remove_edges(P3K1, [slot(0, 3)])


def test_add_edges_examples():
    assert add_edges(P4, []) == P4
    # degree-1 vertices of P3 u K1 are 0 and 2
    assert canonical_form(add_edges(P3K1, [slot(0, 2)])) == canonical_form(K3K1)
    assert add_edges(Graph.empty(4), range(6)) == Graph.complete(4)
    with pytest.raises(ValueError):
        add_edges(P4, [slot(0, 1)])


def test_complement_examples():
    assert complement(Graph.empty(4)) == Graph.complete(4)
    assert canonical_form(complement(C5)) == canonical_form(C5)
    assert canonical_form(complement(P4)) == canonical_form(P4)


@given(graphs())
def test_complement_involution_and_edge_count(g):
    assert complement(complement(g)) == g
    assert g.edge_count + complement(g).edge_count == g.N


@settings(max_examples=200)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_complementation_of_a_move(g, rnd):
    # (F - A + B)^c = (F - A)^c - B
    edges = g.edge_slots()
    A = rnd.sample(edges, rnd.randint(0, len(edges)))
    f = remove_edges(g, A)
    holes = f.non_edge_slots()
    B = rnd.sample(holes, rnd.randint(0, len(holes)))
    assert complement(add_edges(f, B)) == remove_edges(complement(f), B)


@settings(max_examples=200)
@given(graphs(max_n=6), st.randoms(use_true_random=False))
def test_edge_count_conserved_by_moves(g, rnd):
    edges = g.edge_slots()
    k = rnd.randint(0, len(edges))
    A = rnd.sample(edges, k)
    f = remove_edges(g, A)
    holes = f.non_edge_slots()
    if len(holes) >= k:
        assert add_edges(f, rnd.sample(holes, k)).edge_count == g.edge_count


@pytest.mark.parametrize("n", range(1, 6))
def test_canonical_equals_exhaustive_minimum(n):
    for bits in range(1 << num_slots(n)):
        assert canonical_code(n, bits) == brute_min_code(n, bits)


@pytest.mark.parametrize("n", [6, 7])
def test_canonical_equals_exhaustive_minimum_sampled(n):
    rnd = random.Random(n)
    for _ in range(60):
        bits = rnd.getrandbits(num_slots(n))
        assert canonical_code(n, bits) == brute_min_code(n, bits)


def test_canonical_symmetric_graphs_n8():
    # empty/complete/regular graphs stress the twin pruning
    for g in (Graph.empty(8), Graph.complete(8),
              Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)]),
              Graph.from_edges(8, [(2 * i, 2 * i + 1) for i in range(4)])):
        code = canonical_code(8, g.bits)
        perm = list(range(8))
        random.Random(0).shuffle(perm)
        assert canonical_code(8, relabel_bits(g.bits, perm)) == code
    assert canonical_code(8, 0) == 0
    assert canonical_code(8, (1 << 28) - 1) == (1 << 28) - 1


@pytest.mark.parametrize("g", [K3K1, K13, P4, C5, Graph.from_edges(7, [(0, 1), (1, 2), (2, 6), (3, 4)])])
def test_canonical_invariant_under_1000_relabelings(g):
    rnd = random.Random(17)
    code = canonical_form(g)
    perm = list(range(g.n))
    for _ in range(1000):
        rnd.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == code


def test_three_distinct_codes_on_four_vertices_three_edges():
    codes = {canonical_form(g) for g in (K3K1, P4, K13)}
    assert len(codes) == 3
    # the three graphs are pairwise non-isomorphic by exhaustive relabeling
    for g, h in itertools.combinations((K3K1, P4, K13), 2):
        assert all(g.relabel(p) != h for p in itertools.permutations(range(4)))


@given(graphs())
def test_canonical_idempotent(g):
    c = canonical_graph(g)
    assert canonical_form(c) == canonical_form(g)
    assert canonical_graph(c) == c


@given(graphs(max_n=6), st.permutations(range(6)))
def test_complement_commutes_with_relabeling(g, perm):
    perm = [p for p in perm if p < g.n]
    assert canonical_form(complement(g.relabel(perm))) == canonical_form(complement(g))


def test_canonical_rejects_large_n():
    with pytest.raises(ValueError):
        canonical_form(Graph.empty(MAX_VERTICES + 1))
