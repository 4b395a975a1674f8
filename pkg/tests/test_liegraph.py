import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from liectrl.lie_core import (GeneratorSet, bracket_chain, lie_rank, so_dim, standard_index_of,
                              standard_indices)
from liectrl.liegraph import (ClosureTrace, SimpleGraph, closure_equals_lie_span_check, components,
                              graph_controllable, is_connected, min_inputs_check,
                              spanning_forest_edges, tau, tau_inverse, to_dot, triangular_closure)
from liectrl.permgroup import submanifold_orbits

from oracles import nx_graph

EX_TAIL = [(1, 2), (2, 3), (1, 3), (3, 4)]


def G(n, edges):
    return SimpleGraph(n, frozenset(edges))


def test_simple_graph_validation():
    assert G(3, [(2, 1)]).edges == {(1, 2)}
    with pytest.raises(ValueError):
        G(3, [(1, 1)])
    with pytest.raises(ValueError):
        G(3, [(1, 4)])
    assert len(SimpleGraph.complete(5)) == 10


def test_tau_examples():
    g = GeneratorSet.standard(4, EX_TAIL)
    assert tau(g).edges == set(EX_TAIL)
    assert tau(GeneratorSet.standard(4, [])).edges == set()
    assert tau(GeneratorSet.standard(4, standard_indices(4))) == SimpleGraph.complete(4)


def test_tau_inverse_round_trip():
    assert tau_inverse(SimpleGraph.complete(3)).pairs == ((1, 2), (1, 3), (2, 3))
    assert len(tau_inverse(SimpleGraph(3))) == 0
    g = GeneratorSet.standard(4, EX_TAIL)
    assert set(tau_inverse(tau(g)).pairs) == set(g.pairs)
    h = G(5, [(1, 5), (2, 3)])
    assert tau(tau_inverse(h)) == h


def test_closure_one_step_to_k4():
    closed, tr = triangular_closure(G(4, EX_TAIL))
    assert closed == SimpleGraph.complete(4)
    assert tr.steps == 1
    assert tr.added == (frozenset({(1, 4), (2, 4)}),)


def test_closure_two_steps_with_isolated_vertex():
    closed, tr = triangular_closure(G(5, [(1, 2), (2, 3), (3, 4)]))
    assert tr.steps == 2
    assert tr.added == (frozenset({(1, 3), (2, 4)}), frozenset({(1, 4)}))
    assert components(closed) == [frozenset({1, 2, 3, 4}), frozenset({5})]


def test_closure_of_complete_is_trivial():
    closed, tr = triangular_closure(SimpleGraph.complete(5))
    assert closed == SimpleGraph.complete(5) and len(tr.chain) == 1 and tr.steps == 0


def test_closure_equals_lie_span_examples():
    assert closure_equals_lie_span_check(GeneratorSet.standard(4, EX_TAIL))
    assert closure_equals_lie_span_check(GeneratorSet.standard(5, [(1, 2), (2, 3), (3, 4)]))
    assert closure_equals_lie_span_check(GeneratorSet.standard(3, [(1, 2)]))


def test_graph_controllable_examples():
    assert graph_controllable(GeneratorSet.standard(4, EX_TAIL))
    assert not graph_controllable(GeneratorSet.standard(5, [(1, 2), (2, 3), (3, 4)]))
    assert graph_controllable(GeneratorSet.standard(2, [(1, 2)]))


def test_components_examples():
    g1 = GeneratorSet.standard(6, [(1, 2), (2, 3), (4, 5), (4, 6)])
    assert components(tau(g1)) == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]
    assert components(SimpleGraph.complete(4)) == [frozenset({1, 2, 3, 4})]
    assert components(SimpleGraph(3)) == [frozenset({1}), frozenset({2}), frozenset({3})]


def test_min_inputs_examples():
    assert min_inputs_check(GeneratorSet.standard(4, [(1, 2), (2, 3), (3, 4)]))
    assert min_inputs_check(GeneratorSet.standard(5, [(1, 2)]))


def test_spanning_forest_is_lex_smallest():
    g = SimpleGraph.complete(4)
    assert spanning_forest_edges(g) == [(1, 2), (1, 3), (1, 4)]
    g = G(6, [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6)])
    assert spanning_forest_edges(g) == [(1, 2), (1, 4), (2, 3), (5, 6)]


def test_dot_output_is_deterministic():
    g = G(5, [(3, 4), (1, 2), (2, 3)])
    _, tr = triangular_closure(g)
    text = to_dot(g, tr, name="h")
    assert text == to_dot(G(5, [(1, 2), (2, 3), (3, 4)]), triangular_closure(g)[1], name="h")
    assert text.count("color=black") == 3
    assert text.count("color=red") == 3
    assert '1 -- 4 [color=red, label="2"]' in text
    assert '5 [label="v5"]' in text
    assert "color=red" not in to_dot(SimpleGraph.complete(3), triangular_closure(SimpleGraph.complete(3))[1])


def chain_graphs(gens):
    out = []
    for level in bracket_chain(gens):
        edges = set()
        for m in level:
            idx = standard_index_of(m)
            assert idx is not None, "bracket of standard elements left the basis"
            edges.add(idx)
        out.append(SimpleGraph(gens.dim, frozenset(edges)))
    return out


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_closure_chain_matches_bracket_chain_exhaustive(n):
    idx = standard_indices(n)
    for mask in range(1, 1 << len(idx)):
        gens = GeneratorSet.standard(n, [p for k, p in enumerate(idx) if mask >> k & 1])
        _, tr = triangular_closure(tau(gens))
        assert list(tr.chain) == chain_graphs(gens)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_graph_verdict_and_closure_span_exhaustive(n):
    idx = standard_indices(n)
    for mask in range(1 << len(idx)):
        gens = GeneratorSet.standard(n, [p for k, p in enumerate(idx) if mask >> k & 1])
        rank = lie_rank(gens)
        assert graph_controllable(gens) == (rank == so_dim(n))
        assert closure_equals_lie_span_check(gens)
        assert min_inputs_check(gens)
        orbits = submanifold_orbits(gens)
        assert [frozenset(b) for b in orbits.blocks] == components(tau(gens))


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    all_edges = list(itertools.combinations(range(1, n + 1), 2))
    edges = draw(st.lists(st.sampled_from(all_edges), unique=True) if all_edges else st.just([]))
    return G(n, edges)


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_closure_completes_components(g):
    closed, tr = triangular_closure(g)
    comps = components(g)
    assert components(closed) == comps
    want = {e for c in comps for e in itertools.combinations(sorted(c), 2)}
    assert closed.edges == want
    assert closed.is_complete() == is_connected(g)
    assert tr.steps <= so_dim(g.n)
    assert all(a.edges < b.edges for a, b in zip(tr.chain, tr.chain[1:]))


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_components_match_networkx(g):
    want = sorted((frozenset(c) for c in nx.connected_components(nx_graph(g))), key=min)
    assert components(g) == want


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_closure_is_transitive_closure(g):
    closed, _ = triangular_closure(g)
    tc = nx.transitive_closure(nx_graph(g).to_directed(), reflexive=False)
    want = {(min(u, v), max(u, v)) for u, v in tc.edges() if u != v}
    assert closed.edges == want


def test_random_structured_graphs_connectivity_n6():
    rng = random.Random(7)
    all_edges = list(itertools.combinations(range(1, 7), 2))
    for _ in range(300):
        g = G(6, [e for e in all_edges if rng.random() < rng.choice([0.15, 0.3, 0.5])])
        closed, _ = triangular_closure(g)
        assert closed.is_complete() == nx.is_connected(nx_graph(g))
