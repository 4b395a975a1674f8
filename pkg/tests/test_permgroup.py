import itertools

import pytest
from hypothesis import given, strategies as st

from liectrl.lie_core import GeneratorSet, lie_rank, so_dim, standard_indices
from liectrl.permgroup import (OrbitPartition, Permutation, TranspositionSequence, compose,
                               cycle_controllable, cycle_controllable_bruteforce, cycle_type,
                               format_cycles, iota, is_n_cycle, parse_cycles, submanifold_orbits)

from oracles import sym_compose


def T(n, i, j):
    return Permutation.transposition(n, i, j)


def seq(n, pairs):
    return iota(TranspositionSequence(n, pairs))


def test_composition_convention():
    assert format_cycles(compose(T(3, 1, 2), T(3, 2, 3))) == "(1 2 3)"
    assert format_cycles(T(3, 1, 2) * T(3, 2, 3) * T(3, 1, 2)) == "(1 3)"
    p = parse_cycles("(1 3 2)", 3)
    assert compose(p, p.inverse()).is_identity()
    with pytest.raises(ValueError):
        compose(T(3, 1, 2), T(4, 1, 2))


def test_iota_examples():
    assert format_cycles(seq(5, [(1, 2), (2, 3), (3, 4), (4, 5)])) == "(1 2 3 4 5)"
    assert format_cycles(seq(5, [(1, 2), (2, 3), (4, 5)])) == "(1 2 3)(4 5)"
    assert format_cycles(seq(4, [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)])) == "(1 4)"
    assert format_cycles(seq(4, [(1, 4), (1, 2), (2, 4), (2, 3), (3, 4)])) == "(1 2 3 4)"
    assert format_cycles(seq(4, [(1, 2), (2, 3), (1, 3), (3, 4)])) == "(2 3 4)"
    assert seq(3, []).is_identity()


def test_cycle_type_examples():
    assert cycle_type(parse_cycles("(13)(24)", 4)) == ((1, 3), (2, 4))
    assert cycle_type(Permutation.identity(4)) == ()
    assert cycle_type(parse_cycles("(1234)", 4)) == ((1, 2, 3, 4),)


def test_is_n_cycle():
    assert is_n_cycle(parse_cycles("(12345)", 5))
    assert not is_n_cycle(parse_cycles("(123)(45)", 5))
    assert is_n_cycle(Permutation.identity(1))
    assert not is_n_cycle(Permutation.identity(2))


def test_cycle_controllable_examples():
    ok, w = cycle_controllable(GeneratorSet.standard(5, [(1, 2), (2, 3), (3, 4), (4, 5)]))
    assert ok and format_cycles(w.permutation) == "(1 2 3 4 5)"
    assert cycle_controllable(GeneratorSet.standard(5, [(1, 2), (2, 3), (4, 5)])) == (False, None)
    ok, w = cycle_controllable(GeneratorSet.standard(4, [(1, 2), (2, 3), (1, 3), (3, 4)]))
    assert ok and len(w.pairs) == 3 and is_n_cycle(w.permutation)
    ok, w = cycle_controllable(GeneratorSet.standard(2, [(1, 2)]))
    assert ok and format_cycles(w.permutation) == "(1 2)"


def test_cycle_controllable_rejects_nonstandard():
    from liectrl.lie_core import omega
    g = GeneratorSet(3, (("C", omega(3, 1, 2) + omega(3, 2, 3)),), "raw")
    with pytest.raises(ValueError):
        cycle_controllable(g)


def test_submanifold_orbit_examples():
    o = submanifold_orbits(GeneratorSet.standard(5, [(1, 2), (2, 3), (4, 5)]))
    assert o.nontrivial_blocks == ((1, 2, 3), (4, 5)) and o.dimension == 4
    o = submanifold_orbits(GeneratorSet.standard(6, [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4), (5, 6)]))
    assert o.nontrivial_blocks == ((1, 2, 3, 4), (5, 6))
    o = submanifold_orbits(GeneratorSet.standard(4, standard_indices(4)))
    assert o.blocks == ((1, 2, 3, 4),)


def test_orbit_partition_validation():
    with pytest.raises(ValueError):
        OrbitPartition.from_blocks(3, [[1, 2]])


@pytest.mark.parametrize("text,n", [("e", 3), ("(1 2 3)(4 5)", 5), ("(1 10)(2 3)", 10), ("(2 5 3)", 6)])
def test_cycle_notation_round_trip(text, n):
    p = parse_cycles(text, n)
    assert format_cycles(p) == text
    assert parse_cycles(format_cycles(p), n) == p


@pytest.mark.parametrize("text", ["(1 2)(2 3)", "(1 7)", "1 2", "(1 2", "(a b)", ""])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_group_axioms_exhaustive(n):
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    e = Permutation.identity(n)
    for a in perms:
        assert a * e == a == e * a
        assert (a * a.inverse()).is_identity()
        for b in perms:
            assert (a * b).images == sym_compose(a.images, b.images)
            for c in perms:
                assert (a * b) * c == a * (b * c)


perm_strategy = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))).map(lambda xs: Permutation(tuple(xs)))


@given(perm_strategy)
def test_round_trip_random(p):
    assert parse_cycles(format_cycles(p), p.n) == p


@st.composite
def transposition_seqs(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    pairs = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda t: t[0] != t[1]),
                          max_size=8))
    return n, pairs


@given(transposition_seqs())
def test_sequence_times_reverse_is_identity(case):
    n, pairs = case
    assert (seq(n, pairs) * seq(n, list(reversed(pairs)))).is_identity()


@given(transposition_seqs())
def test_iota_matches_sympy_product(case):
    n, pairs = case
    want = Permutation.identity(n).images
    for i, j in pairs:
        want = sym_compose(want, T(n, i, j).images)
    assert seq(n, pairs).images == want


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cycle_search_matches_bruteforce_and_rank(n):
    idx = standard_indices(n)
    for mask in range(1 << len(idx)):
        pairs = [p for k, p in enumerate(idx) if mask >> k & 1]
        g = GeneratorSet.standard(n, pairs)
        fast, w = cycle_controllable(g)
        slow, w2 = cycle_controllable_bruteforce(g)
        assert fast == slow == (lie_rank(g) == so_dim(n))
        if fast:
            assert len(w.pairs) == n - 1 and is_n_cycle(w.permutation)
            assert is_n_cycle(w2.permutation)
