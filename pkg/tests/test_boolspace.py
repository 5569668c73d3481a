import random

import pytest
from hypothesis import given, settings, strategies as st

from stonevn import oracles
from stonevn.boolspace import (ContinuousMap, EquivRelation, FiniteBoolSpace, InverseSystem,
                               all_equiv_relations, all_maps, delta, delta_functor,
                               discrete_space, induced_quotient_map, limit, limit_space,
                               pullback_relation, quotient, random_equiv_relation, random_map,
                               transition)
from stonevn.errors import ContractError, ResourceError

ABCD = FiniteBoolSpace(("a", "b", "c", "d"))


def test_spaces_reject_duplicates():
    with pytest.raises(ContractError):
        FiniteBoolSpace(("a", "a"))


def test_map_composition():
    X, Y = discrete_space(3), discrete_space(2, "q")
    f = ContinuousMap.from_names(X, Y, {"p0": "q0", "p1": "q1", "p2": "q0"})
    g = ContinuousMap.from_names(Y, X, {"q0": "p2", "q1": "p2"})
    assert f.then(g).as_dict() == {"p0": "p2", "p1": "p2", "p2": "p2"}
    assert f.is_surjective() and not f.is_injective()
    assert len(list(all_maps(X, Y))) == 8


def test_partition_validation():
    with pytest.raises(ContractError):
        EquivRelation.from_blocks(ABCD, [["a", "b"], ["b", "c", "d"]])
    with pytest.raises(ContractError):
        EquivRelation.from_blocks(ABCD, [["a", "b"], ["c"]])


def test_quotient_examples():
    Q, p = quotient(ABCD, EquivRelation.diagonal(ABCD))
    assert len(Q) == 4 and p.is_bijective()
    Q, p = quotient(ABCD, EquivRelation.total(ABCD))
    assert len(Q) == 1
    R = EquivRelation.from_blocks(ABCD, [["a", "b"], ["c"], ["d"]])
    Q, p = quotient(ABCD, R)
    assert len(Q) == 3 and p.is_surjective()
    assert p.as_dict()["a"] == p.as_dict()["b"] == "{a,b}"


def test_partition_counts_are_bell_numbers():
    bell = oracles.bell_numbers(7)
    assert bell[3] == 5 and bell[4] == 15 and bell[6] == 203
    for n in range(7):
        assert len(all_equiv_relations(discrete_space(n))) == bell[n]
    with pytest.raises(ResourceError):
        all_equiv_relations(discrete_space(9))


def test_transition_examples():
    R = EquivRelation.from_blocks(ABCD, [["a", "b"], ["c", "d"]])
    t = transition(R, R)
    assert t.is_bijective()
    t = transition(EquivRelation.diagonal(ABCD), EquivRelation.total(ABCD))
    assert len(t.codomain) == 1 and len(set(t.images)) == 1
    fine = EquivRelation.from_blocks(ABCD, [["a"], ["b"], ["c", "d"]])
    t = transition(fine, R)
    assert len(t.domain) == 3 and len(t.codomain) == 2 and t.is_surjective()
    with pytest.raises(ContractError):
        transition(R, fine)


def test_refinement_is_a_partial_order():
    rels = all_equiv_relations(ABCD)
    for R in rels:
        assert R.refines(R)
        assert EquivRelation.diagonal(ABCD).refines(R)
        assert R.refines(EquivRelation.total(ABCD))
        for S in rels:
            if R.refines(S) and S.refines(R):
                assert R == S


def test_limit_of_constant_system():
    X = discrete_space(3)
    ident = X.identity()
    S = InverseSystem([X, X, X], {(1, 0): ident, (2, 1): ident})
    lim = limit(S)
    assert len(lim.space) == 3
    assert all(p.is_bijective() for p in lim.projections)


def test_two_level_chain():
    top = FiniteBoolSpace(("00", "01", "10", "11"))
    bit = FiniteBoolSpace(("0", "1"))
    first = ContinuousMap.from_names(top, bit, {"00": "0", "01": "0", "10": "1", "11": "1"})
    lim = limit(InverseSystem([bit, top], {(1, 0): first}))
    assert len(lim.threads) == 4
    assert lim.projections[1].is_bijective()


def test_empty_level_gives_empty_limit():
    S = InverseSystem([discrete_space(2), discrete_space(0)], {})
    assert len(limit(S).space) == 0


def test_incoherent_system_reports_a_triple():
    X = discrete_space(2)
    swap = ContinuousMap(X, X, (1, 0))
    with pytest.raises(ContractError, match="witness triple"):
        InverseSystem([X, X, X], {(2, 1): X.identity(), (1, 0): X.identity(), (2, 0): swap})


def test_delta_examples():
    assert delta(discrete_space(1)).bijective
    d = delta(ABCD)
    assert d.bijective and len(d.limit.threads) == 4
    assert len(d.presentation.relations) == 15


def test_delta_separating_relation():
    d = delta(ABCD)
    for x in range(4):
        for y in range(4):
            if x != y:
                R = EquivRelation(ABCD, tuple(0 if i == x else 1 for i in range(4)))
                assert not R.related(ABCD.points[x], ABCD.points[y])
                assert d.map.images[x] != d.map.images[y]


def test_delta_sampled_above_six_points():
    d = delta(discrete_space(9), seed=3)
    assert d.bijective


def test_pullback_examples():
    X, Y = discrete_space(4), discrete_space(3, "q")
    rng = random.Random(0)
    f = random_map(X, Y, rng)
    kernel = pullback_relation(f, EquivRelation.diagonal(Y))
    for i in range(4):
        for k in range(4):
            same = kernel.related(X.points[i], X.points[k])
            assert same == (f.images[i] == f.images[k])
    assert pullback_relation(f, EquivRelation.total(Y)) == EquivRelation.total(X)
    const = ContinuousMap(X, Y, (1, 1, 1, 1))
    for R in all_equiv_relations(Y):
        assert pullback_relation(const, R) == EquivRelation.total(X)


def test_induced_quotient_map():
    X = discrete_space(3)
    g = induced_quotient_map(X.identity(), EquivRelation.diagonal(X))
    assert g.is_bijective()
    Y = discrete_space(3, "q")
    const = ContinuousMap(X, Y, (2, 2, 2))
    R = EquivRelation(Y, (0, 1, 1))
    g = induced_quotient_map(const, R)
    assert len(g.domain) == 1 and g.is_injective()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_induced_square_commutes(m, n, seed):
    rng = random.Random(seed)
    X, Y = discrete_space(m), discrete_space(n, "q")
    f = random_map(X, Y, rng)
    R = random_equiv_relation(Y, rng)
    g = induced_quotient_map(f, R)
    _, p_fr = quotient(X, pullback_relation(f, R))
    _, p_r = quotient(Y, R)
    assert p_fr.then(g) == f.then(p_r)


def test_delta_functor_laws():
    X = discrete_space(3)
    assert delta_functor(X.identity()) == limit_space(X).identity()
    rng = random.Random(4)
    for _ in range(30):
        X, Y, Z = (discrete_space(rng.randint(1, 5), p) for p in "pqr")
        f, g = random_map(X, Y, rng), random_map(Y, Z, rng)
        assert delta_functor(f.then(g)) == delta_functor(f).then(delta_functor(g))
        assert delta(X).map.then(delta_functor(f)) == f.then(delta(Y).map)
