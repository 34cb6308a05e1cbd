from itertools import combinations

import numpy as np
import pytest
from conftest import cocomp_instances, complete, cycle, edgeless, path
from hypothesis import given

from cocolat.fixtures import fig4, fig4_diamond, fig6, fig6_full, p1, p3, two_chains
from cocolat.graph import Graph, VertexOrdering
from cocolat.oracles import glb_lub_table_oracle
from cocolat.poset import (
    ImplicitPoset,
    LatticeError,
    MALattice,
    build_lattice,
    check_lattice_conditions,
    has_two_plus_two,
    inc_of,
    is_cocomp_ordering,
    is_interval_order,
    is_interval_ordering,
    ma_covers,
    ma_join,
    ma_leq,
    ma_meet,
    max_of,
    maximal_antichains,
    min_of,
    minimal_interval_extension,
    poset_less,
    s_max,
    s_min,
)
from cocolat.report import NotMaximalError, PreconditionError


def named(fx, s):
    """Label set from ``"a b c"`` or, for one-letter labels, ``"abc"``."""
    return frozenset(fx.graph.vertices(s.split() if " " in s or s in fx.graph.names else list(s)))


def poset_of(fx, order=None):
    return ImplicitPoset(fx.graph, order or fx.order)


# ---------------------------------------------------------------- orderings


def test_minimal_umbrella():
    g = Graph.from_named_edges(list("xyz"), [("x", "z")])
    bad = is_cocomp_ordering(g, VertexOrdering.from_labels(g, "xyz"))
    assert not bad and bad.witness == tuple(g.vertices("xyz"))
    assert is_cocomp_ordering(g, VertexOrdering.from_labels(g, "xzy"))


def test_fig6_sigma_is_cocomp():
    fx = fig6()
    assert is_cocomp_ordering(fx.graph, fx.ordering("1 3 2 4 5 6"))


def test_interval_ordering_p3():
    fx = p3()
    assert is_interval_ordering(fx.graph, fx.ordering("u v w"))
    bad = is_interval_ordering(fx.graph, fx.ordering("u w v"))
    assert not bad and bad.witness == tuple(fx.graph.vertices("uwv"))


def test_poset_requires_cocomp_unless_trusted():
    g = Graph.from_edges(3, [(0, 2)])
    with pytest.raises(PreconditionError):
        ImplicitPoset(g, VertexOrdering.identity(3))
    ImplicitPoset(g, VertexOrdering.identity(3), trust=True)


# ---------------------------------------------------------------- relations


def test_poset_less_basics():
    p = ImplicitPoset(path(3), VertexOrdering.identity(3))
    assert not poset_less(p, 1, 1)
    assert not poset_less(p, 0, 1) and not poset_less(p, 1, 0)
    assert poset_less(p, 0, 2)


def test_chain_poset_follows_sigma():
    sigma = VertexOrdering((3, 1, 0, 2))
    p = ImplicitPoset(edgeless(4), sigma)
    for x in range(4):
        for y in range(4):
            assert poset_less(p, x, y) == (sigma.position[x] < sigma.position[y])
    assert max_of(p, range(4)) == {2}


def test_antichain_extremes_are_itself():
    p = ImplicitPoset(complete(4), VertexOrdering.identity(4))
    s = {0, 2, 3}
    assert max_of(p, s) == min_of(p, s) == s


def test_two_chain_minima():
    fx = two_chains(2)
    p = poset_of(fx)
    s = named(fx, "a1 a2")
    assert inc_of(p, s) == frozenset()
    assert max_of(p, s) == s


def test_p1_s_sets():
    fx = p1()
    p = poset_of(fx)
    a, b = named(fx, "aghi"), named(fx, "cdef")
    assert s_min(p, a, b) == named(fx, "a")
    assert s_max(p, a, b) == named(fx, "ghi")
    assert s_min(p, b, a) == named(fx, "cd")
    assert s_max(p, b, a) == named(fx, "ef")
    assert s_min(p, a, a) == s_max(p, a, a) == frozenset()


def test_two_chain_s_sets():
    fx = two_chains(2)
    p = poset_of(fx)
    a, b = named(fx, "a1 a2"), named(fx, "b1 b2")
    assert s_min(p, a, b) == a
    assert s_max(p, a, b) == frozenset()


def test_s_min_rejects_non_maximal():
    fx = two_chains(2)
    with pytest.raises(NotMaximalError):
        s_min(poset_of(fx), named(fx, "a1"), named(fx, "b1 b2"))


def test_fig4_chain():
    fx = fig4()
    p = poset_of(fx)
    chain = [named(fx, s) for s in ("ade", "abd", "abc", "bcf")]
    for x, y in combinations(chain, 2):
        assert ma_leq(p, x, y) and not ma_leq(p, y, x)
    assert ma_leq(p, chain[0], chain[0])
    assert ma_covers(p, chain[0], chain[1])
    assert not ma_covers(p, chain[0], chain[2])
    assert sorted(maximal_antichains(p), key=sorted) == sorted(chain, key=sorted)


def test_two_chain_cross_antichains_incomparable():
    fx = two_chains(2)
    p = poset_of(fx)
    x, y = named(fx, "a1 b2"), named(fx, "b1 a2")
    assert not ma_leq(p, x, y) and not ma_leq(p, y, x)
    assert ma_covers(p, named(fx, "a1 a2"), named(fx, "b1 a2"))


def test_covers_irreflexive():
    fx = fig4()
    a = named(fx, "ade")
    with pytest.raises(ValueError):
        ma_covers(poset_of(fx), a, a)


def test_p1_meet_join():
    fx = p1()
    p = poset_of(fx)
    a, b = named(fx, "aghi"), named(fx, "cdef")
    assert ma_meet(p, a, b) == named(fx, "abcd")
    assert ma_join(p, a, b) == named(fx, "efghi")
    assert ma_meet(p, a, a) == a


@given(cocomp_instances(max_n=8))
def test_leq_forms_agree(inst):
    p = ImplicitPoset(inst.graph, inst.witness)
    mas = maximal_antichains(p)
    for a in mas:
        for b in mas:
            assert ma_leq(p, a, b, "forward") == ma_leq(p, a, b, "reverse")


@given(cocomp_instances(max_n=8))
def test_meet_join_match_table_oracle(inst):
    lat = build_lattice(ImplicitPoset(inst.graph, inst.witness), validate=False)
    meet, join = glb_lub_table_oracle(lat)
    assert np.array_equal(meet, lat.meet) and np.array_equal(join, lat.join)


@given(cocomp_instances(max_n=8))
def test_dual_poset_reverses_lattice(inst):
    p = ImplicitPoset(inst.graph, inst.witness)
    lat, dual = build_lattice(p), build_lattice(p.reversed())
    assert lat.elements == dual.elements
    assert np.array_equal(lat.leq, dual.leq.T)


# ---------------------------------------------------------------- lattices


def test_counting_two_chains():
    for k in range(1, 7):
        assert len(maximal_antichains(poset_of(two_chains(k)))) == 2**k


def test_interval_graph_lattice_is_chain():
    lat = build_lattice(ImplicitPoset(path(5), VertexOrdering.identity(5)))
    assert lat.is_chain() and len(lat) == 4


def test_two_chain_diamond():
    fx = two_chains(2)
    lat = build_lattice(poset_of(fx))
    assert len(lat) == 4 and len(lat.covers) == 4 and not lat.is_chain()
    assert lat.elements[lat.bottom] == named(fx, "a1 a2")
    assert lat.elements[lat.top] == named(fx, "b1 b2")


def test_p1_is_n5():
    fx = p1()
    lat = build_lattice(poset_of(fx))
    assert len(lat) == 5 and len(lat.covers) == 5
    incomparable = [(i, j) for i in range(5) for j in range(i + 1, 5) if not lat.comparable(i, j)]
    # N5: one element incomparable to both members of a 2-chain
    assert len(incomparable) == 2
    lone = {incomparable[0][0], incomparable[0][1]} & {incomparable[1][0], incomparable[1][1]}
    assert [lat.elements[i] for i in lone] == [named(fx, "cdef")]


def test_lattice_text_and_dot():
    fx = two_chains(2)
    lat = build_lattice(poset_of(fx))
    text = lat.to_text(fx.graph)
    assert "{a1,a2}" in text and text.count("<") == 4
    assert lat.to_dot(fx.graph).startswith("digraph")


def test_from_order_rejects_non_lattice():
    leq = np.eye(2, dtype=bool)
    with pytest.raises(LatticeError):
        MALattice.from_order([{0}, {1}], leq)


# ---------------------------------------------------------------- interval orders


def test_chain_is_interval_order():
    assert is_interval_order(ImplicitPoset(edgeless(4), VertexOrdering.identity(4)))


def test_two_plus_two_is_not_interval_order():
    p = poset_of(two_chains(2))
    assert has_two_plus_two(p) is not None
    assert not is_interval_order(p)


def test_fig6_poset_is_not_interval_order():
    # the chain fixture alone is an interval graph; the 3-6 edge adds the clique {3,6}
    assert is_interval_order(poset_of(fig6()))
    p = poset_of(fig6_full())
    assert not is_interval_order(p)
    lat = build_lattice(p)
    assert not lat.is_chain()


@given(cocomp_instances(max_n=8))
def test_interval_order_iff_chain_lattice(inst):
    p = ImplicitPoset(inst.graph, inst.witness)
    assert is_interval_order(p) == build_lattice(p).is_chain()


def test_fig6_interval_extension():
    fx = fig6()
    g = fx.graph
    p = ImplicitPoset(g, fx.ordering("1 3 2 4 5 6"))
    chain = [g.vertices(c) for c in ("123", "124", "145", "456")]
    ext = minimal_interval_extension(p, chain)
    want = {"1": (1, 3), "2": (1, 2), "3": (1, 1), "4": (2, 4), "5": (3, 4), "6": (4, 4)}
    assert {g.label(v): ext.interval(v) for v in range(6)} == want
    assert ext.extends(p)
    assert ext.less(g.vertex("3"), g.vertex("5")) and ext.less(g.vertex("2"), g.vertex("6"))


def test_interval_extension_requires_maximal_chain():
    fx = fig6()
    g = fx.graph
    p = ImplicitPoset(g, fx.ordering("1 3 2 4 5 6"))
    with pytest.raises(PreconditionError):
        minimal_interval_extension(p, [g.vertices(c) for c in ("123", "124", "456")])


def test_interval_order_extension_is_itself():
    p = ImplicitPoset(path(4), VertexOrdering.identity(4))
    lat = build_lattice(p)
    ext = minimal_interval_extension(p, [lat.elements[i] for i in np.argsort(lat.leq.sum(axis=1))[::-1]])
    for x in range(4):
        for y in range(4):
            assert ext.less(x, y) == p.less(x, y)


def test_two_chain_extension_through_diamond():
    fx = two_chains(2)
    p = poset_of(fx)
    chain = [named(fx, s) for s in ("a1 a2", "b1 a2", "b1 b2")]
    ext = minimal_interval_extension(p, chain)
    assert ext.extends(p)
    assert not ext.less(*named(fx, "a1 a2"))


# ---------------------------------------------------------------- conditions


@given(cocomp_instances(max_n=8))
def test_ma_lattice_meets_all_conditions(inst):
    lat = build_lattice(ImplicitPoset(inst.graph, inst.witness))
    assert check_lattice_conditions(inst.graph, lat).all


def test_fig4_diamond_fails_only_intersection():
    fx = fig4()
    conds = check_lattice_conditions(fx.graph, fig4_diamond(fx))
    assert conds.cond_i and conds.cond_ii and not conds.cond_iii
    assert conds.cond_iii.witness is not None


def test_chain_lattice_satisfies_conditions():
    g = cycle(3)
    lat = build_lattice(ImplicitPoset(path(6), VertexOrdering.identity(6)))
    assert check_lattice_conditions(path(6), lat).all
    assert len(build_lattice(ImplicitPoset(g, VertexOrdering.identity(3)))) == 1
