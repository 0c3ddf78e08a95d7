"""Canonical separations, the A-side order, revised collections, central bags."""

from fractions import Fraction

import pytest

from helpers import complete, cycle, path, random_graph

from talpha.bitset import mask_of
from talpha.cutsets import find_clique_cutset
from talpha.errors import NotSmooth, PreconditionViolated, VertexBalanced
from talpha.graph import Graph, Separation, WeightFunction, components_masks
from talpha.separations import (
    SmoothCollection,
    balanced_vertices,
    canonical_star_separation,
    central_bag,
    leq_A_minimal,
    nearly_non_crossing,
    revised_collection,
    shield_check,
    smooth_check,
)
from talpha.structures import find_structure


def uniform(G):
    return WeightFunction.uniform(G.full_mask)


def test_balanced_vertices_examples():
    p5 = path(5)
    bal, unbal = balanced_vertices(p5, uniform(p5))
    assert unbal == frozenset({0, 4})
    assert bal == frozenset({1, 2, 3})
    k4 = complete(4)
    assert balanced_vertices(k4, uniform(k4))[1] == frozenset()
    c4 = cycle(4)
    assert balanced_vertices(c4, uniform(c4))[1] == frozenset()


def test_canonical_star_separation_examples():
    p5 = path(5)
    s = canonical_star_separation(p5, uniform(p5), 0)
    assert (s.A, s.C, s.B) == (frozenset(), frozenset({0, 1}), frozenset({2, 3, 4}))
    p7 = path(7)
    s2 = canonical_star_separation(p7, uniform(p7), 1)
    assert (s2.A, s2.C, s2.B) == (frozenset({0}), frozenset({1, 2}),
                                  frozenset({3, 4, 5, 6}))
    with pytest.raises(VertexBalanced):
        canonical_star_separation(p5, uniform(p5), 2)


def test_canonical_separation_is_valid_separation():
    from talpha.graph import is_separation

    for seed in range(60):
        g = random_graph(10, 0.25, seed)
        w = WeightFunction.uniform(g.full_mask)
        _, unbal = balanced_vertices(g, w)
        for v in sorted(unbal):
            s = canonical_star_separation(g, w, v)
            assert is_separation(g, s.separation()).valid
            cmask = mask_of(s.C)
            assert (cmask >> v) & 1 and cmask & ~g.closed(v) == 0


def test_leq_a_examples():
    p7 = path(7)
    rel, M = leq_A_minimal(p7, uniform(p7), [0, 1, 5, 6])
    assert (1, 0) in rel and (5, 6) in rel
    assert M == frozenset({1, 5})
    p5 = path(5)
    rel5, M5 = leq_A_minimal(p5, uniform(p5), [0, 4])
    assert M5 == frozenset({0, 4})
    relE, mE = leq_A_minimal(p5, uniform(p5), [])
    assert relE == frozenset() and mE == frozenset()


def test_leq_a_poset_axioms_on_class_corpus(class_c_corpus):
    checked = 0
    for g in class_c_corpus:
        if not 1 <= g.n <= 20:
            continue
        if len(components_masks(g, g.full_mask)) != 1:
            continue
        if find_clique_cutset(g) is not None:
            continue
        w = WeightFunction.uniform(g.full_mask)
        _, unbal = balanced_vertices(g, w)
        rel, _ = leq_A_minimal(g, w, mask_of(unbal))
        relset = set(rel)
        U = sorted(unbal)
        for x in U:
            assert (x, x) in relset
        for x in U:
            for y in U:
                if x != y and (x, y) in relset:
                    assert (y, x) not in relset, (g.edges(), x, y)
                for z in U:
                    if (x, y) in relset and (y, z) in relset:
                        assert (x, z) in relset
        checked += 1
    assert checked >= 20


def test_revised_collection_examples():
    p7 = path(7)
    rev = revised_collection(p7, uniform(p7), [1, 5])
    by_u = {r.u: r for r in rev}
    assert by_u[1].C == frozenset({1, 2}) and by_u[1].A == frozenset({0})
    assert by_u[1].B == frozenset({3, 4, 5, 6})
    p5 = path(5)
    rev5 = revised_collection(p5, uniform(p5), [0])
    s = canonical_star_separation(p5, uniform(p5), 0)
    assert rev5[0].A == s.A and rev5[0].C == s.C and rev5[0].B == s.B
    assert revised_collection(p7, uniform(p7), []) == []


def test_revised_collection_augments_common_neighbors():
    # two chosen vertices adjacent through shared neighbors extend the cut side
    g = Graph(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (4, 5), (5, 6),
                  (3, 6)])
    w = WeightFunction({v: Fraction(1, 14) if v not in (5,) else Fraction(8, 14)
                        for v in range(7)})
    _, unbal = balanced_vertices(g, w)
    X = [v for v in (0, 1) if v in unbal]
    if len(X) == 2:
        rev = revised_collection(g, w, X)
        by_u = {r.u: r for r in rev}
        base = canonical_star_separation(g, w, 0)
        if 1 in base.C:
            assert mask_of(by_u[0].C) & mask_of(base.C) == mask_of(base.C)


def test_smooth_check_and_central_bag_p7():
    p7 = path(7)
    w = uniform(p7)
    rev = revised_collection(p7, w, [1, 5])
    S = SmoothCollection.from_revised(rev)
    assert smooth_check(p7, w, S).smooth
    bag = central_bag(p7, w, S)
    assert bag.bag == frozenset({1, 2, 3, 4, 5})
    assert bag.weights[1] == Fraction(2, 7)
    assert bag.weights[5] == Fraction(2, 7)
    assert bag.weights[3] == Fraction(1, 7)
    assert sum((f for _, f in bag.weights.items()), Fraction(0)) == 1
    anchors = dict((tuple(sorted(c)), a) for c, a in bag.anchors)
    assert anchors == {(0,): 1, (6,): 5}


def test_central_bag_empty_collection_is_whole_graph():
    p7 = path(7)
    bag = central_bag(p7, uniform(p7), SmoothCollection(()))
    assert bag.bag == frozenset(range(7))


def test_central_bag_with_empty_a_sides():
    p5 = path(5)
    rev = revised_collection(p5, uniform(p5), [0, 4])
    bag = central_bag(p5, uniform(p5), SmoothCollection.from_revised(rev))
    assert bag.bag == frozenset(range(5))
    assert bag.weights[0] == Fraction(1, 5)


def test_smooth_violation_reported():
    p7 = path(7)
    w = uniform(p7)
    s1 = canonical_star_separation(p7, w, 1).separation()
    # a fabricated collection whose chosen vertex sits in an A side
    fake = SmoothCollection(((0, s1),))
    report = smooth_check(p7, w, fake)
    assert not report.smooth
    with pytest.raises(NotSmooth):
        central_bag(p7, w, fake)


def test_nearly_non_crossing_definition():
    g = path(6)
    assert nearly_non_crossing(g, mask_of({0}), mask_of({5}), g.full_mask)
    assert nearly_non_crossing(g, mask_of({0, 1}), mask_of({1}), g.full_mask)


def test_revised_nearly_non_crossing_on_class_corpus(class_c_corpus):
    checked = 0
    for g in class_c_corpus:
        if not 2 <= g.n <= 18:
            continue
        if len(components_masks(g, g.full_mask)) != 1:
            continue
        if find_clique_cutset(g) is not None:
            continue
        if find_structure(g, "c4") is not None:
            continue
        w = WeightFunction.uniform(g.full_mask)
        _, unbal = balanced_vertices(g, w)
        if not unbal:
            continue
        _, M = leq_A_minimal(g, w, mask_of(unbal))
        rev = revised_collection(g, w, mask_of(M))
        for i, r1 in enumerate(rev):
            for r2 in rev[i + 1:]:
                assert nearly_non_crossing(g, r1.masks()[0], r2.masks()[0],
                                           g.full_mask)
        checked += 1
    assert checked >= 10


def test_shield_examples():
    p7 = path(7)
    w = uniform(p7)
    s5 = canonical_star_separation(p7, w, 5)
    s6 = canonical_star_separation(p7, w, 6)
    s1 = canonical_star_separation(p7, w, 1)
    assert shield_check(p7, s5.separation(), 5, s5.separation(), 5)
    assert not shield_check(p7, s1.separation(), 1, s5.separation(), 5)
    # hypothesis-satisfying pair found by direct search: S_5 shields S_6
    assert 6 in s5.A
    b6 = mask_of(s6.B)
    overlap = b6 & (mask_of(s5.B) | (mask_of(s5.C) & ~(1 << 5)))
    assert overlap
    assert shield_check(p7, s5.separation(), 5, s6.separation(), 6)


def test_shield_precondition_violations():
    p7 = path(7)
    w = uniform(p7)
    s5 = canonical_star_separation(p7, w, 5).separation()
    broken = Separation(frozenset({0, 3}), frozenset({1, 2}), frozenset({4, 5, 6}))
    with pytest.raises(PreconditionViolated):
        shield_check(p7, broken, 1, s5, 5)


def test_shield_hypotheses_imply_shield_on_paths():
    # whenever the hypotheses hold on path graphs, the conclusion holds
    for n in range(4, 10):
        g = path(n)
        w = WeightFunction.uniform(g.full_mask)
        _, unbal = balanced_vertices(g, w)
        seps = {v: canonical_star_separation(g, w, v) for v in sorted(unbal)}
        for v1, s1 in seps.items():
            for v2, s2 in seps.items():
                if v1 == v2:
                    continue
                hyp = (v2 in s1.A and
                       mask_of(s2.B) & (mask_of(s1.B) | (mask_of(s1.C) & ~(1 << v1))))
                if hyp:
                    assert shield_check(g, s1.separation(), v1,
                                        s2.separation(), v2)
