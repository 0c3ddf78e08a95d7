"""Structure detectors against spec examples and the subset-enumeration oracle."""

import random

import pytest

from helpers import (
    complete,
    complete_bipartite,
    cycle,
    diamond,
    path,
    petersen,
    random_graph,
    spoked_wheel,
)
from oracles import all_holes, contains_structure, wheel_exists

from talpha.bitset import mask_of
from talpha.errors import NoConnector, TalphaError, WitnessError
from talpha.graph import Graph
from talpha.structures import (
    STRUCTURE_KINDS,
    UNKNOWN,
    Witness,
    check_class,
    classify_minimal_connector,
    enumerate_holes,
    find_structure,
    find_wheel,
    hub_set,
)


def prism6():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                     (0, 3), (1, 4), (2, 5)])


# -- find_structure examples ---------------------------------------------------


def test_theta_in_k23():
    w = find_structure(complete_bipartite(2, 3), "theta")
    assert w is not None and w.kind == "theta"
    a, b = w.role("ends")
    assert {a, b} == {0, 1}
    assert all(len(p) == 3 for p in w.role("paths"))


def test_prism_on_six_vertices():
    w = find_structure(prism6(), "prism")
    assert w is not None
    assert {frozenset(w.role("triangle1")), frozenset(w.role("triangle2"))} == \
        {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


def test_no_c4_in_c7():
    assert find_structure(cycle(7), "c4") is None


def test_diamond_witness():
    w = find_structure(diamond(), "diamond")
    assert w is not None
    assert set(w.role("adjacent_pair")) == {0, 1}
    assert set(w.role("nonadjacent_pair")) == {2, 3}


def test_budget_yields_unknown():
    from talpha.gen import theta_graph

    g = theta_graph(5, 5, 5)  # long paths force many search steps
    res = find_structure(g, "theta", budget=3)
    assert res is UNKNOWN
    with pytest.raises(TalphaError):
        bool(res)  # UNKNOWN must never act as a boolean
    assert find_wheel(cycle(20), "any", budget=3) is UNKNOWN


def test_unknown_kind_rejected():
    with pytest.raises(TalphaError):
        find_structure(cycle(5), "square")


# -- find_wheel examples --------------------------------------------------------


def test_even_wheel_detected():
    g = spoked_wheel(6, (0, 1, 3, 4))
    w = find_wheel(g, "even")
    assert w is not None and w.flag("even") and w.flag("spokes") == 4


def test_bug_wheel_classification():
    g = spoked_wheel(5, (0, 1, 3))
    w = find_wheel(g, "any")
    assert w is not None and w.flag("bug")
    assert find_wheel(g, "proper") is None


def test_universal_wheel_not_proper():
    g = spoked_wheel(5, (0, 1, 2, 3, 4))
    w = find_wheel(g, "any")
    assert w is not None and w.flag("universal")
    assert find_wheel(g, "proper") is None


def test_twin_wheel_classification():
    g = spoked_wheel(6, (0, 1, 2))
    w = find_wheel(g, "any")
    assert w is not None and w.flag("twin") and not w.flag("bug")


def test_line_wheel_flag():
    g = spoked_wheel(6, (0, 1, 3, 4))
    w = find_wheel(g, "any")
    assert w.flag("line")


# -- hole enumeration ------------------------------------------------------------


def test_holes_of_c6():
    res = enumerate_holes(cycle(6))
    assert res.holes == ((0, 1, 2, 3, 4, 5),)
    assert not res.truncated


def test_no_holes_in_complete():
    assert enumerate_holes(complete(4)).holes == ()


def test_prism_has_exactly_three_c4_holes():
    res = enumerate_holes(prism6())
    expected = {frozenset(h) for h in all_holes(prism6())}
    assert {frozenset(h) for h in res.holes} == expected
    assert len(res.holes) == 3
    assert all(len(h) == 4 for h in res.holes)


def test_hole_enumeration_matches_oracle_on_random_graphs():
    for seed in range(120):
        g = random_graph(9, 0.3, 5000 + seed)
        mine = {frozenset(h) for h in enumerate_holes(g).holes}
        assert mine == set(all_holes(g))


def test_hole_length_filters():
    g = cycle(8)
    assert enumerate_holes(g, min_length=9).holes == ()
    assert enumerate_holes(g, max_length=7).holes == ()
    assert len(enumerate_holes(g, min_length=8).holes) == 1


# -- hub sets ---------------------------------------------------------------------


def test_hub_set_even_wheel():
    g = spoked_wheel(6, (0, 1, 3, 4))
    hs = hub_set(g, g.full_mask)
    assert hs.hubs == frozenset({6})
    hs.witness_for(6).verify(g)
    assert hs.exhaustive


def test_hub_set_hole_alone_empty():
    assert hub_set(cycle(7), cycle(7).full_mask).hubs == frozenset()


def test_hub_set_bug_only_excluded():
    g = spoked_wheel(5, (0, 1, 3))
    assert hub_set(g, g.full_mask).hubs == frozenset()


def test_hub_set_respects_region():
    g = spoked_wheel(6, (0, 1, 3, 4))
    # excluding one hole vertex removes the only hole inside the region
    region = g.full_mask & ~(1 << 2)
    assert hub_set(g, region).hubs == frozenset()


# -- class membership -------------------------------------------------------------


def test_check_class_examples():
    assert check_class(cycle(7)).status == "in"
    rep = check_class(complete_bipartite(2, 3))
    assert rep.status == "out"
    assert rep.verdict("theta") == "out"
    assert rep.verdict("c4") == "out"


def test_check_class_regression_fixtures(subtests=None):
    # verdicts frozen from the exhaustive subset oracle
    pet = petersen()
    rep = check_class(pet)
    assert rep.status == "out"
    assert rep.verdict("theta") == "out"  # cross-checked below
    assert contains_structure(pet, "theta")
    assert not contains_structure(pet, "c4")
    assert not contains_structure(pet, "diamond")


def test_detectors_agree_with_subset_oracle():
    rng = random.Random(11)
    checked = {kind: 0 for kind in STRUCTURE_KINDS}
    for trial in range(500):
        n = rng.randint(4, 12)
        g = random_graph(n, rng.uniform(0.15, 0.5), 7000 + trial)
        for kind in STRUCTURE_KINDS:
            found = find_structure(g, kind)
            assert found is not UNKNOWN
            expected = contains_structure(g, kind)
            assert (found is not None) == expected, (kind, trial, n)
            if found is not None:
                found.verify(g)
                checked[kind] += 1
    assert all(checked[k] > 10 for k in ("c4", "diamond"))
    assert checked["theta"] + checked["pyramid"] + checked["prism"] > 10


def test_wheel_detector_agrees_with_subset_oracle():
    rng = random.Random(13)
    for trial in range(200):
        n = rng.randint(5, 10)
        g = random_graph(n, rng.uniform(0.2, 0.5), 9000 + trial)
        assert (find_wheel(g, "any") is not None) == wheel_exists(g)
        assert (find_wheel(g, "even") is not None) == wheel_exists(g, even_only=True)


def test_common_neighbor_property_on_class_corpus(class_c_corpus):
    # whenever holes exist and two adjacent outside vertices each see two
    # nonadjacent hole vertices, they share a hole neighbor
    checked = 0
    for g in class_c_corpus[:220]:
        for hole in enumerate_holes(g).holes:
            hmask = mask_of(hole)
            ends = [v for v in range(g.n) if not (hmask >> v) & 1]
            for v1 in ends:
                nb1 = [h for h in hole if g.has_edge(v1, h)]
                if len(nb1) < 2:
                    continue
                if all(g.has_edge(a, b) for a in nb1 for b in nb1 if a < b):
                    continue
                for v2 in ends:
                    if v2 <= v1 or not g.has_edge(v1, v2):
                        continue
                    nb2 = [h for h in hole if g.has_edge(v2, h)]
                    if len(nb2) < 2 or all(g.has_edge(a, b) for a in nb2
                                           for b in nb2 if a < b):
                        continue
                    assert set(nb1) & set(nb2), (sorted(hole), v1, v2)
                    checked += 1
    assert checked >= 0


# -- witnesses re-verify -----------------------------------------------------------


def test_witness_reverification_is_hard_error():
    c5 = cycle(5)
    with pytest.raises(WitnessError):
        Witness.c4(c5, 0, 1, 2, 3)
    with pytest.raises(WitnessError):
        Witness.theta(c5, 0, 2, [(0, 1, 2), (0, 4, 3, 2), (0, 3, 2)])


def test_witness_json_shape():
    g = spoked_wheel(6, (0, 1, 3, 4))
    data = find_wheel(g, "even").to_json()
    assert data["kind"] == "wheel"
    assert data["verified"] is True
    assert set(data["flags"]) >= {"even", "bug", "twin", "universal", "proper"}


# -- minimal connectors -------------------------------------------------------------


def test_connector_star_center():
    g = Graph(4, [(3, 0), (3, 1), (3, 2)])
    out = classify_minimal_connector(g, 0, 1, 2)
    assert out.form == "center" and out.H == frozenset({3})
    assert all(len(p) == 2 for p in out.get("paths"))


def test_connector_triangle():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    out = classify_minimal_connector(g, 3, 4, 5)
    assert out.form == "triangle"
    assert set(out.get("triangle")) == {0, 1, 2}


def test_connector_path_with_adjacent_pair():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)])
    out = classify_minimal_connector(g, 0, 3, 4)
    assert out.form == "path"
    assert out.get("aside") == 4 and out.get("aside_two_adjacent")


def test_connector_no_connector():
    g = Graph(4, [(0, 1)])
    with pytest.raises(NoConnector):
        classify_minimal_connector(g, 0, 2, 3)


def test_connector_minimality():
    rng = random.Random(5)
    for trial in range(120):
        n = rng.randint(5, 10)
        g = random_graph(n, 0.35, 40_000 + trial)
        xs = rng.sample(range(n), 3)
        try:
            out = classify_minimal_connector(g, *xs)
        except NoConnector:
            continue
        H = mask_of(out.H)
        # removing any vertex of H must break connectivity or attachment
        from talpha.graph import components_masks

        for v in out.H:
            rest = H & ~(1 << v)
            assert not any(
                all(g.adj[x] & comp for x in xs)
                for comp in components_masks(g, rest)
            ), (trial, sorted(out.H), v)
