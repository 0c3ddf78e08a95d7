"""Generators: families re-verify, sampling is deterministic and certified."""

from fractions import Fraction

import pytest

from helpers import complete, cycle

from talpha.cover import alpha, clique_cover_number, omega
from talpha.errors import BadParams
from talpha.gen import (
    compose_clique_sum,
    gen_family,
    gen_random_class_c,
    mycielski,
    ta_tc_gap,
)
from talpha.structures import check_class, find_structure, find_wheel
from talpha.treedec import validate_td


def test_family_hole():
    g = gen_family("hole", 7)
    assert g == cycle(7)
    with pytest.raises(BadParams):
        gen_family("hole", 3)


def test_family_wheel_even_control():
    g = gen_family("wheel", 6, (1, 2, 4, 5))
    w = find_wheel(g, "even")
    assert w is not None and w.flag("spokes") == 4


def test_family_outputs_pass_their_detectors():
    assert find_structure(gen_family("theta", 2, 3, 4), "theta") is not None
    assert find_structure(gen_family("pyramid"), "pyramid") is not None
    assert find_structure(gen_family("prism"), "prism") is not None
    assert find_structure(gen_family("prism", 2, 1, 3), "prism") is not None
    assert find_structure(gen_family("pyramid", 1, 3, 2), "pyramid") is not None


def test_family_bad_params():
    with pytest.raises(BadParams):
        gen_family("theta", 1, 2, 2)
    with pytest.raises(BadParams):
        gen_family("pyramid", 1, 1, 5)
    with pytest.raises(BadParams):
        gen_family("wheel", 6, (1, 2))
    with pytest.raises(BadParams):
        gen_family("nonsense")


def test_mycielski_tower():
    m3 = mycielski(complete(2))
    assert m3.n == 5 and m3.m == 5  # the five-cycle
    m4 = mycielski(m3)
    assert m4.n == 11
    assert omega(m4) == 2


def test_ta_tc_gap_certificate():
    cert = ta_tc_gap(4)
    g = cert.graph
    assert g.n == 22
    assert cert.half_cover_number == 4
    assert cert.bag_independence <= 2
    assert alpha(g) <= 2
    assert validate_td(g, cert.td).valid
    # one half really needs four cliques
    half = sorted(cert.half)
    sub, _ = g.subgraph(half)
    assert clique_cover_number(sub, guard=11) == 4


def test_ta_tc_gap_small_targets():
    cert2 = ta_tc_gap(2)
    assert cert2.half_cover_number == 2
    cert3 = ta_tc_gap(3)
    assert cert3.half_cover_number == 3
    with pytest.raises(BadParams):
        ta_tc_gap(1)


def test_random_generation_deterministic_and_certified():
    a = gen_random_class_c(8, 0.2, seed=5)
    b = gen_random_class_c(8, 0.2, seed=5)
    assert a is not None and b is not None
    assert a.graph == b.graph
    assert a.certificate.status == "in"
    assert a.attempts == b.attempts
    assert check_class(a.graph).status == "in"


def test_random_generation_can_fail():
    # density forcing four-cycles constantly: tiny retry budget gives up
    res = gen_random_class_c(12, 0.9, seed=1, tries=3)
    assert res is None


def test_random_generation_empty_graph():
    res = gen_random_class_c(0, 0.5, seed=1)
    assert res is not None and res.graph.n == 0


def test_clique_sum_examples():
    tri = complete(3)
    g, rep = compose_clique_sum(tri, tri, (0,), (0,))
    assert g is not None and g.n == 5 and rep.status == "in"
    g2, rep2 = compose_clique_sum(tri, tri, (0, 1), (0, 1))
    assert g2 is None and rep2.witness.kind == "diamond"
    c5 = cycle(5)
    g3, rep3 = compose_clique_sum(c5, c5, (0,), (0,))
    assert g3 is not None and g3.n == 9


def test_clique_sum_bad_params():
    with pytest.raises(BadParams):
        compose_clique_sum(complete(3), complete(3), (0, 1), (0,))
    with pytest.raises(BadParams):
        compose_clique_sum(cycle(5), cycle(5), (0, 2), (0, 1))
