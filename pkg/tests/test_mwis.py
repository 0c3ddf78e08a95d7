"""Maximum weight independent set: DP over decompositions vs brute force."""

from fractions import Fraction

import pytest

from helpers import complete, cycle, path, petersen, random_graph
from oracles import mwis_exhaustive

from talpha.bitset import mask_of
from talpha.errors import StateBlowup, TooLarge
from talpha.graph import Graph
from talpha.mwis import mwis_bruteforce, mwis_td
from talpha.treedec import TreeDecomposition, elimination_td, wheelfree_td


def test_mwis_td_c7_unit():
    c7 = cycle(7)
    td, _ = wheelfree_td(c7)
    res = mwis_td(c7, [1] * 7, td)
    assert res.value == 3
    assert res.method == "td-dp"


def test_mwis_td_weighted_c5():
    c5 = cycle(5)
    td, _ = wheelfree_td(c5)
    res = mwis_td(c5, [3, 1, 1, 1, 1], td)
    assert res.value == 4
    assert res.chosen == frozenset({0, 2})


def test_mwis_petersen_unit():
    pet = petersen()
    td = elimination_td(pet)
    assert mwis_td(pet, [1] * 10, td).value == 4
    assert mwis_bruteforce(pet, [1] * 10).value == 4


def test_bruteforce_examples():
    assert mwis_bruteforce(complete(5), [1] * 5).value == 1
    assert mwis_bruteforce(cycle(4), [1] * 4).value == 2
    assert mwis_bruteforce(Graph(6), [1] * 6).value == 6


def test_bruteforce_guard():
    with pytest.raises(TooLarge):
        mwis_bruteforce(Graph(30), [1] * 30)


def test_bruteforce_matches_exhaustive_oracle():
    for seed in range(60):
        g = random_graph(10, 0.3, 100 + seed)
        weights = [Fraction((seed + v) % 7, 2) for v in range(10)]
        mine = mwis_bruteforce(g, weights)
        value, chosen = mwis_exhaustive(g, weights)
        assert mine.value == value
        assert g.is_stable(mask_of(mine.chosen))
        assert sum((Fraction(weights[v]) for v in mine.chosen),
                   Fraction(0)) == value


def test_state_blowup_guard():
    g = Graph(12)  # edgeless: single bag has independence 12
    td = TreeDecomposition(12, (frozenset(range(12)),), ())
    with pytest.raises(StateBlowup):
        mwis_td(g, [1] * 12, td, max_bag_independence=4)


def test_dp_value_monotone_in_single_weight():
    g = random_graph(9, 0.3, 77)
    td = elimination_td(g)
    weights = [Fraction(2)] * 9
    base = mwis_td(g, weights, td).value
    for v in range(9):
        bumped = list(weights)
        bumped[v] = Fraction(3)
        assert mwis_td(g, bumped, td).value >= base


def test_dp_agrees_with_bruteforce_on_random_graphs():
    for seed in range(120):
        g = random_graph(11, 0.3, 500 + seed)
        weights = [Fraction((3 * seed + v) % 9, 3) for v in range(11)]
        td = elimination_td(g)
        assert mwis_td(g, weights, td).value == mwis_bruteforce(g, weights).value


def test_dp_handles_rational_and_integer_weights():
    g = cycle(6)
    td, _ = wheelfree_td(g)
    ints = mwis_td(g, [2, 1, 2, 1, 2, 1], td)
    fracs = mwis_td(g, [Fraction(4, 2), 1, 2, 1, 2, 1], td)
    assert ints.value == fracs.value == 6
