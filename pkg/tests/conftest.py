"""Shared corpora, generated deterministically once per session."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import complete, cycle, path, random_graph, spoked_wheel  # noqa: E402

from talpha.cutsets import find_clique_cutset  # noqa: E402
from talpha.gen import compose_clique_sum, gen_random_class_c  # noqa: E402
from talpha.graph import Graph, components_masks  # noqa: E402
from talpha.structures import UNKNOWN, check_class, find_structure, find_wheel  # noqa: E402

WHEEL_FIXTURES = [
    (15, (0, 3, 6, 9, 12)),
    (16, (0, 3, 6, 9, 12)),
    (18, (0, 3, 7, 10, 14)),
    (20, (0, 3, 6, 9, 13)),
    (21, (0, 3, 6, 9, 12, 15, 18)),
    (25, (0, 5, 10, 15, 20)),
    (27, (0, 3, 6, 9, 12, 15, 18, 21, 24)),
]


def _verified_in_class(G: Graph, variant="C") -> bool:
    return check_class(G, variant).status == "in"


@pytest.fixture(scope="session")
def class_c_corpus():
    """At least 520 verified members of the class, sizes up to 28."""
    graphs: list[Graph] = []
    for n in range(5, 29):
        graphs.append(cycle(n))
    for n in range(1, 9):
        graphs.append(complete(n))
    for n in range(2, 11):
        graphs.append(path(n))
    for n, spokes in WHEEL_FIXTURES:
        g = spoked_wheel(n, spokes)
        assert _verified_in_class(g)
        graphs.append(g)
    # vertex sums of small members
    tri = complete(3)
    for base in (cycle(5), cycle(7), tri, complete(4), path(4)):
        for other in (cycle(5), tri, path(3)):
            summed, report = compose_clique_sum(base, other, (0,), (0,))
            if summed is not None:
                graphs.append(summed)
    seed = 0
    while len(graphs) < 480:
        seed += 1
        n = 5 + (seed % 13)
        density = [1.6, 2.2, 2.8][seed % 3] / n
        res = gen_random_class_c(n, density, seed, tries=60)
        if res is not None:
            graphs.append(res.graph)
    seed = 10 ** 6
    big = 0
    while big < 40:
        seed += 1
        n = 17 + (seed % 12)
        res = gen_random_class_c(n, 2.0 / n, seed, tries=40)
        if res is not None:
            graphs.append(res.graph)
            big += 1
    assert len(graphs) >= 520
    return graphs


@pytest.fixture(scope="session")
def cnc_corpus(class_c_corpus):
    """Class members with no clique cutset (connected)."""
    out = []
    for g in class_c_corpus:
        if g.n < 4 or len(components_masks(g, g.full_mask)) != 1:
            continue
        if find_clique_cutset(g) is None:
            out.append(g)
    assert len(out) >= 30
    return out


@pytest.fixture(scope="session")
def tpc_wheelfree_corpus(class_c_corpus):
    """At least 100 (three-path-configuration, wheel)-free instances."""
    out = []
    for g in class_c_corpus:
        if find_wheel(g, "any") is None:
            out.append(g)
        if len(out) >= 110:
            break
    extra = [cycle(4), cycle(6), complete(2)]
    for g in extra:
        if all(find_structure(g, kind) is None
               for kind in ("theta", "pyramid", "prism")):
            if find_wheel(g, "any") is None:
                out.append(g)
    assert len(out) >= 100
    return out


@pytest.fixture(scope="session")
def c4free_corpus():
    """At least 1000 C4-free graphs built by repairing random graphs."""
    out = []
    seed = 0
    while len(out) < 1000:
        seed += 1
        rng = random.Random(seed)
        n = rng.randint(4, 18)
        g = random_graph(n, rng.uniform(0.1, 0.45), seed)
        edges = set(g.edges())
        while True:
            w = find_structure(g, "c4")
            if w is None:
                break
            a, b, c, d = w.role("cycle")
            edges.discard(tuple(sorted((a, b))))
            g = Graph(n, sorted(edges))
        out.append(g)
    return out


@pytest.fixture(scope="session")
def mwis_corpus():
    """At least 1000 (graph, weights) instances with n <= 20."""
    out = []
    seed = 0
    while len(out) < 1000:
        seed += 1
        rng = random.Random(10_000 + seed)
        n = rng.randint(3, 20)
        g = random_graph(n, rng.uniform(0.08, 0.3), 20_000 + seed)
        weights = [Fraction(rng.randint(0, 24), rng.choice((1, 2, 3, 4)))
                   for _ in range(n)]
        out.append((g, weights))
    return out
