"""Instance generation: named families with re-verified defining
properties, seeded rejection sampling into the forbidden-structure class,
vertex/clique identification sums, and the independence-versus-cover gap
construction (doubled complement of a triangle-free graph of prescribed
chromatic number).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .bitset import bits, mask_of, to_set
from .cover import alpha, chromatic_number, omega
from .errors import BadParams, TalphaError
from .graph import Graph
from .structures import ClassReport, Witness, check_class, find_structure
from .treedec import TreeDecomposition, validate_td

FAMILIES = ("hole", "clique", "theta", "pyramid", "prism", "wheel", "ta_tc_gap")


def hole_graph(n: int) -> Graph:
    if n < 4:
        raise BadParams("holes need at least four vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def clique_graph(n: int) -> Graph:
    if n < 0:
        raise BadParams("negative size")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def _chain(edges: list, start: int, end: int, length: int, nxt: int) -> int:
    """Append a path of `length` edges from start to end using fresh ids."""
    prev = start
    for _ in range(length - 1):
        edges.append((prev, nxt))
        prev = nxt
        nxt += 1
    edges.append((prev, end))
    return nxt


def theta_graph(l1: int = 2, l2: int = 2, l3: int = 2) -> Graph:
    lengths = (l1, l2, l3)
    if any(l < 2 for l in lengths):
        raise BadParams("theta paths need length at least two")
    edges: list[tuple[int, int]] = []
    nxt = 2
    paths = []
    for l in lengths:
        first = nxt
        nxt = _chain(edges, 0, 1, l, nxt)
        paths.append((0,) + tuple(range(first, first + l - 1)) + (1,))
    G = Graph(nxt, edges)
    Witness.theta(G, 0, 1, paths)
    return G


def pyramid_graph(l1: int = 1, l2: int = 2, l3: int = 2) -> Graph:
    lengths = (l1, l2, l3)
    if any(l < 1 for l in lengths) or sum(1 for l in lengths if l >= 2) < 2:
        raise BadParams("pyramid needs two paths of length at least two")
    base = (1, 2, 3)
    edges = [(1, 2), (2, 3), (1, 3)]
    nxt = 4
    paths = []
    for l, b in zip(lengths, base):
        if l == 1:
            edges.append((0, b))
            paths.append((0, b))
        else:
            first = nxt
            nxt = _chain(edges, 0, b, l, nxt)
            paths.append((0,) + tuple(range(first, first + l - 1)) + (b,))
    G = Graph(nxt, edges)
    Witness.pyramid(G, 0, base, paths)
    return G


def prism_graph(l1: int = 1, l2: int = 1, l3: int = 1) -> Graph:
    lengths = (l1, l2, l3)
    if any(l < 1 for l in lengths):
        raise BadParams("prism paths need length at least one")
    t1 = (0, 1, 2)
    t2 = (3, 4, 5)
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    nxt = 6
    paths = []
    for l, a, b in zip(lengths, t1, t2):
        if l == 1:
            edges.append((a, b))
            paths.append((a, b))
        else:
            first = nxt
            nxt = _chain(edges, a, b, l, nxt)
            paths.append((a,) + tuple(range(first, first + l - 1)) + (b,))
    G = Graph(nxt, edges)
    Witness.prism(G, t1, t2, paths)
    return G


def wheel_graph(n: int, spokes) -> Graph:
    """Hole of length n plus a hub adjacent to the given hole positions."""
    spokes = tuple(sorted(set(spokes)))
    if n < 4 or len(spokes) < 3 or any(not 0 <= s < n for s in spokes):
        raise BadParams("wheel needs a hole and at least three spokes on it")
    edges = [(i, (i + 1) % n) for i in range(n)] + [(n, s) for s in spokes]
    G = Graph(n + 1, edges)
    Witness.wheel(G, tuple(range(n)), n)
    return G


def mycielski(G: Graph) -> Graph:
    """The triangle-free-preserving chromatic-number increment."""
    n = G.n
    edges = list(G.edges())
    for u, v in G.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph(2 * n + 1, edges)


@dataclass(frozen=True)
class GapCertificate:
    """Doubled complement of a triangle-free graph: independence stays at
    two while one half needs chi cliques to cover."""

    graph: Graph
    half: frozenset[int]
    half_cover_number: int
    td: TreeDecomposition
    bag_independence: int

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "half": sorted(self.half),
            "half_cover_number": self.half_cover_number,
            "bag_independence": self.bag_independence,
        }


def ta_tc_gap(C: int) -> GapCertificate:
    """Graph with a one-bag decomposition of independence two whose halves
    have clique cover number exactly C."""
    if C < 2:
        raise BadParams("gap construction needs a target of at least two")
    base = clique_graph(2)
    for _ in range(C - 2):
        base = mycielski(base)
    if omega(base) > 2:
        raise TalphaError("source graph is not triangle-free")  # unreachable
    chi = chromatic_number(base)
    if chi != C:
        raise TalphaError(f"source chromatic number {chi} != {C}")  # unreachable
    comp = base.complement()
    n = comp.n
    edges = list(comp.edges())
    edges += [(u + n, v + n) for u, v in comp.edges()]
    edges += [(u, v + n) for u in range(n) for v in range(n)]
    doubled = Graph(2 * n, edges)
    a = alpha(doubled)
    if a > 2:
        raise TalphaError("doubled graph has independence above two")  # unreachable
    td = TreeDecomposition(doubled.n, (frozenset(range(2 * n)),), ())
    if not validate_td(doubled, td).valid:
        raise TalphaError("trivial decomposition invalid")  # unreachable
    return GapCertificate(doubled, frozenset(range(n)), chi, td, a)


def gen_family(name: str, *params) -> Graph:
    """Construct a named family member; the defining property re-verifies."""
    if name == "hole":
        return hole_graph(*params)
    if name == "clique":
        return clique_graph(*params)
    if name == "theta":
        return theta_graph(*params)
    if name == "pyramid":
        return pyramid_graph(*params)
    if name == "prism":
        return prism_graph(*params)
    if name == "wheel":
        return wheel_graph(*params)
    if name == "ta_tc_gap":
        return ta_tc_gap(*params).graph
    raise BadParams(f"unknown family {name!r}; choose from {FAMILIES}")


@dataclass(frozen=True)
class GenResult:
    graph: Graph
    certificate: ClassReport
    seed: int
    attempts: int


def gen_random_class_c(n: int, edge_density: float, seed: int,
                       tries: int = 200, variant: str = "C") -> Optional[GenResult]:
    """Seeded rejection sampling; accepts only verified class members.

    Deterministic in (n, edge_density, seed). Returns None when the retry
    budget runs out without an accepted graph.
    """
    if n < 0 or not 0 <= edge_density <= 1:
        raise BadParams("need n >= 0 and density in [0, 1]")
    rng = random.Random(seed)
    for attempt in range(1, tries + 1):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < edge_density]
        G = Graph(n, edges)
        quick = check_class(G, variant, stop_at_first=True)
        if quick.status != "in":
            continue
        certificate = check_class(G, variant)
        if certificate.status == "in":
            return GenResult(G, certificate, seed, attempt)
    return None


def compose_clique_sum(G1: Graph, G2: Graph, k1, k2,
                       variant: str = "C") -> tuple[Optional[Graph], ClassReport]:
    """Identify clique k1 of G1 with clique k2 of G2 (positionally).

    The composed graph is returned only when it still passes the class
    check; otherwise None with the report carrying the created witness.
    """
    k1 = tuple(k1)
    k2 = tuple(k2)
    if len(k1) != len(k2):
        raise BadParams("cliques must have equal size")
    if not G1.is_clique(mask_of(k1)) or not G2.is_clique(mask_of(k2)):
        raise BadParams("identification sets must be cliques")
    if len(set(k1)) != len(k1) or len(set(k2)) != len(k2):
        raise BadParams("identification sets must not repeat vertices")
    remap = {}
    for a, b in zip(k2, k1):
        remap[a] = b
    fresh = G1.n
    for v in range(G2.n):
        if v not in remap:
            remap[v] = fresh
            fresh += 1
    edges = list(G1.edges())
    edges += [(remap[u], remap[v]) for u, v in G2.edges()]
    G = Graph(fresh, sorted(set(tuple(sorted(e)) for e in edges)))
    report = check_class(G, variant)
    if report.status == "in":
        return G, report
    return None, report
