"""Immutable simple graphs, exact weight functions, separations and file I/O.

Vertices are dense integers 0..n-1. Adjacency is stored as one bitmask per
vertex, so neighborhood and set algebra are single integer operations.
Everything here is pure and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .errors import (
    AmbiguousExtension,
    DiamondPresent,
    GraphFormatError,
    NotAClique,
    TalphaError,
)


class Graph:
    """A finite simple graph with stable integer vertex ids.

    Immutable after construction. ``adj[v]`` is the neighbor bitmask of
    vertex ``v``; ``full_mask`` has every vertex bit set.
    """

    __slots__ = ("n", "adj", "labels", "full_mask", "_cache")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise TalphaError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TalphaError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise TalphaError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise TalphaError("labels length must equal vertex count")
        self.full_mask = (1 << n) - 1
        self._cache: dict = {}

    # -- basic queries ----------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1)
            for off in bits(higher):
                out.append((v, v + 1 + off))
        return out

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        return bits_tuple(self.adj[v])

    def closed(self, v: int) -> int:
        """Closed neighborhood N[v] as a mask."""
        return self.adj[v] | (1 << v)

    def is_clique(self, vertices) -> bool:
        m = as_mask(vertices)
        for v in bits(m):
            if m & ~self.closed(v):
                return False
        return True

    def is_stable(self, vertices) -> bool:
        m = as_mask(vertices)
        for v in bits(m):
            if m & self.adj[v]:
                return False
        return True

    def neighbors_of_set(self, vertices, within: int | None = None) -> int:
        """Open neighborhood N(S) as a mask, optionally restricted."""
        m = as_mask(vertices)
        nb = 0
        for v in bits(m):
            nb |= self.adj[v]
        nb &= ~m
        if within is not None:
            nb &= within
        return nb

    def subgraph(self, vertices) -> tuple["Graph", tuple[int, ...]]:
        """Materialize the induced subgraph; returns it with the old ids."""
        old = bits_tuple(as_mask(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = []
        for i, v in enumerate(old):
            for u in bits(self.adj[v]):
                if u > v and u in index:
                    edges.append((i, index[u]))
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[v] for v in old)
        return Graph(len(old), edges, labels), old

    def complement(self) -> "Graph":
        edges = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                 if not self.has_edge(u, v)]
        return Graph(self.n, edges, self.labels)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- components ----------------------------------------------------------


def components_masks(G: Graph, mask: int) -> list[int]:
    """Connected components of G[mask] as masks, ordered by smallest vertex."""
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def components(G: Graph, S) -> list[frozenset[int]]:
    """Partition S into maximal connected subsets of G[S].

    Deterministic order: by smallest vertex id.
    """
    return [to_set(c) for c in components_masks(G, as_mask(S))]


def is_connected(G: Graph, mask: int | None = None) -> bool:
    m = G.full_mask if mask is None else mask
    if m == 0:
        return True
    return len(components_masks(G, m)) == 1


# -- neighborhood structure in diamond-free graphs ------------------------


def neighborhood_clique_partition(G: Graph, v: int,
                                  within: int | None = None) -> list[frozenset[int]]:
    """Partition N(v) into pairwise anticomplete cliques.

    The partition exists iff every component of G[N(v)] is a clique, in
    which case it is unique. When a component is not a clique, a diamond
    through v exists and is raised as DiamondPresent.
    """
    nb = G.adj[v]
    if within is not None:
        nb &= within
    parts = []
    for comp in components_masks(G, nb):
        if not G.is_clique(comp):
            # a connected non-clique holds a nonadjacent pair at distance 2
            for x in bits(comp):
                for z in bits(comp & ~G.closed(x)):
                    mids = G.adj[x] & G.adj[z] & comp
                    if mids:
                        y = lowest_bit(mids)
                        from .structures import Witness  # local: avoid cycle
                        w = Witness.diamond(G, y, v, x, z)
                        raise DiamondPresent(w)
            raise DiamondPresent(None, "non-clique neighborhood component")
        parts.append(to_set(comp))
    return parts


def maximal_clique_extension(G: Graph, K) -> frozenset[int]:
    """Extend a clique to the maximal clique containing it.

    Singletons are returned unchanged. For |K| >= 2 the extension is unique
    in diamond-free graphs; two incomparable extensions raise
    AmbiguousExtension.
    """
    km = as_mask(K)
    if not G.is_clique(km):
        raise NotAClique(f"{sorted(bits(km))} is not a clique")
    if km.bit_count() <= 1:
        return to_set(km)
    common = G.full_mask
    for v in bits(km):
        common &= G.adj[v]
    common &= ~km
    if not G.is_clique(common):
        for x in bits(common):
            bad = common & ~G.closed(x) & ~(1 << x)
            if bad:
                z = lowest_bit(bad)
                raise AmbiguousExtension((sorted(bits(km)), x, z))
    return to_set(km | common)


# -- weight functions ------------------------------------------------------


class WeightFunction:
    """Exact rational vertex weights with total exactly 1.

    The domain may be a subset of V(G) (inherited weights live on central
    bags). Comparisons against 1/2 are exact; no floating point.
    """

    __slots__ = ("domain", "_w")

    def __init__(self, weights: Mapping[int, Fraction | int]):
        w = {}
        total = Fraction(0)
        for v, x in weights.items():
            f = Fraction(x)
            if f < 0:
                raise TalphaError(f"negative weight at vertex {v}")
            w[v] = f
            total += f
        if total != 1:
            raise TalphaError(f"weights total {total}, expected exactly 1")
        self._w = w
        self.domain = mask_of(w)

    @classmethod
    def uniform(cls, vertices) -> "WeightFunction":
        vs = bits_tuple(as_mask(vertices))
        if not vs:
            raise TalphaError("cannot build a weight function on an empty set")
        share = Fraction(1, len(vs))
        return cls({v: share for v in vs})

    @classmethod
    def indicator(cls, support) -> "WeightFunction":
        vs = bits_tuple(as_mask(support))
        if not vs:
            raise TalphaError("empty support")
        share = Fraction(1, len(vs))
        return cls({v: share for v in vs})

    def __getitem__(self, v: int) -> Fraction:
        return self._w.get(v, Fraction(0))

    def weight(self, vertices) -> Fraction:
        m = as_mask(vertices)
        return sum((self._w[v] for v in bits(m & self.domain)), Fraction(0))

    def items(self):
        return sorted(self._w.items())

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._w)

    def __repr__(self):
        return f"WeightFunction({dict(self.items())})"


# -- separations -----------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """A triple (A, C, B) with A anticomplete to B covering V(G)."""

    A: frozenset[int]
    C: frozenset[int]
    B: frozenset[int]

    @classmethod
    def from_masks(cls, a: int, c: int, b: int) -> "Separation":
        return cls(to_set(a), to_set(c), to_set(b))

    def masks(self) -> tuple[int, int, int]:
        return mask_of(self.A), mask_of(self.C), mask_of(self.B)


@dataclass(frozen=True)
class SeparationReport:
    valid: bool
    violations: tuple[tuple[str, tuple], ...]


def is_separation(G: Graph, s: Separation) -> SeparationReport:
    """Check disjointness, coverage and A-B anticompleteness with witnesses."""
    a, c, b = s.masks()
    violations = []
    for name1, m1, name2, m2 in (("A", a, "C", c), ("A", a, "B", b), ("C", c, "B", b)):
        inter = m1 & m2
        if inter:
            violations.append((f"{name1} and {name2} intersect", bits_tuple(inter)))
    missing = G.full_mask & ~(a | c | b)
    if missing:
        violations.append(("union does not cover V(G)", bits_tuple(missing)))
    extra = (a | c | b) & ~G.full_mask
    if extra:
        violations.append(("sets contain non-vertices", bits_tuple(extra)))
    for u in bits(a):
        hit = G.adj[u] & b
        if hit:
            violations.append(("edge between A and B", (u, lowest_bit(hit))))
            break
    return SeparationReport(not violations, tuple(violations))


# -- file formats ----------------------------------------------------------

_HEADER_RE = re.compile(r"^p\s+(edge|tw)\s+(\d+)\s+(\d+)\s*$")


def write_graph(G: Graph, path) -> None:
    lines = [f"p edge {G.n} {G.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_graph(path) -> Graph:
    """Read DIMACS-like edge format: `p edge n m` then `e u v`, 1-indexed."""
    n = None
    declared_m = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                m = _HEADER_RE.match(line)
                if not m or n is not None:
                    raise GraphFormatError(f"line {lineno}: bad or repeated header")
                n, declared_m = int(m.group(2)), int(m.group(3))
            elif line.startswith("e"):
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before header")
                parts = line.split()
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: bad edge line")
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"line {lineno}: vertex out of range")
                edges.append((u, v))
            else:
                raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise GraphFormatError("missing `p edge` header")
    G = Graph(n, edges)
    if declared_m is not None and G.m != declared_m:
        raise GraphFormatError(f"header declares {declared_m} edges, file has {G.m}")
    return G


def write_weights(weights: Mapping[int, Fraction], path, n: int | None = None) -> None:
    lines = []
    for v in sorted(weights):
        f = Fraction(weights[v])
        lines.append(f"w {v + 1} {f.numerator} {f.denominator}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_weights(path, n: int) -> dict[int, Fraction]:
    """Read `w <v> <num> <den>` lines (1-indexed vertices).

    Vertices without a line default to 0 only when an explicit `default 0`
    line is present; otherwise the file is rejected as incomplete.
    """
    weights: dict[int, Fraction] = {}
    default_zero = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "default":
                if len(parts) != 2 or parts[1] != "0":
                    raise GraphFormatError(f"line {lineno}: only `default 0` is supported")
                default_zero = True
            elif parts[0] == "w":
                if len(parts) != 4:
                    raise GraphFormatError(f"line {lineno}: bad weight line")
                v = int(parts[1]) - 1
                if not 0 <= v < n:
                    raise GraphFormatError(f"line {lineno}: vertex out of range")
                if v in weights:
                    raise GraphFormatError(f"line {lineno}: duplicate weight for {v + 1}")
                weights[v] = Fraction(int(parts[2]), int(parts[3]))
            else:
                raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    missing = [v for v in range(n) if v not in weights]
    if missing and not default_zero:
        raise GraphFormatError(
            f"no weight for vertices {[v + 1 for v in missing]} and no `default 0` line")
    for v in missing:
        weights[v] = Fraction(0)
    return weights
