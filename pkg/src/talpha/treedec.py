"""Tree decompositions: validation, statistics, file format, exact
tree-independence for tiny graphs, construction for wheel-free inputs,
the recursive builder driven by a balanced-separator oracle, and the
end-to-end pipeline.

A decomposition is a tree over bag indices; bags hold host-graph vertex
ids. Every constructor here returns decompositions that pass validate_td;
the recursion additionally certifies a per-bag clique-cover budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Optional

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .cover import (
    CHI_GUARD,
    alpha,
    clique_cover_c4free,
    clique_cover_number,
    greedy_clique_cover,
    stable_set_of_size,
)
from .cutsets import AtomNode, AtomTree, atom_decomposition, us_classify
from .errors import (
    CoverBudgetExceeded,
    GraphFormatError,
    MissingCutCliqueBag,
    NotInClass,
    OracleFailure,
    TalphaError,
    TooLarge,
)
from .graph import Graph, WeightFunction, components_masks
from .structures import UNKNOWN, find_wheel


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree of bags over a host graph with n vertices."""

    n: int
    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    def bag_masks(self) -> list[int]:
        return [mask_of(b) for b in self.bags]

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class TDValidation:
    valid: bool
    violations: tuple[tuple[str, object], ...]


def validate_td(G: Graph, td: TreeDecomposition, within=None) -> TDValidation:
    """Check the tree shape and the three decomposition axioms."""
    mask = G.full_mask if within is None else as_mask(within)
    violations: list[tuple[str, object]] = []
    k = len(td.bags)
    if len(td.edges) != max(k - 1, 0):
        violations.append(("tree: wrong edge count", len(td.edges)))
    seen = set()
    for a, b in td.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b or (a, b) in seen or (b, a) in seen:
            violations.append(("tree: bad edge", (a, b)))
        seen.add((a, b))
    if k and not violations:
        reach = {0}
        frontier = [0]
        nb = td.neighbors()
        while frontier:
            nxt = []
            for t in frontier:
                for u in nb[t]:
                    if u not in reach:
                        reach.add(u)
                        nxt.append(u)
            frontier = nxt
        if len(reach) != k:
            violations.append(("tree: not connected", k - len(reach)))
    masks = td.bag_masks()
    union = 0
    for m in masks:
        union |= m
    missing = mask & ~union
    if missing:
        violations.append(("axiom i: vertex in no bag", bits_tuple(missing)))
    for u in bits(mask):
        for v in bits(G.adj[u] & mask):
            if v < u:
                continue
            if not any((m >> u) & 1 and (m >> v) & 1 for m in masks):
                violations.append(("axiom ii: edge in no bag", (u, v)))
    if not any(v[0].startswith("tree") for v in violations):
        nb = td.neighbors()
        for v in bits(mask & union):
            nodes = [t for t, m in enumerate(masks) if (m >> v) & 1]
            if not nodes:
                continue
            reach = {nodes[0]}
            frontier = [nodes[0]]
            node_set = set(nodes)
            while frontier:
                nxt = []
                for t in frontier:
                    for u in nb[t]:
                        if u in node_set and u not in reach:
                            reach.add(u)
                            nxt.append(u)
                frontier = nxt
            if len(reach) != len(nodes):
                violations.append(("axiom iii: occupancy not connected", v))
    return TDValidation(not violations, tuple(violations))


@dataclass(frozen=True)
class TDStats:
    width: int
    independence: int
    cover: int
    cover_exact: bool
    per_bag: tuple[tuple[int, int, int], ...]  # (size, alpha, cover) per bag


def td_stats(G: Graph, td: TreeDecomposition, *,
             cover_guard: int = CHI_GUARD) -> TDStats:
    """Width, maximum bag independence and maximum bag clique cover.

    Bag covers are exact up to the guard size; larger bags contribute a
    greedy upper bound and the result is flagged inexact.
    """
    per_bag = []
    exact = True
    for b in td.bags:
        m = mask_of(b)
        a = alpha(G, m)
        if len(b) <= cover_guard:
            c = clique_cover_number(G, m)
        else:
            c = len(greedy_clique_cover(G, within=m))
            exact = False
        per_bag.append((len(b), a, c))
    width = max((s for s, _, _ in per_bag), default=0) - 1
    independence = max((a for _, a, _ in per_bag), default=0)
    cover = max((c for _, _, c in per_bag), default=0)
    return TDStats(width, independence, cover, exact, tuple(per_bag))


# -- PACE-style file format ----------------------------------------------------


def write_td(td: TreeDecomposition, path) -> None:
    lines = [f"s td {len(td.bags)} {max((len(b) for b in td.bags), default=0)} {td.n}"]
    for i, b in enumerate(td.bags, 1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in sorted(b)]))
    for a, b in td.edges:
        lines.append(f"{a + 1} {b + 1}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_td(path) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "s":
                if header is not None or len(parts) != 5 or parts[1] != "td":
                    raise GraphFormatError(f"line {lineno}: bad solution line")
                header = (int(parts[2]), int(parts[3]), int(parts[4]))
            elif parts[0] == "b":
                if header is None:
                    raise GraphFormatError(f"line {lineno}: bag before header")
                idx = int(parts[1])
                bags[idx] = frozenset(int(x) - 1 for x in parts[2:])
            else:
                if len(parts) != 2:
                    raise GraphFormatError(f"line {lineno}: bad tree edge")
                edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise GraphFormatError("missing `s td` header")
    count, _, n = header
    if set(bags) != set(range(1, count + 1)):
        raise GraphFormatError("bag ids must be 1..count")
    ordered = tuple(bags[i] for i in range(1, count + 1))
    return TreeDecomposition(n, ordered, tuple(edges))


# -- general-purpose construction ---------------------------------------------


def elimination_td(G: Graph, order=None, within=None) -> TreeDecomposition:
    """Tree decomposition from a vertex elimination order (min-degree default).

    Valid for every graph; width depends on the order quality. Used as a
    decomposition source for graphs outside the structured pipeline.
    """
    mask = G.full_mask if within is None else as_mask(within)
    verts = bits_tuple(mask)
    if not verts:
        return TreeDecomposition(G.n, (frozenset(),), ())
    fill = {v: G.adj[v] & mask for v in verts}
    if order is None:
        order = []
        live = set(verts)
        while live:
            v = min(live, key=lambda u: (fill[u].bit_count(), u))
            order.append(v)
            live.remove(v)
            nb = fill[v]
            for u in bits(nb):
                if u in live:
                    fill[u] = (fill[u] | nb) & ~bit(u) & ~bit(v)
        fill = {v: G.adj[v] & mask for v in verts}
    order = list(order)
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    for i, v in enumerate(order):
        later = fill[v] & mask_of(order[i + 1:])
        bags.append(bit(v) | later)
        for u in bits(later):
            fill[u] |= later & ~bit(u)
    edges = []
    roots = []
    for i, v in enumerate(order):
        later = bags[i] & ~bit(v)
        if later:
            parent = min(bits(later), key=lambda u: pos[u])
            edges.append((i, pos[parent]))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(G.n, tuple(to_set(b) for b in bags), tuple(edges))


def ta_exact_small(G: Graph, within=None, guard: int = 10) -> int:
    """Exact tree-independence number by subset dynamic programming.

    Minimizes, over elimination orders, the maximum independence number of
    the elimination bags; equivalent to optimizing over the clique trees
    of all minimal chordal completions.
    """
    mask = G.full_mask if within is None else as_mask(within)
    verts = bits_tuple(mask)
    n = len(verts)
    if n > guard:
        raise TooLarge(f"exact tree-independence guard {guard} exceeded (n={n})")
    if n == 0:
        return 0
    index = {v: i for i, v in enumerate(verts)}

    def bag_alpha(done: int, v: int) -> int:
        # vertices outside `done` reachable from v through done vertices
        reach_mask = bit(v)
        frontier = bit(v)
        bag = bit(v)
        donemask = done
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= G.adj[u] & mask
            nxt &= ~reach_mask
            bag |= nxt & ~donemask
            frontier = nxt & donemask
            reach_mask |= nxt
        return alpha(G, bag)

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def f(smask: int) -> int:
        if smask == 0:
            return 0
        best = None
        for i in range(n):
            if not (smask >> i) & 1:
                continue
            rest = smask & ~(1 << i)
            donemask = 0
            for j in bits(rest):
                donemask |= bit(verts[j])
            cost = max(f(rest), bag_alpha(donemask, verts[i]))
            if best is None or cost < best:
                best = cost
        return best

    return f((1 << n) - 1)


# -- wheel-free construction ----------------------------------------------------


def _hole_order(G: Graph, mask: int) -> tuple[int, ...]:
    start = lowest_bit(mask)
    nbrs = bits_tuple(G.adj[start] & mask)
    order = [start, nbrs[0]]
    used = bit(start) | bit(nbrs[0])
    while len(order) < mask.bit_count():
        nxt = G.adj[order[-1]] & mask & ~used
        v = lowest_bit(nxt)
        order.append(v)
        used |= bit(v)
    return tuple(order)


def _atom_td(G: Graph, amask: int) -> tuple[TreeDecomposition, list[tuple[frozenset[int], ...]]]:
    """Single-atom decomposition: one bag for a complete atom, a path of
    three-vertex bags for a hole; per-bag clique covers alongside."""
    outcome = us_classify(G, amask, check=False)
    if outcome.kind == "complete":
        bag = to_set(amask)
        cover = (bag,) if bag else ()
        return TreeDecomposition(G.n, (bag,), ()), [cover]
    if outcome.kind == "hole":
        cyc = _hole_order(G, amask)
        v1 = cyc[0]
        bags = []
        covers = []
        for i in range(1, len(cyc) - 1):
            bags.append(frozenset((v1, cyc[i], cyc[i + 1])))
            covers.append((frozenset((v1,)), frozenset((cyc[i], cyc[i + 1]))))
        edges = tuple((i, i + 1) for i in range(len(bags) - 1))
        return TreeDecomposition(G.n, tuple(bags), edges), covers
    raise NotInClass(None, "atom is neither complete nor a hole")


def compose_td_over_atoms(G: Graph, tree: AtomTree, td_for_atom,
                          repair_log: Optional[list] = None
                          ) -> TreeDecomposition:
    """Join per-atom decompositions along the atom tree's cut cliques.

    `td_for_atom` maps an AtomNode (or its frozen atom set) to that atom's
    decomposition. Each link joins a bag containing the cut clique on both
    sides; a missing bag is repaired by adding one (and logged) when a
    repair log is supplied, otherwise it is an error.
    """
    if callable(td_for_atom):
        lookup = td_for_atom
    else:
        mapping: Mapping = td_for_atom
        lookup = lambda node: mapping[node.atom]

    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def bag_with(td_offset: int, td: TreeDecomposition, clique: frozenset[int]) -> int:
        for i, b in enumerate(td.bags):
            if clique <= b:
                return td_offset + i
        if repair_log is None:
            raise MissingCutCliqueBag(f"no bag contains {sorted(clique)}")
        repair_log.append(sorted(clique))
        anchor = max(range(len(td.bags)), key=lambda i: len(td.bags[i] & clique))
        bags.append(td.bags[anchor] | clique)
        edges.append((td_offset + anchor, len(bags) - 1))
        return len(bags) - 1

    def visit(node: AtomNode) -> int:
        td = lookup(node)
        offset = len(bags)
        bags.extend(td.bags)
        edges.extend((offset + a, offset + b) for a, b in td.edges)
        for child in node.children:
            child_offset_anchor = visit(child)
            here = bag_with(offset, td, child.cut_clique)
            edges.append((here, child_offset_anchor))
        return bag_with(offset, td, node.cut_clique) if node.cut_clique else offset

    visit(tree.root)
    return TreeDecomposition(G.n, tuple(bags), tuple(edges))


def wheelfree_td(G: Graph, within=None, *, check: bool = True
                 ) -> tuple[TreeDecomposition, dict[int, tuple[frozenset[int], ...]]]:
    """Decomposition of a (three-path-configuration, wheel)-free graph with
    every bag covered by at most two cliques; returns per-node covers."""
    mask = G.full_mask if within is None else as_mask(within)
    if check:
        from .cutsets import _assert_3pc_wheel_free

        _assert_3pc_wheel_free(G, mask)
    if mask == 0:
        return TreeDecomposition(G.n, (frozenset(),), ()), {0: ()}
    tree = atom_decomposition(G, mask)
    atom_tds: dict[int, tuple] = {}
    covers_by_atom: dict[frozenset, list] = {}
    tds_by_atom: dict[frozenset, TreeDecomposition] = {}
    for node in tree.nodes():
        td, covers = _atom_td(G, mask_of(node.atom))
        tds_by_atom[node.atom] = td
        covers_by_atom[node.atom] = covers
    node_covers: dict[int, tuple[frozenset[int], ...]] = {}
    bags: list[frozenset[int]] = []

    def collect(node: AtomNode) -> TreeDecomposition:
        return tds_by_atom[node.atom]

    td = compose_td_over_atoms(G, tree, collect)
    # rebuild cover table in composed node order (same traversal order)
    idx = 0

    def walk(node: AtomNode) -> None:
        nonlocal idx
        for cov in covers_by_atom[node.atom]:
            node_covers[idx] = cov
            idx += 1
        for child in node.children:
            walk(child)

    walk(tree.root)
    return td, node_covers


# -- the balanced-separator recursion ------------------------------------------


def g_of_k(k: int) -> int:
    return comb(4 * k + 1, 2) + k


def build_td(G: Graph, oracle: Callable, k: int, within=None,
             transcript: Optional[list] = None) -> TreeDecomposition:
    """Recursive construction from a cover-bounded balanced-separator oracle.

    oracle(G, mask, weights) must return a verified separator whose clique
    cover has at most k parts for induced subgraphs of G. Every bag of the
    result has a certified clique cover of at most g(k) = C(4k+1, 2) + k
    parts. Requires a C4-free host graph.
    """
    mask = G.full_mask if within is None else as_mask(within)
    budget = comb(4 * k + 1, 2)
    quarter = 4 * k
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def add_bag(bmask: int) -> int:
        bags.append(to_set(bmask))
        return len(bags) - 1

    def rec(gmask: int, wcover: list[int], depth: int) -> int:
        if depth > mask.bit_count() + 1:
            raise OracleFailure("recursion failed to shrink")
        wmask = 0
        for q in wcover:
            wmask |= q
        if alpha(G, gmask) <= quarter:
            cover = clique_cover_c4free(G, gmask)
            if transcript is not None:
                transcript.append(("base-bag-cover", True,
                                   {"size": cover.size, "budget": g_of_k(k)}))
            return add_bag(gmask)
        # pad the anchored set until its independence number reaches 4k
        if alpha(G, wmask) < quarter:
            for v in bits(gmask & ~wmask):
                wmask |= bit(v)
                if alpha(G, wmask) >= quarter:
                    break
            wcover = [mask_of(q) for q in clique_cover_c4free(G, wmask).cliques]
            if len(wcover) > budget:
                raise CoverBudgetExceeded(
                    f"padded cover {len(wcover)} exceeds {budget}")
        wprime = stable_set_of_size(G, quarter, within=wmask)
        share = Fraction(1, quarter)
        weights = WeightFunction({v: share for v in bits(wprime)})
        sep = oracle(G, gmask, weights)
        xmask = mask_of(sep.vertices)
        xcover = [mask_of(q) for q in sep.cover]
        if xmask & ~gmask:
            raise OracleFailure("separator leaves the subgraph")
        for comp in components_masks(G, gmask & ~xmask):
            if weights.weight(comp) > Fraction(1, 2):
                raise OracleFailure("oracle separator is not balanced")
        if len(xcover) > k:
            raise OracleFailure(
                f"oracle cover {len(xcover)} exceeds the promised {k}")
        children = []
        for comp in components_masks(G, gmask & ~xmask):
            if (comp | xmask) == gmask:
                raise OracleFailure("recursion failed to shrink")
            ycover = [q & comp for q in wcover if q & comp]
            child_cover = ycover + [q for q in xcover if q]
            if len(child_cover) > budget:
                raise CoverBudgetExceeded(
                    f"child cover {len(child_cover)} exceeds {budget}")
            children.append(rec(comp | xmask, child_cover, depth + 1))
        join = add_bag(wmask | xmask)
        if transcript is not None:
            transcript.append(("join-bag-cover", True,
                               {"size": len(wcover) + len(xcover),
                                "budget": g_of_k(k)}))
        for ch in children:
            edges.append((join, ch))
        return join

    if mask == 0:
        return TreeDecomposition(G.n, (frozenset(),), ())
    roots = [rec(comp, [], 0) for comp in components_masks(G, mask)]
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(G.n, tuple(bags), tuple(edges))


# -- the full pipeline -----------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult:
    td: TreeDecomposition
    stats: TDStats
    atoms: tuple[tuple[frozenset[int], str], ...]  # (atom, route)
    transcript: tuple[tuple[str, bool, object], ...]
    validation: TDValidation

    def to_json(self) -> dict:
        return {
            "width": self.stats.width,
            "independence": self.stats.independence,
            "cover": self.stats.cover,
            "cover_exact": self.stats.cover_exact,
            "atoms": [[sorted(a), route] for a, route in self.atoms],
            "assertions": [[name, ok] for name, ok, _ in self.transcript],
            "valid": self.validation.valid,
        }


def ta_pipeline(G: Graph, within=None, oracle: Callable | None = None,
                k_ladder: tuple[int, ...] = (2, 9)) -> PipelineResult:
    """Atom decomposition, per-atom construction, composition, validation.

    Wheel-free atoms take the direct complete-or-hole route (bag covers at
    most 2); atoms containing wheels run the separator recursion with the
    weighted oracle, retrying up the cover ladder on failure.
    """
    from .balsep import weighted_separator_oracle

    mask = G.full_mask if within is None else as_mask(within)
    transcript: list[tuple[str, bool, object]] = []
    if oracle is None:
        def oracle(H, hmask, weights):  # noqa: ANN001 - callable contract
            return weighted_separator_oracle(H, weights, within=hmask,
                                             transcript=transcript)

    tree = atom_decomposition(G, mask)
    routes: list[tuple[frozenset[int], str]] = []
    tds: dict[frozenset, TreeDecomposition] = {}
    for node in tree.nodes():
        amask = mask_of(node.atom)
        wheel = find_wheel(G, "any", within=amask)
        if wheel is UNKNOWN:
            raise TooLarge("wheel search exhausted its budget")
        if wheel is None:
            td, _ = wheelfree_td(G, amask, check=True)
            tds[node.atom] = td
            routes.append((node.atom, "wheelfree"))
        else:
            last_error: Exception | None = None
            for k in k_ladder:
                try:
                    td = build_td(G, oracle, k, within=amask,
                                  transcript=transcript)
                    tds[node.atom] = td
                    routes.append((node.atom, f"recursion(k={k})"))
                    last_error = None
                    break
                except (OracleFailure, CoverBudgetExceeded) as exc:
                    last_error = exc
            if last_error is not None:
                raise last_error
    td = compose_td_over_atoms(G, tree, lambda node: tds[node.atom])
    validation = validate_td(G, td, mask)
    stats = td_stats(G, td)
    transcript.append(("decomposition-valid", validation.valid,
                       validation.violations))
    return PipelineResult(td, stats, tuple(routes), tuple(transcript), validation)
