"""Balanced-separator engines.

Routes: the wheel-free construction (atoms are complete graphs or holes,
so a centroid bag of the two-clique decomposition works), the central-bag
separator around a balanced hub, the extension of a central-bag separator
to the whole graph through an auxiliary bipartite graph, an exhaustive
minimum-cardinality search used as the inner solver and the fallback, and
the dispatching oracle.

Every separator returned anywhere re-verifies: the cover is a clique
partition of the separator and every leftover component weighs at most
the threshold, in exact rational arithmetic. Structural claims along the
extension route are asserted per run and reported, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .cover import clique_cover_number, exact_cover_parts, greedy_clique_cover
from .cutsets import minimal_separators
from .errors import (
    AssertionFailed,
    NotFound,
    NotInClass,
    NotSmooth,
    PropertyViolation,
    TalphaError,
    TooLarge,
    Unsolvable,
    VerificationFailed,
)
from .graph import (
    Graph,
    WeightFunction,
    components_masks,
    maximal_clique_extension,
    neighborhood_clique_partition,
)
from .hubdivision import HubDivision, hub_division
from .structures import enumerate_holes
from .treedec import TreeDecomposition, wheelfree_td

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BalancedSeparator:
    """A verified (w, c)-balanced separator with its clique cover."""

    vertices: frozenset[int]
    cover: tuple[frozenset[int], ...]
    threshold: Fraction
    component_weights: tuple[tuple[frozenset[int], Fraction], ...]
    route: str
    assertions: tuple[tuple[str, bool, object], ...] = ()

    @classmethod
    def build(cls, G: Graph, mask: int, w: WeightFunction, c: Fraction,
              xmask: int, cover_masks, route: str,
              assertions=()) -> "BalancedSeparator":
        if xmask & ~mask:
            raise VerificationFailed("separator leaves the graph")
        seen = 0
        parts = []
        for q in cover_masks:
            if q & seen:
                raise VerificationFailed("cover parts overlap")
            if not G.is_clique(q):
                raise VerificationFailed("cover part is not a clique")
            seen |= q
            if q:
                parts.append(to_set(q))
        if seen != xmask:
            raise VerificationFailed("cover does not partition the separator")
        transcript = []
        for comp in components_masks(G, mask & ~xmask):
            cw = w.weight(comp)
            if cw > c:
                raise VerificationFailed(
                    f"component {bits_tuple(comp)} weighs {cw} > {c}")
            transcript.append((to_set(comp), cw))
        return cls(to_set(xmask), tuple(parts), c, tuple(transcript), route,
                   tuple(assertions))

    @property
    def cover_size(self) -> int:
        return len(self.cover)

    def mask(self) -> int:
        return mask_of(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertices),
            "clique_cover": [sorted(q) for q in self.cover],
            "threshold": [self.threshold.numerator, self.threshold.denominator],
            "component_weights": [
                [sorted(comp), [f.numerator, f.denominator]]
                for comp, f in self.component_weights
            ],
            "route": self.route,
            "assertions": [[name, ok] for name, ok, _ in self.assertions],
        }


def _cover_for_bag(G: Graph, bmask: int, provided=None) -> list[int]:
    if provided is not None:
        return [mask_of(q) for q in provided]
    if bmask.bit_count() <= 16:
        need = clique_cover_number(G, within=bmask)
        return [mask_of(q) for q in exact_cover_parts(G, bmask, need)]
    return [mask_of(q) for q in greedy_clique_cover(G, within=bmask)]


def centroid_bag_separator(G: Graph, td: TreeDecomposition, w: WeightFunction,
                           c: Fraction = HALF, within=None,
                           covers=None) -> BalancedSeparator:
    """First bag (in node order) whose removal leaves only light components.

    Such a bag exists for every valid decomposition and threshold >= 1/2.
    `covers` may supply per-node clique covers (dict node -> cliques).
    """
    mask = G.full_mask if within is None else as_mask(within)
    for node, bag in enumerate(td.bags):
        bmask = mask_of(bag) & mask
        if all(w.weight(comp) <= c
               for comp in components_masks(G, mask & ~bmask)):
            provided = covers.get(node) if covers else None
            cover = _cover_for_bag(G, bmask, provided)
            return BalancedSeparator.build(G, mask, w, c, bmask, cover,
                                           "centroid")
    raise TalphaError("no bag balances; decomposition is invalid")


def balanced_separator_wheelfree(G: Graph, w: WeightFunction, within=None,
                                 *, check: bool = True) -> BalancedSeparator:
    """Balanced separator with a cover of at most two cliques for
    (three-path-configuration, wheel)-free graphs."""
    mask = G.full_mask if within is None else as_mask(within)
    td, covers = wheelfree_td(G, mask, check=check)
    sep = centroid_bag_separator(G, td, w, HALF, within=mask, covers=covers)
    if sep.cover_size > 2:
        raise AssertionFailed("wheelfree-cover-2", {"cover": sep.cover_size})
    return BalancedSeparator(sep.vertices, sep.cover, sep.threshold,
                             sep.component_weights, "wheelfree",
                             sep.assertions + (("wheelfree-cover-2", True, None),))


def exhaustive_balanced_separator(G: Graph, w: WeightFunction,
                                  c: Fraction = HALF, within=None,
                                  size_limit: int | None = None,
                                  guard: int = 24,
                                  seeds=()) -> Optional[BalancedSeparator]:
    """Minimum-cardinality balanced separator by iterative deepening.

    Seeds (vertex sets) are tried first. Subset search requires the vertex
    count within the guard unless a size limit bounds the combinations.
    """
    mask = G.full_mask if within is None else as_mask(within)
    verts = bits_tuple(mask)

    def balanced(xmask: int) -> bool:
        return all(w.weight(comp) <= c
                   for comp in components_masks(G, mask & ~xmask))

    def finish(xmask: int, route: str) -> BalancedSeparator:
        cover = _cover_for_bag(G, xmask)
        return BalancedSeparator.build(G, mask, w, c, xmask, cover, route)

    for seed in seeds:
        sm = as_mask(seed) & mask
        if balanced(sm):
            return finish(sm, "seeded")
    if len(verts) > guard and size_limit is None:
        raise TooLarge(f"subset search guard {guard} exceeded ({len(verts)})")
    top = len(verts) if size_limit is None else min(size_limit, len(verts))
    for size in range(top + 1):
        for sub in combinations(verts, size):
            xm = mask_of(sub)
            if balanced(xm):
                return finish(xm, "exhaustive")
    return None


def balanced_separator_central_bag(G: Graph, w: WeightFunction,
                                   hd: HubDivision,
                                   transcript: Optional[list] = None
                                   ) -> BalancedSeparator:
    """Balanced separator of the central bag under the inherited weights,
    with a clique cover of at most nine parts.

    When every hub is unbalanced the bag is wheel-free and the two-clique
    route applies. Otherwise the first balanced hub lies in the bag; its
    closed bag-neighborhood is the candidate, verified directly, with the
    exhaustive search as fallback. A cover above nine parts is reported as
    AssertionFailed, never silently accepted.
    """
    bag_mask = mask_of(hd.bag.bag)
    wm = hd.bag.weights

    def log(name, ok, detail=None):
        if transcript is not None:
            transcript.append((name, ok, detail))

    if hd.balanced_hub is None:
        try:
            sep = balanced_separator_wheelfree(G, wm, within=bag_mask)
        except NotInClass as exc:
            log("central-bag-wheelfree", False, str(exc))
            raise AssertionFailed("central-bag-wheelfree", str(exc)) from exc
        log("central-bag-cover-9", True, {"cover": sep.cover_size})
        return BalancedSeparator(sep.vertices, sep.cover, sep.threshold,
                                 sep.component_weights, "central_bag",
                                 sep.assertions)

    vm = hd.balanced_hub
    candidate = G.closed(vm) & bag_mask
    try:
        parts = neighborhood_clique_partition(G, vm, within=bag_mask)
    except Exception:
        parts = None
    sep = None
    if parts is not None:
        masks = [mask_of(p) for p in parts]
        if masks:
            masks[0] |= bit(vm)
        else:
            masks = [bit(vm)]
        if len(masks) <= 9:
            try:
                sep = BalancedSeparator.build(G, bag_mask, wm, HALF, candidate,
                                              masks, "central_bag")
            except VerificationFailed:
                sep = None
    if sep is None:
        log("central-bag-candidate", False, {"vertex": vm})
        fallback = exhaustive_balanced_separator(
            G, wm, HALF, within=bag_mask,
            seeds=((candidate,) if parts is not None else ()))
        if fallback is None:
            raise AssertionFailed("central-bag-separator-exists", {"vertex": vm})
        sep = BalancedSeparator(fallback.vertices, fallback.cover,
                                fallback.threshold, fallback.component_weights,
                                "central_bag", fallback.assertions)
    ok = sep.cover_size <= 9
    log("central-bag-cover-9", ok, {"cover": sep.cover_size})
    if not ok:
        raise AssertionFailed("central-bag-cover-9", {"cover": sep.cover_size})
    return sep


# -- the extension step --------------------------------------------------------


@dataclass(frozen=True)
class AuxBipartite:
    """Bipartite contact graph between outside components and bag components.

    a-nodes are components of the graph minus (bag | extended separator);
    b-nodes are components of the bag minus the extended separator. The
    core keeps the b-side plus a-nodes whose anchor joined the separator.
    """

    graph: Graph
    a_comps: tuple[int, ...]
    q_comps: tuple[int, ...]
    anchors: tuple[int, ...]
    core_mask: int
    node_weight: tuple[Fraction, ...]

    @property
    def a_count(self) -> int:
        return len(self.a_comps)

    def a_node(self, i: int) -> int:
        return i

    def b_node(self, j: int) -> int:
        return self.a_count + j


def _treewidth_small(H: Graph, mask: int, guard: int = 16) -> Optional[int]:
    verts = bits_tuple(mask)
    n = len(verts)
    if n > guard:
        return None
    if n == 0:
        return 0
    index = {v: i for i, v in enumerate(verts)}

    def bag_size(done: int, v: int) -> int:
        reach = bit(v)
        frontier = bit(v)
        bag = 0
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= H.adj[u] & mask
            nxt &= ~reach
            bag |= nxt & ~done
            frontier = nxt & done
            reach |= nxt
        return bag.bit_count()

    @lru_cache(maxsize=None)
    def f(smask: int) -> int:
        if smask == 0:
            return 0
        best = None
        for i in range(n):
            if not (smask >> i) & 1:
                continue
            rest = smask & ~(1 << i)
            done = 0
            for j in bits(rest):
                done |= bit(verts[j])
            cost = max(f(rest), bag_size(done, verts[i]))
            if best is None or cost < best:
                best = cost
        return best

    return f((1 << n) - 1)


def extend_separator(G: Graph, w: WeightFunction, hd: HubDivision,
                     X: BalancedSeparator, within=None,
                     transcript: Optional[list] = None) -> BalancedSeparator:
    """Extend a central-bag separator to the whole graph.

    Cover cliques grow to maximal cliques; the auxiliary bipartite graph
    between outside components and bag components is balanced-separated;
    the chosen bag components pull in the bag-neighborhoods of the anchors
    meeting them. Structural claims (long-hole-freeness of the core,
    degree bounds, the contact bound per bag component, the size of the
    lifted separator, and per-component weights) are asserted per run.
    """
    mask = G.full_mask if within is None else as_mask(within)
    bag_mask = mask_of(hd.bag.bag)
    assertions: list[tuple[str, bool, object]] = []

    def check(name, ok, detail=None):
        assertions.append((name, bool(ok), detail))
        if transcript is not None:
            transcript.append((name, bool(ok), detail))
        if not ok:
            raise AssertionFailed(name, detail)

    t = max(len(X.cover), 1)
    xt = 0
    xt_parts: list[int] = []
    for q in X.cover:
        qm = mask_of(q)
        if qm.bit_count() >= 2:
            ext = mask_of(maximal_clique_extension(G, qm))
        else:
            ext = qm
        xt_parts.append(ext & ~xt)
        xt |= ext
    xt_parts = [p for p in xt_parts if p]

    leftover = w.weight(mask & ~xt)
    if leftover == 0:
        return BalancedSeparator.build(G, mask, w, HALF, xt, xt_parts,
                                       "extension-trivial", assertions)

    outside = mask & ~bag_mask & ~xt
    a_comps = components_masks(G, outside)
    q_comps = components_masks(G, bag_mask & ~xt)
    anchors = []
    for d in a_comps:
        anchor = None
        for comp, v in hd.bag.anchors:
            if d & ~mask_of(comp) == 0:
                anchor = v
                break
        if anchor is None:
            raise AssertionFailed("outside-component-has-anchor",
                                  {"component": bits_tuple(d)})
        anchors.append(anchor)

    r, s = len(a_comps), len(q_comps)
    edges = []
    nbr_sets = [G.neighbors_of_set(d, within=mask) for d in a_comps]
    for i in range(r):
        for j in range(s):
            if nbr_sets[i] & q_comps[j]:
                edges.append((i, r + j))
    H = Graph(r + s, edges)
    core_mask = mask_of(range(r, r + s))
    for i in range(r):
        if (xt >> anchors[i]) & 1:
            core_mask |= bit(i)
    node_weight = tuple(w.weight(c) for c in a_comps + q_comps)
    aux = AuxBipartite(H, tuple(a_comps), tuple(q_comps), tuple(anchors),
                       core_mask, node_weight)

    gamma = 5 * t + 1
    holes = enumerate_holes(H, within=core_mask, min_length=gamma, limit=1)
    check("core-no-long-hole", not holes.holes and not holes.truncated,
          {"gamma": gamma})
    for i in range(r):
        deg = (H.adj[i]).bit_count()
        if (core_mask >> i) & 1:
            check(f"core-degree-5:a{i}", deg <= 5, {"degree": deg})
        else:
            check(f"outside-degree-1:a{i}", deg <= 1, {"degree": deg})
    prefix_in_sep = [v for v in hd.prefix() if (xt >> v) & 1 and (bag_mask >> v) & 1]
    for j in range(s):
        contact = sum(1 for v in prefix_in_sep if G.adj[v] & q_comps[j])
        check(f"bag-component-contacts-3t:b{j}", contact <= 3 * t,
              {"contacts": contact, "limit": 3 * t})

    total = sum(node_weight, Fraction(0))
    wh = WeightFunction({i: node_weight[i] / total for i in range(r + s)}
                        if total else {})
    z_sep = exhaustive_balanced_separator(H, wh, HALF, size_limit=r + s,
                                          guard=r + s)
    if z_sep is None:
        raise AssertionFailed("aux-separator-exists", None)
    zmask = z_sep.mask()
    amask_nodes = mask_of(range(r))
    z_a = zmask & amask_nodes
    z_b = zmask & ~amask_nodes
    zprime = z_b
    for i in bits(z_a):
        zprime |= H.adj[i]
    k_measured = _treewidth_small(H, core_mask)
    limit5 = 5 * (k_measured + 1) if k_measured is not None else 5 * max(
        zmask.bit_count(), 1)
    check("lifted-separator-small", zprime.bit_count() <= limit5,
          {"size": zprime.bit_count(), "limit": limit5,
           "core_treewidth": k_measured})

    heavy_leftovers = [
        (bits_tuple(comp), str(fw))
        for comp in components_masks(H, H.full_mask & ~zprime)
        if (fw := sum((node_weight[i] for i in bits(comp)), Fraction(0))) > HALF
    ]
    check("lifted-component-weight", not heavy_leftovers, heavy_leftovers)

    chosen_q = [j for j in range(s) if (zprime >> (r + j)) & 1]
    pulled = [v for v in sorted(hd.M)
              if (xt >> v) & 1
              and any(G.adj[v] & q_comps[j] for j in chosen_q)]
    check("pulled-anchors-bound", len(pulled) <= 3 * t * max(len(chosen_q), 1)
          if pulled else True,
          {"pulled": len(pulled), "limit": 3 * t * len(chosen_q)})
    y = xt
    y_parts = list(xt_parts)
    cover_lookup = dict(hd.prefix_covers)
    for v in pulled:
        nb = G.adj[v] & bag_mask
        for q in cover_lookup[v]:
            piece = mask_of(q) & nb & ~y
            if piece:
                y_parts.append(piece)
                y |= piece
        missing = nb & ~y
        if missing:
            for part in greedy_clique_cover(G, within=missing):
                y_parts.append(mask_of(part))
                y |= mask_of(part)

    check("extension-cover-count", len(y_parts) <= t + 5 * len(pulled),
          {"parts": len(y_parts),
           "paper_style_bound": t + 5 * (3 * t) * limit5})
    return BalancedSeparator.build(G, mask, w, HALF, y, y_parts, "extension",
                                   assertions)


# -- the top-level oracle --------------------------------------------------------


def weighted_separator_oracle(G: Graph, w: WeightFunction, within=None,
                              transcript: Optional[list] = None,
                              _depth: int = 0) -> BalancedSeparator:
    """Dispatching (w, 1/2)-balanced separator oracle.

    Order: a clique cutset that balances; a clique cutset with recursion
    into the heavy side (residual weight lumped onto the cutset); the
    central-bag route (hub division, bag separator, extension); the
    exhaustive fallback. The output is always verified before returning.
    """
    mask = G.full_mask if within is None else as_mask(within)

    def log(name, ok, detail=None):
        if transcript is not None:
            transcript.append((name, bool(ok), detail))

    if _depth > max(G.n, 1):
        raise Unsolvable("oracle recursion too deep")
    comps = components_masks(G, mask)
    if not comps:
        return BalancedSeparator.build(G, mask, w, HALF, 0, [], "empty")
    if len(comps) > 1:
        heavy = [c for c in comps if w.weight(c) > HALF]
        if not heavy:
            return BalancedSeparator.build(G, mask, w, HALF, 0, [],
                                           "disconnected-balanced")
        hm = heavy[0]
        hw = w.weight(hm)
        scaled = WeightFunction({v: w[v] / hw for v in bits(hm)})
        inner = weighted_separator_oracle(G, scaled, within=hm,
                                          transcript=transcript,
                                          _depth=_depth + 1)
        return BalancedSeparator.build(G, mask, w, HALF, inner.mask(),
                                       [mask_of(q) for q in inner.cover],
                                       inner.route, inner.assertions)

    cutsets = sorted(
        (s for s in minimal_separators(G, mask) if G.is_clique(s)),
        key=lambda s: (s.bit_count(), bits_tuple(s)))
    for k in cutsets:
        if all(w.weight(c) <= HALF for c in components_masks(G, mask & ~k)):
            log("route", True, "clique_cutset")
            return BalancedSeparator.build(G, mask, w, HALF, k, [k],
                                           "clique_cutset")
    if cutsets:
        k = cutsets[0]
        sides = components_masks(G, mask & ~k)
        heavy = [c for c in sides if w.weight(c) > HALF][0]
        sub = heavy | k
        residue = Fraction(1) - w.weight(sub)
        share = residue / k.bit_count()
        lumped = WeightFunction(
            {v: (w[v] + share if (k >> v) & 1 else w[v]) for v in bits(sub)})
        inner = weighted_separator_oracle(G, lumped, within=sub,
                                          transcript=transcript,
                                          _depth=_depth + 1)
        for attempt, route in ((inner.mask(), inner.route + "+clique_cutset"),
                               (inner.mask() | k, inner.route + "+cutset-joined")):
            try:
                cover = [mask_of(q) for q in inner.cover]
                extra = attempt & ~inner.mask()
                if extra:
                    cover = cover + [extra]
                return BalancedSeparator.build(G, mask, w, HALF, attempt,
                                               cover, route)
            except VerificationFailed:
                continue
        log("clique-cutset-recursion", False, bits_tuple(k))
    else:
        try:
            hd = hub_division(G, w, mask)
            xbag = balanced_separator_central_bag(G, w, hd,
                                                  transcript=transcript)
            y = extend_separator(G, w, hd, xbag, within=mask,
                                 transcript=transcript)
            log("route", True, y.route)
            return y
        except (AssertionFailed, VerificationFailed, NotFound, NotInClass,
                NotSmooth, PropertyViolation, TooLarge) as exc:
            log("central-bag-route", False, f"{type(exc).__name__}: {exc}")

    fallback = exhaustive_balanced_separator(G, w, HALF, within=mask)
    if fallback is None:
        raise Unsolvable("no balanced separator found within guards")
    log("route", True, "fallback")
    return BalancedSeparator(fallback.vertices, fallback.cover,
                             fallback.threshold, fallback.component_weights,
                             "fallback", fallback.assertions)
