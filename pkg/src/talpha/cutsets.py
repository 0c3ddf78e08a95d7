"""Clique cutsets, atom decomposition, star cutsets and elimination orderings.

Clique cutsets are located through exhaustive minimal-separator generation
(close separators plus expansion), so a `None` answer is a proof of
absence. Star cutsets follow the convention that the center belongs to the
cutset. The minimal star-cutset component is computed over all achievable
components, which makes the case analysis of the trisimplicial search
sound without extra assumptions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .errors import NotFound, NotInClass, TalphaError, TooLarge
from .graph import Graph, components_masks
from .structures import UNKNOWN, find_structure, find_wheel, hub_set

SEPARATOR_CAP = 200_000


def minimal_separators(G: Graph, within=None, cap: int = SEPARATOR_CAP) -> list[int]:
    """All minimal separators of G[within] as masks (close sets + expansion)."""
    mask = G.full_mask if within is None else as_mask(within)
    seen: set[int] = set()
    queue: deque[int] = deque()

    def offer(smask: int) -> None:
        if smask and smask not in seen:
            seen.add(smask)
            queue.append(smask)
            if len(seen) > cap:
                raise TooLarge(f"more than {cap} minimal separators")

    for v in bits(mask):
        outside = mask & ~G.closed(v)
        for comp in components_masks(G, outside):
            offer(G.neighbors_of_set(comp, within=mask))
    while queue:
        s = queue.popleft()
        for x in bits(s):
            removed = s | G.closed(x)
            for comp in components_masks(G, mask & ~removed):
                offer(G.neighbors_of_set(comp, within=mask))
    return sorted(seen)


def find_clique_cutset(G: Graph, within=None,
                       cap: int = SEPARATOR_CAP) -> Optional[tuple[frozenset[int], list[frozenset[int]]]]:
    """A clique whose removal disconnects G[within], or None.

    Returns the lexicographically least clique minimal separator together
    with the components of its removal. Requires a connected input.
    """
    mask = G.full_mask if within is None else as_mask(within)
    if len(components_masks(G, mask)) > 1:
        raise TalphaError("find_clique_cutset requires a connected graph")
    best: Optional[tuple] = None
    for s in minimal_separators(G, mask, cap):
        if G.is_clique(s):
            key = tuple(sorted(bits(s)))
            if best is None or (len(key), key) < (len(best), best):
                best = key
    if best is None:
        return None
    smask = mask_of(best)
    sides = [to_set(c) for c in components_masks(G, mask & ~smask)]
    return frozenset(best), sides


# -- atom decomposition -------------------------------------------------------


@dataclass(frozen=True)
class AtomNode:
    atom: frozenset[int]
    cut_clique: frozenset[int]
    children: tuple["AtomNode", ...]

    def to_json(self) -> dict:
        return {
            "atom": sorted(self.atom),
            "cut_clique": sorted(self.cut_clique),
            "children": [c.to_json() for c in self.children],
        }


@dataclass(frozen=True)
class AtomTree:
    root: AtomNode

    def atoms(self) -> list[frozenset[int]]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node.atom)
            stack.extend(node.children)
        return sorted(out, key=sorted)

    def nodes(self) -> list[AtomNode]:
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(node.children)
        return out

    def to_json(self) -> dict:
        return self.root.to_json()


def _find_extreme(G: Graph, work: int):
    """An extreme clique cutset of the connected graph G[work].

    Returns (K, D) with K a clique cutset of G[work] and D a component of
    work minus K such that D | K has no clique cutset; None when G[work]
    is already an atom.
    """
    found = find_clique_cutset(G, work)
    if found is None:
        return None
    kmask = mask_of(found[0])
    dmask = min(components_masks(G, work & ~kmask),
                key=lambda c: (c.bit_count(), c))
    while True:
        sub = dmask | kmask
        nxt = find_clique_cutset(G, sub)
        if nxt is None:
            return kmask, dmask
        k2 = mask_of(nxt[0])
        # the old clique meets at most one component, so another avoids it
        inner = [c for c in components_masks(G, sub & ~k2) if not c & kmask]
        dmask = min(inner, key=lambda c: (c.bit_count(), c))
        kmask = k2


def atom_decomposition(G: Graph, within=None) -> AtomTree:
    """Decompose into atoms by repeatedly extracting extreme clique cutsets."""
    mask = G.full_mask if within is None else as_mask(within)
    if mask == 0:
        return AtomTree(AtomNode(frozenset(), frozenset(), ()))
    roots = []
    for comp in components_masks(G, mask):
        roots.append(_decompose_component(G, comp))
    if len(roots) == 1:
        return AtomTree(roots[0])
    first = roots[0]
    extra = tuple(AtomNode(r.atom, frozenset(), r.children) for r in roots[1:])
    return AtomTree(AtomNode(first.atom, first.cut_clique,
                             first.children + extra))


def _decompose_component(G: Graph, comp: int) -> AtomNode:
    work = comp
    peeled: list[tuple[int, int]] = []  # (atom_mask, cut_mask) in peel order
    while True:
        ext = _find_extreme(G, work)
        if ext is None:
            break
        kmask, dmask = ext
        peeled.append((dmask | kmask, kmask))
        work &= ~dmask
    # parent of each peeled atom: the first later atom containing its cut
    entries = peeled + [(work, 0)]
    children: list[list[int]] = [[] for _ in entries]
    for i, (_, kmask) in enumerate(peeled):
        for j in range(i + 1, len(entries)):
            if kmask & ~entries[j][0] == 0:
                children[j].append(i)
                break
        else:
            raise TalphaError("cut clique not contained in any later atom")

    def build(idx: int) -> AtomNode:
        amask, kmask = entries[idx]
        return AtomNode(to_set(amask), to_set(kmask),
                        tuple(build(c) for c in children[idx]))

    return build(len(entries) - 1)


# -- classification of (three-path-configuration, wheel)-free graphs ---------


@dataclass(frozen=True)
class UsOutcome:
    kind: str  # "complete" | "hole" | "clique_cutset"
    cutset: Optional[frozenset[int]] = None
    sides: Optional[tuple[frozenset[int], ...]] = None


def _assert_3pc_wheel_free(G: Graph, mask: int) -> None:
    for kind in ("theta", "pyramid", "prism"):
        w = find_structure(G, kind, within=mask)
        if w is UNKNOWN:
            raise TooLarge(f"{kind} search exhausted its budget")
        if w is not None:
            raise NotInClass(w, f"graph contains a {kind}")
    w = find_wheel(G, "any", within=mask)
    if w is UNKNOWN:
        raise TooLarge("wheel search exhausted its budget")
    if w is not None:
        raise NotInClass(w, "graph contains a wheel")


def _is_hole_graph(G: Graph, mask: int) -> bool:
    k = mask.bit_count()
    if k < 4:
        return False
    for v in bits(mask):
        if (G.adj[v] & mask).bit_count() != 2:
            return False
    return len(components_masks(G, mask)) == 1


def us_classify(G: Graph, within=None, *, check: bool = True) -> UsOutcome:
    """Complete graph, hole, or clique cutset; exactly one outcome.

    Inputs containing a three-path configuration or a wheel are rejected
    with the witness attached.
    """
    mask = G.full_mask if within is None else as_mask(within)
    if check:
        _assert_3pc_wheel_free(G, mask)
    if G.is_clique(mask):
        return UsOutcome("complete")
    if _is_hole_graph(G, mask):
        return UsOutcome("hole")
    found = find_clique_cutset(G, mask)
    if found is None:
        raise TalphaError("no outcome matched; input outside the expected class")
    return UsOutcome("clique_cutset", found[0], tuple(found[1]))


# -- star cutsets -------------------------------------------------------------


@dataclass(frozen=True)
class StarCutset:
    center: int
    cutset: frozenset[int]
    component: frozenset[int]


def star_cutset_candidates(G: Graph, within=None):
    """All inclusion-minimal components achievable from star cutsets.

    Yields (center, cutset_mask, component_mask) for every closure-minimal
    candidate; a star cutset here contains its center.
    """
    mask = G.full_mask if within is None else as_mask(within)
    emitted: set[tuple[int, int]] = set()
    for v in bits(mask):
        far = mask & ~G.closed(v)
        comps0 = components_masks(G, far)
        closures = list(comps0)
        for s in bits(G.adj[v] & mask):
            cl = bit(s)
            for c in comps0:
                if G.adj[s] & c:
                    cl |= c
            closures.append(cl)
        for cl in closures:
            cut = bit(v) | G.neighbors_of_set(cl, within=mask)
            rest = mask & ~(cl | cut)
            if rest and (v, cl) not in emitted:
                emitted.add((v, cl))
                yield v, cut, cl


def find_star_cutset_minimal(G: Graph, within=None) -> Optional[StarCutset]:
    """A star cutset leaving an inclusion-minimal component.

    Minimality is over every star cutset of the graph (with the center in
    the cutset); ties break to the smallest component, then
    lexicographically, then by center.
    """
    mask = G.full_mask if within is None else as_mask(within)
    cands = list(star_cutset_candidates(G, mask))
    if not cands:
        return None
    minimal = []
    for v, cut, comp in cands:
        if not any(other & ~comp == 0 and other != comp for _, _, other in cands):
            minimal.append((v, cut, comp))
    v, cut, comp = min(minimal,
                       key=lambda t: (t[2].bit_count(), bits_tuple(t[2]), t[0]))
    return StarCutset(v, to_set(cut), to_set(comp))


# -- trisimplicial vertices ---------------------------------------------------


@dataclass(frozen=True)
class TrisimplicialCertificate:
    vertex: int
    cliques: tuple[frozenset[int], ...]

    def verify(self, G: Graph, within=None) -> None:
        mask = G.full_mask if within is None else as_mask(within)
        if len(self.cliques) > 3:
            raise TalphaError("certificate has more than three cliques")
        union = 0
        for q in self.cliques:
            qm = mask_of(q)
            if not G.is_clique(qm):
                raise TalphaError("certificate part is not a clique")
            union |= qm
        if union != G.adj[self.vertex] & mask:
            raise TalphaError("certificate does not cover the neighborhood")


def _bisimplicial_in_wheelfree(G: Graph, mask: int) -> tuple[int, tuple[frozenset[int], ...]]:
    """A vertex of G[mask] whose neighborhood is a union of <= 2 cliques.

    Assumes G[mask] is wheel-free and three-path-configuration-free; finds
    it inside a leaf atom (complete graph or hole).
    """
    comp0 = components_masks(G, mask)[0]
    ext = _find_extreme(G, comp0)
    if ext is None:
        atom, private = comp0, comp0
    else:
        kmask, dmask = ext
        atom, private = dmask | kmask, dmask
    x = lowest_bit(private)
    nb = G.adj[x] & mask
    if G.is_clique(atom):
        cliques = (to_set(nb),) if nb else ()
    elif _is_hole_graph(G, atom):
        cliques = tuple(to_set(bit(u)) for u in bits(nb))
    else:
        raise NotFound("leaf atom is neither complete nor a hole")
    if len(cliques) > 2 or mask_of(frozenset().union(*cliques) if cliques else ()) != nb:
        raise NotFound("no bisimplicial certificate in leaf atom")
    return x, cliques


def trisimplicial_vertex(G: Graph, within=None) -> TrisimplicialCertificate:
    """A vertex whose neighborhood is the union of at most three cliques.

    Wheel-free inputs reduce to a leaf atom. Otherwise a star cutset with a
    globally minimal component exists; its center is either adjacent to a
    singleton component (simplicial vertex) or anticomplete to a wheel-free
    component whose bisimplicial vertex has at most one outside neighbor.
    Inputs outside the supported class surface as NotFound.
    """
    mask = G.full_mask if within is None else as_mask(within)
    if mask == 0:
        raise NotFound("empty graph")
    wheel = find_wheel(G, "any", within=mask)
    if wheel is UNKNOWN:
        raise TooLarge("wheel search exhausted its budget")
    if wheel is None:
        x, cliques = _bisimplicial_in_wheelfree(G, mask)
        cert = TrisimplicialCertificate(x, cliques)
        cert.verify(G, mask)
        return cert
    sc = find_star_cutset_minimal(G, mask)
    if sc is None:
        raise NotFound("wheel present but no star cutset")
    v = sc.center
    dmask = mask_of(sc.component)
    if G.adj[v] & dmask:
        if dmask.bit_count() != 1:
            raise NotFound("center adjacent to a non-singleton minimal component")
        d = lowest_bit(dmask)
        nb = G.adj[d] & mask
        if not G.is_clique(nb):
            raise NotFound("singleton component is not simplicial")
        cert = TrisimplicialCertificate(d, (to_set(nb),) if nb else ())
        cert.verify(G, mask)
        return cert
    inner_wheel = find_wheel(G, "any", within=dmask)
    if inner_wheel is UNKNOWN:
        raise TooLarge("wheel search exhausted its budget")
    if inner_wheel is not None:
        raise NotFound("minimal star-cutset component contains a wheel")
    x, cliques = _bisimplicial_in_wheelfree(G, dmask)
    outside = G.adj[x] & mask & ~dmask
    if outside.bit_count() > 1:
        raise NotFound("bisimplicial vertex has two outside neighbors")
    if outside:
        cliques = cliques + (to_set(outside),)
    cert = TrisimplicialCertificate(x, cliques)
    cert.verify(G, mask)
    return cert


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]
    certificates: tuple[TrisimplicialCertificate, ...]
    hub_order: tuple[int, ...]
    hub_certificates: tuple[TrisimplicialCertificate, ...]

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "certificates": [[sorted(q) for q in c.cliques] for c in self.certificates],
            "hub_order": list(self.hub_order),
        }


def elimination_order(G: Graph, within=None) -> EliminationOrder:
    """Repeatedly remove a trisimplicial vertex; certificates per step.

    Also returns the subsequence of hubs (centers of non-bug wheels in the
    full graph) with their residual certificates; those cover each hub's
    neighborhood among later vertices by at most three cliques of G.
    """
    mask = G.full_mask if within is None else as_mask(within)
    remaining = mask
    order: list[int] = []
    certs: list[TrisimplicialCertificate] = []
    while remaining:
        cert = trisimplicial_vertex(G, within=remaining)
        order.append(cert.vertex)
        certs.append(cert)
        remaining &= ~bit(cert.vertex)
    hubs = hub_set(G, mask).hubs
    hub_pairs = [(v, c) for v, c in zip(order, certs) if v in hubs]
    return EliminationOrder(tuple(order), tuple(certs),
                            tuple(v for v, _ in hub_pairs),
                            tuple(c for _, c in hub_pairs))
