"""Canonical star separations, the A-side order, revised collections,
smooth collections and central bags with inherited weights.

Weight comparisons against 1/2 are exact rationals. Out-of-class inputs
degrade to checked computation: every structural property is verified at
construction and violations are reported, never assumed away.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bitset import as_mask, bit, bits, bits_tuple, mask_of, to_set
from .errors import (
    NotSmooth,
    PreconditionViolated,
    PropertyViolation,
    TalphaError,
    VertexBalanced,
)
from .graph import Graph, Separation, WeightFunction, components_masks

HALF = Fraction(1, 2)


def balanced_vertices(G: Graph, w: WeightFunction,
                      within=None) -> tuple[frozenset[int], frozenset[int]]:
    """Split vertices into balanced and unbalanced.

    A vertex is balanced when every component of the graph minus its closed
    neighborhood weighs at most 1/2.
    """
    mask = G.full_mask if within is None else as_mask(within)
    balanced = 0
    unbalanced = 0
    for v in bits(mask):
        heavy = False
        for comp in components_masks(G, mask & ~G.closed(v)):
            if w.weight(comp) > HALF:
                heavy = True
                break
        if heavy:
            unbalanced |= bit(v)
        else:
            balanced |= bit(v)
    return to_set(balanced), to_set(unbalanced)


def _is_unbalanced(G: Graph, w: WeightFunction, v: int, mask: int) -> bool:
    return any(w.weight(c) > HALF
               for c in components_masks(G, mask & ~G.closed(v)))


@dataclass(frozen=True)
class CanonicalStarSeparation:
    """S_v = (A_v, C_v, B_v) for an unbalanced vertex v.

    B_v is the heaviest component of the graph minus N[v] (ties to the
    component with the smallest minimum vertex id), C_v is v plus the
    neighbors of v seeing B_v, A_v is everything else.
    """

    v: int
    A: frozenset[int]
    C: frozenset[int]
    B: frozenset[int]

    def separation(self) -> Separation:
        return Separation(self.A, self.C, self.B)

    def masks(self) -> tuple[int, int, int]:
        return mask_of(self.A), mask_of(self.C), mask_of(self.B)


def canonical_star_separation(G: Graph, w: WeightFunction, v: int,
                              within=None) -> CanonicalStarSeparation:
    mask = G.full_mask if within is None else as_mask(within)
    comps = components_masks(G, mask & ~G.closed(v))
    heavy = [c for c in comps if w.weight(c) > HALF]
    if not heavy:
        raise VertexBalanced(f"vertex {v} is balanced")
    bmask = max(comps, key=lambda c: (w.weight(c), -(c & -c)))
    cmask = bit(v) | (G.adj[v] & G.neighbors_of_set(bmask, within=mask))
    amask = mask & ~(bmask | cmask)
    return CanonicalStarSeparation(v, to_set(amask), to_set(cmask), to_set(bmask))


def leq_A_minimal(G: Graph, w: WeightFunction, U,
                  within=None) -> tuple[frozenset[tuple[int, int]], frozenset[int]]:
    """The order pairs (x, y) with x <= y, and the minimal elements of U.

    x <= y iff x == y or y lies in A_x. On inputs outside the guaranteed
    class the relation is still computed; partial-order axioms are a test
    concern, not assumed here.
    """
    mask = G.full_mask if within is None else as_mask(within)
    umask = as_mask(U)
    a_side: dict[int, int] = {}
    for x in bits(umask):
        a_side[x] = canonical_star_separation(G, w, x, mask).masks()[0]
    pairs = set()
    not_minimal = 0
    for x in bits(umask):
        for y in bits(umask):
            if x == y or (a_side[x] >> y) & 1:
                pairs.add((x, y))
    for x, y in pairs:
        if x != y:
            not_minimal |= bit(y)
    minimal = umask & ~not_minimal
    return frozenset(pairs), to_set(minimal)


@dataclass(frozen=True)
class RevisedSeparation:
    """Canonical separation of u with C extended by common neighborhoods.

    For every other chosen vertex v inside C_u, the common neighbors of u
    and v move into the cut side; B is unchanged and A shrinks.
    """

    u: int
    A: frozenset[int]
    C: frozenset[int]
    B: frozenset[int]

    def separation(self) -> Separation:
        return Separation(self.A, self.C, self.B)

    def masks(self) -> tuple[int, int, int]:
        return mask_of(self.A), mask_of(self.C), mask_of(self.B)


def revised_collection(G: Graph, w: WeightFunction, X,
                       within=None) -> list[RevisedSeparation]:
    """Revised separations for every u in X, with their four structural
    properties verified on construction."""
    mask = G.full_mask if within is None else as_mask(within)
    xmask = as_mask(X)
    out = []
    for u in bits(xmask):
        base = canonical_star_separation(G, w, u, mask)
        amask, cmask, bmask = base.masks()
        ext = cmask
        for v in bits(xmask & cmask & ~bit(u)):
            ext |= G.adj[u] & G.adj[v] & mask
        new_a = mask & ~(ext | bmask)
        rev = RevisedSeparation(u, to_set(new_a), to_set(ext), to_set(bmask))
        _verify_revised(G, rev, base, mask)
        out.append(rev)
    return out


def _verify_revised(G: Graph, rev: RevisedSeparation,
                    base: CanonicalStarSeparation, mask: int) -> None:
    ra, rc, rb = rev.masks()
    ba, bc, bb = base.masks()
    u = rev.u
    checks = (
        (rb == bb, "B side changed"),
        (bc & ~rc == 0 and rc & ~G.closed(u) == 0, "C not between C_u and N[u]"),
        (ra & ~ba == 0, "A side grew"),
        ((ba & ~G.adj[u]) & ~ra == 0, "A lost non-neighbor vertices"),
    )
    for ok, msg in checks:
        if not ok:
            raise PropertyViolation(f"revised separation for {u}: {msg}")
    for x in bits(ra):
        if G.adj[x] & rb:
            raise PropertyViolation(f"revised separation for {u}: A-B edge")


@dataclass(frozen=True)
class SmoothCollection:
    """Separations with distinguished vertices v(S) and the bijection f.

    `chosen` lists (vertex, separation) pairs; the vertex ordering given
    here is the ordering anchors are assigned by.
    """

    chosen: tuple[tuple[int, Separation], ...]

    @classmethod
    def from_revised(cls, revised: Sequence[RevisedSeparation]) -> "SmoothCollection":
        return cls(tuple((r.u, r.separation()) for r in revised))

    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.chosen)

    def separations(self) -> tuple[Separation, ...]:
        return tuple(s for _, s in self.chosen)


@dataclass(frozen=True)
class SmoothReport:
    smooth: bool
    violations: tuple[str, ...]


def nearly_non_crossing(G: Graph, a1: int, a2: int, mask: int) -> bool:
    """Every component of A1 | A2 is a component of A1 or of A2."""
    union = a1 | a2
    comps1 = set(components_masks(G, a1))
    comps2 = set(components_masks(G, a2))
    return all(c in comps1 or c in comps2 for c in components_masks(G, union))


def smooth_check(G: Graph, w: WeightFunction, S: SmoothCollection,
                 within=None) -> SmoothReport:
    """Check the three smooth-collection properties, reporting each failure."""
    mask = G.full_mask if within is None else as_mask(within)
    violations = []
    seps = [(v, s.masks()) for v, s in S.chosen]
    if len({v for v, _ in seps}) != len(seps):
        violations.append("chosen vertices not distinct")
    for i in range(len(seps)):
        for j in range(i + 1, len(seps)):
            if not nearly_non_crossing(G, seps[i][1][0], seps[j][1][0], mask):
                violations.append(
                    f"separations for {seps[i][0]} and {seps[j][0]} cross")
    for v, (a, c, b) in seps:
        if not _is_unbalanced(G, w, v, mask):
            violations.append(f"chosen vertex {v} is balanced")
            continue
        if not ((c >> v) & 1 and c & ~G.closed(v) == 0):
            violations.append(f"cut side of {v} not inside N[{v}]")
        av = canonical_star_separation(G, w, v, mask).masks()[0]
        if a & ~av:
            violations.append(f"A side of {v} exceeds its canonical A side")
    chosen_mask = mask_of(v for v, _ in seps)
    for v, (a, c, b) in seps:
        if chosen_mask & a:
            violations.append(f"a chosen vertex lies in the A side of {v}")
    return SmoothReport(not violations, tuple(violations))


@dataclass(frozen=True)
class CentralBag:
    """Intersection of the B|C sides, with component weights folded onto
    anchors in the fixed ordering."""

    bag: frozenset[int]
    weights: WeightFunction
    anchors: tuple[tuple[frozenset[int], int], ...]  # (component, anchor vertex)
    a_star: tuple[tuple[int, frozenset[int]], ...]  # (chosen vertex, A* part)

    def to_json(self) -> dict:
        return {
            "bag": sorted(self.bag),
            "weights": {v: [f.numerator, f.denominator]
                        for v, f in self.weights.items()},
            "anchors": [[sorted(c), a] for c, a in self.anchors],
        }


def central_bag(G: Graph, w: WeightFunction, S: SmoothCollection,
                within=None) -> CentralBag:
    """Build the central bag and its inherited weight function.

    Every component outside the bag is anchored to the first chosen vertex
    (in the collection's ordering) whose A side contains it; the anchor
    absorbs the component's weight. The total stays exactly 1.
    """
    mask = G.full_mask if within is None else as_mask(within)
    report = smooth_check(G, w, S, mask)
    if not report.smooth:
        raise NotSmooth(report)
    bag = mask
    a_masks = []
    for v, s in S.chosen:
        a, c, b = s.masks()
        bag &= (b | c)
        a_masks.append((v, a))
    union_a = 0
    for _, a in a_masks:
        union_a |= a
    if union_a != mask & ~bag:
        raise NotSmooth(SmoothReport(False, ("A sides do not tile the complement",)))
    star: dict[int, int] = {v: 0 for v, _ in a_masks}
    anchors = []
    for comp in components_masks(G, union_a):
        for v, a in a_masks:
            if comp & ~a == 0:
                star[v] |= comp
                anchors.append((to_set(comp), v))
                break
        else:
            raise NotSmooth(SmoothReport(
                False, ("a component outside the bag fits no A side",)))
    new_w = {u: w[u] for u in bits(bag)}
    for v, _ in a_masks:
        new_w[v] = w[v] + w.weight(star[v])
    weights = WeightFunction(new_w)
    return CentralBag(to_set(bag), weights,
                      tuple(anchors),
                      tuple((v, to_set(star[v])) for v, _ in a_masks))


def shield_check(G: Graph, s1: Separation, v1: int, s2: Separation,
                 v2: int) -> bool:
    """True iff the first separation's B|C side sits inside the second's.

    Both arguments must be star separations with connected B whose open
    boundary is exactly C minus the center.
    """
    for s, v, name in ((s1, v1, "first"), (s2, v2, "second")):
        a, c, b = s.masks()
        if not ((c >> v) & 1 and c & ~G.closed(v) == 0):
            raise PreconditionViolated(f"{name}: cut side not a star around {v}")
        if b and len(components_masks(G, b)) != 1:
            raise PreconditionViolated(f"{name}: B side not connected")
        if G.neighbors_of_set(b, within=G.full_mask) != c & ~bit(v):
            raise PreconditionViolated(f"{name}: boundary of B is not C minus center")
    a1, c1, b1 = s1.masks()
    a2, c2, b2 = s2.masks()
    return (b1 | c1) & ~(b2 | c2) == 0
