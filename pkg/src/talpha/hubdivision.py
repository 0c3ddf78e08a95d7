"""The hub division: hub elimination ordering, the minimal prefix M, its
revised separations and their central bag with inherited weights.

Construction verifies, always (not only under test), the structural facts
the downstream separator engines consume: the collection is smooth, no
prefix hub remains a hub of the bag, prefix-hub neighborhoods inside the
bag have small clique covers, and when a balanced hub exists it lies in
the bag with its hub-neighborhood covered by the elimination certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bitset import as_mask, bit, bits, bits_tuple, mask_of, to_set
from .cover import cover_at_most
from .cutsets import EliminationOrder, elimination_order
from .errors import AssertionFailed
from .graph import Graph, WeightFunction
from .separations import (
    CentralBag,
    RevisedSeparation,
    SmoothCollection,
    balanced_vertices,
    central_bag,
    leq_A_minimal,
    revised_collection,
    smooth_check,
)
from .structures import hub_set


@dataclass(frozen=True)
class HubDivision:
    hub_order: tuple[int, ...]
    m: int  # 1-based; len(hub_order) + 1 when every hub is unbalanced
    M: frozenset[int]
    revised: tuple[RevisedSeparation, ...]
    collection: SmoothCollection
    bag: CentralBag
    elimination: EliminationOrder
    unbalanced: frozenset[int]
    prefix_covers: tuple[tuple[int, tuple[frozenset[int], ...]], ...]
    m_cover: Optional[tuple[frozenset[int], ...]]
    assertions: tuple[tuple[str, bool], ...]

    @property
    def balanced_hub(self) -> Optional[int]:
        if self.m <= len(self.hub_order):
            return self.hub_order[self.m - 1]
        return None

    def prefix(self) -> tuple[int, ...]:
        return self.hub_order[:self.m - 1]

    def prefix_cover(self, x: int) -> tuple[frozenset[int], ...]:
        return dict(self.prefix_covers)[x]

    def to_json(self) -> dict:
        return {
            "hub_order": list(self.hub_order),
            "m": self.m,
            "M": sorted(self.M),
            "bag": sorted(self.bag.bag),
            "weights": {v: [f.numerator, f.denominator]
                        for v, f in self.bag.weights.items()},
            "assertions": dict(self.assertions),
        }


def hub_division(G: Graph, w: WeightFunction, within=None) -> HubDivision:
    """Build the hub division of (G, w) and verify its structural claims.

    Raises AssertionFailed (with the claim id) when a claim the pipeline
    relies on does not hold; this signals out-of-class input.
    """
    mask = G.full_mask if within is None else as_mask(within)
    elim = elimination_order(G, mask)
    hub_order = elim.hub_order
    _, unbalanced = balanced_vertices(G, w, mask)
    m = len(hub_order) + 1
    for i, v in enumerate(hub_order):
        if v not in unbalanced:
            m = i + 1
            break
    prefix = hub_order[:m - 1]
    _, M = leq_A_minimal(G, w, mask_of(prefix), mask)
    revised = tuple(revised_collection(G, w, M, mask))
    collection = SmoothCollection.from_revised(revised)
    assertions: list[tuple[str, bool]] = []

    report = smooth_check(G, w, collection, mask)
    assertions.append(("collection-smooth", report.smooth))
    if not report.smooth:
        raise AssertionFailed("collection-smooth", report.violations)
    bag = central_bag(G, w, collection, mask)
    bag_mask = mask_of(bag.bag)

    hub_in_bag = hub_set(G, bag_mask)
    lingering = [v for v in prefix if v in hub_in_bag.hubs]
    assertions.append(("no-prefix-hub-in-bag", not lingering))
    if lingering:
        raise AssertionFailed("no-prefix-hub-in-bag",
                              {"hubs": lingering})

    prefix_covers = []
    for x in prefix:
        nb = G.adj[x] & bag_mask
        cover = cover_at_most(G, nb, 5)
        assertions.append((f"prefix-neighborhood-cover-5:{x}", cover is not None))
        if cover is None:
            raise AssertionFailed("prefix-neighborhood-cover-5", {"vertex": x})
        prefix_covers.append((x, tuple(cover)))
        if x in M:
            non_hub = nb & ~mask_of(hub_in_bag.hubs)
            cover2 = cover_at_most(G, non_hub, 2)
            assertions.append((f"chosen-nonhub-cover-2:{x}", cover2 is not None))
            if cover2 is None:
                raise AssertionFailed("chosen-nonhub-cover-2", {"vertex": x})

    m_cover = None
    if m <= len(hub_order):
        vm = hub_order[m - 1]
        assertions.append(("balanced-hub-in-bag", (bag_mask >> vm) & 1 == 1))
        if not (bag_mask >> vm) & 1:
            raise AssertionFailed("balanced-hub-in-bag", {"vertex": vm})
        cert = dict(zip(elim.hub_order, elim.hub_certificates))[vm]
        pieces = tuple(mask_of(q) for q in cert.cliques)
        hub_nb = G.adj[vm] & mask_of(hub_in_bag.hubs)
        cover3 = cover_at_most(G, hub_nb, 3, pieces=pieces)
        assertions.append(("balanced-hub-hub-neighborhood-cover-3", cover3 is not None))
        if cover3 is None:
            raise AssertionFailed("balanced-hub-hub-neighborhood-cover-3",
                                  {"vertex": vm})
        m_cover = tuple(cover3)

    total = sum((f for _, f in bag.weights.items()), start=0)
    assertions.append(("inherited-weight-total-1", total == 1))
    assertions.append(("bag-contains-M", not (mask_of(M) & ~bag_mask)))

    return HubDivision(hub_order, m, M, revised, collection, bag, elim,
                       unbalanced, tuple(prefix_covers), m_cover,
                       tuple(assertions))
