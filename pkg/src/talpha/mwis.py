"""Maximum weight independent set: dynamic programming over a (nice-ified)
tree decomposition, and a branch-and-bound oracle for cross-checking.

Weights are exact (ints or rationals); both methods return the same
optimum value on any instance, with deterministic lexicographic witness
tie-breaking per merge step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .bitset import as_mask, bit, bits, bits_tuple, mask_of, to_set
from .cover import alpha
from .errors import StateBlowup, TalphaError, TooLarge
from .graph import Graph
from .treedec import TreeDecomposition, validate_td

BRUTE_GUARD = 24
BAG_INDEPENDENCE_GUARD = 10


@dataclass(frozen=True)
class MwisResult:
    chosen: frozenset[int]
    value: Fraction
    method: str

    def to_json(self) -> dict:
        return {
            "chosen": sorted(self.chosen),
            "value": [self.value.numerator, self.value.denominator],
            "method": self.method,
        }


def _norm_weights(G: Graph, weights, mask: int) -> dict[int, Fraction]:
    w = {}
    for v in bits(mask):
        x = weights[v] if not isinstance(weights, Mapping) else weights.get(v, 0)
        f = Fraction(x)
        if f < 0:
            raise TalphaError(f"negative weight at vertex {v}")
        w[v] = f
    return w


def mwis_bruteforce(G: Graph, weights, within=None,
                    guard: int = BRUTE_GUARD) -> MwisResult:
    """Exact optimum by branch and bound over vertex subsets."""
    mask = G.full_mask if within is None else as_mask(within)
    if mask.bit_count() > guard:
        raise TooLarge(f"brute-force guard {guard} exceeded")
    w = _norm_weights(G, weights, mask)
    total = sum(w.values(), Fraction(0))
    best_value = Fraction(-1)
    best_set: tuple[int, ...] = ()

    def consider(value: Fraction, chosen: int) -> None:
        nonlocal best_value, best_set
        key = bits_tuple(chosen)
        if value > best_value or (value == best_value and key < best_set):
            best_value = value
            best_set = key

    def rec(avail: int, value: Fraction, chosen: int, remaining: Fraction) -> None:
        if value + remaining < best_value:
            return
        if not avail:
            consider(value, chosen)
            return
        # branch on the heaviest available vertex (smallest id on ties)
        v = max(bits(avail), key=lambda u: (w[u], -u))
        nbrs = G.adj[v] & avail
        removed = sum((w[u] for u in bits(nbrs)), Fraction(0))
        rec(avail & ~(nbrs | bit(v)), value + w[v], chosen | bit(v),
            remaining - removed - w[v])
        rec(avail & ~bit(v), value, chosen, remaining - w[v])

    rec(mask, Fraction(0), 0, total)
    return MwisResult(frozenset(best_set), best_value, "brute-force")


# -- nice tree decomposition ----------------------------------------------------


@dataclass(frozen=True)
class _NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: int
    vertex: Optional[int]
    children: tuple[int, ...]


def _niceify(td: TreeDecomposition) -> tuple[list[_NiceNode], int]:
    """Nice-ify: leaves are empty, every step introduces or forgets one
    vertex, joins duplicate a bag over two children. Returns (nodes, root)."""
    nodes: list[_NiceNode] = []

    def add(kind, bag, vertex, children) -> int:
        nodes.append(_NiceNode(kind, bag, vertex, tuple(children)))
        return len(nodes) - 1

    def chain_up(idx: int, have: int, want: int) -> int:
        for v in bits(have & ~want):
            have &= ~bit(v)
            idx = add("forget", have, v, [idx])
        for v in bits(want & ~have):
            have |= bit(v)
            idx = add("introduce", have, v, [idx])
        return idx

    nb = td.neighbors()
    masks = td.bag_masks()

    def lift(t: int, parent: int) -> int:
        kids = [lift(u, t) for u in nb[t] if u != parent]
        bag = masks[t]
        if not kids:
            idx = add("leaf", 0, None, [])
            return chain_up(idx, 0, bag)
        adapted = [chain_up(k, masks[u], bag)
                   for k, u in zip(kids, [u for u in nb[t] if u != parent])]
        while len(adapted) > 1:
            b = adapted.pop()
            a = adapted.pop()
            adapted.append(add("join", bag, None, [a, b]))
        return adapted[0]

    if not td.bags:
        return [_NiceNode("leaf", 0, None, ())], 0
    root = lift(0, -1)
    root = chain_up(root, masks[0], 0)
    return nodes, root


def mwis_td(G: Graph, weights, td: TreeDecomposition, within=None,
            max_bag_independence: int = BAG_INDEPENDENCE_GUARD) -> MwisResult:
    """Optimum stable set by DP over the decomposition.

    States per bag are its stable subsets; bags whose independence number
    exceeds the guard raise StateBlowup before any table is built.
    """
    mask = G.full_mask if within is None else as_mask(within)
    check = validate_td(G, td, mask)
    if not check.valid:
        raise TalphaError(f"invalid tree decomposition: {check.violations[:3]}")
    for b in td.bags:
        if alpha(G, mask_of(b) & mask) > max_bag_independence:
            raise StateBlowup(
                f"bag independence exceeds guard {max_bag_independence}")
    w = _norm_weights(G, weights, mask)
    nodes, root = _niceify(td)

    tables: list[dict[int, tuple[Fraction, tuple[int, ...]]]] = [None] * len(nodes)  # type: ignore

    def better(a, b):
        if b is None:
            return a
        if a[0] != b[0]:
            return a if a[0] > b[0] else b
        return a if a[1] < b[1] else b

    for idx, node in enumerate(nodes):
        bag = node.bag & mask
        if node.kind == "leaf":
            tables[idx] = {0: (Fraction(0), ())}
        elif node.kind == "introduce":
            child = tables[node.children[0]]
            v = node.vertex
            out: dict[int, tuple[Fraction, tuple[int, ...]]] = {}
            if (mask >> v) & 1 == 0:
                tables[idx] = dict(child)
                tables[node.children[0]] = None  # type: ignore
                continue
            for state, (val, wit) in child.items():
                out[state] = better((val, wit), out.get(state))
                if not (G.adj[v] & state):
                    ns = state | bit(v)
                    cand = (val + w[v], tuple(sorted(wit + (v,))))
                    out[ns] = better(cand, out.get(ns))
            tables[idx] = out
        elif node.kind == "forget":
            child = tables[node.children[0]]
            v = node.vertex
            out = {}
            for state, entry in child.items():
                ns = state & ~bit(v)
                out[ns] = better(entry, out.get(ns))
            tables[idx] = out
        else:  # join
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            out = {}
            for state, (lv, lw) in left.items():
                r = right.get(state)
                if r is None:
                    continue
                rv, rw = r
                shared = sum((w[v] for v in bits(state)), Fraction(0))
                cand = (lv + rv - shared, tuple(sorted(set(lw) | set(rw))))
                out[state] = better(cand, out.get(state))
            tables[idx] = out
        for c in node.children:
            tables[c] = None  # type: ignore

    final = tables[root]
    value, witness = final[0]
    chosen = frozenset(witness)
    if not G.is_stable(mask_of(chosen)):
        raise TalphaError("DP produced a non-stable witness")  # unreachable
    if sum((w[v] for v in chosen), Fraction(0)) != value:
        raise TalphaError("DP witness value mismatch")  # unreachable
    return MwisResult(chosen, value, "td-dp")
