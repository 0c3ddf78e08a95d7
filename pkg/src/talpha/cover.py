"""Exact independence/clique/cover numbers and constructive clique covers.

The branch-and-bound solvers run on bitmask state with greedy clique-cover
pruning and deterministic branching, so results (and witnesses) are
reproducible. The C4-free clique cover is constructive: it buckets every
vertex by its one or two smallest neighbors inside a maximum stable set,
which keeps the quadratic-in-alpha part count guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .errors import NotC4Free, TalphaError, TooLarge
from .graph import Graph

ALPHA_GUARD = 40
CHI_GUARD = 20


def greedy_clique_cover(G: Graph, within=None) -> list[frozenset[int]]:
    """Partition into cliques by greedy extension; valid but not minimum."""
    mask = G.full_mask if within is None else as_mask(within)
    parts = []
    rest = mask
    while rest:
        v = lowest_bit(rest)
        clique = bit(v)
        cand = G.adj[v] & rest
        while cand:
            u = lowest_bit(cand)
            clique |= bit(u)
            cand &= G.adj[u]
        parts.append(to_set(clique))
        rest &= ~clique
    return parts


def _greedy_cover_count(adj, mask: int) -> int:
    count = 0
    rest = mask
    while rest:
        v = lowest_bit(rest)
        clique = bit(v)
        cand = adj[v] & rest
        while cand:
            u = lowest_bit(cand)
            clique |= bit(u)
            cand &= adj[u]
        rest &= ~clique
        count += 1
    return count


def alpha(G: Graph, within=None) -> int:
    """Exact independence number of G[within] by branch and bound."""
    mask = G.full_mask if within is None else as_mask(within)
    return _alpha(G.adj, mask)


def _alpha(adj, mask: int) -> int:
    best = 0

    def rec(m: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if not m:
            return
        if size + _greedy_cover_count(adj, m) <= best:
            return
        # dominance: vertices of degree <= 1 in m always enter an optimum
        while m:
            picked = False
            for v in bits(m):
                if (adj[v] & m).bit_count() <= 1:
                    m &= ~(adj[v] | bit(v))
                    size += 1
                    if size > best:
                        best = size
                    picked = True
                    break
            if not picked:
                break
        if not m:
            return
        if size + _greedy_cover_count(adj, m) <= best:
            return
        # branch on the lowest-degree vertex (deterministic)
        v = min(bits(m), key=lambda u: ((adj[u] & m).bit_count(), u))
        rec(m & ~(adj[v] | bit(v)), size + 1)
        rec(m & ~bit(v), size)

    rec(mask, 0)
    return best


def maximum_stable_set(G: Graph, within=None) -> frozenset[int]:
    """Lexicographically least maximum stable set of G[within]."""
    mask = G.full_mask if within is None else as_mask(within)
    target = _alpha(G.adj, mask)
    return to_set(stable_set_of_size(G, target, within=mask))


def stable_set_of_size(G: Graph, k: int, within=None) -> int:
    """Lexicographically least stable set of size k, as a mask.

    Greedy by ascending vertex id, validating feasibility with exact alpha
    at each step. Raises TalphaError when no stable set of size k exists.
    """
    mask = G.full_mask if within is None else as_mask(within)
    if _alpha(G.adj, mask) < k:
        raise TalphaError(f"no stable set of size {k}")
    chosen = 0
    avail = mask
    while chosen.bit_count() < k:
        for v in bits(avail):
            rest = avail & ~(G.adj[v] | bit(v))
            if 1 + _alpha(G.adj, rest) >= k - chosen.bit_count():
                chosen |= bit(v)
                avail = rest
                break
        else:
            raise TalphaError("stable set search failed")  # unreachable
    return chosen


def omega(G: Graph, within=None) -> int:
    mask = G.full_mask if within is None else as_mask(within)
    comp = _complement_adj(G, mask)
    return _alpha(comp, mask)


def _complement_adj(G: Graph, mask: int):
    comp = [0] * G.n
    for v in bits(mask):
        comp[v] = mask & ~G.adj[v] & ~bit(v)
    return comp


def chromatic_number(G: Graph, within=None, guard: int = CHI_GUARD) -> int:
    """Exact chromatic number by backtracking with symmetry breaking."""
    mask = G.full_mask if within is None else as_mask(within)
    k = mask.bit_count()
    if k > guard:
        raise TooLarge(f"chromatic guard {guard} exceeded ({k} vertices)")
    if k == 0:
        return 0
    verts = bits_tuple(mask)
    order = sorted(verts, key=lambda v: (-(G.adj[v] & mask).bit_count(), v))
    best = len(_greedy_coloring(G, order, mask))
    lower = omega(G, mask)
    if lower == best:
        return best

    colors = {v: -1 for v in order}

    def rec(i: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if i == len(order):
            best = used
            return
        v = order[i]
        forbidden = 0
        for u in bits(G.adj[v] & mask):
            if colors[u] >= 0:
                forbidden |= bit(colors[u])
        for c in range(min(used + 1, best - 1)):
            if (forbidden >> c) & 1:
                continue
            colors[v] = c
            rec(i + 1, max(used, c + 1))
            colors[v] = -1
            if best == lower:
                return

    rec(0, 0)
    return best


def _greedy_coloring(G: Graph, order, mask: int) -> list[int]:
    assigned: dict[int, int] = {}
    classes: list[int] = []
    for v in order:
        forbidden = {assigned[u] for u in bits(G.adj[v] & mask) if u in assigned}
        for c in range(len(classes) + 1):
            if c not in forbidden:
                assigned[v] = c
                if c == len(classes):
                    classes.append(0)
                break
    return classes


def clique_cover_number(G: Graph, within=None, guard: int = CHI_GUARD) -> int:
    """Exact minimum number of cliques partitioning G[within]."""
    mask = G.full_mask if within is None else as_mask(within)
    sub, old = G.subgraph(mask)
    return chromatic_number(sub.complement(), guard=guard)


def exact_invariants(G: Graph, *, alpha_guard: int = ALPHA_GUARD,
                     chi_guard: int = CHI_GUARD) -> tuple[int, int, int]:
    """(alpha, omega, clique cover number), all exact, guarded by size."""
    if G.n > alpha_guard:
        raise TooLarge(f"alpha/omega guard {alpha_guard} exceeded (n={G.n})")
    a = alpha(G)
    w = omega(G)
    if G.n > chi_guard:
        raise TooLarge(f"cover guard {chi_guard} exceeded (n={G.n})")
    cc = clique_cover_number(G)
    return a, w, cc


# -- maximal cliques ---------------------------------------------------------


def maximal_cliques(G: Graph, within=None) -> list[frozenset[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), canonically ordered."""
    mask = G.full_mask if within is None else as_mask(within)
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(bits(pivot_pool), key=lambda u: ((G.adj[u] & p).bit_count(), -u))
        for v in bits(p & ~G.adj[pivot]):
            bk(r | bit(v), p & G.adj[v], x & G.adj[v])
            p &= ~bit(v)
            x |= bit(v)

    if mask:
        bk(0, mask, 0)
    return sorted((to_set(c) for c in out), key=sorted)


# -- clique covers -----------------------------------------------------------


@dataclass(frozen=True)
class CliqueCover:
    """An ordered partition of a vertex set into cliques."""

    cliques: tuple[frozenset[int], ...]
    covered: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.cliques)

    def verify(self, G: Graph) -> None:
        seen: set[int] = set()
        for q in self.cliques:
            if not G.is_clique(mask_of(q)):
                raise TalphaError(f"cover part {sorted(q)} is not a clique")
            if seen & q:
                raise TalphaError("cover parts overlap")
            seen |= q
        if seen != set(self.covered):
            raise TalphaError("cover does not partition the covered set")

    def to_json(self, alpha_lower_bound: int | None = None) -> dict:
        return {
            "cliques": [sorted(q) for q in self.cliques],
            "size": self.size,
            "alpha_lower_bound": alpha_lower_bound,
        }


def cliques_through(G: Graph, v: int, within: int) -> list[int]:
    """Maximal cliques of G[within] containing v, largest first, as masks."""
    sub = G.adj[v] & within

    def grow(clique: int, cand: int):
        if not cand:
            yield clique
            return
        u = cand & -cand
        uu = u.bit_length() - 1
        yield from grow(clique | u, cand & G.adj[uu])
        yield from grow(clique, cand & ~u)

    return sorted(set(grow(bit(v), sub)), key=lambda c: (-c.bit_count(), c))


def exact_cover_parts(G: Graph, target: int, size: int) -> list[frozenset[int]]:
    """An explicit clique partition of `target` with `size` parts.

    `size` must be feasible (the exact cover number); built greedily by
    committing, at each step, a clique through the smallest vertex that
    keeps the remainder coverable.
    """
    parts: list[frozenset[int]] = []
    rest = target
    remaining = size
    while rest:
        v = lowest_bit(rest)
        piece = bit(v)
        for clique in cliques_through(G, v, rest):
            tail = rest & ~clique
            if tail == 0 or clique_cover_number(G, within=tail) <= remaining - 1:
                piece = clique
                break
        parts.append(to_set(piece))
        rest &= ~piece
        remaining -= 1
    return parts


def cover_at_most(G: Graph, target: int, limit: int,
                  pieces: tuple[int, ...] = ()) -> list[frozenset[int]] | None:
    """A clique partition of `target` with at most `limit` parts, or None.

    Tries the supplied pieces first (intersected with the target), then a
    greedy partition, then the exact minimum when the set is small.
    """
    if target == 0:
        return []
    candidates = []
    if pieces:
        parts = []
        rest = target
        for p in pieces:
            q = p & rest
            if q:
                parts.append(q)
                rest &= ~q
        if rest == 0 and all(G.is_clique(p) for p in parts):
            candidates.append([to_set(p) for p in parts])
    candidates.append(greedy_clique_cover(G, within=target))
    best = min(candidates, key=len)
    if len(best) <= limit:
        return list(best)
    if target.bit_count() <= 18:
        need = clique_cover_number(G, within=target)
        if need <= limit:
            return exact_cover_parts(G, target, need)
    return None


def clique_cover_c4free(G: Graph, within=None) -> CliqueCover:
    """Clique cover of a C4-free graph with at most C(alpha+1, 2) parts.

    Buckets: for a maximum stable set S, a vertex with exactly one neighbor
    s_i in S joins the bucket of s_i (a clique, else S was not maximum);
    a vertex with two or more neighbors in S joins the bucket of its two
    smallest, a clique by C4-freeness.
    """
    from .structures import find_structure

    mask = G.full_mask if within is None else as_mask(within)
    c4 = find_structure(G, "c4", within=mask)
    if c4 is not None:
        raise NotC4Free(c4)

    if not mask:
        return CliqueCover((), frozenset())
    smask = stable_set_of_size(G, _alpha(G.adj, mask), within=mask)
    s_list = bits_tuple(smask)
    index = {s: i for i, s in enumerate(s_list)}
    singles: dict[int, int] = {s: bit(s) for s in s_list}
    pairs: dict[tuple[int, int], int] = {}
    for v in bits(mask & ~smask):
        nbrs = bits_tuple(G.adj[v] & smask)
        if not nbrs:
            raise TalphaError("stable set was not maximum")  # unreachable
        if len(nbrs) == 1:
            singles[nbrs[0]] |= bit(v)
        else:
            key = (index[nbrs[0]], index[nbrs[1]])
            pairs[key] = pairs.get(key, 0) | bit(v)
    parts = [singles[s] for s in s_list]
    parts += [pairs[k] for k in sorted(pairs)]
    cover = CliqueCover(tuple(to_set(p) for p in parts), to_set(mask))
    cover.verify(G)
    a = len(s_list)
    if cover.size > comb(a + 1, 2):
        raise TalphaError("cover exceeded its guaranteed bound")  # unreachable
    return cover
