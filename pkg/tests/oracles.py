"""Independent reference implementations used as test oracles.

These are written from the definitions (subset enumeration, degree
analysis, plain backtracking) and deliberately share no code with the
library's optimized search paths.
"""

from fractions import Fraction
from itertools import combinations

from talpha.graph import Graph


def _deg_in(G, v, S):
    return sum(1 for u in S if u != v and G.has_edge(u, v))


def _connected_subset(G, S):
    S = set(S)
    if not S:
        return True
    seen = {next(iter(sorted(S)))}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for u in S:
            if u not in seen and G.has_edge(u, v):
                seen.add(u)
                frontier.append(u)
    return seen == S


def _components_of(G, S):
    S = set(S)
    out = []
    while S:
        v = min(S)
        comp = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for u in list(S):
                if u not in comp and G.has_edge(u, x):
                    comp.add(u)
                    frontier.append(u)
        out.append(frozenset(comp))
        S -= comp
    return out


def is_hole_set(G, S):
    S = set(S)
    return (len(S) >= 4 and _connected_subset(G, S)
            and all(_deg_in(G, v, S) == 2 for v in S))


def is_c4_set(G, S):
    return len(set(S)) == 4 and is_hole_set(G, S)


def is_diamond_set(G, S):
    S = sorted(set(S))
    if len(S) != 4:
        return False
    edges = sum(1 for u, v in combinations(S, 2) if G.has_edge(u, v))
    degs = sorted(_deg_in(G, v, S) for v in S)
    return edges == 5 and degs == [2, 2, 3, 3]


def _path_components(G, S, removed):
    comps = _components_of(G, set(S) - set(removed))
    for comp in comps:
        if any(_deg_in(G, v, comp) > 2 for v in comp):
            return None
        internal = sum(_deg_in(G, v, comp) for v in comp) // 2
        if internal != len(comp) - 1:
            return None
    return comps


def is_theta_set(G, S):
    S = set(S)
    deg3 = [v for v in S if _deg_in(G, v, S) == 3]
    if len(deg3) != 2 or any(_deg_in(G, v, S) != 2 for v in S if v not in deg3):
        return False
    a, b = deg3
    if G.has_edge(a, b) or not _connected_subset(G, S):
        return False
    comps = _path_components(G, S, (a, b))
    if comps is None or len(comps) != 3:
        return False
    for comp in comps:
        if sum(1 for v in comp if G.has_edge(a, v)) != 1:
            return False
        if sum(1 for v in comp if G.has_edge(b, v)) != 1:
            return False
    return True


def is_pyramid_set(G, S):
    S = set(S)
    deg3 = [v for v in S if _deg_in(G, v, S) == 3]
    if len(deg3) != 4 or any(_deg_in(G, v, S) != 2 for v in S if v not in deg3):
        return False
    for apex in deg3:
        base = [v for v in deg3 if v != apex]
        if not all(G.has_edge(u, v) for u, v in combinations(base, 2)):
            continue
        if sum(1 for v in base if G.has_edge(apex, v)) > 1:
            continue
        comps = _path_components(G, S, base + [apex])
        if comps is None or len(comps) > 3:
            continue
        used = set()
        ok = True
        for comp in comps:
            if sum(1 for v in comp if G.has_edge(apex, v)) != 1:
                ok = False
                break
            touching = [b for b in base
                        if sum(1 for v in comp if G.has_edge(b, v)) > 0]
            if len(touching) != 1 or touching[0] in used:
                ok = False
                break
            if sum(1 for v in comp if G.has_edge(touching[0], v)) != 1:
                ok = False
                break
            used.add(touching[0])
        if not ok:
            continue
        for b in base:
            if b not in used and not G.has_edge(apex, b):
                ok = False
        if ok:
            return True
    return False


def is_prism_set(G, S):
    S = set(S)
    deg3 = [v for v in S if _deg_in(G, v, S) == 3]
    if len(deg3) != 6 or any(_deg_in(G, v, S) != 2 for v in S if v not in deg3):
        return False
    triangles = [t for t in combinations(sorted(deg3), 3)
                 if all(G.has_edge(u, v) for u, v in combinations(t, 2))]
    for t1, t2 in combinations(triangles, 2):
        if set(t1) & set(t2):
            continue
        if set(t1) | set(t2) != set(deg3):
            continue
        comps = _path_components(G, S, t1 + t2)
        if comps is None or len(comps) > 3:
            continue
        matched = set()
        ok = True
        for comp in comps:
            ta = [a for a in t1 if any(G.has_edge(a, v) for v in comp)]
            tb = [b for b in t2 if any(G.has_edge(b, v) for v in comp)]
            if len(ta) != 1 or len(tb) != 1:
                ok = False
                break
            if sum(1 for v in comp if G.has_edge(ta[0], v)) != 1:
                ok = False
                break
            if sum(1 for v in comp if G.has_edge(tb[0], v)) != 1:
                ok = False
                break
            matched.add((ta[0], tb[0]))
        if not ok:
            continue
        free_a = [a for a in t1 if a not in {x for x, _ in matched}]
        free_b = [b for b in t2 if b not in {y for _, y in matched}]
        direct = [(a, b) for a in free_a for b in free_b if G.has_edge(a, b)]
        if len({a for a, _ in matched | set(direct)}) != 3:
            continue
        if len({b for _, b in matched | set(direct)}) != 3:
            continue
        cross = sum(1 for a in t1 for b in t2 if G.has_edge(a, b))
        if cross != len(direct):
            continue
        return True
    return False


_SET_CHECKS = {
    "c4": is_c4_set,
    "diamond": is_diamond_set,
    "theta": is_theta_set,
    "pyramid": is_pyramid_set,
    "prism": is_prism_set,
}


def contains_structure(G, kind):
    """Exhaustive subset-enumeration detector."""
    check = _SET_CHECKS[kind]
    verts = list(range(G.n))
    min_size = {"c4": 4, "diamond": 4, "theta": 5, "pyramid": 6, "prism": 6}[kind]
    for size in range(min_size, G.n + 1):
        for S in combinations(verts, size):
            if check(G, S):
                return True
    return False


def wheel_exists(G, even_only=False):
    verts = list(range(G.n))
    for size in range(5, G.n + 1):
        for S in combinations(verts, size):
            for w in S:
                rest = [v for v in S if v != w]
                spokes = sum(1 for v in rest if G.has_edge(w, v))
                if spokes >= 3 and (spokes % 2 == 0 or not even_only):
                    if is_hole_set(G, rest):
                        return True
    return False


def all_holes(G):
    out = []
    for size in range(4, G.n + 1):
        for S in combinations(range(G.n), size):
            if is_hole_set(G, S):
                out.append(frozenset(S))
    return out


def brute_alpha(G, S=None):
    verts = sorted(S) if S is not None else list(range(G.n))
    best = 0
    for size in range(len(verts), 0, -1):
        if size <= best:
            break
        for sub in combinations(verts, size):
            if all(not G.has_edge(u, v) for u, v in combinations(sub, 2)):
                best = max(best, size)
                break
    return best


def brute_chromatic(G, S=None):
    verts = sorted(S) if S is not None else list(range(G.n))
    if not verts:
        return 0
    for k in range(1, len(verts) + 1):
        colors = {}

        def assign(i):
            if i == len(verts):
                return True
            v = verts[i]
            for c in range(k):
                if all(colors.get(u) != c for u in verts
                       if u in colors and G.has_edge(u, v)):
                    colors[v] = c
                    if assign(i + 1):
                        return True
                    del colors[v]
            return False

        if assign(0):
            return k
    return len(verts)


def brute_cover_number(G, S=None):
    verts = sorted(S) if S is not None else list(range(G.n))
    comp = Graph(G.n, [(u, v) for u in verts for v in verts
                       if u < v and not G.has_edge(u, v)])
    return brute_chromatic(comp, verts)


def mwis_exhaustive(G, weights):
    best = Fraction(-1)
    best_set = None
    verts = list(range(G.n))
    for size in range(G.n + 1):
        for sub in combinations(verts, size):
            if all(not G.has_edge(u, v) for u, v in combinations(sub, 2)):
                val = sum((Fraction(weights[v]) for v in sub), Fraction(0))
                if val > best or (val == best and (best_set is None or sub < best_set)):
                    best = val
                    best_set = sub
    return best, frozenset(best_set or ())


def min_balanced_separators(G, w, c):
    """All minimum-cardinality balanced separators (exhaustive)."""
    verts = list(range(G.n))
    for size in range(G.n + 1):
        found = []
        for sub in combinations(verts, size):
            rest = set(verts) - set(sub)
            if all(w.weight(comp) <= c for comp in _components_of_masked(G, rest)):
                found.append(frozenset(sub))
        if found:
            return found
    return []


def _components_of_masked(G, S):
    from talpha.bitset import mask_of

    return [mask_of(comp) for comp in _components_of(G, S)]


def all_star_cutset_components(G):
    """Components achievable from any star cutset (center inside the cutset)."""
    out = set()
    for v in range(G.n):
        nbrs = [u for u in range(G.n) if G.has_edge(u, v)]
        for r in range(len(nbrs) + 1):
            for extra in combinations(nbrs, r):
                C = set(extra) | {v}
                rest = set(range(G.n)) - C
                comps = _components_of(G, rest)
                if len(comps) >= 2:
                    out.update(comps)
    return out


def clique_cutset_exists(G):
    verts = list(range(G.n))
    for size in range(1, G.n):
        for sub in combinations(verts, size):
            if all(G.has_edge(u, v) for u, v in combinations(sub, 2)):
                if len(_components_of(G, set(verts) - set(sub))) >= 2:
                    return True
    return False


def is_chordal(G, S):
    """Simplicial elimination test."""
    live = set(S)
    while live:
        simp = None
        for v in sorted(live):
            nb = [u for u in live if u != v and G.has_edge(u, v)]
            if all(G.has_edge(a, b) for a, b in combinations(nb, 2)):
                simp = v
                break
        if simp is None:
            return False
        live.remove(simp)
    return True


def brute_ta(G, guard=7):
    """Exact tree-independence by enumerating chordal supergraphs."""
    if G.n > guard:
        raise ValueError("brute_ta guard exceeded")
    if G.n == 0:
        return 0
    missing = [(u, v) for u in range(G.n) for v in range(u + 1, G.n)
               if not G.has_edge(u, v)]
    best = None
    for r in range(len(missing) + 1):
        for extra in combinations(missing, r):
            H = Graph(G.n, G.edges() + list(extra))
            if not is_chordal(H, range(G.n)):
                continue
            val = 0
            for size in range(G.n, 0, -1):
                for sub in combinations(range(G.n), size):
                    if all(H.has_edge(a, b) for a, b in combinations(sub, 2)):
                        val = max(val, brute_alpha(G, sub))
            if best is None or val < best:
                best = val
    return best
