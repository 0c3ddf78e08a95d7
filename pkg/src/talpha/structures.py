"""Detection and certification of forbidden induced configurations.

Covers the four-cycle, diamond, theta, pyramid, prism, holes, wheels with
their taxonomy (even / bug / twin / universal / line / proper), hub sets,
class-membership checks, and the classification of minimal connected
subgraphs attaching to three vertices.

Every witness re-verifies against its definition on construction; searches
are exhaustive unless a node budget interrupts them, in which case the
distinct UNKNOWN verdict is returned (never silently treated as absence).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .bitset import as_mask, bit, bits, bits_tuple, lowest_bit, mask_of, to_set
from .errors import AssertionFailed, NoConnector, TalphaError, WitnessError
from .graph import Graph, components_masks

THREE_PATH_KINDS = ("theta", "pyramid", "prism")
STRUCTURE_KINDS = ("c4", "diamond") + THREE_PATH_KINDS
WHEEL_FILTERS = ("any", "even", "non-bug", "proper")


class _Unknown:
    """Verdict for a search stopped by its budget."""

    __slots__ = ()

    def __repr__(self):
        return "UNKNOWN"

    def __bool__(self):
        raise TalphaError("UNKNOWN verdict must be handled explicitly")


UNKNOWN = _Unknown()


class Budget:
    """Deterministic search budget counted in expansion steps."""

    __slots__ = ("remaining",)

    def __init__(self, nodes: int | None = None):
        self.remaining = nodes

    def tick(self) -> None:
        if self.remaining is None:
            return
        if self.remaining <= 0:
            raise _Exhausted()
        self.remaining -= 1


class _Exhausted(Exception):
    pass


def _as_budget(budget) -> Budget:
    if budget is None or isinstance(budget, Budget):
        return budget if isinstance(budget, Budget) else Budget(None)
    return Budget(int(budget))


# -- witnesses --------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A role-labeled embedding of a configuration, verified on creation."""

    kind: str
    roles: tuple[tuple[str, object], ...]
    flags: tuple[tuple[str, object], ...] = ()

    def role(self, name: str):
        for k, v in self.roles:
            if k == name:
                return v
        raise KeyError(name)

    def flag(self, name: str) -> bool:
        for k, v in self.flags:
            if k == name:
                return v
        raise KeyError(name)

    def vertices(self) -> frozenset[int]:
        out: set[int] = set()

        def collect(x):
            if isinstance(x, int):
                out.add(x)
            else:
                for y in x:
                    collect(y)

        for _, v in self.roles:
            collect(v)
        return frozenset(out)

    def to_json(self) -> dict:
        def conv(x):
            if isinstance(x, int):
                return x
            return [conv(y) for y in x]

        return {
            "kind": self.kind,
            "roles": {k: conv(v) for k, v in self.roles},
            "flags": {k: v for k, v in self.flags},
            "verified": True,
        }

    # construction helpers; each verifies before returning

    @classmethod
    def c4(cls, G: Graph, a: int, b: int, c: int, d: int) -> "Witness":
        w = cls("c4", (("cycle", (a, b, c, d)),))
        w.verify(G)
        return w

    @classmethod
    def diamond(cls, G: Graph, c: int, d: int, a: int, b: int) -> "Witness":
        """Adjacent pair (c, d); nonadjacent pair (a, b)."""
        w = cls("diamond", (("adjacent_pair", (c, d)), ("nonadjacent_pair", (a, b))))
        w.verify(G)
        return w

    @classmethod
    def theta(cls, G: Graph, a: int, b: int, paths) -> "Witness":
        w = cls("theta", (("ends", (a, b)), ("paths", tuple(tuple(p) for p in paths))))
        w.verify(G)
        return w

    @classmethod
    def pyramid(cls, G: Graph, apex: int, base, paths) -> "Witness":
        w = cls("pyramid", (("apex", apex), ("base", tuple(base)),
                            ("paths", tuple(tuple(p) for p in paths))))
        w.verify(G)
        return w

    @classmethod
    def prism(cls, G: Graph, tri1, tri2, paths) -> "Witness":
        w = cls("prism", (("triangle1", tuple(tri1)), ("triangle2", tuple(tri2)),
                          ("paths", tuple(tuple(p) for p in paths))))
        w.verify(G)
        return w

    @classmethod
    def hole(cls, G: Graph, cycle) -> "Witness":
        w = cls("hole", (("cycle", tuple(cycle)),))
        w.verify(G)
        return w

    @classmethod
    def wheel(cls, G: Graph, cycle, hub: int) -> "Witness":
        flags = _wheel_flags(G, tuple(cycle), hub)
        w = cls("wheel", (("hole", tuple(cycle)), ("hub", hub)),
                tuple(sorted(flags.items())))
        w.verify(G)
        return w

    def verify(self, G: Graph) -> None:
        try:
            _verify_witness(self, G)
        except WitnessError:
            raise
        except Exception as exc:  # malformed roles are internal errors too
            raise WitnessError(f"malformed {self.kind} witness: {exc}") from exc


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise WitnessError(msg)


def _is_induced_path(G: Graph, seq: tuple[int, ...]) -> bool:
    if len(set(seq)) != len(seq):
        return False
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            adjacent = G.has_edge(u, seq[j])
            if adjacent != (j == i + 1):
                return False
    return True


def _induces_hole(G: Graph, vertices: set[int]) -> bool:
    if len(vertices) < 4:
        return False
    m = mask_of(vertices)
    for v in vertices:
        if (G.adj[v] & m).bit_count() != 2:
            return False
    return len(components_masks(G, m)) == 1


def _cycle_in_order(G: Graph, cycle: tuple[int, ...]) -> bool:
    k = len(cycle)
    if len(set(cycle)) != k or k < 4:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = G.has_edge(cycle[i], cycle[j])
            expected = (j == i + 1) or (i == 0 and j == k - 1)
            if adjacent != expected:
                return False
    return True


def _verify_witness(w: Witness, G: Graph) -> None:
    if w.kind == "c4":
        _check(_cycle_in_order(G, w.role("cycle")) and len(w.role("cycle")) == 4,
               "not an induced C4")
    elif w.kind == "diamond":
        c, d = w.role("adjacent_pair")
        a, b = w.role("nonadjacent_pair")
        _check(len({a, b, c, d}) == 4, "diamond vertices not distinct")
        _check(G.has_edge(c, d) and not G.has_edge(a, b), "diamond pair adjacency wrong")
        _check(all(G.has_edge(x, y) for x in (a, b) for y in (c, d)),
               "diamond missing cross edges")
    elif w.kind == "theta":
        a, b = w.role("ends")
        paths = w.role("paths")
        _check(len(paths) == 3, "theta needs three paths")
        _check(not G.has_edge(a, b), "theta ends must be nonadjacent")
        for p in paths:
            _check(p[0] == a and p[-1] == b and len(p) >= 3, "theta path endpoints")
            _check(_is_induced_path(G, p), "theta path not induced")
        for p, q in combinations(paths, 2):
            _check(set(p) & set(q) == {a, b}, "theta paths overlap")
            _check(_induces_hole(G, set(p) | set(q)), "theta path pair not a hole")
    elif w.kind == "pyramid":
        a = w.role("apex")
        base = w.role("base")
        paths = w.role("paths")
        _check(len(base) == 3 and G.is_clique(mask_of(base)), "pyramid base not a triangle")
        _check(a not in base, "apex inside base")
        long_paths = 0
        for p, b_i in zip(paths, base):
            _check(p[0] == a and p[-1] == b_i and len(p) >= 2, "pyramid path endpoints")
            _check(_is_induced_path(G, p), "pyramid path not induced")
            if len(p) >= 3:
                long_paths += 1
        _check(long_paths >= 2, "pyramid needs two paths of length >= 2")
        for p, q in combinations(paths, 2):
            _check(set(p) & set(q) == {a}, "pyramid paths overlap")
            _check(_induces_hole(G, set(p) | set(q)), "pyramid path pair not a hole")
    elif w.kind == "prism":
        t1 = w.role("triangle1")
        t2 = w.role("triangle2")
        paths = w.role("paths")
        _check(G.is_clique(mask_of(t1)) and G.is_clique(mask_of(t2)),
               "prism triangles not cliques")
        _check(not set(t1) & set(t2), "prism triangles intersect")
        for p, a_i, b_i in zip(paths, t1, t2):
            _check(p[0] == a_i and p[-1] == b_i and len(p) >= 2, "prism path endpoints")
            _check(_is_induced_path(G, p), "prism path not induced")
        for p, q in combinations(paths, 2):
            _check(not set(p) & set(q), "prism paths overlap")
            _check(_induces_hole(G, set(p) | set(q)), "prism path pair not a hole")
    elif w.kind == "hole":
        _check(_cycle_in_order(G, w.role("cycle")), "not an induced cycle of length >= 4")
    elif w.kind == "wheel":
        cycle = w.role("hole")
        hub = w.role("hub")
        _check(_cycle_in_order(G, cycle), "wheel hole not an induced cycle")
        _check(hub not in cycle, "hub lies on the hole")
        spokes = sum(1 for v in cycle if G.has_edge(hub, v))
        _check(spokes >= 3, "hub needs at least three neighbors on the hole")
        _check(dict(w.flags) == _wheel_flags(G, cycle, hub), "wheel flags wrong")
    else:
        raise WitnessError(f"unknown witness kind {w.kind!r}")


def _wheel_flags(G: Graph, cycle: tuple[int, ...], hub: int) -> dict[str, object]:
    k = len(cycle)
    spoke = [G.has_edge(hub, v) for v in cycle]
    count = sum(spoke)
    pairs = sum(1 for i in range(k) if spoke[i] and spoke[(i + 1) % k])
    three_consecutive = any(spoke[i - 1] and spoke[i] and spoke[(i + 1) % k]
                            for i in range(k))
    bug = count == 3 and pairs == 1
    twin = count == 3 and pairs == 2
    universal = count == k
    line = count == 4 and pairs == 2 and not three_consecutive
    return {
        "even": count % 2 == 0,
        "bug": bug,
        "twin": twin,
        "universal": universal,
        "line": line,
        "proper": not (bug or twin or universal),
        "spokes": count,  # type: ignore[dict-item]
    }


# -- hole enumeration --------------------------------------------------------


@dataclass(frozen=True)
class HoleEnumeration:
    holes: tuple[tuple[int, ...], ...]
    truncated: bool


def enumerate_holes(G: Graph, *, within: int | None = None, min_length: int = 4,
                    max_length: int | None = None, limit: int = 10 ** 6,
                    budget=None) -> HoleEnumeration:
    """All induced cycles of length >= 4 inside `within`, canonically ordered.

    Each hole appears once, rotated to start at its smallest vertex and
    oriented so the second vertex is smaller than the last. Enumeration
    stops after `limit` holes or when the budget runs out, with the
    truncation flagged.
    """
    mask = G.full_mask if within is None else as_mask(within)
    holes: list[tuple[int, ...]] = []
    truncated = False
    try:
        for h in _hole_search(G, mask, min_length, max_length, _as_budget(budget)):
            holes.append(h)
            if len(holes) >= limit:
                truncated = True
                break
    except _Exhausted:
        truncated = True
    return HoleEnumeration(tuple(holes), truncated)


def _hole_search(G: Graph, mask: int, min_length: int, max_length: int | None,
                 budget: Budget) -> Iterator[tuple[int, ...]]:
    """Yield holes one at a time in canonical order; raises _Exhausted."""

    def extend(path: list[int], pathmask: int) -> Iterator[tuple[int, ...]]:
        v = path[0]
        u = path[-1]
        interior = pathmask & ~bit(u) & ~bit(v)
        budget.tick()
        for w in bits(G.adj[u] & mask & ~pathmask):
            if w < v or (G.adj[w] & interior):
                continue
            if (G.adj[w] >> v) & 1:
                if (len(path) >= 3 and len(path) + 1 >= min_length and path[1] < w
                        and (max_length is None or len(path) + 1 <= max_length)):
                    yield tuple(path) + (w,)
            elif max_length is None or len(path) + 1 < max_length:
                path.append(w)
                yield from extend(path, pathmask | bit(w))
                path.pop()

    for v in bits(mask):
        for p1 in bits(G.adj[v] & mask):
            if p1 > v:
                yield from extend([v, p1], bit(v) | bit(p1))


# -- induced-path machinery for the three-path configurations ---------------


def _induced_paths_from(G: Graph, start: int, targets: int, allowed: int,
                        budget: Budget) -> Iterator[tuple[int, ...]]:
    """Induced paths inside `allowed` from `start` to a vertex of `targets`.

    Only the last vertex lies in `targets`; if `start` is itself a target
    the single-vertex path is the only result.
    """
    if not (allowed >> start) & 1:
        return
    if (targets >> start) & 1:
        yield (start,)
        return

    def extend(path: tuple[int, ...], pathmask: int) -> Iterator[tuple[int, ...]]:
        u = path[-1]
        budget.tick()
        older = pathmask & ~bit(u)
        for w in bits(G.adj[u] & allowed & ~pathmask):
            if G.adj[w] & older:
                continue
            if (targets >> w) & 1:
                yield path + (w,)
            else:
                yield from extend(path + (w,), pathmask | bit(w))

    yield from extend((start,), bit(start))


def _reaches(G: Graph, start: int, targets: int, allowed: int) -> bool:
    if not (allowed >> start) & 1:
        return False
    if (targets >> start) & 1:
        return True
    seen = bit(start)
    frontier = bit(start)
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        if nxt & targets & allowed:
            return True
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return False


def _closed_set_mask(G: Graph, m: int) -> int:
    nb = m
    for v in bits(m):
        nb |= G.adj[v]
    return nb


def _find_theta(G: Graph, mask: int, budget: Budget) -> Optional[Witness]:
    for a in bits(mask):
        na = G.adj[a] & mask
        if na.bit_count() < 3:
            continue
        for b in bits(mask & ~G.closed(a)):
            if b < a:
                continue
            budget.tick()
            targets = G.adj[b] & mask
            if not targets:
                continue
            cand = bits_tuple(na & ~bit(b))
            for x1, x2, x3 in combinations(cand, 3):
                if G.has_edge(x1, x2) or G.has_edge(x1, x3) or G.has_edge(x2, x3):
                    continue
                xs = (x1, x2, x3)
                base = mask & ~bit(a) & ~bit(b)
                ok = True
                for i in range(3):
                    allow = base & ~(na & ~bit(xs[i]))
                    for j in range(3):
                        if j != i:
                            allow &= ~G.closed(xs[j])
                    if not _reaches(G, xs[i], targets, allow):
                        ok = False
                        break
                if not ok:
                    continue
                found = _theta_middles(G, a, b, xs, base, na, targets, budget)
                if found is not None:
                    paths = [(a,) + m + (b,) for m in found]
                    return Witness.theta(G, a, b, paths)
    return None


def _theta_middles(G, a, b, xs, base, na, targets, budget):
    x1, x2, x3 = xs
    allow1 = base & ~(na & ~bit(x1)) & ~G.closed(x2) & ~G.closed(x3)
    for m1 in _induced_paths_from(G, x1, targets, allow1, budget):
        blocked1 = _closed_set_mask(G, mask_of(m1))
        allow2 = base & ~(na & ~bit(x2)) & ~G.closed(x3) & ~blocked1
        for m2 in _induced_paths_from(G, x2, targets, allow2, budget):
            blocked2 = _closed_set_mask(G, mask_of(m2))
            allow3 = base & ~(na & ~bit(x3)) & ~blocked1 & ~blocked2
            for m3 in _induced_paths_from(G, x3, targets, allow3, budget):
                return m1, m2, m3
    return None


def _triangles(G: Graph, mask: int) -> Iterator[tuple[int, int, int]]:
    for u in bits(mask):
        for v in bits(G.adj[u] & mask):
            if v <= u:
                continue
            for w in bits(G.adj[u] & G.adj[v] & mask):
                if w > v:
                    yield (u, v, w)


def _find_pyramid(G: Graph, mask: int, budget: Budget) -> Optional[Witness]:
    triangles = list(_triangles(G, mask))
    if not triangles:
        return None
    for a in bits(mask):
        na = G.adj[a] & mask
        if na.bit_count() < 3:
            continue
        for tri in triangles:
            if a in tri:
                continue
            budget.tick()
            tmask = mask_of(tri)
            if (na & tmask).bit_count() >= 2:
                continue
            found = _pyramid_paths(G, mask, a, tri, na, budget)
            if found is not None:
                return Witness.pyramid(G, a, tri, [(a,) + m for m in found])
    return None


def _pyramid_paths(G, mask, a, tri, na, budget):
    b1, b2, b3 = tri
    tmask = mask_of(tri)

    def cands(i):
        bi = tri[i]
        if (na >> bi) & 1:
            return (bi,)
        others = [tri[j] for j in range(3) if j != i]
        c = na & ~tmask
        for o in others:
            c &= ~G.adj[o]
        return bits_tuple(c)

    c1, c2, c3 = cands(0), cands(1), cands(2)
    for x1 in c1:
        for x2 in c2:
            if x2 == x1 or G.has_edge(x1, x2):
                continue
            for x3 in c3:
                if x3 in (x1, x2) or G.has_edge(x1, x3) or G.has_edge(x2, x3):
                    continue
                xs = (x1, x2, x3)
                found = _pyramid_middles(G, mask, a, tri, xs, na, budget)
                if found is not None:
                    return found
    return None


def _pyramid_middles(G, mask, a, tri, xs, na, budget):
    base = mask & ~bit(a)
    placed: list[tuple[int, ...]] = []

    def allowed_for(i: int) -> int:
        bi = tri[i]
        allow = base & ~(na & ~bit(xs[i]))
        for j in range(3):
            if j == i:
                continue
            bj = tri[j]
            if j < len(placed):
                mj = mask_of(placed[j])
                allow &= ~mj
                allow &= ~_closed_set_mask(G, mj & ~bit(bj))
                allow &= ~(G.adj[bj] & ~bit(bi))
            else:
                allow &= ~(G.adj[bj] & ~bit(bi)) & ~bit(bj)
                if xs[j] != bj:
                    allow &= ~G.closed(xs[j])
        return allow

    def place(i: int):
        if i == 3:
            yield tuple(placed)
            return
        for m in _induced_paths_from(G, xs[i], bit(tri[i]), allowed_for(i), budget):
            placed.append(m)
            yield from place(i + 1)
            placed.pop()

    for sol in place(0):
        return sol
    return None


def _find_prism(G: Graph, mask: int, budget: Budget) -> Optional[Witness]:
    triangles = list(_triangles(G, mask))
    for i, t1 in enumerate(triangles):
        t1mask = mask_of(t1)
        for t2 in triangles[i + 1:]:
            t2mask = mask_of(t2)
            if t1mask & t2mask:
                continue
            budget.tick()
            # cross edges must form a sub-matching or no assignment works
            if any((G.adj[v] & t2mask).bit_count() > 1 for v in t1):
                continue
            if any((G.adj[v] & t1mask).bit_count() > 1 for v in t2):
                continue
            for sigma in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
                ends = tuple(t2[s] for s in sigma)
                found = _prism_paths(G, mask, t1, ends, budget)
                if found is not None:
                    return Witness.prism(G, t1, ends, found)
    return None


def _prism_paths(G, mask, t1, ends, budget):
    t1mask = mask_of(t1)
    placed: list[tuple[int, ...]] = []

    def allowed_for(i: int, xi: int) -> int:
        allow = mask & ~t1mask & ~(G.adj[t1[i]] & ~bit(xi))
        for j in range(3):
            if j == i:
                continue
            allow &= ~G.adj[t1[j]]
            bj = ends[j]
            if j < len(placed):
                mj = mask_of(placed[j])
                allow &= ~mj
                allow &= ~_closed_set_mask(G, mj & ~bit(bj))
                allow &= ~(G.adj[bj] & ~bit(ends[i]))
            else:
                allow &= ~(G.adj[bj] & ~bit(ends[i])) & ~bit(bj)
        return allow

    def place(i: int):
        if i == 3:
            yield [(t1[j],) + placed[j] for j in range(3)]
            return
        for xi in bits_tuple(G.adj[t1[i]] & mask):
            allow = allowed_for(i, xi)
            for m in _induced_paths_from(G, xi, bit(ends[i]), allow, budget):
                placed.append(m)
                yield from place(i + 1)
                placed.pop()

    for sol in place(0):
        return sol
    return None


def _find_c4(G: Graph, mask: int) -> Optional[Witness]:
    for a in bits(mask):
        for c in bits(mask & ~G.closed(a)):
            if c < a:
                continue
            common = G.adj[a] & G.adj[c] & mask
            for b in bits(common):
                rest = common & ~G.closed(b)
                for d in bits(rest):
                    if d > b:
                        return Witness.c4(G, a, b, c, d)
    return None


def _find_diamond(G: Graph, mask: int) -> Optional[Witness]:
    for c in bits(mask):
        for d in bits(G.adj[c] & mask):
            if d < c:
                continue
            common = G.adj[c] & G.adj[d] & mask
            for a in bits(common):
                rest = common & ~G.closed(a)
                for b in bits(rest):
                    if b > a:
                        return Witness.diamond(G, c, d, a, b)
    return None


def find_structure(G: Graph, kind: str, *, within=None, budget=None):
    """Search for an induced configuration of the given kind.

    Returns a verified Witness, None (exhaustive absence), or UNKNOWN when
    the budget ran out first.
    """
    if kind not in STRUCTURE_KINDS:
        raise TalphaError(f"unknown structure kind {kind!r}")
    mask = G.full_mask if within is None else as_mask(within)
    b = _as_budget(budget)
    try:
        if kind == "c4":
            return _find_c4(G, mask)
        if kind == "diamond":
            return _find_diamond(G, mask)
        if kind == "theta":
            return _find_theta(G, mask, b)
        if kind == "pyramid":
            return _find_pyramid(G, mask, b)
        return _find_prism(G, mask, b)
    except _Exhausted:
        return UNKNOWN


def find_wheel(G: Graph, wheel_filter: str = "any", *, within=None, budget=None,
               hole_limit: int = 10 ** 6):
    """First wheel (in canonical hole order, then by hub id) matching the filter.

    Filters: any, even, non-bug, proper (neither bug, twin nor universal).
    """
    if wheel_filter not in WHEEL_FILTERS:
        raise TalphaError(f"unknown wheel filter {wheel_filter!r}")
    mask = G.full_mask if within is None else as_mask(within)
    b = _as_budget(budget)
    seen = 0
    try:
        for hole in _hole_search(G, mask, 4, None, b):
            hmask = mask_of(hole)
            for hub in bits(mask & ~hmask):
                if (G.adj[hub] & hmask).bit_count() < 3:
                    continue
                if _wheel_matches(_wheel_flags(G, hole, hub), wheel_filter):
                    return Witness.wheel(G, hole, hub)
            seen += 1
            if seen >= hole_limit:
                return UNKNOWN
    except _Exhausted:
        return UNKNOWN
    return None


def _wheel_matches(flags: dict, wheel_filter: str) -> bool:
    if wheel_filter == "any":
        return True
    if wheel_filter == "even":
        return flags["even"]
    if wheel_filter == "non-bug":
        return not flags["bug"]
    return flags["proper"]


# -- hub sets ----------------------------------------------------------------


@dataclass(frozen=True)
class HubSet:
    X: frozenset[int]
    hubs: frozenset[int]
    witnesses: tuple[tuple[int, Witness], ...]
    exhaustive: bool
    unknown: frozenset[int] = frozenset()

    def witness_for(self, hub: int) -> Witness:
        for h, w in self.witnesses:
            if h == hub:
                return w
        raise KeyError(hub)


def hub_set(G: Graph, X, *, budget=None, hole_limit: int = 10 ** 6) -> HubSet:
    """Vertices of X that center a non-bug wheel whose hole lies inside X."""
    xmask = as_mask(X)
    found: dict[int, Witness] = {}
    b = _as_budget(budget)
    truncated = False
    seen = 0
    try:
        for hole in _hole_search(G, xmask, 4, None, b):
            hmask = mask_of(hole)
            for hub in bits(xmask & ~hmask):
                if hub in found:
                    continue
                if (G.adj[hub] & hmask).bit_count() < 3:
                    continue
                if not _wheel_flags(G, hole, hub)["bug"]:
                    found[hub] = Witness.wheel(G, hole, hub)
            seen += 1
            if seen >= hole_limit:
                truncated = True
                break
    except _Exhausted:
        truncated = True
    hubs = frozenset(found)
    unknown = to_set(xmask) - hubs if truncated else frozenset()
    return HubSet(to_set(xmask), hubs, tuple(sorted(found.items())), not truncated,
                  unknown)


# -- class membership --------------------------------------------------------

CLASS_KINDS = {
    "C": ("c4", "diamond", "theta", "pyramid", "prism", "even-wheel"),
    "C*": ("c4", "diamond", "theta", "prism", "even-wheel"),
}


@dataclass(frozen=True)
class ClassReport:
    variant: str
    status: str  # "in" | "out" | "unknown"
    verdicts: tuple[tuple[str, str], ...]
    witness: Optional[Witness]

    def verdict(self, kind: str) -> str:
        return dict(self.verdicts)[kind]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "status": self.status,
            "verdicts": dict(self.verdicts),
            "witness": self.witness.to_json() if self.witness else None,
        }


def check_class(G: Graph, variant: str = "C", *, within=None, budget=None,
                stop_at_first: bool = False) -> ClassReport:
    """Membership report for the forbidden-structure class.

    Per-kind verdicts are "in", "out" or "unknown"; the overall status is
    "out" with the first witness if any detector fires, "unknown" if some
    search hit its budget without a witness, else "in".
    """
    if variant not in CLASS_KINDS:
        raise TalphaError(f"unknown class variant {variant!r}")
    verdicts: list[tuple[str, str]] = []
    witness = None
    any_unknown = False
    for kind in CLASS_KINDS[variant]:
        if kind == "even-wheel":
            res = find_wheel(G, "even", within=within, budget=budget)
        else:
            res = find_structure(G, kind, within=within, budget=budget)
        if res is UNKNOWN:
            verdicts.append((kind, "unknown"))
            any_unknown = True
        elif res is None:
            verdicts.append((kind, "in"))
        else:
            verdicts.append((kind, "out"))
            if witness is None:
                witness = res
            if stop_at_first:
                break
    status = "out" if witness is not None else ("unknown" if any_unknown else "in")
    return ClassReport(variant, status, tuple(verdicts), witness)


# -- minimal connectors (three-vertex attachments) ---------------------------


@dataclass(frozen=True)
class ConnectorOutcome:
    form: str  # "path" | "center" | "triangle"
    H: frozenset[int]
    detail: tuple[tuple[str, object], ...]

    def get(self, name):
        return dict(self.detail)[name]


def classify_minimal_connector(G: Graph, x1: int, x2: int, x3: int, *,
                               within=None) -> ConnectorOutcome:
    """Shrink a connected attachment of {x1,x2,x3} to minimality and classify it.

    Deletion is greedy in descending vertex order, re-checking connectivity
    and attachment after each removal, so the result is inclusion-minimal.
    """
    if len({x1, x2, x3}) != 3:
        raise TalphaError("x1, x2, x3 must be distinct")
    xs = (x1, x2, x3)
    mask = G.full_mask if within is None else as_mask(within)
    region = mask & ~mask_of(xs)

    def qualifies(comp: int) -> bool:
        return all(G.adj[x] & comp for x in xs)

    H = None
    for comp in components_masks(G, region):
        if qualifies(comp):
            H = comp
            break
    if H is None:
        raise NoConnector("no connected subgraph meets all three neighborhoods")

    shrinking = True
    while shrinking:
        shrinking = False
        for v in sorted(bits(H), reverse=True):
            rest = H & ~bit(v)
            for comp in components_masks(G, rest):
                if qualifies(comp):
                    H = comp
                    shrinking = True
                    break
            if shrinking:
                break

    outcome = _classify_connector(G, H, xs)
    if outcome is None:
        raise AssertionFailed("connector-outcome", {"H": bits_tuple(H), "xs": xs})
    return outcome


def _path_order(G: Graph, comp: int) -> Optional[tuple[int, ...]]:
    """Vertices of comp in path order if G[comp] is a path, else None."""
    vs = bits_tuple(comp)
    if len(vs) == 1:
        return vs
    degs = {v: (G.adj[v] & comp).bit_count() for v in vs}
    ends = [v for v in vs if degs[v] == 1]
    if len(ends) != 2 or any(degs[v] > 2 for v in vs):
        return None
    order = [ends[0]]
    seen = bit(ends[0])
    while len(order) < len(vs):
        nxt = G.adj[order[-1]] & comp & ~seen
        if not nxt:
            return None
        v = lowest_bit(nxt)
        order.append(v)
        seen |= bit(v)
    return tuple(order)


def _classify_connector(G: Graph, H: int, xs) -> Optional[ConnectorOutcome]:
    x1, x2, x3 = xs
    hset = to_set(H)

    # outcome "path": H is a path joining two of the x's, third attaches aside
    order = _path_order(G, H)
    if order is not None:
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            for a, b in ((i, j), (j, i)):
                na = G.adj[xs[a]] & H
                nb = G.adj[xs[b]] & H
                if na == bit(order[0]) and nb == bit(order[-1]):
                    nk = G.adj[xs[k]] & H
                    nk_vs = bits_tuple(nk)
                    two_nonadj = any(not G.has_edge(u, v)
                                     for u, v in combinations(nk_vs, 2))
                    two_adj = len(nk_vs) == 2 and G.has_edge(*nk_vs)
                    if two_nonadj or two_adj:
                        hole_form = G.has_edge(xs[a], xs[b])
                        if hole_form and len(order) < 2:
                            continue
                        return ConnectorOutcome(
                            "path", hset,
                            (("path", order), ("from", xs[a]), ("to", xs[b]),
                             ("aside", xs[k]), ("hole_form", hole_form),
                             ("aside_two_adjacent", two_adj)))

    # outcome "center": single vertex a with three paths to the x's
    for a in sorted(hset):
        paths = _anchored_paths(G, H, (a, a, a), xs)
        if paths is not None:
            return ConnectorOutcome("center", hset, (("center", a), ("paths", paths)))

    # outcome "triangle": triangle a1a2a3 with three disjoint paths to the x's
    for tri in _triangles(G, H):
        for corners in ((tri[0], tri[1], tri[2]), (tri[0], tri[2], tri[1]),
                        (tri[1], tri[0], tri[2]), (tri[1], tri[2], tri[0]),
                        (tri[2], tri[0], tri[1]), (tri[2], tri[1], tri[0])):
            paths = _anchored_paths(G, H, corners, xs)
            if paths is None:
                continue
            ok = all(not G.has_edge(corners[j], xs[i])
                     for i in range(3) for j in range(3) if i != j)
            if ok:
                return ConnectorOutcome(
                    "triangle", hset, (("triangle", corners), ("paths", paths)))
    return None


def _anchored_paths(G: Graph, H: int, anchors, xs):
    """Three paths anchor_i .. x_i partitioning H, pairwise clean.

    anchors is either one center repeated or the three corners of a
    triangle matched positionally with the x's. Returns the full path
    tuples or None when the pattern does not fit.
    """
    amask = mask_of(anchors)
    rest = H & ~amask
    comps = components_masks(G, rest)
    if len(comps) > 3:
        return None
    assigned: list[Optional[tuple[int, ...]]] = [None, None, None]
    for comp in comps:
        order = _path_order(G, comp)
        if order is None:
            return None
        attach_x = [i for i in range(3) if G.adj[xs[i]] & comp]
        if len(attach_x) != 1:
            return None
        i = attach_x[0]
        if assigned[i] is not None:
            return None
        anchor = anchors[i]
        # only this path's anchor may touch the component
        for a in set(anchors):
            if a != anchor and G.adj[a] & comp:
                return None
        fwd = order if (G.adj[anchor] >> order[0]) & 1 else order[::-1]
        if (G.adj[anchor] & comp) != bit(fwd[0]):
            return None
        if (G.adj[xs[i]] & comp) != bit(fwd[-1]):
            return None
        if G.has_edge(anchor, xs[i]):
            return None  # chord across the whole path
        assigned[i] = (anchor,) + fwd + (xs[i],)
    for i in range(3):
        if assigned[i] is None:
            if not G.has_edge(anchors[i], xs[i]):
                return None
            assigned[i] = (anchors[i], xs[i])
    return tuple(assigned)  # type: ignore[return-value]
