"""Constellations: a stable set S attached to a family of disjoint paths.

A route between x, y in S is an induced path x - L[a..b] - y whose interior
is a segment of one constellation path.  Because S is stable, "a neighbour
in R" and "a neighbour in the interior of R" coincide for any third vertex
of S; both readings are exposed through ``interior_only`` for
completeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import CapExceeded, PreconditionError, TooManyOrders
from .graph import Graph, bits, component_masks, is_induced_path, is_stable_set, to_mask
from .structures import OK, Check, fail

ROUTE_CAP = 10**6
MAX_ORDER_SEARCH = 8


@dataclass(frozen=True)
class Constellation:
    graph: Graph
    S: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    order: tuple[int, ...] | None = None

    @property
    def s(self) -> int:
        return len(self.S)

    @property
    def l(self) -> int:
        return len(self.paths)

    def vertex_mask(self) -> int:
        return to_mask(self.S) | to_mask(v for p in self.paths for v in p)

    def with_order(self, order: Sequence[int] | None) -> "Constellation":
        return Constellation(self.graph, self.S, self.paths, None if order is None else tuple(order))


@dataclass(frozen=True)
class Route:
    path: tuple[int, ...]
    path_index: int

    @property
    def ends(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]

    @property
    def length(self) -> int:
        return len(self.path) - 1


def verify_constellation(G: Graph, c: Constellation) -> Check:
    S = list(c.S)
    if not S:
        return fail("S is empty")
    if len(set(S)) != len(S) or any(not (0 <= v < G.n) for v in S):
        return fail("S malformed")
    if not is_stable_set(G, S):
        return fail("S is not stable")
    smask = to_mask(S)
    lmask = 0
    for i, p in enumerate(c.paths):
        if not p or not is_induced_path(G, p):
            return fail(f"path {i} is not a path in G")
        pm = to_mask(p)
        if pm & (lmask | smask):
            return fail(f"path {i} overlaps S or another path")
        lmask |= pm
    comps = sorted(component_masks(G, lmask))
    if comps != sorted(to_mask(p) for p in c.paths):
        return fail("paths are not exactly the components after removing S")
    for x in S:
        for i, p in enumerate(c.paths):
            if not G.adj[x] & to_mask(p):
                return fail(f"vertex {x} has no neighbour in path {i}")
    if c.order is not None and sorted(c.order) != sorted(S):
        return fail("order is not a permutation of S")
    return OK


def _attach_positions(G: Graph, path: Sequence[int], x: int) -> list[int]:
    return [k for k, v in enumerate(path) if G.has_edge(x, v)]


def enumerate_routes(c: Constellation, x: int, y: int, cap: int = ROUTE_CAP) -> list[Route]:
    """All routes from x to y, in path order then position order."""
    if x == y:
        raise PreconditionError("route ends must be distinct")
    if x not in c.S or y not in c.S:
        raise PreconditionError("route ends must lie in S")
    G = c.graph
    out: list[Route] = []
    for idx, path in enumerate(c.paths):
        marks = []
        for k, v in enumerate(path):
            hx, hy = G.has_edge(x, v), G.has_edge(y, v)
            if hx or hy:
                marks.append((k, hx, hy))
        # A route interior runs between an x-mark and a y-mark with no other
        # x- or y-mark in between, so only consecutive marks qualify.
        for k, hx, hy in marks:
            if hx and hy:
                out.append(Route((x, path[k], y), idx))
        for (k1, x1, y1), (k2, x2, y2) in zip(marks, marks[1:]):
            if x1 and y2 and not y1 and not x2:
                out.append(Route((x,) + tuple(path[k1:k2 + 1]) + (y,), idx))
            elif y1 and x2 and not x1 and not y2:
                out.append(Route((x,) + tuple(reversed(path[k1:k2 + 1])) + (y,), idx))
        if len(out) > cap:
            raise CapExceeded(f"more than {cap} routes between {x} and {y}")
    out.sort(key=lambda r: (r.path_index, min(r.interior)))
    return out


def is_d_ample(c: Constellation, d: int = 1) -> bool:
    if d < 1:
        raise PreconditionError("d must be positive")
    for x, y in combinations(c.S, 2):
        if any(r.length <= d + 1 for r in enumerate_routes(c, x, y)):
            return False
    return True


def shares_path_neighbour(c: Constellation) -> bool:
    """Direct test used to cross-check the d=1 case of :func:`is_d_ample`."""
    G = c.graph
    lmask = to_mask(v for p in c.paths for v in p)
    for x, y in combinations(c.S, 2):
        if G.adj[x] & G.adj[y] & lmask:
            return True
    return False


def _route_hits(c: Constellation, interior_only: bool = False) -> dict:
    """Map ordered pair (x, y) -> list of S-masks hit by each route."""
    G = c.graph
    S = list(c.S)
    hits = {}
    for x, y in combinations(S, 2):
        masks = []
        for r in enumerate_routes(c, x, y):
            body = to_mask(r.interior if interior_only else r.path)
            m = 0
            for z in S:
                if z not in (x, y) and G.adj[z] & body:
                    m |= 1 << z
            masks.append(m)
        hits[(x, y)] = masks
        hits[(y, x)] = masks
    return hits


def _search_order(S: Sequence[int], accept_prefix, order: Sequence[int] | None):
    if order is not None:
        order = list(order)
        if sorted(order) != sorted(S):
            raise PreconditionError("order must be a permutation of S")
        for k in range(1, len(order) + 1):
            if not accept_prefix(order[:k]):
                return None
        return tuple(order)
    if len(S) > MAX_ORDER_SEARCH:
        raise TooManyOrders(f"|S|={len(S)} exceeds {MAX_ORDER_SEARCH}; supply an order")
    S = sorted(S)

    def rec(prefix, rest):
        if not rest:
            return tuple(prefix)
        for z in rest:
            cand = prefix + [z]
            if accept_prefix(cand):
                got = rec(cand, [w for w in rest if w != z])
                if got is not None:
                    return got
        return None

    return rec([], S)


def is_interrupted(c: Constellation, order: Sequence[int] | None = None,
                   interior_only: bool = False) -> tuple[int, ...] | None:
    """Return an order x_1..x_s witnessing interruption, or None.

    Every route between x_i and x_j must contain a neighbour of every x_k
    with i < j < k.
    """
    hits = _route_hits(c, interior_only)
    common = {}
    for key, masks in hits.items():
        m = -1
        for h in masks:
            m &= h
        common[key] = m

    def accept(prefix):
        z = prefix[-1]
        zb = 1 << z
        for i in range(len(prefix) - 1):
            for j in range(i + 1, len(prefix) - 1):
                if not common[(prefix[i], prefix[j])] & zb:
                    return False
        return True

    return _search_order(c.S, accept, order)


def is_q_zigzagged(c: Constellation, q: int, order: Sequence[int] | None = None,
                   interior_only: bool = False) -> tuple[int, ...] | None:
    """Return an order under which every route x..y (x before y) misses fewer
    than q of the vertices strictly between x and y, or None."""
    if q < 1:
        raise PreconditionError("q must be positive")
    hits = _route_hits(c, interior_only)

    def accept(prefix):
        y = prefix[-1]
        for i in range(len(prefix) - 1):
            x = prefix[i]
            between = to_mask(prefix[i + 1:-1])
            for h in hits[(x, y)]:
                if (between & ~h).bit_count() >= q:
                    return False
        return True

    return _search_order(c.S, accept, order)


def from_induced(G: Graph, S: Sequence[int]) -> Constellation:
    """Read a constellation off G[V] with the given S: paths are the components
    of G - S (each oriented from an end)."""
    smask = to_mask(S)
    paths = []
    for comp in component_masks(G, G.all_mask & ~smask):
        paths.append(tuple(path_order(G, comp)))
    return Constellation(G, tuple(sorted(S)), tuple(paths))


def path_order(G: Graph, mask: int) -> list[int]:
    """Order the vertices of an induced path given as a mask (empty list if not a path)."""
    vs = list(bits(mask))
    if len(vs) == 1:
        return vs
    ends = [v for v in vs if (G.adj[v] & mask).bit_count() == 1]
    if len(ends) != 2:
        return []
    out = [min(ends)]
    prev = -1
    while True:
        nxt = [w for w in bits(G.adj[out[-1]] & mask) if w != prev]
        if not nxt:
            break
        prev = out[-1]
        out.append(nxt[0])
        if len(out) > len(vs):
            return []
    return out if len(out) == len(vs) else []
