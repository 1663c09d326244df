"""Budgeted search for induced subdivisions of walls and their line graphs.

A pattern is a small graph whose edges are either rigid (must appear as a
single edge) or flexible (may be replaced by an induced path with at least
``min_inner`` interior vertices; when ``mergeable`` the two ends may also
coincide).  An embedding grows the pattern one edge at a time from an
anchor vertex; the final vertex set must induce exactly the pattern edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import Budget, ensure
from .generators import gen_wall
from .graph import Graph, bits, to_mask


@dataclass(frozen=True)
class PatternEdge:
    a: int
    b: int
    min_inner: int = 0
    flexible: bool = True
    mergeable: bool = False


@dataclass(frozen=True)
class Pattern:
    size: int
    edges: tuple[PatternEdge, ...]

    def min_vertices(self) -> int:
        merged = sum(1 for e in self.edges if e.mergeable)
        return self.size - merged + sum(e.min_inner for e in self.edges if e.flexible)


@dataclass(frozen=True)
class Embedding:
    """Image of each pattern vertex and the path realising each pattern edge."""

    image: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    def vertex_mask(self) -> int:
        m = to_mask(self.image)
        for p in self.paths:
            m |= to_mask(p)
        return m


def _core(H: Graph) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Vertices of degree >= 3 and the chains of degree-2 vertices between them."""
    branch = [v for v in range(H.n) if H.degree(v) >= 3]
    index = {v: i for i, v in enumerate(branch)}
    seen = set()
    chains = []
    for v in branch:
        for w in H.neighbors(v):
            prev, cur, inner = v, w, 0
            walk = [v]
            while cur not in index:
                walk.append(cur)
                inner += 1
                prev, cur = cur, next(x for x in H.neighbors(cur) if x != prev)
            walk.append(cur)
            key = min(tuple(walk), tuple(reversed(walk)))
            if key in seen:
                continue
            seen.add(key)
            chains.append((index[v], index[cur], inner))
    return branch, chains


@lru_cache(maxsize=None)
def wall_pattern(t: int) -> Pattern:
    _, chains = _core(gen_wall(t))
    size = 1 + max(max(a, b) for a, b, _ in chains)
    return Pattern(size, tuple(PatternEdge(a, b, m) for a, b, m in chains))


@lru_cache(maxsize=None)
def wall_line_pattern(t: int) -> Pattern:
    """Triangle per branch vertex; chains become paths between triangle corners."""
    _, chains = _core(gen_wall(t))
    corner: dict[tuple[int, int], int] = {}
    for k, (a, b, _) in enumerate(chains):
        corner[(a, k)] = len(corner)
        corner[(b, k)] = len(corner)
    by_branch: dict[int, list[int]] = {}
    for (a, _), v in corner.items():
        by_branch.setdefault(a, []).append(v)
    edges = []
    for vs in by_branch.values():
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                edges.append(PatternEdge(vs[i], vs[j], 0, flexible=False))
    for k, (a, b, m) in enumerate(chains):
        edges.append(PatternEdge(corner[(a, k)], corner[(b, k)], max(m - 1, 0), True, m == 0))
    return Pattern(len(corner), tuple(edges))


def _edge_order(P: Pattern) -> list[int]:
    inc: dict[int, list[int]] = {}
    for k, e in enumerate(P.edges):
        inc.setdefault(e.a, []).append(k)
        inc.setdefault(e.b, []).append(k)
    order, done, seen = [], set(), {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for k in inc.get(u, []):
            if k in done:
                continue
            done.add(k)
            order.append(k)
            e = P.edges[k]
            w = e.b if e.a == u else e.a
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def find_induced_pattern(G: Graph, P: Pattern, budget: Budget | None = None) -> Embedding | None:
    """An induced embedding of some realisation of P in G, or None.

    Raises ``CapExceeded`` when the budget runs out.
    """
    budget = ensure(budget)
    if G.n < P.min_vertices():
        return None
    order = _edge_order(P)
    nbrs: dict[int, list[tuple[int, PatternEdge]]] = {}
    for e in P.edges:
        nbrs.setdefault(e.a, []).append((e.b, e))
        nbrs.setdefault(e.b, []).append((e.a, e))
    pdeg = [len(nbrs.get(v, [])) for v in range(P.size)]
    image = [-1] * P.size
    paths: list[tuple[int, ...]] = [()] * len(P.edges)

    # vertices that may end up sharing an image (ends of mergeable edges)
    twins: list[list[int]] = [[v] for v in range(P.size)]
    for e in P.edges:
        if e.mergeable:
            twins[e.a].append(e.b)
            twins[e.b].append(e.a)
    # possible direct contacts: some twin of z has a rigid or zero-length edge to some twin of y
    near: list[set[int]] = [set() for _ in range(P.size)]
    for z in range(P.size):
        for z2 in twins[z]:
            for y2, e in nbrs.get(z2, []):
                if not e.flexible or e.min_inner == 0:
                    near[z].update(twins[y2])

    def direct_ok(z: int, g: int, pred: int, used: int) -> bool:
        # placed rigid neighbours must be adjacent; any other contact must be possible
        allowed = 1 << pred if pred >= 0 else 0
        for y, e in nbrs.get(z, []):
            if not e.flexible and image[y] >= 0 and not G.adj[g] >> image[y] & 1:
                return False
        for y in near[z]:
            if image[y] >= 0:
                allowed |= 1 << image[y]
        return not (G.adj[g] & used & ~allowed)

    def finish(used: int) -> Embedding | None:
        expected = set()
        for k, e in enumerate(P.edges):
            p = paths[k]
            for u, v in zip(p, p[1:]):
                expected.add((min(u, v), max(u, v)))
        for u in bits(used):
            for v in bits(G.adj[u] & used):
                if u < v and (u, v) not in expected:
                    return None
        return Embedding(tuple(image), tuple(paths))

    def step(pos: int, used: int) -> Embedding | None:
        if pos == len(order):
            return finish(used)
        k = order[pos]
        e = P.edges[k]
        a, b = (e.a, e.b) if image[e.a] >= 0 else (e.b, e.a)
        ga = image[a]
        if image[b] >= 0:
            gb = image[b]
            if gb == ga:
                if not e.mergeable:
                    return None
                paths[k] = (ga,)
                return step(pos + 1, used)
            if G.adj[ga] >> gb & 1:
                if e.flexible and e.min_inner > 0:
                    return None
                paths[k] = (ga, gb)
                return step(pos + 1, used)
            if not e.flexible:
                return None
            return route(pos, k, e, [ga], used, gb, b)
        if e.mergeable:
            image[b] = ga
            if all(image[y] < 0 or e2.flexible or G.adj[ga] >> image[y] & 1
                   for y, e2 in nbrs.get(b, []) if image[y] != ga):
                paths[k] = (ga,)
                got = step(pos + 1, used)
                if got is not None:
                    return got
            image[b] = -1
        return route(pos, k, e, [ga], used, -1, b)

    def route(pos, k, e, walk, used, target, b) -> Embedding | None:
        budget.tick()
        last = walk[-1]
        inner = len(walk) - 1
        cand = G.adj[last] & ~used
        if target < 0 and (inner >= e.min_inner or not e.flexible):
            # close the edge at a fresh image of b
            for g in bits(cand):
                if G.degree(g) < pdeg[b]:
                    continue
                if not direct_ok(b, g, last, used & ~(1 << last)):
                    continue
                image[b] = g
                paths[k] = tuple(walk) + (g,)
                got = step(pos + 1, used | (1 << g))
                image[b] = -1
                if got is not None:
                    return got
            # or identify b with the image of a mergeable partner
            for y, e2 in nbrs.get(b, []):
                g = image[y]
                if not e2.mergeable or g < 0 or not G.adj[last] >> g & 1:
                    continue
                if not all(image[z] < 0 or e3.flexible or G.adj[g] >> image[z] & 1
                           for z, e3 in nbrs.get(b, []) if image[z] != g):
                    continue
                image[b] = g
                paths[k] = tuple(walk) + (g,)
                got = step(pos + 1, used)
                image[b] = -1
                if got is not None:
                    return got
        if not e.flexible:
            return None
        for w in bits(cand):
            contacts = G.adj[w] & used & ~(1 << last)
            if target >= 0 and contacts == 1 << target:
                if inner + 1 >= e.min_inner:
                    paths[k] = tuple(walk) + (w, target)
                    got = step(pos + 1, used | (1 << w))
                    if got is not None:
                        return got
                continue
            if contacts:
                continue
            walk.append(w)
            got = route(pos, k, e, walk, used | (1 << w), target, b)
            walk.pop()
            if got is not None:
                return got
        return None

    start = [v for v in range(G.n) if G.degree(v) >= pdeg[0]]
    for g in start:
        image[0] = g
        got = step(0, 1 << g)
        if got is not None:
            return got
        image[0] = -1
    return None


def find_long_hole(G: Graph, min_len: int, budget: Budget | None = None) -> list[int] | None:
    """An induced cycle with at least ``min_len`` vertices, or None."""
    budget = ensure(budget)
    for s in range(G.n):
        allowed = G.all_mask & ~((1 << s) - 1)  # s is the least vertex of the cycle

        def grow(walk: list[int], used: int):
            budget.tick()
            last = walk[-1]
            for w in bits(G.adj[last] & allowed & ~used):
                contacts = G.adj[w] & used & ~(1 << last)
                if contacts == 1 << s and len(walk) >= 2:
                    if len(walk) + 1 >= min_len and walk[1] < w:
                        return walk + [w]
                    continue
                if contacts:
                    continue
                got = grow(walk + [w], used | (1 << w))
                if got is not None:
                    return got
            return None

        got = grow([s], 1 << s)
        if got is not None:
            return got
    return None
