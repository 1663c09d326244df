"""Simple undirected graphs on vertices 0..n-1 with bitmask adjacency rows.

Vertex sets are passed around either as iterables of ints or as int
bitmasks; functions that take a ``VertexSet`` accept both.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, Union

VertexSet = Union[int, Iterable[int]]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: VertexSet) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def to_list(vertices: VertexSet) -> list[int]:
    if isinstance(vertices, int):
        return list(bits(vertices))
    return sorted(set(vertices))


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the bitmask of neighbours of ``v``.  Loops and parallel
    edges are rejected at construction time.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        rows = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.adj = tuple(rows)
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(rows)
        g.adj = tuple(rows)
        g._hash = None
        for v, r in enumerate(g.adj):
            if r >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for w in bits(r):
                if not g.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency {v}-{w}")
        return g

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def neighborhood(self, mask: int) -> int:
        """Open neighbourhood of a vertex set (bitmask in, bitmask out)."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def are_anticomplete(G: Graph, X: VertexSet, Y: VertexSet) -> bool:
    """True iff X and Y are disjoint and no edge joins them."""
    xm, ym = to_mask(X), to_mask(Y)
    if xm & ym:
        return False
    for v in bits(xm):
        if G.adj[v] & ym:
            return False
    return True


def induced_subgraph(G: Graph, X: VertexSet) -> tuple[Graph, list[int]]:
    """Return ``(H, labels)`` where vertex ``i`` of ``H`` is ``labels[i]`` of ``G``."""
    labels = to_list(X)
    index = {v: i for i, v in enumerate(labels)}
    rows = []
    xm = to_mask(labels)
    for v in labels:
        r = 0
        for w in bits(G.adj[v] & xm):
            r |= 1 << index[w]
        rows.append(r)
    return Graph.from_rows(rows), labels


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of G[within] as bitmasks, ordered by least vertex."""
    rest = G.all_mask if within is None else within
    out = []
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & rest & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def components(G: Graph, within: VertexSet | None = None) -> list[list[int]]:
    w = None if within is None else to_mask(within)
    return [list(bits(c)) for c in component_masks(G, w)]


def is_connected(G: Graph, X: VertexSet) -> bool:
    xm = to_mask(X)
    if not xm:
        return False
    return len(component_masks(G, xm)) == 1


def is_stable_set(G: Graph, X: VertexSet) -> bool:
    xm = to_mask(X)
    return all(not (G.adj[v] & xm) for v in bits(xm))


def is_clique(G: Graph, X: VertexSet) -> bool:
    xm = to_mask(X)
    return all((G.adj[v] | (1 << v)) & xm == xm for v in bits(xm))


def is_induced_path(G: Graph, order: Sequence[int]) -> bool:
    """Consecutive vertices adjacent, all others non-adjacent, no repeats."""
    if not order or len(set(order)) != len(order):
        return False
    if any(not (0 <= v < G.n) for v in order):
        return False
    pos = {v: i for i, v in enumerate(order)}
    mask = to_mask(order)
    for i, v in enumerate(order):
        for w in bits(G.adj[v] & mask):
            if abs(pos[w] - i) != 1:
                return False
        if i + 1 < len(order) and not G.has_edge(v, order[i + 1]):
            return False
    return True


def complement(G: Graph) -> Graph:
    full = G.all_mask
    return Graph.from_rows([(full & ~r) & ~(1 << v) for v, r in enumerate(G.adj)])


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    for H in graphs:
        off = len(rows)
        rows.extend(r << off for r in H.adj)
    return Graph.from_rows(rows)


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph(G.n, [(perm[u], perm[v]) for u, v in G.edges()])


def find_clique(G: Graph, k: int, within: int | None = None, budget=None) -> list[int] | None:
    """Lexicographically least k-clique of G[within], or None."""
    cand = G.all_mask if within is None else within
    if k <= 0:
        return []

    def rec(chosen: list[int], pool: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        if pool.bit_count() < k - len(chosen):
            return None
        for v in bits(pool):
            if budget is not None:
                budget.tick()
            pool &= ~(1 << v)
            got = rec(chosen + [v], pool & G.adj[v])
            if got is not None:
                return got
            if pool.bit_count() < k - len(chosen):
                return None
        return None

    return rec([], cand)


def find_stable_set(G: Graph, k: int, within: int | None = None, budget=None) -> list[int] | None:
    """Lexicographically least stable k-set of G[within], or None."""
    cand = G.all_mask if within is None else within
    comp = [G.all_mask & ~r & ~(1 << v) for v, r in enumerate(G.adj)]
    return find_clique(Graph.from_rows(comp), k, cand, budget)


def maximum_clique(G: Graph, within: int | None = None, budget=None) -> list[int]:
    cand = G.all_mask if within is None else within
    best: list[int] = []

    def rec(chosen: list[int], pool: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen
        for v in bits(pool):
            if len(chosen) + pool.bit_count() <= len(best):
                return
            if budget is not None:
                budget.tick()
            pool &= ~(1 << v)
            rec(chosen + [v], pool & G.adj[v])

    rec([], cand)
    return best


def maximum_stable_set(G: Graph, within: int | None = None, budget=None) -> list[int]:
    return maximum_clique(complement(G), within, budget)


def find_induced_biclique(G: Graph, t: int, budget=None) -> tuple[list[int], list[int]] | None:
    """Two stable t-sets complete to each other (an induced K_{t,t}), or None."""
    if t <= 0:
        return [], []
    comp = complement(G)

    def stable_sets(pool: int, chosen: list[int]):
        if len(chosen) == t:
            yield chosen
            return
        for v in bits(pool):
            if budget is not None:
                budget.tick()
            pool &= ~(1 << v)
            yield from stable_sets(pool & comp.adj[v], chosen + [v])

    for A in stable_sets(G.all_mask, []):
        common = G.all_mask
        for v in A:
            common &= G.adj[v]
        B = find_clique(comp, t, common, budget)
        if B is not None:
            return (A, B) if A[0] < B[0] else (B, A)
    return None
