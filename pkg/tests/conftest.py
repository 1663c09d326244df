"""Shared fixtures and brute-force oracles written independently of the package."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from pathlib import Path

import networkx as nx
import pytest

from anticomplete.graph import Graph

DATA = Path(__file__).parent / "data"


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def from_nx(H: nx.Graph) -> Graph:
    nodes = sorted(H.nodes())
    index = {v: k for k, v in enumerate(nodes)}
    return Graph(len(nodes), [(index[u], index[v]) for u, v in H.edges()])


def adjacency_sets(G: Graph) -> list[set[int]]:
    return [set(G.neighbors(v)) for v in range(G.n)]


# ---------------------------------------------------------------------------
# treewidth by dynamic programming over elimination prefixes


def tw_oracle(G: Graph, vertices=None) -> int:
    """Treewidth of G[vertices] as the best elimination order.

    For an eliminated prefix S and the next vertex v, the degree of v at
    elimination time is the number of vertices outside S+v reachable from v
    through S.  Minimising the largest such degree over all orders gives the
    treewidth.
    """
    vs = sorted(range(G.n) if vertices is None else vertices)
    if not vs:
        return -1
    adj = adjacency_sets(G)
    U = frozenset(vs)

    def q_size(S: frozenset, v: int) -> int:
        seen, stack, out = {v}, [v], set()
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in U or y in seen:
                    continue
                seen.add(y)
                if y in S:
                    stack.append(y)
                else:
                    out.add(y)
        return len(out)

    @lru_cache(maxsize=None)
    def best(S: frozenset) -> int:
        if S == U:
            return -1
        return min(max(best(S | {v}), q_size(S, v)) for v in U - S)

    return best(frozenset())


# ---------------------------------------------------------------------------
# induced bipartite models and anticomplete pairs by exhaustive labelling


def _connected(adj, part) -> bool:
    part = set(part)
    if not part:
        return False
    start = next(iter(part))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in adj[x] & part:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == part


def model_oracle(G: Graph, rho: int, sigma: int, A_induced: bool, B_induced: bool) -> bool:
    """Some labelling of vertices into rho+sigma branch sets (or none) works."""
    adj = adjacency_sets(G)
    k = rho + sigma

    def touch(X, Y):
        return any(adj[x] & Y for x in X)

    for labels in product(range(k + 1), repeat=G.n):
        sets = [set() for _ in range(k)]
        for v, lab in enumerate(labels):
            if lab < k:
                sets[lab].add(v)
        if any(not s for s in sets):
            continue
        # canonical: first vertices of A-sets increasing, same for B-sets
        firsts = [min(s) for s in sets]
        if firsts[:rho] != sorted(firsts[:rho]) or firsts[rho:] != sorted(firsts[rho:]):
            continue
        if not all(_connected(adj, s) for s in sets):
            continue
        A, B = sets[:rho], sets[rho:]
        if not all(touch(a, b) for a in A for b in B):
            continue
        if A_induced and any(touch(x, y) for x, y in combinations(A, 2)):
            continue
        if B_induced and any(touch(x, y) for x, y in combinations(B, 2)):
            continue
        return True
    return False


def pair_oracle(G: Graph, c: int) -> bool:
    """Anticomplete X, Y each of treewidth >= c.  Treewidth is monotone under
    taking induced subgraphs, so Y may be taken as everything outside N[X]."""
    adj = adjacency_sets(G)
    for r in range(1, G.n + 1):
        for X in combinations(range(G.n), r):
            closed = set(X).union(*(adj[x] for x in X))
            Y = [v for v in range(G.n) if v not in closed]
            if Y and tw_oracle(G, X) >= c and tw_oracle(G, Y) >= c:
                return True
    return False


def clique_number(G: Graph) -> int:
    return max((len(c) for c in nx.find_cliques(to_nx(G))), default=0)


# ---------------------------------------------------------------------------
# corpora


@lru_cache(maxsize=None)
def corpus_lines(name: str) -> tuple[str, ...]:
    return tuple(ln.strip() for ln in (DATA / name).read_text().splitlines() if ln.strip())


@pytest.fixture(scope="session")
def upto7():
    return corpus_lines("graphs_upto7.g6")


@pytest.fixture(scope="session")
def connected8():
    return corpus_lines("connected8.g6")
