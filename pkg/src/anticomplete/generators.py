"""Deterministic graph families and seeded random instances.

Wall convention
---------------
``gen_wall(r)`` is the brick wall with r stacked rows of r hexagonal bricks.
It is built from r+1 horizontal paths ("rows") of 2r+2 vertices each.
Row i and row i+1 are joined by vertical edges at the columns j with
j = i (mod 2).  The two resulting vertices of degree one (one in the top
row, one in the bottom row) are deleted.  Hence

    |V(gen_wall(r))| = (r + 1)(2r + 2) - 2 = 2r^2 + 4r,

gen_wall(1) is a hexagon and every vertex has degree at most 3.  Under this
convention the treewidth of gen_wall(r) is r + 1 (it contains the
(r+1)x(r+1) grid as a minor), one more than the size index.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Mapping

from .constellations import Constellation, is_d_ample, is_interrupted, is_q_zigzagged, verify_constellation
from .errors import PreconditionError
from .graph import Graph, relabel
from .structures import CompleteModel


class GeneratorDefect(RuntimeError):
    """A generated instance failed its own validation."""


def gen_complete(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("n must be positive")
    return Graph(n, combinations(range(n), 2))


def gen_complete_bipartite(s: int, t: int) -> Graph:
    if s < 1 or t < 1:
        raise PreconditionError("sides must be positive")
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def gen_path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_empty(n: int) -> Graph:
    return Graph(n)


def wall_vertex_count(r: int) -> int:
    return 2 * r * r + 4 * r


def gen_wall(r: int) -> Graph:
    if r < 1:
        raise PreconditionError("r must be positive")
    width = 2 * r + 2
    edges = []
    for i in range(r + 1):
        for j in range(width - 1):
            edges.append(((i, j), (i, j + 1)))
    for i in range(r):
        for j in range(i % 2, width, 2):
            edges.append(((i, j), (i + 1, j)))
    deg: dict = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    dead = {v for v, d in deg.items() if d == 1}
    cells = sorted(v for v in deg if v not in dead)
    index = {v: k for k, v in enumerate(cells)}
    return Graph(len(cells), [(index[a], index[b]) for a, b in edges
                              if a not in dead and b not in dead])


def subdivide(G: Graph, plan: Mapping[tuple[int, int], int]) -> Graph:
    """Replace each edge e by a path with ``plan[e]`` new interior vertices."""
    norm = {}
    for (u, v), k in plan.items():
        if not G.has_edge(u, v):
            raise PreconditionError(f"{u}-{v} is not an edge")
        if k < 0:
            raise PreconditionError("subdivision counts must be non-negative")
        norm[(min(u, v), max(u, v))] = k
    n = G.n
    edges = []
    for u, v in G.edges():
        k = norm.get((u, v), 0)
        chain = [u] + list(range(n, n + k)) + [v]
        n += k
        edges.extend(zip(chain, chain[1:]))
    return Graph(n, edges)


def subdivide_all(G: Graph, k: int) -> Graph:
    return subdivide(G, {e: k for e in G.edges()})


def line_graph(G: Graph) -> Graph:
    E = G.edges()
    out = []
    for i, j in combinations(range(len(E)), 2):
        if set(E[i]) & set(E[j]):
            out.append((i, j))
    return Graph(len(E), out)


def gen_random(n: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise PreconditionError("p must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def interrupted_marks(s: int) -> list[int]:
    """Owner sequence of attachment points along L (values are S-indices).

    x_0 takes both ends, x_1 one middle point; every later x_k gets one
    point inside each gap whose two ends belong to different vertices.
    """
    if s < 1:
        raise PreconditionError("s must be positive")
    marks = [0, 1, 0] if s >= 2 else [0]
    for k in range(2, s):
        nxt = [marks[0]]
        for a, b in zip(marks, marks[1:]):
            if a != b:
                nxt.append(k)
            nxt.append(b)
        marks = nxt
    return marks


def gen_interrupted_constellation(s: int, spacing: int = 0) -> Constellation:
    """Ample interrupted s-constellation on one path.

    Vertices 0..s-1 form S (x_1..x_s in that order); the path follows.
    ``spacing`` unattached path vertices separate consecutive attachments.
    """
    if spacing < 0:
        raise PreconditionError("spacing must be non-negative")
    marks = interrupted_marks(s)
    path = []
    edges = []
    nxt = s
    for k, owner in enumerate(marks):
        if k:
            for _ in range(spacing):
                path.append(nxt)
                nxt += 1
        path.append(nxt)
        edges.append((owner, nxt))
        nxt += 1
    edges.extend(zip(path, path[1:]))
    G = Graph(nxt, edges)
    c = Constellation(G, tuple(range(s)), (tuple(path),), tuple(range(s)))
    _validate(c, interrupted=True)
    return c


def gen_zigzag_constellation(s: int, l: int, q: int = 1, seed: int | None = None) -> Constellation:
    """1-ample q-zigzagged (s, l)-constellation.

    Along each path the attachment blocks of x_1..x_s appear in order, so
    every route from x_i to x_j passes the blocks of all x_k in between.
    With a seed, block sizes, padding, path directions and vertex labels
    are randomised; the returned ``order`` is always the construction order.
    """
    if s < 1 or l < 1 or q < 1:
        raise PreconditionError("s, l, q must be positive")
    rng = random.Random(seed) if seed is not None else None
    edges = []
    paths = []
    nxt = s
    for _ in range(l):
        seq: list[int | None] = []
        for k in range(s):
            if rng is not None:
                seq.extend([None] * rng.randint(0, 1))
                seq.extend([k] * rng.randint(1, 2))
            else:
                seq.append(k)
        if rng is not None:
            seq.extend([None] * rng.randint(0, 1))
            if rng.random() < 0.5:
                seq.reverse()
        path = []
        for owner in seq:
            path.append(nxt)
            if owner is not None:
                edges.append((owner, nxt))
            nxt += 1
        edges.extend(zip(path, path[1:]))
        paths.append(path)
    G = Graph(nxt, edges)
    S = list(range(s))
    if rng is not None:
        perm = list(range(nxt))
        rng.shuffle(perm)
        G = relabel(G, perm)
        S = [perm[v] for v in S]
        paths = [[perm[v] for v in p] for p in paths]
    c = Constellation(G, tuple(S), tuple(tuple(p) for p in paths), tuple(S))
    _validate(c, zigzag=q)
    return c


def _validate(c: Constellation, interrupted: bool = False, zigzag: int | None = None) -> None:
    chk = verify_constellation(c.graph, c)
    if not chk:
        raise GeneratorDefect(chk.reason)
    if not is_d_ample(c, 1):
        raise GeneratorDefect("constellation is not ample")
    if interrupted and is_interrupted(c, c.order) is None:
        raise GeneratorDefect("constellation is not interrupted under its order")
    if zigzag is not None and is_q_zigzagged(c, zigzag, c.order) is None:
        raise GeneratorDefect("constellation is not zigzagged under its order")


def gen_sparse_complete_model(mu: int, seed: int | None = None, extra: int = 0) -> tuple[Graph, CompleteModel]:
    """Linear mu-model where each vertex touches at most one other branch set.

    Branch set i is a path through private contact vertices c(i, j), one per
    j != i, with c(i, j) adjacent to c(j, i).  A seed shuffles the contact
    order along each path; ``extra`` inserts up to that many free vertices
    between consecutive contacts.
    """
    if mu < 1:
        raise PreconditionError("mu must be positive")
    rng = random.Random(seed) if seed is not None else None
    nxt = 0
    contact = {}
    paths = []
    edges = []
    for i in range(mu):
        others = [j for j in range(mu) if j != i]
        if rng is not None:
            rng.shuffle(others)
        path = []
        for k, j in enumerate(others):
            if k and rng is not None and extra:
                for _ in range(rng.randint(0, extra)):
                    path.append(nxt)
                    nxt += 1
            contact[(i, j)] = nxt
            path.append(nxt)
            nxt += 1
        if not path:
            path.append(nxt)
            nxt += 1
        edges.extend(zip(path, path[1:]))
        paths.append(tuple(path))
    for i, j in combinations(range(mu), 2):
        edges.append((contact[(i, j)], contact[(j, i)]))
    G = Graph(nxt, edges)
    return G, CompleteModel(tuple(paths), linear=True)


def gen_alignment_instance(theta: int, d: int, seed: int, length: int | None = None,
                           straddle: bool = False):
    """Random B-linear (theta, 1)-model where each B-vertex sees at most d A-sets.

    A-sets are short paths; each attaches to between one and three random
    positions of the B-path.  With ``straddle`` every A-set also attaches on
    both sides of the middle vertex, so all attachment intervals overlap.
    Returns ``(G, M)``.
    """
    from .structures import BipartiteModel

    if theta < 1 or d < 1:
        raise PreconditionError("theta and d must be positive")
    rng = random.Random(seed)
    per = 7 if straddle else 3
    length = length if length is not None else max(3, (per * theta + d - 1) // d + 2 + rng.randint(0, theta))
    load = [0] * length
    B = list(range(length))
    edges = list(zip(B, B[1:]))
    nxt = length
    A = []
    for _ in range(theta):
        size = rng.randint(1, 2)
        part = list(range(nxt, nxt + size))
        nxt += size
        edges.extend(zip(part, part[1:]))
        free = [k for k in range(length) if load[k] < d]
        picks = []
        if straddle:
            mid = length // 2
            left = [k for k in free if k < mid]
            right = [k for k in free if k > mid]
            if not left or not right:
                raise GeneratorDefect("B-path too short for the degree bound")
            picks = [rng.choice(left), rng.choice(right)]
        rest = [k for k in free if k not in picks]
        if not rest and not picks:
            raise GeneratorDefect("B-path too short for the degree bound")
        picks += rng.sample(rest, min(len(rest), rng.randint(0 if picks else 1, 3)))
        for k in picks:
            load[k] += 1
            edges.append((rng.choice(part), k))
        A.append(tuple(part))
    G = Graph(nxt, edges)
    return G, BipartiteModel(tuple(A), (tuple(B),), A_linear=True, B_linear=True)


FAMILIES = {
    "complete": lambda p: gen_complete(p["n"]),
    "complete-bipartite": lambda p: gen_complete_bipartite(p["s"], p["t"]),
    "wall": lambda p: gen_wall(p["r"]),
    "path": lambda p: gen_path(p["n"]),
    "cycle": lambda p: gen_cycle(p["n"]),
    "random": lambda p: gen_random(p["n"], p.get("p", 0.5), p.get("seed", 0)),
    "interrupted-constellation": lambda p: gen_interrupted_constellation(p["s"], p.get("spacing", 0)),
    "zigzag-constellation": lambda p: gen_zigzag_constellation(p["s"], p["l"], p.get("q", 1), p.get("seed")),
}
