"""Certificate types for models and structures, with their verifiers.

Every verifier recomputes its answer from the host graph; nothing stored in
a certificate (flags included) is trusted.  Verifiers return a
:class:`Check`, which is truthy on success and carries a reason otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import NamedTuple, Sequence

from .graph import Graph, are_anticomplete, bits, is_connected, is_induced_path, to_mask


class Check(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


OK = Check(True)


def fail(reason: str) -> Check:
    return Check(False, reason)


Path = tuple[int, ...]


@dataclass(frozen=True)
class CompleteModel:
    """Branch sets C_1..C_mu; when ``linear`` each tuple is a path in order."""

    branch_sets: tuple[tuple[int, ...], ...]
    linear: bool = False

    @property
    def mu(self) -> int:
        return len(self.branch_sets)

    def vertex_mask(self) -> int:
        return to_mask(v for c in self.branch_sets for v in c)

    def subset(self, indices: Sequence[int]) -> "CompleteModel":
        return CompleteModel(tuple(self.branch_sets[i] for i in indices), self.linear)


@dataclass(frozen=True)
class BipartiteModel:
    """A (rho, sigma)-model (A_1..A_rho; B_1..B_sigma) with claimed flags.

    Linear sides store each branch set as a path in traversal order.
    """

    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    A_induced: bool = False
    B_induced: bool = False
    A_linear: bool = False
    B_linear: bool = False

    @property
    def rho(self) -> int:
        return len(self.A)

    @property
    def sigma(self) -> int:
        return len(self.B)

    @property
    def induced(self) -> bool:
        return self.A_induced and self.B_induced

    def transpose(self) -> "BipartiteModel":
        return BipartiteModel(self.B, self.A, self.B_induced, self.A_induced,
                              self.B_linear, self.A_linear)

    def A_mask(self) -> int:
        return to_mask(v for a in self.A for v in a)

    def B_mask(self) -> int:
        return to_mask(v for b in self.B for v in b)

    def truncate(self, rho: int, sigma: int) -> "BipartiteModel":
        return replace(self, A=self.A[:rho], B=self.B[:sigma])


@dataclass(frozen=True)
class AlignedWitness:
    """For each B_j: the end ``ends[j]`` and windows ``(u^j_i, v^j_i)`` per A_i."""

    ends: tuple[int, ...]
    windows: tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class Block:
    """Vertex set B and, per pair x<y of B, internally disjoint x-y paths."""

    B: tuple[int, ...]
    paths: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return len(self.B)

    @property
    def l(self) -> int:
        return min((len(ps) for ps in self.paths.values()), default=0)

    def pair_paths(self, x: int, y: int) -> tuple[Path, ...]:
        return self.paths[(min(x, y), max(x, y))]


@dataclass(frozen=True)
class Subdivision:
    """Induced proper subdivision of K_s: branch vertices and one path per pair."""

    branch: tuple[int, ...]
    paths: dict = field(default_factory=dict)

    def vertex_mask(self) -> int:
        m = to_mask(self.branch)
        for p in self.paths.values():
            m |= to_mask(p)
        return m


def _check_sets(G: Graph, sets: Sequence[Sequence[int]], label: str) -> Check:
    seen = 0
    for i, s in enumerate(sets):
        if not s:
            return fail(f"{label}[{i}] is empty")
        if any(not (0 <= v < G.n) for v in s):
            return fail(f"{label}[{i}] has a vertex outside the graph")
        m = to_mask(s)
        if m.bit_count() != len(s):
            return fail(f"{label}[{i}] repeats a vertex")
        if m & seen:
            return fail(f"{label}[{i}] meets an earlier branch set")
        seen |= m
        if not is_connected(G, m):
            return fail(f"{label}[{i}] is not connected")
    return OK


def verify_complete_model(G: Graph, K: CompleteModel) -> Check:
    c = _check_sets(G, K.branch_sets, "C")
    if not c:
        return c
    for i, j in combinations(range(K.mu), 2):
        if are_anticomplete(G, K.branch_sets[i], K.branch_sets[j]):
            return fail(f"C[{i}] and C[{j}] are anticomplete")
    if K.linear:
        for i, p in enumerate(K.branch_sets):
            if not is_induced_path(G, p):
                return fail(f"C[{i}] is not a path in the stored order")
    return OK


def verify_bipartite_model(G: Graph, M: BipartiteModel) -> Check:
    if not M.A or not M.B:
        return fail("both sides must be non-empty")
    c = _check_sets(G, list(M.A) + list(M.B), "branch")
    if not c:
        return c
    for i, a in enumerate(M.A):
        for j, b in enumerate(M.B):
            if are_anticomplete(G, a, b):
                return fail(f"A[{i}] and B[{j}] are anticomplete")
    for side, sets, induced, linear in (("A", M.A, M.A_induced, M.A_linear),
                                        ("B", M.B, M.B_induced, M.B_linear)):
        if induced:
            for i, j in combinations(range(len(sets)), 2):
                if not are_anticomplete(G, sets[i], sets[j]):
                    return fail(f"{side}-induced claimed but {side}[{i}], {side}[{j}] touch")
        if linear:
            for i, p in enumerate(sets):
                if not is_induced_path(G, p):
                    return fail(f"{side}-linear claimed but {side}[{i}] is not a path")
    return OK


def verify_aligned(G: Graph, M: BipartiteModel, w: AlignedWitness) -> Check:
    c = verify_bipartite_model(G, M)
    if not c:
        return c
    if not M.B_linear:
        return fail("aligned models must be B-linear")
    if len(w.ends) != M.sigma or len(w.windows) != M.sigma:
        return fail("witness does not cover every B-set")
    for j, path in enumerate(M.B):
        u = w.ends[j]
        if u == path[0]:
            oriented = list(path)
        elif u == path[-1]:
            oriented = list(reversed(path))
        else:
            return fail(f"end of B[{j}] is not an end of the path")
        pos = {v: k for k, v in enumerate(oriented)}
        wins = w.windows[j]
        if len(wins) != M.rho:
            return fail(f"B[{j}] needs one window per A-set")
        last = -1
        for i, (a, b) in enumerate(wins):
            if a not in pos or b not in pos:
                return fail(f"window {i} of B[{j}] leaves the path")
            if not (last < pos[a] <= pos[b]):
                return fail(f"AL1 fails at window {i} of B[{j}]")
            last = pos[b]
            amask = to_mask(M.A[i])
            for v in oriented:
                if G.adj[v] & amask and not (pos[a] <= pos[v] <= pos[b]):
                    return fail(f"AL2 fails: vertex {v} of B[{j}] sees A[{i}] outside its window")
    return OK


def verify_block(G: Graph, blk: Block, strong: bool = False) -> Check:
    B = list(blk.B)
    if len(set(B)) != len(B) or any(not (0 <= v < G.n) for v in B):
        return fail("block vertex set malformed")
    pair_masks = {}
    for x, y in combinations(sorted(B), 2):
        ps = blk.paths.get((x, y))
        if not ps:
            return fail(f"no paths for pair {x},{y}")
        used = 0
        seen = set()
        for p in ps:
            p = tuple(p)
            if p[0] == y:
                p = p[::-1]
            if p[0] != x or p[-1] != y:
                return fail(f"path {p} does not join {x} and {y}")
            if not is_induced_path(G, p):
                return fail(f"path {p} is not a path in G")
            if p in seen:
                return fail(f"path {p} listed twice")
            seen.add(p)
            inner = to_mask(p[1:-1])
            if inner & used:
                return fail(f"paths for pair {x},{y} are not internally disjoint")
            used |= inner
        pair_masks[(x, y)] = used | (1 << x) | (1 << y)
    extra = set(blk.paths) - set(pair_masks)
    if extra:
        return fail(f"paths given for pairs outside B: {sorted(extra)}")
    if strong:
        keys = list(pair_masks)
        for p, q in combinations(keys, 2):
            common = to_mask(set(p) & set(q))
            if pair_masks[p] & pair_masks[q] != common:
                return fail(f"pairs {p} and {q} share more than their common ends")
    return OK


def verify_subdivision(G: Graph, sub: Subdivision) -> Check:
    """Check that the certificate induces exactly a proper subdivision of K_s."""
    br = list(sub.branch)
    if len(set(br)) != len(br) or len(br) < 1:
        return fail("branch vertices malformed")
    expected = set()
    used = to_mask(br)
    for x, y in combinations(sorted(br), 2):
        p = sub.paths.get((x, y))
        if p is None:
            return fail(f"no path for pair {x},{y}")
        p = tuple(p)
        if p[0] == y:
            p = p[::-1]
        if p[0] != x or p[-1] != y or len(p) < 3:
            return fail(f"path for {x},{y} must run between them with non-empty interior")
        inner = to_mask(p[1:-1])
        if inner & used:
            return fail(f"path for {x},{y} reuses a vertex")
        used |= inner
        for a, b in zip(p, p[1:]):
            expected.add((min(a, b), max(a, b)))
    if len(sub.paths) != len(br) * (len(br) - 1) // 2:
        return fail("unexpected extra paths")
    for u in bits(used):
        for v in bits(G.adj[u] & used):
            if u < v and (u, v) not in expected:
                return fail(f"edge {u}-{v} is not part of the subdivision")
    for e in expected:
        if not G.has_edge(*e):
            return fail(f"edge {e} missing from G")
    return OK


def contact_degree(G: Graph, sets: Sequence[Sequence[int]], v: int, own: int | None = None) -> int:
    """Number of branch sets other than ``own`` in which ``v`` has a neighbour."""
    return sum(1 for i, s in enumerate(sets) if i != own and G.adj[v] & to_mask(s))
