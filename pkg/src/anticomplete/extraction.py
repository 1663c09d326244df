"""Constructive extraction procedures.

Each procedure takes a structure (a block, a linear complete model, an
aligned model, a zigzagged constellation), walks through the constructive
argument step by step, and returns an outcome carrying a certificate that
:func:`verify_outcome` re-checks from scratch.

``NotApplicable`` is reserved for Ramsey-type searches that come up short on
desk-sized inputs.  Steps whose success is forced by the input sizes never
produce it (violations there raise, since they indicate a bug).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .constellations import Constellation, enumerate_routes, is_d_ample, is_q_zigzagged
from .errors import Budget, ModelTooSmall, PreconditionError, ensure
from .graph import (Graph, are_anticomplete, bits, find_clique, find_stable_set, is_induced_path,
                    maximum_stable_set, to_mask)
from .ramsey import (Clique, Increasing, Stable, StableFound, clique_or_stable,
                     erdos_szekeres, interval_stable_or_clique, monochromatic_grid,
                     monochromatic_subset)
from .structures import (OK, AlignedWitness, BipartiteModel, Block, Check, CompleteModel, Subdivision,
                         contact_degree, fail, verify_aligned, verify_bipartite_model, verify_block,
                         verify_complete_model, verify_subdivision)


# ---------------------------------------------------------------------------
# outcomes


@dataclass(frozen=True)
class SubdivisionFound:
    subdivision: Subdivision


@dataclass(frozen=True)
class CompleteModelFound:
    model: CompleteModel


@dataclass(frozen=True)
class BipartiteModelFound:
    model: BipartiteModel
    label: str = ""
    indices: tuple[int, ...] = ()
    depth: int = 0


@dataclass(frozen=True)
class AlignedFound:
    model: BipartiteModel
    witness: AlignedWitness
    indices: tuple[int, ...] = ()
    depth: int = 0


@dataclass(frozen=True)
class AnticompletePair:
    """X and Y with a (c, c)-model inside each side (so each has tw >= c)."""

    X: tuple[int, ...]
    Y: tuple[int, ...]
    certificates: tuple[BipartiteModel, BipartiteModel]
    c: int


@dataclass(frozen=True)
class ConstellationFound:
    constellation: Constellation
    kind: str


@dataclass(frozen=True)
class NotApplicable:
    reason: str


Outcome = (SubdivisionFound | CompleteModelFound | BipartiteModelFound | AlignedFound
           | AnticompletePair | ConstellationFound | NotApplicable)


def verify_pair(G: Graph, pair: AnticompletePair) -> Check:
    """Anticomplete sides, each with tw >= c.

    With model certificates the bound follows from the (c, c)-models; without
    them it is recomputed exactly.
    """
    if not pair.X or not are_anticomplete(G, pair.X, pair.Y):
        return fail("X and Y are not anticomplete")
    if not pair.certificates:
        from .treewidth import treewidth_at_least
        for side in (pair.X, pair.Y):
            if not treewidth_at_least(G, pair.c, to_mask(side)):
                return fail("a side has treewidth below c")
        return OK
    for side, M in zip((pair.X, pair.Y), pair.certificates):
        chk = verify_bipartite_model(G, M)
        if not chk:
            return chk
        if min(M.rho, M.sigma) < pair.c:
            return fail("certificate model is smaller than (c, c)")
        if (M.A_mask() | M.B_mask()) & ~to_mask(side):
            return fail("certificate model leaves its side")
    return OK


def verify_outcome(G: Graph, out) -> Check:
    if isinstance(out, SubdivisionFound):
        return verify_subdivision(G, out.subdivision)
    if isinstance(out, CompleteModelFound):
        return verify_complete_model(G, out.model)
    if isinstance(out, BipartiteModelFound):
        return verify_bipartite_model(G, out.model)
    if isinstance(out, AlignedFound):
        return verify_aligned(G, out.model, out.witness)
    if isinstance(out, AnticompletePair):
        return verify_pair(G, out)
    if isinstance(out, ConstellationFound):
        from .constellations import is_interrupted, verify_constellation
        con = out.constellation
        mask = con.vertex_mask()
        if con.graph.n != G.n:
            return fail("constellation graph has the wrong vertex count")
        if con.graph != G:
            # an induced sub-structure: its graph must be G restricted to its vertices
            for v in range(G.n):
                want = G.adj[v] & mask if mask >> v & 1 else 0
                if con.graph.adj[v] != want:
                    return fail("constellation graph is not induced by G")
        chk = verify_constellation(con.graph, con)
        if not chk:
            return chk
        if out.kind == "interrupted":
            if not is_d_ample(con, 1):
                return fail("constellation is not ample")
            if is_interrupted(con, con.order) is None:
                return fail("constellation is not interrupted under its order")
        return OK
    if isinstance(out, NotApplicable):
        return fail(out.reason)
    return fail(f"unknown outcome {type(out).__name__}")


def _mask(sets) -> int:
    m = 0
    for s in sets:
        m |= to_mask(s)
    return m


# ---------------------------------------------------------------------------
# strong block -> induced proper subdivision of K_s or a linear model


def block_to_subdivision_or_model(G: Graph, blk: Block, s: int, t: int, rho: int, sigma: int,
                                  budget: Budget | None = None):
    """Subdivision of K_s on a stable part of the block, or a linear (rho, sigma)-model.

    Steps: a stable set S inside the block; one path per pair of S with
    pairwise anticomplete interiors (product colouring by touching pairs);
    then a 3-subset colouring recording which vertex of a triple sees the
    interior of the path joining the other two.
    """
    budget = ensure(budget)
    if min(s, t, rho, sigma) < 1:
        raise PreconditionError("parameters must be positive")
    chk = verify_block(G, blk, strong=True)
    if not chk:
        raise PreconditionError(f"not a strong block: {chk.reason}")
    for pair, paths in blk.paths.items():
        inner = [to_mask(p[1:-1]) for p in paths]
        for a, b in combinations(inner, 2):
            if not are_anticomplete(G, a, b):
                raise PreconditionError(f"interiors of the paths for {pair} are not pairwise anticomplete")
    _check_k_free(G, t + 1, budget)
    b = max(rho, sigma)
    need = max(5 * b, s)

    stable = maximum_stable_set(G, to_mask(blk.B), budget)
    if len(stable) < max(s, 2):
        return NotApplicable(f"largest stable set in the block has {len(stable)} < {max(s, 2)} vertices")
    S = sorted(stable)[:need]
    pairs = list(combinations(S, 2))
    lists = [list(blk.pair_paths(x, y)) for x, y in pairs]
    inner = {}
    for ps in lists:
        for p in ps:
            inner[tuple(p)] = to_mask(p[1:-1])

    def touching(z) -> frozenset:
        return frozenset((i, j) for i, j in combinations(range(len(z)), 2)
                         if not are_anticomplete(G, inner[tuple(z[i])], inner[tuple(z[j])]))

    grid = monochromatic_grid(lists, touching, b, budget=budget)
    if grid is not None and grid[0]:
        i, j = min(grid[0])
        Zi, Zj = grid[1][i], grid[1][j]
        model = BipartiteModel(tuple(tuple(p[1:-1]) for p in Zi), tuple(tuple(p[1:-1]) for p in Zj),
                               A_induced=True, B_induced=True, A_linear=True, B_linear=True)
        return BipartiteModelFound(model.truncate(rho, sigma), "touching interiors")
    if grid is None:
        grid = monochromatic_grid(lists, touching, 1, colors=[frozenset()], budget=budget)
        if grid is None:
            return NotApplicable("no choice of one path per pair with pairwise anticomplete interiors")
    chosen = {pairs[k]: tuple(grid[1][k][0]) for k in range(len(pairs))}

    def sees(x: int, y: int, z: int) -> bool:
        return bool(G.adj[x] & to_mask(chosen[(min(y, z), max(y, z))][1:-1]))

    def phi(T) -> frozenset:
        t1, t2, t3 = T
        out = set()
        for pos, (x, y, z) in enumerate(((t1, t2, t3), (t2, t1, t3), (t3, t1, t2)), start=1):
            if sees(x, y, z):
                out.add(pos)
        return frozenset(out)

    got = monochromatic_subset(S, 3, phi, need, budget=budget)
    if got is not None:
        F, Z = got
        if F:
            f = min(F)
            I1, J, I2, K, I3 = (Z[k * b:(k + 1) * b] for k in range(5))
            If = (I1, I2, I3)[f - 1]
            A = tuple((x,) for x in If)
            B = tuple(chosen[(min(j, k), max(j, k))][1:-1] for j, k in zip(J, K))
            model = BipartiteModel(A, B, A_induced=True, B_induced=True, A_linear=True, B_linear=True)
            return BipartiteModelFound(model.truncate(rho, sigma), "branch vertex sees a path")
        branch = Z[:s]
    else:
        got = monochromatic_subset(S, 3, phi, s, colors=[frozenset()], budget=budget)
        if got is None:
            return NotApplicable(f"no {s}-subset of the stable set with clean triples")
        branch = got[1]
    paths = {(x, y): chosen[(x, y)] for x, y in combinations(sorted(branch), 2)}
    return SubdivisionFound(Subdivision(tuple(sorted(branch)), paths))


# ---------------------------------------------------------------------------
# linear complete model -> low contact degree or half-induced model


def _check_k_free(G: Graph, a: int, budget: Budget) -> None:
    if find_clique(G, a, None, budget) is not None:
        raise PreconditionError(f"G contains K_{a}")


def prune_or_half_induced(G: Graph, K0: CompleteModel, a: int, mu: int, rho: int, sigma: int,
                          budget: Budget | None = None):
    """A sub-model of K0 with small contact degree, or a linear B-induced model.

    Colours each (rho+1)-set of branch-set indices by the positions whose
    branch set holds a vertex seeing all the others.
    """
    budget = ensure(budget)
    if min(a, mu, rho, sigma) < 1:
        raise PreconditionError("parameters must be positive")
    if not K0.linear:
        raise PreconditionError("K0 must be linear")
    chk = verify_complete_model(G, K0)
    if not chk:
        raise PreconditionError(f"K0 is not a complete model: {chk.reason}")
    _check_k_free(G, a, budget)
    sets = K0.branch_sets
    n = len(sets)
    if mu > n:
        return NotApplicable(f"cannot keep {mu} of {n} branch sets")
    masks = [to_mask(C) for C in sets]
    # for each vertex: bitmask of other branch sets it touches
    touch: list[list[tuple[int, int]]] = []
    for i, C in enumerate(sets):
        row = []
        for v in C:
            m = 0
            for j in range(n):
                if j != i and G.adj[v] & masks[j]:
                    m |= 1 << j
            row.append((v, m))
        touch.append(row)

    def witness(i: int, others: int) -> int | None:
        for v, m in touch[i]:
            if m & others == others:
                return v
        return None

    def phi(T) -> frozenset:
        out = set()
        full = 0
        for j in T:
            full |= 1 << j
        for pos, i in enumerate(T, start=1):
            if witness(i, full & ~(1 << i)) is not None:
                out.add(pos)
        return frozenset(out)

    block = a ** sigma
    need = max(block * (rho + 1) + rho, mu)
    got = monochromatic_subset(range(n), rho + 1, phi, need, budget=budget)
    if got is not None:
        F, Z = got
        if not F:
            return CompleteModelFound(K0.subset(Z[:mu]))
        f = min(F)
        groups, js = [], []
        k = 0
        for h in range(rho + 1):
            groups.append(Z[k:k + block])
            k += block
            if h < rho:
                js.append(Z[k])
                k += 1
        target = 0
        for j in js:
            target |= 1 << j
        xs = [witness(i, target) for i in groups[f - 1]]
        res = clique_or_stable(G, a, sigma, to_mask(xs), budget)
        if isinstance(res, StableFound):
            model = BipartiteModel(tuple(sets[j] for j in js), tuple((x,) for x in res.vertices[:sigma]),
                                   A_induced=False, B_induced=True, A_linear=True, B_linear=True)
            return BipartiteModelFound(model, "high-contact vertices")
    else:
        got = monochromatic_subset(range(n), rho + 1, phi, mu, colors=[frozenset()], budget=budget)
        if got is not None:
            return CompleteModelFound(K0.subset(got[1][:mu]))
    # direct search: rho branch sets plus sigma pairwise non-adjacent vertices seeing all of them
    for J in combinations(range(n), rho):
        budget.tick()
        target = 0
        for j in J:
            target |= 1 << j
        used = _mask(sets[j] for j in J)
        cand = 0
        for i in range(n):
            if i in J:
                continue
            for v, m in touch[i]:
                if m & target == target:
                    cand |= 1 << v
        cand &= ~used
        xs = find_stable_set(G, sigma, cand, budget)
        if xs is not None:
            model = BipartiteModel(tuple(sets[j] for j in J), tuple((x,) for x in xs),
                                   A_induced=False, B_induced=True, A_linear=True, B_linear=True)
            return BipartiteModelFound(model, "high-contact vertices")
    return NotApplicable("contact-degree colouring found no monochromatic set of the required size")


# ---------------------------------------------------------------------------
# aligned model or split


def alignment_threshold(d: int, alpha: int, rho: int, sigma: int) -> int:
    return alpha ** (2 * (sigma - 1)) * (d * (sigma - 1) + rho)


def alignment_or_split(G: Graph, M: BipartiteModel, d: int, alpha: int, rho: int, sigma: int):
    """Aligned (alpha, 1)-model on a subpath of B, or a B-induced (rho, sigma)-model.

    M is a B-linear (theta, 1)-model whose B-vertices each see at most d of
    the A-sets.  Whenever theta reaches ``alignment_threshold`` the result is
    one of those two outcomes.
    """
    if min(d, alpha, rho, sigma) < 1:
        raise PreconditionError("parameters must be positive")
    chk = verify_bipartite_model(G, M)
    if not chk:
        raise PreconditionError(f"not a bipartite model: {chk.reason}")
    if M.sigma != 1:
        raise PreconditionError("M must have a single B-set")
    B = list(M.B[0])
    if not is_induced_path(G, B):
        raise PreconditionError("the B-set must be an induced path in stored order")
    a_masks = [to_mask(A) for A in M.A]
    for v in B:
        if sum(1 for m in a_masks if G.adj[v] & m) > d:
            raise PreconditionError(f"vertex {v} of B sees more than {d} A-sets")
    need = alignment_threshold(d, alpha, rho, sigma)
    if M.rho < need:
        raise PreconditionError(f"need at least {need} A-sets, got {M.rho}")
    return _align(G, M, list(M.A), list(range(M.rho)), B, d, alpha, rho, sigma, 0)


def _align(G, M0, A, idx, B, d, alpha, rho, sigma, depth):
    if sigma == 1:
        if len(A) < rho:
            return NotApplicable(f"only {len(A)} A-sets left, need {rho}")
        model = BipartiteModel(tuple(A[:rho]), (tuple(B),), A_induced=M0.A_induced, B_induced=True,
                               A_linear=M0.A_linear, B_linear=True)
        return BipartiteModelFound(model, "split", tuple(idx[:rho]), depth)
    masks = [to_mask(a) for a in A]
    intervals = []
    for m in masks:
        hits = [k for k, v in enumerate(B) if G.adj[v] & m]
        intervals.append((hits[0], hits[-1]))
    theta_next = alignment_threshold(d, alpha, rho, sigma - 1)
    res = interval_stable_or_clique(intervals, alpha * alpha, theta_next + d)
    if isinstance(res, Stable):
        seq = sorted(res.indices, key=lambda i: intervals[i][0])
        es = erdos_szekeres(seq, alpha, alpha)
        if isinstance(es, Increasing):
            chosen = list(es.values)
            end = B[0]
            windows = tuple((B[intervals[i][0]], B[intervals[i][1]]) for i in chosen)
        else:
            chosen = list(reversed(es.values))
            end = B[-1]
            windows = tuple((B[intervals[i][1]], B[intervals[i][0]]) for i in chosen)
        model = BipartiteModel(tuple(A[i] for i in chosen), (tuple(B),), A_induced=M0.A_induced,
                               B_induced=True, A_linear=M0.A_linear, B_linear=True)
        return AlignedFound(model, AlignedWitness((end,), (windows,)), tuple(idx[i] for i in chosen), depth)
    if isinstance(res, Clique):
        x = res.point
        J = [i for i in sorted(res.indices) if not G.adj[B[x]] & masks[i]][:theta_next]
        if len(J) < theta_next:
            return NotApplicable(f"common point sees too many A-sets ({len(J)} < {theta_next} usable)")
        L, R = B[:x], B[x + 1:]
        sub = _align(G, M0, [A[i] for i in J], [idx[i] for i in J], L, d, alpha, rho, sigma - 1, depth + 1)
        if isinstance(sub, BipartiteModelFound):
            m = sub.model
            model = BipartiteModel(m.A, m.B + (tuple(R),), m.A_induced, True, m.A_linear, True)
            return BipartiteModelFound(model, "split", sub.indices, sub.depth)
        return sub
    return NotApplicable(f"interval family too small: {res.best_stable} disjoint, {res.best_clique} overlapping")


# ---------------------------------------------------------------------------
# half-induced models from complete models of small contact degree


def mu_sequence(varrho: int, rho: int, varsigma: int, sigma: int) -> list[int]:
    """mu_1..mu_varsigma (index 0 unused)."""
    mus = [0, varrho]
    for _ in range(2, varsigma + 1):
        mus.append((mus[-1] + 1) ** (2 * (sigma - 1)) * (rho * (sigma - 1) + rho))
    return mus


def half_induced_recursive(G: Graph, K: CompleteModel, varrho: int, rho: int, varsigma: int, sigma: int):
    """Linear B-induced (rho, sigma)-model, or a (varrho, varsigma)-model on K.

    In the second case the A-sets are branch sets C_j and each B-set is a
    subpath of a later branch set C_k, with j_1 < ... < j_varrho < k_1 < ...
    """
    if min(varrho, rho, varsigma, sigma) < 1:
        raise PreconditionError("parameters must be positive")
    if not K.linear:
        raise PreconditionError("K must be linear")
    chk = verify_complete_model(G, K)
    if not chk:
        raise PreconditionError(f"K is not a complete model: {chk.reason}")
    sets = K.branch_sets
    for i, C in enumerate(sets):
        for v in C:
            if contact_degree(G, sets, v, own=i) > rho:
                raise PreconditionError(f"vertex {v} sees more than {rho} other branch sets")
    mus = mu_sequence(varrho, rho, varsigma, sigma)
    if len(sets) < mus[varsigma] + 1:
        raise ModelTooSmall(f"need {mus[varsigma] + 1} branch sets, got {len(sets)}")
    got = _half(G, list(sets), list(range(len(sets))), varrho, rho, varsigma, sigma, mus)
    if isinstance(got, BipartiteModelFound):
        return got
    js, bs = got
    ks = [k for k, _ in bs]
    order = js + ks
    if any(p >= q for p, q in zip(order, order[1:])):
        raise AssertionError("index ordering violated")
    for k, path in bs:
        if to_mask(path) & ~to_mask(sets[k]):
            raise AssertionError("B-set leaves its branch set")
    model = BipartiteModel(tuple(sets[j] for j in js), tuple(p for _, p in bs),
                           A_induced=False, B_induced=True, A_linear=True, B_linear=True)
    return BipartiteModelFound(model, "nested", tuple(order))


def _half(G, sets, idx, varrho, rho, varsigma, sigma, mus):
    top = mus[varsigma]
    if varsigma == 1:
        return list(idx[:varrho]), [(idx[top], tuple(sets[top]))]
    M = BipartiteModel(tuple(sets[:top]), (tuple(sets[top]),), A_linear=True, B_linear=True)
    res = alignment_or_split(G, M, rho, mus[varsigma - 1] + 1, rho, sigma)
    if isinstance(res, BipartiteModelFound):
        return BipartiteModelFound(res.model, "half-induced", res.indices, res.depth)
    if isinstance(res, NotApplicable):
        raise AssertionError(f"alignment step failed above its threshold: {res.reason}")
    picked = list(res.indices)
    sub = _half(G, [sets[p] for p in picked], [idx[p] for p in picked], varrho, rho, varsigma - 1, sigma, mus)
    if isinstance(sub, BipartiteModelFound):
        return sub
    js, bs = sub
    last = js[-1]
    q = next(k for k, p in enumerate(picked) if idx[p] == last)
    path = list(res.model.B[0])
    end = res.witness.ends[0]
    oriented = path if end == path[0] else path[::-1]
    stop = oriented.index(res.witness.windows[0][q][1])
    return js, bs + [(idx[top], tuple(oriented[:stop + 1]))]


def half_induced_main(G: Graph, K0: CompleteModel, a: int, rho: int, sigma: int,
                      budget: Budget | None = None):
    """Linear B-induced (rho, sigma)-model from a large linear complete model."""
    mu = mu_sequence(rho, rho, sigma, sigma)[sigma] + 1
    first = prune_or_half_induced(G, K0, a, mu, rho, sigma, budget)
    if isinstance(first, CompleteModelFound):
        return half_induced_recursive(G, first.model, rho, rho, sigma, sigma)
    return first


# ---------------------------------------------------------------------------
# aligned (alpha, c)-model -> anticomplete pair or induced (b, b)-model


def aligned_to_anticomplete_or_biclique(G: Graph, N: BipartiteModel, w: AlignedWitness,
                                        b: int, c: int, beta: int, budget: Budget | None = None):
    """Split an A-aligned (beta(c+1), c)-model into beta groups of c+1 A-sets.

    Within each group the first c A-sets and the segments of the B-paths
    they attach to form a (c, c)-model; the last A-set separates consecutive
    segments.  Pairs of groups are coloured by which segments touch.
    """
    budget = ensure(budget)
    if min(b, c, beta) < 1:
        raise PreconditionError("parameters must be positive")
    chk = verify_aligned(G, N, w)
    if not chk:
        raise PreconditionError(f"not an aligned model: {chk.reason}")
    if N.rho != beta * (c + 1):
        raise PreconditionError(f"need alpha = beta(c+1) = {beta * (c + 1)}, got {N.rho}")
    if N.sigma != c:
        raise PreconditionError(f"need exactly c = {c} B-paths, got {N.sigma}")
    if not all(are_anticomplete(G, x, y) for x, y in combinations(N.A, 2)):
        raise PreconditionError("the A-sets must be pairwise anticomplete")

    segs: list[list[tuple[int, ...]]] = []  # segs[l][j]
    for l, path in enumerate(N.B):
        oriented = list(path) if w.ends[l] == path[0] else list(path)[::-1]
        pos = {v: k for k, v in enumerate(oriented)}
        wins = w.windows[l]
        row = []
        for j in range(beta):
            lo = pos[wins[j * (c + 1)][0]]
            hi = pos[wins[j * (c + 1) + c - 1][1]]
            row.append(tuple(oriented[lo:hi + 1]))
            if j + 1 < beta:
                sep = to_mask(N.A[j * (c + 1) + c])
                nxt = pos[wins[(j + 1) * (c + 1)][0]]
                if not any(G.adj[v] & sep for v in oriented[hi + 1:nxt]):
                    raise AssertionError("separating A-set has no attachment between consecutive segments")
        segs.append(row)

    seg_masks = [[to_mask(s) for s in row] for row in segs]

    def phi(pair) -> frozenset:
        j, jj = pair
        return frozenset((l, ll) for l in range(c) for ll in range(c)
                         if not are_anticomplete(G, seg_masks[l][j], seg_masks[ll][jj]))

    def group_model(j: int) -> BipartiteModel:
        A = tuple(N.A[j * (c + 1) + k] for k in range(c))
        Bs = tuple(segs[l][j] for l in range(c))
        return BipartiteModel(A, Bs, A_induced=True, B_induced=False, A_linear=N.A_linear, B_linear=True)

    def pair_from(j: int, jj: int) -> AnticompletePair:
        Mj, Mjj = group_model(j), group_model(jj)
        X = tuple(sorted(bits(Mj.A_mask() | Mj.B_mask())))
        Y = tuple(sorted(bits(Mjj.A_mask() | Mjj.B_mask())))
        return AnticompletePair(X, Y, (Mj, Mjj), c)

    got = monochromatic_subset(range(beta), 2, phi, 2 * b, budget=budget)
    if got is not None:
        F, Z = got
        if F:
            l, ll = min(F)
            A = tuple(segs[l][j] for j in Z[:b])
            Bs = tuple(segs[ll][j] for j in Z[b:])
            model = BipartiteModel(A, Bs, A_induced=True, B_induced=True, A_linear=True, B_linear=True)
            return BipartiteModelFound(model, "crossing segments")
        return pair_from(Z[0], Z[b])
    got = monochromatic_subset(range(beta), 2, phi, 2, colors=[frozenset()], budget=budget)
    if got is not None:
        return pair_from(*got[1])
    return NotApplicable("every pair of groups has touching segments")


# ---------------------------------------------------------------------------
# zigzagged constellation -> anticomplete pair


def zigzag_path_count(c: int, q: int) -> int:
    """Paths required: enough for both the c-subset and q-subset pigeonhole counts."""
    return 2 * c * max(comb(c + q - 1, c), comb(c + q - 1, q))


def zigzag_extract(con: Constellation, c: int, q: int, order: Sequence[int] | None = None):
    """Anticomplete X, Y inside an ample q-zigzagged constellation, each a
    (c, c)-constellation and so of treewidth at least c."""
    if c < 1 or q < 1:
        raise PreconditionError("c and q must be positive")
    G = con.graph
    if not is_d_ample(con, 1):
        raise PreconditionError("constellation is not ample")
    if len(con.S) < 2 * c + 3 * q:
        raise PreconditionError(f"need |S| >= 2c+3q = {2 * c + 3 * q}, got {len(con.S)}")
    if con.l < zigzag_path_count(c, q):
        raise PreconditionError(f"need at least {zigzag_path_count(c, q)} paths, got {con.l}")
    per_side = con.l // 2
    order = order if order is not None else con.order
    order = is_q_zigzagged(con, q, order)
    if order is None:
        raise PreconditionError(f"constellation is not {q}-zigzagged")
    order = list(order)
    k = 0
    x1 = order[k]; k += 1
    S1 = order[k:k + c + q - 1]; k += c + q - 1
    Q = order[k:k + q]; k += q
    S2 = order[k:k + c + q - 1]; k += c + q - 1
    x2 = order[k]

    def shortest(x: int, li: int) -> tuple[int, ...]:
        best = None
        for y in Q:
            for r in enumerate_routes(con, x, y):
                if r.path_index == li:
                    key = (len(r.path), r.path)
                    if best is None or key < best:
                        best = key
        if best is None:
            raise AssertionError(f"no route from {x} into Q along path {li}")
        return best[1]

    routes = {}
    for li in range(con.l):
        routes[(1, li)] = shortest(x1, li)
        routes[(2, li)] = shortest(x2, li)
    s1m, s2m = to_mask(S1), to_mask(S2)
    for li in range(con.l):
        if not are_anticomplete(G, s1m, routes[(2, li)][1:-1]) or \
                not are_anticomplete(G, s2m, routes[(1, li)][1:-1]):
            raise AssertionError(f"route interiors on path {li} touch the far side")

    sides = []
    groups = ((1, S1, range(per_side)), (2, S2, range(per_side, 2 * per_side)))
    for side, Si, lis in groups:
        buckets: dict[tuple, list[int]] = {}
        for li in lis:
            inner = to_mask(routes[(side, li)][1:-1])
            hit = tuple(z for z in Si if G.adj[z] & inner)
            if len(hit) < c:
                raise AssertionError("zigzag property failed for a shortest route")
            buckets.setdefault(hit[:c], []).append(li)
        key, lis_c = next((key, v) for key, v in buckets.items() if len(v) >= c)
        paths = [routes[(side, li)][1:-1] for li in lis_c[:c]]
        sides.append((list(key), paths))

    def build(S_part, paths):
        verts = tuple(sorted(set(S_part) | {v for p in paths for v in p}))
        model = BipartiteModel(tuple((x,) for x in S_part), tuple(tuple(p) for p in paths),
                               A_induced=True, B_induced=True, A_linear=True, B_linear=True)
        return verts, model

    X, MX = build(*sides[0])
    Y, MY = build(*sides[1])
    return AnticompletePair(X, Y, (MX, MY), c)
