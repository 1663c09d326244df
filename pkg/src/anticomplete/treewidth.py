"""Exact treewidth with tree-decomposition certificates.

The decision procedure for "tw <= k" recurses over connected vertex sets C
whose boundary N(C) has at most k vertices: C is feasible when some v in C
can be eliminated last, i.e. every component D of C - v is feasible, giving
the bag N(C) + v.  Memoising on C keeps the search to blocks with small
boundary, which is what makes walls and constellations with a few dozen
vertices tractable.  Lower bounds (minor-min-width) and a min-fill upper
bound bracket the values of k that need to be decided.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Budget, CapExceeded, ensure
from .graph import Graph, bits, component_masks, to_mask

DEFAULT_CAP = 40


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset, ...]
    tree: tuple[tuple[int, int], ...]
    width: int

    @classmethod
    def build(cls, bags, tree) -> "TreeDecomposition":
        bags = tuple(frozenset(b) for b in bags)
        width = max((len(b) for b in bags), default=0) - 1
        return cls(bags, tuple(tree), max(width, -1))


def verify_decomposition(G: Graph, td: TreeDecomposition) -> bool:
    nb = len(td.bags)
    if G.n == 0:
        return td.width == max((len(b) for b in td.bags), default=0) - 1
    if nb == 0 or len(td.tree) != nb - 1:
        return False
    nbrs: list[list[int]] = [[] for _ in range(nb)]
    for a, b in td.tree:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            return False
        nbrs[a].append(b)
        nbrs[b].append(a)
    # tree: connected with nb - 1 edges
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != nb:
        return False
    masks = [to_mask(b) for b in td.bags]
    if any(v < 0 or v >= G.n for b in td.bags for v in b):
        return False
    covered = 0
    for m in masks:
        covered |= m
    if covered != G.all_mask:
        return False
    for u, v in G.edges():
        e = (1 << u) | (1 << v)
        if not any(m & e == e for m in masks):
            return False
    for v in range(G.n):
        holders = {i for i, m in enumerate(masks) if m >> v & 1}
        start = next(iter(holders))
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in holders and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != holders:
            return False
    return td.width == max(len(b) for b in td.bags) - 1


class _Decider:
    """Decides tw(G[within]) <= k and reconstructs a decomposition."""

    def __init__(self, G: Graph, k: int, within: int, budget: Budget):
        self.G = G
        self.k = k
        self.within = within
        self.adj = [r & within for r in G.adj]
        self.memo: dict[int, int | None] = {}
        self.budget = budget

    def boundary(self, C: int) -> int:
        out = 0
        for v in bits(C):
            out |= self.adj[v]
        return out & ~C

    def comps(self, mask: int) -> list[int]:
        adj = self.adj
        out = []
        rest = mask
        while rest:
            frontier = rest & -rest
            comp = frontier
            while frontier:
                nxt = 0
                for v in bits(frontier):
                    nxt |= adj[v]
                frontier = nxt & rest & ~comp
                comp |= frontier
            out.append(comp)
            rest &= ~comp
        return out

    def feasible(self, C: int) -> bool:
        """True iff block C (with its boundary) admits width <= k.

        Memo stores the last-eliminated vertex (or -1 for a single-bag block).
        """
        if C in self.memo:
            return self.memo[C] is not None
        self.budget.tick()
        N = self.boundary(C)
        nN = N.bit_count()
        if nN > self.k:
            self.memo[C] = None
            return False
        if C.bit_count() + nN <= self.k + 1:
            self.memo[C] = -1
            return True
        self.memo[C] = None
        # vertices with most boundary contact first: they tend to cut C well
        order = sorted(bits(C), key=lambda v: -(self.adj[v] & C).bit_count())
        for v in order:
            parts = self.comps(C & ~(1 << v))
            if all(self.boundary(D).bit_count() <= self.k for D in parts) and \
                    all(self.feasible(D) for D in parts):
                self.memo[C] = v
                return True
        return False

    def decide(self) -> bool:
        return all(self.feasible(C) for C in self.comps(self.within))

    def decomposition(self) -> TreeDecomposition:
        bags: list[set] = []
        tree: list[tuple[int, int]] = []

        def emit(C: int, parent: int | None) -> None:
            v = self.memo[C]
            N = self.boundary(C)
            idx = len(bags)
            if v == -1:
                bags.append(set(bits(C | N)))
            else:
                bags.append(set(bits(N | (1 << v))))
            if parent is not None:
                tree.append((parent, idx))
            if v != -1:
                for D in self.comps(C & ~(1 << v)):
                    emit(D, idx)

        roots = []
        for C in self.comps(self.within):
            roots.append(len(bags))
            emit(C, None)
        for a, b in zip(roots, roots[1:]):
            tree.append((a, b))
        return TreeDecomposition.build(bags, tree)


def _min_fill_order(G: Graph, within: int) -> tuple[list[int], int]:
    adj = {v: G.adj[v] & within for v in bits(within)}
    order = []
    width = -1
    while adj:
        best = None
        for v, nb in adj.items():
            fill = 0
            for w in bits(nb):
                fill += (nb & ~adj[w] & ~(1 << w)).bit_count()
            key = (fill, nb.bit_count(), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        nb = adj.pop(v)
        width = max(width, nb.bit_count())
        for w in bits(nb):
            adj[w] = (adj[w] | nb) & ~(1 << w) & ~(1 << v)
        order.append(v)
    return order, width


def decomposition_from_order(G: Graph, order: list[int], within: int | None = None) -> TreeDecomposition:
    """Standard elimination-order decomposition (one bag per vertex)."""
    within = G.all_mask if within is None else within
    adj = {v: G.adj[v] & within for v in order}
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    parent = {}
    for v in order:
        nb = adj[v]
        bags.append(set(bits(nb)) | {v})
        later = list(bits(nb))
        for w in later:
            adj[w] = (adj[w] | nb) & ~(1 << w) & ~(1 << v)
        if later:
            parent[pos[v]] = min(pos[w] for w in later)
    tree = [(i, p) for i, p in parent.items()]
    # join the forest into a tree
    roots = [i for i in range(len(order)) if i not in parent]
    for a, b in zip(roots, roots[1:]):
        tree.append((a, b))
    return TreeDecomposition.build(bags, tree)


def minor_min_width(G: Graph, within: int | None = None) -> int:
    """Contraction-degeneracy style lower bound on treewidth."""
    within = G.all_mask if within is None else within
    adj = {v: G.adj[v] & within for v in bits(within)}
    lb = 0
    while len(adj) > 1:
        v = min(adj, key=lambda x: (adj[x].bit_count(), x))
        d = adj[v].bit_count()
        lb = max(lb, d)
        if d == 0:
            del adj[v]
            continue
        u = min(bits(adj[v]), key=lambda x: ((adj[x] & adj[v]).bit_count(), adj[x].bit_count(), x))
        # contract v into u
        nb = adj.pop(v)
        for w in bits(nb):
            adj[w] &= ~(1 << v)
        merged = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
        adj[u] = merged
        for w in bits(merged):
            adj[w] |= 1 << u
    return lb


def treewidth_at_most(G: Graph, k: int, within: int | None = None,
                      budget: Budget | None = None) -> TreeDecomposition | None:
    within = G.all_mask if within is None else within
    if k < 0:
        return None if within else TreeDecomposition.build([], [])
    d = _Decider(G, k, within, ensure(budget))
    if not d.decide():
        return None
    return d.decomposition()


def treewidth_at_least(G: Graph, c: int, within: int | None = None,
                       budget: Budget | None = None) -> bool:
    within = G.all_mask if within is None else within
    if c <= 0:
        return True
    if within.bit_count() < c + 1:
        return False
    if minor_min_width(G, within) >= c:
        return True
    return treewidth_at_most(G, c - 1, within, budget) is None


def exact_treewidth(G: Graph, cap: int | None = DEFAULT_CAP, within: int | None = None,
                    budget: Budget | None = None) -> TreeDecomposition:
    """Minimum-width tree decomposition of G (or of G[within])."""
    within = G.all_mask if within is None else within
    n = within.bit_count()
    if cap is not None and n > cap:
        raise CapExceeded(f"{n} vertices exceeds the exact-treewidth cap {cap}")
    if n == 0:
        return TreeDecomposition.build([], [])
    budget = ensure(budget)
    order, ub = _min_fill_order(G, within)
    best = decomposition_from_order(G, order, within)
    lb = minor_min_width(G, within)
    for k in range(lb, ub):
        td = treewidth_at_most(G, k, within, budget)
        if td is not None:
            return td
    return best


def treewidth(G: Graph, cap: int | None = DEFAULT_CAP) -> int:
    return exact_treewidth(G, cap).width


def induced_treewidth(G: Graph, X, cap: int | None = DEFAULT_CAP) -> int:
    return exact_treewidth(G, cap, within=to_mask(X)).width


# ---------------------------------------------------------------------------
# bipartite minor models
#
# Any (rho, sigma)-model can be shrunk so that each A-set is an inclusion-
# minimal connected set touching every B-set, and then each B-set minimal
# for the (new) A-sets.  A minimal connected set touching k targets has at
# most k non-cut vertices, so A-sets range over connected sets with at most
# sigma non-cut vertices (grown by size), and B-sets over minimal connected
# sets hitting N(A_1), ..., N(A_rho) outside the A-sets.


def _non_cut_count(G: Graph, X: int) -> int:
    if X.bit_count() <= 2:
        return X.bit_count()
    return sum(1 for v in bits(X) if len(component_masks(G, X & ~(1 << v))) == 1)


def connected_sets(G: Graph, max_size: int, within: int | None = None,
                   budget: Budget | None = None):
    """Yield every connected vertex set of size <= max_size exactly once."""
    allowed = G.all_mask if within is None else within
    adj = G.adj

    def rec(S: int, ext: int, forb: int, size: int):
        yield S
        if size == max_size:
            return
        while ext:
            w = ext & -ext
            ext ^= w
            v = w.bit_length() - 1
            if budget is not None:
                budget.tick()
            nS = S | w
            yield from rec(nS, (ext | adj[v]) & allowed & ~nS & ~forb, forb, size + 1)
            forb |= w

    forb = 0
    for v in bits(allowed):
        forb |= 1 << v
        yield from rec(1 << v, adj[v] & allowed & ~forb, forb, 1)


def _hits_all(X: int, targets: list[int]) -> bool:
    return all(X & t for t in targets)


def _is_minimal_hitting(G: Graph, X: int, targets: list[int]) -> bool:
    for v in bits(X):
        for D in component_masks(G, X & ~(1 << v)):
            if _hits_all(D, targets):
                return False
    return True


def minimal_hitting_sets(G: Graph, within: int, targets: list[int],
                         budget: Budget | None = None) -> list[int]:
    """All inclusion-minimal connected subsets of G[within] meeting every target."""
    budget = ensure(budget)
    T = [t & within for t in targets]
    if not T or any(t == 0 for t in T):
        return []
    found: set[int] = set()
    seen: set[int] = set()
    adj = G.adj

    def grow(X: int) -> None:
        if X in seen:
            return
        seen.add(X)
        budget.tick()
        miss = next((t for t in T if not X & t), None)
        if miss is None:
            if _is_minimal_hitting(G, X, T):
                found.add(X)
            return
        NX = G.neighborhood(X) & within
        # shortest connections from X into the missed target are induced
        # paths whose vertices after the first avoid N(X)
        for u in bits(NX):
            walk(X, NX, miss, 1 << u, u)

    def walk(X: int, NX: int, miss: int, P: int, last: int) -> None:
        if miss >> last & 1:
            grow(X | P)
            return
        budget.tick()
        for w in bits(adj[last] & within & ~X & ~NX & ~P):
            if adj[w] & P & ~(1 << last):
                continue
            walk(X, NX, miss, P | (1 << w), w)

    for h in bits(T[0]):
        grow(1 << h)
    return sorted(found, key=lambda m: (m.bit_count(), list(bits(m))))


def _pick_family(cands: list[int], count: int, G: Graph, induced: bool,
                 budget: Budget) -> list[int] | None:
    def compatible(a: int, b: int) -> bool:
        if a & b:
            return False
        return not induced or not (G.neighborhood(a) & b)

    def rec(start: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == count:
            return chosen
        for i in range(start, len(cands) - (count - len(chosen)) + 1):
            budget.tick()
            c = cands[i]
            if all(compatible(c, d) for d in chosen):
                got = rec(i + 1, chosen + [c])
                if got is not None:
                    return got
        return None

    return rec(0, [])


def find_bipartite_minor_model(G: Graph, rho: int, sigma: int,
                               require_A_induced: bool = False,
                               require_B_induced: bool = False,
                               budget: Budget | None = None,
                               max_size: int | None = None):
    """Search for a (rho, sigma)-model with the requested induced flags.

    Exhaustive when ``max_size`` is None; returns None only after every
    A-family has been tried.  Raises CapExceeded when the budget runs out.
    """
    from .structures import BipartiteModel

    if rho < 1 or sigma < 1:
        raise ValueError("rho and sigma must be positive")
    budget = ensure(budget)
    n = G.n
    if n < rho + sigma:
        return None
    limit = n if max_size is None else min(max_size, n)
    pool: list[int] = []
    for D in range(1, limit + 1):
        sized = [X for X in connected_sets(G, D, budget=budget) if X.bit_count() == D]
        if not sized:
            break
        fresh = [X for X in sized if _non_cut_count(G, X) <= sigma]
        fresh.sort(key=lambda m: (-G.neighborhood(m).bit_count(), list(bits(m))))
        base = len(pool)
        pool.extend(fresh)
        if not fresh:
            continue
        got = _search_A(G, pool, base, rho, sigma, require_A_induced, require_B_induced, budget)
        if got is not None:
            A, B = got
            A_sets = tuple(tuple(bits(a)) for a in A)
            B_sets = tuple(tuple(bits(b)) for b in B)
            return BipartiteModel(A_sets, B_sets,
                                  A_induced=_pairwise_anticomplete(G, A),
                                  B_induced=_pairwise_anticomplete(G, B))
    return None


def _pairwise_anticomplete(G: Graph, sets: list[int]) -> bool:
    return all(not (a & b) and not (G.neighborhood(a) & b)
               for i, a in enumerate(sets) for b in sets[i + 1:])


def _search_A(G, pool, base, rho, sigma, A_ind, B_ind, budget):
    """Families of rho pool sets using at least one index >= base."""
    full = G.all_mask

    def finish(chosen: list[int]):
        A_mask = 0
        for a in chosen:
            A_mask |= a
        W = full & ~A_mask
        T = [G.neighborhood(a) & W for a in chosen]
        if any(t.bit_count() < sigma for t in T):
            return None
        # all targets must share one component of G - A
        union = 0
        for t in T:
            union |= t
        if not any(all(D & t for t in T) for D in component_masks(G, W) if D & union):
            return None
        cands = minimal_hitting_sets(G, W, T, budget)
        B = _pick_family(cands, sigma, G, B_ind, budget)
        return None if B is None else (chosen, B)

    def rec(start: int, chosen: list[int], used: int, fresh_used: bool):
        if len(chosen) == rho:
            return finish(chosen) if fresh_used else None
        for i in range(start, len(pool)):
            if not fresh_used and len(chosen) == rho - 1 and i < base:
                continue
            budget.tick()
            X = pool[i]
            if X & used:
                continue
            if A_ind and G.neighborhood(X) & used:
                continue
            got = rec(i + 1, chosen + [X], used | X, fresh_used or i >= base)
            if got is not None:
                return got
        return None

    return rec(0, [], 0, False)


# ---------------------------------------------------------------------------
# anticomplete pairs
#
# If X, Y are anticomplete with tw >= c we may take Y connected and
# inclusion-minimal with tw(Y) >= c; then some component of G - N[Y] has
# tw >= c.  Both "tw(Y) >= c" and "G - N[Y] keeps a component of tw >= c"
# are monotone in Y, so connected sets are grown one vertex at a time and a
# branch is cut as soon as the second condition fails.  Every minimal witness
# is reached through connected subsets that pass the test, so the search is
# exhaustive.


def minimal_separators(G: Graph, within: int, budget: Budget | None = None):
    """Yield the minimal separators of the connected graph G[within]."""
    budget = ensure(budget)
    adj = [r & within for r in G.adj]

    def nbhd(C: int) -> int:
        out = 0
        for v in bits(C):
            out |= adj[v]
        return out & ~C

    seen: set[int] = set()
    queue: list[int] = []
    for v in bits(within):
        closed = adj[v] | (1 << v)
        for C in component_masks(G, within & ~closed):
            S = nbhd(C)
            if S and S not in seen:
                seen.add(S)
                queue.append(S)
                yield S
    k = 0
    while k < len(queue):
        S = queue[k]
        k += 1
        for x in bits(S):
            budget.tick()
            for C in component_masks(G, within & ~(S | adj[x])):
                T = nbhd(C)
                if T and T not in seen:
                    seen.add(T)
                    queue.append(T)
                    yield T


def find_anticomplete_pair(G: Graph, c: int, budget: Budget | None = None) -> tuple[list[int], list[int]] | None:
    """Anticomplete X, Y with tw(G[X]), tw(G[Y]) >= c, or None (exhaustive)."""
    if c < 1:
        raise ValueError("c must be positive")
    budget = ensure(budget)
    cache: dict[int, bool] = {}

    def big(mask: int) -> bool:
        if mask.bit_count() <= c:
            return False
        if mask not in cache:
            cache[mask] = treewidth_at_least(G, c, mask, budget)
        return cache[mask]

    def heavy(rest: int) -> list[int]:
        return [D for D in component_masks(G, rest) if big(D)]

    top = heavy(G.all_mask)
    if len(top) >= 2:
        return list(bits(top[0])), list(bits(top[1]))
    if not top:
        return None
    H = top[0]
    adj = G.adj

    def rec(Y: int, ext: int, forb: int):
        budget.tick()
        closed = Y | G.neighborhood(Y)
        others = heavy(H & ~closed)
        if not others:
            return None
        if big(Y):
            X = others[0]
            # widen Y to its whole side of X for a canonical, maximal witness
            side = next(D for D in component_masks(G, H & ~(X | G.neighborhood(X))) if D & Y)
            return side, X
        while ext:
            w = ext & -ext
            ext ^= w
            v = w.bit_length() - 1
            got = rec(Y | w, (ext | adj[v]) & H & ~(Y | w) & ~forb, forb)
            if got is not None:
                return got
            forb |= w
        return None

    forb = 0
    for v in bits(H):
        forb |= 1 << v
        got = rec(1 << v, adj[v] & H & ~forb, forb)
        if got is not None:
            Y, X = got
            first, second = sorted((X, Y), key=lambda m: list(bits(m)))
            return list(bits(first)), list(bits(second))
    return None
