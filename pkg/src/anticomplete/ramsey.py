"""Constructive Ramsey-type finders.

The guaranteed thresholds behind these tools are astronomically large, so
every finder runs on inputs of any size and reports failure as a value
(``NotFound`` / ``None`` / ``Neither``).  Exhaustive searches take an
optional :class:`Budget`; running out raises ``CapExceeded``, which callers
must keep distinct from a genuine "not found".
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Callable, Hashable, Sequence

from .errors import Budget, PreconditionError, ensure
from .graph import Graph, find_clique, find_stable_set


@dataclass(frozen=True)
class CliqueFound:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class StableFound:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class NotFound:
    reason: str = ""


def ramsey_bound(c: int, s: int) -> int:
    """Binomial upper bound C(c+s-2, c-1) on R(c, s); at most c**s."""
    return comb(c + s - 2, c - 1)


def clique_or_stable(G: Graph, c: int, s: int, within: int | None = None,
                     budget: Budget | None = None):
    """A clique of size c or a stable set of size s in G[within].

    Uses the neighbour / non-neighbour split, which succeeds whenever the
    vertex count reaches C(c+s-2, c-1) (hence whenever it reaches c**s);
    below that it falls back to exhaustive search.
    """
    if c < 1 or s < 1:
        raise PreconditionError("c and s must be positive")
    pool = G.all_mask if within is None else within

    def split(V: int, c: int, s: int):
        if not V:
            return None
        v = (V & -V).bit_length() - 1
        if c == 1:
            return CliqueFound((v,))
        if s == 1:
            return StableFound((v,))
        rest = V & ~(1 << v)
        near = rest & G.adj[v]
        far = rest & ~G.adj[v]
        if near.bit_count() >= ramsey_bound(c - 1, s):
            got = split(near, c - 1, s)
            if isinstance(got, CliqueFound):
                return CliqueFound(tuple(sorted(got.vertices + (v,))))
            if got is not None:
                return got
        if far.bit_count() >= ramsey_bound(c, s - 1):
            got = split(far, c, s - 1)
            if isinstance(got, StableFound):
                return StableFound(tuple(sorted(got.vertices + (v,))))
            if got is not None:
                return got
        return None

    if pool.bit_count() >= ramsey_bound(c, s):
        got = split(pool, c, s)
        if got is not None:
            return got
    clique = find_clique(G, c, pool, budget)
    if clique is not None:
        return CliqueFound(tuple(clique))
    stable = find_stable_set(G, s, pool, budget)
    if stable is not None:
        return StableFound(tuple(stable))
    return NotFound(f"no clique of size {c} and no stable set of size {s}")


def monochromatic_subset(universe: Sequence, m: int, phi: Callable[[tuple], Hashable],
                         target_size: int, colors=None,
                         budget: Budget | None = None) -> tuple[Hashable, list] | None:
    """Least (in universe order) subset of ``target_size`` elements whose
    m-subsets all receive one colour under ``phi``.

    ``phi`` receives m-tuples in universe order.  ``colors`` optionally
    restricts the colours accepted.  Returns ``(colour, subset)`` or None;
    when target_size < m the colour is None.
    """
    if m < 1:
        raise PreconditionError("m must be positive")
    budget = ensure(budget)
    items = list(universe)
    if target_size <= 0:
        return None, []
    if target_size < m:
        return (None, items[:target_size]) if len(items) >= target_size else None
    allowed = None if colors is None else set(colors)
    cache: dict[tuple, Hashable] = {}

    def colour(idx: tuple) -> Hashable:
        if idx not in cache:
            cache[idx] = phi(tuple(items[i] for i in idx))
        return cache[idx]

    def rec(chosen: list[int], start: int, col):
        if len(chosen) == target_size:
            return col, chosen
        need = target_size - len(chosen)
        for i in range(start, len(items) - need + 1):
            budget.tick()
            ok = True
            cur = col
            for sub in combinations(chosen, m - 1):
                k = colour(sub + (i,))
                if cur is None:
                    if allowed is not None and k not in allowed:
                        ok = False
                        break
                    cur = k
                elif k != cur:
                    ok = False
                    break
            if ok:
                got = rec(chosen + [i], i + 1, cur)
                if got is not None:
                    return got
        return None

    got = rec([], 0, None)
    if got is None:
        return None
    col, idx = got
    return col, [items[i] for i in idx]


def verify_monochromatic_subset(subset: Sequence, m: int, phi, color) -> bool:
    return all(phi(t) == color for t in combinations(subset, m))


def monochromatic_grid(lists: Sequence[Sequence], phi: Callable[[tuple], Hashable], q: int,
                       colors=None, budget: Budget | None = None):
    """q-subsets Z_j of each list with phi constant on Z_1 x ... x Z_n.

    The first n-1 subsets are enumerated in lexicographic order; the last is
    read off from the elements whose colour is constant over the partial
    product.  Among usable colours the one with the most candidates wins
    (earliest first candidate on ties).  Returns ``(colour, [Z_1..Z_n])`` or
    None.
    """
    if q < 1:
        raise PreconditionError("q must be positive")
    budget = ensure(budget)
    lists = [list(u) for u in lists]
    if not lists:
        return None
    if any(len(u) < q for u in lists):
        return None
    allowed = None if colors is None else set(colors)
    head, last = lists[:-1], lists[-1]

    for picks in product(*[list(combinations(u, q)) for u in head]):
        budget.tick()
        cells = list(product(*picks))
        classes: dict = {}
        for z in last:
            budget.tick()
            seen = {phi(cell + (z,)) for cell in cells}
            if len(seen) == 1:
                k = seen.pop()
                if allowed is None or k in allowed:
                    classes.setdefault(k, []).append(z)
        usable = [(k, zs) for k, zs in classes.items() if len(zs) >= q]
        if usable:
            k, zs = max(usable, key=lambda kz: (len(kz[1]), -last.index(kz[1][0])))
            return k, [list(p) for p in picks] + [zs[:q]]
    return None


def verify_monochromatic_grid(Z: Sequence[Sequence], phi, color) -> bool:
    return all(phi(cell) == color for cell in product(*Z))


class TooShort(PreconditionError):
    pass


@dataclass(frozen=True)
class Increasing:
    values: tuple
    positions: tuple[int, ...]


@dataclass(frozen=True)
class Decreasing:
    values: tuple
    positions: tuple[int, ...]


def _longest_monotone(seq: Sequence, increasing: bool) -> list[int]:
    """Positions of a longest strictly monotone subsequence (patience sorting)."""
    keys = list(seq) if increasing else [_Rev(x) for x in seq]
    tails: list = []
    tail_pos: list[int] = []
    prev = [-1] * len(keys)
    for i, x in enumerate(keys):
        k = bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
            tail_pos.append(i)
        else:
            tails[k] = x
            tail_pos[k] = i
        prev[i] = tail_pos[k - 1] if k else -1
    out = []
    i = tail_pos[-1] if tail_pos else -1
    while i != -1:
        out.append(i)
        i = prev[i]
    return out[::-1]


class _Rev:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return other.x < self.x

    def __eq__(self, other):
        return self.x == other.x


def erdos_szekeres(seq: Sequence, a: int, b: int):
    """Increasing subsequence of length a or decreasing one of length b."""
    if a < 1 or b < 1:
        raise PreconditionError("a and b must be positive")
    need = (a - 1) * (b - 1) + 1
    if len(seq) < need:
        raise TooShort(f"need at least {need} elements, got {len(seq)}")
    if len(set(seq)) != len(seq):
        raise PreconditionError("elements must be distinct")
    inc = _longest_monotone(seq, True)
    if len(inc) >= a:
        pos = tuple(inc[:a])
        return Increasing(tuple(seq[i] for i in pos), pos)
    dec = _longest_monotone(seq, False)
    pos = tuple(dec[:b])
    return Decreasing(tuple(seq[i] for i in pos), pos)


@dataclass(frozen=True)
class Stable:
    """Pairwise disjoint intervals (indices into the input)."""
    indices: tuple[int, ...]
    intervals: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Clique:
    """Intervals sharing the common point ``point``."""
    indices: tuple[int, ...]
    intervals: tuple[tuple[int, int], ...]
    point: int


@dataclass(frozen=True)
class Neither:
    s: int
    m: int
    best_stable: int
    best_clique: int


def max_disjoint_intervals(intervals: Sequence[tuple[int, int]]) -> list[int]:
    order = sorted(range(len(intervals)), key=lambda i: (intervals[i][1], intervals[i][0], i))
    out = []
    end = None
    for i in order:
        lo, hi = intervals[i]
        if end is None or lo > end:
            out.append(i)
            end = hi
    return out


def max_overlap_point(intervals: Sequence[tuple[int, int]]) -> tuple[int | None, list[int]]:
    events = []
    for lo, hi in intervals:
        events.append((lo, 0))
        events.append((hi, 1))
    events.sort()
    depth = best = 0
    point = None
    for x, kind in events:
        if kind == 0:
            depth += 1
            if depth > best:
                best, point = depth, x
        else:
            depth -= 1
    if point is None:
        return None, []
    return point, [i for i, (lo, hi) in enumerate(intervals) if lo <= point <= hi]


def interval_stable_or_clique(intervals: Sequence[tuple[int, int]], s: int, m: int):
    """Disjoint family of size >= s or a common-point family of size >= m.

    Interval graphs are perfect, so one of the two exists once there are at
    least s*m intervals.  Both maxima are computed exactly; the disjoint
    family is preferred when both qualify.
    """
    for lo, hi in intervals:
        if lo > hi:
            raise PreconditionError(f"interval ({lo}, {hi}) is reversed")
    stable = max_disjoint_intervals(intervals)
    if len(stable) >= s:
        return Stable(tuple(stable), tuple(intervals[i] for i in stable))
    point, clique = max_overlap_point(intervals)
    if len(clique) >= m:
        return Clique(tuple(clique), tuple(intervals[i] for i in clique), point)
    return Neither(s, m, len(stable), len(clique))
