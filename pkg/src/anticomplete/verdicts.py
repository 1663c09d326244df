"""Trichotomy verifiers and the corpus sweep, plus the candidate and clean predicates.

All searches are exhaustive up to a node/time budget.  A search that runs out
of budget yields ``Unknown``; ``AllFailed`` is reported only after every
sub-search completed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .constellations import Constellation, is_d_ample, is_interrupted
from .errors import Budget, CapExceeded, PreconditionError, ensure
from .extraction import (AnticompletePair, BipartiteModelFound, ConstellationFound, verify_outcome)
from .generators import gen_wall, line_graph
from .graph import (Graph, bits, find_clique, find_induced_biclique, is_clique, to_mask)
from .patterns import find_induced_pattern, find_long_hole, wall_line_pattern, wall_pattern
from .ramsey import CliqueFound
from .structures import OK, BipartiteModel, Check, fail
from .treewidth import (exact_treewidth, find_anticomplete_pair, find_bipartite_minor_model,
                        minor_min_width, treewidth_at_least)

MAX_WALL_T = 4


@dataclass(frozen=True)
class Verdict:
    """Three-valued answer; a ``value`` of None means unknown."""

    value: bool | None
    witness: object = None
    reason: str = ""

    @property
    def unknown(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class AllFailed:
    reason: str = "no outcome found"


@dataclass(frozen=True)
class Unknown:
    reason: str


@dataclass
class TrichotomyReport:
    graph_id: str
    statement: str
    params: dict
    label: str  # "a", "b", "c", "none" or "unknown"
    outcome: object
    elapsed: float = 0.0
    budget_used: int = 0
    budget_hit: bool = False


def restrict(G: Graph, mask: int) -> Graph:
    """G with every edge leaving ``mask`` removed (vertex labels kept)."""
    return Graph.from_rows([G.adj[v] & mask if mask >> v & 1 else 0 for v in range(G.n)])


# ---------------------------------------------------------------------------
# clean and candidate predicates


@lru_cache(maxsize=None)
def _pattern_lower_bounds(t: int) -> tuple[int, int]:
    return minor_min_width(gen_wall(t)), minor_min_width(line_graph(gen_wall(t)))


def is_t_clean(G: Graph, t: int, budget: Budget | None = None) -> Verdict:
    """No induced K_{t+1}, K_{t,t}, subdivided W_{t x t} or line graph of one."""
    if t < 1:
        raise PreconditionError("t must be positive")
    if t > MAX_WALL_T:
        raise PreconditionError(f"wall checks are limited to t <= {MAX_WALL_T}")
    budget = ensure(budget)
    try:
        clique = find_clique(G, t + 1, None, budget)
        if clique is not None:
            return Verdict(False, ("clique", tuple(clique)), f"induced K_{t + 1}")
        bic = find_induced_biclique(G, t, budget)
        if bic is not None:
            return Verdict(False, ("biclique", tuple(map(tuple, bic))), f"induced K_{t},{t}")
        if t == 1:
            hole = find_long_hole(G, 6, budget)
            if hole is not None:
                return Verdict(False, ("wall", tuple(hole)), "induced cycle of length at least 6")
            return Verdict(True)
        wall_lb, line_lb = _pattern_lower_bounds(t)
        for kind, pattern, lb in (("wall", wall_pattern(t), wall_lb),
                                  ("line-wall", wall_line_pattern(t), line_lb)):
            if G.n < pattern.min_vertices():
                continue
            try:
                if not treewidth_at_least(G, lb, None, Budget(nodes=200_000)):
                    continue
            except CapExceeded:
                pass
            emb = find_induced_pattern(G, pattern, budget)
            if emb is not None:
                return Verdict(False, (kind, emb), f"induced {kind} pattern for t={t}")
    except CapExceeded as exc:
        return Verdict(None, None, str(exc))
    return Verdict(True)


def is_candidate(G: Graph, a: int, b: int, c: int, budget: Budget | None = None) -> Verdict:
    """K_a-free, no induced (b, b)-model, no anticomplete pair of treewidth >= c."""
    if min(a, b, c) < 1:
        raise PreconditionError("a, b, c must be positive")
    budget = ensure(budget)
    try:
        clique = find_clique(G, a, None, budget)
        if clique is not None:
            return Verdict(False, CliqueFound(tuple(clique)), f"contains K_{a}")
        model = find_bipartite_minor_model(G, b, b, True, True, budget)
        if model is not None:
            return Verdict(False, BipartiteModelFound(model, "induced"), f"induced ({b},{b})-model")
        pair = find_anticomplete_pair(G, c, budget)
        if pair is not None:
            return Verdict(False, AnticompletePair(tuple(pair[0]), tuple(pair[1]), (), c),
                           f"anticomplete pair of treewidth >= {c}")
    except CapExceeded as exc:
        return Verdict(None, None, str(exc))
    return Verdict(True)


# ---------------------------------------------------------------------------
# interrupted constellations as induced subgraphs


def find_ample_interrupted(G: Graph, s: int, budget: Budget | None = None) -> Constellation | None:
    """An induced subgraph (S, L) that is an ample interrupted s-constellation.

    Enumerates induced paths L (each end attached to S; trimming unattached
    ends keeps a valid constellation), then stable s-sets of L-attached
    vertices with pairwise disjoint L-neighbourhoods, then the order search.
    """
    if s < 1:
        raise PreconditionError("s must be positive")
    budget = ensure(budget)
    full = G.all_mask

    def pick_S(path: list[int], lmask: int) -> Constellation | None:
        outside = full & ~lmask
        cands = [v for v in bits(outside) if G.adj[v] & lmask]
        ends = (1 << path[0]) | (1 << path[-1])

        def rec(start: int, chosen: list[int], taken: int, ban: int):
            budget.tick()
            if len(chosen) == s:
                if ends & ~taken:
                    return None
                X = to_mask(chosen) | lmask
                H = restrict(G, X)
                con = Constellation(H, tuple(chosen), (tuple(path),))
                if not is_d_ample(con, 1):
                    return None
                order = is_interrupted(con)
                return None if order is None else con.with_order(order)
            for k in range(start, len(cands)):
                v = cands[k]
                nb = G.adj[v] & lmask
                if nb & taken or (1 << v) & ban:
                    continue
                got = rec(k + 1, chosen + [v], taken | nb, ban | G.adj[v])
                if got is not None:
                    return got
            return None

        return rec(0, [], 0, 0)

    def grow(path: list[int], lmask: int):
        budget.tick()
        if path[0] <= path[-1]:
            got = pick_S(path, lmask)
            if got is not None:
                return got
        last = path[-1]
        for w in bits(G.adj[last] & ~lmask):
            if G.adj[w] & lmask & ~(1 << last):
                continue
            got = grow(path + [w], lmask | (1 << w))
            if got is not None:
                return got
        return None

    for v in range(G.n):
        got = grow([v], 1 << v)
        if got is not None:
            return got
    return None


# ---------------------------------------------------------------------------
# trichotomies


def _run(G: Graph, graph_id: str, statement: str, params: dict, steps, budget: Budget) -> TrichotomyReport:
    t0 = time.monotonic()
    label, outcome, hit = "none", AllFailed(), False
    try:
        for lab, search in steps:
            got = search()
            if got is not None:
                label, outcome = lab, got
                break
    except CapExceeded as exc:
        label, outcome, hit = "unknown", Unknown(str(exc)), True
    return TrichotomyReport(graph_id, statement, dict(params), label, outcome,
                            time.monotonic() - t0, budget.used, hit)


def trichotomy_ind_minor(G: Graph, a: int, b: int, c: int, budget: Budget | None = None,
                         graph_id: str = "") -> TrichotomyReport:
    """Clique K_a, induced (b, b)-model, or anticomplete pair of treewidth >= c."""
    if min(a, b, c) < 1:
        raise PreconditionError("a, b, c must be positive")
    budget = ensure(budget)

    def clique():
        got = find_clique(G, a, None, budget)
        return None if got is None else CliqueFound(tuple(got))

    def model():
        got = find_bipartite_minor_model(G, b, b, True, True, budget)
        return None if got is None else BipartiteModelFound(got, "induced")

    def pair():
        got = find_anticomplete_pair(G, c, budget)
        return None if got is None else AnticompletePair(tuple(got[0]), tuple(got[1]), (), c)

    return _run(G, graph_id, "induced-minor", {"a": a, "b": b, "c": c},
                [("a", clique), ("b", model), ("c", pair)], budget)


def trichotomy_isg(G: Graph, c: int, s: int, t: int, budget: Budget | None = None,
                   graph_id: str = "") -> TrichotomyReport:
    """Induced K_{t+1} or K_{t,t}, induced ample interrupted s-constellation,
    or anticomplete pair of treewidth >= c."""
    if min(c, s, t) < 1:
        raise PreconditionError("c, s, t must be positive")
    budget = ensure(budget)

    def dense():
        got = find_clique(G, t + 1, None, budget)
        if got is not None:
            return CliqueFound(tuple(got))
        bic = find_induced_biclique(G, t, budget)
        if bic is None:
            return None
        model = BipartiteModel(tuple((v,) for v in bic[0]), tuple((v,) for v in bic[1]),
                               True, True, True, True)
        return BipartiteModelFound(model, "induced biclique")

    def constellation():
        got = find_ample_interrupted(G, s, budget)
        return None if got is None else ConstellationFound(got, "interrupted")

    def pair():
        got = find_anticomplete_pair(G, c, budget)
        return None if got is None else AnticompletePair(tuple(got[0]), tuple(got[1]), (), c)

    return _run(G, graph_id, "induced-subgraph", {"c": c, "s": s, "t": t},
                [("a", dense), ("b", constellation), ("c", pair)], budget)


def verify_report(G: Graph, rep: TrichotomyReport) -> Check:
    """Re-check a report's certificate against the graph and its parameters."""
    out, p = rep.outcome, rep.params
    if rep.label in ("none", "unknown"):
        return OK
    if isinstance(out, CliqueFound):
        size = p["a"] if rep.statement == "induced-minor" else p["t"] + 1
        if len(out.vertices) != size or not is_clique(G, out.vertices):
            return fail("clique certificate rejected")
        return OK
    chk = verify_outcome(G, out)
    if not chk:
        return chk
    if isinstance(out, BipartiteModelFound):
        need = p["b"] if rep.statement == "induced-minor" else p["t"]
        m = out.model
        if not m.induced or m.rho < need or m.sigma < need:
            return fail("bipartite model is not an induced model of the required size")
        if rep.statement == "induced-subgraph" and not all(len(x) == 1 for x in m.A + m.B):
            return fail("outcome (a) needs an induced biclique, not a model")
    elif isinstance(out, AnticompletePair):
        if out.c < p["c"]:
            return fail("pair certified at too small a treewidth")
    elif isinstance(out, ConstellationFound):
        if out.constellation.s != p["s"] or out.constellation.l != 1:
            return fail("constellation has the wrong shape")
    else:
        return fail(f"unexpected outcome {type(out).__name__}")
    return OK


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepResult:
    reports: list[TrichotomyReport]
    summary: dict = field(default_factory=dict)


def _sweep_one(job):
    graph_id, G, statement, params, nodes, seconds = job
    budget = Budget(nodes=nodes, seconds=seconds)
    if statement == "induced-minor":
        rep = trichotomy_ind_minor(G, params["a"], params["b"], params["c"], budget, graph_id)
    else:
        rep = trichotomy_isg(G, params["c"], params["s"], params["t"], budget, graph_id)
    chk = verify_report(G, rep)
    tw = None
    if rep.label == "none":
        tw = exact_treewidth(G, cap=None).width
    return rep, bool(chk), chk.reason, tw


def sweep(corpus: Iterable[tuple[str, Graph]], params: dict, statement: str = "induced-minor",
          budget_nodes: int | None = None, budget_seconds: float | None = None,
          jobs: int = 1) -> SweepResult:
    """Run a trichotomy over a corpus; reports come back in corpus order."""
    if statement not in ("induced-minor", "induced-subgraph"):
        raise PreconditionError(f"unknown statement {statement!r}")
    work = [(gid, G, statement, params, budget_nodes, budget_seconds) for gid, G in corpus]
    if jobs > 1 and len(work) > 1:
        from multiprocessing import Pool
        with Pool(jobs) as pool:
            results = pool.map(_sweep_one, work, chunksize=max(1, len(work) // (jobs * 8)))
    else:
        results = [_sweep_one(w) for w in work]
    counts = {"a": 0, "b": 0, "c": 0, "none": 0, "unknown": 0}
    failures: list[str] = []
    max_tw = None
    for rep, ok, reason, tw in results:
        counts[rep.label] += 1
        if not ok:
            failures.append(f"{rep.graph_id}: {reason}")
        if tw is not None:
            max_tw = tw if max_tw is None else max(max_tw, tw)
    summary = {
        "statement": statement,
        "params": dict(sorted(params.items())),
        "graphs": len(results),
        "counts": counts,
        "verification_failures": failures,
        "max_treewidth_all_failed": max_tw,
    }
    return SweepResult([r for r, *_ in results], summary)
