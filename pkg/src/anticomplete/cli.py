"""Command-line interface.

Exit codes: 0 outcome found / check passed, 1 input error, 2 NotApplicable,
AllFailed or a rejected certificate, 3 budget exhausted (unknown).
Machine-readable JSON goes to stdout, a short human summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators as gens
from .constellations import Constellation, is_d_ample, is_interrupted, is_q_zigzagged
from .errors import Budget, CapExceeded, PreconditionError
from .extraction import (AlignedFound, BipartiteModelFound, CompleteModelFound, ConstellationFound,
                         NotApplicable, aligned_to_anticomplete_or_biclique, alignment_or_split,
                         block_to_subdivision_or_model, half_induced_main, half_induced_recursive,
                         prune_or_half_induced, verify_outcome, zigzag_extract)
from .graph import Graph, is_clique, is_stable_set
from .io import (FormatError, certificate_from_obj, certificate_to_obj, decode_graph6, encode_graph6,
                 graph_to_dot, graph_to_obj, parse_graph_json, read_graph6_lines)
from .ramsey import CliqueFound, StableFound
from .structures import Block
from .treewidth import DEFAULT_CAP, TreeDecomposition, exact_treewidth, verify_decomposition
from .verdicts import sweep, trichotomy_ind_minor, trichotomy_isg, verify_report

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _budget(args) -> Budget:
    kw = {}
    if args.budget_nodes is not None:
        kw["nodes"] = args.budget_nodes
    return Budget(seconds=args.budget_seconds, **kw)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def load_graph(path: str) -> Graph:
    text = _read_text(path)
    try:
        if text.lstrip().startswith("{"):
            return parse_graph_json(text)
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise FormatError(f"expected one graph6 line, found {len(lines)}")
        return decode_graph6(lines[0], 1)
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_corpus(path: str):
    text = _read_text(path)
    try:
        return list(read_graph6_lines(text.splitlines()))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _params(pairs) -> dict:
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = int(v)
        except ValueError:
            raise InputError(f"--param {k}: expected an integer, got {v!r}") from None
    return out


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    p = {k: getattr(args, k) for k in ("n", "r", "s", "t", "l", "q", "p", "seed", "spacing")
         if getattr(args, k) is not None}
    if args.family not in gens.FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {sorted(gens.FAMILIES)}")
    try:
        made = gens.FAMILIES[args.family](p)
    except KeyError as exc:
        raise InputError(f"family {args.family} needs --{exc.args[0]}") from None
    cert = None
    if isinstance(made, Constellation):
        kind = "interrupted" if args.family.startswith("interrupted") else "zigzagged"
        cert = certificate_to_obj(ConstellationFound(made, kind))
        made = made.graph
    G: Graph = made
    if args.format == "dot":
        text = graph_to_dot(G, args.family.replace("-", "_"))
    elif args.format == "graph6":
        text = encode_graph6(G) + "\n"
    else:
        text = json.dumps(graph_to_obj(G)) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if cert is not None and args.cert_out:
        Path(args.cert_out).write_text(json.dumps(cert, indent=1) + "\n")
    _say(f"{args.family}: {G.n} vertices, {G.m} edges, max degree {G.max_degree()}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# tw


def cmd_tw(args) -> int:
    G = load_graph(args.input)
    cap = None if args.cap == 0 else args.cap
    td = exact_treewidth(G, cap=cap, budget=_budget(args))
    _emit({"treewidth": td.width, "n": G.n, "decomposition": certificate_to_obj(td)})
    _say(f"treewidth {td.width} ({G.n} vertices)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# check


def check_certificate(G: Graph, kind: str, cert_obj: dict, q: int | None = None):
    cert = certificate_from_obj(cert_obj, G, kind)
    if isinstance(cert, TreeDecomposition):
        ok = verify_decomposition(G, cert)
        return ok, "" if ok else "not a tree decomposition of G"
    if isinstance(cert, CliqueFound):
        ok = is_clique(G, cert.vertices)
        return ok, "" if ok else "not a clique"
    if isinstance(cert, StableFound):
        ok = is_stable_set(G, cert.vertices)
        return ok, "" if ok else "not a stable set"
    if isinstance(cert, ConstellationFound):
        con = cert.constellation
        if kind == "constellation-zigzagged":
            chk = verify_outcome(G, ConstellationFound(con, ""))
            if not chk:
                return False, chk.reason
            if not is_d_ample(con, 1):
                return False, "constellation is not ample"
            if q is None:
                raise InputError("constellation-zigzagged needs --q")
            if is_q_zigzagged(con, q, con.order) is None:
                return False, f"constellation is not {q}-zigzagged"
            return True, ""
        if kind == "constellation-interrupted":
            if con.order is None:
                order = is_interrupted(con)
                if order is None:
                    return False, "no interrupting order exists"
                cert = ConstellationFound(con.with_order(order), "interrupted")
            else:
                cert = ConstellationFound(con, "interrupted")
    chk = verify_outcome(G, cert)
    return bool(chk), chk.reason


CHECK_KINDS = ("tree-decomposition", "clique", "stable-set", "complete-model", "bipartite-model",
               "aligned-model", "subdivision", "anticomplete-pair", "constellation",
               "constellation-interrupted", "constellation-zigzagged")


def cmd_check(args) -> int:
    G = load_graph(args.graph)
    obj = load_json(args.cert)
    if isinstance(obj, list):
        obj = {"order": obj}
    try:
        ok, reason = check_certificate(G, args.kind, obj, args.q)
    except FormatError as exc:
        raise InputError(f"{args.cert}: {exc}") from None
    _emit({"kind": args.kind, "valid": ok, "reason": reason})
    _say(f"{args.kind}: {'valid' if ok else 'REJECTED: ' + reason}")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# extract


def _block_from_obj(d: dict) -> Block:
    paths: dict = {}
    for p in d.get("paths", []):
        a, b = p[0], p[-1]
        key = (min(a, b), max(a, b))
        paths.setdefault(key, []).append(tuple(p) if a < b else tuple(reversed(p)))
    return Block(tuple(d["B"]), {k: tuple(v) for k, v in paths.items()})


PROCEDURES = ("block", "prune", "align", "half-induced-recursive", "half-induced", "aligned-split", "zigzag")


def run_procedure(G: Graph, name: str, structure: dict, p: dict, budget: Budget):
    def need(*keys):
        missing = [k for k in keys if k not in p]
        if missing:
            raise InputError(f"procedure {name} needs --param {', '.join(k + '=' for k in missing)}")
        return [p[k] for k in keys]

    if name == "block":
        s, t, rho, sigma = need("s", "t", "rho", "sigma")
        return block_to_subdivision_or_model(G, _block_from_obj(structure), s, t, rho, sigma, budget)
    if name == "zigzag":
        c, q = need("c", "q")
        cert = certificate_from_obj(structure, G, "constellation")
        return zigzag_extract(cert.constellation, c, q)
    cert = certificate_from_obj(structure, G)
    if name in ("prune", "half-induced-recursive", "half-induced"):
        if not isinstance(cert, CompleteModelFound):
            raise InputError(f"procedure {name} needs a complete-model certificate")
        K = cert.model
        if name == "prune":
            a, mu, rho, sigma = need("a", "mu", "rho", "sigma")
            return prune_or_half_induced(G, K, a, mu, rho, sigma, budget)
        if name == "half-induced":
            a, rho, sigma = need("a", "rho", "sigma")
            return half_induced_main(G, K, a, rho, sigma, budget)
        varrho, rho, varsigma, sigma = need("varrho", "rho", "varsigma", "sigma")
        return half_induced_recursive(G, K, varrho, rho, varsigma, sigma)
    if name == "align":
        if not isinstance(cert, BipartiteModelFound):
            raise InputError("procedure align needs a bipartite-model certificate")
        d, alpha, rho, sigma = need("d", "alpha", "rho", "sigma")
        return alignment_or_split(G, cert.model, d, alpha, rho, sigma)
    if name == "aligned-split":
        if not isinstance(cert, AlignedFound):
            raise InputError("procedure aligned-split needs an aligned-model certificate")
        b, c, beta = need("b", "c", "beta")
        return aligned_to_anticomplete_or_biclique(G, cert.model, cert.witness, b, c, beta, budget)
    raise InputError(f"unknown procedure {name!r}; choose from {PROCEDURES}")


def cmd_extract(args) -> int:
    G = load_graph(args.graph)
    structure = load_json(args.input)
    try:
        out = run_procedure(G, args.procedure, structure, _params(args.param), _budget(args))
    except FormatError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    obj = certificate_to_obj(out)
    text = json.dumps(obj, indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if isinstance(out, NotApplicable):
        _say(f"{args.procedure}: not applicable ({out.reason})")
        return EXIT_NEGATIVE
    chk = verify_outcome(G, out)
    _say(f"{args.procedure}: {obj['kind']} ({'verified' if chk else 'VERIFICATION FAILED: ' + chk.reason})")
    return EXIT_OK if chk else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# trichotomy / sweep


def _statement_params(args) -> dict:
    if args.statement == "induced-minor":
        keys = ("a", "b", "c")
    else:
        keys = ("c", "s", "t")
    missing = [k for k in keys if getattr(args, k) is None]
    if missing:
        raise InputError(f"{args.statement} needs --{' --'.join(missing)}")
    return {k: getattr(args, k) for k in keys}


def _report_obj(rep) -> dict:
    out = {"graph": rep.graph_id, "statement": rep.statement, "params": rep.params,
           "outcome": rep.label, "elapsed": round(rep.elapsed, 4), "budget_used": rep.budget_used,
           "budget_hit": rep.budget_hit}
    try:
        out["certificate"] = certificate_to_obj(rep.outcome)
    except TypeError:
        out["certificate"] = {"reason": getattr(rep.outcome, "reason", "")}
    return out


def cmd_trichotomy(args) -> int:
    p = _statement_params(args)
    if (args.graph is None) == (args.corpus is None):
        raise InputError("give exactly one of --graph and --corpus")
    items = [(args.graph, load_graph(args.graph))] if args.graph else load_corpus(args.corpus)
    reports = []
    for gid, G in items:
        budget = _budget(args)
        if args.statement == "induced-minor":
            rep = trichotomy_ind_minor(G, p["a"], p["b"], p["c"], budget, gid)
        else:
            rep = trichotomy_isg(G, p["c"], p["s"], p["t"], budget, gid)
        chk = verify_report(G, rep)
        obj = _report_obj(rep)
        obj["verified"] = bool(chk)
        reports.append(obj)
        _say(f"{gid}: outcome {rep.label}{'' if chk else ' (VERIFICATION FAILED: ' + chk.reason + ')'}")
    _emit(reports[0] if args.graph else reports)
    labels = {r["outcome"] for r in reports}
    if not all(r["verified"] for r in reports):
        return EXIT_NEGATIVE
    if "unknown" in labels:
        return EXIT_UNKNOWN
    if args.graph and labels == {"none"}:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_sweep(args) -> int:
    p = _statement_params(args)
    corpus = load_corpus(args.corpus)
    nodes = args.budget_nodes if args.budget_nodes is not None else Budget().nodes
    res = sweep(corpus, p, args.statement, nodes, args.budget_seconds, args.jobs)
    _emit(res.summary)
    s = res.summary
    _say(f"{s['graphs']} graphs: {s['counts']}; verification failures: {len(s['verification_failures'])}")
    if s["verification_failures"]:
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN if s["counts"]["unknown"] else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anticomplete", description=__doc__.splitlines()[0], allow_abbrev=False)
    ap.add_argument("--budget-nodes", type=int, default=None,
                    help="search node budget (default: $ANTICOMPLETE_BUDGET_NODES, else unlimited)")
    ap.add_argument("--budget-seconds", type=float, default=None, help="wall-clock budget per search")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph family", allow_abbrev=False)
    g.add_argument("--family", required=True)
    for k in ("n", "r", "s", "t", "l", "q", "seed", "spacing"):
        g.add_argument(f"--{k}", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--format", choices=("json", "dot", "graph6"), default="json")
    g.add_argument("--out")
    g.add_argument("--cert-out", help="for constellation families: write the constellation certificate")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("tw", help="exact treewidth with a decomposition", allow_abbrev=False)
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--cap", type=int, default=DEFAULT_CAP, help="vertex cap (0 = none)")
    t.set_defaults(func=cmd_tw)

    c = sub.add_parser("check", help="verify a certificate against a graph", allow_abbrev=False)
    c.add_argument("--kind", required=True, choices=CHECK_KINDS)
    c.add_argument("--graph", required=True)
    c.add_argument("--cert", required=True)
    c.add_argument("--q", type=int)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("extract", help="run an extraction procedure", allow_abbrev=False)
    e.add_argument("--procedure", required=True, choices=PROCEDURES)
    e.add_argument("--graph", required=True)
    e.add_argument("--input", required=True, help="structure certificate (JSON)")
    e.add_argument("--param", action="append", metavar="KEY=INT")
    e.add_argument("--out")
    e.set_defaults(func=cmd_extract)

    for name, fn in (("trichotomy", cmd_trichotomy), ("sweep", cmd_sweep)):
        s = sub.add_parser(name, help=f"{name} over a graph or corpus", allow_abbrev=False)
        s.add_argument("--statement", choices=("induced-minor", "induced-subgraph"), default="induced-minor")
        for k in ("a", "b", "c", "s", "t"):
            s.add_argument(f"--{k}", type=int)
        if name == "trichotomy":
            s.add_argument("--graph")
            s.add_argument("--corpus")
        else:
            s.add_argument("--corpus", required=True)
            s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--format", choices=("json",), default="json")
        s.set_defaults(func=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    except PreconditionError as exc:
        _say(f"precondition failed: {exc}")
        return EXIT_INPUT
    except CapExceeded as exc:
        _say(f"budget exhausted: {exc}")
        _emit({"status": "unknown", "reason": str(exc)})
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
