"""Graph and certificate file formats: JSON and graph6 input, DOT export."""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .constellations import Constellation
from .extraction import (AlignedFound, AnticompletePair, BipartiteModelFound, CompleteModelFound,
                         ConstellationFound, NotApplicable, SubdivisionFound)
from .graph import Graph
from .ramsey import CliqueFound, StableFound
from .structures import AlignedWitness, BipartiteModel, CompleteModel, Subdivision
from .treewidth import TreeDecomposition

SCHEMA = "anticomplete/certificate@1"


class FormatError(ValueError):
    """Malformed input; the message names the offending line/offset or field."""


# ---------------------------------------------------------------------------
# JSON graphs


def parse_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph_from_obj(data)


def graph_from_obj(data) -> Graph:
    if not isinstance(data, dict):
        raise FormatError("top level must be an object with 'n' and 'edges'")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FormatError("field 'n' must be a non-negative integer")
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise FormatError("field 'edges' must be a list")
    seen = set()
    out = []
    for k, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise FormatError(f"edges[{k}]: expected a pair of integers, got {e!r}")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edges[{k}]: vertex out of range 0..{n - 1}")
        if u == v:
            raise FormatError(f"edges[{k}]: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"edges[{k}]: duplicate edge {u}-{v}")
        seen.add(key)
        out.append(key)
    return Graph(n, out)


def graph_to_obj(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges()]}


def graph_to_json(G: Graph) -> str:
    return json.dumps(graph_to_obj(G))


# ---------------------------------------------------------------------------
# graph6


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(G: Graph) -> str:
    bitlist = [1 if G.has_edge(i, j) else 0 for j in range(1, G.n) for i in range(j)]
    bitlist += [0] * (-len(bitlist) % 6)
    body = "".join(chr(63 + int("".join(map(str, bitlist[k:k + 6])), 2)) for k in range(0, len(bitlist), 6))
    return _encode_n(G.n) + body


def decode_graph6(line: str, lineno: int | None = None) -> Graph:
    where = f"line {lineno}: " if lineno is not None else ""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError(f"{where}empty graph6 string")
    for off, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"{where}offset {off}: byte {ord(ch)} outside 63..126")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise FormatError(f"{where}offset 0: truncated vertex count")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(vals) - pos != need:
        raise FormatError(f"{where}offset {pos}: expected {need} edge bytes, found {len(vals) - pos}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[str, Graph]]:
    """Yield ``(id, graph)`` per non-empty line; the id is the graph6 string."""
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if s:
            yield s, decode_graph6(s, lineno)


# ---------------------------------------------------------------------------
# DOT


def graph_to_dot(G: Graph, name: str = "G", highlight: dict[int, str] | None = None) -> str:
    lines = [f"graph {name} {{"]
    for v in range(G.n):
        attr = f' [color="{highlight[v]}", style=filled]' if highlight and v in highlight else ""
        lines.append(f"  {v}{attr};")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# certificates


def _tup(x) -> tuple:
    return tuple(tuple(p) for p in x)


def model_to_obj(M: BipartiteModel) -> dict:
    return {"A": [list(a) for a in M.A], "B": [list(b) for b in M.B],
            "A_induced": M.A_induced, "B_induced": M.B_induced,
            "A_linear": M.A_linear, "B_linear": M.B_linear}


def model_from_obj(d: dict) -> BipartiteModel:
    return BipartiteModel(_tup(d["A"]), _tup(d["B"]), bool(d.get("A_induced")), bool(d.get("B_induced")),
                          bool(d.get("A_linear")), bool(d.get("B_linear")))


def certificate_to_obj(cert) -> dict:
    """Serialise an outcome or decomposition with its ``kind`` and schema tag."""
    if isinstance(cert, TreeDecomposition):
        body = {"kind": "tree-decomposition", "bags": [sorted(b) for b in cert.bags],
                "tree": [list(e) for e in cert.tree], "width": cert.width}
    elif isinstance(cert, CliqueFound):
        body = {"kind": "clique", "vertices": list(cert.vertices)}
    elif isinstance(cert, StableFound):
        body = {"kind": "stable-set", "vertices": list(cert.vertices)}
    elif isinstance(cert, CompleteModelFound):
        body = {"kind": "complete-model", "branch_sets": [list(c) for c in cert.model.branch_sets],
                "linear": cert.model.linear}
    elif isinstance(cert, BipartiteModelFound):
        body = {"kind": "bipartite-model", "model": model_to_obj(cert.model), "label": cert.label}
    elif isinstance(cert, AlignedFound):
        body = {"kind": "aligned-model", "model": model_to_obj(cert.model),
                "ends": list(cert.witness.ends),
                "windows": [[list(w) for w in ws] for ws in cert.witness.windows]}
    elif isinstance(cert, SubdivisionFound):
        sub = cert.subdivision
        body = {"kind": "subdivision", "branch": list(sub.branch),
                "paths": [list(p) for _, p in sorted(sub.paths.items())]}
    elif isinstance(cert, AnticompletePair):
        body = {"kind": "anticomplete-pair", "X": list(cert.X), "Y": list(cert.Y), "c": cert.c,
                "models": [model_to_obj(m) for m in cert.certificates]}
    elif isinstance(cert, ConstellationFound):
        con = cert.constellation
        body = {"kind": "constellation-" + cert.kind if cert.kind else "constellation",
                "S": list(con.S), "paths": [list(p) for p in con.paths],
                "order": None if con.order is None else list(con.order)}
    elif isinstance(cert, NotApplicable):
        body = {"kind": "not-applicable", "reason": cert.reason}
    else:
        raise TypeError(f"cannot serialise {type(cert).__name__}")
    return {"schema": SCHEMA, **body}


def certificate_from_obj(d: dict, G: Graph | None = None, kind: str | None = None):
    """Inverse of :func:`certificate_to_obj`; constellations need the host graph."""
    if not isinstance(d, dict):
        raise FormatError("certificate must be a JSON object")
    if d.get("schema", SCHEMA) != SCHEMA:
        raise FormatError(f"unsupported certificate schema {d.get('schema')!r}")
    kind = kind or d.get("kind")
    try:
        if kind == "tree-decomposition":
            return TreeDecomposition.build([frozenset(b) for b in d["bags"]], [tuple(e) for e in d["tree"]])
        if kind == "clique":
            return CliqueFound(tuple(d["vertices"]))
        if kind == "stable-set":
            return StableFound(tuple(d["vertices"]))
        if kind == "complete-model":
            return CompleteModelFound(CompleteModel(_tup(d["branch_sets"]), bool(d.get("linear"))))
        if kind == "bipartite-model":
            return BipartiteModelFound(model_from_obj(d["model"]), d.get("label", ""))
        if kind == "aligned-model":
            w = AlignedWitness(tuple(d["ends"]), tuple(_tup(ws) for ws in d["windows"]))
            return AlignedFound(model_from_obj(d["model"]), w)
        if kind == "subdivision":
            branch = tuple(d["branch"])
            paths = {}
            for p in d["paths"]:
                a, b = p[0], p[-1]
                paths[(min(a, b), max(a, b))] = tuple(p) if a < b else tuple(reversed(p))
            return SubdivisionFound(Subdivision(branch, paths))
        if kind == "anticomplete-pair":
            return AnticompletePair(tuple(d["X"]), tuple(d["Y"]),
                                    tuple(model_from_obj(m) for m in d.get("models", [])), int(d["c"]))
        if kind.startswith("constellation"):
            if G is None:
                raise FormatError("constellation certificates need the host graph")
            from .constellations import from_induced
            from .verdicts import restrict
            order = d.get("order")
            S = d.get("S") or order
            if S is None:
                raise FormatError("constellation certificate needs 'S' or 'order'")
            if "paths" in d:
                paths = _tup(d["paths"])
                mask = 0
                for v in list(S) + [v for p in paths for v in p]:
                    mask |= 1 << v
                host = G if mask == G.all_mask else restrict(G, mask)
                con = Constellation(host, tuple(S), paths)
            else:
                con = from_induced(G, S)
            con = con.with_order(order)
            return ConstellationFound(con, kind[len("constellation-"):] if "-" in kind else "")
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {kind} certificate: {exc}") from None
    raise FormatError(f"unknown certificate kind {kind!r}")


def certificate_to_json(cert) -> str:
    return json.dumps(certificate_to_obj(cert), indent=1)
