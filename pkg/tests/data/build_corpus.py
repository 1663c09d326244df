"""Regenerate the graph6 corpora used by the test suite.

graphs_upto7.g6 holds every graph on 1..7 vertices (networkx atlas, 1252
graphs).  connected8.g6 holds every connected graph on 8 vertices (11117),
built by adding a vertex to each 7-vertex graph in every possible way and
removing isomorphic duplicates.
"""

from itertools import combinations
from pathlib import Path

import networkx as nx

HERE = Path(__file__).parent


def g6(G) -> str:
    return nx.to_graph6_bytes(G, header=False).decode().strip()


def main() -> None:
    atlas = [G for G in nx.graph_atlas_g() if G.number_of_nodes() >= 1]
    (HERE / "graphs_upto7.g6").write_text("".join(g6(G) + "\n" for G in atlas))

    buckets: dict = {}
    count = 0
    for H in (G for G in atlas if G.number_of_nodes() == 7):
        for k in range(1, 8):
            for nbrs in combinations(range(7), k):
                G = H.copy()
                G.add_node(7)
                G.add_edges_from((7, v) for v in nbrs)
                if not nx.is_connected(G):
                    continue
                key = (nx.weisfeiler_lehman_graph_hash(G, iterations=4),
                       tuple(sorted(d for _, d in G.degree())))
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(G, K) for K in bucket):
                    continue
                bucket.append(G)
                count += 1
    out = [g6(G) for bucket in buckets.values() for G in bucket]
    out.sort()
    (HERE / "connected8.g6").write_text("".join(line + "\n" for line in out))
    print(len(atlas), count)


if __name__ == "__main__":
    main()
