"""Regenerates the graph6 reference corpus used by the unit tests.

Each line is: graph6 <tab> n <tab> edge list as u-v pairs (networkx decoding).
The atlas covers every graph on at most 7 vertices; a few larger random
graphs exercise the multi-byte size header.
"""
import random

import networkx as nx


def row(g):
    g6 = nx.to_graph6_bytes(g, header=False).decode().strip()
    h = nx.from_graph6_bytes(g6.encode())
    edges = ",".join(f"{min(u, v)}-{max(u, v)}" for u, v in sorted(h.edges()))
    return f"{g6}\t{h.number_of_nodes()}\t{edges}"


def main():
    rows = [row(g) for g in nx.graph_atlas_g()[1:]]
    rng = random.Random(7)
    for n in (20, 62, 63, 100):
        rows.append(row(nx.gnp_random_graph(n, 0.3, seed=rng.randrange(10**6))))
    with open("graph6_reference.tsv", "w") as f:
        f.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
