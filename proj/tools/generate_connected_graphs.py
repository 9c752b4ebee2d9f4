#!/usr/bin/env python3
"""Regenerates data/connected_le6.g6 from the networkx graph atlas.

The atlas lists every graph on at most 7 vertices up to isomorphism, in
order of vertex count, then edge count. We keep the connected ones on at
most 6 vertices (143 graphs, 112 of them on exactly 6) and write one graph6
string per line without the ">>graph6<<" header.
"""
import argparse
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def connected_graphs(max_vertices):
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if 1 <= n <= max_vertices and nx.is_connected(g):
            yield g


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=6)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()
    if not 1 <= args.max_vertices <= 7:
        ap.error("the atlas covers 1..7 vertices")
    lines = [nx.to_graph6_bytes(g, header=False).decode().strip()
             for g in connected_graphs(args.max_vertices)]
    text = "\n".join(lines) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as f:
            f.write(text)


if __name__ == "__main__":
    main()
