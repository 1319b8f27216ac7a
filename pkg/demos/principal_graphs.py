"""Perron-Frobenius data and free dimension parameters of pointed graphs.

A principal graph document pins a bipartite graph with a distinguished
even vertex.  Power iteration gives the graph's modulus and the relative
dimensions of its vertices; summing squared even dimensions gives the
global index, and the index feeds a one-parameter family r_k measuring
free dimension at each depth.
"""

import json
import math
from pathlib import Path

from tlbox import PrincipalGraph, global_index, pf_dimensions, r_parameter

HERE = Path(__file__).parent


def load(name: str) -> PrincipalGraph:
    with open(HERE / "graphs" / name, encoding="utf-8") as handle:
        return PrincipalGraph.from_document(json.load(handle))


def report(name: str) -> None:
    graph = load(name)
    delta, dims = pf_dimensions(graph)
    if graph.infinite and graph.delta is not None:
        delta = graph.delta
    index = global_index(graph)
    print(f"{name}")
    print(f"  modulus {delta:.6g}")
    for vertex in graph.vertex_order():
        parity = graph.vertices[vertex]
        print(f"  dim({vertex}) = {dims[vertex]:.6g}  ({parity})")
    if math.isinf(index):
        print("  global index: infinite")
    else:
        print(f"  global index I = {index:.6g}")
        for k in range(3):
            print(f"  r_{k} = {r_parameter(k, delta, index):.6g}")
    print()


def main() -> None:
    for name in ("a3.json", "a4.json", "free_truncation.json"):
        report(name)

    graph = load("a3.json")
    delta, _ = pf_dimensions(graph)
    index = global_index(graph)
    assert abs(index - 2.0) < 1e-9
    assert abs(r_parameter(0, delta, index) - (4 * math.sqrt(2) - 3)) < 1e-9
    print("checks: the two-supertransitive path has I = 2 and r_0 = 4*sqrt(2) - 3")


if __name__ == "__main__":
    main()
