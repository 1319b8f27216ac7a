"""Principal graphs, Perron-Frobenius data, and free-dimension parameters.

A pointed bipartite graph carries a canonical positive eigenvector of its
adjacency matrix; its top eigenvalue recovers the loop modulus, the squared
even-vertex weights sum to the global index, and the index feeds a one-line
formula for the free-dimension parameter at each compression level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

__all__ = [
    "PrincipalGraph",
    "global_index",
    "pf_dimensions",
    "r_parameter",
]

_PF_TOLERANCE = 1e-12
_DELTA_MISMATCH = 1e-9


@dataclass(frozen=True)
class PrincipalGraph:
    """Pointed bipartite graph with optional modulus and infinite flag.

    ``vertices`` maps each id to its parity (``"even"`` or ``"odd"``),
    ``edges`` lists unordered endpoint pairs with multiplicity, ``star``
    names the distinguished even base vertex.  ``infinite`` marks a graph
    document that is a finite truncation of an infinite graph; ``delta``
    optionally pins the modulus the graph is expected to carry.
    """

    vertices: Mapping[str, str]
    edges: Tuple[Tuple[str, str], ...]
    star: str
    infinite: bool = False
    delta: float | None = None

    def __init__(
        self,
        vertices: Mapping[str, str],
        edges: Sequence[Sequence[str]],
        star: str,
        infinite: bool = False,
        delta: float | None = None,
    ):
        vertex_map = dict(vertices)
        if not vertex_map:
            raise ValueError("a principal graph needs at least one vertex")
        for vertex, parity in vertex_map.items():
            if parity not in ("even", "odd"):
                raise ValueError(
                    f"vertex {vertex!r} has parity {parity!r}; expected "
                    f"'even' or 'odd'"
                )
        if star not in vertex_map:
            raise ValueError(f"star vertex {star!r} is not a vertex")
        if vertex_map[star] != "even":
            raise ValueError("the star vertex must be even")
        clean_edges = []
        for edge in edges:
            a, b = edge
            for end in (a, b):
                if end not in vertex_map:
                    raise ValueError(f"edge endpoint {end!r} is not a vertex")
            if vertex_map[a] == vertex_map[b]:
                raise ValueError(
                    f"edge ({a!r}, {b!r}) joins two {vertex_map[a]} "
                    f"vertices; the graph must be bipartite by parity"
                )
            clean_edges.append((a, b))
        object.__setattr__(self, "vertices", vertex_map)
        object.__setattr__(self, "edges", tuple(clean_edges))
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "infinite", bool(infinite))
        object.__setattr__(
            self, "delta", None if delta is None else float(delta)
        )
        self._require_connected()

    def _require_connected(self) -> None:
        reached = {self.star}
        frontier = [self.star]
        neighbors: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            neighbors[a].append(b)
            neighbors[b].append(a)
        while frontier:
            vertex = frontier.pop()
            for other in neighbors[vertex]:
                if other not in reached:
                    reached.add(other)
                    frontier.append(other)
        if len(reached) != len(self.vertices):
            missing = sorted(set(self.vertices) - reached)
            raise ValueError(
                f"graph is not connected; unreachable from the star "
                f"vertex: {missing}"
            )

    def vertex_order(self) -> List[str]:
        """Vertices in document order; the canonical matrix ordering."""
        return list(self.vertices)

    def adjacency(self) -> np.ndarray:
        """Symmetric adjacency matrix with edge multiplicities."""
        order = {v: i for i, v in enumerate(self.vertex_order())}
        matrix = np.zeros((len(order), len(order)))
        for a, b in self.edges:
            matrix[order[a], order[b]] += 1.0
            matrix[order[b], order[a]] += 1.0
        return matrix

    def even_vertices(self) -> List[str]:
        return [v for v, parity in self.vertices.items() if parity == "even"]

    @staticmethod
    def from_document(document: Mapping) -> "PrincipalGraph":
        """Build a graph from its dictionary document form."""
        try:
            vertices = {
                entry["id"]: entry["parity"]
                for entry in document["vertices"]
            }
            edges = document["edges"]
            star = document["star"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph document: {exc}") from exc
        return PrincipalGraph(
            vertices,
            edges,
            star,
            infinite=document.get("infinite", False),
            delta=document.get("delta"),
        )

    def to_document(self) -> Dict:
        """Dictionary document form; inverse of ``from_document``."""
        document: Dict = {
            "vertices": [
                {"id": v, "parity": parity}
                for v, parity in self.vertices.items()
            ],
            "edges": [[a, b] for a, b in self.edges],
            "star": self.star,
            "infinite": self.infinite,
        }
        if self.delta is not None:
            document["delta"] = self.delta
        return document


def pf_dimensions(
    graph: PrincipalGraph,
) -> Tuple[float, Dict[str, float]]:
    """Top adjacency eigenvalue and its eigenvector, based at the star.

    Power iteration on the identity-shifted adjacency matrix (the shift
    breaks the plus-minus symmetry of bipartite spectra) runs until the
    eigenvalue and vector settle to 1e-12; the eigenvector is normalized
    so the star vertex has weight one.  A graph whose top eigenvalue is
    zero carries no dimension data and is rejected.
    """
    matrix = graph.adjacency() + np.eye(len(graph.vertices))
    vector = np.ones(len(graph.vertices))
    vector /= np.linalg.norm(vector)
    eigenvalue = 0.0
    for _ in range(200000):
        image = matrix @ vector
        next_eigenvalue = float(vector @ image)
        norm = np.linalg.norm(image)
        next_vector = image / norm
        settled = (
            abs(next_eigenvalue - eigenvalue) <= _PF_TOLERANCE
            and np.max(np.abs(next_vector - vector)) <= _PF_TOLERANCE
        )
        vector, eigenvalue = next_vector, next_eigenvalue
        if settled:
            break
    else:
        raise ValueError("power iteration did not settle")
    delta = eigenvalue - 1.0
    if delta <= _DELTA_MISMATCH:
        raise ValueError(
            "graph has no edges; its top eigenvalue is zero and carries "
            "no dimension data"
        )
    order = graph.vertex_order()
    star_weight = vector[order.index(graph.star)]
    dims = {v: float(vector[i] / star_weight) for i, v in enumerate(order)}
    if graph.delta is not None and not graph.infinite:
        if abs(delta - graph.delta) > _DELTA_MISMATCH:
            raise ValueError(
                f"declared modulus {graph.delta} disagrees with the "
                f"graph's top eigenvalue {delta}"
            )
    return delta, dims


def global_index(graph: PrincipalGraph) -> float:
    """Sum of squared even-vertex weights; infinity when flagged."""
    if graph.infinite:
        return math.inf
    _, dims = pf_dimensions(graph)
    return sum(dims[v] ** 2 for v in graph.even_vertices())


def r_parameter(k: int, delta: float, index: float) -> float:
    """Free-dimension parameter at compression level ``k``.

    Equals ``1 + 2 * delta**(-2k) * index * (delta - 1)``; the modulus
    must exceed one and the index must be positive.
    """
    if k < 0:
        raise ValueError(f"level must be nonnegative, got {k}")
    if delta <= 1.0:
        raise ValueError(
            f"the parameter needs a modulus above one, got {delta}"
        )
    if index <= 0.0:
        raise ValueError(f"the index must be positive, got {index}")
    if math.isinf(index):
        return math.inf
    return 1.0 + 2.0 * delta ** (-2 * k) * index * (delta - 1.0)
