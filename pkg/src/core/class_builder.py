"""Breadth-first construction of a Q-isogeny class and its per-vertex counts."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.config import settings
from src.curves.isogeny import PrimeIsogeny, all_prime_isogenies
from src.curves.torsion import TorsionStructure, torsion_structure
from src.curves.weier import CMRecord, WeierstrassModel, cm_lookup, is_isomorphic
from src.utils.exceptions import InvariantViolationError
from src.utils.logger import logger

ALLOWED_TWO_COUNTS = frozenset({1, 2, 4, 6, 8})


@dataclass(frozen=True)
class Vertex:
    model: WeierstrassModel
    torsion: TorsionStructure


@dataclass(frozen=True)
class IsogenyCounts:
    C: int
    C_p: Dict[int, int]
    max_cyclic_degree: int


@dataclass
class ClassGraph:
    """Vertices are Q-isomorphism classes; edge attribute ``ell`` is the prime degree."""

    vertices: List[Vertex]
    graph: nx.Graph
    cm: Optional[CMRecord] = None
    isogenies: Dict[Tuple[int, int], PrimeIsogeny] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> List[Tuple[int, int, int]]:
        return sorted((min(u, v), max(u, v), d["ell"]) for u, v, d in self.graph.edges(data=True))

    @property
    def primes(self) -> List[int]:
        return sorted({ell for _, _, ell in self.edges})

    def edge_label(self, u: int, v: int) -> int:
        return self.graph.edges[u, v]["ell"]

    def prime_subgraph(self, p: int) -> nx.Graph:
        keep = [(u, v) for u, v, d in self.graph.edges(data=True) if d["ell"] == p]
        sub = nx.Graph()
        sub.add_nodes_from(self.graph.nodes)
        sub.add_edges_from(keep)
        return sub


def _find_vertex(vertices: List[Vertex], E: WeierstrassModel) -> Optional[int]:
    for index, vertex in enumerate(vertices):
        if vertex.model.j_invariant == E.j_invariant and is_isomorphic(vertex.model, E):
            return index
    return None


def build_class(E: WeierstrassModel) -> ClassGraph:
    """All curves reachable from E by rational prime-degree isogenies, up to Q-isomorphism."""
    vertices = [Vertex(E, torsion_structure(E))]
    graph = nx.Graph()
    graph.add_node(0)
    isogenies: Dict[Tuple[int, int], PrimeIsogeny] = {}
    frontier = deque([0])

    while frontier:
        index = frontier.popleft()
        domain = vertices[index].model
        for phi in all_prime_isogenies(domain):
            target = _find_vertex(vertices, phi.codomain)
            if target is None:
                if len(vertices) >= settings.max_class_size:
                    raise InvariantViolationError(
                        "class-size", f"isogeny class of {E} has more than {settings.max_class_size} curves"
                    )
                target = len(vertices)
                vertices.append(Vertex(phi.codomain, torsion_structure(phi.codomain)))
                graph.add_node(target)
                frontier.append(target)
                logger.debug(f"Vertex {target}: {phi.codomain} via {phi.degree}-isogeny from {index}")
            if target == index:
                raise InvariantViolationError("cyclic-endomorphism", f"{phi.degree}-isogeny from {domain} to itself")
            if graph.has_edge(index, target):
                if graph.edges[index, target]["ell"] != phi.degree:
                    raise InvariantViolationError(
                        "edge-label", f"vertices {index},{target} joined by degrees {graph.edges[index, target]['ell']} and {phi.degree}"
                    )
                continue
            graph.add_edge(index, target, ell=phi.degree)
            isogenies[(index, target)] = phi

    cm = next((r for r in (cm_lookup(v.model.j_invariant) for v in vertices) if r is not None), None)
    logger.debug(f"Class of {E}: {len(vertices)} vertices, {graph.number_of_edges()} edges")
    return ClassGraph(vertices, graph, cm, isogenies)


def cyclic_degree(g: ClassGraph, u: int, v: int) -> int:
    """Degree of the cyclic isogeny between two vertices: product of labels on a shortest path."""
    path = nx.shortest_path(g.graph, u, v)
    degree = 1
    for a, b in zip(path, path[1:]):
        degree *= g.edge_label(a, b)
    return degree


def isogeny_counts(g: ClassGraph, v: int) -> IsogenyCounts:
    c_p: Dict[int, int] = {}
    for p in g.primes:
        c_p[p] = len(nx.node_connected_component(g.prime_subgraph(p), v))
    total = 1
    for count in c_p.values():
        total *= count
    degree = max(cyclic_degree(g, v, w) for w in g.graph.nodes)
    return IsogenyCounts(total, c_p, degree)


def check_class_invariants(g: ClassGraph) -> List[IsogenyCounts]:
    """Counts for every vertex, raising on any bound the class structure must respect."""
    if not nx.is_connected(g.graph):
        raise InvariantViolationError("connected", "isogeny graph is disconnected")
    counts = [isogeny_counts(g, v) for v in range(len(g))]
    for v, c in enumerate(counts):
        if c.C != len(g):
            raise InvariantViolationError("class-count", f"vertex {v} has C={c.C} but the class has {len(g)} curves")
        if c.C > 8 or c.C in (5, 7):
            raise InvariantViolationError("kenku-bound", f"vertex {v} has C={c.C}")
        if c.C_p.get(2, 1) not in ALLOWED_TWO_COUNTS:
            raise InvariantViolationError("two-count-parity", f"vertex {v} has C_2={c.C_p[2]}")

    with_two = [v.torsion.has_two_torsion for v in g.vertices]
    if any(with_two) and not all(with_two):
        raise InvariantViolationError("two-torsion-propagation", "some but not all curves have a point of order 2")

    for v, vertex in enumerate(g.vertices):
        long_paths = any(cyclic_degree(g, v, w) % n == 0 for w in g.graph.nodes for n in (21, 27))
        if long_paths and vertex.torsion.order not in (1, 3):
            raise InvariantViolationError(
                "torsion-under-21-27", f"vertex {v} with a 21- or 27-isogeny has torsion {vertex.torsion.label}"
            )
    return counts
