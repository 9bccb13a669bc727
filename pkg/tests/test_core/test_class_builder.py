from unittest.mock import patch

import networkx as nx
import pytest

from src.core.class_builder import (
    ClassGraph,
    Vertex,
    build_class,
    check_class_invariants,
    cyclic_degree,
    isogeny_counts,
)
from src.curves.torsion import TorsionStructure
from src.curves.weier import WeierstrassModel
from src.utils.exceptions import InvariantViolationError


def synthetic_class(torsions, edges) -> ClassGraph:
    vertices = [
        Vertex(WeierstrassModel.from_short(0, index + 1), TorsionStructure(tuple(t)))
        for index, t in enumerate(torsions)
    ]
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    for u, v, ell in edges:
        graph.add_edge(u, v, ell=ell)
    return ClassGraph(vertices, graph)


@pytest.fixture(scope="module")
def class_17a():
    return build_class(WeierstrassModel(1, -1, 1, -6, -4))


def test_build_17a(class_17a):
    assert len(class_17a) == 4
    assert class_17a.primes == [2]
    assert sorted(v.torsion.label for v in class_17a.vertices) == ["[2,2]", "[2]", "[4]", "[4]"]
    assert class_17a.vertices[0].torsion.label == "[2,2]"
    assert [(u, v) for u, v, _ in class_17a.edges] == [(0, 1), (0, 2), (0, 3)]


def test_counts_17a(class_17a):
    counts = check_class_invariants(class_17a)
    assert [c.C for c in counts] == [4, 4, 4, 4]
    assert all(c.C_p == {2: 4} for c in counts)
    assert [c.max_cyclic_degree for c in counts] == [2, 4, 4, 4]


def test_build_11a():
    g = build_class(WeierstrassModel(0, -1, 1, -10, -20))
    assert g.edges == [(0, 1, 5), (0, 2, 5)]
    assert g.cm is None
    assert cyclic_degree(g, 1, 2) == 25
    assert [isogeny_counts(g, v).max_cyclic_degree for v in range(3)] == [5, 25, 25]


def test_build_isolated_curve():
    g = build_class(WeierstrassModel(0, 0, 1, -1, 0))
    assert len(g) == 1
    assert g.edges == []
    (counts,) = check_class_invariants(g)
    assert (counts.C, counts.C_p, counts.max_cyclic_degree) == (1, {}, 1)


def test_cm_class_is_flagged():
    g = build_class(WeierstrassModel.from_short(0, 1))
    assert g.cm is not None
    assert g.cm.disc_K == -3


def test_class_size_limit():
    with patch("src.core.class_builder.settings") as mock_settings:
        mock_settings.max_class_size = 2
        with pytest.raises(InvariantViolationError) as e:
            build_class(WeierstrassModel(1, -1, 1, -6, -4))
    assert e.value.invariant == "class-size"


def test_disconnected_graph_is_rejected():
    g = synthetic_class([(1,), (1,)], [])
    with pytest.raises(InvariantViolationError) as e:
        check_class_invariants(g)
    assert e.value.invariant == "connected"


def test_count_must_match_class_size():
    # C_2 * C_3 is never 3 on a path of three curves
    g = synthetic_class([(1,), (1,), (1,)], [(0, 1, 2), (1, 2, 3)])
    with pytest.raises(InvariantViolationError) as e:
        check_class_invariants(g)
    assert e.value.invariant == "class-count"


def test_two_torsion_must_propagate():
    g = synthetic_class([(2,), (1,)], [(0, 1, 3)])
    with pytest.raises(InvariantViolationError) as e:
        check_class_invariants(g)
    assert e.value.invariant == "two-torsion-propagation"


def test_long_cyclic_isogeny_bounds_torsion():
    g = synthetic_class([(1,), (1,), (1,), (5,)], [(0, 1, 3), (1, 2, 3), (2, 3, 3)])
    with pytest.raises(InvariantViolationError) as e:
        check_class_invariants(g)
    assert e.value.invariant == "torsion-under-21-27"
