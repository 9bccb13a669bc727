"""Graph shapes, canonical torsion configurations and the reference tables."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from src.core.class_builder import ClassGraph
from src.curves.torsion import TorsionStructure
from src.models.enums import ShapeFamily
from src.utils.exceptions import InvariantViolationError

Configuration = Tuple[str, ...]

L4_END_J = Fraction(-(2 ** 15) * 3 * 5 ** 3)


@dataclass(frozen=True)
class GraphShape:
    family: ShapeFamily
    size: int
    parameter: Optional[int] = None

    @property
    def tag(self) -> str:
        base = f"{self.family.value}{self.size}" if self.family != ShapeFamily.SPECIAL else "S"
        return f"{base}({self.parameter})" if self.parameter is not None else base

    def __str__(self) -> str:
        return self.tag


def _graph(n: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


# Slot numbering follows the reference tables: slot i of a configuration is vertex i.
TEMPLATES: Dict[str, nx.Graph] = {
    "L1": _graph(1, []),
    "L2": _graph(2, [(0, 1)]),
    "L3": _graph(3, [(0, 1), (1, 2)]),
    "L4": _graph(4, [(0, 1), (1, 2), (2, 3)]),
    "T4": _graph(4, [(0, 1), (0, 2), (0, 3)]),
    "T6": _graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]),
    "T8": _graph(8, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (5, 6), (5, 7)]),
    "R4": _graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)]),
    "R6": _graph(6, [(0, 1), (2, 3), (4, 5), (0, 2), (2, 4), (1, 3), (3, 5)]),
    "S": _graph(8, [(0, 1), (0, 2), (0, 4), (0, 6), (1, 3), (1, 5), (1, 7), (2, 3), (4, 5), (6, 7)]),
}


@dataclass(frozen=True)
class TableRow:
    shape: str
    config: Configuration
    example: str

    @property
    def identifier(self) -> str:
        return f"{self.shape}/{self.example}-class"


def _rows(shape: str, *entries) -> List[TableRow]:
    return [TableRow(shape, tuple(config), example) for config, example in entries]


TABLE_ROWS: List[TableRow] = (
    _rows("L1", (["[1]"], "37.a"))
    + _rows("L2(2)", (["[2]", "[2]"], "46.a"))
    + _rows("L2(3)", (["[1]", "[1]"], "196.a"), (["[3]", "[1]"], "44.a"))
    + _rows("L2(5)", (["[1]", "[1]"], "75.c"), (["[5]", "[1]"], "38.b"))
    + _rows("L2(7)", (["[1]", "[1]"], "208.d"), (["[7]", "[1]"], "26.b"))
    + _rows("L2(11)", (["[1]", "[1]"], "121.a"))
    + _rows("L2(13)", (["[1]", "[1]"], "147.b"))
    + _rows("L2(17)", (["[1]", "[1]"], "14450.b"))
    + _rows("L2(19)", (["[1]", "[1]"], "361.a"))
    + _rows("L2(37)", (["[1]", "[1]"], "1225.b"))
    + _rows("L2(43)", (["[1]", "[1]"], "1849.b"))
    + _rows("L2(67)", (["[1]", "[1]"], "4489.b"))
    + _rows("L2(163)", (["[1]", "[1]"], "26569.b"))
    + _rows(
        "L3(9)",
        (["[1]", "[1]", "[1]"], "175.b"),
        (["[3]", "[3]", "[1]"], "19.a"),
        (["[9]", "[3]", "[1]"], "54.b"),
    )
    + _rows("L3(25)", (["[1]", "[1]", "[1]"], "99.d"), (["[5]", "[5]", "[1]"], "11.a"))
    + _rows("L4", (["[1]", "[1]", "[1]", "[1]"], "432.e"), (["[3]", "[3]", "[3]", "[1]"], "27.a"))
    + _rows(
        "T4",
        (["[2,2]", "[2]", "[2]", "[2]"], "120.a"),
        (["[2,2]", "[4]", "[2]", "[2]"], "33.a"),
        (["[2,2]", "[4]", "[4]", "[2]"], "17.a"),
    )
    + _rows(
        "T6",
        (["[2,4]", "[4]", "[4]", "[2,2]", "[2]", "[2]"], "24.a"),
        (["[2,4]", "[8]", "[4]", "[2,2]", "[2]", "[2]"], "21.a"),
        (["[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2]"], "126.a"),
        (["[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2]"], "63.a"),
    )
    + _rows(
        "T8",
        (["[2,8]", "[8]", "[8]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "210.e"),
        (["[2,4]", "[4]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "195.a"),
        (["[2,4]", "[4]", "[4]", "[2,4]", "[8]", "[2,2]", "[2]", "[2]"], "15.a"),
        (["[2,4]", "[8]", "[4]", "[2,4]", "[4]", "[2,2]", "[2]", "[2]"], "1230.f"),
        (["[2,2]", "[2]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"], "45.a"),
        (["[2,2]", "[4]", "[2]", "[2,2]", "[2]", "[2,2]", "[2]", "[2]"], "75.b"),
    )
    + _rows("R4(6)", (["[2]", "[2]", "[2]", "[2]"], "80.b"), (["[6]", "[6]", "[2]", "[2]"], "20.a"))
    + _rows("R4(10)", (["[2]", "[2]", "[2]", "[2]"], "150.a"), (["[10]", "[10]", "[2]", "[2]"], "66.c"))
    + _rows("R4(14)", (["[2]", "[2]", "[2]", "[2]"], "49.a"))
    + _rows(
        "R4(15)",
        (["[1]", "[1]", "[1]", "[1]"], "400.d"),
        (["[3]", "[3]", "[1]", "[1]"], "50.a"),
        (["[5]", "[5]", "[1]", "[1]"], "50.b"),
    )
    + _rows("R4(21)", (["[1]", "[1]", "[1]", "[1]"], "1296.f"), (["[3]", "[3]", "[1]", "[1]"], "162.b"))
    + _rows(
        "R6",
        (["[2]", "[2]", "[2]", "[2]", "[2]", "[2]"], "98.a"),
        (["[6]", "[6]", "[6]", "[6]", "[2]", "[2]"], "14.a"),
    )
    + _rows(
        "S",
        (["[2,2]", "[2,2]", "[2]", "[2]", "[2]", "[2]", "[2]", "[2]"], "240.b"),
        (["[2,2]", "[2,2]", "[4]", "[4]", "[2]", "[2]", "[2]", "[2]"], "150.b"),
        (["[2,6]", "[2,2]", "[6]", "[2]", "[6]", "[2]", "[6]", "[2]"], "30.a"),
        (["[2,6]", "[2,2]", "[12]", "[4]", "[6]", "[2]", "[6]", "[2]"], "90.c"),
    )
)

FORBIDDEN_CONFIGURATIONS = frozenset(
    {
        ("S", ("[2,2]", "[2,2]", "[4]", "[4]", "[4]", "[4]", "[2]", "[2]")),
        ("S", ("[2,6]", "[2,2]", "[12]", "[4]", "[12]", "[4]", "[6]", "[2]")),
        ("T4", ("[2,2]", "[4]", "[4]", "[4]")),
    }
)


@dataclass(frozen=True)
class CMTableRow:
    disc_K: int
    j: Fraction
    family: str
    shape: str
    config: Configuration
    example: str

    @property
    def identifier(self) -> str:
        return f"CM({self.disc_K})/{self.example}"


def _cm(disc_K: int, j: int, family: str, shape: str, config, example: str) -> CMTableRow:
    return CMTableRow(disc_K, Fraction(j), family, shape, tuple(config), example)


J_54000 = 2 ** 4 * 3 ** 3 * 5 ** 3

CM_TABLE_ROWS: List[CMTableRow] = [
    _cm(-3, 0, "y^2=x^3+t^3, t=-3,1", "R4(6)", ["[6]", "[6]", "[2]", "[2]"], "36.a4"),
    _cm(-3, 0, "y^2=x^3+t^3, t!=-3,1", "R4(6)", ["[2]", "[2]", "[2]", "[2]"], "144.a3"),
    _cm(-3, 0, "y^2=x^3+16t^3, t=-3,1", "L4", ["[3]", "[3]", "[3]", "[1]"], "27.a3"),
    _cm(-3, 0, "y^2=x^3+16t^3, t!=-3,1", "L4", ["[1]", "[1]", "[1]", "[1]"], "432.e3"),
    _cm(-3, 0, "y^2=x^3+s^2", "L2(3)", ["[3]", "[1]"], "108.a2"),
    _cm(-3, 0, "y^2=x^3+s", "L2(3)", ["[1]", "[1]"], "225.c1"),
    _cm(-3, J_54000, "y^2=x^3-15t^2x+22t^3, t=1,3", "R4(6)", ["[6]", "[6]", "[2]", "[2]"], "36.a1"),
    _cm(-3, J_54000, "y^2=x^3-15t^2x+22t^3, t!=1,3", "R4(6)", ["[2]", "[2]", "[2]", "[2]"], "144.a1"),
    _cm(-3, int(L4_END_J), "E^t, t=-3,1", "L4", ["[3]", "[3]", "[3]", "[1]"], "27.a2"),
    _cm(-3, int(L4_END_J), "E^t, t!=-3,1", "L4", ["[1]", "[1]", "[1]", "[1]"], "432.e1"),
    _cm(-4, 1728, "y^2=x^3+tx, t=-1,4", "T4", ["[2,2]", "[4]", "[4]", "[2]"], "32.a3"),
    _cm(-4, 1728, "y^2=x^3+tx, t=-4,1", "T4", ["[2,2]", "[4]", "[2]", "[2]"], "64.a3"),
    _cm(-4, 1728, "y^2=x^3+-t^2x", "T4", ["[2,2]", "[2]", "[2]", "[2]"], "288.d3"),
    _cm(-4, 1728, "y^2=x^3+sx", "L2(2)", ["[2]", "[2]"], "256.b1"),
    _cm(-4, 287496, "y^2=x^3-11t^2x+14t^3, t=+-1", "T4", ["[2,2]", "[4]", "[4]", "[2]"], "32.a2"),
    _cm(-4, 287496, "y^2=x^3-11t^2x+14t^3, t=+-2", "T4", ["[2,2]", "[4]", "[2]", "[2]"], "64.a1"),
    _cm(-4, 287496, "y^2=x^3-11t^2x+14t^3", "T4", ["[2,2]", "[2]", "[2]", "[2]"], "288.d1"),
    _cm(-7, -3375, "", "R4(14)", ["[2]", "[2]", "[2]", "[2]"], "49.a2"),
    _cm(-7, 16581375, "", "R4(14)", ["[2]", "[2]", "[2]", "[2]"], "49.a1"),
    _cm(-8, 8000, "", "L2(2)", ["[2]", "[2]"], "256.a1"),
    _cm(-11, -(2 ** 15), "", "L2(11)", ["[1]", "[1]"], "121.b1"),
    _cm(-19, -(2 ** 15) * 3 ** 3, "", "L2(19)", ["[1]", "[1]"], "361.a1"),
    _cm(-43, -(2 ** 18) * 3 ** 3 * 5 ** 3, "", "L2(43)", ["[1]", "[1]"], "1849.b1"),
    _cm(-67, -(2 ** 15) * 3 ** 3 * 5 ** 3 * 11 ** 3, "", "L2(67)", ["[1]", "[1]"], "4489.b1"),
    _cm(-163, -(2 ** 18) * 3 ** 3 * 5 ** 3 * 23 ** 3 * 29 ** 3, "", "L2(163)", ["[1]", "[1]"], "26569.a1"),
]


def _violation(g: ClassGraph, reason: str) -> InvariantViolationError:
    return InvariantViolationError("graph-shape", f"{reason}: {len(g)} vertices, edges {g.edges}")


def _alternating(topology: nx.Graph) -> bool:
    for v in topology:
        a, b = topology[v]
        if topology.edges[v, a]["ell"] == topology.edges[v, b]["ell"]:
            return False
    return True


def classify_shape(g: ClassGraph) -> GraphShape:
    n = len(g)
    labels = {ell for _, _, ell in g.edges}
    topology = g.graph

    def matches(name: str) -> bool:
        return nx.is_isomorphic(topology, TEMPLATES[name])

    if n == 1:
        return GraphShape(ShapeFamily.LINEAR, 1)
    if n == 2:
        (p,) = labels
        return GraphShape(ShapeFamily.LINEAR, 2, p)
    if n == 3 and matches("L3") and len(labels) == 1 and labels <= {3, 5}:
        (p,) = labels
        return GraphShape(ShapeFamily.LINEAR, 3, p * p)
    if n == 4:
        if labels == {3} and matches("L4"):
            return GraphShape(ShapeFamily.LINEAR, 4)
        if labels == {2} and matches("T4"):
            return GraphShape(ShapeFamily.TWO_PRIMARY, 4)
        if len(labels) == 2 and matches("R4"):
            p, q = sorted(labels)
            if _alternating(topology):
                return GraphShape(ShapeFamily.RECTANGULAR, 4, p * q)
    if n == 6:
        if labels == {2} and matches("T6"):
            return GraphShape(ShapeFamily.TWO_PRIMARY, 6)
        if labels == {2, 3} and matches("R6"):
            return GraphShape(ShapeFamily.RECTANGULAR, 6)
    if n == 8:
        if labels == {2} and matches("T8"):
            return GraphShape(ShapeFamily.TWO_PRIMARY, 8)
        if labels == {2, 3} and matches("S"):
            return GraphShape(ShapeFamily.SPECIAL, 8)
    raise _violation(g, "unrecognized isogeny graph")


def _template_name(shape: GraphShape) -> str:
    if shape.family == ShapeFamily.SPECIAL:
        return "S"
    return f"{shape.family.value}{shape.size}"


def group_rank(torsion: TorsionStructure) -> Tuple[int, int]:
    """Bicyclic groups first, then larger groups first."""
    return (0 if torsion.is_bicyclic else 1, -torsion.order)


def torsion_configuration(g: ClassGraph, shape: GraphShape) -> Tuple[Configuration, List[int]]:
    """The table-ordered configuration and the vertex index placed in each slot."""
    template = TEMPLATES[_template_name(shape)]
    best = None
    for mapping in GraphMatcher(g.graph, template).isomorphisms_iter():
        slots = sorted(mapping, key=mapping.get)
        key = tuple(group_rank(g.vertices[v].torsion) for v in slots)
        if best is None or key < best[0]:
            best = (key, slots)
    if best is None:
        raise _violation(g, f"graph does not fit the {shape.tag} template")
    slots = best[1]
    config = tuple(g.vertices[v].torsion.label for v in slots)
    return config, slots


def match_table_row(shape: GraphShape, config: Configuration) -> TableRow:
    if (shape.tag, config) in FORBIDDEN_CONFIGURATIONS:
        raise InvariantViolationError("forbidden-configuration", f"{shape.tag} {config} cannot occur over Q")
    for row in TABLE_ROWS:
        if row.shape == shape.tag and row.config == config:
            return row
    raise InvariantViolationError("isogeny-torsion-type", f"{shape.tag} {config} is not one of the 52 types")


def match_cm_row(g: ClassGraph, shape: GraphShape, config: Configuration) -> Optional[CMTableRow]:
    """The CM table row for a CM class, preferring the j-invariant of the first vertex."""
    if g.cm is None:
        return None
    js = [v.model.j_invariant for v in g.vertices]
    candidates = [
        row
        for row in CM_TABLE_ROWS
        if row.disc_K == g.cm.disc_K and row.shape == shape.tag and row.config == config and row.j in js
    ]
    if not candidates:
        raise InvariantViolationError("cm-table", f"CM class {shape.tag} {config} with d_K={g.cm.disc_K} has no table row")
    candidates.sort(key=lambda row: row.j != js[0])
    return candidates[0]


def check_shape_invariants(g: ClassGraph, shape: GraphShape, slots: List[int]):
    if shape.family == ShapeFamily.LINEAR and shape.size == 4:
        ends = [g.vertices[slots[0]].model.j_invariant, g.vertices[slots[-1]].model.j_invariant]
        if any(j != L4_END_J for j in ends):
            raise InvariantViolationError("l4-end-j", f"L4 end vertices have j={ends}")
