"""IncidenceGeometry — multi-sorted incidence structure backed by NetworkX.

Elements are nodes carrying a ``node_type`` attribute; incidence is an
undirected edge and never joins two elements of the same type. The first
declared type plays the role of points, the second of lines.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

import networkx as nx
from networkx.readwrite import json_graph

from metasym.core.errors import (
    InvalidFlagError,
    InvariantViolationError,
    TypeMismatchError,
    WrongRankError,
)
from metasym.core.logger import get_logger

logger = get_logger(__name__)


class IncidenceGeometry:
    """Typed elements with a symmetric incidence relation.

    Node attributes: ``node_type`` plus any construction data (e.g. ``coset_rep``).
    """

    def __init__(self, types: Sequence[str], name: str = "geometry") -> None:
        if not types or len(set(types)) != len(types):
            raise WrongRankError(f"types must be distinct and non-empty: {list(types)}")
        self.types: tuple[str, ...] = tuple(types)
        self.name = name
        self.graph = nx.Graph()

    # ------------------------------------------------------------------
    # Building
    # ------------------------------------------------------------------

    def add_element(self, element_id: str, type_name: str, **attrs: Any) -> None:
        if type_name not in self.types:
            raise TypeMismatchError(f"unknown type {type_name!r} for element {element_id!r}")
        if element_id in self.graph:
            raise InvariantViolationError(f"duplicate element {element_id!r}")
        self.graph.add_node(element_id, node_type=type_name, **attrs)

    def add_incidence(self, a: str, b: str) -> None:
        if self.type_of(a) == self.type_of(b):
            raise TypeMismatchError(f"{a!r} and {b!r} have the same type {self.type_of(a)!r}")
        self.graph.add_edge(a, b)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.types)

    @property
    def point_type(self) -> str:
        return self.types[0]

    @property
    def line_type(self) -> str:
        return self.types[1]

    def __contains__(self, element_id: object) -> bool:
        return element_id in self.graph

    def type_of(self, element_id: str) -> str:
        try:
            return self.graph.nodes[element_id]["node_type"]
        except KeyError:
            raise TypeMismatchError(f"unknown element {element_id!r}") from None

    def type_index(self, element_id: str) -> int:
        """1-based position of the element's type."""
        return self.types.index(self.type_of(element_id)) + 1

    def expect_type(self, element_id: str, type_name: str) -> None:
        actual = self.type_of(element_id)
        if actual != type_name:
            raise TypeMismatchError(f"{element_id!r} is a {actual}, expected a {type_name}")

    def elements(self, type_name: str | None = None) -> list[str]:
        return sorted(
            n for n, t in self.graph.nodes(data="node_type")
            if type_name is None or t == type_name
        )

    def points(self) -> list[str]:
        return self.elements(self.point_type)

    def incident(self, a: str, b: str) -> bool:
        return self.graph.has_edge(a, b)

    def neighbors(self, element_id: str, type_name: str | None = None) -> set[str]:
        nodes = self.graph.nodes
        return {
            n for n in self.graph.adj[element_id]
            if type_name is None or nodes[n]["node_type"] == type_name
        }

    def shadow(self, element_id: str) -> frozenset[str]:
        """Points incident with *element_id* (a point is its own shadow)."""
        if self.type_of(element_id) == self.point_type:
            return frozenset({element_id})
        return frozenset(self.neighbors(element_id, self.point_type))

    def common_lines(self, x: str, y: str) -> set[str]:
        return self.neighbors(x, self.line_type) & self.neighbors(y, self.line_type)

    def collinear_points(self, x: str) -> set[str]:
        """Points other than *x* sharing a line with it."""
        found: set[str] = set()
        for line in self.neighbors(x, self.line_type):
            found |= self.neighbors(line, self.point_type)
        found.discard(x)
        return found

    def is_flag(self, elements: Iterable[str]) -> bool:
        items = list(elements)
        if any(e not in self.graph for e in items):
            return False
        if len({self.type_of(e) for e in items}) != len(items):
            return False
        return all(self.incident(a, b) for a, b in combinations(items, 2))

    def counts(self) -> dict[str, int]:
        tally = {t: 0 for t in self.types}
        for _, t in self.graph.nodes(data="node_type"):
            tally[t] += 1
        return tally

    # ------------------------------------------------------------------
    # Derived geometries
    # ------------------------------------------------------------------

    def _derived(self, types: Sequence[str], keep: Iterable[str], name: str) -> "IncidenceGeometry":
        geom = IncidenceGeometry(types, name=name)
        geom.graph = self.graph.subgraph(keep).copy()
        return geom

    def residue(self, flag: Iterable[str]) -> "IncidenceGeometry":
        """Elements of the remaining types incident with every element of *flag*."""
        flag = list(flag)
        if not self.is_flag(flag):
            raise InvalidFlagError(f"invalid flag: {sorted(flag)}")
        used = {self.type_of(e) for e in flag}
        types = [t for t in self.types if t not in used]
        if not flag:
            return self._derived(types, self.graph.nodes, self.name)
        keep = reduce(set.intersection, (self.neighbors(e) for e in flag))
        keep = {e for e in keep if self.type_of(e) in types}
        return self._derived(types, keep, f"{self.name} residue of {sorted(flag)}")

    def restrict(self, types: Sequence[str]) -> "IncidenceGeometry":
        for t in types:
            if t not in self.types:
                raise TypeMismatchError(f"unknown type {t!r}")
        ordered = [t for t in self.types if t in types]
        return self._derived(ordered, [n for n in self.graph if self.type_of(n) in ordered], self.name)

    def dual(self) -> "IncidenceGeometry":
        """Swap the two types of a rank 2 geometry."""
        if self.rank != 2:
            raise WrongRankError(f"dual needs rank 2, got rank {self.rank}")
        return self._derived(tuple(reversed(self.types)), self.graph.nodes, f"dual {self.name}")

    def relabel(self, mapping: Mapping[str, str]) -> "IncidenceGeometry":
        geom = IncidenceGeometry(self.types, name=self.name)
        geom.graph = nx.relabel_nodes(self.graph, dict(mapping), copy=True)
        return geom

    def with_extra_type(self, type_name: str) -> "IncidenceGeometry":
        """Append an empty type (used to pad a geometry to a higher rank)."""
        return self._derived((*self.types, type_name), self.graph.nodes, self.name)

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    def to_node_link(self) -> dict[str, Any]:
        g = self.graph.copy()
        g.graph.update(types=list(self.types), name=self.name)
        return json_graph.node_link_data(g, edges="links")

    @classmethod
    def from_node_link(cls, data: dict[str, Any]) -> "IncidenceGeometry":
        graph = json_graph.node_link_graph(data, edges="links")
        geom = cls(graph.graph.pop("types"), name=graph.graph.pop("name", "geometry"))
        geom.graph = graph
        return geom

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def __repr__(self) -> str:
        return f"IncidenceGeometry({self.name!r}, {self.counts()})"
