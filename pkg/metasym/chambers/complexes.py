"""Concrete chamber systems: the Coxeter complex, flag complexes, apartments."""

from __future__ import annotations

from collections import defaultdict
from functools import reduce
from typing import Sequence

import networkx as nx

from metasym.chambers.system import ChamberSystem
from metasym.core.errors import WrongRankError
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup
from metasym.geometry.incidence import IncidenceGeometry
from metasym.parabolic.cosets import right_coset_labels

logger = get_logger(__name__)


def coxeter_complex(group: CoxeterGroup, type_names: Sequence[str] | None = None) -> ChamberSystem:
    """Thin chamber system on the group elements.

    Chamber ``g`` is t-adjacent to ``g*s_t``; its flag holds, for every type t,
    the coset ``g W_{S - t}`` named ``<type>-<coset index>``.
    """
    names = list(type_names) if type_names else [f"type{t}" for t in group.generators]
    if len(names) != group.rank:
        raise WrongRankError(f"{len(names)} type names for a group of rank {group.rank}")

    flags: list[set[str]] = [set() for _ in group]
    element_types: dict[str, int] = {}
    for t in group.generators:
        others = [s for s in group.generators if s != t]
        for g, label in enumerate(right_coset_labels(group, others)):
            element_id = f"{names[t - 1]}-{label}"
            flags[g].add(element_id)
            element_types[element_id] = t

    panels = {
        t: [
            (g, group.right_action[g][t - 1])
            for g in range(len(group))
            if g < group.right_action[g][t - 1]
        ]
        for t in group.generators
    }
    return ChamberSystem(
        [frozenset(f) for f in flags],
        element_types,
        panels,
        name=f"Coxeter complex of order {len(group)}",
    )


def maximal_flags(geom: IncidenceGeometry) -> list[tuple[str, ...]]:
    """Flags with one element of every type, listed in type order and sorted."""
    found: list[tuple[str, ...]] = []

    def extend(flag: tuple[str, ...]) -> None:
        depth = len(flag)
        if depth == geom.rank:
            found.append(flag)
            return
        type_name = geom.types[depth]
        if flag:
            pool = reduce(set.intersection, (geom.neighbors(e, type_name) for e in flag))
        else:
            pool = set(geom.elements(type_name))
        for e in sorted(pool):
            extend((*flag, e))

    extend(())
    return found


def flag_complex(geom: IncidenceGeometry) -> ChamberSystem:
    """Chambers are maximal flags; the i-panels group chambers by their flag minus type i.

    The type of the k-th declared element type is the generator index k.
    """
    chambers = maximal_flags(geom)
    element_types = {e: geom.type_index(e) for e in geom.graph}
    panels: dict[int, list[list[int]]] = {}
    for t in range(1, geom.rank + 1):
        groups: dict[tuple[str, ...], list[int]] = defaultdict(list)
        for c, flag in enumerate(chambers):
            groups[flag[: t - 1] + flag[t:]].append(c)
        panels[t] = list(groups.values())
    return ChamberSystem(
        [frozenset(flag) for flag in chambers],
        element_types,
        panels,
        name=f"flag complex of {geom.name}",
    )


def apartments(geom: IncidenceGeometry, n: int | None = None) -> list[list[str]]:
    """Ordinary n-gons of a rank 2 geometry as induced cycles of length 2n.

    *n* defaults to half the girth of the incidence graph. Each cycle starts
    at its least element and proceeds towards the lesser neighbour.
    """
    if geom.rank != 2:
        raise WrongRankError(f"apartments need rank 2, got rank {geom.rank}")
    if n is None:
        girth = nx.girth(geom.graph)
        if girth == float("inf"):
            return []
        n = int(girth) // 2

    numbered = nx.convert_node_labels_to_integers(
        geom.graph, ordering="sorted", label_attribute="element"
    )
    label = nx.get_node_attributes(numbered, "element")
    found = []
    for cycle in nx.simple_cycles(numbered, length_bound=2 * n):
        if len(cycle) != 2 * n:
            continue
        if numbered.subgraph(cycle).number_of_edges() != 2 * n:
            continue
        names = [label[k] for k in cycle]
        start = names.index(min(names))
        names = names[start:] + names[:start]
        if names[-1] < names[1]:
            names = [names[0], *reversed(names[1:])]
        found.append(names)
    found.sort()
    logger.info("Found %d ordinary %d-gon(s) in %s", len(found), n, geom.name)
    return found
