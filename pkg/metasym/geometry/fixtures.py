"""Shipped embedded-quadrangle fixtures.

Each fixture is the first ordinary point-hyperline quadrangle of the thin F4
geometry, in a fixed search order, with the required embedding behaviour.
"""

from __future__ import annotations

from typing import Callable, Iterator

import networkx as nx

from metasym.core.errors import InvariantViolationError
from metasym.core.logger import get_logger
from metasym.geometry.embedding import EmbeddedQuadrangle, check_ov, classify_embedding
from metasym.geometry.incidence import IncidenceGeometry
from metasym.geometry.positions import metasymplectic_types
from metasym.models.schema import EmbeddingKind

logger = get_logger(__name__)


def _induced_cycles(graph: nx.Graph, start: str, length: int) -> Iterator[list[str]]:
    """Chordless cycles through *start* whose other even positions exceed it."""

    def extend(path: list[str]) -> Iterator[list[str]]:
        if len(path) == length:
            yield list(path)
            return
        position = len(path)
        closing = position == length - 1
        for v in sorted(graph.adj[path[-1]]):
            if v in path or (position % 2 == 0 and v < start):
                continue
            if closing and not graph.has_edge(v, start):
                continue
            chords = [u for u in path[:-1] if graph.has_edge(u, v)]
            if chords and not (closing and chords == [start]):
                continue
            path.append(v)
            yield from extend(path)
            path.pop()

    yield from extend([start])


def iter_point_hyperline_quadrangles(geom: IncidenceGeometry) -> Iterator[EmbeddedQuadrangle]:
    """Ordinary quadrangles made of points and hyperlines, in a fixed order."""
    point, _, _, hyperline = metasymplectic_types(geom)
    graph = geom.restrict((point, hyperline)).graph
    for start in geom.elements(point):
        for cycle in _induced_cycles(graph, start, 8):
            yield EmbeddedQuadrangle(
                ambient=geom,
                points=frozenset(cycle[0::2]),
                hyperlines=frozenset(cycle[1::2]),
            )


def _ov_pass(e: EmbeddedQuadrangle) -> bool:
    return check_ov(e).passed and classify_embedding(e).kind == EmbeddingKind.PROPER


def _ov_violation(e: EmbeddedQuadrangle) -> bool:
    return not check_ov(e).passed


def _improper(e: EmbeddedQuadrangle) -> bool:
    report = classify_embedding(e)
    return report.kind == EmbeddingKind.IMPROPER and len(report.line_map) == len(e.points)


FIXTURES: dict[str, Callable[[EmbeddedQuadrangle], bool]] = {
    "ov_pass": _ov_pass,
    "ov_violation": _ov_violation,
    "improper": _improper,
}


def find_fixture(geom: IncidenceGeometry, name: str) -> EmbeddedQuadrangle:
    wanted = FIXTURES[name]
    for candidate in iter_point_hyperline_quadrangles(geom):
        if wanted(candidate):
            logger.info(
                "Fixture %s: P=%s H=%s",
                name,
                sorted(candidate.points),
                sorted(candidate.hyperlines),
            )
            return candidate
    raise InvariantViolationError(f"no point-hyperline quadrangle of {geom.name} fits fixture {name!r}")


def shipped_fixtures(geom: IncidenceGeometry) -> dict[str, EmbeddedQuadrangle]:
    return {name: find_fixture(geom, name) for name in FIXTURES}
