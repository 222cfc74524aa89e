"""Constructions of the concrete geometries.

Symplectic spaces over GF(2) are handled on bitmasks: coordinate pairs
(0, 1), (2, 3), (4, 5) are hyperbolic, so the form is the parity of
``x & swap(y)``.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

import numpy as np

from metasym.core.errors import WrongMatrixError, WrongRankError
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup
from metasym.geometry.fields import FiniteField
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.schema import CoxeterMatrix
from metasym.parabolic.cosets import right_coset_labels

logger = get_logger(__name__)

METASYMPLECTIC_TYPES = ("point", "line", "plane", "hyperline")
POLAR_TYPES = ("point", "line", "plane")


# ---------------------------------------------------------------------------
# Projective planes
# ---------------------------------------------------------------------------

def _normalised_triples(q: int) -> np.ndarray:
    """Homogeneous coordinates with leading non-zero entry 1."""
    rows = [
        v for v in product(range(q), repeat=3)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    return np.array(rows)


def build_projective_plane(q: int) -> IncidenceGeometry:
    """Desarguesian plane PG(2, q) for q in {2, 3, 4}."""
    field = FiniteField(q)
    triples = _normalised_triples(q)
    incidence = field.dot(triples[:, None, :], triples[None, :, :]) == 0

    geom = IncidenceGeometry(("point", "line"), name=f"PG(2,{q})")
    for k, coords in enumerate(triples):
        geom.add_element(f"p{k:02d}", "point", coords="".join(map(str, coords)))
        geom.add_element(f"L{k:02d}", "line", coords="".join(map(str, coords)))
    for i, j in zip(*np.nonzero(incidence)):
        geom.add_incidence(f"p{i:02d}", f"L{j:02d}")
    logger.info("Built %s: %s", geom.name, geom.counts())
    return geom


# ---------------------------------------------------------------------------
# Symplectic spaces over GF(2)
# ---------------------------------------------------------------------------

def _swap_pairs(x: int) -> int:
    return ((x & 0b010101) << 1) | ((x >> 1) & 0b010101)


def symplectic_form(x: int, y: int) -> int:
    return (x & _swap_pairs(y)).bit_count() & 1


def _isotropic_lines(points: Sequence[int]) -> list[frozenset[int]]:
    lines = {
        frozenset({x, y, x ^ y})
        for x, y in combinations(points, 2)
        if symplectic_form(x, y) == 0
    }
    return sorted(lines, key=sorted)


def _isotropic_planes(points: Sequence[int], lines: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    planes = set()
    for line in lines:
        a, b = sorted(line)[:2]
        for z in points:
            if z in line or symplectic_form(z, a) or symplectic_form(z, b):
                continue
            planes.add(frozenset({a, b, a ^ b, z, z ^ a, z ^ b, z ^ a ^ b}))
    return sorted(planes, key=sorted)


def _symplectic_geometry(dimension: int, types: Sequence[str], name: str) -> IncidenceGeometry:
    points = list(range(1, 2 ** dimension))
    lines = _isotropic_lines(points)
    planes = _isotropic_planes(points, lines) if len(types) > 2 else []

    geom = IncidenceGeometry(types, name=name)
    point_id = {x: f"pt{x:0{dimension}b}" for x in points}
    line_id = {line: f"ln{k:03d}" for k, line in enumerate(lines)}
    for x in points:
        geom.add_element(point_id[x], types[0])
    for line, lid in line_id.items():
        geom.add_element(lid, types[1])
        for x in line:
            geom.add_incidence(point_id[x], lid)
    for k, plane in enumerate(planes):
        pid = f"pl{k:03d}"
        geom.add_element(pid, types[2])
        for x in plane:
            geom.add_incidence(point_id[x], pid)
        for line, lid in line_id.items():
            if line <= plane:
                geom.add_incidence(lid, pid)
    logger.info("Built %s: %s", name, geom.counts())
    return geom


def build_w2() -> IncidenceGeometry:
    """Symplectic quadrangle W(2): points and isotropic lines of PG(3, 2)."""
    return _symplectic_geometry(4, ("point", "line"), "W(2)")


def build_sp6_polar() -> IncidenceGeometry:
    """Rank 3 symplectic polar space of PG(5, 2)."""
    return _symplectic_geometry(6, POLAR_TYPES, "W(5,2)")


# ---------------------------------------------------------------------------
# Small rank 2 geometries
# ---------------------------------------------------------------------------

def ordinary_polygon(n: int) -> IncidenceGeometry:
    """Thin generalized n-gon: n points and n lines in a cycle."""
    geom = IncidenceGeometry(("point", "line"), name=f"ordinary {n}-gon")
    for k in range(n):
        geom.add_element(f"p{k}", "point")
        geom.add_element(f"L{k}", "line")
    for k in range(n):
        geom.add_incidence(f"p{k}", f"L{k}")
        geom.add_incidence(f"p{(k + 1) % n}", f"L{k}")
    return geom


def complete_bipartite(m: int, n: int) -> IncidenceGeometry:
    """Generalized digon with m points and n lines."""
    geom = IncidenceGeometry(("point", "line"), name=f"digon {m}x{n}")
    for i in range(m):
        geom.add_element(f"p{i}", "point")
    for j in range(n):
        geom.add_element(f"L{j}", "line")
        for i in range(m):
            geom.add_incidence(f"p{i}", f"L{j}")
    return geom


# ---------------------------------------------------------------------------
# Thin geometries of Coxeter groups
# ---------------------------------------------------------------------------

def coset_geometry(group: CoxeterGroup, type_names: Sequence[str]) -> IncidenceGeometry:
    """Elements of type t are the cosets g W_{S - t}; cosets are incident iff they meet.

    Each element stores the normal form of its minimal coset representative
    as ``coset_rep``.
    """
    if len(type_names) != group.rank:
        raise WrongRankError(f"{len(type_names)} type names for a group of rank {group.rank}")
    geom = IncidenceGeometry(type_names, name=f"coset geometry of order {len(group)}")

    labels: list[list[str]] = []
    for t in group.generators:
        others = [s for s in group.generators if s != t]
        column = right_coset_labels(group, others)
        name = type_names[t - 1]
        width = len(str(max(column)))
        ids = [f"{name}-{label:0{width}d}" for label in column]
        for g in group:
            if ids[g.id] not in geom:
                # Ids run in ShortLex order, so the first hit is the minimal representative.
                geom.add_element(ids[g.id], name, coset_rep=g.word)
        labels.append(ids)

    for g in group:
        chamber = [column[g.id] for column in labels]
        geom.graph.add_edges_from(combinations(chamber, 2))
    logger.info("Built %s: %s", geom.name, geom.counts())
    return geom


def thin_f4_geometry(group: CoxeterGroup) -> IncidenceGeometry:
    if group.matrix != CoxeterMatrix.f4():
        raise WrongMatrixError("wrong matrix: thin F4 geometry needs the F4 group")
    geom = coset_geometry(group, METASYMPLECTIC_TYPES)
    geom.name = "thin F4"
    return geom


def thin_octahedron(group: CoxeterGroup) -> IncidenceGeometry:
    """Apartment of a rank 3 polar space: 6 points, 12 lines, 8 planes."""
    if group.matrix != CoxeterMatrix.c3():
        raise WrongMatrixError("wrong matrix: the octahedron needs the C3 group")
    geom = coset_geometry(group, POLAR_TYPES)
    geom.name = "thin octahedron"
    return geom
