"""Mutual positions of points and hyperlines in a four-typed geometry.

Types are read positionally as point, line, plane, hyperline. Whenever a
position is supposed to come with a unique witness and the model offers
several (or none), the classifier still answers and lists the anomaly in
``diagnostics``.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations

from metasym.core.errors import WrongRankError
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.reports import Classification
from metasym.models.schema import HyperlineMeet, PointHyperlineRelation, PointPairRelation


def metasymplectic_types(geom: IncidenceGeometry) -> tuple[str, str, str, str]:
    if geom.rank != 4:
        raise WrongRankError(f"wrong rank: expected point, line, plane, hyperline; got {list(geom.types)}")
    point, line, plane, hyperline = geom.types
    return point, line, plane, hyperline


def _unique(found: set[str], what: str) -> tuple[list[str], list[str]]:
    witness = sorted(found)
    if len(witness) > 1:
        return witness[:1], [f"{len(witness)} {what}: {witness}"]
    return witness, []


def common_hyperlines(geom: IncidenceGeometry, x: str, y: str) -> set[str]:
    hyperline = metasymplectic_types(geom)[3]
    return geom.neighbors(x, hyperline) & geom.neighbors(y, hyperline)


def classify_point_pair(geom: IncidenceGeometry, x: str, y: str) -> Classification:
    point = metasymplectic_types(geom)[0]
    geom.expect_type(x, point)
    geom.expect_type(y, point)
    if x == y:
        return Classification(relation=PointPairRelation.EQUAL)

    lines = geom.common_lines(x, y)
    if lines:
        witness, diagnostics = _unique(lines, "common lines")
        return Classification(relation=PointPairRelation.COLLINEAR, witness=witness, diagnostics=diagnostics)

    hyperlines = common_hyperlines(geom, x, y)
    if hyperlines:
        witness, diagnostics = _unique(hyperlines, "common hyperlines")
        return Classification(relation=PointPairRelation.COHYPERLINEAR, witness=witness, diagnostics=diagnostics)

    middle = geom.collinear_points(x) & geom.collinear_points(y)
    if not middle:
        return Classification(relation=PointPairRelation.OPPOSITE)
    diagnostics = []
    if len(middle) > 1:
        diagnostics.append(f"{len(middle)} points collinear with both: {sorted(middle)}")
    return Classification(
        relation=PointPairRelation.ALMOST_OPPOSITE,
        witness=sorted(middle),
        diagnostics=diagnostics,
    )


def classify_point_hyperline(geom: IncidenceGeometry, x: str, h: str) -> Classification:
    point, line, _, hyperline = metasymplectic_types(geom)
    geom.expect_type(x, point)
    geom.expect_type(h, hyperline)
    if geom.incident(x, h):
        return Classification(relation=PointHyperlineRelation.INCIDENT)

    near = geom.collinear_points(x)
    lines = {L for L in geom.neighbors(h, line) if geom.shadow(L) <= near}
    if lines:
        witness, diagnostics = _unique(lines, "lines of h collinear with x")
        return Classification(relation=PointHyperlineRelation.NEAR, witness=witness, diagnostics=diagnostics)

    partners = {
        u for u in geom.shadow(h)
        if u not in near and common_hyperlines(geom, x, u)
    }
    witness = sorted(partners)
    diagnostics = []
    if len(witness) != 1:
        diagnostics.append(f"{len(witness)} points of h cohyperlinear with x: {witness}")
    return Classification(relation=PointHyperlineRelation.FAR, witness=witness, diagnostics=diagnostics)


def hyperline_intersection(geom: IncidenceGeometry, h: str, g: str) -> Classification:
    _, _, plane, hyperline = metasymplectic_types(geom)
    geom.expect_type(h, hyperline)
    geom.expect_type(g, hyperline)
    meet = geom.shadow(h) & geom.shadow(g)
    if h == g:
        return Classification(
            relation=HyperlineMeet.OTHER,
            witness=sorted(meet),
            diagnostics=["equal hyperlines"],
        )
    if not meet:
        return Classification(relation=HyperlineMeet.EMPTY)
    if len(meet) == 1:
        return Classification(relation=HyperlineMeet.POINT, witness=sorted(meet))
    planes = {
        P for P in geom.neighbors(h, plane) & geom.neighbors(g, plane)
        if geom.shadow(P) == meet
    }
    if planes:
        witness, diagnostics = _unique(planes, "planes spanning the intersection")
        return Classification(relation=HyperlineMeet.PLANE, witness=witness, diagnostics=diagnostics)
    return Classification(
        relation=HyperlineMeet.OTHER,
        witness=sorted(meet),
        diagnostics=[f"intersection of {len(meet)} points is not a plane"],
    )


# ---------------------------------------------------------------------------
# Summaries over all pairs
# ---------------------------------------------------------------------------

def classify_all_point_pairs(geom: IncidenceGeometry) -> dict[str, object]:
    """Relation counts over all ordered point pairs, plus anomalies."""
    counts: Counter[str] = Counter()
    anomalies: list[list[str]] = []
    points = geom.points()
    for x in points:
        for y in points:
            verdict = classify_point_pair(geom, x, y)
            counts[verdict.relation.value] += 1
            if verdict.diagnostics:
                anomalies.append([x, y, *verdict.diagnostics])
    return {"counts": dict(sorted(counts.items())), "anomalies": anomalies}


def classify_all_point_hyperline(geom: IncidenceGeometry) -> dict[str, object]:
    hyperline = metasymplectic_types(geom)[3]
    counts: Counter[str] = Counter()
    anomalies: list[list[str]] = []
    for x in geom.points():
        for h in geom.elements(hyperline):
            verdict = classify_point_hyperline(geom, x, h)
            counts[verdict.relation.value] += 1
            if verdict.diagnostics:
                anomalies.append([x, h, *verdict.diagnostics])
    return {"counts": dict(sorted(counts.items())), "anomalies": anomalies}


def hyperline_intersection_distribution(geom: IncidenceGeometry) -> dict[str, object]:
    """Outcome counts over unordered pairs of distinct hyperlines."""
    hyperline = metasymplectic_types(geom)[3]
    counts: Counter[str] = Counter()
    other: list[list[str]] = []
    for h, g in combinations(geom.elements(hyperline), 2):
        verdict = hyperline_intersection(geom, h, g)
        counts[verdict.relation.value] += 1
        if verdict.relation == HyperlineMeet.OTHER:
            other.append([h, g])
    return {"counts": dict(sorted(counts.items())), "other": other}
