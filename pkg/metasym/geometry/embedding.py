"""Point-hyperline embedded quadrangles and their embedding conditions."""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping

from pydantic import BaseModel, ConfigDict, model_validator

from metasym.core.errors import NotACliqueError
from metasym.core.logger import get_logger
from metasym.geometry.axioms import check_generalized_ngon
from metasym.geometry.incidence import IncidenceGeometry
from metasym.geometry.positions import classify_point_pair, metasymplectic_types
from metasym.models.reports import CliqueResult, EmbeddingReport, NgonReport, OvReport, OvViolation
from metasym.models.schema import EmbeddingKind, PointPairRelation

logger = get_logger(__name__)


class EmbeddedQuadrangle(BaseModel):
    """Point set P and hyperline set H of a four-typed ambient geometry."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    ambient: IncidenceGeometry
    points: frozenset[str]
    hyperlines: frozenset[str]

    @model_validator(mode="after")
    def _check_types(self) -> "EmbeddedQuadrangle":
        point, _, _, hyperline = metasymplectic_types(self.ambient)
        for p in self.points:
            self.ambient.expect_type(p, point)
        for h in self.hyperlines:
            self.ambient.expect_type(h, hyperline)
        return self

    def hyperlines_through(self, p: str) -> list[str]:
        return sorted(h for h in self.hyperlines if self.ambient.incident(p, h))

    def points_in(self, h: str) -> list[str]:
        return sorted(self.points & self.ambient.shadow(h))

    def quadrangle(self) -> IncidenceGeometry:
        """(P, H) with the restricted incidence."""
        point, _, _, hyperline = self.ambient.types
        geom = IncidenceGeometry((point, hyperline), name=f"quadrangle in {self.ambient.name}")
        geom.graph = self.ambient.graph.subgraph(self.points | self.hyperlines).copy()
        return geom

    def quadrangle_report(self, require_thick: bool = False) -> NgonReport:
        """Generalized-quadrangle test of (P, H); thickness is relaxed unless required."""
        return check_generalized_ngon(self.quadrangle(), 4, require_thick=require_thick)

    def relabel(self, mapping: Mapping[str, str]) -> "EmbeddedQuadrangle":
        return EmbeddedQuadrangle(
            ambient=self.ambient.relabel(mapping),
            points=frozenset(mapping.get(p, p) for p in self.points),
            hyperlines=frozenset(mapping.get(h, h) for h in self.hyperlines),
        )


def check_ov(e: EmbeddedQuadrangle) -> OvReport:
    """No two points of P inside one hyperline of H are collinear."""
    violations: list[OvViolation] = []
    checked = 0
    for h in sorted(e.hyperlines):
        for x, y in combinations(e.points_in(h), 2):
            checked += 1
            verdict = classify_point_pair(e.ambient, x, y)
            if verdict.relation == PointPairRelation.COLLINEAR:
                violations.append(OvViolation(hyperline=h, points=(x, y), line=verdict.witness[0]))
    report = OvReport(passed=not violations, checked_pairs=checked, violations=violations)
    logger.debug("(OV) over %d pair(s): passed=%s", checked, report.passed)
    return report


def _shares_line(ambient: IncidenceGeometry, h: str, g: str) -> bool:
    line = ambient.line_type
    return bool(ambient.neighbors(h, line) & ambient.neighbors(g, line))


def classify_embedding(e: EmbeddedQuadrangle) -> EmbeddingReport:
    """Improper iff, at every point of P, the hyperlines of H through it pairwise share a line.

    For an improper embedding each point p also gets L_p, the least line
    through p lying in all hyperlines of H through p; points where no such
    line exists are listed in ``missing_global_line``.
    """
    ambient = e.ambient
    for p in sorted(e.points):
        for h, g in combinations(e.hyperlines_through(p), 2):
            if not _shares_line(ambient, h, g):
                logger.debug("Embedding is proper: %s and %s through %s share no line", h, g, p)
                return EmbeddingReport(kind=EmbeddingKind.PROPER, witness=[p, h, g])

    line_map: dict[str, str] = {}
    missing: list[str] = []
    for p in sorted(e.points):
        candidates = reduce(
            set.intersection,
            (ambient.neighbors(h, ambient.line_type) for h in e.hyperlines_through(p)),
            ambient.neighbors(p, ambient.line_type),
        )
        if candidates:
            line_map[p] = min(candidates)
        else:
            missing.append(p)
    if missing:
        logger.warning("Pairwise line sharing without a common line at %s", missing)
    return EmbeddingReport(kind=EmbeddingKind.IMPROPER, line_map=line_map, missing_global_line=missing)


def clique_in_plane(geom: IncidenceGeometry, points: Iterable[str]) -> CliqueResult:
    """Find a plane containing a pairwise collinear point set.

    Raises:
        NotACliqueError: two points of the set are not collinear.
    """
    point, _, plane, _ = metasymplectic_types(geom)
    members = sorted(set(points))
    for x in members:
        geom.expect_type(x, point)
    for x, y in combinations(members, 2):
        if not geom.common_lines(x, y):
            raise NotACliqueError(f"not a clique: {x} and {y} are not collinear")
    candidates = reduce(
        set.intersection,
        (geom.neighbors(x, plane) for x in members),
        set(geom.elements(plane)),
    )
    if not candidates:
        return CliqueResult(contained=False)
    return CliqueResult(contained=True, plane=min(candidates))
