"""Generalized-polygon and metasymplectic axiom checkers.

A rank 2 geometry is a generalized n-gon iff its incidence graph is
connected with diameter n and girth 2n. Checkers return reports; they only
raise when the input has the wrong shape.
"""

from __future__ import annotations

from collections import defaultdict

import networkx as nx

from metasym.core.errors import WrongRankError
from metasym.core.logger import get_logger
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.reports import AxiomVerdict, MetasymplecticReport, NgonReport

logger = get_logger(__name__)

# (axiom, flag type positions, polygon order); positions follow point, line, plane, hyperline.
_RESIDUE_AXIOMS = (
    ("M1", ((0, 1), (2, 3)), 3),
    ("M2", ((0, 2), (1, 3), (1, 2)), 2),
    ("M3", ((0, 3),), 4),
)


def check_generalized_ngon(
    geom: IncidenceGeometry,
    n: int,
    require_thick: bool = False,
    *,
    thin: bool = False,
) -> NgonReport:
    """Incidence-graph test for a generalized n-gon.

    Args:
        geom: A geometry with exactly two types.
        n: Polygon order (>= 2).
        require_thick: Every element must be incident with at least 3 others.
        thin: Every element must be incident with exactly 2 others (ordinary n-gon).
    """
    if geom.rank != 2:
        raise WrongRankError(f"wrong rank: generalized polygons have 2 types, got {geom.rank}")
    graph = geom.graph
    failures: list[str] = []

    connected = graph.number_of_nodes() > 0 and nx.is_connected(graph)
    girth = nx.girth(graph) if graph.number_of_nodes() else float("inf")
    girth = None if girth == float("inf") else int(girth)
    diameter = nx.diameter(graph) if connected else None

    degrees: dict[str, list[int]] = defaultdict(list)
    for node, degree in graph.degree():
        degrees[geom.type_of(node)].append(degree)
    min_degree = {t: min(d) for t, d in degrees.items()}
    max_degree = {t: max(d) for t, d in degrees.items()}

    if not connected:
        failures.append("incidence graph is not connected")
    if diameter is not None and diameter != n:
        failures.append(f"diameter {diameter} != {n}")
    if girth != 2 * n:
        failures.append(f"girth {girth} != {2 * n}")

    thick = bool(degrees) and all(d >= 3 for d in min_degree.values())
    is_thin = bool(degrees) and all(d == 2 for d in min_degree.values()) and all(
        d == 2 for d in max_degree.values()
    )
    if require_thick and not thick:
        failures.append("not thick: some element has fewer than 3 incidences")
    if thin and not is_thin:
        failures.append("not thin: some element does not have exactly 2 incidences")

    return NgonReport(
        n=n,
        passed=not failures,
        counts=geom.counts(),
        connected=connected,
        girth=girth,
        diameter=diameter,
        min_degree=min_degree,
        max_degree=max_degree,
        thick=thick,
        thin=is_thin,
        failures=failures,
    )


def _flags_of_types(geom: IncidenceGeometry, a: str, b: str) -> list[tuple[str, str]]:
    return sorted(
        (x, y)
        for x in geom.elements(a)
        for y in geom.neighbors(x, b)
    )


def check_shadow_injectivity(geom: IncidenceGeometry) -> AxiomVerdict:
    seen: dict[frozenset[str], str] = {}
    checked = 0
    for element in geom.elements():
        if geom.type_of(element) == geom.point_type:
            continue
        checked += 1
        shadow = geom.shadow(element)
        if shadow in seen:
            return AxiomVerdict(
                name="M4",
                passed=False,
                checked=checked,
                witness=[seen[shadow], element],
                note="distinct elements with equal point shadows",
            )
        seen[shadow] = element
    return AxiomVerdict(name="M4", passed=True, checked=checked)


def check_metasymplectic(geom: IncidenceGeometry, thin_mode: bool = False) -> MetasymplecticReport:
    """Check M1-M4 over every flag of the relevant types.

    With *thin_mode* projective planes and generalized quadrangles are
    replaced by ordinary triangles and quadrangles, and digons by ordinary
    digons.
    """
    if geom.rank != 4:
        raise WrongRankError(f"wrong rank: metasymplectic spaces have 4 types, got {geom.rank}")
    verdicts: list[AxiomVerdict] = []
    for axiom, positions, n in _RESIDUE_AXIOMS:
        checked = 0
        witness = None
        note = ""
        for i, j in positions:
            for flag in _flags_of_types(geom, geom.types[i], geom.types[j]):
                checked += 1
                report = check_generalized_ngon(
                    geom.residue(flag),
                    n,
                    require_thick=not thin_mode,
                    thin=thin_mode,
                )
                if not report.passed:
                    witness, note = sorted(flag), "; ".join(report.failures)
                    break
            if witness is not None:
                break
        if witness is None and checked == 0:
            note = "no flags of the required types"
        if thin_mode and witness is None:
            note = note or "thin analogue: ordinary polygon residues"
        verdicts.append(
            AxiomVerdict(
                name=axiom,
                passed=witness is None and checked > 0,
                checked=checked,
                witness=witness,
                note=note,
            )
        )
        if witness is not None:
            logger.warning("%s fails at flag %s: %s", axiom, witness, note)

    verdicts.append(check_shadow_injectivity(geom))
    report = MetasymplecticReport(thin_mode=thin_mode, axioms=verdicts)
    logger.info(
        "Metasymplectic axioms on %s (thin_mode=%s): %s",
        geom.name,
        thin_mode,
        {a.name: a.passed for a in verdicts},
    )
    return report
