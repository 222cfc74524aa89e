"""Verifiers for the building-block gallery and its alternating lifts."""

from __future__ import annotations

from collections import Counter

from metasym.chambers.complexes import flag_complex
from metasym.core.errors import WrongMatrixError, WrongRankError
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.reports import AlternatingReport, BuildingBlockReport
from metasym.models.schema import CoxeterMatrix, Word

logger = get_logger(__name__)

BUILDING_BLOCK: Word = (1, 2, 3, 2, 1)
DUAL_BLOCK: Word = (4, 3, 2, 3, 4)


def verify_building_block(polar: IncidenceGeometry, group: CoxeterGroup) -> BuildingBlockReport:
    """Every chamber on p reaches the residue of an opposite point q along s1 s2 s3 s2 s1.

    Points are opposite when they are not collinear. For every point q one
    multi-source search from the chambers on q gives, for all chambers at
    once, the distance to the nearest chamber on q and the Weyl word of
    that gallery.
    """
    if polar.rank != 3:
        raise WrongRankError(f"wrong rank: polar spaces have 3 types, got {polar.rank}")
    if group.matrix != CoxeterMatrix.c3():
        raise WrongMatrixError("wrong matrix: the building block needs the C3 group")

    chambers = flag_complex(polar)
    target = group.reduce(BUILDING_BLOCK)
    points = polar.points()

    failures: list[str] = []
    words: set[Word] = set()
    histogram: Counter[int] = Counter()
    per_point: set[int] = set()
    opposite_pairs = 0
    checks = 0
    near_max: int | None = None

    for q in points:
        residue = chambers.residue({q})
        dist, elem = chambers.weyl_distances(group, residue.chambers, toward_sources=True)
        collinear = polar.collinear_points(q)
        for p in points:
            if p == q:
                continue
            on_p = chambers.element_chambers(p)
            per_point.add(len(on_p))
            if p in collinear:
                farthest = max(dist[c] for c in on_p)
                near_max = farthest if near_max is None else max(near_max, farthest)
                continue
            opposite_pairs += 1
            for c in on_p:
                checks += 1
                histogram[dist[c]] += 1
                words.add(group.element(elem[c]).normal_form)
                if dist[c] != 5 or elem[c] != target.id:
                    failures.append(
                        f"chamber {c} on {p} -> {q}: distance {dist[c]}, word {group.element(elem[c]).word}"
                    )

    report = BuildingBlockReport(
        passed=not failures and opposite_pairs > 0,
        points=len(points),
        opposite_pairs=opposite_pairs,
        chambers_per_point=sorted(per_point),
        checks=checks,
        weyl_words=sorted(words),
        distances=dict(sorted(histogram.items())),
        non_opposite_max_distance=near_max,
        failures=failures[:20],
    )
    logger.info(
        "Building block on %s: %d opposite pair(s), %d chamber check(s), passed=%s",
        polar.name,
        opposite_pairs,
        checks,
        report.passed,
    )
    return report


def alternating_word(k: int, first: Word = BUILDING_BLOCK) -> Word:
    """k blocks alternating between the building block and its dual, starting with *first*."""
    second = DUAL_BLOCK if first == BUILDING_BLOCK else BUILDING_BLOCK
    word: tuple[int, ...] = ()
    for i in range(k):
        word += first if i % 2 == 0 else second
    return word


def verify_alternating_words(group: CoxeterGroup, k: int) -> AlternatingReport:
    if group.matrix != CoxeterMatrix.f4():
        raise WrongMatrixError("wrong matrix: alternating words live in the F4 group")
    if not 1 <= k <= 4:
        raise ValueError(f"k must lie in 1..4, got {k}")
    words = [alternating_word(k, BUILDING_BLOCK), alternating_word(k, DUAL_BLOCK)]
    lengths = [group.reduce(w).length for w in words]
    reduced = [length == len(w) for length, w in zip(lengths, words)]
    return AlternatingReport(
        passed=all(reduced) and all(length == 5 * k for length in lengths),
        blocks=k,
        words=words,
        lengths=lengths,
        reduced=reduced,
    )
