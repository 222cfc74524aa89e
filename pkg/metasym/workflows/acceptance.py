"""Acceptance suite — every verifier run against the shipped structures.

Each check builds what it needs through ``workflows.structures`` and returns
a ``CheckRecord``; ``run_checks`` strings them together into one report.
"""

from __future__ import annotations

import random
import time
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable

from metasym.chambers.complexes import apartments, coxeter_complex, flag_complex
from metasym.core.config import settings
from metasym.core.logger import get_logger
from metasym.coxeter.roots import f4_root_oracle
from metasym.geometry.axioms import check_generalized_ngon, check_metasymplectic
from metasym.geometry.embedding import check_ov, classify_embedding
from metasym.geometry.fixtures import shipped_fixtures
from metasym.geometry.lemmas import verify_alternating_words, verify_building_block
from metasym.geometry.positions import (
    classify_all_point_hyperline,
    classify_all_point_pairs,
    hyperline_intersection_distribution,
)
from metasym.models.reports import CheckRecord, VerificationReport, Verdict
from metasym.models.schema import EmbeddingKind
from metasym.parabolic.cosets import enumerate_double_cosets, parabolic_elements, verify_lemma_reps
from metasym.workflows.structures import c3_group, f4_group, named_geometry

logger = get_logger(__name__)

POINT_STABILISER = (2, 3, 4)
HYPERLINE_STABILISER = (1, 2, 3)


def _record(name: str, passed: bool, summary: dict, witnesses: list | None = None) -> CheckRecord:
    return CheckRecord(
        name=name,
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        summary=summary,
        witnesses=witnesses or [],
    )


# ---------------------------------------------------------------------------
# Coxeter group and parabolics
# ---------------------------------------------------------------------------

def check_f4(workspace: Path | None = None) -> CheckRecord:
    group = f4_group(workspace)
    oracle = f4_root_oracle()
    pair_orders = {
        f"{i}{j}": group.relation_order(i, j)
        for i, j in combinations(group.generators, 2)
    }
    printed = {
        f"{i}{j}": group.matrix.order(i, j)
        for i, j in combinations(group.generators, 2)
    }
    longest = group.longest_element()
    failures = group.verify_relations()
    passed = (
        len(group) == 1152
        and oracle["order"] == len(group)
        and longest.length == 24
        and oracle["positive_roots"] == longest.length
        and pair_orders == printed
        and not failures
    )
    return _record(
        "f4",
        passed,
        {
            "order": len(group),
            "root_oracle_order": oracle["order"],
            "longest_length": longest.length,
            "positive_roots": oracle["positive_roots"],
            "pair_orders": pair_orders,
        },
        failures[:10],
    )


def check_lemma_red(workspace: Path | None = None) -> CheckRecord:
    """The six claims up to length 15 are coset minima; the two length-20 words are not.

    Each length-20 word is reduced and lies in the double coset of the
    length-10 claim on the same parabolic pair.
    """
    report = verify_lemma_reps(f4_group(workspace))
    verdicts = report.verdicts
    lengths = [v.word_length for v in verdicts]
    minimal = [v.is_min_rep for v in verdicts]
    passed = (
        report.passed
        and lengths == [5, 5, 10, 10, 15, 15, 20, 20]
        and minimal == [True] * 6 + [False] * 2
        and verdicts[6].same_coset_as == [3]
        and verdicts[7].same_coset_as == [2]
    )
    return _record(
        "lemma-red",
        passed,
        {
            "claims": len(verdicts),
            "lengths": lengths,
            "minimal": minimal,
            "coset_sizes": [v.coset_size for v in verdicts],
            "distinct_cosets": report.distinct_cosets,
        },
        [
            {"word": v.claim.word, "min_rep": v.min_rep_word, "same_coset_as": v.same_coset_as}
            for v in verdicts
            if not v.is_min_rep
        ],
    )


def check_parabolic(workspace: Path | None = None) -> CheckRecord:
    group = f4_group(workspace)
    expected = {(2, 3, 4): 48, (1, 2, 3): 48, (1, 3, 4): 12, (1, 2, 4): 12}
    sizes = {"".join(map(str, J)): len(parabolic_elements(group, J)) for J in expected}
    counts = named_geometry("thinf4", workspace).counts()
    passed = (
        list(sizes.values()) == list(expected.values())
        and list(counts.values()) == [24, 96, 96, 24]
    )
    return _record("parabolic", passed, {"orders": sizes, "thin_f4_counts": counts})


def check_double_cosets(workspace: Path | None = None) -> CheckRecord:
    group = f4_group(workspace)
    P, H = POINT_STABILISER, HYPERLINE_STABILISER
    expected = {"P\\W/P": (P, P, 5), "H\\W/H": (H, H, 5), "H\\W/P": (H, P, 3), "P\\W/H": (P, H, 3)}
    counts = {
        label: len(enumerate_double_cosets(group, I, J))
        for label, (I, J, _) in expected.items()
    }
    distinct = verify_lemma_reps(group).minimal_in_distinct_cosets
    passed = distinct and all(counts[label] == n for label, (_, _, n) in expected.items())
    return _record("double-cosets", passed, {"counts": counts, "minimal_claims_in_distinct_cosets": distinct})


# ---------------------------------------------------------------------------
# Chambers
# ---------------------------------------------------------------------------

def check_gallery_lemma(workspace: Path | None = None) -> CheckRecord:
    """Gallery distance equals Weyl length for all ordered chamber pairs of the F4 complex.

    Along the way random walks from every source test that a gallery is
    minimal exactly when its word is reduced, and one sampled target per
    source confirms that the Weyl distance from g to h is g^-1 h.
    """
    group = f4_group(workspace)
    complex_ = coxeter_complex(group)
    rng = random.Random(settings.random_seed)
    walks_per_source = max(1, settings.gallery_samples // len(complex_))

    pairs = mismatches = walks = walk_failures = inverse_failures = 0
    witnesses: list = []
    for c in complex_.chambers:
        dist, elem = complex_.weyl_distances(group, [c])
        for d, k in dist.items():
            pairs += 1
            if group.length(elem[d]) != k:
                mismatches += 1
                witnesses.append({"from": c, "to": d, "distance": k, "word": group.element(elem[d]).word})

        d = rng.randrange(len(group))
        expected = group.multiply(group.inverse(group.element(c)), group.element(d))
        if elem[d] != expected.id:
            inverse_failures += 1

        for _ in range(walks_per_source):
            walks += 1
            word = [rng.choice(complex_.types) for _ in range(rng.randint(0, 30))]
            end = group.evaluate(word, start=c)
            minimal = len(word) == dist[end]
            if minimal != group.is_reduced(word):
                walk_failures += 1

    passed = pairs == len(group) ** 2 and not (mismatches or walk_failures or inverse_failures)
    return _record(
        "gallery-lemma",
        passed,
        {
            "pairs": pairs,
            "mismatches": mismatches,
            "random_galleries": walks,
            "minimality_disagreements": walk_failures,
            "inverse_product_failures": inverse_failures,
        },
        witnesses[:10],
    )


def check_convexity(workspace: Path | None = None) -> CheckRecord:
    w2 = named_geometry("w2", workspace)
    chambers = flag_complex(w2)
    projections = projection_failures = 0
    witnesses: list = []
    for x in w2.points():
        collinear = w2.collinear_points(x)
        for y in w2.points():
            if y == x or y in collinear:
                continue
            projections += 1
            image = chambers.projection(chambers.residue({x}), chambers.residue({y}))
            if image != {y}:
                projection_failures += 1
                witnesses.append({"from": x, "onto": y, "projection": sorted(image)})

    cycles = apartments(w2, 4)
    non_convex = []
    for cycle in cycles:
        found = chambers.convexity_witness(cycle)
        if found is not None:
            non_convex.append({"apartment": cycle, "witness": found})
    passed = projections > 0 and not projection_failures and cycles and not non_convex
    return _record(
        "convexity",
        bool(passed),
        {
            "opposite_point_projections": projections,
            "projection_failures": projection_failures,
            "apartments": len(cycles),
            "non_convex_apartments": len(non_convex),
        },
        (witnesses + non_convex)[:10],
    )


# ---------------------------------------------------------------------------
# Geometries
# ---------------------------------------------------------------------------

def check_thin_meta(workspace: Path | None = None) -> CheckRecord:
    geom = named_geometry("thinf4", workspace)
    group = f4_group(workspace)
    meta = check_metasymplectic(geom, thin_mode=True)
    pairs = classify_all_point_pairs(geom)
    mixed = classify_all_point_hyperline(geom)

    n_points = len(geom.points())
    stabiliser = len(parabolic_elements(group, POINT_STABILISER))
    point_cosets = enumerate_double_cosets(group, POINT_STABILISER, POINT_STABILISER)
    mixed_cosets = enumerate_double_cosets(group, POINT_STABILISER, HYPERLINE_STABILISER)

    def per_point(counts: dict[str, int]) -> list[int]:
        return sorted(c // n_points for c in counts.values())

    passed = (
        meta.passed
        and not pairs["anomalies"]
        and not mixed["anomalies"]
        and per_point(pairs["counts"]) == sorted(r.size // stabiliser for r in point_cosets)
        and per_point(mixed["counts"]) == sorted(r.size // stabiliser for r in mixed_cosets)
    )
    return CheckRecord(
        name="thin-meta",
        verdict=Verdict.PASS if passed else Verdict.FAIL,
        summary={
            "axioms": {a.name: a.passed for a in meta.axioms},
            "point_pairs": pairs["counts"],
            "point_hyperline": mixed["counts"],
            "double_cosets": {"P\\W/P": len(point_cosets), "P\\W/H": len(mixed_cosets)},
            "hyperline_intersections": hyperline_intersection_distribution(geom),
        },
        witnesses=[a.model_dump() for a in meta.axioms if not a.passed]
        + pairs["anomalies"][:5]
        + mixed["anomalies"][:5],
    )


def check_ngon(workspace: Path | None = None) -> CheckRecord:
    cases = {
        "w2": (named_geometry("w2", workspace), 4, {"point": 15, "line": 15}),
        "pg2": (named_geometry("pg2", workspace), 3, {"point": 7, "line": 7}),
        "pg4": (named_geometry("pg4", workspace), 3, {"point": 21, "line": 21}),
    }
    summary: dict = {}
    passed = True
    for name, (geom, n, counts) in cases.items():
        report = check_generalized_ngon(geom, n, require_thick=True)
        dual = check_generalized_ngon(geom.dual(), n, require_thick=True)
        ok = report.passed and dual.passed and report.counts == counts
        passed &= ok
        summary[name] = {
            "passed": ok,
            "counts": report.counts,
            "girth": report.girth,
            "diameter": report.diameter,
            "degrees": report.min_degree,
        }
    w2 = summary["w2"]
    passed &= w2["degrees"] == {"point": 3, "line": 3}
    return _record("ngon", passed, summary)


def check_polar(workspace: Path | None = None) -> CheckRecord:
    polar = named_geometry("sp6", workspace)
    counts = polar.counts()
    failures = []
    for x in polar.points():
        report = check_generalized_ngon(polar.residue([x]), 4, require_thick=True)
        if not report.passed:
            failures.append({"point": x, "failures": report.failures})
    for p in polar.elements("plane"):
        report = check_generalized_ngon(polar.residue([p]), 3, require_thick=True)
        if not report.passed:
            failures.append({"plane": p, "failures": report.failures})
    passed = counts == {"point": 63, "line": 315, "plane": 135} and not failures
    return _record(
        "polar",
        passed,
        {"counts": counts, "point_residues": counts["point"], "plane_residues": counts["plane"]},
        failures[:10],
    )


def check_building_block(workspace: Path | None = None, model: str | None = None) -> CheckRecord:
    group = c3_group(workspace)
    models = [model] if model else ["sp6", "octahedron"]
    reports = {name: verify_building_block(named_geometry(name, workspace), group) for name in models}
    words = {tuple(map(tuple, r.weyl_words)) for r in reports.values()}
    passed = all(r.passed for r in reports.values()) and len(words) == 1
    return _record(
        "building-block",
        passed,
        {
            name: {
                "points": r.points,
                "opposite_pairs": r.opposite_pairs,
                "chambers_per_point": r.chambers_per_point,
                "checks": r.checks,
                "weyl_words": [list(w) for w in r.weyl_words],
                "distances": r.distances,
                "non_opposite_max_distance": r.non_opposite_max_distance,
            }
            for name, r in reports.items()
        },
        [f for r in reports.values() for f in r.failures][:10],
    )


def check_alternating(workspace: Path | None = None) -> CheckRecord:
    group = f4_group(workspace)
    reports = [verify_alternating_words(group, k) for k in range(1, 5)]
    return _record(
        "alternating",
        all(r.passed for r in reports),
        {f"k={r.blocks}": {"lengths": r.lengths, "reduced": r.reduced} for r in reports},
    )


def check_embedding(workspace: Path | None = None) -> CheckRecord:
    geom = named_geometry("thinf4", workspace)
    fixtures = shipped_fixtures(geom)
    summary: dict = {}
    for name, fixture in fixtures.items():
        ov = check_ov(fixture)
        kind = classify_embedding(fixture)
        summary[name] = {
            "points": sorted(fixture.points),
            "hyperlines": sorted(fixture.hyperlines),
            "ordinary_quadrangle": fixture.quadrangle_report().passed,
            "ov": ov.passed,
            "ov_violations": [v.model_dump(mode="json") for v in ov.violations],
            "kind": kind.kind.value,
            "line_map": kind.line_map,
        }
    passed = (
        summary["ov_pass"]["ov"]
        and summary["ov_pass"]["kind"] == EmbeddingKind.PROPER.value
        and not summary["ov_violation"]["ov"]
        and bool(summary["ov_violation"]["ov_violations"])
        and summary["improper"]["kind"] == EmbeddingKind.IMPROPER.value
        and len(summary["improper"]["line_map"]) == len(summary["improper"]["points"])
        and all(s["ordinary_quadrangle"] for s in summary.values())
    )
    return _record("embedding", passed, summary)


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

CHECKS: dict[str, Callable[[Path | None], CheckRecord]] = {
    "f4": check_f4,
    "lemma-red": check_lemma_red,
    "parabolic": check_parabolic,
    "double-cosets": check_double_cosets,
    "gallery-lemma": check_gallery_lemma,
    "thin-meta": check_thin_meta,
    "ngon": check_ngon,
    "polar": check_polar,
    "building-block": check_building_block,
    "alternating": check_alternating,
    "convexity": check_convexity,
    "embedding": check_embedding,
}


def run_checks(names: Iterable[str], workspace: Path | None = None, command: str = "verify") -> VerificationReport:
    names = list(names)
    logger.info("=" * 60)
    logger.info("  Acceptance suite — %d check(s)", len(names))
    logger.info("=" * 60)
    started = time.perf_counter()
    records = []
    for name in names:
        tick = time.perf_counter()
        record = CHECKS[name](workspace)
        logger.info("[%s] %s in %.2fs", name, record.verdict.value, time.perf_counter() - tick)
        records.append(record)
    report = VerificationReport.from_checks(command, records, wall_time=time.perf_counter() - started)
    logger.info("Acceptance suite verdict: %s", report.verdict.value)
    return report
