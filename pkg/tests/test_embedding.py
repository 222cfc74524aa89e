"""Tests for embedded point-hyperline quadrangles: (OV), proper and improper embeddings."""

import random

import pytest

from metasym.core.errors import TypeMismatchError
from metasym.geometry.embedding import EmbeddedQuadrangle, check_ov, classify_embedding
from metasym.geometry.fixtures import find_fixture, iter_point_hyperline_quadrangles, shipped_fixtures
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.schema import EmbeddingKind


@pytest.fixture(scope="module")
def fixtures(thin_f4: IncidenceGeometry) -> dict[str, EmbeddedQuadrangle]:
    return shipped_fixtures(thin_f4)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def test_members_are_type_checked(thin_f4: IncidenceGeometry):
    line = thin_f4.elements("line")[0]
    with pytest.raises(TypeMismatchError):
        EmbeddedQuadrangle(ambient=thin_f4, points=frozenset({line}), hyperlines=frozenset())


def test_quadrangles_are_ordinary(thin_f4: IncidenceGeometry):
    first = next(iter_point_hyperline_quadrangles(thin_f4))
    assert len(first.points) == len(first.hyperlines) == 4
    report = first.quadrangle_report()
    assert report.passed
    assert report.thin


# ---------------------------------------------------------------------------
# (OV)
# ---------------------------------------------------------------------------

def test_ov_without_hyperlines(thin_f4: IncidenceGeometry):
    e = EmbeddedQuadrangle(ambient=thin_f4, points=frozenset(thin_f4.points()[:5]), hyperlines=frozenset())
    report = check_ov(e)
    assert report.passed
    assert report.checked_pairs == 0


def test_ov_with_one_point_per_hyperline(synthetic):
    geom = synthetic(["a", "b"], lines={"L": ["a", "b"]}, hyperlines={"h": ["a"], "g": ["b"]})
    e = EmbeddedQuadrangle(ambient=geom, points=frozenset({"a", "b"}), hyperlines=frozenset({"h", "g"}))
    assert check_ov(e).passed


def test_ov_violation_witness(synthetic):
    geom = synthetic(["a", "b", "c"], lines={"L": ["a", "b"]}, hyperlines={"h": ["a", "b", "c"]})
    e = EmbeddedQuadrangle(ambient=geom, points=frozenset({"a", "b", "c"}), hyperlines=frozenset({"h"}))
    report = check_ov(e)
    assert not report.passed
    assert report.checked_pairs == 3
    (violation,) = report.violations
    assert (violation.hyperline, violation.points, violation.line) == ("h", ("a", "b"), "L")


# ---------------------------------------------------------------------------
# Proper and improper embeddings
# ---------------------------------------------------------------------------

def test_vacuously_improper(synthetic):
    geom = synthetic(["a", "b"], lines={"L": ["a", "b"]}, hyperlines={"h": ["a", "b"]})
    e = EmbeddedQuadrangle(ambient=geom, points=frozenset({"a", "b"}), hyperlines=frozenset({"h"}))
    report = classify_embedding(e)
    assert report.kind == EmbeddingKind.IMPROPER
    assert report.line_map == {"a": "L", "b": "L"}


def test_hyperlines_meeting_in_a_point_are_proper(synthetic):
    geom = synthetic(
        ["p", "a", "b"],
        lines={"La": ["p", "a"], "Lb": ["p", "b"]},
        hyperlines={"h": ["p", "a"], "g": ["p", "b"]},
    )
    e = EmbeddedQuadrangle(ambient=geom, points=frozenset({"p"}), hyperlines=frozenset({"h", "g"}))
    report = classify_embedding(e)
    assert report.kind == EmbeddingKind.PROPER
    assert report.witness == ["p", "g", "h"]


def test_pairwise_sharing_without_common_line(synthetic):
    geom = synthetic(
        ["p", "a", "b", "c"],
        lines={"L1": ["p", "a"], "L2": ["p", "b"], "L3": ["p", "c"]},
        hyperlines={"h": ["p", "a", "b"], "g": ["p", "b", "c"], "k": ["p", "a", "c"]},
    )
    e = EmbeddedQuadrangle(ambient=geom, points=frozenset({"p"}), hyperlines=frozenset({"h", "g", "k"}))
    report = classify_embedding(e)
    assert report.kind == EmbeddingKind.IMPROPER
    assert report.missing_global_line == ["p"]
    assert report.line_map == {}


# ---------------------------------------------------------------------------
# Shipped fixtures in the thin F4 geometry
# ---------------------------------------------------------------------------

def test_ov_pass_fixture(fixtures):
    e = fixtures["ov_pass"]
    assert check_ov(e).passed
    assert classify_embedding(e).kind == EmbeddingKind.PROPER


def test_ov_violation_fixture(fixtures):
    report = check_ov(fixtures["ov_violation"])
    assert not report.passed
    assert report.violations


def test_improper_fixture(fixtures):
    e = fixtures["improper"]
    report = classify_embedding(e)
    assert report.kind == EmbeddingKind.IMPROPER
    assert set(report.line_map) == set(e.points)
    assert report.missing_global_line == []
    for p, line in report.line_map.items():
        assert e.ambient.incident(p, line)
        assert all(e.ambient.incident(line, h) for h in e.hyperlines_through(p))


def test_unknown_fixture(thin_f4: IncidenceGeometry):
    with pytest.raises(KeyError):
        find_fixture(thin_f4, "nonexistent")


@pytest.mark.parametrize("name", ["ov_pass", "ov_violation", "improper"])
def test_relabel_invariance(fixtures, name):
    e = fixtures[name]
    ids = list(e.ambient.graph.nodes)
    shuffled = ids[:]
    random.Random(name).shuffle(shuffled)
    mapping = {old: f"x{new}" for old, new in zip(ids, shuffled)}
    moved = e.relabel(mapping)

    ov, moved_ov = check_ov(e), check_ov(moved)
    assert ov.passed == moved_ov.passed
    assert ov.checked_pairs == moved_ov.checked_pairs
    assert {(mapping[v.hyperline], frozenset(mapping[p] for p in v.points)) for v in ov.violations} == {
        (v.hyperline, frozenset(v.points)) for v in moved_ov.violations
    }

    kind, moved_kind = classify_embedding(e), classify_embedding(moved)
    assert kind.kind == moved_kind.kind
    assert {mapping[p] for p in kind.line_map} == set(moved_kind.line_map)
