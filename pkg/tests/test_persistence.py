"""Tests for geometry files, node-link export and the workspace cache."""

import json
from pathlib import Path

import pytest

from metasym.core.errors import InputFormatError, UsageError
from metasym.coxeter.group import CoxeterGroup
from metasym.geometry.constructions import ordinary_polygon
from metasym.geometry.incidence import IncidenceGeometry
from metasym.geometry.persistence import (
    dump_geometry,
    load_geometry,
    load_node_link,
    parse_geometry,
    save_geometry,
    save_node_link,
)
from metasym.workflows.cache import WorkspaceCache
from metasym.workflows.structures import load_group, named_geometry

TRIANGLE = """\
# ordinary triangle
type point
type line
el point p0
el point p1
el point p2
el line L0
el line L1
el line L2
inc p0 L0
inc p1 L0
inc p1 L1
inc p2 L1
inc p2 L2
inc p0 L2
"""


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def test_parse_geometry():
    geom = parse_geometry(TRIANGLE, name="triangle")
    assert geom.types == ("point", "line")
    assert geom.counts() == {"point": 3, "line": 3}
    assert geom.edge_count == 6
    assert geom.incident("p0", "L2")


@pytest.mark.parametrize(
    "text, line",
    [
        ("type point\nel point a\nbogus a b\n", 3),
        ("type point\nel point a\ntype line\n", 3),
        ("type point\ntype point\n", 2),
        ("type point\nel line a\n", 2),
        ("type point\ntype line\nel point a\ninc a b\n", 4),
        ("type point\ntype line\nel point a\nel point b\ninc a b\n", 5),
        ("type point\nel point a\nel point a\n", 3),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(InputFormatError) as excinfo:
        parse_geometry(text, path="bad.geom")
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"bad.geom:{line}: ")


def test_parse_needs_types():
    with pytest.raises(InputFormatError):
        parse_geometry("# nothing here\n")


def test_dump_round_trip(w2: IncidenceGeometry):
    again = parse_geometry(dump_geometry(w2))
    assert again.types == w2.types
    assert again.edge_count == w2.edge_count
    assert all(again.incident(a, b) for a, b in w2.graph.edges)
    assert again.counts() == w2.counts()


def test_save_and_load(tmp_path: Path):
    path = tmp_path / "nested" / "square.geom"
    save_geometry(ordinary_polygon(4), path)
    geom = load_geometry(path)
    assert geom.name == "square"
    assert geom.counts() == {"point": 4, "line": 4}


def test_load_missing_file(tmp_path: Path):
    with pytest.raises(InputFormatError):
        load_geometry(tmp_path / "missing.geom")


def test_node_link(thin_f4: IncidenceGeometry, tmp_path: Path):
    path = tmp_path / "thin.json"
    save_node_link(thin_f4, path)
    geom = load_node_link(path)
    assert geom.types == thin_f4.types
    assert geom.name == thin_f4.name
    assert geom.counts() == thin_f4.counts()
    point = geom.points()[0]
    assert geom.graph.nodes[point]["coset_rep"] == thin_f4.graph.nodes[point]["coset_rep"]


# ---------------------------------------------------------------------------
# Workspace cache
# ---------------------------------------------------------------------------

def test_cache_disabled_without_root():
    cache = WorkspaceCache(None)
    assert not cache.enabled
    assert cache.load("group", {}) is None
    calls = []
    value = cache.get_or_build("group", {}, lambda: calls.append(1) or 7, int, int)
    assert value == 7 and calls == [1]


def test_cache_round_trip(tmp_path: Path):
    cache = WorkspaceCache(tmp_path)
    params = {"name": "demo"}
    built = cache.get_or_build("demo", params, lambda: {"x": 1}, dict, dict)
    assert cache.path_for("demo", params).exists()
    loaded = cache.get_or_build("demo", params, lambda: pytest.fail("rebuilt"), dict, dict)
    assert loaded == built


def test_cache_key_depends_on_params():
    assert WorkspaceCache.key("group", {"a": 1}) != WorkspaceCache.key("group", {"a": 2})
    assert WorkspaceCache.key("group", {"a": 1, "b": 2}) == WorkspaceCache.key("group", {"b": 2, "a": 1})


def test_corrupt_cache_entry_is_rebuilt(tmp_path: Path):
    cache = WorkspaceCache(tmp_path)
    params = {"name": "demo"}
    cache.path_for("demo", params).write_text("{not json")
    assert cache.get_or_build("demo", params, lambda: [1, 2], list, list) == [1, 2]
    assert cache.load("demo", params) == [1, 2]


def test_cached_group_matches(tmp_path: Path, c3: CoxeterGroup):
    group = load_group(c3.matrix.to_json(), tmp_path)
    assert list(tmp_path.glob("group-*.json"))
    assert [g.normal_form for g in group] == [g.normal_form for g in c3]


def test_cached_group_with_broken_tables_is_rebuilt(tmp_path: Path, c3: CoxeterGroup):
    payload = c3.to_payload()
    payload["left_action"][5] = payload["left_action"][6]
    cache = WorkspaceCache(tmp_path)
    params = {"matrix": [list(row) for row in c3.matrix.entries]}
    cache.path_for("group", params).write_text(json.dumps(payload))
    group = load_group(c3.matrix.to_json(), tmp_path)
    assert group.left_action == c3.left_action
    assert cache.load("group", params)["left_action"] == [list(row) for row in c3.left_action]


def test_unknown_named_geometry():
    with pytest.raises(UsageError):
        named_geometry("pg9")
