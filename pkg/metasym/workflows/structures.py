"""Shipped structures, built on demand and memoised per process.

When a workspace directory is configured the built structures are also
persisted there. Returned objects are shared; callers must not mutate them.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Callable

from metasym.core.config import settings
from metasym.core.errors import UsageError
from metasym.coxeter.group import CoxeterGroup, build_group
from metasym.geometry.constructions import (
    build_projective_plane,
    build_sp6_polar,
    build_w2,
    thin_f4_geometry,
    thin_octahedron,
)
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.schema import CoxeterMatrix
from metasym.workflows.cache import WorkspaceCache


def _workspace(workspace: Path | None) -> Path | None:
    return workspace if workspace is not None else settings.workspace_dir


@lru_cache(maxsize=None)
def load_group(matrix_json: str, workspace: Path | None = None) -> CoxeterGroup:
    """Enumerate (or load from the workspace) the group of a Coxeter matrix."""
    matrix = CoxeterMatrix.from_json(matrix_json)
    cache = WorkspaceCache(_workspace(workspace))
    return cache.get_or_build(
        "group",
        {"matrix": [list(row) for row in matrix.entries]},
        build=lambda: build_group(matrix),
        encode=CoxeterGroup.to_payload,
        decode=CoxeterGroup.from_payload,
    )


def f4_group(workspace: Path | None = None) -> CoxeterGroup:
    return load_group(CoxeterMatrix.f4().to_json(), workspace)


def c3_group(workspace: Path | None = None) -> CoxeterGroup:
    return load_group(CoxeterMatrix.c3().to_json(), workspace)


_BUILDERS: dict[str, Callable[[Path | None], IncidenceGeometry]] = {
    "w2": lambda ws: build_w2(),
    "pg2": lambda ws: build_projective_plane(2),
    "pg3": lambda ws: build_projective_plane(3),
    "pg4": lambda ws: build_projective_plane(4),
    "sp6": lambda ws: build_sp6_polar(),
    "thinf4": lambda ws: thin_f4_geometry(f4_group(ws)),
    "octahedron": lambda ws: thin_octahedron(c3_group(ws)),
}

GEOMETRY_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def named_geometry(name: str, workspace: Path | None = None) -> IncidenceGeometry:
    if name not in _BUILDERS:
        raise UsageError(f"unknown geometry {name!r}; expected one of {', '.join(GEOMETRY_NAMES)}")
    cache = WorkspaceCache(_workspace(workspace))
    return cache.get_or_build(
        "geometry",
        {"name": name},
        build=lambda: _BUILDERS[name](workspace),
        encode=IncidenceGeometry.to_node_link,
        decode=IncidenceGeometry.from_node_link,
    )
