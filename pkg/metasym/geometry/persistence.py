"""Geometry persistence — line-oriented text files and node-link JSON.

Text format::

    # comment
    type point
    type line
    el point p0
    inc p0 L0
"""

from __future__ import annotations

import json
from pathlib import Path

from metasym.core.errors import InputFormatError, MetasymError
from metasym.core.logger import get_logger
from metasym.geometry.incidence import IncidenceGeometry

logger = get_logger(__name__)


def parse_geometry(text: str, path: str | Path | None = None, name: str = "geometry") -> IncidenceGeometry:
    """Parse the text format strictly; every problem names its line."""
    types: list[str] = []
    elements: list[tuple[int, str, str]] = []
    incidences: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, *args = line.split()
        if directive == "type" and len(args) == 1:
            if elements or incidences:
                raise InputFormatError("type declarations must precede elements", path, lineno)
            if args[0] in types:
                raise InputFormatError(f"duplicate type {args[0]!r}", path, lineno)
            types.append(args[0])
        elif directive == "el" and len(args) == 2:
            elements.append((lineno, args[0], args[1]))
        elif directive == "inc" and len(args) == 2:
            incidences.append((lineno, args[0], args[1]))
        else:
            raise InputFormatError(f"malformed line: {line!r}", path, lineno)

    if not types:
        raise InputFormatError("no type declarations", path)
    geom = IncidenceGeometry(types, name=name)
    for lineno, type_name, element_id in elements:
        if type_name not in types:
            raise InputFormatError(f"undeclared type {type_name!r}", path, lineno)
        if element_id in geom:
            raise InputFormatError(f"duplicate element {element_id!r}", path, lineno)
        geom.add_element(element_id, type_name)
    for lineno, a, b in incidences:
        for e in (a, b):
            if e not in geom:
                raise InputFormatError(f"unknown element {e!r}", path, lineno)
        try:
            geom.add_incidence(a, b)
        except MetasymError as exc:
            raise InputFormatError(str(exc), path, lineno) from exc
    logger.info("Parsed geometry %s: %s", name, geom.counts())
    return geom


def load_geometry(path: str | Path) -> IncidenceGeometry:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read file: {exc.strerror}", path) from exc
    return parse_geometry(text, path, name=path.stem)


def dump_geometry(geom: IncidenceGeometry) -> str:
    lines = [f"# {geom.name}"]
    lines += [f"type {t}" for t in geom.types]
    lines += [f"el {geom.type_of(e)} {e}" for t in geom.types for e in geom.elements(t)]
    edges = sorted(
        (a, b) if geom.type_index(a) < geom.type_index(b) else (b, a)
        for a, b in geom.graph.edges
    )
    lines += [f"inc {a} {b}" for a, b in edges]
    return "\n".join(lines) + "\n"


def save_geometry(geom: IncidenceGeometry, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_geometry(geom), encoding="utf-8")
    logger.info("Geometry exported to %s (%d elements, %d incidences)", path, geom.node_count, geom.edge_count)


def save_node_link(geom: IncidenceGeometry, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(geom.to_node_link(), fh, default=str)


def load_node_link(path: str | Path) -> IncidenceGeometry:
    with Path(path).open("r", encoding="utf-8") as fh:
        return IncidenceGeometry.from_node_link(json.load(fh))
