"""Shared fixtures: the groups and geometries are expensive, so build them once."""

import pytest

from metasym.chambers.complexes import coxeter_complex, flag_complex
from metasym.chambers.system import ChamberSystem
from metasym.coxeter.group import CoxeterGroup, build_group
from metasym.geometry.constructions import (
    METASYMPLECTIC_TYPES,
    build_sp6_polar,
    build_w2,
    thin_f4_geometry,
    thin_octahedron,
)
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.schema import CoxeterMatrix


@pytest.fixture(scope="session")
def f4() -> CoxeterGroup:
    return build_group(CoxeterMatrix.f4())


@pytest.fixture(scope="session")
def c3() -> CoxeterGroup:
    return build_group(CoxeterMatrix.c3())


@pytest.fixture(scope="session")
def quadrangle_group() -> CoxeterGroup:
    return build_group(CoxeterMatrix.dihedral(4))


@pytest.fixture(scope="session")
def f4_complex(f4: CoxeterGroup) -> ChamberSystem:
    return coxeter_complex(f4)


@pytest.fixture(scope="session")
def w2() -> IncidenceGeometry:
    return build_w2()


@pytest.fixture(scope="session")
def w2_chambers(w2: IncidenceGeometry) -> ChamberSystem:
    return flag_complex(w2)


@pytest.fixture(scope="session")
def sp6() -> IncidenceGeometry:
    return build_sp6_polar()


@pytest.fixture(scope="session")
def thin_f4(f4: CoxeterGroup) -> IncidenceGeometry:
    return thin_f4_geometry(f4)


@pytest.fixture(scope="session")
def octahedron(c3: CoxeterGroup) -> IncidenceGeometry:
    return thin_octahedron(c3)


@pytest.fixture
def synthetic():
    """Builder for small four-typed geometries from ``{element: shadow}`` maps.

    Lines are made incident with every hyperline whose shadow contains theirs.
    """

    def build(points, lines=(), hyperlines=(), planes=()) -> IncidenceGeometry:
        geom = IncidenceGeometry(METASYMPLECTIC_TYPES, name="synthetic")
        for p in points:
            geom.add_element(p, "point")
        for type_name, table in (("line", dict(lines)), ("plane", dict(planes)), ("hyperline", dict(hyperlines))):
            for element, shadow in table.items():
                geom.add_element(element, type_name)
                for p in shadow:
                    geom.add_incidence(p, element)
        for line, shadow in dict(lines).items():
            for h, h_shadow in dict(hyperlines).items():
                if set(shadow) <= set(h_shadow):
                    geom.add_incidence(line, h)
        return geom

    return build
