"""Tests for chamber systems: galleries, distances, projections and convexity."""

import random
from itertools import accumulate

import networkx as nx
import pytest

from metasym.chambers.complexes import apartments, coxeter_complex, flag_complex, maximal_flags
from metasym.chambers.system import ChamberSystem
from metasym.core.errors import (
    InvalidFlagError,
    InvariantViolationError,
    NonBuildingError,
    NotAGalleryError,
    WrongRankError,
)
from metasym.coxeter.group import CoxeterGroup, build_group
from metasym.geometry.constructions import build_projective_plane, ordinary_polygon
from metasym.geometry.incidence import IncidenceGeometry
from metasym.models.schema import CoxeterMatrix

LIFTED = (1, 2, 3, 2, 1, 4, 3, 2, 3, 4, 1, 2, 3, 2, 1, 4, 3, 2, 3, 4)

# In W(2): pt0001 and pt0100 are collinear on ln of {1, 4, 5}; pt0001 and pt0010 are opposite.
P, COLLINEAR, OPPOSITE = "pt0001", "pt0100", "pt0010"


def walk(group: CoxeterGroup, word, start: int = 0) -> list[int]:
    """Chambers visited from *start* along *word* in the Coxeter complex."""
    return list(accumulate(word, lambda c, s: group.right_action[c][s - 1], initial=start))


# ---------------------------------------------------------------------------
# Coxeter complexes
# ---------------------------------------------------------------------------

def test_f4_complex_shape(f4_complex: ChamberSystem):
    assert len(f4_complex) == 1152
    assert f4_complex.types == (1, 2, 3, 4)
    assert f4_complex.panel_sizes() == {1: {2}, 2: {2}, 3: {2}, 4: {2}}
    assert all(len(f4_complex.flag(c)) == 4 for c in f4_complex.chambers)


def test_rank_one_complex():
    chambers = coxeter_complex(build_group(CoxeterMatrix.rank_one()))
    assert len(chambers) == 2
    assert chambers.panels == {1: [frozenset({0, 1})]}


def test_dihedral_complex_is_octagon(quadrangle_group: CoxeterGroup):
    chambers = coxeter_complex(quadrangle_group)
    assert nx.is_isomorphic(chambers.graph, nx.cycle_graph(8))
    assert chambers.to_panel_text().count("panel ") == 8


def test_complex_type_names(c3: CoxeterGroup):
    chambers = coxeter_complex(c3, ["point", "line", "plane"])
    assert {e.split("-")[0] for e in chambers.flag(0)} == {"point", "line", "plane"}
    with pytest.raises(WrongRankError):
        coxeter_complex(c3, ["point", "line"])


def test_mixed_panel_is_rejected():
    flags = [frozenset({"a", "x"}), frozenset({"b", "y"})]
    with pytest.raises(InvariantViolationError):
        ChamberSystem(flags, {"a": 1, "b": 1, "x": 2, "y": 2}, {1: [[0, 1]], 2: [[0], [1]]})


# ---------------------------------------------------------------------------
# Galleries and distances
# ---------------------------------------------------------------------------

def test_gallery_words(f4: CoxeterGroup, f4_complex: ChamberSystem):
    assert f4_complex.gallery_word([0]) == ()
    assert f4_complex.gallery_word(walk(f4, [1])) == (1,)
    assert f4_complex.gallery_word(walk(f4, [1, 2, 3, 2, 1])) == (1, 2, 3, 2, 1)


def test_not_a_gallery(f4: CoxeterGroup, f4_complex: ChamberSystem):
    far = f4.reduce([1, 2]).id
    with pytest.raises(NotAGalleryError):
        f4_complex.gallery([0, far])
    with pytest.raises(NotAGalleryError):
        f4_complex.gallery([])


def test_gallery_distance(f4: CoxeterGroup, f4_complex: ChamberSystem):
    s1 = f4.generator(1).id
    assert f4_complex.gallery_distance(5, 5) == 0
    assert f4_complex.gallery_distance(0, s1) == 1
    assert f4_complex.gallery_distance(0, f4.longest_element().id) == 24


def test_minimal_galleries(f4: CoxeterGroup, f4_complex: ChamberSystem):
    s1 = f4.generator(1).id
    assert f4_complex.is_minimal_gallery([0])
    assert not f4_complex.is_minimal_gallery([0, s1, 0])
    lifted = walk(f4, LIFTED)
    assert len(lifted) == 21
    assert f4_complex.is_minimal_gallery(lifted)


def test_random_galleries_minimal_iff_reduced(f4: CoxeterGroup, f4_complex: ChamberSystem):
    rng = random.Random(3)
    for _ in range(200):
        word = [rng.choice(f4.generators) for _ in range(rng.randint(1, 12))]
        start = rng.randrange(len(f4))
        gallery = f4_complex.gallery(walk(f4, word, start))
        assert f4_complex.is_minimal_gallery(gallery) == f4.is_reduced(word)


def test_weyl_distance_is_quotient(f4: CoxeterGroup, f4_complex: ChamberSystem):
    rng = random.Random(5)
    assert f4_complex.weyl_distance(f4, 9, 9) == f4.identity
    for _ in range(30):
        g, h = f4.element(rng.randrange(len(f4))), f4.element(rng.randrange(len(f4)))
        expected = f4.multiply(f4.inverse(g), h)
        assert f4_complex.weyl_distance(f4, g.id, h.id) == expected


def test_weyl_distance_in_octagon(quadrangle_group: CoxeterGroup):
    chambers = coxeter_complex(quadrangle_group)
    opposite = quadrangle_group.longest_element()
    assert chambers.weyl_distance(quadrangle_group, 0, opposite.id) == opposite
    assert opposite.length == 4


def test_non_building_detected(quadrangle_group: CoxeterGroup):
    hexagon = flag_complex(ordinary_polygon(3))
    assert len(hexagon) == 6
    with pytest.raises(NonBuildingError):
        hexagon.weyl_distances(quadrangle_group, [0])


def test_weyl_distance_rank_check(quadrangle_group: CoxeterGroup, sp6: IncidenceGeometry):
    with pytest.raises(WrongRankError):
        flag_complex(sp6).weyl_distances(quadrangle_group, [0])


# ---------------------------------------------------------------------------
# Flag complexes
# ---------------------------------------------------------------------------

def test_w2_flag_complex(w2_chambers: ChamberSystem):
    assert len(w2_chambers) == 45
    assert w2_chambers.panel_sizes() == {1: {3}, 2: {3}}
    assert len(w2_chambers.element_chambers(P)) == 3


def test_sp6_flag_complex(sp6: IncidenceGeometry):
    chambers = flag_complex(sp6)
    assert len(chambers) == 2835
    assert chambers.panel_sizes() == {1: {3}, 2: {3}, 3: {3}}
    assert len(maximal_flags(sp6)) == 2835


def test_octahedron_flag_complex(octahedron: IncidenceGeometry):
    chambers = flag_complex(octahedron)
    assert len(chambers) == 48
    assert chambers.panel_sizes() == {1: {2}, 2: {2}, 3: {2}}


def test_residue_of_flags(w2_chambers: ChamberSystem):
    assert len(w2_chambers.residue([]).chambers) == 45
    with pytest.raises(InvalidFlagError):
        w2_chambers.residue(["nowhere"])
    with pytest.raises(InvalidFlagError):
        w2_chambers.residue([P, OPPOSITE])
    assert not w2_chambers.is_flag([P, OPPOSITE])


# ---------------------------------------------------------------------------
# Projection and convexity
# ---------------------------------------------------------------------------

def test_projection_onto_opposite_point(w2_chambers: ChamberSystem):
    image = w2_chambers.projection(w2_chambers.residue({P}), w2_chambers.residue({OPPOSITE}))
    assert image == {OPPOSITE}


def test_projection_onto_collinear_point(w2: IncidenceGeometry, w2_chambers: ChamberSystem):
    image = w2_chambers.projection(w2_chambers.residue({P}), w2_chambers.residue({COLLINEAR}))
    (line,) = w2.common_lines(P, COLLINEAR)
    assert image == {COLLINEAR, line}


def test_projection_idempotent(w2_chambers: ChamberSystem):
    a = w2_chambers.residue({P})
    assert w2_chambers.projection(a, a) == a.flag
    chamber = w2_chambers.residue(w2_chambers.flag(7))
    assert w2_chambers.projection(a, chamber) == chamber.flag


def test_projection_in_ordinary_quadrangle():
    # p0 L0 p1 L1 p2 L2 p3 L3: the flag {p} is p0, r is p2 and the line qr is L1.
    chambers = flag_complex(ordinary_polygon(4))
    p = chambers.residue({"p0"})
    assert chambers.projection(p, chambers.residue({"p2"})) == {"p2"}
    assert chambers.projection(p, chambers.residue({"L1"})) == {"L1", "p1"}


def all_residues(chambers: ChamberSystem, geom: IncidenceGeometry) -> list:
    elements = [chambers.residue({e}) for e in geom.elements()]
    return elements + [chambers.residue(chambers.flag(c)) for c in chambers.chambers]


@pytest.mark.parametrize("q", [2, 3])
def test_projections_in_projective_planes_are_flags(q: int):
    plane = build_projective_plane(q)
    chambers = flag_complex(plane)
    residues = all_residues(chambers, plane)
    for a in residues:
        for b in residues:
            image = chambers.projection(a, b)
            assert b.flag <= image
            assert chambers.is_flag(image)


def test_projection_onto_its_own_residue(w2: IncidenceGeometry, w2_chambers: ChamberSystem):
    residues = all_residues(w2_chambers, w2)
    for a in residues:
        for b in residues:
            image = w2_chambers.projection(a, b)
            assert w2_chambers.is_flag(image)
            assert w2_chambers.projection(a, w2_chambers.residue(image)) == image


def test_convexity(w2: IncidenceGeometry, w2_chambers: ChamberSystem):
    assert w2_chambers.is_convex(w2.elements())
    assert w2_chambers.is_convex([P, OPPOSITE])
    assert w2_chambers.is_convex([P])


def test_collinear_pair_without_line_is_not_convex(w2: IncidenceGeometry, w2_chambers: ChamberSystem):
    witness = w2_chambers.convexity_witness([P, COLLINEAR])
    assert witness is not None
    _, _, image = witness
    (line,) = w2.common_lines(P, COLLINEAR)
    assert line in image


def test_apartments_are_convex(w2: IncidenceGeometry, w2_chambers: ChamberSystem):
    found = apartments(w2)
    assert len(found) == 90
    assert all(len(cycle) == 8 for cycle in found)
    first = found[0]
    assert len(w2_chambers.flags_within(first)) == 16
    assert all(w2_chambers.is_convex(cycle) for cycle in found)


def test_apartments_need_rank_two(sp6: IncidenceGeometry):
    with pytest.raises(WrongRankError):
        apartments(sp6)


def test_distances_from(w2_chambers: ChamberSystem):
    sources = w2_chambers.residue({P}).chambers
    distances = w2_chambers.distances_from(sources)
    assert len(distances) == 45
    assert max(distances.values()) == 3
    assert all(distances[c] == 0 for c in sources)
