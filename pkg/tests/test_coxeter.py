"""Tests for Coxeter group enumeration, the word problem and the root oracle."""

import random
from itertools import product

import networkx as nx
import pytest

from metasym.core.errors import (
    CapExceededError,
    InvalidMatrixError,
    InvariantViolationError,
    LetterOutOfRangeError,
)
from metasym.coxeter.braid import braid_class, reduce_word_by_braids
from metasym.coxeter.group import CoxeterGroup, build_group
from metasym.coxeter.roots import f4_root_oracle
from metasym.models.schema import CoxeterMatrix, parse_word

LIFTED = (1, 2, 3, 2, 1, 4, 3, 2, 3, 4, 1, 2, 3, 2, 1, 4, 3, 2, 3, 4)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "rows",
    [
        [[1, 3], [4, 1]],
        [[2, 3], [3, 1]],
        [[1, 1], [1, 1]],
        [[1, 3, 2], [3, 1]],
        [],
        [[1, "x"], ["x", 1]],
        [[1, None], [None, 1]],
        [[1, 3.9], [3.9, 1]],
        [[True, 3], [3, True]],
    ],
)
def test_invalid_matrices(rows):
    with pytest.raises(InvalidMatrixError):
        CoxeterMatrix.from_rows(rows)


def test_matrix_json():
    matrix = CoxeterMatrix.from_json("[[1, 0], [0, 1]]")
    assert matrix.order(1, 2) == 0
    assert not matrix.is_crystallographic
    with pytest.raises(InvalidMatrixError):
        CoxeterMatrix.from_json("[[1, 3], ")


def test_f4_submatrix_is_c3():
    c3 = CoxeterMatrix.c3()
    assert c3.rank == 3
    assert (c3.order(1, 2), c3.order(2, 3), c3.order(1, 3)) == (3, 4, 2)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def test_f4_order(f4: CoxeterGroup):
    assert len(f4) == 1152
    assert f4.backend == "reflection"
    assert f4.verify_relations() == []


def test_root_oracle_agrees(f4: CoxeterGroup):
    oracle = f4_root_oracle()
    assert oracle["roots"] == 48
    assert oracle["order"] == len(f4)
    assert oracle["positive_roots"] == f4.longest_element().length == 24
    assert oracle["pair_orders"] == [list(row) for row in CoxeterMatrix.f4().entries]


@pytest.mark.parametrize(
    "matrix, order",
    [
        (CoxeterMatrix.rank_one(), 2),
        (CoxeterMatrix.dihedral(4), 8),
        (CoxeterMatrix.dihedral(6), 12),
        (CoxeterMatrix.c3(), 48),
    ],
)
def test_small_orders(matrix, order):
    assert len(build_group(matrix)) == order


def test_braid_backend_dihedral():
    group = build_group(CoxeterMatrix.dihedral(5))
    assert group.backend == "braid"
    assert len(group) == 10
    assert group.longest_element().normal_form == (1, 2, 1, 2, 1)
    assert group.verify_relations() == []


def test_infinite_group_hits_cap():
    with pytest.raises(CapExceededError):
        build_group(CoxeterMatrix.dihedral(0), cap=50)


def test_shortlex_ids(f4: CoxeterGroup):
    keys = [(g.length, g.normal_form) for g in f4]
    assert keys == sorted(keys)
    assert f4.identity.normal_form == ()


def test_lengths_match_cayley_graph(f4: CoxeterGroup):
    cayley = nx.Graph()
    for g in f4:
        for h in f4.right_action[g.id]:
            cayley.add_edge(g.id, h)
    distances = nx.single_source_shortest_path_length(cayley, 0)
    assert all(distances[g.id] == g.length for g in f4)


def test_payload_round_trip(c3: CoxeterGroup):
    copy = CoxeterGroup.from_payload(c3.to_payload())
    assert [g.normal_form for g in copy] == [g.normal_form for g in c3]
    assert copy.left_action == c3.left_action


def test_payload_with_broken_tables_is_rejected(c3: CoxeterGroup):
    payload = c3.to_payload()
    row = payload["right_action"][0]
    row[0], row[1] = row[1], row[0]
    with pytest.raises(InvariantViolationError):
        CoxeterGroup.from_payload(payload)


# ---------------------------------------------------------------------------
# Word problem
# ---------------------------------------------------------------------------

def test_reduce_examples(f4: CoxeterGroup):
    assert f4.reduce([1, 1]) == f4.identity
    element = f4.reduce([2, 1, 2])
    assert element.normal_form == (1, 2, 1)
    assert element.length == 3
    assert f4.reduce(parse_word("1,2,3,2,1")).length == 5


def test_is_reduced(f4: CoxeterGroup):
    assert f4.is_reduced([2, 3, 2, 3])
    assert not f4.is_reduced([1, 1])
    assert f4.is_reduced(LIFTED)
    assert f4.is_reduced([])


def test_letter_out_of_range(f4: CoxeterGroup):
    with pytest.raises(LetterOutOfRangeError):
        f4.reduce([1, 5])
    with pytest.raises(LetterOutOfRangeError):
        f4.is_reduced([0])


def test_normal_forms_are_shortlex_least(f4: CoxeterGroup):
    best: dict[int, tuple[int, ...]] = {}
    for length in range(4):
        for word in product(f4.generators, repeat=length):
            element = f4.evaluate(word)
            if f4.length(element) == length and element not in best:
                best[element] = word
    assert all(f4.element(g).normal_form == word for g, word in best.items())


def test_greedy_normal_form(f4: CoxeterGroup):
    assert all(f4.greedy_normal_form(g) == g.normal_form for g in f4)


def test_braid_reduction_agrees_with_tables(f4: CoxeterGroup):
    rng = random.Random(7)
    matrix = CoxeterMatrix.f4()
    for _ in range(40):
        word = tuple(rng.choice(f4.generators) for _ in range(rng.randint(0, 10)))
        assert reduce_word_by_braids(matrix, word) == f4.reduce(word).normal_form


def test_braid_class_of_dihedral_longest():
    assert braid_class((1, 2, 1), CoxeterMatrix.dihedral(3)) == {(1, 2, 1), (2, 1, 2)}


# ---------------------------------------------------------------------------
# Products, inverses, descents
# ---------------------------------------------------------------------------

def test_multiply(f4: CoxeterGroup):
    g = f4.reduce([1, 2, 3, 4])
    assert f4.multiply(f4.identity, g) == g
    assert f4.multiply(g, f4.identity) == g
    assert f4.multiply(f4.generator(1), f4.generator(2)).normal_form == (1, 2)


def test_inverses(f4: CoxeterGroup):
    assert all(f4.multiply(g, f4.inverse(g)) == f4.identity for g in f4)


def test_descents(f4: CoxeterGroup):
    assert f4.descents(f4.identity, "left") == set()
    s3 = f4.generator(3)
    assert f4.descents(s3, "left") == f4.descents(s3, "right") == {3}
    longest = f4.longest_element()
    assert f4.descents(longest, "left") == f4.descents(longest, "right") == {1, 2, 3, 4}


def test_deletion_condition(f4: CoxeterGroup):
    rng = random.Random(11)
    tested = 0
    while tested < 25:
        word = tuple(rng.choice(f4.generators) for _ in range(8))
        if f4.is_reduced(word):
            continue
        tested += 1
        target = f4.evaluate(word)
        assert any(
            f4.evaluate(word[:i] + word[i + 1 : j] + word[j + 1 :]) == target
            for i in range(len(word))
            for j in range(i + 1, len(word))
        )


def test_exchange_condition(f4: CoxeterGroup):
    checked = 0
    for g in f4:
        word = g.normal_form
        for s in f4.generators:
            gs = f4.right_action[g.id][s - 1]
            if f4.length(gs) > g.length:
                continue
            checked += 1
            shorter = [word[:i] + word[i + 1 :] for i in range(len(word))]
            assert any(f4.evaluate(w) == gs for w in shorter), (word, s)
            assert all(f4.is_reduced(w) for w in shorter if f4.evaluate(w) == gs)
    assert checked == len(f4) * f4.rank // 2


@pytest.mark.parametrize(
    "matrix, length",
    [
        (CoxeterMatrix.rank_one(), 1),
        (CoxeterMatrix.dihedral(4), 4),
        (CoxeterMatrix.f4(), 24),
    ],
)
def test_longest_element(matrix, length):
    assert build_group(matrix).longest_element().length == length


def test_relation_orders(f4: CoxeterGroup):
    assert f4.relation_order(2, 3) == 4
    assert f4.relation_order(1, 4) == 2
    assert f4.relation_order(1, 1) == 1
