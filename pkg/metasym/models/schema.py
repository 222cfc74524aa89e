"""Pydantic schemas for Coxeter presentations, chambers and incidence geometry.

Defines the core domain entities shared across modules:

    CoxeterMatrix ──presents──▶ CoxeterGroup ──elements──▶ GroupElement
    ChamberSystem ──contains──▶ Gallery | FlagResidue
"""

from __future__ import annotations

import json
from enum import Enum
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from metasym.core.errors import InvalidMatrixError, LetterOutOfRangeError

# A word is a finite sequence of 1-based generator indices.
Word = tuple[int, ...]

# Orders m_ij are positive integers; 0 encodes infinity.
INFINITY = 0

# Orders for which an integral Cartan matrix exists.
_CRYSTALLOGRAPHIC_ORDERS = frozenset({2, 3, 4, 6})


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def parse_word(text: str) -> Word:
    """Parse a comma-separated list of 1-based generator indices."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise LetterOutOfRangeError(f"not a word: {text!r}") from exc


def format_word(word: Iterable[int]) -> str:
    return ",".join(str(letter) for letter in word)


def check_word(word: Iterable[int], rank: int) -> Word:
    """Return *word* as a tuple after checking every letter is in ``[1, rank]``."""
    letters = tuple(word)
    for letter in letters:
        if not 1 <= letter <= rank:
            raise LetterOutOfRangeError(f"letter {letter} out of range [1, {rank}]")
    return letters


def generator_subset(indices: Iterable[int], rank: int) -> frozenset[int]:
    """Validate a set of generator indices against the ambient rank."""
    return frozenset(check_word(indices, rank))


# ---------------------------------------------------------------------------
# Coxeter presentations
# ---------------------------------------------------------------------------

class CoxeterMatrix(BaseModel):
    """Symmetric matrix of orders m_ij with ones on the diagonal."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[tuple[int, ...], ...] = Field(
        ...,
        description="rank x rank table of orders; 0 encodes infinity",
    )

    @model_validator(mode="after")
    def _check_invariants(self) -> "CoxeterMatrix":
        n = len(self.entries)
        if n == 0:
            raise InvalidMatrixError("invalid matrix: rank must be positive")
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise InvalidMatrixError(f"invalid matrix: row {i + 1} has {len(row)} entries, expected {n}")
            if row[i] != 1:
                raise InvalidMatrixError(f"invalid matrix: m[{i + 1}][{i + 1}] must be 1")
            for j, m in enumerate(row):
                if i == j:
                    continue
                if m != self.entries[j][i]:
                    raise InvalidMatrixError(f"invalid matrix: m[{i + 1}][{j + 1}] != m[{j + 1}][{i + 1}]")
                if m != INFINITY and m < 2:
                    raise InvalidMatrixError(f"invalid matrix: m[{i + 1}][{j + 1}] = {m} must be >= 2")
        return self

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "CoxeterMatrix":
        entries = tuple(tuple(row) for row in rows)
        for i, row in enumerate(entries):
            for j, m in enumerate(row):
                if not isinstance(m, int) or isinstance(m, bool):
                    raise InvalidMatrixError(f"invalid matrix: m[{i + 1}][{j + 1}] = {m!r} is not an integer")
        return cls(entries=entries)

    @classmethod
    def from_json(cls, text: str) -> "CoxeterMatrix":
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidMatrixError(f"invalid matrix: {exc}") from exc
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise InvalidMatrixError("invalid matrix: expected a 2D integer array")
        return cls.from_rows(rows)

    @classmethod
    def f4(cls) -> "CoxeterMatrix":
        return cls.from_rows([
            [1, 3, 2, 2],
            [3, 1, 4, 2],
            [2, 4, 1, 3],
            [2, 2, 3, 1],
        ])

    @classmethod
    def c3(cls) -> "CoxeterMatrix":
        """The {1,2,3} parabolic of F4: rank 3 polar spaces."""
        return cls.f4().submatrix([1, 2, 3])

    @classmethod
    def dihedral(cls, m: int) -> "CoxeterMatrix":
        return cls.from_rows([[1, m], [m, 1]])

    @classmethod
    def rank_one(cls) -> "CoxeterMatrix":
        return cls.from_rows([[1]])

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.entries)

    def order(self, i: int, j: int) -> int:
        """Return m_ij for 1-based indices (0 means infinity)."""
        return self.entries[i - 1][j - 1]

    @property
    def is_crystallographic(self) -> bool:
        return all(
            self.entries[i][j] in _CRYSTALLOGRAPHIC_ORDERS
            for i in range(self.rank)
            for j in range(self.rank)
            if i != j
        )

    def submatrix(self, indices: Iterable[int]) -> "CoxeterMatrix":
        """Presentation of the parabolic subgroup on *indices* (renumbered from 1)."""
        idx = sorted(generator_subset(indices, self.rank))
        return CoxeterMatrix.from_rows(
            [[self.order(i, j) for j in idx] for i in idx]
        )

    def to_json(self) -> str:
        return json.dumps([list(row) for row in self.entries])


class GroupElement(BaseModel):
    """An element of an enumerated Coxeter group with its ShortLex normal form."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0, description="Identifier within the enumerated group")
    normal_form: Word = Field(..., description="ShortLex-least reduced word")
    length: int = Field(..., ge=0, description="Number of letters of the normal form")

    @model_validator(mode="after")
    def _length_matches(self) -> "GroupElement":
        if self.length != len(self.normal_form):
            raise ValueError("length must equal the number of letters of the normal form")
        return self

    @property
    def word(self) -> str:
        return format_word(self.normal_form)


# ---------------------------------------------------------------------------
# Parabolic subgroups
# ---------------------------------------------------------------------------

class DoubleCosetRecord(BaseModel):
    """A double coset W_I w W_J stored extensionally."""

    model_config = ConfigDict(frozen=True)

    left: tuple[int, ...]
    right: tuple[int, ...]
    min_rep: GroupElement
    member_ids: frozenset[int]

    @model_validator(mode="after")
    def _rep_is_member(self) -> "DoubleCosetRecord":
        if self.min_rep.id not in self.member_ids:
            raise ValueError("min_rep must belong to the double coset")
        return self

    @property
    def size(self) -> int:
        return len(self.member_ids)


class LemmaClaim(BaseModel):
    """Claim that *word* is the shortest representative of W_left word W_right."""

    left: list[int] = Field(default_factory=list)
    word: list[int]
    right: list[int] = Field(default_factory=list)
    expect_minimal: bool = Field(
        True,
        description="false for a printed word known to be reduced but longer than its coset's minimum",
    )


# ---------------------------------------------------------------------------
# Chamber systems
# ---------------------------------------------------------------------------

class Gallery(BaseModel):
    """A sequence of pairwise adjacent chambers and its type word."""

    model_config = ConfigDict(frozen=True)

    steps: tuple[int, ...]
    word: Word

    @model_validator(mode="after")
    def _word_matches_steps(self) -> "Gallery":
        if not self.steps:
            raise ValueError("a gallery has at least one chamber")
        if len(self.word) != len(self.steps) - 1:
            raise ValueError("word must have one letter per step")
        return self

    @property
    def first(self) -> int:
        return self.steps[0]

    @property
    def last(self) -> int:
        return self.steps[-1]


class FlagResidue(BaseModel):
    """The chambers containing a flag."""

    model_config = ConfigDict(frozen=True)

    flag: frozenset[str]
    chambers: frozenset[int]


# ---------------------------------------------------------------------------
# Mutual positions in a metasymplectic space
# ---------------------------------------------------------------------------

class PointPairRelation(str, Enum):
    """Mutual position of two points."""

    EQUAL = "equal"
    COLLINEAR = "collinear"
    COHYPERLINEAR = "cohyperlinear"
    ALMOST_OPPOSITE = "almost_opposite"
    OPPOSITE = "opposite"


class PointHyperlineRelation(str, Enum):
    """Mutual position of a point and a hyperline."""

    INCIDENT = "incident"
    NEAR = "near"
    FAR = "far"


class HyperlineMeet(str, Enum):
    """Shape of the intersection of two hyperline shadows."""

    EMPTY = "empty"
    POINT = "point"
    PLANE = "plane"
    OTHER = "other"


class EmbeddingKind(str, Enum):
    PROPER = "proper"
    IMPROPER = "improper"
