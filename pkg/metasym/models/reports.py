"""Pydantic report schemas emitted by checkers and the CLI.

Every checker returns one of these records instead of raising on a failed
check; the CLI serialises them with ``model_dump_json``.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field

from metasym.models.schema import (
    EmbeddingKind,
    HyperlineMeet,
    LemmaClaim,
    PointHyperlineRelation,
    PointPairRelation,
    Word,
)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DIAGNOSTIC = "diagnostic"


# ---------------------------------------------------------------------------
# parabolic
# ---------------------------------------------------------------------------

class ClaimVerdict(BaseModel):
    """Outcome of one double-coset minimality claim."""

    claim: LemmaClaim
    reduced: bool = Field(..., description="(a) the claimed word is reduced")
    is_min_rep: bool = Field(..., description="(b) it equals the coset's unique minimum")
    word_length: int
    min_rep_word: Word
    min_rep_unique: bool
    greedy_agrees: bool
    coset_size: int
    same_coset_as: list[int] = Field(
        default_factory=list,
        description="indices of other claims whose word lies in the same double coset",
    )

    @property
    def passed(self) -> bool:
        return self.reduced and self.is_min_rep == self.claim.expect_minimal


class LemmaReport(BaseModel):
    verdicts: list[ClaimVerdict]
    distinct_cosets: bool = Field(
        ...,
        description="claims sharing a parabolic pair land in pairwise distinct cosets",
    )

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def minimal_in_distinct_cosets(self) -> bool:
        """No two claims that are coset minima share a double coset."""
        return all(
            not self.verdicts[j].is_min_rep
            for v in self.verdicts
            if v.is_min_rep
            for j in v.same_coset_as
        )


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

class NgonReport(BaseModel):
    """Incidence-graph verdict for a rank 2 geometry."""

    n: int
    passed: bool
    counts: dict[str, int]
    connected: bool
    girth: Optional[int] = None
    diameter: Optional[int] = None
    min_degree: dict[str, int] = Field(default_factory=dict)
    max_degree: dict[str, int] = Field(default_factory=dict)
    thick: Optional[bool] = None
    thin: Optional[bool] = None
    failures: list[str] = Field(default_factory=list)


class AxiomVerdict(BaseModel):
    name: str
    passed: bool
    checked: int
    witness: Optional[list[str]] = None
    note: str = ""


class MetasymplecticReport(BaseModel):
    thin_mode: bool
    axioms: list[AxiomVerdict]

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.axioms)

    def axiom(self, name: str) -> AxiomVerdict:
        return next(a for a in self.axioms if a.name == name)


class Classification(BaseModel):
    """A mutual-position verdict with its witness and uniqueness diagnostics."""

    relation: PointPairRelation | PointHyperlineRelation | HyperlineMeet
    witness: list[str] = Field(default_factory=list)
    diagnostics: list[str] = Field(default_factory=list)


class OvViolation(BaseModel):
    hyperline: str
    points: tuple[str, str]
    line: str


class OvReport(BaseModel):
    passed: bool
    checked_pairs: int
    violations: list[OvViolation] = Field(default_factory=list)


class EmbeddingReport(BaseModel):
    kind: EmbeddingKind
    line_map: dict[str, str] = Field(default_factory=dict)
    missing_global_line: list[str] = Field(
        default_factory=list,
        description="points where pairwise line sharing holds but no common line exists",
    )
    witness: Optional[list[str]] = None


class CliqueResult(BaseModel):
    contained: bool
    plane: Optional[str] = None


class BuildingBlockReport(BaseModel):
    passed: bool
    points: int
    opposite_pairs: int
    chambers_per_point: list[int]
    checks: int
    weyl_words: list[Word]
    distances: dict[int, int] = Field(
        default_factory=dict,
        description="histogram of distances over opposite pairs",
    )
    non_opposite_max_distance: Optional[int] = None
    failures: list[str] = Field(default_factory=list)


class AlternatingReport(BaseModel):
    passed: bool
    blocks: int
    words: list[Word]
    lengths: list[int]
    reduced: list[bool]


# ---------------------------------------------------------------------------
# cli
# ---------------------------------------------------------------------------

class CheckRecord(BaseModel):
    name: str
    verdict: Verdict
    gated: bool = True
    summary: dict[str, Any] = Field(default_factory=dict)
    witnesses: list[Any] = Field(default_factory=list)


class VerificationReport(BaseModel):
    command: str
    verdict: Verdict
    details: list[CheckRecord] = Field(default_factory=list)
    wall_time: float = 0.0

    @classmethod
    def from_checks(cls, command: str, details: list[CheckRecord], wall_time: float = 0.0) -> "VerificationReport":
        gated = [d for d in details if d.gated]
        if any(d.verdict == Verdict.FAIL for d in gated):
            verdict = Verdict.FAIL
        elif gated:
            verdict = Verdict.PASS
        else:
            verdict = Verdict.DIAGNOSTIC
        return cls(command=command, verdict=verdict, details=details, wall_time=wall_time)

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict == Verdict.FAIL else 0


class CommandRequest(BaseModel):
    subcommand: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    input_paths: list[str] = Field(default_factory=list)
