"""Parabolic subgroups, one-sided and double cosets, minimal representatives.

Double cosets are stored extensionally (member id sets); at the group
orders handled here that is the simplest and strongest representation.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from itertools import combinations
from pathlib import Path
from typing import Iterable

from pydantic import ValidationError

from metasym.core.errors import InputFormatError, InvariantViolationError
from metasym.core.logger import get_logger
from metasym.coxeter.group import CoxeterGroup
from metasym.models.reports import ClaimVerdict, LemmaReport
from metasym.models.schema import (
    DoubleCosetRecord,
    GroupElement,
    LemmaClaim,
    check_word,
    generator_subset,
)

logger = get_logger(__name__)

_A = [1, 2, 3, 2, 1]
_B = [4, 3, 2, 3, 4]
_P = [2, 3, 4]  # stabiliser of a point
_H = [1, 2, 3]  # stabiliser of a hyperline

# The eight double cosets whose printed representative is claimed shortest.
# The last two words are reduced, but both B3 parabolics have longest length 9
# and the largest minimal representative of W_P \ W / W_H has length 10: the
# length-20 words fall back into the cosets of the length-10 claims.
DEFAULT_LEMMA_CLAIMS: list[LemmaClaim] = [
    LemmaClaim(left=_P, word=_A, right=_P),
    LemmaClaim(left=_H, word=_B, right=_H),
    LemmaClaim(left=_H, word=_B + _A, right=_P),
    LemmaClaim(left=_P, word=_A + _B, right=_H),
    LemmaClaim(left=_P, word=_A + _B + _A, right=_P),
    LemmaClaim(left=_H, word=_B + _A + _B, right=_H),
    LemmaClaim(left=_P, word=_A + _B + _A + _B, right=_H, expect_minimal=False),
    LemmaClaim(left=_H, word=_B + _A + _B + _A, right=_P, expect_minimal=False),
]


# ---------------------------------------------------------------------------
# Subgroups and cosets
# ---------------------------------------------------------------------------

def parabolic_elements(group: CoxeterGroup, J: Iterable[int]) -> frozenset[int]:
    """Closure of the identity under right multiplication by generators in *J*."""
    return double_coset(group, (), group.identity, J)


def double_coset(
    group: CoxeterGroup,
    I: Iterable[int],
    g: GroupElement,
    J: Iterable[int],
) -> frozenset[int]:
    """Member ids of W_I g W_J."""
    left = sorted(generator_subset(I, group.rank))
    right = sorted(generator_subset(J, group.rank))
    seen = {g.id}
    queue = deque([g.id])
    while queue:
        x = queue.popleft()
        for s in left:
            y = group.left_action[x][s - 1]
            if y not in seen:
                seen.add(y)
                queue.append(y)
        for t in right:
            y = group.right_action[x][t - 1]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def right_coset_labels(group: CoxeterGroup, J: Iterable[int]) -> list[int]:
    """Label every element by the index of its coset g W_J.

    Cosets are numbered in order of their least element id.
    """
    labels = [-1] * len(group)
    count = 0
    for g in group:
        if labels[g.id] >= 0:
            continue
        for member in double_coset(group, (), g, J):
            labels[member] = count
        count += 1
    return labels


def min_double_coset_rep(
    group: CoxeterGroup,
    I: Iterable[int],
    g: GroupElement,
    J: Iterable[int],
) -> GroupElement:
    """Greedy descent to the unique shortest element of W_I g W_J."""
    left = sorted(generator_subset(I, group.rank))
    right = sorted(generator_subset(J, group.rank))
    current = g.id
    while True:
        length = group.length(current)
        step = next(
            (
                y
                for y in (
                    *(group.left_action[current][s - 1] for s in left),
                    *(group.right_action[current][t - 1] for t in right),
                )
                if group.length(y) < length
            ),
            None,
        )
        if step is None:
            return group.element(current)
        current = step


def min_right_coset_rep(group: CoxeterGroup, g: GroupElement, J: Iterable[int]) -> GroupElement:
    """Shortest element of g W_J."""
    return min_double_coset_rep(group, (), g, J)


def min_left_coset_rep(group: CoxeterGroup, I: Iterable[int], g: GroupElement) -> GroupElement:
    """Shortest element of W_I g."""
    return min_double_coset_rep(group, I, g, ())


def brute_force_min(group: CoxeterGroup, members: Iterable[int]) -> tuple[GroupElement, bool]:
    """Scan *members* for the ShortLex-least element; report whether its length is unique."""
    elements = sorted((group.element(m) for m in members), key=lambda e: (e.length, e.normal_form))
    best = elements[0]
    unique = len(elements) == 1 or elements[1].length > best.length
    return best, unique


def enumerate_double_cosets(
    group: CoxeterGroup,
    I: Iterable[int],
    J: Iterable[int],
) -> list[DoubleCosetRecord]:
    """Partition the group into double cosets W_I w W_J with their minimal representatives."""
    left = tuple(sorted(generator_subset(I, group.rank)))
    right = tuple(sorted(generator_subset(J, group.rank)))
    assigned: set[int] = set()
    records: list[DoubleCosetRecord] = []
    for g in group:
        if g.id in assigned:
            continue
        members = double_coset(group, left, g, right)
        assigned |= members
        rep, unique = brute_force_min(group, members)
        if not unique:
            raise InvariantViolationError(
                f"double coset of {rep.word or 'e'} has several elements of minimal length"
            )
        records.append(DoubleCosetRecord(left=left, right=right, min_rep=rep, member_ids=members))
    records.sort(key=lambda r: (r.min_rep.length, r.min_rep.normal_form))
    logger.info(
        "W_%s \\ W / W_%s: %d double coset(s)",
        set(left) or "{}",
        set(right) or "{}",
        len(records),
    )
    return records


# ---------------------------------------------------------------------------
# Claim verification
# ---------------------------------------------------------------------------

def load_claims(path: str | Path) -> list[LemmaClaim]:
    """Read a JSON list of ``{left, word, right}`` objects."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputFormatError(f"cannot read file: {exc.strerror}", path) from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(exc.msg, path, exc.lineno) from exc
    if not isinstance(data, list):
        raise InputFormatError("expected a JSON list of claims", path)
    claims = []
    for k, item in enumerate(data):
        try:
            claims.append(LemmaClaim.model_validate(item))
        except ValidationError as exc:
            raise InputFormatError(f"claim {k}: {exc.errors()[0]['msg']}", path) from exc
    return claims


def verify_lemma_reps(group: CoxeterGroup, claims: list[LemmaClaim] | None = None) -> LemmaReport:
    """Check each claim by exhaustive scan of its double coset.

    For every claim: (a) the word is reduced, (b) whether its element is the
    unique shortest element of the coset, found by scanning all members
    rather than by greedy descent. A claim passes when (a) holds and (b)
    matches ``expect_minimal``. Claims sharing a parabolic pair are also
    compared for landing in the same double coset.
    """
    claims = DEFAULT_LEMMA_CLAIMS if claims is None else claims
    verdicts: list[ClaimVerdict] = []
    cosets_by_pair: dict[tuple[frozenset[int], frozenset[int]], list[tuple[int, frozenset[int]]]] = defaultdict(list)

    for k, claim in enumerate(claims):
        I = generator_subset(claim.left, group.rank)
        J = generator_subset(claim.right, group.rank)
        word = check_word(claim.word, group.rank)
        element = group.reduce(word)
        members = double_coset(group, I, element, J)
        rep, unique = brute_force_min(group, members)
        greedy = min_double_coset_rep(group, I, element, J)
        cosets_by_pair[(I, J)].append((k, members))
        verdict = ClaimVerdict(
            claim=claim,
            reduced=element.length == len(word),
            is_min_rep=unique and rep.id == element.id,
            word_length=len(word),
            min_rep_word=rep.normal_form,
            min_rep_unique=unique,
            greedy_agrees=greedy.id == rep.id,
            coset_size=len(members),
        )
        if not verdict.passed:
            logger.warning("Claim %s failed: reduced=%s, min_rep=%s", claim.word, verdict.reduced, rep.word)
        elif not verdict.is_min_rep:
            logger.info("Claim %s is reduced but not minimal: min_rep=%s", claim.word, rep.word)
        verdicts.append(verdict)

    distinct = True
    for cosets in cosets_by_pair.values():
        for (a, members_a), (b, members_b) in combinations(cosets, 2):
            if members_a == members_b:
                distinct = False
                verdicts[a].same_coset_as.append(b)
                verdicts[b].same_coset_as.append(a)
    report = LemmaReport(verdicts=verdicts, distinct_cosets=distinct)
    logger.info("Verified %d double-coset claim(s): passed=%s", len(verdicts), report.passed)
    return report
