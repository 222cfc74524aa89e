"""CoxeterGroup — fully enumerated finite Coxeter groups.

Elements are discovered breadth-first in ShortLex order, so element ids,
lengths and normal forms come straight out of the enumeration. Both
multiplication tables by generators are stored; every other operation
folds words through them.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Literal, Sequence

from metasym.core.config import settings
from metasym.core.errors import (
    CapExceededError,
    InvariantViolationError,
    NotUniqueError,
)
from metasym.core.logger import get_logger
from metasym.coxeter.braid import BraidBackend
from metasym.coxeter.roots import ReflectionBackend
from metasym.models.schema import CoxeterMatrix, GroupElement, Word, check_word

logger = get_logger(__name__)

Side = Literal["left", "right"]


class CoxeterGroup:
    """An enumerated Coxeter group with generator multiplication tables.

    ``right_action[g][s - 1]`` is the id of g*s_s and ``left_action[g][s - 1]``
    the id of s_s*g. The identity has id 0.
    """

    def __init__(
        self,
        matrix: CoxeterMatrix,
        normal_forms: Sequence[Word],
        right_action: Sequence[Sequence[int]],
        left_action: Sequence[Sequence[int]],
        backend: str = "reflection",
    ) -> None:
        self.matrix = matrix
        self.backend = backend
        self.elements: list[GroupElement] = [
            GroupElement(id=i, normal_form=tuple(w), length=len(w))
            for i, w in enumerate(normal_forms)
        ]
        self.right_action: list[tuple[int, ...]] = [tuple(row) for row in right_action]
        self.left_action: list[tuple[int, ...]] = [tuple(row) for row in left_action]
        if len({e.normal_form for e in self.elements}) != len(self.elements):
            raise InvariantViolationError("two elements share a normal form")

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def generators(self) -> range:
        return range(1, self.rank + 1)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def element(self, element_id: int) -> GroupElement:
        return self.elements[element_id]

    def length(self, element_id: int) -> int:
        return self.elements[element_id].length

    def generator(self, s: int) -> GroupElement:
        return self.element(self.right_action[0][s - 1])

    # ------------------------------------------------------------------
    # Word problem
    # ------------------------------------------------------------------

    def evaluate(self, word: Iterable[int], start: int = 0) -> int:
        """Fold *word* through the right action table starting at *start*."""
        current = start
        for s in check_word(word, self.rank):
            current = self.right_action[current][s - 1]
        return current

    def reduce(self, word: Iterable[int]) -> GroupElement:
        return self.elements[self.evaluate(word)]

    def is_reduced(self, word: Iterable[int]) -> bool:
        letters = check_word(word, self.rank)
        return self.reduce(letters).length == len(letters)

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.elements[self.evaluate(h.normal_form, start=g.id)]

    def inverse(self, g: GroupElement) -> GroupElement:
        return self.reduce(reversed(g.normal_form))

    def descents(self, g: GroupElement, side: Side = "left") -> set[int]:
        table = self.left_action if side == "left" else self.right_action
        return {
            s for s in self.generators
            if self.elements[table[g.id][s - 1]].length < g.length
        }

    def greedy_normal_form(self, g: GroupElement) -> Word:
        """Extract the least left descent until the identity is reached."""
        word: list[int] = []
        current = g
        while current.length:
            s = min(self.descents(current, "left"))
            word.append(s)
            current = self.elements[self.left_action[current.id][s - 1]]
        return tuple(word)

    def longest_element(self) -> GroupElement:
        top = max(e.length for e in self.elements)
        candidates = [e for e in self.elements if e.length == top]
        if len(candidates) != 1:
            raise NotUniqueError(f"{len(candidates)} elements share the maximal length {top}")
        return candidates[0]

    # ------------------------------------------------------------------
    # Presentation checks
    # ------------------------------------------------------------------

    def relation_order(self, i: int, j: int) -> int:
        """Order of s_i s_j in the enumerated group; 0 if the tables never return to e."""
        current = 0
        for k in range(1, len(self) + 1):
            current = self.right_action[self.right_action[current][i - 1]][j - 1]
            if current == 0:
                return k
        return 0

    def verify_relations(self) -> list[str]:
        """Return a description of every violated involution, length or braid law."""
        failures: list[str] = []
        for g in self.elements:
            for s in self.generators:
                h = self.right_action[g.id][s - 1]
                if self.right_action[h][s - 1] != g.id:
                    failures.append(f"right action of s{s} is not an involution at {g.id}")
                if abs(self.elements[h].length - g.length) != 1:
                    failures.append(f"|l(g s{s}) - l(g)| != 1 at {g.id}")
        for i in self.generators:
            for j in self.generators:
                expected = self.matrix.order(i, j)
                if self.relation_order(i, j) != expected:
                    failures.append(f"order of s{i}s{j} is not {expected}")
        return failures

    # ------------------------------------------------------------------
    # Serialisation
    # ------------------------------------------------------------------

    def to_payload(self) -> dict[str, Any]:
        return {
            "matrix": [list(row) for row in self.matrix.entries],
            "backend": self.backend,
            "normal_forms": [list(e.normal_form) for e in self.elements],
            "right_action": [list(row) for row in self.right_action],
            "left_action": [list(row) for row in self.left_action],
        }

    @classmethod
    def from_payload(cls, payload: dict[str, Any]) -> "CoxeterGroup":
        """Rebuild a group from ``to_payload`` output, re-checking its tables.

        Raises:
            InvariantViolationError: the tables break a relation or disagree
                with the stored normal forms.
        """
        group = cls(
            matrix=CoxeterMatrix.from_rows(payload["matrix"]),
            normal_forms=[tuple(w) for w in payload["normal_forms"]],
            right_action=payload["right_action"],
            left_action=payload["left_action"],
            backend=payload.get("backend", "reflection"),
        )
        failures = group.verify_relations()
        failures += [
            f"normal form of {g.id} evaluates elsewhere"
            for g in group
            if group.evaluate(g.normal_form) != g.id
            or any(group.left_action[g.id][s - 1] != group.evaluate((s, *g.normal_form)) for s in group.generators)
        ]
        if failures:
            raise InvariantViolationError(f"stored group tables are inconsistent: {failures[0]}")
        return group


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def build_group(
    matrix: CoxeterMatrix,
    cap: int | None = None,
    braid_limit: int | None = None,
) -> CoxeterGroup:
    """Enumerate the group presented by *matrix* breadth-first in ShortLex order.

    Args:
        matrix: A validated Coxeter matrix.
        cap: Maximal group order (defaults to ``settings.group_cap``).
        braid_limit: Braid-class bound for the non-crystallographic backend.

    Raises:
        CapExceededError: the enumeration passed *cap* without closing.
    """
    cap = cap or settings.group_cap
    if matrix.is_crystallographic:
        backend: ReflectionBackend | BraidBackend = ReflectionBackend(matrix)
    else:
        backend = BraidBackend(matrix, braid_limit)
    gens = range(1, matrix.rank + 1)

    keys = [backend.identity]
    index = {backend.identity: 0}
    normal_forms: list[Word] = [()]
    right_action: list[tuple[int, ...]] = []

    head = 0
    while head < len(keys):
        key = keys[head]
        row = []
        for s in gens:
            nxt = backend.right(key, s)
            if nxt not in index:
                # Parents are visited in ShortLex order, so the first
                # discovery extends the least reduced word.
                index[nxt] = len(keys)
                keys.append(nxt)
                normal_forms.append(normal_forms[head] + (s,))
                if len(keys) > cap:
                    raise CapExceededError(
                        f"cap exceeded: more than {cap} elements (infinite or too large group)"
                    )
            row.append(index[nxt])
        right_action.append(tuple(row))
        head += 1

    left_action = [tuple(index[backend.left(key, s)] for s in gens) for key in keys]

    group = CoxeterGroup(matrix, normal_forms, right_action, left_action, backend=backend.name)
    failures = group.verify_relations()
    if failures:
        raise InvariantViolationError("; ".join(failures[:5]))
    logger.info(
        "Enumerated Coxeter group of rank %d: order %d (%s backend)",
        matrix.rank,
        len(group),
        backend.name,
    )
    return group
