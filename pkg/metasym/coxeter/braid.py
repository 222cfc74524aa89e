"""Word problem by braid moves.

A word is reduced iff no word reachable from it by braid moves contains two
equal adjacent letters; equal reduced words are connected by braid moves.
This solves the word problem for any Coxeter matrix and backs enumeration
when no integral Cartan matrix exists.
"""

from __future__ import annotations

from collections import deque
from typing import Iterator

from metasym.core.config import settings
from metasym.core.errors import BraidLimitError
from metasym.models.schema import INFINITY, CoxeterMatrix, Word, check_word


def braid_moves(word: Word, matrix: CoxeterMatrix) -> Iterator[Word]:
    """Yield every word obtained by one braid move sts... -> tst... of length m_st."""
    n = len(word)
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a == b:
            continue
        m = matrix.order(a, b)
        if m == INFINITY or i + m > n:
            continue
        if all(word[i + k] == (a if k % 2 == 0 else b) for k in range(m)):
            swapped = tuple(b if k % 2 == 0 else a for k in range(m))
            yield word[:i] + swapped + word[i + m:]


def braid_class(word: Word, matrix: CoxeterMatrix, limit: int | None = None) -> set[Word]:
    limit = limit or settings.braid_limit
    seen = {word}
    queue = deque([word])
    while queue:
        current = queue.popleft()
        for nxt in braid_moves(current, matrix):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise BraidLimitError(f"braid class of {word} exceeds {limit} words")
                queue.append(nxt)
    return seen


def _repeat_at(word: Word) -> int | None:
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return None


def reduce_word_by_braids(matrix: CoxeterMatrix, word: Word, limit: int | None = None) -> Word:
    """Return the ShortLex-least reduced word equal to *word*."""
    current = check_word(word, matrix.rank)
    while True:
        words = braid_class(current, matrix, limit)
        for candidate in sorted(words):
            i = _repeat_at(candidate)
            if i is not None:
                current = candidate[:i] + candidate[i + 2:]
                break
        else:
            return min(words)


class BraidBackend:
    """Element keys are normal forms; products are re-reduced by braid moves."""

    name = "braid"

    def __init__(self, matrix: CoxeterMatrix, limit: int | None = None) -> None:
        self._matrix = matrix
        self._limit = limit
        self.identity: Word = ()

    def right(self, key: Word, s: int) -> Word:
        return reduce_word_by_braids(self._matrix, key + (s,), self._limit)

    def left(self, key: Word, s: int) -> Word:
        return reduce_word_by_braids(self._matrix, (s,) + key, self._limit)
