"""Exact root-system arithmetic.

Two independent realisations of Weyl groups live here:

* integral reflection matrices built from a Cartan matrix, used as the
  element-equality backend for crystallographic Coxeter matrices;
* the 48 roots of F4 in standard coordinates with exact half-integers,
  used as an oracle for the group order and the number of positive roots.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from metasym.core.errors import InvalidMatrixError
from metasym.models.schema import CoxeterMatrix

Vector = tuple[Fraction, ...]
Permutation = tuple[int, ...]

# Product a_ij * a_ji of Cartan entries for each crystallographic order.
_CARTAN_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3}


# ---------------------------------------------------------------------------
# Cartan matrices and reflection matrices
# ---------------------------------------------------------------------------

def cartan_matrix(matrix: CoxeterMatrix) -> np.ndarray:
    """Return an integral Cartan matrix whose Weyl group is presented by *matrix*.

    For i < j the entry a_ij is -1 and a_ji carries the rest of the product;
    any orientation yields the same Coxeter group.
    """
    if not matrix.is_crystallographic:
        raise InvalidMatrixError("invalid matrix: no integral Cartan matrix for these orders")
    n = matrix.rank
    cartan = 2 * np.eye(n, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            p = _CARTAN_PRODUCT[matrix.entries[i][j]]
            if p:
                cartan[i, j] = -1
                cartan[j, i] = -p
    return cartan


def reflection_matrices(cartan: np.ndarray) -> list[np.ndarray]:
    """Simple reflections acting on root coordinates: s_i(v) = v - (A[i] . v) e_i."""
    n = cartan.shape[0]
    gens = []
    for i in range(n):
        s = np.eye(n, dtype=np.int64)
        s[i, :] -= cartan[i, :]
        gens.append(s)
    return gens


class ReflectionBackend:
    """Element keys are the byte images of integral matrices on the root lattice."""

    name = "reflection"

    def __init__(self, matrix: CoxeterMatrix) -> None:
        self._gens = reflection_matrices(cartan_matrix(matrix))
        self._mats: dict[bytes, np.ndarray] = {}
        identity = np.eye(matrix.rank, dtype=np.int64)
        self.identity = self._store(identity)

    def _store(self, mat: np.ndarray) -> bytes:
        key = mat.tobytes()
        self._mats.setdefault(key, mat)
        return key

    def right(self, key: bytes, s: int) -> bytes:
        return self._store(self._mats[key] @ self._gens[s - 1])

    def left(self, key: bytes, s: int) -> bytes:
        return self._store(self._gens[s - 1] @ self._mats[key])


# ---------------------------------------------------------------------------
# F4 in standard coordinates
# ---------------------------------------------------------------------------

_HALF = Fraction(1, 2)

# Simple roots in the order matching m12 = 3, m23 = 4, m34 = 3.
F4_SIMPLE_ROOTS: tuple[Vector, ...] = (
    (Fraction(0), Fraction(1), Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1), Fraction(-1)),
    (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
    (_HALF, -_HALF, -_HALF, -_HALF),
)

# Strictly positive on every simple root and on no root orthogonal.
_F4_REGULAR = (Fraction(8), Fraction(3), Fraction(2), Fraction(1))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def f4_roots() -> list[Vector]:
    roots: set[Vector] = set()
    zero = Fraction(0)
    # 24 long roots: +-e_i +- e_j
    for i in range(4):
        for j in range(i + 1, 4):
            for si, sj in product((1, -1), repeat=2):
                v = [zero] * 4
                v[i] = Fraction(si)
                v[j] = Fraction(sj)
                roots.add(tuple(v))
    # 8 short roots +-e_i
    for i in range(4):
        for sign in (1, -1):
            v = [zero] * 4
            v[i] = Fraction(sign)
            roots.add(tuple(v))
    # 16 short roots (+-1/2, ..., +-1/2)
    for signs in product((_HALF, -_HALF), repeat=4):
        roots.add(tuple(signs))
    return sorted(roots)


def reflect(v: Vector, alpha: Vector) -> Vector:
    c = 2 * dot(v, alpha) / dot(alpha, alpha)
    return tuple(a - c * b for a, b in zip(v, alpha))


def reflection_permutation(roots: Sequence[Vector], alpha: Vector) -> Permutation:
    lookup = {root: i for i, root in enumerate(roots)}
    return tuple(lookup[reflect(root, alpha)] for root in roots)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def permutation_order(p: Permutation) -> int:
    identity = tuple(range(len(p)))
    k, current = 1, p
    while current != identity:
        current = compose(current, p)
        k += 1
    return k


def closure_order(generators: Sequence[Permutation]) -> int:
    """Order of the permutation group generated by *generators* (breadth-first closure)."""
    identity = tuple(range(len(generators[0])))
    seen = {identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = compose(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return len(seen)


def f4_root_oracle() -> dict[str, object]:
    """Group order, positive-root count and pairwise orders from the root permutation action."""
    roots = f4_roots()
    gens = [reflection_permutation(roots, alpha) for alpha in F4_SIMPLE_ROOTS]
    orders = [
        [1 if i == j else permutation_order(compose(gens[i], gens[j])) for j in range(4)]
        for i in range(4)
    ]
    return {
        "roots": len(roots),
        "order": closure_order(gens),
        "positive_roots": sum(1 for root in roots if dot(root, _F4_REGULAR) > 0),
        "pair_orders": orders,
    }
