"""Arithmetic tables for the fields of order 2, 3 and 4.

GF(4) is written {0, 1, w, w^2} = {0, 1, 2, 3} with w^2 = w + 1, so addition
is bitwise XOR of the coefficient pairs.
"""

from __future__ import annotations

import numpy as np

from metasym.core.errors import UnsupportedFieldError

_GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


class FiniteField:
    """Field of order q with numpy addition and multiplication tables."""

    SUPPORTED = (2, 3, 4)

    def __init__(self, q: int) -> None:
        if q not in self.SUPPORTED:
            raise UnsupportedFieldError(f"unsupported q: {q} (expected one of {self.SUPPORTED})")
        self.q = q
        elements = np.arange(q)
        if q == 4:
            self.add = elements[:, None] ^ elements[None, :]
            self.mul = np.array(_GF4_MUL)
        else:
            self.add = (elements[:, None] + elements[None, :]) % q
            self.mul = (elements[:, None] * elements[None, :]) % q

    @property
    def elements(self) -> range:
        return range(self.q)

    def dot(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Bilinear pairing of the last axes of broadcastable vector arrays."""
        products = self.mul[x, y]
        total = products[..., 0]
        for k in range(1, products.shape[-1]):
            total = self.add[total, products[..., k]]
        return total
