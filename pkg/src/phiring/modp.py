"""Exact linear algebra over the prime field F_p.

Everything here is deterministic: pivot columns are always chosen leftmost,
so the pivot-column set of a row collection depends only on its row space,
never on the order rows are fed in.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, -1, p)


class RowReducer:
    """Incremental Gaussian elimination mod p with leftmost pivoting.

    Rows arrive as sparse (column, coefficient) pairs and are reduced against
    the pivot rows accumulated so far (kept as dense numpy vectors, which is
    what makes repeated elimination cheap even after fill-in).
    """

    def __init__(self, ncols: int, p: int):
        if ncols < 0:
            raise ValueError("ncols must be nonnegative")
        self.ncols = ncols
        self.p = p
        self._pivot_rows: list[np.ndarray] = []
        self._pivot_of_col: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    @property
    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(sorted(self._pivot_of_col))

    def add_row(self, items: Iterable[tuple[int, int]]) -> bool:
        """Reduce one row; return True iff it enlarged the row space."""
        p = self.p
        row = np.zeros(self.ncols, dtype=np.int64)
        for col, coeff in items:
            row[col] = (row[col] + coeff) % p
        while True:
            nz = np.flatnonzero(row)
            if nz.size == 0:
                return False
            lead = int(nz[0])
            slot = self._pivot_of_col.get(lead)
            if slot is None:
                inv = inverse_mod(int(row[lead]), p)
                self._pivot_of_col[lead] = len(self._pivot_rows)
                self._pivot_rows.append((row * inv) % p)
                return True
            row = (row - int(row[lead]) * self._pivot_rows[slot]) % p


def rank_of_rows(rows: Iterable[Iterable[tuple[int, int]]], ncols: int, p: int) -> int:
    red = RowReducer(ncols, p)
    for row in rows:
        red.add_row(row)
    return red.rank
