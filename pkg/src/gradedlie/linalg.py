"""Exact streaming row reduction for sparse integer rows.

Rows are dicts mapping orderable hashable column keys to nonzero ints.
Elimination is fraction-free: cross-multiply and strip the content gcd, so
entries stay integral and modest.  An optional ascending pivot order
restricts which columns may carry pivots; rows are swept once in that
order, which is sound here because every stored row's minimal eligible
column is its pivot, so eliminations only ever introduce eligible columns
to the right of the one being cleared.
"""

from __future__ import annotations

import math
from typing import Hashable, Iterable, Sequence


def strip_content(row: dict) -> dict:
    """Divide a row by the gcd of its entries; sign fixed by first column."""
    if not row:
        return row
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        return {k: v // g for k, v in row.items()}
    return row


class IntEchelon:
    """Incremental echelon basis of a span of sparse integer rows."""

    def __init__(self, pivot_order: Sequence[Hashable] | None = None):
        self.pivot_order = list(pivot_order) if pivot_order is not None else None
        self._eligible = set(self.pivot_order) if self.pivot_order is not None else None
        self.rows: list[dict] = []
        self.pivots: dict[Hashable, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _eliminate(self, row: dict, col) -> None:
        prow = self.rows[self.pivots[col]]
        a, b = row[col], prow[col]
        g = math.gcd(a, b)
        fa, fb = b // g, a // g
        if fa != 1:
            for k in row:
                row[k] *= fa
        for k, v in prow.items():
            nv = row.get(k, 0) - fb * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)

    def reduce(self, row: dict) -> dict:
        """Fully reduce a row against the current pivots (input not mutated)."""
        row = dict(row)
        if self.pivot_order is None:
            while row:
                c = min(row)
                if c not in self.pivots:
                    break
                self._eliminate(row, c)
            return strip_content(row)
        for c in self.pivot_order:
            if c in row and c in self.pivots:
                self._eliminate(row, c)
        return strip_content(row)

    def leading_column(self, row: dict):
        """Minimal eligible column of a row, or None."""
        if self.pivot_order is None:
            return min(row) if row else None
        cands = row.keys() if self._eligible is None else (row.keys() & self._eligible)
        return min(cands) if cands else None

    def insert(self, row: dict):
        """Reduce a row and adjoin it if independent; returns its pivot or None.

        With a pivot order in force, a reduced row must vanish on all
        non-eligible columns whenever it vanishes on eligible ones (the
        eligible coordinates are a faithful projection); this is asserted.
        """
        row = self.reduce(row)
        if not row:
            return None
        col = self.leading_column(row)
        if col is None:
            raise AssertionError(
                "row with no eligible column survived reduction; "
                "the pivot coordinates are not faithful for this row space"
            )
        if row[col] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[col] = len(self.rows)
        self.rows.append(row)
        return col

    def extend(self, rows: Iterable[dict]) -> int:
        added = 0
        for row in rows:
            if self.insert(row) is not None:
                added += 1
        return added

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)
