"""Fraction-free row echelon form over the integers.

Rows are sparse ``{column: int}`` dicts. Reducing a row against a pivot row
uses the cross-multiplication ``p * row - r * pivot_row`` followed by division
by the content gcd, so entries stay integral and no rational pivoting occurs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional


def integer_row(coeffs: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for c in coeffs.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    return {j: int(c * den) for j, c in coeffs.items() if c}


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


class RowEchelon:
    """Incrementally built echelon basis; ``rank`` is the number of pivots."""

    def __init__(self, rows: Iterable[Mapping[int, int]] = ()):
        self._pivots: dict[int, dict[int, int]] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def copy(self) -> "RowEchelon":
        other = RowEchelon()
        other._pivots = dict(self._pivots)
        return other

    def reduce(self, row: Mapping[int, int]) -> dict[int, int]:
        """Residual of ``row`` after elimination against the current pivots."""
        cur = _primitive({j: v for j, v in row.items() if v})
        pivots = self._pivots
        while cur:
            col = min(cur)
            prow = pivots.get(col)
            if prow is None:
                return cur
            p, r = prow[col], cur[col]
            g = gcd(p, r)
            p, r = p // g, r // g
            nxt = {j: p * v for j, v in cur.items()}
            for j, v in prow.items():
                s = nxt.get(j, 0) - r * v
                if s:
                    nxt[j] = s
                else:
                    nxt.pop(j, None)
            cur = _primitive(nxt)
        return cur

    def add(self, row: Mapping[int, int]) -> bool:
        """Insert ``row``; returns True when it raised the rank."""
        res = self.reduce(row)
        if not res:
            return False
        self._pivots[min(res)] = res
        return True

    def contains(self, row: Mapping[int, int]) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping[int, int]], limit: Optional[int] = None) -> int:
    """Exact rank; stops early once ``limit`` (e.g. the column count) is reached."""
    ech = RowEchelon()
    for r in rows:
        ech.add(r)
        if limit is not None and ech.rank >= limit:
            break
    return ech.rank
