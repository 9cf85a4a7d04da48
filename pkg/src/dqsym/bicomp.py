"""Bicompositions and generalized bicompositions.

A generalized bicomposition is a 2 x k array of naturals. It is stored as a
tuple of ``(top, bottom)`` column pairs with trailing ``(0, 0)`` columns
stripped, so the same object serves as a basis index and as the exponent
array of the monomial ``x1^t1 y1^b1 x2^t2 y2^b2 ...``.

Python's tuple ordering on these column tuples coincides with the
interleaved reading ``(t1, b1, t2, b2, ...)`` padded with zeros, which is the
lexicographic order used throughout the package.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

Column = tuple[int, int]
ZERO_COL: Column = (0, 0)


class GenBicomp(tuple):
    """A canonical generalized bicomposition (tuple of columns)."""

    __slots__ = ()

    def __new__(cls, cols: Iterable[Sequence[int]] = ()):
        checked = []
        for col in cols:
            if len(col) != 2:
                raise ValueError(f"column {col!r} is not a (top, bottom) pair")
            t, b = int(col[0]), int(col[1])
            if t < 0 or b < 0:
                raise ValueError(f"negative entry in column {col!r}")
            checked.append((t, b))
        return _canon(checked)

    @classmethod
    def from_rows(cls, top: Sequence[int], bottom: Sequence[int]) -> "GenBicomp":
        if len(top) != len(bottom):
            raise ValueError(f"ragged rows: {len(top)} top entries vs {len(bottom)} bottom entries")
        return cls(zip(top, bottom))

    @classmethod
    def parse(cls, text: str) -> "GenBicomp":
        """Parse ``"t1,...,tk;b1,...,bk"``; ``""`` and ``"0;0"`` give the zero bicomposition."""
        text = text.strip()
        if not text:
            return ZERO
        if text.count(";") != 1:
            raise ValueError(f"malformed bicomposition {text!r}: expected exactly one ';'")
        top_s, bottom_s = text.split(";")

        def row(s: str) -> list[int]:
            s = s.strip()
            if not s:
                return []
            try:
                vals = [int(tok) for tok in s.split(",")]
            except ValueError:
                raise ValueError(f"malformed bicomposition {text!r}: non-integer entry") from None
            if any(v < 0 for v in vals):
                raise ValueError(f"malformed bicomposition {text!r}: negative entry")
            return vals

        return cls.from_rows(row(top_s), row(bottom_s))

    @property
    def top(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self)

    @property
    def bottom(self) -> tuple[int, ...]:
        return tuple(c[1] for c in self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(t + b for t, b in self)

    @property
    def bidegree(self) -> tuple[int, int]:
        return (sum(c[0] for c in self), sum(c[1] for c in self))

    @property
    def is_bicomposition(self) -> bool:
        return ZERO_COL not in self

    def column(self, i: int) -> Column:
        """Column ``i`` (1-based); positions past the length read as ``(0, 0)``."""
        if i < 1:
            raise IndexError(i)
        return self[i - 1] if i <= len(self) else ZERO_COL

    def padded(self, k: int) -> tuple[Column, ...]:
        return tuple(self) + (ZERO_COL,) * max(0, k - len(self))

    def __str__(self) -> str:
        if not self:
            return "0;0"
        return ",".join(str(t) for t, _ in self) + ";" + ",".join(str(b) for _, b in self)

    def __repr__(self) -> str:
        return f"GenBicomp({str(self)!r})"

    def __reduce__(self):
        return (GenBicomp, (tuple(self),))


def _canon(cols: Sequence[Column]) -> GenBicomp:
    """Strip trailing zero columns without re-validating entries."""
    k = len(cols)
    while k and cols[k - 1] == ZERO_COL:
        k -= 1
    return tuple.__new__(GenBicomp, cols[:k])


ZERO = _canon(())


def gb(text: str) -> GenBicomp:
    """Shorthand for :meth:`GenBicomp.parse`."""
    return GenBicomp.parse(text)


class VarRef(NamedTuple):
    """A single variable ``x_i`` or ``y_i`` (1-based index)."""

    axis: str
    index: int

    @classmethod
    def make(cls, axis: str, index: int) -> "VarRef":
        if axis not in ("x", "y"):
            raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
        if int(index) < 1:
            raise ValueError(f"variable index must be >= 1, got {index}")
        return cls(axis, int(index))

    @classmethod
    def parse(cls, text: str) -> "VarRef":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise ValueError(f"malformed variable {text!r}: expected e.g. 'x1' or 'y3'")
        return cls.make(text[0], int(text[1:]))

    def __str__(self) -> str:
        return f"{self.axis}{self.index}"


def x(i: int) -> VarRef:
    return VarRef.make("x", i)


def y(i: int) -> VarRef:
    return VarRef.make("y", i)


def split_last_zero(e: GenBicomp) -> Optional[tuple[tuple[Column, ...], GenBicomp]]:
    """Split ``e`` around its last zero column as ``prefix + (0,0) + tail``.

    Returns ``None`` when ``e`` is a bicomposition. The prefix is returned
    verbatim as a tuple of columns, because trailing zero columns in it are
    positional and must survive rejoining.
    """
    for j in range(len(e) - 1, -1, -1):
        if e[j] == ZERO_COL:
            return tuple(e[:j]), tuple.__new__(GenBicomp, e[j + 1:])
    return None


def join(prefix: Sequence[Column], tail: Sequence[Column]) -> GenBicomp:
    return _canon(tuple(prefix) + tuple(tail))


def reverse_in(e: GenBicomp, n: int) -> GenBicomp:
    if len(e) > n:
        raise ValueError(f"length {len(e)} exceeds n={n}")
    return _canon(e.padded(n)[::-1])


@lru_cache(maxsize=None)
def refinements(alpha: GenBicomp) -> frozenset:
    """All bicompositions that merge back to ``alpha`` by allowed column merges.

    A column ``(a, b)`` splits into nonzero ``(a1, b1), (a2, b2)`` whenever
    ``b1 == 0`` or ``a2 == 0``; ``alpha`` itself is included.
    """
    if not alpha.is_bicomposition:
        raise ValueError(f"{alpha} is not a bicomposition")
    seen = {alpha}
    frontier = [alpha]
    while frontier:
        cur = frontier.pop()
        for j, (a, b) in enumerate(cur):
            for left, right in _splits(a, b):
                nxt = tuple.__new__(GenBicomp, cur[:j] + (left, right) + cur[j + 1:])
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return frozenset(seen)


def _splits(a: int, b: int) -> Iterable[tuple[Column, Column]]:
    out = set()
    # b1 == 0: left is (a1, 0) with a1 >= 1
    for a1 in range(1, a + 1):
        right = (a - a1, b)
        if right != ZERO_COL:
            out.add(((a1, 0), right))
    # a2 == 0: right is (0, b2) with b2 >= 1
    for b2 in range(1, b + 1):
        left = (a, b - b2)
        if left != ZERO_COL:
            out.add((left, (0, b2)))
    return out


def can_merge(left: Column, right: Column) -> bool:
    return left[1] == 0 or right[0] == 0


def in_B_n(e: GenBicomp, n: int) -> bool:
    if len(e) > n:
        return False
    total = 0
    for k in range(1, n + 1):
        t, b = e.column(k)
        total += t + b
        if total >= k:
            return False
    return True


def in_A_n(e: GenBicomp, n: int) -> bool:
    return in_B_n(reverse_in(e, n), n)


def _weak_compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        comp = []
        for bar in bars:
            comp.append(bar - prev - 1)
            prev = bar
        comp.append(total + parts - 1 - prev - 1)
        yield tuple(comp)


@lru_cache(maxsize=None)
def _enumerate(a: int, b: int, max_len: int, bicompositions_only: bool) -> tuple[GenBicomp, ...]:
    out = []
    tops = list(_weak_compositions(a, max_len))
    bottoms = list(_weak_compositions(b, max_len))
    for t in tops:
        for bt in bottoms:
            g = _canon(tuple(zip(t, bt)))
            if bicompositions_only and not g.is_bicomposition:
                continue
            out.append(g)
    out.sort(reverse=True)
    return tuple(out)


def enumerate_gb(a: int, b: int, max_len: int, bicompositions_only: bool = False) -> list[GenBicomp]:
    """Canonical generalized bicompositions of bidegree ``(a, b)`` and length ``<= max_len``.

    Output is in descending lex order.
    """
    if a < 0 or b < 0 or max_len < 0:
        raise ValueError("bidegree and max_len must be non-negative")
    return list(_enumerate(a, b, max_len, bicompositions_only))


def enumerate_by_size(size: int, max_len: int, bicompositions_only: bool = False) -> list[GenBicomp]:
    """All indices of total size ``size`` and length ``<= max_len`` (every bidegree)."""
    out = []
    for a in range(size + 1):
        out.extend(_enumerate(a, size - a, max_len, bicompositions_only))
    out.sort(reverse=True)
    return out


def lex_cmp(u: GenBicomp, v: GenBicomp) -> int:
    return (u > v) - (u < v)
