"""Rewriting of variable * G products in the G basis, the choice map phi,
its inverse, the composite Phi on ``X^alpha F_beta``, and the order <_G.

Positions are 1-based throughout. An index ``e`` is *admissible at i* when it
has no zero column strictly after position ``i``; the single-variable rules
are identities only under that condition, and every product built along
:func:`canonical_schedule` satisfies it at each step.
"""

from __future__ import annotations

from functools import cmp_to_key, lru_cache
from typing import NamedTuple, Optional

from .bicomp import ZERO_COL, GenBicomp, VarRef, _canon, x, y
from .polyring import GExpansion

__all__ = [
    "GExpansion",
    "PhiPreimage",
    "is_admissible",
    "is_schedule_compatible",
    "mul_var_G",
    "phi",
    "phi_inv",
    "canonical_schedule",
    "Phi_forward",
    "expand_XF_in_G",
    "in_img_Phi",
    "g_key",
    "g_cmp",
    "g_sort_key",
]


class PhiPreimage(NamedTuple):
    """The product ``X^alpha * F_beta``."""

    alpha: GenBicomp
    beta: GenBicomp

    def __str__(self) -> str:
        return f"X^({self.alpha}) F_({self.beta})"


def is_admissible(e: GenBicomp, i: int) -> bool:
    return ZERO_COL not in e[i:]


def is_schedule_compatible(v: VarRef, e: GenBicomp) -> bool:
    """Whether ``v * G_e`` can occur while multiplying along the canonical schedule.

    Besides admissibility, ``y_i`` never meets a zero column ``i`` followed by
    a positive top entry, since that pattern only arises after ``x_i``. On
    these inputs ``phi_inv`` is a left inverse of ``phi``.
    """
    i = v.index
    if not is_admissible(e, i):
        return False
    if v.axis == "y":
        col, nxt = e.column(i), e.column(i + 1)
        if col == ZERO_COL and nxt[0] > 0:
            return False
    return True


def _padded(e: GenBicomp, i: int) -> list:
    cols = list(e)
    if len(cols) < i:
        cols.extend([ZERO_COL] * (i - len(cols)))
    return cols


def _bump(cols: list, i: int, axis: str) -> list:
    t, b = cols[i - 1]
    out = list(cols)
    out[i - 1] = (t + 1, b) if axis == "x" else (t, b + 1)
    return out


def _insert_zero(cols: list, i: int) -> GenBicomp:
    return _canon(tuple(cols[: i - 1]) + (ZERO_COL,) + tuple(cols[i - 1:]))


@lru_cache(maxsize=None)
def _mul(axis: str, i: int, e: GenBicomp) -> tuple:
    cols = _padded(e, i)
    if axis == "x" or cols[i - 1][0] == 0:
        # x_i, or y_i over a zero top entry: bump column i, minus the same with (0,0) pushed in at i
        bumped = _bump(cols, i, axis)
        return ((_canon(tuple(bumped)), 1), (_insert_zero(bumped, i), -1))
    # y_i with top entry a > 0 at column i:
    #   y_i G_e = y_i G_{e with (0,0) inserted at i} + x_i (y_i G_{e with top_i lowered})
    acc: dict = {}
    for k, c in _mul("y", i, _insert_zero(cols, i)):
        acc[k] = acc.get(k, 0) + c
    t, b = cols[i - 1]
    lowered = list(cols)
    lowered[i - 1] = (t - 1, b)
    for k, c in _mul("y", i, _canon(tuple(lowered))):
        for k2, c2 in _mul("x", i, k):
            acc[k2] = acc.get(k2, 0) + c * c2
    return tuple((k, c) for k, c in sorted(acc.items(), reverse=True) if c)


def mul_var_G(v: VarRef, e: GenBicomp) -> GExpansion:
    """G-expansion of ``v * G_e`` for a single variable ``v``.

    Raises ``ValueError`` if ``e`` has a zero column after position
    ``v.index``; the rewrite rules do not hold there.
    """
    if not is_admissible(e, v.index):
        raise ValueError(f"{e} has a zero column after position {v.index}")
    return GExpansion._wrap(dict(_mul(v.axis, v.index, e)))


def phi(v: VarRef, e: GenBicomp) -> GenBicomp:
    """The designated term of ``v * G_e``: the zero-inserted index of the rule used."""
    i = v.index
    cols = _padded(e, i)
    if v.axis == "x" or cols[i - 1][0] == 0:
        return _insert_zero(_bump(cols, i, v.axis), i)
    return _canon(tuple(cols[: i - 1]) + (ZERO_COL, (0, 1)) + tuple(cols[i - 1:]))


def phi_inv(g: GenBicomp) -> Optional[tuple[VarRef, GenBicomp]]:
    """Undo one phi step, keyed on the last zero column; ``None`` for bicompositions."""
    zeros = [j for j, c in enumerate(g) if c == ZERO_COL]
    if not zeros:
        return None
    j = zeros[-1]  # 0-based; position i = j + 1, and j + 1 < len(g)
    i = j + 1
    cols = list(g)
    t1, b1 = cols[j + 1]
    t2 = cols[j + 2][0] if j + 2 < len(cols) else 0
    if t1 > 0:
        return x(i), _canon(tuple(cols[:j]) + ((t1 - 1, b1),) + tuple(cols[j + 2:]))
    if b1 > 1 or t2 == 0:
        return y(i), _canon(tuple(cols[:j]) + ((t1, b1 - 1),) + tuple(cols[j + 2:]))
    return y(i), _canon(tuple(cols[:j]) + tuple(cols[j + 2:]))


def canonical_schedule(alpha: GenBicomp) -> list[VarRef]:
    """Order of single-variable multiplications for ``X^alpha``: y_i before x_i, i ascending."""
    out: list[VarRef] = []
    for i, (t, b) in enumerate(alpha, start=1):
        out.extend([y(i)] * b)
        out.extend([x(i)] * t)
    return out


def Phi_forward(pre: PhiPreimage) -> GenBicomp:
    if pre.beta.size < 1:
        raise ValueError("Phi is defined only for F_beta with |beta| >= 1")
    if not pre.beta.is_bicomposition:
        raise ValueError(f"beta={pre.beta} is not a bicomposition")
    g = pre.beta
    for v in canonical_schedule(pre.alpha):
        g = phi(v, g)
    return g


def expand_XF_in_G(pre: PhiPreimage) -> GExpansion:
    """G-expansion of ``X^alpha F_beta`` in infinitely many variables.

    The expansion does not depend on a truncation level; use
    :func:`dqsym.bases.reconstruct` to read it in n variables.
    """
    if not pre.beta.is_bicomposition:
        raise ValueError(f"beta={pre.beta} is not a bicomposition")
    cur: dict = {pre.beta: 1}
    for v in canonical_schedule(pre.alpha):
        nxt: dict = {}
        for e, c in cur.items():
            for e2, c2 in _mul(v.axis, v.index, e):
                s = nxt.get(e2, 0) + c * c2
                if s:
                    nxt[e2] = s
                else:
                    del nxt[e2]
        cur = nxt
    return GExpansion._wrap(cur)


@lru_cache(maxsize=None)
def _inverse_chain(g: GenBicomp) -> Optional[PhiPreimage]:
    steps: list[VarRef] = []
    cur = g
    while True:
        back = phi_inv(cur)
        if back is None:
            break
        v, cur = back
        steps.append(v)
    if cur.size < 1:
        return None
    counts: dict = {}
    for v in steps:
        t, b = counts.get(v.index, (0, 0))
        counts[v.index] = (t + 1, b) if v.axis == "x" else (t, b + 1)
    length = max(counts, default=0)
    alpha = _canon(tuple(counts.get(i, ZERO_COL) for i in range(1, length + 1)))
    if canonical_schedule(alpha) != steps[::-1]:
        return None
    return PhiPreimage(alpha, cur)


def in_img_Phi(g: GenBicomp) -> Optional[PhiPreimage]:
    """The preimage ``(alpha, beta)`` with ``Phi(X^alpha F_beta) = g``, or ``None``."""
    return _inverse_chain(g)


@lru_cache(maxsize=None)
def g_key(g: GenBicomp) -> tuple:
    """Sort key realising <_G: Python ordering of keys equals the order on indices.

    Bicompositions come first, by lex order. Others are ordered by the
    position of their last zero column, then x-type before y-type, then
    recursively by their phi preimage.
    """
    back = phi_inv(g)
    if back is None:
        return (0, tuple(g))
    v, prev = back
    return (1, v.index, 0 if v.axis == "x" else 1, g_key(prev))


def g_cmp(u: GenBicomp, v: GenBicomp) -> int:
    ku, kv = g_key(u), g_key(v)
    return (ku > kv) - (ku < kv)


g_sort_key = cmp_to_key(g_cmp)
