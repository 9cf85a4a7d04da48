"""Monomial expansions of the M, F and G bases in n variables of each kind,
and triangular conversion of polynomials into the G basis.
"""

from __future__ import annotations

import itertools
import threading
from typing import Optional

from .bicomp import ZERO_COL, GenBicomp, join, refinements, split_last_zero, x, y
from .polyring import Coeff, GExpansion, Polynomial, var_exponent


class ExpansionContext:
    """Memo tables for basis expansions, keyed by ``(index, n)``.

    Entries are immutable polynomials, so a context can be shared by threads;
    the lock only guards insertion.
    """

    def __init__(self):
        self._m: dict = {}
        self._f: dict = {}
        self._g: dict = {}
        self._lock = threading.Lock()

    def clear(self) -> None:
        with self._lock:
            self._m.clear()
            self._f.clear()
            self._g.clear()

    def _store(self, table: dict, key, value):
        with self._lock:
            return table.setdefault(key, value)

    def M(self, alpha: GenBicomp, n: int) -> Polynomial:
        key = (alpha, n)
        hit = self._m.get(key)
        if hit is not None:
            return hit
        if not alpha.is_bicomposition:
            raise ValueError(f"M is indexed by bicompositions, got {alpha}")
        k = len(alpha)
        d = {}
        if k <= n:
            cols = tuple(alpha)
            for pos in itertools.combinations(range(n), k):
                arr = [ZERO_COL] * (pos[-1] + 1 if pos else 0)
                for p, c in zip(pos, cols):
                    arr[p] = c
                d[tuple.__new__(GenBicomp, arr)] = 1
        return self._store(self._m, key, Polynomial._wrap(d))

    def F(self, alpha: GenBicomp, n: int) -> Polynomial:
        key = (alpha, n)
        hit = self._f.get(key)
        if hit is not None:
            return hit
        if not alpha.is_bicomposition:
            raise ValueError(f"F is indexed by bicompositions, got {alpha}")
        d: dict = {}
        for beta in refinements(alpha):
            if len(beta) <= n:
                for m in self.M(beta, n):
                    d[m] = d.get(m, 0) + 1
        return self._store(self._f, key, Polynomial._wrap(d))

    def G(self, eps: GenBicomp, n: int) -> Polynomial:
        key = (eps, n)
        hit = self._g.get(key)
        if hit is not None:
            return hit
        split = split_last_zero(eps)
        if split is None:
            value = self.F(eps, n)
        else:
            prefix, tail = split
            pos = len(prefix) + 1  # position of the removed zero column
            t, b = tail[0]
            if t > 0:
                var, lowered = x(pos), (t - 1, b)
            else:
                var, lowered = y(pos), (t, b - 1)
            value = self.G(join(prefix, tail), n)
            if pos <= n:
                second = self.G(join(prefix, (lowered,) + tuple(tail[1:])), n)
                value = value - second.mul_monomial(var_exponent(var))
        return self._store(self._g, key, value)


DEFAULT_CONTEXT = ExpansionContext()


def _ctx(ctx: Optional[ExpansionContext]) -> ExpansionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def expand_M(alpha: GenBicomp, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    return _ctx(ctx).M(alpha, n)


def expand_F(alpha: GenBicomp, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    return _ctx(ctx).F(alpha, n)


def expand_G(eps: GenBicomp, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    """G basis element in n variables.

    Bicomposition indices give F. Otherwise the last zero column at position
    ``k+1`` is removed: ``G = G(without it) - v_{k+1} * G(without it, first
    tail entry lowered)`` with ``v = x`` if the tail starts with a positive
    top entry and ``v = y`` otherwise.
    """
    return _ctx(ctx).G(eps, n)


def expand(family: str, index: GenBicomp, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    family = family.upper()
    if family == "M":
        return expand_M(index, n, ctx)
    if family == "F":
        return expand_F(index, n, ctx)
    if family == "G":
        return expand_G(index, n, ctx)
    raise ValueError(f"unknown basis {family!r}; expected M, F or G")


def to_G_expansion(p: Polynomial, n: int, ctx: Optional[ExpansionContext] = None) -> GExpansion:
    """Write ``p`` in the basis ``{G_e : len(e) <= n}`` by peeling leading terms."""
    ctx = _ctx(ctx)
    bad = [m for m in p if len(m) > n]
    if bad:
        raise ValueError(f"monomial {bad[0]} has length {len(bad[0])} > n={n}")
    out: dict[GenBicomp, Coeff] = {}
    residual = p
    while residual:
        lead, c = residual.leading_term()
        g = ctx.G(lead, n)
        g_lead, g_c = g.leading_term()
        if g_lead != lead or g_c != 1:
            raise ArithmeticError(f"leading monomial of G_{lead} in n={n} is {g_c}*{g_lead}")
        out[lead] = c
        residual = residual.add_scaled(g, -c)
    return GExpansion._wrap(out)


def reconstruct(expansion: GExpansion, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    """Sum of ``c * G_e`` in n variables."""
    ctx = _ctx(ctx)
    d: dict = {}
    for e, c in expansion.items():
        for m, v in ctx.G(e, n).items():
            s = d.get(m, 0) + c * v
            if s:
                d[m] = s
            else:
                del d[m]
    return Polynomial._wrap(d)


def xf_product(alpha: GenBicomp, beta: GenBicomp, n: int, ctx: Optional[ExpansionContext] = None) -> Polynomial:
    """The polynomial ``X^alpha * F_beta`` in n variables."""
    if len(alpha) > n:
        return Polynomial()
    return _ctx(ctx).F(beta, n).mul_monomial(alpha)


__all__ = [
    "ExpansionContext",
    "DEFAULT_CONTEXT",
    "expand_M",
    "expand_F",
    "expand_G",
    "expand",
    "to_G_expansion",
    "reconstruct",
    "xf_product",
]
