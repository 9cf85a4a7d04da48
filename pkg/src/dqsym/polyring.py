"""Sparse exact polynomials in x1, y1, x2, y2, ... and G-basis vectors.

Monomials are :class:`~dqsym.bicomp.GenBicomp` exponent arrays. Coefficients
are Python ints or :class:`fractions.Fraction`; nothing here ever touches a
float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional, Union

from .bicomp import ZERO, ZERO_COL, GenBicomp, VarRef, _canon

Coeff = Union[int, Fraction]


def as_coeff(c) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_coeff(Fraction(c))
    raise TypeError(f"coefficient {c!r} is not an exact rational")


def exact_div(c: Coeff, d: Coeff) -> Coeff:
    if d == 1:
        return c
    if d == -1:
        return -c
    return as_coeff(Fraction(c) / d)


def _norm(c: Coeff) -> Coeff:
    return int(c) if type(c) is Fraction and c.denominator == 1 else c


def format_coeff(c: Coeff) -> str:
    return str(c)


def mono_cmp(u: GenBicomp, v: GenBicomp) -> int:
    """Lex order with x1 > y1 > x2 > y2 > ...; same as tuple order on exponents."""
    return (u > v) - (u < v)


class ComponentKey(NamedTuple):
    """Bigraded component ``R_n^{a,b}``: ``n`` variables of each kind, x-degree ``a``, y-degree ``b``."""

    n: int
    a: int
    b: int


def dim_component(key: ComponentKey) -> int:
    n, a, b = key
    return comb(a + n - 1, a) * comb(b + n - 1, b)


class _Combination:
    """Finite linear combination keyed by generalized bicompositions.

    Instances are treated as immutable once built.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        d: dict[GenBicomp, Coeff] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                if not isinstance(k, GenBicomp):
                    k = GenBicomp.parse(k) if isinstance(k, str) else GenBicomp(k)
                c = as_coeff(c)
                s = d.get(k, 0) + c
                if s:
                    d[k] = s
                else:
                    d.pop(k, None)
        self._terms = d

    @classmethod
    def _wrap(cls, d: dict):
        obj = cls.__new__(cls)
        obj._terms = d
        return obj

    @property
    def terms(self) -> Mapping[GenBicomp, Coeff]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def get(self, k: GenBicomp, default: Coeff = 0) -> Coeff:
        return self._terms.get(k, default)

    def __getitem__(self, k: GenBicomp) -> Coeff:
        return self._terms.get(k, 0)

    def __contains__(self, k) -> bool:
        return k in self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, _Combination):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self._terms
            return self._terms == {ZERO: other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, _Combination):
            return NotImplemented
        d = dict(self._terms)
        _accumulate(d, other._terms, 1)
        return self._wrap(d)

    def __sub__(self, other):
        if not isinstance(other, _Combination):
            return NotImplemented
        d = dict(self._terms)
        _accumulate(d, other._terms, -1)
        return self._wrap(d)

    def scale(self, c) -> "_Combination":
        c = as_coeff(c)
        if c == 0:
            return self._wrap({})
        return self._wrap({k: _norm(v * c) for k, v in self._terms.items()})

    def add_scaled(self, other: "_Combination", c) -> "_Combination":
        """``self + c * other`` in one pass."""
        d = dict(self._terms)
        _accumulate(d, other._terms, as_coeff(c))
        return self._wrap(d)

    def sorted_items(self) -> list[tuple[GenBicomp, Coeff]]:
        return sorted(self._terms.items(), reverse=True)

    def to_json(self) -> dict:
        return {"terms": [{"m": str(k), "c": format_coeff(c)} for k, c in self.sorted_items()]}

    @classmethod
    def from_json(cls, doc: Union[str, dict]):
        if isinstance(doc, str):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list):
            raise ValueError('expected a document of the form {"terms": [{"m": ..., "c": ...}]}')
        items = []
        for t in doc["terms"]:
            try:
                items.append((GenBicomp.parse(str(t["m"])), Fraction(str(t["c"]))))
            except (KeyError, TypeError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed term {t!r}") from exc
        return cls(items)


def _accumulate(d: dict, src: Mapping, c: Coeff) -> None:
    for k, v in src.items():
        s = d.get(k, 0) + c * v
        if s:
            d[k] = _norm(s)
        else:
            del d[k]


class Polynomial(_Combination):
    """Polynomial as a map from exponent arrays to rational coefficients."""

    __slots__ = ()

    @classmethod
    def monomial(cls, e: GenBicomp, c: Coeff = 1) -> "Polynomial":
        c = as_coeff(c)
        return cls._wrap({e: c} if c else {})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.monomial(ZERO)

    @classmethod
    def variable(cls, v: VarRef) -> "Polynomial":
        return cls.monomial(var_exponent(v))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def mul_monomial(self, e: GenBicomp, c: Coeff = 1) -> "Polynomial":
        if not c:
            return Polynomial._wrap({})
        return Polynomial._wrap({mono_mul(k, e): _norm(v * c) for k, v in self._terms.items()})

    def leading_term(self) -> Optional[tuple[GenBicomp, Coeff]]:
        if not self._terms:
            return None
        m = max(self._terms)
        return m, self._terms[m]

    def truncate(self, n: int) -> "Polynomial":
        return Polynomial._wrap({k: c for k, c in self._terms.items() if len(k) <= n})

    def shift(self, k: int = 1) -> "Polynomial":
        pad = (ZERO_COL,) * k
        return Polynomial._wrap({(_canon(pad + tuple(m)) if m else m): c for m, c in self._terms.items()})

    def max_length(self) -> int:
        return max((len(k) for k in self._terms), default=0)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {k.bidegree for k in self._terms}

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_items():
            mono = monomial_str(m)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def monomial_str(e: GenBicomp) -> str:
    factors = []
    for i, (t, b) in enumerate(e, start=1):
        for name, p in (("x", t), ("y", b)):
            if p == 1:
                factors.append(f"{name}{i}")
            elif p > 1:
                factors.append(f"{name}{i}^{p}")
    return "*".join(factors) or "1"


def var_exponent(v: VarRef) -> GenBicomp:
    col = (1, 0) if v.axis == "x" else (0, 1)
    return _canon((ZERO_COL,) * (v.index - 1) + (col,))


def mono_mul(u: GenBicomp, v: GenBicomp) -> GenBicomp:
    if len(u) < len(v):
        u, v = v, u
    if not v:
        return u
    cols = list(u)
    for j, (t, b) in enumerate(v):
        ct, cb = cols[j]
        cols[j] = (ct + t, cb + b)
    return tuple.__new__(GenBicomp, cols)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    if len(p) > len(q):
        p, q = q, p
    d: dict = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in q._terms.items():
            m = mono_mul(m1, m2)
            s = d.get(m, 0) + c1 * c2
            if s:
                d[m] = s
            else:
                del d[m]
    return Polynomial._wrap({m: _norm(c) for m, c in d.items()})


def leading_term(p: Polynomial) -> Optional[tuple[GenBicomp, Coeff]]:
    return p.leading_term()


def truncate_to_n(p: Polynomial, n: int) -> Polynomial:
    return p.truncate(n)


def shift_vars(p: Polynomial) -> Polynomial:
    return p.shift(1)


class GExpansion(_Combination):
    """A vector in the G basis: index -> rational coefficient."""

    __slots__ = ()

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {c}" for k, c in self.sorted_items())
        return "GExpansion({" + body + "})"

    def max_length(self) -> int:
        return max((len(k) for k in self._terms), default=0)
