"""Bigraded quotient dimensions of R_n / I_n and the Hilbert basis.

``I_n`` is the ideal of ``Q[x1..xn, y1..yn]`` generated by the diagonally
quasisymmetric polynomials without constant term. Dimensions come from an
exact rank computation over the spanning set ``{X^alpha F_beta}``; the
Hilbert basis comes from the Phi membership test. The two routes are
independent and are compared against each other.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Optional, Union

from .bases import ExpansionContext, expand_G, to_G_expansion, xf_product
from .bicomp import GenBicomp, enumerate_gb, in_A_n, in_B_n
from .linalg import RowEchelon, integer_row
from .phimap import PhiPreimage, expand_XF_in_G, g_key, in_img_Phi
from .polyring import ComponentKey, GExpansion, Polynomial, dim_component, exact_div

log = logging.getLogger(__name__)

CACHE_VERSION = "dqsym-component-v1"
CACHE_ENV = "DQSYM_CACHE_DIR"


# ---------------------------------------------------------------------------
# spanning set and rank oracle


def ideal_spanning_set(key: ComponentKey, restrict_to_A: bool = False) -> list[PhiPreimage]:
    """Pairs ``(alpha, beta)`` with ``X^alpha F_beta`` in ``R_n^{a,b}``, ``|beta| >= 1``."""
    n, a, b = key
    out = []
    for a1 in range(a + 1):
        for b1 in range(b + 1):
            if a1 == a and b1 == b:
                continue
            betas = enumerate_gb(a - a1, b - b1, n, bicompositions_only=True)
            if not betas:
                continue
            for alpha in enumerate_gb(a1, b1, n):
                if restrict_to_A and not in_A_n(alpha, n):
                    continue
                out.extend(PhiPreimage(alpha, beta) for beta in betas)
    return out


@lru_cache(maxsize=None)
def _columns(key: ComponentKey) -> dict:
    n, a, b = key
    return {m: j for j, m in enumerate(enumerate_gb(a, b, n))}


def _as_row(p: Polynomial, key: ComponentKey) -> dict[int, int]:
    cols = _columns(key)
    try:
        return integer_row({cols[m]: c for m, c in p.items()})
    except KeyError:
        bad = next(m for m in p if m not in cols)
        raise ValueError(
            f"monomial {bad} (bidegree {bad.bidegree}, length {len(bad)}) is outside component {tuple(key)}"
        ) from None


def exact_rank(rows: Iterable[Polynomial], key: ComponentKey) -> int:
    """Rank over Q of polynomials lying in the single component ``key``."""
    ech = RowEchelon()
    limit = dim_component(key)
    for p in rows:
        ech.add(_as_row(p, key))
        if ech.rank == limit:
            break
    return ech.rank


@lru_cache(maxsize=256)
def ideal_echelon(key: ComponentKey, restrict_to_A: bool = False) -> RowEchelon:
    """Echelon basis of ``I_n^{a,b}`` built from the spanning set (shared, do not mutate)."""
    key = ComponentKey(*key)
    ech = RowEchelon()
    limit = dim_component(key)
    for pre in ideal_spanning_set(key, restrict_to_A):
        if ech.rank == limit:
            break
        p = xf_product(pre.alpha, pre.beta, key.n)
        if p:
            ech.add(_as_row(p, key))
    return ech


def in_ideal(p: Polynomial, n: int, ctx: Optional[ExpansionContext] = None) -> bool:
    """Rank certificate: ``p`` lies in ``I_n`` iff adding it does not raise the ideal rank."""
    by_comp: dict = {}
    for m, c in p.items():
        if len(m) > n:
            raise ValueError(f"monomial {m} has length > n={n}")
        by_comp.setdefault(m.bidegree, {})[m] = c
    for (a, b), terms in by_comp.items():
        key = ComponentKey(n, a, b)
        if not ideal_echelon(key).contains(_as_row(Polynomial(terms), key)):
            return False
    return True


# ---------------------------------------------------------------------------
# component reports and Hilbert basis


@dataclass(frozen=True)
class ComponentReport:
    key: ComponentKey
    ambient_dim: int
    ideal_rank: int
    quotient_dim: int
    hilbert_basis_count: int
    stable: bool

    @property
    def basis_is_exact(self) -> bool:
        return self.hilbert_basis_count == self.quotient_dim

    def to_dict(self) -> dict:
        d = asdict(self)
        d["key"] = {"n": self.key.n, "a": self.key.a, "b": self.key.b}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ComponentReport":
        k = d["key"]
        return cls(
            key=ComponentKey(k["n"], k["a"], k["b"]),
            ambient_dim=d["ambient_dim"],
            ideal_rank=d["ideal_rank"],
            quotient_dim=d["quotient_dim"],
            hilbert_basis_count=d["hilbert_basis_count"],
            stable=d["stable"],
        )


def enumerate_hilbert_basis(key: ComponentKey) -> list[GenBicomp]:
    """Indices of bidegree ``(a, b)``, length ``<= n``, outside the image of Phi."""
    n, a, b = key
    return [g for g in enumerate_gb(a, b, n) if in_img_Phi(g) is None]


def count_B_n(key: ComponentKey) -> int:
    n, a, b = key
    return sum(1 for g in enumerate_gb(a, b, n) if in_B_n(g, n))


class ComponentCache:
    """Directory of component reports, one JSON document per ``(n, a, b)``.

    File names are content addresses of the key and the cache version, and
    writes go through an atomic rename, so concurrent writers of the same key
    cannot leave a torn file.
    """

    def __init__(self, directory: Union[str, os.PathLike]):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def address(key: ComponentKey) -> str:
        raw = f"{CACHE_VERSION}:{key.n}:{key.a}:{key.b}".encode()
        return hashlib.sha256(raw).hexdigest()[:24]

    def path(self, key: ComponentKey) -> Path:
        return self.directory / f"{self.address(key)}.json"

    def get(self, key: ComponentKey) -> Optional[ComponentReport]:
        p = self.path(key)
        if not p.exists():
            return None
        try:
            doc = json.loads(p.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if doc.get("version") != CACHE_VERSION:
            return None
        report = ComponentReport.from_dict(doc["report"])
        return report if report.key == key else None

    def put(self, report: ComponentReport) -> None:
        doc = {"version": CACHE_VERSION, "report": report.to_dict()}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True)
        os.replace(tmp, self.path(report.key))


def dim_quotient(key: ComponentKey, cache: Optional[ComponentCache] = None,
                 ctx: Optional[ExpansionContext] = None) -> ComponentReport:
    key = ComponentKey(*key)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    ambient = dim_component(key)
    rank = ideal_echelon(key).rank
    report = ComponentReport(
        key=key,
        ambient_dim=ambient,
        ideal_rank=rank,
        quotient_dim=ambient - rank,
        hilbert_basis_count=len(enumerate_hilbert_basis(key)),
        stable=2 * key.a + key.b <= key.n,
    )
    if cache is not None:
        cache.put(report)
    return report


# ---------------------------------------------------------------------------
# Hilbert matrix


@dataclass
class HilbertMatrix:
    """``entries[i-1][j-1] = M_n(i, j) = dim V_n^{i-1, j-1}``, for ``1 <= i, j <= n+1``."""

    n: int
    entries: list[list[int]]
    reports: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, i: int, j: int) -> int:
        """``M_n(i, j)`` with 1-based indices; zero outside the stored table."""
        if 1 <= i <= self.n + 1 and 1 <= j <= self.n + 1:
            return self.entries[i - 1][j - 1]
        return 0

    def to_json(self) -> dict:
        return {"n": self.n, "entries": self.entries}

    def to_csv(self) -> str:
        size = self.n + 1
        lines = ["x-deg\\y-deg," + ",".join(str(j) for j in range(size))]
        for i in range(size):
            lines.append(f"{i}," + ",".join(str(v) for v in self.entries[i]))
        return "\n".join(lines) + "\n"


def _component_job(args):
    key, cache_dir = args
    cache = ComponentCache(cache_dir) if cache_dir else None
    return dim_quotient(key, cache)


def hilbert_matrix(n: int, cache: Optional[ComponentCache] = None,
                   max_total_degree: Optional[int] = None, jobs: int = 1) -> HilbertMatrix:
    """Entries with ``a + b < n`` from the rank oracle; the rest are zero.

    ``max_total_degree`` (default ``n - 1``) caps which entries are computed;
    entries beyond it are reported as zero.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    top = n - 1 if max_total_degree is None else min(max_total_degree, n - 1)
    keys = [ComponentKey(n, a, d - a) for d in range(top + 1) for a in range(d + 1)]
    if jobs > 1 and len(keys) > 1:
        cache_dir = str(cache.directory) if cache is not None else None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_component_job, [(k, cache_dir) for k in keys]))
    else:
        reports = [dim_quotient(k, cache) for k in keys]
    size = n + 1
    entries = [[0] * size for _ in range(size)]
    by_key = {}
    for r in reports:
        entries[r.key.a][r.key.b] = r.quotient_dim
        by_key[r.key] = r
    return HilbertMatrix(n, entries, by_key)


# ---------------------------------------------------------------------------
# normal forms


def restrict_expansion(expansion: GExpansion, n: int,
                       ctx: Optional[ExpansionContext] = None) -> GExpansion:
    """Rewrite an infinite-variable G-expansion in the basis ``{G_e : len(e) <= n}`` of R_n."""
    long_terms = {}
    short = {}
    for e, c in expansion.items():
        (short if len(e) <= n else long_terms)[e] = c
    out = GExpansion._wrap(short)
    for e, c in long_terms.items():
        out = out.add_scaled(to_G_expansion(expand_G(e, n, ctx), n, ctx), c)
    return out


class NormalFormError(ArithmeticError):
    pass


def normal_form(p: Polynomial, n: int, ctx: Optional[ExpansionContext] = None,
                max_steps: int = 100_000) -> GExpansion:
    """Reduce ``p`` modulo ``I_n`` onto Hilbert-basis indices.

    Works in the G basis of R_n. While some index of the support lies in the
    image of Phi, the <_G-largest such index is cancelled by subtracting the
    matching multiple of its preimage ``X^alpha F_beta``.
    """
    current = to_G_expansion(p, n, ctx)
    steps = 0
    while True:
        hits = [e for e in current if in_img_Phi(e) is not None]
        if not hits:
            return current
        steps += 1
        if steps > max_steps:
            raise NormalFormError(f"no normal form after {max_steps} rewrite steps")
        target = max(hits, key=g_key)
        pre = in_img_Phi(target)
        relation = restrict_expansion(expand_XF_in_G(pre), n, ctx)
        pivot = relation.get(target, 0)
        if not pivot:
            raise NormalFormError(f"preimage {pre} does not contain {target} after truncation to n={n}")
        current = current.add_scaled(relation, exact_div(-current[target], pivot))


# ---------------------------------------------------------------------------
# second column checks


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


@dataclass
class Check:
    name: str
    computed: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.computed == self.expected

    def line(self) -> str:
        return f"{self.name}={self.computed} expected {self.expected} {'PASS' if self.passed else 'FAIL'}"


@dataclass
class VerificationReport:
    n: int
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checks": [{"name": c.name, "computed": c.computed, "expected": c.expected,
                        "passed": c.passed} for c in self.checks],
        }


def verify_second_column(n: int, cache: Optional[ComponentCache] = None, jobs: int = 1) -> VerificationReport:
    """Compare the oracle's second column of M_n with the Catalan value, the
    partial-sum recursion in M_{n-1}, vanishing, and transpose symmetry."""
    if n < 2:
        raise ValueError("n must be >= 2")
    mn = hilbert_matrix(n, cache, jobs=jobs)
    mprev = hilbert_matrix(n - 1, cache, jobs=jobs)
    checks = [Check(f"M_{n}({n - 1},2)", mn(n - 1, 2), comb(2 * n - 2, n - 1) // n)]
    for i in range(1, n - 1):
        expected = sum(mprev(j, k) for j in range(1, i + 1) for k in (1, 2))
        checks.append(Check(f"M_{n}({i},2)", mn(i, 2), expected))
    for i in range(n, n + 2):
        checks.append(Check(f"M_{n}({i},2)", mn(i, 2), 0))
    for i in range(1, n + 2):
        checks.append(Check(f"M_{n}(2,{i})", mn(2, i), mn(i, 2)))
    return VerificationReport(n, checks)
