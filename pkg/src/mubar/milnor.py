"""Milnor invariants of string links and the longitudinal matrices.

The matrices ``c`` (one variable ``u``) and ``chat`` (variables
``v_1..v_m``) are computed twice: from the table of mu-bar invariants and
from Fox derivatives of the longitudes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .series import LaurentPoly, MultiSeries, USeries, laurent_monomial_multi, magnus_expand
from .words import Word, check_indices


class LongitudeError(ValueError):
    pass


def _check_longitudes(longitudes: Sequence[Word]) -> int:
    m = len(longitudes)
    if m == 0:
        raise LongitudeError("need at least one longitude")
    check_indices(longitudes, m)
    for i, w in enumerate(longitudes, 1):
        if w.exponent_sum() != 0:
            raise LongitudeError(
                f"longitude {i} = {w} has exponent sum {w.exponent_sum()}; normalize it first")
    return m


# ---------------------------------------------------------------------------
# mu-bar tables


@dataclass(frozen=True)
class MuTable:
    """``entries[(i_1, ..., i_r, i)]`` is the coefficient of
    ``u_{i_1}...u_{i_r}`` in the Magnus expansion of the ``i``-th longitude,
    for ``r + 1 <= q``.  Missing keys are zero."""

    m: int
    q: int
    entries: dict

    def __getitem__(self, key: Sequence[int]) -> int:
        return self.entries.get(tuple(key), 0)

    def to_json(self) -> dict:
        keys = sorted(self.entries, key=lambda k: (len(k), k))
        return {"m": self.m, "q": self.q,
                "mu": {",".join(map(str, k)): self.entries[k] for k in keys}}

    @classmethod
    def from_json(cls, data: dict) -> MuTable:
        entries = {tuple(int(x) for x in k.split(",")): int(v)
                   for k, v in data["mu"].items()}
        return cls(int(data["m"]), int(data["q"]), entries)

    def vanishes_below(self, k: int) -> bool:
        """True if every invariant of length ``< k`` is zero."""
        return all(v == 0 for key, v in self.entries.items() if len(key) < k)

    def first_nonvanishing(self) -> int | None:
        lengths = [len(key) for key, v in self.entries.items() if v]
        return min(lengths, default=None)


def mu_table(longitudes: Sequence[Word], q: int) -> MuTable:
    if q < 1:
        raise ValueError("q must be >= 1")
    m = _check_longitudes(longitudes)
    entries = {}
    for i, lam in enumerate(longitudes, 1):
        for word, c in magnus_expand(lam, m, q - 1).terms.items():
            if not word:
                continue
            if Fraction(c).denominator != 1:
                raise ArithmeticError(f"non-integral Magnus coefficient {c}")
            entries[word + (i,)] = int(c)
    return MuTable(m, q, entries)


# ---------------------------------------------------------------------------
# Linking data


@dataclass(frozen=True)
class LinkingData:
    """Linking numbers ``l[i][j]`` with ``l[i][i] = -sum_{r != i} l[i][r]``.

    Row ``i`` is also the exponent vector of ``tau_i = prod_j t_j^{l_ij}``.
    """

    l: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, lk: Sequence[Sequence[int]]) -> LinkingData:
        n = len(lk)
        rows = []
        for i in range(n):
            row = [int(lk[i][j]) for j in range(n)]
            row[i] = -sum(row[r] for r in range(n) if r != i)
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def from_longitudes(cls, longitudes: Sequence[Word]) -> LinkingData:
        m = len(longitudes)
        return cls.from_matrix([[w.exponent_sum(j) for j in range(1, m + 1)]
                                for w in longitudes])

    @property
    def m(self) -> int:
        return len(self.l)

    def tau(self, i: int) -> tuple[int, ...]:
        return self.l[i - 1]

    @property
    def split(self) -> bool:
        return all(v == 0 for row in self.l for v in row)

    def to_json(self) -> list:
        return [list(r) for r in self.l]


# ---------------------------------------------------------------------------
# Fox calculus


def fox_derivative(w: Word, j: int) -> dict[Word, int]:
    """Fox derivative ``d w / d x_j`` as an element of the group ring."""
    out: dict[Word, int] = {}
    prefix = Word()
    for a in w.letters:
        if abs(a) == j:
            if a > 0:
                out[prefix] = out.get(prefix, 0) + 1
            else:
                g = prefix * Word((a,))
                out[g] = out.get(g, 0) - 1
        prefix = prefix * Word((a,))
    return {g: c for g, c in out.items() if c}


def abelian_fox(w: Word, j: int, m: int) -> dict[tuple[int, ...], int]:
    """Image of ``d w / d x_j`` under ``x_k -> t_k``: exponent vector -> coeff."""
    out: dict[tuple[int, ...], int] = {}
    exps = [0] * m
    for a in w.letters:
        k = abs(a)
        if a < 0:
            exps[k - 1] -= 1
        if k == j:
            key = tuple(exps)
            out[key] = out.get(key, 0) + (1 if a > 0 else -1)
        if a > 0:
            exps[k - 1] += 1
    return {e: c for e, c in out.items() if c}


def laurent_to_useries(poly: dict[tuple[int, ...], int], q: int) -> USeries:
    """Set every ``t_k = t = 1 + u``."""
    terms: dict[int, int] = {}
    for e, c in poly.items():
        terms[sum(e)] = terms.get(sum(e), 0) + c
    return LaurentPoly(terms).to_useries(q)


def laurent_to_multi(poly: dict[tuple[int, ...], int], m: int, q: int) -> MultiSeries:
    """Expand with ``t_k = 1 + v_k``."""
    acc = MultiSeries.zero(m, q)
    for e, c in sorted(poly.items()):
        acc = acc + laurent_monomial_multi(e, q) * c
    return acc


# ---------------------------------------------------------------------------
# Longitudinal matrices


@dataclass(frozen=True)
class CMatrix:
    m: int
    entries: tuple[tuple[USeries, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    @property
    def q(self) -> int:
        return self.entries[0][0].q

    def truncate(self, q: int) -> CMatrix:
        return CMatrix(self.m, tuple(tuple(e.truncate(q) for e in row)
                                     for row in self.entries))

    def minor(self) -> list[list[USeries]]:
        """The block ``1 <= i, j <= m - 1``."""
        return [list(row[:-1]) for row in self.entries[:-1]]

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]


@dataclass(frozen=True)
class CHatMatrix:
    m: int
    entries: tuple[tuple[MultiSeries, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    @property
    def q(self) -> int:
        return self.entries[0][0].q

    def specialize(self) -> CMatrix:
        return CMatrix(self.m, tuple(tuple(e.specialize() for e in row)
                                     for row in self.entries))

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]


def c_matrix_from_mu(t: MuTable) -> CMatrix:
    """``c_ij(u) = sum_k u^k sum_{|w| = k} mu(w, j, i)``, exact to ``u^(q-2)``."""
    if t.q < 2:
        raise ValueError("mu table depth must be at least 2")
    qc = t.q - 2
    cs = [[[0] * (qc + 1) for _ in range(t.m)] for _ in range(t.m)]
    for key, v in t.entries.items():
        if len(key) < 2:
            continue
        *w, j, i = key
        cs[i - 1][j - 1][len(w)] += v
    return CMatrix(t.m, tuple(tuple(USeries(c, qc) for c in row) for row in cs))


def c_matrix_from_fox(longitudes: Sequence[Word], q: int) -> CMatrix:
    """``c_ij = eta(d lambda_i / d x_j)`` at ``t = 1 + u``, to ``u^q``."""
    m = _check_longitudes(longitudes)
    return CMatrix(m, tuple(tuple(laurent_to_useries(abelian_fox(lam, j, m), q)
                                  for j in range(1, m + 1))
                            for lam in longitudes))


def chat_matrix(longitudes: Sequence[Word], q: int) -> CHatMatrix:
    """Multivariable Fox route: ``t_j = 1 + v_j``, to total degree ``q``."""
    m = _check_longitudes(longitudes)
    return CHatMatrix(m, tuple(tuple(laurent_to_multi(abelian_fox(lam, j, m), m, q)
                                     for j in range(1, m + 1))
                               for lam in longitudes))


def chat_from_mu(t: MuTable) -> CHatMatrix:
    """``chat_ij = sum mu(i_1..i_k, j, i) v_{i_1}...v_{i_k}`` to degree ``q-2``."""
    if t.q < 2:
        raise ValueError("mu table depth must be at least 2")
    qc = t.q - 2
    terms = [[{} for _ in range(t.m)] for _ in range(t.m)]
    for key, v in t.entries.items():
        if len(key) < 2:
            continue
        *w, j, i = key
        e = [0] * t.m
        for k in w:
            e[k - 1] += 1
        d = terms[i - 1][j - 1]
        d[tuple(e)] = d.get(tuple(e), 0) + v
    return CHatMatrix(t.m, tuple(tuple(MultiSeries(t.m, qc, d) for d in row)
                                 for row in terms))


# ---------------------------------------------------------------------------
# Degeneracy relations


@dataclass
class DegeneracyReport:
    """Residuals of the row/column relations; all zero when they hold."""

    name: str
    residuals: dict

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def failures(self) -> list[str]:
        return sorted(k for k, r in self.residuals.items() if not r.is_zero())


def degeneracy_check(c: CMatrix) -> DegeneracyReport:
    """Row and column sums of ``c``; they vanish for algebraically split links."""
    m = c.m
    res = {}
    for i in range(1, m + 1):
        acc = USeries.zero(c.q)
        for j in range(1, m + 1):
            acc = acc + c[i, j]
        res[f"row {i}"] = acc
    for j in range(1, m + 1):
        acc = USeries.zero(c.q)
        for i in range(1, m + 1):
            acc = acc + c[i, j]
        res[f"column {j}"] = acc
    return DegeneracyReport("sums", res)


def _t_minus_one(j: int, m: int, q: int) -> MultiSeries:
    return MultiSeries.var(j, m, q)


def unit_factor(i: int, lk: LinkingData, q: int) -> MultiSeries:
    """``a_i = b_i prod_{r odd < i} t_r^-1 prod_{r even < i} t_r`` with
    ``b_i = 1`` for even ``i`` and ``tau_i^-1 t_i^-1`` for odd ``i``."""
    m = lk.m
    e = [0] * m
    for r in range(1, i):
        e[r - 1] += -1 if r % 2 else 1
    if i % 2:
        for k, v in enumerate(lk.tau(i)):
            e[k] -= v
        e[i - 1] -= 1
    return laurent_monomial_multi(e, q)


def degeneracy_check_multi(ch: CHatMatrix, lk: LinkingData) -> DegeneracyReport:
    """Residuals of ``tau_i - 1 = sum_j (t_j - 1) chat_ij`` and
    ``a_j (tau_j - 1) = sum_i a_i (t_i - 1) chat_ij``."""
    m, q = ch.m, ch.q
    if lk.m != m:
        raise ValueError("dimension mismatch")
    one = MultiSeries.one(m, q)
    taus = [laurent_monomial_multi(lk.tau(i), q) - one for i in range(1, m + 1)]
    units = [unit_factor(i, lk, q) for i in range(1, m + 1)]
    res = {}
    for i in range(1, m + 1):
        acc = MultiSeries.zero(m, q)
        for j in range(1, m + 1):
            acc = acc + _t_minus_one(j, m, q) * ch[i, j]
        res[f"(1) row {i}"] = acc - taus[i - 1]
    for j in range(1, m + 1):
        acc = MultiSeries.zero(m, q)
        for i in range(1, m + 1):
            acc = acc + units[i - 1] * _t_minus_one(i, m, q) * ch[i, j]
        res[f"(2) column {j}"] = acc - units[j - 1] * taus[j - 1]
    return DegeneracyReport("unit-weighted sums", res)


__all__ = [
    "CHatMatrix", "CMatrix", "DegeneracyReport", "LinkingData", "LongitudeError",
    "MuTable", "abelian_fox", "c_matrix_from_fox", "c_matrix_from_mu", "chat_from_mu",
    "chat_matrix", "degeneracy_check", "degeneracy_check_multi", "fox_derivative",
    "laurent_to_multi", "laurent_to_useries", "mu_table", "unit_factor",
]
