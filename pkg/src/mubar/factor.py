"""Gamma and Phi series built from mu-bar invariants, Seifert potentials.

All determinants here are computed without division (cofactor expansion
with memoized column subsets), so they work over any of the truncated
series rings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

from .milnor import CHatMatrix, LinkingData, MuTable, c_matrix_from_mu
from .series import (ConwayPoly, LaurentPoly, MultiSeries, USeries, ZSeries,
                     binomial_series, conway_from_laurent, laurent_monomial_multi, u_of_z)

SCHEMA = "mubar-report/1"


class HypothesisError(ValueError):
    """A precondition of a formula (vanishing invariants, zero linking) fails."""


def det(matrix: Sequence[Sequence], one, zero):
    """Division-free determinant by Laplace expansion along rows.

    Works for entries of any commutative ring supporting ``+``, ``-`` and
    ``*``.  ``one`` is returned for the empty matrix.
    """
    n = len(matrix)
    if n == 0:
        return one
    rows = [list(r) for r in matrix]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")

    @lru_cache(maxsize=None)
    def minor(r: int, cols: int):
        # determinant of rows r.. and the columns in bitmask ``cols``
        if r == n:
            return one
        acc = zero
        sign = 1
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = rows[r][c]
            if not _is_zero(entry):
                term = entry * minor(r + 1, cols & ~(1 << c))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return minor(0, (1 << n) - 1)


def _is_zero(x) -> bool:
    f = getattr(x, "is_zero", None)
    return f() if callable(f) else x == 0


# ---------------------------------------------------------------------------
# Univariate Gamma / Phi


def lambda_matrix(mu: MuTable) -> list[list[USeries]]:
    """``lambda_ij(u) = u c_ij(u)`` for ``1 <= i, j <= m - 1``."""
    c = c_matrix_from_mu(mu)
    return [[e.shift(1) for e in row] for row in c.minor()]


def phi_u(mu: MuTable) -> USeries:
    """``u^(m-1) det(c_ij)`` over ``1 <= i, j <= m - 1``, exact to ``u^(q-1)``."""
    q = mu.q - 1
    return det(lambda_matrix(mu), USeries.one(q), USeries.zero(q))


@dataclass
class GammaResult:
    m: int
    e: int
    gamma: ZSeries
    phi_u: USeries
    lambda_matrix: list[list[USeries]]
    notes: list[str] = field(default_factory=list)

    @property
    def q(self) -> int:
        return self.gamma.q

    def to_json(self) -> dict:
        return {"m": self.m, "e": self.e, "q": self.q,
                "gamma_z": self.gamma.to_json(), "phi_u": self.phi_u.to_json(),
                "lambda": [[x.to_json() for x in row] for row in self.lambda_matrix],
                "notes": list(self.notes)}


def linking_unit_exponent(lk: LinkingData) -> int:
    """``sum l_ij o_i`` over ``i < j`` with ``j - i`` even, ``o_i = (-1)^(i+1)``.

    Only pairs of strands with the same orientation contribute.  Closures of
    pure braids satisfy ``nabla_L = (1+u)^k Gamma`` with this ``k`` when
    the meridians are based in the 0-disk; see ``gamma(unit=...)``.
    """
    m = lk.m
    return sum((1 if i % 2 == 0 else -1) * lk.l[i][j]
               for i in range(m) for j in range(i + 2, m, 2))


def gamma(mu: MuTable, unit: int = 0) -> GammaResult:
    """``Gamma(z) = (1+u)^(e/2) det(lambda_ij(u))`` with ``z = u / sqrt(1+u)``.

    The series is exact through ``z^(q-1)`` for a table of depth ``q``.
    A nonzero ``unit`` multiplies by ``(1+u)^unit`` before the change of
    variable (diagnostic use only; the default is the plain formula).
    """
    if mu.q < 2:
        raise ValueError("mu table depth must be at least 2")
    lam = lambda_matrix(mu)
    q = mu.q - 1
    phi = det(lam, USeries.one(q), USeries.zero(q))
    e = 1 if mu.m % 2 == 0 else 0
    g_u = phi * binomial_series(Fraction(1, 2), q) if e else phi
    if unit:
        g_u = g_u * binomial_series(Fraction(unit), q)
    g = g_u.compose(u_of_z(q))
    notes = []
    if g.is_zero() and mu.m > 1:
        notes.append(f"Gamma vanishes through z^{q}")
    if not g.is_integral():
        notes.append("Gamma has non-integral coefficients")
    # the same series read off the u-form directly must agree
    check = (phi * binomial_series(Fraction(e, 2) + unit, q)).compose(u_of_z(q))
    if check != g:
        raise ArithmeticError("inconsistent Gamma forms")
    return GammaResult(mu.m, e, g, phi, lam, notes)


def rational_form(s: USeries, max_den: int = 3) -> str | None:
    """Guess ``P(u)/(1+u)^k`` with integer polynomial ``P`` for display.

    Returns ``None`` if no denominator exponent ``k <= max_den`` gives a
    numerator whose degree leaves at least two trailing zero coefficients.
    """
    for k in range(max_den + 1):
        num = s * binomial_series(Fraction(k), s.q)
        cs = list(num.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) + 2 > s.q + 1 or any(Fraction(c).denominator != 1 for c in cs):
            continue
        poly = " + ".join(f"{c}*u^{d}" for d, c in enumerate(cs) if c) or "0"
        return poly if k == 0 else f"({poly})/(1+u)^{k}"
    return None


# ---------------------------------------------------------------------------
# Multivariable Phi


def presentation_matrix(ch: CHatMatrix, lk: LinkingData) -> list[list[MultiSeries]]:
    """``P_ij = v_i chat_ij - delta_ij (tau_i - 1)``, full ``m x m``."""
    m, q = ch.m, ch.q
    one = MultiSeries.one(m, q)
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            p = MultiSeries.var(i, m, q) * ch[i, j]
            if i == j:
                p = p - (laurent_monomial_multi(lk.tau(i), q) - one)
            row.append(p)
        rows.append(row)
    return rows


def phi_multi(ch: CHatMatrix, lk: LinkingData) -> MultiSeries:
    """Determinant of ``P`` over ``1 <= i, j <= m - 1``."""
    p = presentation_matrix(ch, lk)
    sub = [row[:-1] for row in p[:-1]]
    return det(sub, MultiSeries.one(ch.m, ch.q), MultiSeries.zero(ch.m, ch.q))


# ---------------------------------------------------------------------------
# Lowest coefficients


def _check_vanishing(mu: MuTable, k: int) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if mu.q < k:
        raise ValueError(f"table depth {mu.q} is below the order {k}")
    if not mu.vanishes_below(k):
        raise HypothesisError(f"mu-bar invariants of length < {k} do not all vanish")


def a_matrix(mu: MuTable, k: int) -> list[list[int]]:
    """``a_ij = sum mu(i_1, ..., i_{k-2}, j, i)`` for ``1 <= i, j <= m - 1``."""
    n = mu.m - 1
    a = [[0] * n for _ in range(n)]
    if k < 2:
        return a
    for key, v in mu.entries.items():
        if len(key) != k:
            continue
        *_, j, i = key
        if i <= n and j <= n:
            a[i - 1][j - 1] += v
    return a


def lowest_coefficient(mu: MuTable, k: int) -> int:
    """Coefficient of ``z^((k-1)(m-1))`` in the Conway polynomial of the closure.

    For ``k = 1`` the hypothesis is empty; the matrix is zero and the value
    is ``det`` of it (``1`` when ``m = 1``).
    """
    _check_vanishing(mu, k)
    return det(a_matrix(mu, k), 1, 0)


def multi_lowest(mu: MuTable, k: int) -> dict[tuple[int, ...], int]:
    """Homogeneous polynomial ``det(v_i sum mu(i_1..i_{k-2}, j, i) v_{i_1}...)``.

    Returned as a map from exponent vectors to integer coefficients.
    """
    _check_vanishing(mu, k)
    m, n = mu.m, mu.m - 1
    d = (k - 1) * n
    entries: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
    if k >= 2:
        for key, v in mu.entries.items():
            if len(key) != k:
                continue
            *w, j, i = key
            if i > n or j > n:
                continue
            e = [0] * m
            e[i - 1] += 1
            for r in w:
                e[r - 1] += 1
            cell = entries[i - 1][j - 1]
            cell[tuple(e)] = cell.get(tuple(e), 0) + v
    mat = [[MultiSeries(m, max(d, 0), c) for c in row] for row in entries]
    out = det(mat, MultiSeries.one(m, max(d, 0)), MultiSeries.zero(m, max(d, 0)))
    return {e: int(c) for e, c in out.terms.items() if sum(e) == d}


def specialize_homogeneous(poly: dict[tuple[int, ...], int]) -> int:
    """Value of a homogeneous polynomial at ``v_i = 1`` (the ``u^d`` coefficient)."""
    return sum(poly.values())


# ---------------------------------------------------------------------------
# Checks for algebraically split links


@dataclass
class GammaChecks:
    parity: bool
    divisibility: bool
    square: bool
    leading: Fraction | int | None

    @property
    def ok(self) -> bool:
        return self.parity and self.divisibility and self.square

    def to_json(self) -> dict:
        return {"parity": self.parity, "divisibility": self.divisibility,
                "square": self.square}


def is_square(x) -> bool:
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        return False
    r = isqrt(x.numerator)
    return r * r == x.numerator


def gamma_checks(g: GammaResult, lk: LinkingData) -> GammaChecks:
    """Parity, divisibility by ``z^(2(m-1))`` and square leading value."""
    if not lk.split:
        raise HypothesisError("the linking numbers are not all zero")
    m = g.m
    wrong = 1 if m % 2 == 1 else 0  # parity of the powers that must vanish
    parity = all(c == 0 for k, c in enumerate(g.gamma.coeffs) if k % 2 == wrong)
    d = 2 * (m - 1)
    divisibility = all(g.gamma[k] == 0 for k in range(min(d, g.q + 1)))
    leading = g.gamma[d] if d <= g.q else None
    square = leading is not None and is_square(leading)
    return GammaChecks(parity, divisibility, square, leading)


# ---------------------------------------------------------------------------
# Seifert matrices


@dataclass(frozen=True)
class SeifertMatrix:
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, a: Sequence[Sequence[int]]) -> SeifertMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in a)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("Seifert matrix must be square")
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def transpose(self) -> SeifertMatrix:
        return SeifertMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def intersection_det(self) -> int:
        """``det(A - A^T)``; ``+-1`` for a knot's Seifert surface."""
        e = [[self.rows[i][j] - self.rows[j][i] for j in range(self.n)]
             for i in range(self.n)]
        return det(e, 1, 0)


def potential(a: SeifertMatrix) -> LaurentPoly:
    """``det(t A - t^-1 A^T)`` in ``Z[t, t^-1]``."""
    t, ti = LaurentPoly.t(1), LaurentPoly.t(-1)
    m = [[t * a.rows[i][j] - ti * a.rows[j][i] for j in range(a.n)] for i in range(a.n)]
    return det(m, LaurentPoly.const(1), LaurentPoly())


@dataclass
class SeifertResult:
    conway: ConwayPoly
    unimodular: bool


def conway_from_seifert(a: SeifertMatrix | Sequence[Sequence[int]]) -> ConwayPoly:
    return seifert_report(a).conway


def seifert_report(a: SeifertMatrix | Sequence[Sequence[int]]) -> SeifertResult:
    if not isinstance(a, SeifertMatrix):
        a = SeifertMatrix.of(a)
    return SeifertResult(conway_from_laurent(potential(a)),
                         abs(a.intersection_det()) == 1)


def report(result: GammaResult, checks: GammaChecks | None = None,
           extra: dict | None = None) -> dict:
    """Report JSON with Gamma, Phi and the optional split-link checks."""
    out = {"schema": SCHEMA, "gamma_z": result.gamma.to_json(),
           "phi_u": result.phi_u.to_json(),
           "checks": checks.to_json() if checks else None}
    if extra:
        out.update(extra)
    return out

