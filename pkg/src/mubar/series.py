"""Exact truncated power series and integer Laurent/Conway polynomials.

Coefficients are Python ints where possible and :class:`fractions.Fraction`
otherwise; no floating point is used anywhere.  Every series carries its
truncation degree ``q`` (terms of degree ``> q`` are unknown, not zero) and
binary operations refuse to mix different ``q``.
"""
from __future__ import annotations

import json
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .words import Word


class SeriesError(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _as_pair(c) -> tuple[int, int]:
    c = Fraction(c)
    return c.numerator, c.denominator


# ---------------------------------------------------------------------------
# Noncommutative Magnus ring


class NCSeries:
    """Element of ``Q<<u_1..u_m>>`` modulo words of length ``> q``.

    ``terms`` maps tuples of variable indices (1-based) to coefficients.
    """

    __slots__ = ("m", "q", "terms")

    def __init__(self, m: int, q: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.m = m
        self.q = q
        clean = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if len(k) > q or v == 0:
                continue
            if any(not 1 <= i <= m for i in k):
                raise SeriesError(f"variable index out of range in {k}")
            clean[k] = _norm(v)
        self.terms = clean

    @classmethod
    def one(cls, m, q):
        return cls(m, q, {(): 1})

    @classmethod
    def var(cls, i, m, q):
        return cls(m, q, {(i,): 1})

    def _check(self, other: NCSeries):
        if (self.m, self.q) != (other.m, other.q):
            raise SeriesError(f"mixing NCSeries (m={self.m}, q={self.q}) "
                              f"with (m={other.m}, q={other.q})")

    def __getitem__(self, word) -> object:
        return self.terms.get(tuple(word), 0)

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (self.m, self.q) == (other.m, other.q) and self.terms == other.terms

    def __add__(self, other: NCSeries) -> NCSeries:
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return NCSeries(self.m, self.q, out)

    def __neg__(self):
        return NCSeries(self.m, self.q, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: NCSeries) -> NCSeries:
        self._check(other)
        q = self.q
        out: dict[tuple[int, ...], object] = {}
        for ka, va in self.terms.items():
            room = q - len(ka)
            for kb, vb in other.terms.items():
                if len(kb) <= room:
                    k = ka + kb
                    out[k] = out.get(k, 0) + va * vb
        return NCSeries(self.m, q, out)

    def times_generator(self, i: int, inverse: bool = False) -> NCSeries:
        """Right multiplication by ``1 + u_i`` or by its inverse."""
        q = self.q
        t = self.terms
        out = dict(t)
        if not inverse:
            for k, v in t.items():
                if len(k) < q:
                    kk = k + (i,)
                    out[kk] = out.get(kk, 0) + v
            return NCSeries(self.m, q, out)
        # R (1 + u_i) = S  =>  R[w u_i] = S[w u_i] - R[w]; process by length
        res: dict[tuple[int, ...], object] = {}
        by_len: dict[int, list] = {}
        keys = set()
        for k in t:
            for j in range(q - len(k) + 1):
                keys.add(k + (i,) * j)
        for k in keys:
            by_len.setdefault(len(k), []).append(k)
        for n in sorted(by_len):
            for k in by_len[n]:
                v = t.get(k, 0)
                if k and k[-1] == i:
                    v = v - res.get(k[:-1], 0)
                if v != 0:
                    res[k] = v
        return NCSeries(self.m, q, res)

    def constant(self):
        return self.terms.get((), 0)

    def inverse(self) -> NCSeries:
        c = self.constant()
        if c == 0:
            raise SeriesError("series with zero constant term is not invertible")
        c = Fraction(c)
        x = NCSeries(self.m, self.q, {(): 1}) - NCSeries(
            self.m, self.q, {k: v / c for k, v in self.terms.items()})
        # (c(1 - x))^-1 = c^-1 (1 + x + x^2 + ...)
        acc = NCSeries.one(self.m, self.q)
        power = NCSeries.one(self.m, self.q)
        for _ in range(self.q):
            power = power * x
            acc = acc + power
        return NCSeries(self.m, self.q, {k: v / c for k, v in acc.terms.items()})

    def truncate(self, q: int) -> NCSeries:
        if q > self.q:
            raise SeriesError("cannot raise truncation degree")
        return NCSeries(self.m, q, self.terms)

    def to_json(self) -> list:
        return [[list(k), *_as_pair(v)] for k, v in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]

    def __repr__(self):
        if not self.terms:
            return f"NCSeries(0, m={self.m}, q={self.q})"
        parts = []
        for k, v in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(f"u{i}" for i in k) or "1"
            parts.append(f"{v}*{mono}")
        return " + ".join(parts) + f"  (mod deg>{self.q})"


def magnus_expand(w: Word, m: int, q: int) -> NCSeries:
    """Magnus expansion ``x_i -> 1 + u_i`` of ``w`` modulo degree ``> q``."""
    if q < 0:
        raise SeriesError("q must be non-negative")
    if w.max_index() > m:
        raise SeriesError(f"word {w} uses a generator beyond {m}")
    s = NCSeries.one(m, q)
    for a in w.letters:
        s = s.times_generator(abs(a), inverse=a < 0)
    return s


def collapse(s: NCSeries) -> "USeries":
    """Send every ``u_i`` to a single commuting ``u``."""
    cs = [0] * (s.q + 1)
    for k, v in s.terms.items():
        cs[len(k)] += v
    return USeries(cs, s.q)


def abelianize(s: NCSeries) -> "MultiSeries":
    """Let the ``u_i`` commute; ``u_i`` becomes ``v_i``."""
    out: dict[tuple[int, ...], object] = {}
    for k, v in s.terms.items():
        e = [0] * s.m
        for i in k:
            e[i - 1] += 1
        key = tuple(e)
        out[key] = out.get(key, 0) + v
    return MultiSeries(s.m, s.q, out)


# ---------------------------------------------------------------------------
# Univariate series


class PowerSeries:
    """Truncated univariate series ``c_0 + c_1 x + ... + c_q x^q``."""

    var = "x"
    __slots__ = ("q", "coeffs")

    def __init__(self, coeffs: Iterable = (), q: int | None = None):
        cs = [_norm(c) for c in coeffs]
        if q is None:
            q = len(cs) - 1
        if q < 0:
            raise SeriesError("truncation degree must be >= 0")
        cs = cs[: q + 1] + [0] * (q + 1 - len(cs))
        self.q = q
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, q):
        return cls((), q)

    @classmethod
    def one(cls, q):
        return cls((1,), q)

    @classmethod
    def gen(cls, q):
        return cls((0, 1), q)

    def _like(self, coeffs, q=None):
        return type(self)(coeffs, self.q if q is None else q)

    def _check(self, other):
        if type(other) is not type(self):
            raise SeriesError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.q != self.q:
            raise SeriesError(f"truncation mismatch: q={self.q} vs q={other.q}")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like((other,))
        self._check(other)
        return other

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return type(self) is type(other) and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.q, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like([a * other for a in self.coeffs])
        self._check(other)
        q = self.q
        a, b = self.coeffs, other.coeffs
        out = [0] * (q + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(q + 1 - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.one(self.q)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("series with zero constant term is not invertible")
        q = self.q
        inv = [Fraction(0)] * (q + 1)
        inv[0] = Fraction(1) / c0
        for n in range(1, q + 1):
            s = sum(self.coeffs[k] * inv[n - k] for k in range(1, n + 1))
            inv[n] = -s / c0
        return self._like(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._like([Fraction(a) / other for a in self.coeffs])
        return self * other.inverse()

    def truncate(self, q: int):
        if q > self.q:
            raise SeriesError("cannot raise truncation degree")
        return self._like(self.coeffs[: q + 1], q)

    def shift(self, k: int = 1):
        """Multiply by ``x^k``; the result is known to degree ``q + k``."""
        return self._like((0,) * k + self.coeffs, self.q + k)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def compose(self, g: PowerSeries):
        """``self(g)`` for ``g`` with zero constant term; result has ``g``'s type."""
        if g.coeffs[0] != 0:
            raise SeriesError("inner series must have zero constant term")
        if g.q != self.q:
            raise SeriesError(f"truncation mismatch: q={self.q} vs q={g.q}")
        acc = type(g).zero(g.q)
        # Horner from the top coefficient
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def rename(self, cls):
        return cls(self.coeffs, self.q)

    def to_json(self) -> list:
        return [[k, *_as_pair(c)] for k, c in enumerate(self.coeffs) if c != 0]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O({self.var}^{self.q + 1})"


class USeries(PowerSeries):
    var = "u"
    __slots__ = ()


class ZSeries(PowerSeries):
    var = "z"
    __slots__ = ()


def reverse(f: PowerSeries) -> PowerSeries:
    """Compositional inverse of ``f = a_1 x + a_2 x^2 + ...`` with ``a_1 != 0``."""
    if f.coeffs[0] != 0:
        raise SeriesError("reversion needs zero constant term")
    if f.q < 1 or f.coeffs[1] == 0:
        raise SeriesError("reversion needs a nonvanishing linear term")
    q = f.q
    a1 = Fraction(f.coeffs[1])
    # Newton-free fixed point: g = (x - (f - a1 x)(g)) / a1
    rest = f - f._like((0, a1))
    x = f.gen(q)
    g = x / a1
    for _ in range(q):
        g = (x - rest.compose(g)) / a1
    return g


def binomial_series(alpha: Fraction, q: int, cls=USeries) -> PowerSeries:
    """``(1 + x)^alpha`` to degree ``q``."""
    alpha = Fraction(alpha)
    cs = [Fraction(1)]
    for k in range(1, q + 1):
        cs.append(cs[-1] * (alpha - k + 1) / k)
    return cls(cs, q)


def sqrt1pu(q: int) -> USeries:
    return binomial_series(Fraction(1, 2), q, USeries)


@lru_cache(maxsize=None)
def u_of_z(q: int) -> ZSeries:
    """Solve ``u = z (1 + u)^(1/2)`` by fixed-point iteration."""
    root = binomial_series(Fraction(1, 2), q, ZSeries)
    z = ZSeries.gen(q)
    u = ZSeries.zero(q)
    for _ in range(q + 1):
        u = z * root.compose(u)
    return u


@lru_cache(maxsize=None)
def z_of_u(q: int) -> USeries:
    """``z = u / sqrt(1 + u)``."""
    return USeries.gen(q) * binomial_series(Fraction(-1, 2), q, USeries)


# ---------------------------------------------------------------------------
# Commutative multivariable series


class MultiSeries:
    """Truncated series in commuting ``v_1..v_m``; keys are exponent tuples."""

    __slots__ = ("m", "q", "terms")

    def __init__(self, m: int, q: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.m = m
        self.q = q
        clean = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if len(k) != m:
                raise SeriesError(f"exponent vector {k} has wrong length")
            if sum(k) > q or v == 0:
                continue
            clean[k] = _norm(v)
        self.terms = clean

    @classmethod
    def zero(cls, m, q):
        return cls(m, q)

    @classmethod
    def one(cls, m, q):
        return cls(m, q, {(0,) * m: 1})

    @classmethod
    def var(cls, i, m, q):
        k = [0] * m
        k[i - 1] = 1
        return cls(m, q, {tuple(k): 1})

    def _check(self, other):
        if not isinstance(other, MultiSeries) or (self.m, self.q) != (other.m, other.q):
            raise SeriesError("mixing incompatible MultiSeries")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiSeries(self.m, self.q, {(0,) * self.m: other})
        self._check(other)
        return other

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.m, self.q) == (other.m, other.q) and self.terms == other.terms

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return MultiSeries(self.m, self.q, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.m, self.q, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiSeries(self.m, self.q, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        q = self.q
        out: dict = {}
        for ka, va in self.terms.items():
            da = sum(ka)
            for kb, vb in other.terms.items():
                if da + sum(kb) <= q:
                    k = tuple(x + y for x, y in zip(ka, kb))
                    out[k] = out.get(k, 0) + va * vb
        return MultiSeries(self.m, q, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = MultiSeries.one(self.m, self.q)
        for _ in range(n):
            acc = acc * self
        return acc

    def constant(self):
        return self.terms.get((0,) * self.m, 0)

    def inverse(self):
        c = self.constant()
        if c == 0:
            raise SeriesError("series with zero constant term is not invertible")
        c = Fraction(c)
        x = MultiSeries.one(self.m, self.q) - self * (1 / c)
        acc = MultiSeries.one(self.m, self.q)
        power = MultiSeries.one(self.m, self.q)
        for _ in range(self.q):
            power = power * x
            acc = acc + power
        return acc * (1 / c)

    def is_zero(self) -> bool:
        return not self.terms

    def truncate(self, q):
        if q > self.q:
            raise SeriesError("cannot raise truncation degree")
        return MultiSeries(self.m, q, self.terms)

    def homogeneous_part(self, d: int) -> dict:
        return {k: v for k, v in self.terms.items() if sum(k) == d}

    def lowest_degree(self) -> int | None:
        return min((sum(k) for k in self.terms), default=None)

    def specialize(self) -> USeries:
        """Set every ``v_i`` equal to ``u``."""
        cs = [0] * (self.q + 1)
        for k, v in self.terms.items():
            cs[sum(k)] += v
        return USeries(cs, self.q)

    def to_json(self) -> list:
        return [[list(k), *_as_pair(v)] for k, v in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return f"0 + O(deg {self.q + 1})"
        parts = []
        for k, v in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(f"v{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            parts.append(f"{v}*{mono}" if mono else f"{v}")
        return " + ".join(parts) + f" + O(deg {self.q + 1})"


def laurent_monomial_multi(exps: Sequence[int], q: int) -> MultiSeries:
    """``prod_j t_j^exps[j]`` with ``t_j = 1 + v_j``, truncated."""
    m = len(exps)
    acc = MultiSeries.one(m, q)
    for j, e in enumerate(exps):
        if e == 0:
            continue
        b = binomial_series(Fraction(e), q)
        factor = MultiSeries(m, q, {tuple(k if i == j else 0 for i in range(m)): c
                                    for k, c in enumerate(b.coeffs)})
        acc = acc * factor
    return acc


# ---------------------------------------------------------------------------
# Laurent and Conway polynomials


class LaurentPoly:
    """Integer Laurent polynomial in ``t``; ``terms`` maps exponent -> coeff."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {int(k): v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def t(cls, k: int = 1):
        return cls({k: 1})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, int] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise SeriesError("negative powers of Laurent polynomials are not supported")
        acc = LaurentPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def is_zero(self):
        return not self.terms

    def __call__(self, t):
        return sum(c * t ** k for k, c in self.terms.items())

    def to_useries(self, q: int) -> USeries:
        """Expand with ``t = 1 + u``."""
        acc = USeries.zero(q)
        for k, c in self.terms.items():
            acc = acc + binomial_series(Fraction(k), q) * c
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{k}" for k, c in sorted(self.terms.items(), reverse=True))


class ConwayPoly:
    """Integer polynomial in ``z``; ``coeffs[k]`` is the ``z^k`` coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def __eq__(self, other):
        if isinstance(other, ConwayPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ConwayPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ConwayPoly([self[k] + other[k] for k in range(n)])

    def __neg__(self):
        return ConwayPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ConwayPoly([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ConwayPoly(out)

    __rmul__ = __mul__

    def shift(self, k=1):
        return ConwayPoly((0,) * k + self.coeffs) if self.coeffs else self

    def mirror(self) -> ConwayPoly:
        """``p(-z)``."""
        return ConwayPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def to_laurent(self) -> LaurentPoly:
        """Evaluate at ``z = t - t^-1``."""
        z = LaurentPoly({1: 1, -1: -1})
        acc = LaurentPoly()
        power = LaurentPoly.const(1)
        for c in self.coeffs:
            acc = acc + power * c
            power = power * z
        return acc

    def to_zseries(self, q: int) -> ZSeries:
        return ZSeries(self.coeffs[: q + 1], q)

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c in (1, -1):
                parts.append(("-" if c < 0 else "") + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def conway_from_laurent(omega: LaurentPoly) -> ConwayPoly:
    """Rewrite ``omega(t)`` as a polynomial in ``z = t - t^-1``."""
    if omega.is_zero():
        return ConwayPoly()
    top = max(omega.terms)
    z = LaurentPoly({1: 1, -1: -1})
    powers = [LaurentPoly.const(1)]
    for _ in range(top):
        powers.append(powers[-1] * z)
    coeffs = [0] * (max(top, 0) + 1)
    rest = omega
    for k in range(top, -1, -1):
        c = rest.terms.get(k, 0)
        if c:
            coeffs[k] = c
            rest = rest - powers[k] * c
    if not rest.is_zero():
        raise SeriesError("not a polynomial in t - t^-1")
    return ConwayPoly(coeffs)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
