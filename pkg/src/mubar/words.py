"""Free-group words, the Artin braid action and longitude extraction.

A word is stored as a tuple of nonzero integers: ``k`` stands for the
generator ``x_k`` and ``-k`` for its inverse.  Words are always kept
freely reduced.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class WordError(ValueError):
    pass


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Reduced word in the free group on ``x_1, ..., x_m``."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        if any(a == 0 for a in letters):
            raise WordError("generator index 0 is not allowed")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def gen(cls, i: int, exponent: int = 1) -> Word:
        return cls((i if exponent > 0 else -i,) * abs(exponent))

    @classmethod
    def parse(cls, text: str) -> Word:
        """Parse ``"X1^-1 X2"``-style text (tokens ``Xi`` / ``Xi^k``)."""
        letters: list[int] = []
        for tok in text.split():
            mo = re.fullmatch(r"[Xx](\d+)(?:\^\(?(-?\d+)\)?)?", tok)
            if mo is None:
                raise WordError(f"cannot parse token {tok!r}")
            i = int(mo.group(1))
            e = int(mo.group(2)) if mo.group(2) is not None else 1
            letters.extend([i if e > 0 else -i] * abs(e))
        return cls(tuple(letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        toks = []
        for a in self.letters:
            toks.append(f"X{a}" if a > 0 else f"X{-a}^-1")
        return " ".join(toks)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> Word:
        return Word(tuple(-a for a in reversed(self.letters)))

    def conjugate(self, g: Word) -> Word:
        """Return ``g w g^-1``."""
        return g * self * g.inverse()

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Letters as ``(generator, +-1)`` pairs."""
        return [(abs(a), 1 if a > 0 else -1) for a in self.letters]

    def max_index(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def exponent_sum(self, i: int | None = None) -> int:
        if i is None:
            return sum(1 if a > 0 else -1 for a in self.letters)
        return sum((1 if a > 0 else -1) for a in self.letters if abs(a) == i)

    def substitute(self, images: dict[int, Word]) -> Word:
        """Apply the endomorphism ``x_k -> images[k]`` (missing keys fixed)."""
        out: list[int] = []
        for a in self.letters:
            img = images.get(abs(a))
            if img is None:
                out.append(a)
            elif a > 0:
                out.extend(img.letters)
            else:
                out.extend(img.inverse().letters)
        return Word(tuple(out))


IDENTITY = Word()


def reduce(letters: Iterable[int], m: int | None = None) -> Word:
    """Freely reduce a raw letter sequence, checking indices against ``m``."""
    letters = list(letters)
    if m is not None:
        for a in letters:
            if not 1 <= abs(a) <= m:
                raise WordError(f"generator index {a} outside 1..{m}")
    return Word(tuple(letters))


# ---------------------------------------------------------------------------
# Braids


@dataclass(frozen=True)
class Braid:
    """Braid on ``strands`` strands; ``k`` is sigma_k, ``-k`` its inverse."""

    strands: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        word = tuple(int(a) for a in self.word)
        if self.strands < 1:
            raise WordError("a braid needs at least one strand")
        for a in word:
            if not 1 <= abs(a) <= self.strands - 1:
                raise WordError(f"generator {a} outside 1..{self.strands - 1}")
        object.__setattr__(self, "word", word)

    @classmethod
    def from_json(cls, data: dict) -> Braid:
        return cls(int(data["strands"]), tuple(data["word"]))

    def to_json(self) -> dict:
        return {"strands": self.strands, "word": list(self.word)}

    def permutation(self) -> tuple[int, ...]:
        """``perm[p]`` is the (0-based) top position of the strand starting at ``p``."""
        pos = list(range(self.strands))  # pos[strand] = current position
        at = list(range(self.strands))  # at[position] = strand
        for a in self.word:
            k = abs(a) - 1
            s, t = at[k], at[k + 1]
            at[k], at[k + 1] = t, s
            pos[s], pos[t] = k + 1, k
        return tuple(pos)

    @property
    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.strands))

    def inverse(self) -> Braid:
        return Braid(self.strands, tuple(-a for a in reversed(self.word)))

    def __mul__(self, other: Braid) -> Braid:
        if self.strands != other.strands:
            raise WordError("strand counts differ")
        return Braid(self.strands, self.word + other.word)

    def __str__(self) -> str:
        if not self.word:
            return f"1 (m={self.strands})"
        return " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.word)


def _sigma_images(k: int, sign: int) -> dict[int, Word]:
    xk, xk1 = Word.gen(k), Word.gen(k + 1)
    if sign > 0:
        return {k: xk * xk1 * xk.inverse(), k + 1: xk}
    return {k: xk1, k + 1: xk1.inverse() * xk * xk1}


def artin_apply(b: Braid, w: Word) -> Word:
    """Image of ``w`` under the Artin automorphism of ``b``.

    ``sigma_k`` sends ``x_k -> x_k x_{k+1} x_k^-1`` and ``x_{k+1} -> x_k``.
    The letters of ``b`` are applied left to right as nested substitutions,
    so ``artin_apply(b1 * b2, w) == artin_apply(b1, artin_apply(b2, w))``
    as automorphisms composed in word order.
    """
    if w.max_index() > b.strands:
        raise WordError(f"word uses generator beyond {b.strands}")
    # phi_{a1 a2 ... an}(w) = phi_a1(phi_a2(...phi_an(w)))
    for a in reversed(b.word):
        w = w.substitute(_sigma_images(abs(a), 1 if a > 0 else -1))
    return w


def strip_conjugator(image: Word, i: int) -> Word:
    """Return the shortest ``A`` with ``image == A x_i A^-1``."""
    letters = image.letters
    n = len(letters)
    if n % 2 == 0:
        raise WordError(f"{image} is not a conjugate of x{i}")
    mid = n // 2
    head, centre, tail = letters[:mid], letters[mid], letters[mid + 1:]
    if centre != i or Word(head).inverse().letters != tail:
        raise WordError(f"{image} is not a conjugate of x{i}")
    return Word(head)


def longitudes_from_braid(b: Braid) -> list[Word]:
    """Raw longitudes of a pure braid: the conjugators ``A_i`` in
    ``artin_apply(b, x_i) = A_i x_i A_i^-1``."""
    if not b.is_pure:
        raise WordError("longitude extraction requires a pure braid")
    return [strip_conjugator(artin_apply(b, Word.gen(i)), i)
            for i in range(1, b.strands + 1)]


def normalize_longitude(raw: Word, i: int, side: str = "left") -> Word:
    """Correct the framing of ``raw`` so that its exponent sum is zero.

    The correction ``x_i^-e`` is put on the left by default; ``side="right"``
    puts it on the right, which is where a framing twist lands for a strand
    whose traversal ends at the base-point disc.
    """
    e = raw.exponent_sum()
    corr = Word.gen(i, -e)
    if side == "left":
        return corr * raw
    if side == "right":
        return raw * corr
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# ---------------------------------------------------------------------------
# Wirtinger presentations


@dataclass(frozen=True)
class Relation:
    """``out = over^-sign * inp * over^sign`` for generators of arcs."""

    out: int
    inp: int
    over: int
    sign: int


@dataclass
class WirtingerPresentation:
    """Wirtinger presentation of a string-link complement.

    Generators are arc indices ``0..n-1``.  ``meridians[i]`` is the arc of
    strand ``i+1`` that touches the 0-end disc; its generator is identified
    with ``x_{i+1}``.  ``passes[i]`` lists, in the traversal order of strand
    ``i+1``, the ``(over arc, sign)`` of each crossing where the strand runs
    underneath; the raw longitude is the product of ``over^sign``.
    ``starts_at_base[i]`` tells whether the traversal of strand ``i+1``
    begins in the 0-end disc (framing correction on the left) or ends there
    (correction on the right).
    """

    n: int
    relations: list[Relation]
    meridians: list[int]
    passes: list[list[tuple[int, int]]] = field(default_factory=list)
    starts_at_base: list[bool] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.meridians)

    def check(self) -> None:
        if len(self.relations) != self.n - self.m:
            raise WordError(
                f"deficiency must be {self.m}: {self.n} generators, "
                f"{len(self.relations)} relations")
        for r in self.relations:
            for g in (r.out, r.inp, r.over):
                if not 0 <= g < self.n:
                    raise WordError(f"relation references missing generator {g}")
            if r.sign not in (1, -1):
                raise WordError("relation sign must be +-1")
        if len(self.passes) != self.m or len(self.starts_at_base) != self.m:
            raise WordError("per-strand longitude data missing")
        for strand in self.passes:
            for g, s in strand:
                if not 0 <= g < self.n:
                    raise WordError(f"longitude references missing generator {g}")


def solve_arcs(p: WirtingerPresentation, q: int) -> tuple[list[Word], bool]:
    """Express every arc generator as a word in the meridians.

    Starts from each arc equal to the meridian of its strand and sweeps the
    relations outward from the 0-end arcs, at most ``q`` times; the result
    is correct modulo the ``(q+1)``-st lower central series term.  Returns
    the words and a flag telling whether a fixed point (exact answer) was
    reached.
    """
    p.check()
    strand_of = {}
    for idx, g in enumerate(p.meridians):
        strand_of[g] = idx + 1
    # Orient every relation so that ``known`` lies nearer the 0-end arc.
    links: dict[int, list[tuple[int, int, int, bool]]] = {}
    for r in p.relations:
        links.setdefault(r.out, []).append((r.inp, r.over, r.sign, True))
        links.setdefault(r.inp, []).append((r.out, r.over, r.sign, False))
    order: list[tuple[int, int, int, int, bool]] = []
    seen = set(p.meridians)
    frontier = list(p.meridians)
    while frontier:
        nxt = []
        for g in frontier:
            for h, over, sign, h_is_inp in links.get(g, []):
                if h in seen:
                    continue
                seen.add(h)
                strand_of[h] = strand_of[g]
                # g is ``out`` and h is ``inp`` when h_is_inp
                order.append((h, g, over, sign, h_is_inp))
                nxt.append(h)
        frontier = nxt
    if len(seen) != p.n:
        raise WordError("some arcs are not connected to a 0-end meridian")
    words = [Word.gen(strand_of[g]) for g in range(p.n)]
    for _ in range(max(q, 1)):
        changed = False
        new = list(words)
        for h, g, over, sign, h_is_inp in order:
            o = new[over] ** sign
            if h_is_inp:
                # g = o^-1 h o  =>  h = o g o^-1
                w = o * new[g] * o.inverse()
            else:
                w = o.inverse() * new[g] * o
            if w != new[h]:
                changed = True
            new[h] = w
        words = new
        if not changed:
            return words, True
    return words, False


def nilpotent_longitudes(p: WirtingerPresentation, q: int) -> list[Word]:
    """Normalized longitudes as words in the meridians, modulo ``F_{q+1}``."""
    if q < 1:
        raise ValueError("q must be >= 1")
    arcs, _ = solve_arcs(p, q)
    out = []
    for i, strand in enumerate(p.passes):
        raw = IDENTITY
        for g, s in strand:
            raw = raw * arcs[g] ** s
        side = "left" if p.starts_at_base[i] else "right"
        out.append(normalize_longitude(raw, i + 1, side))
    return out


def parse_longitudes(data: dict) -> tuple[int, list[Word]]:
    """Read ``{"m": 2, "longitudes": ["X1^-1 X2", ...]}``."""
    m = int(data["m"])
    words = [Word.parse(s) for s in data["longitudes"]]
    if len(words) != m:
        raise WordError(f"expected {m} longitudes, got {len(words)}")
    for w in words:
        if w.max_index() > m:
            raise WordError(f"longitude {w} uses a generator beyond {m}")
    return m, words


def check_indices(words: Sequence[Word], m: int) -> None:
    for w in words:
        if w.max_index() > m:
            raise WordError(f"word {w} uses a generator beyond {m}")
