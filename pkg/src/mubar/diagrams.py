"""Oriented string-link and link diagrams, closures and the skein oracle.

Geometry
--------
A string-link diagram is drawn in the plane with the 0-end at the bottom
and the 1-end at the top; strand ``i`` starts at position ``i`` (left to
right).  Each strand is parametrized from bottom to top.  For a crossing
we record the over strand, the under strand and its *geometric sign*:
the sign it would have if both strands were oriented bottom to top.  The
actual sign follows from the orientations, which are fixed: odd strands run
upward and even strands downward.

In a braid word the letter ``k`` (``sigma_k``) is the crossing where the
strand at position ``k+1`` passes over the strand at position ``k`` on its
way up; ``-k`` has the strand at position ``k`` on top.  With the fixed
orientations ``sigma_1^2`` closes to the right-handed Hopf link.

Link diagrams are planar-diagram codes: each crossing is ``(a, b, c, d,
sign)`` with ``a`` the incoming under edge and ``a, b, c, d``
counterclockwise; ``c`` is the outgoing under edge.  Components without
crossings are kept as a count of free loops.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Sequence

from .factor import SCHEMA, gamma, linking_unit_exponent
from .milnor import LinkingData, mu_table
from .series import ConwayPoly, ZSeries
from .words import Braid, Relation, WirtingerPresentation, WordError, nilpotent_longitudes


class DiagramError(ValueError):
    pass


class CrossingLimitError(RuntimeError):
    pass


DEFAULT_MAX_CROSSINGS = 18


def default_max_crossings() -> int:
    env = os.environ.get("MUBAR_MAX_CROSSINGS")
    return int(env) if env else DEFAULT_MAX_CROSSINGS


def strand_orientation(i: int) -> int:
    """+1 (upward) for odd strands, -1 (downward) for even strands."""
    return 1 if i % 2 == 1 else -1


# ---------------------------------------------------------------------------
# Link diagrams


@dataclass(frozen=True)
class LinkDiagram:
    """Oriented link diagram as a PD code plus crossing-free loops.

    ``components`` lists, for each component in order, its edges in
    traversal order.  A free loop is a component whose single edge meets
    no crossing.
    """

    crossings: tuple[tuple[int, int, int, int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @staticmethod
    def over_edges(x):
        a, b, c, d, s = x
        return (d, b) if s > 0 else (b, d)  # (incoming, outgoing)

    @classmethod
    def from_crossings(cls, crossings, free_loops: int = 0,
                       order: Sequence[int] | None = None) -> LinkDiagram:
        """Build from PD crossings; components are found by traversal.

        ``order`` optionally lists one edge per crossing component fixing the
        component order (each component starts at that edge).
        """
        crossings = tuple(tuple(int(v) for v in x) for x in crossings)
        nxt: dict[int, int] = {}
        for x in crossings:
            a, b, c, d, s = x
            if s not in (1, -1):
                raise DiagramError(f"crossing sign must be +-1 in {x}")
            o_in, o_out = cls.over_edges(x)
            for e_in, e_out in ((a, c), (o_in, o_out)):
                if e_in in nxt:
                    raise DiagramError(f"edge {e_in} enters two crossings")
                nxt[e_in] = e_out
        counts: dict[int, int] = {}
        for x in crossings:
            for e in x[:4]:
                counts[e] = counts.get(e, 0) + 1
        for e, n in counts.items():
            if n != 2:
                raise DiagramError(f"edge {e} appears {n} times (expected 2)")
        if set(nxt.values()) != set(nxt):
            raise DiagramError("inconsistent edge orientations")
        starts = list(order) if order is not None else []
        seen: set[int] = set()
        comps = []
        for e0 in starts + sorted(nxt):
            if e0 in seen:
                continue
            comp = []
            e = e0
            while e not in seen:
                seen.add(e)
                comp.append(e)
                e = nxt[e]
            comps.append(tuple(comp))
        top = max(counts, default=0)
        for k in range(free_loops):
            comps.append((top + 1 + k,))
        return cls(crossings, tuple(comps))

    @classmethod
    def from_pd(cls, data: dict) -> LinkDiagram:
        """Read ``{"components": m, "crossings": [[a, b, c, d, "+"], ...]}``."""
        xs = []
        for row in data["crossings"]:
            *edges, s = row
            sign = {"+": 1, "-": -1, 1: 1, -1: -1}.get(s)
            if sign is None:
                raise DiagramError(f"bad sign {s!r}")
            xs.append((*edges, sign))
        d = cls.from_crossings(xs)
        m = int(data.get("components", len(d.components)))
        if m < len(d.components):
            raise DiagramError(f"diagram has {len(d.components)} components, not {m}")
        return cls.from_crossings(xs, free_loops=m - len(d.components))

    def to_pd(self) -> dict:
        return {"components": len(self.components),
                "crossings": [[a, b, c, d, "+" if s > 0 else "-"]
                              for a, b, c, d, s in self.crossings]}

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component_of_edge(self) -> dict[int, int]:
        return {e: k for k, comp in enumerate(self.components) for e in comp}


def linking_numbers(d: LinkDiagram) -> list[list[int]]:
    """Pairwise linking numbers with the diagonal ``-sum_{r != i} l_ir``."""
    n = d.n_components
    comp = d.component_of_edge()
    twice = [[0] * n for _ in range(n)]
    for x in d.crossings:
        ci = comp[x[0]]
        cj = comp[LinkDiagram.over_edges(x)[0]]
        if ci != cj:
            twice[ci][cj] += x[4]
            twice[cj][ci] += x[4]
    lk = [[v // 2 for v in row] for row in twice]
    for i in range(n):
        lk[i][i] = -sum(lk[i][r] for r in range(n) if r != i)
    return lk


# ---------------------------------------------------------------------------
# Skein oracle


def _switch(x):
    a, b, c, d, s = x
    if s > 0:  # over runs d -> b
        return (d, a, b, c, -1)
    return (b, c, d, a, 1)


def _smooth(crossings, idx, free_loops):
    """Oriented smoothing of crossing ``idx``; returns (crossings, free_loops)."""
    x = crossings[idx]
    a, b, c, d, s = x
    o_in, o_out = LinkDiagram.over_edges(x)
    rest = [y for k, y in enumerate(crossings) if k != idx]
    # in_under -> out_over and in_over -> out_under
    for keep, drop in ((a, o_out), (o_in, c)):
        if keep == drop:
            free_loops += 1
            continue
        rest = [tuple(keep if (k < 4 and e == drop) else e for k, e in enumerate(y))
                for y in rest]
    # a pair of merges can close a loop that no longer meets any crossing
    return rest, free_loops


def _components(crossings):
    nxt = {}
    for x in crossings:
        o_in, o_out = LinkDiagram.over_edges(x)
        nxt[x[0]] = x[2]
        nxt[o_in] = o_out
    return nxt


def _first_nondescending(crossings):
    """Index of the first crossing met first as an underpass, or ``None``.

    Components are ordered by their smallest edge label and each is
    traversed from that edge.
    """
    nxt = _components(crossings)
    under_at = {x[0]: k for k, x in enumerate(crossings)}
    over_at = {LinkDiagram.over_edges(x)[0]: k for k, x in enumerate(crossings)}
    seen_edges: set[int] = set()
    seen_x: set[int] = set()
    for e0 in sorted(nxt):
        if e0 in seen_edges:
            continue
        e = e0
        while e not in seen_edges:
            seen_edges.add(e)
            if e in under_at:
                k = under_at[e]
                if k not in seen_x:
                    return k
            else:
                seen_x.add(over_at[e])
            e = nxt[e]
    return None


def _count_components(crossings, free_loops):
    nxt = _components(crossings)
    seen: set[int] = set()
    n = 0
    for e0 in nxt:
        if e0 in seen:
            continue
        n += 1
        e = e0
        while e not in seen:
            seen.add(e)
            e = nxt[e]
    return n + free_loops


def _skein(crossings, free_loops):
    k = _first_nondescending(crossings)
    if k is None:
        n = _count_components(crossings, free_loops)
        return ConwayPoly([1]) if n == 1 else ConwayPoly()
    x = crossings[k]
    switched = list(crossings)
    switched[k] = _switch(x)
    smoothed, fl = _smooth(list(crossings), k, free_loops)
    rest = _skein(tuple(switched), free_loops)
    zero = _skein(tuple(smoothed), fl).shift(1)
    # D+ = D- + z D0 ; D- = D+ - z D0
    return rest + zero if x[4] > 0 else rest - zero


def conway_skein(d: LinkDiagram, max_crossings: int | None = None,
                 normalization: str = "seifert") -> ConwayPoly:
    """Conway polynomial from the skein relation and descending diagrams.

    With ``normalization="standard"`` the result satisfies
    ``C(L+) - C(L-) = z C(L0)`` for right-handed ``L+``.  The default
    ``"seifert"`` normalization is the one given by
    ``C(t - 1/t) = det(t A - A^T / t)`` for Seifert matrices ``A``, which is
    the standard polynomial evaluated at ``-z``; the factorization
    identities are stated in it.
    """
    if max_crossings is None:
        max_crossings = default_max_crossings()
    if len(d.crossings) > max_crossings:
        raise CrossingLimitError(
            f"{len(d.crossings)} crossings exceed the limit of {max_crossings}")
    free = sum(1 for comp in d.components if len(comp) == 1
               and not any(comp[0] in x[:4] for x in d.crossings))
    p = _skein(tuple(d.crossings), free)
    if normalization == "standard":
        return p
    if normalization == "seifert":
        return p.mirror()
    raise ValueError(f"unknown normalization {normalization!r}")


# ---------------------------------------------------------------------------
# String-link diagrams


@dataclass(frozen=True)
class SLCrossing:
    over: int
    under: int
    geo_sign: int


@dataclass(frozen=True)
class StringLinkDiagram:
    """Diagram of an ``m``-strand string link.

    ``events[i]`` lists, bottom to top along strand ``i+1``, pairs
    ``(crossing index, is_over)``.
    """

    m: int
    crossings: tuple[SLCrossing, ...]
    events: tuple[tuple[tuple[int, bool], ...], ...]
    orientations: tuple[int, ...] = ()
    source: Braid | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.orientations:
            object.__setattr__(self, "orientations",
                               tuple(strand_orientation(i) for i in range(1, self.m + 1)))
        self.check()

    def check(self) -> None:
        if len(self.events) != self.m or len(self.orientations) != self.m:
            raise DiagramError("per-strand data must have length m")
        expected = tuple(strand_orientation(i) for i in range(1, self.m + 1))
        if tuple(self.orientations) != expected:
            raise DiagramError(
                "odd strands must run 0 -> 1 and even strands 1 -> 0")
        seen: dict[tuple[int, bool], int] = {}
        for i, ev in enumerate(self.events):
            for c, is_over in ev:
                if not 0 <= c < len(self.crossings):
                    raise DiagramError(f"strand {i + 1} refers to missing crossing {c}")
                if (c, is_over) in seen:
                    raise DiagramError(f"crossing {c} visited twice as {'over' if is_over else 'under'}")
                seen[(c, is_over)] = i + 1
        for c, x in enumerate(self.crossings):
            if seen.get((c, True)) != x.over or seen.get((c, False)) != x.under:
                raise DiagramError(f"crossing {c} does not match the strand events")
            if x.geo_sign not in (1, -1):
                raise DiagramError("geometric sign must be +-1")

    @classmethod
    def from_braid(cls, b: Braid) -> StringLinkDiagram:
        if not b.is_pure:
            raise DiagramError("string links need a pure braid")
        at = list(range(1, b.strands + 1))  # at[position] = strand
        crossings = []
        events: list[list[tuple[int, bool]]] = [[] for _ in range(b.strands)]
        for a in b.word:
            k = abs(a) - 1
            left, right = at[k], at[k + 1]
            if a > 0:
                over, under, geo = right, left, -1
            else:
                over, under, geo = left, right, 1
            c = len(crossings)
            crossings.append(SLCrossing(over, under, geo))
            events[over - 1].append((c, True))
            events[under - 1].append((c, False))
            at[k], at[k + 1] = right, left
        return cls(b.strands, tuple(crossings), tuple(tuple(e) for e in events), source=b)

    @classmethod
    def from_json(cls, data: dict) -> StringLinkDiagram:
        """``{"m": m, "crossings": [[over, under, geo_sign], ...],
        "events": [[[c, true], ...], ...]}``."""
        xs = tuple(SLCrossing(int(o), int(u), int(s)) for o, u, s in data["crossings"])
        ev = tuple(tuple((int(c), bool(o)) for c, o in strand) for strand in data["events"])
        return cls(int(data["m"]), xs, ev)

    def to_json(self) -> dict:
        return {"m": self.m,
                "crossings": [[x.over, x.under, x.geo_sign] for x in self.crossings],
                "events": [[[c, o] for c, o in strand] for strand in self.events]}

    def sign(self, c: int) -> int:
        x = self.crossings[c]
        return x.geo_sign * self.orientations[x.over - 1] * self.orientations[x.under - 1]

    # -- group presentation ------------------------------------------------

    def wirtinger(self) -> WirtingerPresentation:
        """Wirtinger presentation with the 0-end arcs as meridians."""
        # arcs: maximal runs of segments between underpasses; segment k of
        # strand i lies between events k-1 and k (bottom to top)
        arc_of: dict[tuple[int, int], int] = {}
        meridians = []
        n = 0
        for i, ev in enumerate(self.events):
            meridians.append(n)
            for k in range(len(ev) + 1):
                if k > 0 and not ev[k - 1][1]:
                    n += 1
                arc_of[(i, k)] = n
            n += 1
        over_arc: dict[int, int] = {}
        for i, ev in enumerate(self.events):
            for k, (c, is_over) in enumerate(ev):
                if is_over:
                    over_arc[c] = arc_of[(i, k)]
        relations = []
        passes: list[list[tuple[int, int]]] = []
        for i, ev in enumerate(self.events):
            o = self.orientations[i]
            strand_passes = []
            for k, (c, is_over) in enumerate(ev):
                if is_over:
                    continue
                below, above = arc_of[(i, k)], arc_of[(i, k + 1)]
                inp, out = (below, above) if o > 0 else (above, below)
                s = self.sign(c)
                relations.append(Relation(out, inp, over_arc[c], s))
                strand_passes.append((over_arc[c], s))
            if o < 0:
                strand_passes.reverse()
            passes.append(strand_passes)
        return WirtingerPresentation(n, relations, meridians, passes,
                                     [o > 0 for o in self.orientations])

    # -- planar data -------------------------------------------------------

    def _segments(self):
        """Segment ids and the geometric PD tuple of every crossing."""
        seg: dict[tuple[int, int], int] = {}
        n = 0
        for i, ev in enumerate(self.events):
            for k in range(len(ev) + 1):
                seg[(i, k)] = n
                n += 1
        where: dict[tuple[int, bool], tuple[int, int]] = {}
        for i, ev in enumerate(self.events):
            for k, (c, is_over) in enumerate(ev):
                where[(c, is_over)] = (i, k)
        pd = []
        for c, x in enumerate(self.crossings):
            ui, uk = where[(c, False)]
            oi, ok = where[(c, True)]
            u_before, u_after = seg[(ui, uk)], seg[(ui, uk + 1)]
            o_before, o_after = seg[(oi, ok)], seg[(oi, ok + 1)]
            if x.geo_sign > 0:
                ccw = (u_before, o_after, u_after, o_before)
            else:
                ccw = (u_before, o_before, u_after, o_after)
            if self.orientations[ui] < 0:
                ccw = ccw[2:] + ccw[:2]
            pd.append((*ccw, self.sign(c)))
        bottom = [seg[(i, 0)] for i in range(self.m)]
        top = [seg[(i, len(ev))] for i, ev in enumerate(self.events)]
        return n, pd, bottom, top

    def _close(self, matching: Sequence[tuple[str, int, str, int]]) -> LinkDiagram:
        n, pd, bottom, top = self._segments()
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        end = {"t": top, "b": bottom}
        for e1, i, e2, j in matching:
            ra, rb = find(end[e1][i - 1]), find(end[e2][j - 1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        label = {}
        for s in range(n):
            r = find(s)
            if r not in label:
                label[r] = len(label) + 1
        xs = [tuple(label[find(e)] for e in x[:4]) + (x[4],) for x in pd]
        used = {e for x in xs for e in x[:4]}
        # order components by the strand through them
        order = []
        for i in range(self.m):
            e = label[find(bottom[i])]
            if e not in order:
                order.append(e)
        d = LinkDiagram.from_crossings(xs, order=[e for e in order if e in used])
        # components follow strand order; crossing-free strands become loops
        by_edge = {e: c for c in d.components for e in c}
        comps: list[tuple[int, ...]] = []
        for e in order:
            c = by_edge.get(e, (e,))
            if c not in comps:
                comps.append(c)
        comps.extend(c for c in d.components if c not in comps)
        return LinkDiagram(d.crossings, tuple(comps))


def close_link(d: StringLinkDiagram) -> LinkDiagram:
    """Closure ``L_S``: top end of strand i joined to its bottom end."""
    return d._close([("t", i, "b", i) for i in range(1, d.m + 1)])


def knot_matching(m: int) -> list[tuple[str, int, str, int]]:
    """End pairing of the band closure with ``B_{i+1}`` below ``B_i``."""
    if m == 1:
        return [("t", 1, "b", 1)]
    pairs = [("t", 1, "t", 2)]
    pairs += [("b", i, "t", i + 2) for i in range(1, m - 1)]
    pairs.append(("b", m - 1, "b", m))
    return pairs


def close_knot(d: StringLinkDiagram) -> LinkDiagram:
    """Knot closure ``K_S`` obtained by banding neighbouring strands."""
    k = d._close(knot_matching(d.m))
    if k.n_components != 1:
        raise DiagramError("band closure did not produce a knot")
    return k


def braid_closure(b: Braid) -> LinkDiagram:
    """Ordinary closure of any braid with every strand oriented upward."""
    at = list(range(b.strands))
    seg_of_pos = list(range(b.strands))
    n = b.strands
    first = list(range(b.strands))
    xs = []
    for a in b.word:
        k = abs(a) - 1
        bl, br = seg_of_pos[k], seg_of_pos[k + 1]
        tl, tr = n, n + 1
        n += 2
        if a > 0:  # right strand over, geometric sign -1
            xs.append((bl, br, tr, tl, -1))
        else:
            xs.append((br, tr, tl, bl, 1))
        seg_of_pos[k], seg_of_pos[k + 1] = tl, tr
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for p in range(b.strands):
        ra, rb = find(seg_of_pos[p]), find(first[p])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    label = {}
    for s in range(n):
        label.setdefault(find(s), len(label) + 1)
    crossings = [tuple(label[find(e)] for e in x[:4]) + (x[4],) for x in xs]
    used = {e for x in crossings for e in x[:4]}
    free = len({label[find(p)] for p in first} - used)
    return LinkDiagram.from_crossings(crossings, free_loops=free)


# ---------------------------------------------------------------------------
# Factorization check


@dataclass
class VerificationReport:
    """Both sides of ``nabla_L = nabla_K Gamma`` through ``z^degree``."""

    m: int
    q: int
    degree: int
    nabla_l: ConwayPoly
    nabla_k: ConwayPoly
    gamma: ZSeries
    product: ZSeries
    linking: LinkingData
    unit: int
    unit_gamma: ZSeries
    source: dict | None = None

    @property
    def mismatches(self) -> list[int]:
        return [k for k in range(self.degree + 1) if self.nabla_l[k] != self.product[k]]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def unit_gamma_matches(self) -> bool:
        """Whether ``nabla_L`` equals ``(1+u)^k Gamma`` on its own."""
        return all(self.nabla_l[k] == self.unit_gamma[k] for k in range(self.degree + 1))

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "m": self.m, "q": self.q, "degree": self.degree,
               "nabla_L": self.nabla_l.to_json(), "nabla_K": self.nabla_k.to_json(),
               "gamma_z": self.gamma.to_json(),
               "nabla_K_gamma": self.product.to_json(),
               "pass": self.passed, "mismatch_degrees": self.mismatches,
               "linking": self.linking.to_json(),
               "unit_exponent": self.unit,
               "unit_gamma_z": self.unit_gamma.to_json(),
               "unit_gamma_matches": self.unit_gamma_matches}
        if self.source is not None:
            out["input"] = self.source
        return out


def verify_factorization(d: StringLinkDiagram, q: int,
                         max_crossings: int | None = None) -> VerificationReport:
    """Compare the skein Conway polynomials of both closures with ``Gamma``.

    ``Gamma`` comes from a mu-bar table of depth ``q`` computed from the
    Wirtinger longitudes, so the comparison runs through ``z^(q-1)``.  A
    mismatch is returned in the report, never raised.  The report also
    records whether ``nabla_L`` equals ``Gamma`` times the linking unit
    ``(1+u)^k`` (see ``linking_unit_exponent``) with no knot factor.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    lw = nilpotent_longitudes(d.wirtinger(), q)
    lk = LinkingData.from_longitudes(lw)
    mu = mu_table(lw, q)
    g = gamma(mu).gamma
    k = linking_unit_exponent(lk)
    gu = gamma(mu, unit=k).gamma if k else g
    nl = conway_skein(close_link(d), max_crossings)
    nk = conway_skein(close_knot(d), max_crossings)
    deg = q - 1
    nk_z = nk.to_zseries(deg)
    src = d.source.to_json() if d.source is not None else None
    return VerificationReport(d.m, q, deg, nl, nk, g, nk_z * g, lk, k, gu, src)
