"""Randomized checks of invariants not covered by the acceptance suites."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from mubar import cli
from mubar.diagrams import StringLinkDiagram, braid_closure, conway_skein
from mubar.factor import SeifertMatrix, gamma, potential
from mubar.milnor import abelian_fox, mu_table
from mubar.series import LaurentPoly, binomial_series, magnus_expand, u_of_z
from mubar.words import Braid, Word, nilpotent_longitudes

letters3 = st.sampled_from([1, -1, 2, -2])
words3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8).map(Word)


@settings(max_examples=300, deadline=None)
@given(words3)
def test_magnus_of_inverse(w):
    assert magnus_expand(w.inverse(), 3, 4) == magnus_expand(w, 3, 4).inverse()


@settings(max_examples=300, deadline=None)
@given(words3)
def test_fox_fundamental_formula(w):
    # sum_j (t_j - 1) d w / d x_j = t^w - 1 after abelianizing
    acc: dict = {}
    for j in (1, 2, 3):
        for e, c in abelian_fox(w, j, 3).items():
            up = tuple(v + (k == j - 1) for k, v in enumerate(e))
            acc[up] = acc.get(up, 0) + c
            acc[e] = acc.get(e, 0) - c
    acc = {e: c for e, c in acc.items() if c}
    top = tuple(w.exponent_sum(j) for j in (1, 2, 3))
    expected = {} if top == (0, 0, 0) else {top: 1, (0, 0, 0): -1}
    assert acc == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(letters3, max_size=6), letters3)
def test_conway_conjugation_and_stabilization(word, g):
    b = Braid(3, tuple(word))
    base = conway_skein(braid_closure(b))
    conj = Braid(3, (g,) + tuple(word) + (-g,))
    assert conway_skein(braid_closure(conj)) == base
    stab = Braid(4, tuple(word) + (3,))
    assert conway_skein(braid_closure(stab)) == base


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([(1, 1), (-1, -1), (2, 2), (-2, -2), (1, 2, 2, 1)]),
                max_size=3))
def test_gamma_two_forms_agree(blocks):
    word = tuple(x for blk in blocks for x in blk)
    d = StringLinkDiagram.from_braid(Braid(3, word))
    t = mu_table(nilpotent_longitudes(d.wirtinger(), 6), 6)
    g = gamma(t)
    direct = (g.phi_u * binomial_series(Fraction(g.e, 2), g.phi_u.q)).compose(u_of_z(g.phi_u.q))
    assert direct == g.gamma


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_potential_symmetry(rows):
    a = SeifertMatrix.of(rows)
    p = potential(a)
    flipped = LaurentPoly({-k: c for k, c in p.terms.items()})
    assert flipped == p * (-1) ** a.n


@settings(max_examples=40, deadline=None)
@given(st.lists(letters3, max_size=5))
def test_cli_deterministic(word):
    payload = f'{{"strands": 3, "word": {list(word)}}}'
    for cmd in ("mu", "conway", "gamma"):
        assert cli.run([cmd, "-i", payload, "-q", "4"]) == cli.run([cmd, "-i", payload, "-q", "4"])
