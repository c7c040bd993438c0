import pytest

from mubar.milnor import (LinkingData, LongitudeError, MuTable, abelian_fox, c_matrix_from_fox,
                          c_matrix_from_mu, chat_from_mu, chat_matrix, degeneracy_check,
                          degeneracy_check_multi, fox_derivative, laurent_to_useries, mu_table)
from mubar.series import USeries
from mubar.diagrams import StringLinkDiagram
from mubar.words import Braid, Word, nilpotent_longitudes

HOPF = [Word.parse("X1^-1 X2"), Word.parse("X2^-1 X1")]


def test_golden_table():
    t = mu_table(HOPF, 6)
    assert t[(1, 1)] == -1 and t[(2, 1)] == 1
    assert t[(1, 1, 1)] == 1 and t[(2, 1, 1)] == 0
    assert t.first_nonvanishing() == 2
    assert t.vanishes_below(2) and not t.vanishes_below(3)


def test_trivial_table_is_empty():
    t = mu_table([Word()] * 3, 5)
    assert t.entries == {} or all(v == 0 for v in t.entries.values())
    assert t.first_nonvanishing() is None


def test_rejects_unnormalized():
    with pytest.raises(LongitudeError):
        mu_table([Word.parse("X2"), Word.parse("X1")], 3)
    with pytest.raises(LongitudeError):
        mu_table([], 3)


def test_table_json_round_trip():
    t = mu_table(HOPF, 4)
    data = t.to_json()
    assert list(data) == ["m", "q", "mu"]
    keys = list(data["mu"])
    assert keys[0] == "1,1"
    assert MuTable.from_json(data) == t


def test_linking_data():
    lk = LinkingData.from_longitudes(HOPF)
    assert lk.l == ((-1, 1), (1, -1))
    assert lk.tau(1) == (-1, 1)
    assert not lk.split
    assert LinkingData.from_matrix([[0, 0], [0, 0]]).split


def test_fox_derivative():
    w = Word.parse("X1 X2 X1^-1")
    assert fox_derivative(w, 1) == {Word(): 1, w: -1}
    assert fox_derivative(w, 2) == {Word.gen(1): 1}
    assert abelian_fox(w, 1, 2) == {(0, 0): 1, (0, 1): -1}
    # fundamental formula: sum_j (x_j - 1) d w / d x_j = w - 1, abelianized
    lhs = {}
    for j in (1, 2):
        for e, c in abelian_fox(w, j, 2).items():
            up = tuple(v + (k == j - 1) for k, v in enumerate(e))
            lhs[up] = lhs.get(up, 0) + c
            lhs[e] = lhs.get(e, 0) - c
    lhs = {e: c for e, c in lhs.items() if c}
    assert lhs == {(0, 1): 1, (0, 0): -1}


def test_laurent_to_useries():
    assert laurent_to_useries({(1, 0): 1, (0, 0): -1}, 3) == USeries((0, 1), 3)


def test_golden_c_matrix():
    c = c_matrix_from_mu(mu_table(HOPF, 6))
    inv = [(-1) ** k for k in range(c.q + 1)]
    assert list(c[1, 1].coeffs) == [-x for x in inv]
    assert list(c[1, 2].coeffs) == inv
    assert c_matrix_from_fox(HOPF, c.q) == c


def test_chat_routes_agree():
    lw = [Word.parse("X1^-1 X2 X3 X2^-1 X3^-1 X1"), Word.parse("X3 X1 X3^-1 X1^-1"), Word()]
    t = mu_table(lw, 5)
    assert chat_from_mu(t) == chat_matrix(lw, 3)
    assert chat_matrix(lw, 3).specialize() == c_matrix_from_fox(lw, 3)


def test_degeneracy_on_borromean():
    d = StringLinkDiagram.from_braid(Braid(3, (1, -2, 1, -2, 1, -2)))
    lw = nilpotent_longitudes(d.wirtinger(), 6)
    c = c_matrix_from_fox(lw, 4)
    assert degeneracy_check(c).ok
    lk = LinkingData.from_longitudes(lw)
    rep = degeneracy_check_multi(chat_matrix(lw, 4), lk)
    assert rep.ok and rep.failures() == []


def test_degeneracy_detects_garbage():
    lw = [Word.parse("X2 X3 X2^-1 X3^-1"), Word(), Word()]
    rep = degeneracy_check(c_matrix_from_fox(lw, 3))
    assert not rep.ok
    assert rep.failures()
