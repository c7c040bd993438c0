import pytest

from mubar.diagrams import (DEFAULT_MAX_CROSSINGS, CrossingLimitError, DiagramError, LinkDiagram,
                            SLCrossing, StringLinkDiagram, braid_closure, close_knot, close_link,
                            conway_skein, default_max_crossings, knot_matching, linking_numbers,
                            verify_factorization)
from mubar.factor import SCHEMA
from mubar.series import ConwayPoly
from mubar.words import Braid

HOPF_PD = {"components": 2, "crossings": [[1, 3, 2, 4, "+"], [3, 1, 4, 2, "+"]]}


def nabla(word, strands, **kw):
    return conway_skein(braid_closure(Braid(strands, word)), **kw)


def test_unknots():
    assert conway_skein(LinkDiagram.from_crossings([], free_loops=1)) == ConwayPoly([1])
    assert nabla((1,), 2) == ConwayPoly([1])
    assert nabla((1, -2), 3) == ConwayPoly([1])


def test_split_links_vanish():
    assert conway_skein(LinkDiagram.from_crossings([], free_loops=2)).is_zero()
    assert nabla((), 2).is_zero()
    assert nabla((2, 2), 3).is_zero()


def test_trefoil_and_figure_eight():
    assert nabla((1, 1, 1), 2) == ConwayPoly([1, 0, 1])
    assert nabla((-1, -1, -1), 2) == ConwayPoly([1, 0, 1])
    assert nabla((1, -2, 1, -2), 3) == ConwayPoly([1, 0, -1])


def test_normalizations_differ_by_mirror():
    std = nabla((1, 1), 2, normalization="standard")
    assert nabla((1, 1), 2) == std.mirror()
    with pytest.raises(ValueError):
        nabla((1, 1), 2, normalization="other")


def test_markov_and_conjugation_invariance():
    base = nabla((1, -2, 1, -2, 1, -2), 3)
    assert nabla((-2, 1, -2, 1, -2, 1), 3) == base          # conjugate
    assert nabla((1, -2, 1, -2, 1, -2, 3), 4) == base       # stabilization
    assert nabla((1, 2, 1, 1), 3) == nabla((2, 1, 2, 1), 3)  # braid relation


def test_parity_of_conway():
    for word, strands, comps in [((1, 1), 2, 2), ((1, 1, 2, 2), 3, 3), ((1, 1, 1), 2, 1)]:
        p = nabla(word, strands)
        assert all(c == 0 for k, c in enumerate(p.coeffs) if (k + comps) % 2 == 0)


def test_pd_input_and_linking():
    d = LinkDiagram.from_pd(HOPF_PD)
    assert d.n_components == 2
    assert abs(linking_numbers(d)[0][1]) == 1
    assert LinkDiagram.from_pd(d.to_pd()) == d
    with pytest.raises(DiagramError):
        LinkDiagram.from_pd({"components": 2, "crossings": [[1, 2, 3, 4, "x"]]})


def test_crossing_limit(monkeypatch):
    with pytest.raises(CrossingLimitError):
        nabla((1, 1, 1), 2, max_crossings=2)
    monkeypatch.setenv("MUBAR_MAX_CROSSINGS", "2")
    assert default_max_crossings() == 2
    with pytest.raises(CrossingLimitError):
        nabla((1, 1, 1), 2)
    monkeypatch.delenv("MUBAR_MAX_CROSSINGS")
    assert default_max_crossings() == DEFAULT_MAX_CROSSINGS == 18


def test_string_link_diagram():
    d = StringLinkDiagram.from_braid(Braid(3, (1, 1, 2, 2)))
    assert d.orientations == (1, -1, 1)
    assert StringLinkDiagram.from_json(d.to_json()) == d
    with pytest.raises(DiagramError):
        StringLinkDiagram.from_braid(Braid(2, (1,)))
    with pytest.raises(DiagramError):
        StringLinkDiagram(2, (SLCrossing(2, 1, -1),), (((0, False),), ((0, False),)))


def test_closures():
    d = StringLinkDiagram.from_braid(Braid(2, (1, 1)))
    assert close_link(d).n_components == 2
    assert conway_skein(close_link(d)) == ConwayPoly([0, -1])
    assert conway_skein(close_knot(d)) == ConwayPoly([1])
    for m in range(1, 6):
        k = close_knot(StringLinkDiagram.from_braid(Braid(m, ())))
        assert k.n_components == 1
    assert knot_matching(3) == [("t", 1, "t", 2), ("b", 1, "t", 3), ("b", 2, "b", 3)]


def test_closure_components_follow_strands():
    d = StringLinkDiagram.from_braid(Braid(3, (2, 2)))
    lk = linking_numbers(close_link(d))
    assert lk[0][1] == 0 and lk[0][2] == 0 and abs(lk[1][2]) == 1


def test_verify_golden_and_trivial():
    r = verify_factorization(StringLinkDiagram.from_braid(Braid(2, (1, 1))), 9)
    assert r.passed and r.degree == 8
    out = r.to_json()
    assert out["schema"] == SCHEMA and out["pass"] is True
    assert out["nabla_L"] == [0, -1] and out["nabla_K"] == [1]
    t = verify_factorization(StringLinkDiagram.from_braid(Braid(3, ())), 5)
    assert t.passed and t.nabla_l.is_zero()
    with pytest.raises(ValueError):
        verify_factorization(StringLinkDiagram.from_braid(Braid(2, ())), 1)


def test_verify_reports_mismatch_without_raising():
    r = verify_factorization(StringLinkDiagram.from_braid(Braid(3, (1, 1, 2, 2))), 9)
    assert not r.passed
    assert r.mismatches == [4]
    assert r.unit_gamma_matches
