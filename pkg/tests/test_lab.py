import pytest

from curvecomplex import lab as LAB
from curvecomplex import slopes as SL
from curvecomplex.curves import MappingClassWord, canon_curve, classify_curve, intersection_profile
from curvecomplex.surface import build_surface


def test_torus_dictionary_is_the_torus_chart(torus):
    table = LAB.slope_dictionary(torus, 4)
    assert table[canon_curve(torus, "a")] == SL.INF
    assert table[canon_curve(torus, "b")] == SL.ZERO
    assert table[canon_curve(torus, "aab")] == SL.canon(2, 1)
    assert len(table) == len(SL.slopes_up_to(4))


def test_sphere_dictionary_doubles_determinants(sphere4):
    table = LAB.slope_dictionary(sphere4, 3)
    items = list(table.items())
    for i, (x, s) in enumerate(items):
        for y, t in items[i + 1 :]:
            assert intersection_profile(sphere4, x, y).geo == 2 * abs(SL.det(s, t))


def test_farey_and_resolution_small():
    assert LAB.verify_farey(3).ok
    assert LAB.verify_resolution_slopes(3).ok


def test_pentagon_small_ball():
    rep = LAB.verify_pentagon(LAB.fixture_ball(0, 5, 4))
    assert rep.ok and rep.checked > 0 and rep.bounded


def test_pentagon_needs_five_holed_sphere():
    with pytest.raises(LAB.WrongSurface):
        LAB.verify_pentagon(LAB.fixture_ball(1, 2, 3))


def test_common_neighbour_examples(sphere5):
    ball = LAB.fixture_ball(0, 5, 6)
    common = lambda x, y: set(ball.disjoint_from(canon_curve(sphere5, x))) & set(ball.disjoint_from(canon_curve(sphere5, y)))
    # x5 is the outer circle, so the curve around x1..x4 is peripheral
    assert common("ab", "cd") == set()
    assert common("ab", "bc") == {canon_curve(sphere5, "abc")}


def test_unique_common_neighbour_small():
    rep = LAB.verify_unique_common_neighbor(LAB.fixture_ball(1, 2, 4))
    assert rep.ok and "1" in rep.notes["histogram"]


def test_configs():
    for g, n, k in ((0, 5, 4), (1, 2, 8)):
        rep = LAB.verify_config_identities(build_surface(g, n))
        assert rep.ok and rep.checked == k
    with pytest.raises(LAB.WrongSurface):
        LAB.verify_config_identities(build_surface(1, 1))


def test_config_hypotheses(torus2):
    al, be, ga, de = LAB.find_config(torus2)
    kind = lambda x, y: intersection_profile(torus2, x, y).kind
    assert [kind(al, be), kind(be, ga), kind(ga, de)] == ["perp0", "perp", "perp"]
    assert {kind(al, ga), kind(al, de), kind(be, de)} == {"disjoint"}


def test_cuts_and_dimensions():
    assert LAB.verify_cuts(LAB.fixture_ball(1, 2, 5)).ok
    rep = LAB.verify_dimensions({(0, 5): 2, (1, 2): 4})
    assert rep.ok, rep.failures


def test_dimension_thresholds_are_minimal():
    # one letter less and the clique sizes are not reached yet
    for (g, n), L in LAB.DIMENSION_THRESHOLDS.items():
        if L > 1:
            assert not LAB.verify_dimensions({(g, n): L - 1}).ok


def test_cover_lifts(sphere5):
    spec = LAB.double_cover()
    lift = lambda w: LAB.lift_double_cover(spec, canon_curve(sphere5, w))
    assert classify_curve(spec.cover, lift("ab")) == "nonseparating"
    assert classify_curve(spec.cover, lift("abc")) != "nonseparating"
    assert intersection_profile(spec.cover, lift("ab"), lift("cd")).kind == "disjoint"
    with pytest.raises(LAB.NotEssential):
        lift("a")


def test_cover_small_ball():
    rep = LAB.verify_double_cover(4)
    assert rep.ok, rep.failures


def test_identity_braid_gives_identity(sphere5):
    spec = LAB.double_cover()
    base = LAB.fixture_ball(0, 5, 4).vertices
    phi = LAB.conjugate_by_lift(spec, MappingClassWord(), base)
    assert all(x == y for x, y in phi.mapping.items())
    cert = phi.certify()
    assert cert["preserves_disjointness"] and cert["preserves_separating"] and cert["witness"] is None


def test_find_braid(sphere5):
    u, v = canon_curve(sphere5, "abc"), canon_curve(sphere5, "ab")
    h = LAB.find_braid(sphere5, u, v)
    from curvecomplex.curves import apply_mapping_class

    assert apply_mapping_class(sphere5, h, u) == v
    with pytest.raises(LAB.SearchExhausted):
        LAB.find_braid(sphere5, u, canon_curve(sphere5, "abcBdbC"), budget=0)


def test_report_serialisation():
    rep = LAB.VerificationReport("x", checked=2)
    rep.fail("boom")
    assert not rep.ok
    assert rep.to_json() == '{"lemma": "x", "checked": 2, "failures": ["boom"], "bounded": true, "max_len": null}'
