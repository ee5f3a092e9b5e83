import pytest

from curvecomplex import resolution as RS
from curvecomplex.curves import canon_curve, enumerate_curves, intersection_profile
from curvecomplex.lab import slope_dictionary
from curvecomplex import slopes as SL


def c(S, w):
    return canon_curve(S, w)


def test_torus_products(torus):
    assert str(RS.resolve_curves(torus, c(torus, "a"), c(torus, "b"))) == "ab"
    assert str(RS.resolve_curves(torus, c(torus, "b"), c(torus, "a"))) == "aB"


def test_torus_products_follow_the_chart(torus):
    table = slope_dictionary(torus, 4)
    inv = {s: x for x, s in table.items()}
    for x, sx in table.items():
        for y, sy in table.items():
            if x != y and SL.farey_rel(sx, sy) and SL.resolve(sx, sy) in inv:
                assert RS.resolve_curves(torus, x, y) == inv[SL.resolve(sx, sy)]


def test_sphere_product_is_the_other_common_neighbour(sphere4):
    x, y = c(sphere4, "ab"), c(sphere4, "bc")
    pair = {RS.resolve_curves(sphere4, x, y), RS.resolve_curves(sphere4, y, x)}
    assert pair == {c(sphere4, "ac"), c(sphere4, "abcB")}
    # brute force: classes perp0 to both, and not top-related to each other
    ball = enumerate_curves(sphere4, 6)
    common = [z for z in ball if all(intersection_profile(sphere4, z, w).kind == "perp0" for w in (x, y))]
    assert pair <= set(common)
    u, v = sorted(pair)
    assert not RS.is_top(sphere4, u, v)


def test_product_needs_top_relation(sphere5):
    with pytest.raises(RS.NotTopRelated):
        RS.resolve_curves(sphere5, c(sphere5, "ab"), c(sphere5, "cd"))


def test_fn_system_checks(sphere5):
    with pytest.raises(RS.PreconditionFailed):
        RS.FNSystem(())
    with pytest.raises(RS.PreconditionFailed):
        RS.FNSystem((c(sphere5, "ab"), c(sphere5, "bc"))).check(sphere5)
    fn = RS.FNSystem((c(sphere5, "ab"), c(sphere5, "abc")))
    fn.check(sphere5)
    assert fn.is_maximal(sphere5)
    assert fn.first(1).classes[0] == c(sphere5, "abc")


def _slope_class(torus, bound=6):
    table = slope_dictionary(torus, bound)
    return {s: x for x, s in table.items()}, sorted(table, key=lambda x: x.sort_key)


def test_reduce_step_examples(torus):
    inv, pool = _slope_class(torus)
    S = lambda t: inv[SL.Slope.parse(t)]
    b1, b2 = RS.reduce_step(torus, RS.FNSystem((S("inf"),)), S("1/2"), pool=pool, max_len=99)
    assert (b1, b2) == (S("1/1"), S("0/1"))
    b1, b2 = RS.reduce_step(torus, RS.FNSystem((S("0/1"),)), S("2/1"), pool=pool, max_len=99)
    assert (b1, b2) == (S("inf"), S("1/1"))


def test_reduce_step_precondition(torus):
    fn = RS.FNSystem((c(torus, "a"),))
    with pytest.raises(RS.PreconditionFailed):
        RS.reduce_step(torus, fn, c(torus, "b"))


def test_reduce_step_perp0_split_on_sphere(sphere4):
    table = slope_dictionary(sphere4, 6)
    inv = {s: x for x, s in table.items()}
    pool = sorted(table, key=lambda x: x.sort_key)
    fn = RS.FNSystem((inv[SL.INF],))
    a = inv[SL.canon(1, 2)]
    b1, b2 = RS.reduce_step(sphere4, fn, a, pool=pool, max_len=99)
    assert RS.check_reduction(sphere4, fn, a, b1, b2) == []
    assert intersection_profile(sphere4, b1, b2).kind == "perp0"


def test_express_examples(torus):
    inv, pool = _slope_class(torus)
    fn = RS.FNSystem((inv[SL.INF],))
    a = inv[SL.canon(1, 1)]
    assert RS.express(torus, fn, a, pool=pool, max_len=99) == RS.Leaf(a)
    a = inv[SL.canon(2, 5)]
    e = RS.express(torus, fn, a, pool=pool, max_len=99)
    assert RS.depth(e) >= 2
    assert RS.evaluate(torus, e) == a
    assert all(intersection_profile(torus, x, inv[SL.INF]).geo <= 1 for x in RS.leaves(e))


def test_expression_json_roundtrip(torus):
    e = RS.Mul(RS.Leaf(c(torus, "ab")), RS.Leaf(c(torus, "b")))
    text = RS.expression_to_json(e)
    assert text == '["mul", ["leaf", "ab"], ["leaf", "b"]]'
    assert RS.expression_from_json(torus, text) == e


def test_check_reduction_reports_bad_split(torus):
    fn = RS.FNSystem((c(torus, "a"),))
    bad = RS.check_reduction(torus, fn, c(torus, "abb"), c(torus, "a"), c(torus, "b"))
    assert bad
