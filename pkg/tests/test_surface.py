import pytest

from curvecomplex import words as W
from curvecomplex.surface import ModelMismatch, RibbonSurface, UnsupportedSurface, build_surface


def walks(surface):
    return sorted(W.format_word(w) for w in surface.boundary_walks)


def test_punctured_torus():
    S = build_surface(1, 1)
    assert S.rank == 2 and S.euler_characteristic == -1
    assert walks(S) == ["abAB"]


def test_four_holed_sphere_walks():
    S = build_surface(0, 4)
    assert S.rank == 3
    outer = W.format_word(W.canonical_cyclic(W.inverse(W.parse_word("abc", 3)), 3))
    assert walks(S) == sorted(["a", "b", "c", outer])


@pytest.mark.parametrize("g,n", [(0, 3), (0, 5), (0, 6), (1, 2), (1, 3)])
def test_face_tracing_recovers_type(g, n):
    S = build_surface(g, n)
    assert (S.genus, S.boundary_count) == (g, n)
    assert len(S.faces) == n
    assert S.rank == 2 * g + n - 1
    # every end is used by exactly one face
    assert sorted(e for f in S.faces for e in f) == sorted(S.cyclic_order)


def test_unsupported_surface():
    with pytest.raises(UnsupportedSurface):
        build_surface(9, 9)


def test_json_roundtrip():
    S = build_surface(1, 2)
    assert RibbonSurface.from_dict(S.to_dict()) == S
    assert S.to_dict()["cyclic_order"][:4] == ["a+", "b+", "a-", "b-"]


def test_mismatched_order_is_rejected():
    data = build_surface(0, 4).to_dict()
    data["g"], data["n"] = 1, 2
    with pytest.raises(ModelMismatch):
        RibbonSurface.from_dict(data)


def test_cyc_is_a_circular_order():
    S = build_surface(1, 1)
    a, b, A, B = S.cyclic_order
    assert S.cyc(a, b, A) == 1 and S.cyc(a, A, b) == -1
    assert S.cyc(b, A, a) == S.cyc(a, b, A)
