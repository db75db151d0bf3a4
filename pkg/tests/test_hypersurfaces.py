import pytest

from gridlab.errors import (
    BadCharacteristic,
    BadReduction,
    DimensionMismatch,
    EmptySample,
    UnsupportedParameters,
)
from gridlab.fields import GF, QQ
from gridlab.poly import BiHomPoly, MultiPoly, bihomogenize
from gridlab.hypersurfaces import (
    Hypersurface,
    OpenSet,
    ProjPoint,
    almost_equal_sampled,
    construct,
    proj_points,
    reduce_hypersurface_mod,
    reduce_poly_mod,
    smallest_nonresidue,
)

V4 = ("x0", "x1", "y0", "y1")


def bihom(expr, field=QQ, vars=V4):
    poly = MultiPoly.parse(field, vars, expr)
    half = len(vars) // 2
    return BiHomPoly(poly, vars[:half], vars[half:])


def H(expr, field=QQ, vars=V4):
    return Hypersurface(bihom(expr, field, vars))


# -- points ------------------------------------------------------------------------


def test_projpoint_normalization():
    p = ProjPoint(QQ, [2, 4, 6])
    assert [c.val for c in p.coords] == [1, 2, 3]
    assert p == ProjPoint(QQ, [1, 2, 3])
    assert hash(p) == hash(ProjPoint(QQ, [3, 6, 9]))


def test_projpoint_rejects_zero():
    with pytest.raises(DimensionMismatch):
        ProjPoint(QQ, [0, 0, 0])


def test_projpoint_parse():
    p = ProjPoint.parse(GF(7), "2:4:6")
    assert [c.val for c in p.coords] == [1, 2, 3]


def test_proj_points_count():
    for p, s in ((3, 1), (5, 1), (3, 2), (5, 2)):
        pts = list(proj_points(GF(p), s))
        expected = sum(p**k for k in range(s + 1))
        assert len(pts) == expected
        assert len(set(pts)) == expected


# -- open sets -----------------------------------------------------------------------


def test_open_set_complement_of_points():
    F = GF(5)
    pts = [ProjPoint(F, [1, 2]), ProjPoint(F, [0, 1])]
    X = OpenSet.complement_of_points(pts, ("x0", "x1"))
    for q in proj_points(F, 1):
        assert X.contains(q) == (q not in pts)


def test_open_set_json_roundtrip():
    F = GF(5)
    X = OpenSet.complement_of_points([ProjPoint(F, [1, 1])], ("x0", "x1"))
    X2 = OpenSet.from_json(X.to_json())
    for q in proj_points(F, 1):
        assert X.contains(q) == X2.contains(q)


def test_open_set_reduce_mod():
    X = OpenSet(1, [MultiPoly.parse(QQ, ("x0", "x1"), "x0 - x1")])
    Xp = X.reduce_mod(5)
    assert not Xp.contains(ProjPoint(GF(5), [1, 1]))
    assert Xp.contains(ProjPoint(GF(5), [1, 2]))


# -- hypersurfaces -------------------------------------------------------------------


def test_hypersurface_monic_and_bidegree():
    h = H("2*x0*y0 + 2*x1*y1")
    assert h.bidegree == (1, 1)
    assert h.s == 1
    assert h.form.poly == bihom("x0*y0 + x1*y1").poly


def test_section():
    h = H("x0*y1 - x1*y0")
    u = ProjPoint(QQ, [1, 2])
    sec = h.section(u)
    assert sec == MultiPoly.parse(QQ, ("y0", "y1"), "y1 - 2*y0")


def test_section_degree_drop_visible():
    # x-dependence concentrated on y0: a section can drop y-degree
    h = H("x0*y0*y1 + x1*y1**2")
    u = ProjPoint(QQ, [0, 1])
    assert h.section(u) == MultiPoly.parse(QQ, ("y0", "y1"), "y1**2")


def test_contains_fiber():
    h = H("x0*y1 - x1*y1")  # vanishes on all of P^1 x {(1:0)}
    assert h.contains_fiber(ProjPoint(QQ, [1, 0]))
    assert not h.contains_fiber(ProjPoint(QQ, [1, 1]))


def test_hypersurface_json_roundtrip():
    h = H("x0*y1**2 - x1*y0**2 + 3*x0*y0*y1")
    h2 = Hypersurface.from_json(h.to_json())
    assert h2.form.poly == h.form.poly
    assert h2.bidegree == h.bidegree


def test_reduce_mod():
    f = MultiPoly.parse(QQ, ("x",), "1/3*x + 5")
    r = reduce_poly_mod(f, 7)
    assert r == MultiPoly.parse(GF(7), ("x",), "5*x + 5")
    with pytest.raises(BadReduction):
        reduce_poly_mod(f, 3)  # denominator 3 vanishes


def test_reduce_hypersurface_bad_denominator():
    h = H("x0*y1 + 1/5*x0*y0")  # non-leading coefficient keeps its denominator
    with pytest.raises(BadReduction):
        reduce_hypersurface_mod(h, 5)


# -- constructions -------------------------------------------------------------------


def test_construct_1a():
    c = construct("1a", 5)
    assert c.s == 2
    assert c.hypersurface.bidegree == (1, 1)
    assert c.affine == MultiPoly.parse(
        GF(5), ("x1", "x2", "y1", "y2"), "x1*y1 + x2*y2 - 1"
    )


def test_construct_1b_radius():
    assert smallest_nonresidue(5) == 2
    c7 = construct("1b", 7)  # 7 = 3 mod 4: unit sphere
    assert "6" in repr(c7.affine) or "- 1" in repr(c7.affine)
    c5 = construct("1b", 5)  # radius = smallest non-residue
    assert c5.s == 3
    with pytest.raises(BadCharacteristic):
        construct("1b", 2)


def test_construct_guards():
    with pytest.raises(UnsupportedParameters):
        construct("1a", 5, 3)
    with pytest.raises(UnsupportedParameters):
        construct("1c", 5, 1)
    with pytest.raises(UnsupportedParameters):
        construct("zz", 5)


def test_construct_1c_degree():
    c = construct("1c", 3, 2)
    assert c.affine.degree() <= 2
    assert c.hypersurface.s == 2


def test_construct_1d_shape():
    c = construct("1d", 3, 2)
    # norm of x2+y2 minus x1*y1
    assert c.affine.degree_in("x1") == 1
    assert c.affine.degree_in("y1") == 1


# -- sampled equality -----------------------------------------------------------------


def test_almost_equal_sampled_same():
    h1 = H("x0*y1 - x1*y0")
    h2 = H("3*x0*y1 - 3*x1*y0")
    X = OpenSet.full(1)
    eq, witness = almost_equal_sampled(h1, h2, X, X, [5, 7])
    assert eq and witness is None


def test_almost_equal_sampled_differs():
    h1 = H("x0*y1 - x1*y0")
    h2 = H("x0*y0 + x1*y1")
    X = OpenSet.full(1)
    eq, witness = almost_equal_sampled(h1, h2, X, X, [5])
    assert not eq
    p, u, v = witness
    assert p == 5


def test_almost_equal_sampled_empty():
    h1 = H("x0*y1 - x1*y0")
    X = OpenSet.full(1)
    with pytest.raises(EmptySample):
        almost_equal_sampled(h1, h1, X, X, [])
