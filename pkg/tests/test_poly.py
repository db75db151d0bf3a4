import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gridlab.errors import (
    BadCharacteristic,
    DegreeZero,
    ExactDivisionError,
    NotHomogeneous,
    ZeroPolynomial,
)
from gridlab.fields import GF, QQ
from gridlab.poly import (
    BiHomPoly,
    MultiPoly,
    bihomogenize,
    dehomogenize,
    divides,
    exact_div,
    gcd,
    group_degree,
    homogenize,
    resultant,
    squarefree_in_vars,
    squarefree_part,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(expr, field=QQ, vars=XY):
    return MultiPoly.parse(field, vars, expr)


# -- basics ------------------------------------------------------------------------


def test_parse_and_repr():
    f = P("x**2*y - 3*x + 1/2")
    assert f.degree() == 3
    assert f.degree_in("x") == 2
    assert f.degree_in("y") == 1


def test_graded_lex_leading():
    f = P("x*y + x**3 + y**2")
    e, c = f.leading()
    assert e == (3, 0)


def test_monic_idempotent():
    f = P("2*x**2 + 4*y")
    m = f.monic()
    assert m == P("x**2 + 2*y")
    assert m.monic() == m


def test_arith_ring_axioms():
    a, b, c = P("x + y"), P("x*y - 1"), P("y**2 + 3")
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == MultiPoly.zero(QQ, XY)
    assert (a * b).degree() == a.degree() + b.degree()


def test_pow_zero_exponent():
    assert P("x + y") ** 0 == MultiPoly.constant(QQ, XY, 1)


def test_evaluate_and_substitute():
    f = P("x**2 + y")
    assert f.evaluate([QQ.elem(2), QQ.elem(3)]).val == 7
    g = f.substitute({"x": P("y"), "y": P("x")}, new_vars=XY)
    assert g == P("y**2 + x")


def test_derivative():
    f = P("x**3*y + 2*x")
    assert f.derivative("x") == P("3*x**2*y + 2")
    assert f.derivative("y") == P("x**3")


def test_exact_div():
    a = P("(x + y)*(x - y)")
    assert exact_div(a, P("x + y")) == P("x - y")
    with pytest.raises(ExactDivisionError):
        exact_div(P("x**2 + y"), P("x + 1"))
    assert divides(P("x + y"), a)
    assert not divides(P("x + 1"), P("x**2 + y"))


# -- gcd / squarefree --------------------------------------------------------------


def test_gcd_examples():
    a = P("(x + y)**2*(x - y)")
    b = P("(x + y)*(x**2 + y**2)")
    assert gcd(a, b) == P("x + y")
    assert gcd(a, MultiPoly.zero(QQ, XY)) == a.monic()
    assert gcd(P("3"), a).is_constant()


def test_gcd_monic_normalization():
    g = gcd(P("2*x + 2*y"), P("4*x + 4*y"))
    assert g == P("x + y")


def test_gcd_over_fp():
    F5 = GF(5)
    a = P("(x + 2*y)**2*(x + y)", F5)
    b = P("(x + 2*y)*(x + 3*y)", F5)
    assert gcd(a, b) == P("x + 2*y", F5).monic()


def test_squarefree_part():
    f = P("(x + y)**3*(x - y)")
    sf = squarefree_part(f, "x")
    assert sf == P("(x + y)*(x - y)").monic()


def test_squarefree_char_guard():
    F3 = GF(3)
    with pytest.raises(BadCharacteristic):
        squarefree_part(P("x**3 + y**3", F3), "x")


def test_squarefree_in_vars():
    # the pass divides by gcd(f, df/dy), which also swallows the x-content
    f = P("x**2*(y - 1)**2", QQ, XY)
    assert squarefree_in_vars(f, ("y",)) == P("y - 1").monic()


# -- resultants --------------------------------------------------------------------


def test_resultant_example():
    a = MultiPoly.parse(QQ, ("x0", "x1", "y0", "y1"), "x0*y1 - x1*y0")
    b = MultiPoly.parse(QQ, ("x0", "x1", "y0", "y1"), "x0*y1 + x1*y0")
    r = resultant(a, b, "y1")
    assert r == MultiPoly.parse(QQ, ("x0", "x1", "y0", "y1"), "2*x0*x1*y0")


def test_resultant_degree_zero_guard():
    with pytest.raises(DegreeZero):
        resultant(P("y + 1"), P("y - 1"), "x")


def test_resultant_common_root():
    # shared factor (x - y) forces a zero resultant
    a = P("(x - y)*(x + 1)")
    b = P("(x - y)*(x + 2)")
    assert resultant(a, b, "x").is_zero()


def _random_sympy_pair(rng, nvars=2, deg=3):
    syms = sympy.symbols(f"v0:{nvars}")
    vars = tuple(str(s) for s in syms)

    def rand_poly():
        expr = 0
        for _ in range(rng.randint(2, 5)):
            mono = rng.randint(-4, 4)
            for s in syms:
                mono *= s ** rng.randint(0, deg)
            expr += mono
        return sympy.expand(expr)

    return syms, vars, rand_poly(), rand_poly()


def _to_multipoly(expr, syms, vars):
    poly = sympy.Poly(expr, *syms)
    terms = {}
    for mono, coeff in poly.terms():
        terms[tuple(int(e) for e in mono)] = QQ.elem(int(coeff))
    return MultiPoly(QQ, vars, terms)


@pytest.mark.parametrize("seed", range(8))
def test_gcd_matches_sympy(seed):
    rng = random.Random(seed)
    syms, vars, e1, e2 = _random_sympy_pair(rng)
    common = syms[0] + syms[1] - 2
    e1, e2 = sympy.expand(e1 * common), sympy.expand(e2 * common)
    if e1 == 0 or e2 == 0:
        return
    a, b = _to_multipoly(e1, syms, vars), _to_multipoly(e2, syms, vars)
    expected = sympy.gcd(e1, e2)
    got = gcd(a, b)
    want = _to_multipoly(sympy.expand(expected), syms, vars).monic()
    assert got == want


@pytest.mark.parametrize("seed", range(8))
def test_resultant_matches_sympy(seed):
    rng = random.Random(seed + 100)
    syms, vars, e1, e2 = _random_sympy_pair(rng, deg=2)
    x = syms[0]
    if sympy.degree(e1, x) < 1 or sympy.degree(e2, x) < 1:
        return
    a, b = _to_multipoly(e1, syms, vars), _to_multipoly(e2, syms, vars)
    expected = sympy.expand(sympy.resultant(e1, e2, x))
    got = resultant(a, b, vars[0])
    if expected == 0:
        assert got.is_zero()
    else:
        assert got == _to_multipoly(expected, syms, vars)


# -- hypothesis properties ----------------------------------------------------------

small_polys = st.builds(
    lambda terms: MultiPoly(
        QQ,
        XY,
        {
            (ex, ey): QQ.elem(c)
            for (ex, ey, c) in terms
            if c != 0
        },
    ),
    st.lists(
        st.tuples(
            st.integers(0, 3),
            st.integers(0, 3),
            st.integers(-3, 3),
        ),
        min_size=0,
        max_size=4,
    ),
)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_gcd_common_factor_property(a, b, c):
    if a.is_zero() or b.is_zero() or c.is_zero() or c.is_constant():
        return
    g = gcd(a * c, b * c)
    assert divides(c, g)  # c | gcd(ac, bc)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_gcd_symmetric_and_divides(a, b):
    if a.is_zero() and b.is_zero():
        return
    g = gcd(a, b)
    assert g == gcd(b, a)
    if not a.is_zero():
        assert divides(g, a)
    if not b.is_zero():
        assert divides(g, b)


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_mul_degree_additive(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree() == a.degree() + b.degree()


# -- homogenization ------------------------------------------------------------------


def test_homogenize_roundtrip():
    vars3 = XY + ("w",)
    f = P("x**2 + y + 1", QQ, vars3)
    h = homogenize(f, vars3, "w")
    assert group_degree(h, vars3) == 2
    assert dehomogenize(h, "w") == f


def test_group_degree_rejects_inhomogeneous():
    f = P("x**2 + y", QQ, XY)
    with pytest.raises(NotHomogeneous):
        group_degree(f, XY)


def test_bihomogenize():
    vars = ("x1", "x2", "y1", "y2")
    affine = MultiPoly.parse(QQ, vars, "x1*y1 + x2*y2 - 1")
    B = bihomogenize(affine, 2)
    assert B.bidegree == (1, 1)
    expected = MultiPoly.parse(
        QQ,
        ("x0", "x1", "x2", "y0", "y1", "y2"),
        "x1*y1 + x2*y2 - x0*y0",
    )
    assert B.poly == expected


def test_bihom_product_adds_bidegrees():
    vars = ("x0", "x1", "y0", "y1")
    a = BiHomPoly(MultiPoly.parse(QQ, vars, "x0*y0 + x1*y1"), vars[:2], vars[2:])
    b = BiHomPoly(MultiPoly.parse(QQ, vars, "y0 - y1"), vars[:2], vars[2:])
    assert (a * b).bidegree == (1, 2)


def test_json_roundtrip():
    for f in (
        P("x**2*y - 3/4*x + 1"),
        P("x + 2*y", GF(7)),
        MultiPoly.parse(GF(3, 2), XY, "x*y + 2"),
    ):
        assert MultiPoly.from_json(f.to_json()) == f
