"""Plane projective curve toolkit: local intersection multiplicity, the
Moura maximal-multiplicity formula, the common-component rank test on
sections, squarefree-section testing and conic classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import (
    BadCharacteristic,
    CharacteristicTwo,
    DegreeTooHigh,
    MixedFields,
    NonTermination,
    PointNotRational,
    ZeroSection,
)
from .fields import Field, FieldElem
from .poly import (
    BiHomPoly,
    MultiPoly,
    exact_div,
    gcd,
    group_degree,
)
from .hypersurfaces import Hypersurface, ProjPoint

INFINITE = math.inf

_ITERATION_CAP = 10_000


class PlaneCurve:
    """Nonzero homogeneous form in (y0, y1, y2), stored monic."""

    __slots__ = ("form", "degree")

    def __init__(self, form: MultiPoly):
        if form.is_zero():
            raise ZeroSection("a plane curve needs a nonzero form")
        if len(form.vars) != 3:
            raise DegreeTooHigh("plane curves live in three homogeneous coordinates")
        self.degree = group_degree(form, form.vars)
        self.form = form.monic()

    def contains(self, v: ProjPoint) -> bool:
        return self.form.evaluate(list(v.coords)).is_zero()

    def __repr__(self):
        return f"PlaneCurve(deg {self.degree})[{self.form!r}]"


def moura_max(d1: int, d2: int) -> int:
    """Maximal intersection multiplicity at a generic point of an
    irreducible degree-d1 curve with a curve of degree <= d2 not
    containing it."""
    if d1 < 1 or d2 < 1:
        raise DegreeTooHigh("degrees must be positive")
    if d1 > d2:
        return (d2 * d2 + 3 * d2) // 2
    return d1 * d2 - (d1 * d1 - 3 * d1 + 2) // 2


def _magnitude(c: FieldElem):
    v = c.val
    if isinstance(v, Fraction):
        return abs(v)
    return v


def _embed_poly(F: MultiPoly, field: Field) -> MultiPoly:
    if F.field == field:
        return F
    try:
        terms = {e: field.elem(c) for e, c in F.terms.items()}
    except MixedFields:
        raise PointNotRational(
            f"curve over {F.field} cannot follow a point into {field}"
        ) from None
    return MultiPoly(field, F.vars, terms)


def _local_pair(F: PlaneCurve, G: PlaneCurve, v: ProjPoint):
    """Dehomogenize both curves in the chart of v's largest coordinate and
    translate v to the origin; returns (f, g, avar, bvar)."""
    field = v.field
    f = _embed_poly(F.form, field)
    g = _embed_poly(G.form, field)
    coords = list(v.coords)
    chart = 0
    best = None
    for i, c in enumerate(coords):
        if c.is_zero():
            continue
        m = _magnitude(c)
        if best is None or m > best:
            best, chart = m, i
    vars3 = f.vars
    inv = coords[chart].inv()
    aff = [c * inv for c in coords]
    keep = [v_ for i, v_ in enumerate(vars3) if i != chart]
    avar, bvar = keep
    f = f.substitute({vars3[chart]: field.one}, new_vars=vars3)
    g = g.substitute({vars3[chart]: field.one}, new_vars=vars3)
    a = MultiPoly.variable(field, vars3, avar)
    b = MultiPoly.variable(field, vars3, bvar)
    wa = aff[vars3.index(avar)]
    wb = aff[vars3.index(bvar)]
    f = f.substitute({avar: a + wa, bvar: b + wb}, new_vars=vars3)
    g = g.substitute({avar: a + wa, bvar: b + wb}, new_vars=vars3)
    return f, g, avar, bvar


def _univariate_consts(F: MultiPoly, var: str, other: str) -> list:
    """F with `other` set to 0, as a trimmed list of constant coefficients."""
    restricted = F.substitute({other: F.field.zero}, new_vars=F.vars)
    coeffs = [c.constant_value() for c in restricted.univariate(var)]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def intersection_multiplicity(F: PlaneCurve, G: PlaneCurve, v: ProjPoint):
    """Local intersection number I_v(F, G); INFINITE when the curves share
    a component through v.  Standard axiomatic reduction on affine local
    equations."""
    field = v.field
    f_form = _embed_poly(F.form, field)
    g_form = _embed_poly(G.form, field)
    coords = list(v.coords)
    if not f_form.evaluate(coords).is_zero() or not g_form.evaluate(coords).is_zero():
        return 0
    common = gcd(f_form, g_form)
    if common.degree() > 0:
        if common.evaluate(coords).is_zero():
            return INFINITE
        f_form = exact_div(f_form, common)
        g_form = exact_div(g_form, common)
        # components away from v contribute nothing
        if not f_form.evaluate(coords).is_zero() or not g_form.evaluate(
            coords
        ).is_zero():
            return 0
    f, g, avar, bvar = _local_pair(
        PlaneCurve(f_form), PlaneCurve(g_form), v
    )
    fuel = [_ITERATION_CAP]
    return _fulton(f, g, avar, bvar, fuel)


def _fulton(f: MultiPoly, g: MultiPoly, avar: str, bvar: str, fuel: list) -> int:
    field = f.field
    origin = {avar: field.zero, bvar: field.zero}
    total = 0
    while True:
        fuel[0] -= 1
        if fuel[0] < 0:
            raise NonTermination("multiplicity recursion exceeded its cap")
        zero_assign = [
            field.zero if v_ in (avar, bvar) else field.one for v_ in f.vars
        ]
        if not f.evaluate(zero_assign).is_zero() or not g.evaluate(
            zero_assign
        ).is_zero():
            return total
        f0 = _univariate_consts(f, avar, bvar)
        g0 = _univariate_consts(g, avar, bvar)
        r, s = len(f0) - 1, len(g0) - 1
        if r > s:
            f, g = g, f
            f0, g0 = g0, f0
            r, s = s, r
        if r == -1:
            # f is divisible by the second coordinate
            if s == -1:
                raise NonTermination("unexpected common local factor")
            b = MultiPoly.variable(field, f.vars, bvar)
            h = exact_div(f, b)
            ord_a = next(i for i, c in enumerate(g0) if not c.is_zero())
            total += ord_a
            f = h
            continue
        # lower the restriction degree of g
        lf, lg = f0[-1], g0[-1]
        a = MultiPoly.variable(field, f.vars, avar)
        g = g * lf - f * a ** (s - r) * lg
    # not reached


@dataclass
class RankTestReport:
    """Outcome of the section common-component linear-system rank test."""

    d1: int
    d2: int
    M: int
    N: int
    rank: int
    shares_component: bool

    def to_json(self) -> dict:
        return {
            "d1": self.d1,
            "d2": self.d2,
            "M": self.M,
            "N": self.N,
            "rank": self.rank,
            "shares_component": self.shares_component,
        }


def _monomials(nvars: int, degree: int):
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - k):
            yield (k,) + rest


def matrix_rank(rows: list, field: Field) -> int:
    """Exact rank by Gaussian elimination over the coefficient field."""
    m = [row[:] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next(
            (i for i in range(row, len(m)) if not m[i][col].is_zero()), None
        )
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col].inv()
        m[row] = [c * inv for c in m[row]]
        for i in range(len(m)):
            if i != row and not m[i][col].is_zero():
                factor = m[i][col]
                m[i] = [c - factor * d for c, d in zip(m[i], m[row])]
        rank += 1
        row += 1
        if row == len(m):
            break
    return rank


def common_component_rank_test(
    h1, h2, u: ProjPoint
) -> RankTestReport:
    """Decide whether the sections h1(u, ȳ) and h2(u, ȳ) share a factor by
    the rank of the linear system on cofactor coefficients: a relation
    h1(u,ȳ) g1(ȳ) + h2(u,ȳ) g2(ȳ) = 0 with deg g1 = d2-1, deg g2 = d1-1
    exists iff the M x N coefficient matrix has rank < N."""
    s1 = _as_section(h1, u)
    s2 = _as_section(h2, u)
    field = s1.field
    yvars = s1.vars
    d1 = group_degree(s1, yvars)
    d2 = group_degree(s2, yvars)
    if d1 < 1 or d2 < 1:
        raise ZeroSection("sections must have positive degree")
    M = comb(d1 + d2 + 1, 2)
    N = comb(d1 + 1, 2) + comb(d2 + 1, 2)
    row_monos = list(_monomials(3, d1 + d2 - 1))
    row_index = {m: i for i, m in enumerate(row_monos)}
    assert len(row_monos) == M
    columns = []
    for sec, dg in ((s1, d2 - 1), (s2, d1 - 1)):
        for mono in _monomials(3, dg):
            shifted = MultiPoly(field, yvars, {mono: field.one}) * sec
            col = [field.zero] * M
            for e, c in shifted.terms.items():
                col[row_index[e]] = c
            columns.append(col)
    assert len(columns) == N
    rows = [[columns[j][i] for j in range(N)] for i in range(M)]
    rank = matrix_rank(rows, field)
    return RankTestReport(d1, d2, M, N, rank, rank < N)


def _as_section(h, u: ProjPoint) -> MultiPoly:
    if isinstance(h, Hypersurface):
        sec = h.section(u)
    elif isinstance(h, BiHomPoly):
        sec = Hypersurface(h).section(u)
    else:
        sec = h
    if sec.is_zero():
        raise ZeroSection("section vanished identically")
    return sec


def is_squarefree_section(h, u: ProjPoint) -> bool:
    """True iff the section h(u, ȳ) is squarefree, tested by the GCD with
    its derivative in a variable of maximal section degree."""
    sec = _as_section(h, u)
    degs = [(sec.degree_in(v), v) for v in sec.vars]
    dmax, var = max(degs)
    if dmax <= 0:
        return True
    char = sec.field.characteristic
    if char and group_degree(sec, sec.vars) >= char:
        raise BadCharacteristic("characteristic too small for the derivative test")
    return gcd(sec, sec.derivative(var)).degree() == 0


@dataclass
class ConicClass:
    kind: str  # line | irreducible-conic | degenerate-conic
    rank: int | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank}


def conic_classify(C: PlaneCurve) -> ConicClass:
    """Classify a curve of degree <= 2 via the symmetric-matrix rank."""
    if C.degree == 1:
        return ConicClass("line")
    if C.degree != 2:
        raise DegreeTooHigh(f"degree {C.degree} curve is not a conic")
    field = C.form.field
    if field.characteristic == 2:
        raise CharacteristicTwo("symmetric-matrix route needs characteristic != 2")
    half = field.elem(2).inv()
    rows = [[field.zero] * 3 for _ in range(3)]
    for e, c in C.form.terms.items():
        support = [i for i, k in enumerate(e) if k]
        if len(support) == 1:
            i = support[0]
            rows[i][i] = c
        else:
            i, j = support
            rows[i][j] = c * half
            rows[j][i] = c * half
    rank = matrix_rank(rows, field)
    if rank == 3:
        return ConicClass("irreducible-conic")
    return ConicClass("degenerate-conic", rank)
