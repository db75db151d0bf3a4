"""Hypersurfaces in P^s x P^s, their sections, and the classical K_{s,t}-free
constructions over prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    BadCharacteristic,
    BadReduction,
    DimensionMismatch,
    DivisionByZero,
    EmptySample,
    UnsupportedParameters,
)
from .fields import GF, QQ, Field, FieldElem, PrimeField
from .poly import BiHomPoly, MultiPoly, bihomogenize


class ProjPoint:
    """A point of P^s, stored with the first nonzero coordinate scaled to 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords):
        coords = [c if isinstance(c, FieldElem) else field.elem(c) for c in coords]
        pivot = next((c for c in coords if not c.is_zero()), None)
        if pivot is None:
            raise DimensionMismatch("projective point needs a nonzero coordinate")
        inv = pivot.inv()
        self.field = field
        self.coords = tuple(c * inv for c in coords)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @classmethod
    def parse(cls, field: Field, text: str) -> "ProjPoint":
        return cls(field, [field.coeff_from_str(part) for part in text.split(":")])

    def __eq__(self, other):
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(tuple(c.val for c in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "(" + ":".join(self.field.coeff_str(c.val) for c in self.coords) + ")"


def proj_points(field: PrimeField, s: int):
    """All points of P^s(F_p) in canonical representatives, lexicographic."""
    for lead in range(s + 1):
        for tail in product(range(field.p), repeat=s - lead):
            coords = [0] * lead + [1] + list(tail)
            yield ProjPoint(field, coords)


class OpenSet:
    """P^s minus the union of zero sets of the excluded homogeneous forms."""

    __slots__ = ("dim", "excluded")

    def __init__(self, dim: int, excluded: list | None = None):
        self.dim = dim
        self.excluded = list(excluded or [])
        for f in self.excluded:
            if f.is_zero():
                raise UnsupportedParameters("excluded polynomial must be nonzero")

    @classmethod
    def full(cls, dim: int) -> "OpenSet":
        return cls(dim, [])

    @classmethod
    def complement_of_points(cls, points: list, vars: tuple) -> "OpenSet":
        """P^1 minus a finite point list; each point becomes a linear form."""
        forms = []
        for pt in points:
            v0, v1 = pt.coords
            field = pt.field
            forms.append(
                MultiPoly(field, vars, {(1, 0): v1, (0, 1): -v0})
            )
        dim = 1
        return cls(dim, forms)

    def contains(self, point: ProjPoint) -> bool:
        coords = [c for c in point.coords]
        for f in self.excluded:
            if f.evaluate(coords).is_zero():
                return False
        return True

    def reduce_mod(self, p: int) -> "OpenSet":
        return OpenSet(self.dim, [reduce_poly_mod(f, p) for f in self.excluded])

    def to_json(self) -> dict:
        return {"dim": self.dim, "excluded": [f.to_json() for f in self.excluded]}

    @classmethod
    def from_json(cls, data: dict) -> "OpenSet":
        return cls(data["dim"], [MultiPoly.from_json(f) for f in data["excluded"]])


class Hypersurface:
    """Nonzero bihomogeneous form up to scalar; stored monic."""

    __slots__ = ("form",)

    def __init__(self, form: BiHomPoly):
        self.form = form.monic()

    @property
    def s(self) -> int:
        return len(self.form.xvars) - 1

    @property
    def bidegree(self) -> tuple:
        return self.form.bidegree

    @property
    def field(self) -> Field:
        return self.form.poly.field

    def section(self, u: ProjPoint) -> MultiPoly:
        """F(u, ȳ): homogeneous in ȳ of degree <= d_y; returned raw so the
        caller can observe degree drops.  Zero signals {u} x P^s inside H."""
        if len(u.coords) != len(self.form.xvars):
            raise DimensionMismatch("point does not match the x-group")
        mapping = {v: c for v, c in zip(self.form.xvars, u.coords)}
        return self.form.poly.substitute(mapping, new_vars=self.form.yvars)

    def section_x(self, v: ProjPoint) -> MultiPoly:
        """F(x̄, v), the transposed section."""
        if len(v.coords) != len(self.form.yvars):
            raise DimensionMismatch("point does not match the y-group")
        mapping = {w: c for w, c in zip(self.form.yvars, v.coords)}
        return self.form.poly.substitute(mapping, new_vars=self.form.xvars)

    def contains_fiber(self, v: ProjPoint) -> bool:
        """True iff P^s x {v} is contained in H, i.e. F(x̄, v) == 0."""
        return self.section_x(v).is_zero()

    def to_json(self) -> dict:
        return {
            "poly": self.form.poly.to_json(),
            "sx": len(self.form.xvars) - 1,
            "sy": len(self.form.yvars) - 1,
            "bidegree": list(self.form.bidegree),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Hypersurface":
        poly = MultiPoly.from_json(data["poly"])
        sx, sy = data["sx"], data["sy"]
        xg = tuple(f"x{i}" for i in range(sx + 1))
        yg = tuple(f"y{i}" for i in range(sy + 1))
        return cls(BiHomPoly(poly, xg, yg))

    def __repr__(self):
        return f"Hypersurface{self.bidegree}[{self.form.poly!r}]"


def reduce_poly_mod(F: MultiPoly, p: int) -> MultiPoly:
    """Reduce a polynomial over Q or F_p to F_p coefficients."""
    Fp = GF(p)
    if F.field == Fp:
        return F
    if F.field != QQ:
        raise BadReduction(f"cannot reduce {F.field} mod {p}")
    terms = {}
    for e, c in F.terms.items():
        try:
            terms[e] = Fp.elem(c.val)
        except DivisionByZero:
            raise BadReduction(f"denominator of {c.val} divisible by {p}") from None
    return MultiPoly(Fp, F.vars, terms)


def reduce_hypersurface_mod(H: Hypersurface, p: int) -> Hypersurface:
    poly = reduce_poly_mod(H.form.poly, p)
    if poly.is_zero():
        raise BadReduction("form vanishes mod p")
    return Hypersurface(BiHomPoly(poly, H.form.xvars, H.form.yvars))


# -- the four constructions ------------------------------------------------------


@dataclass
class Construction:
    family: str
    p: int
    s: int
    affine: MultiPoly  # in x1..xs, y1..ys over F_p
    hypersurface: Hypersurface  # its bihomogenization


def smallest_nonresidue(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return a
    raise UnsupportedParameters(f"no quadratic non-residue mod {p}")


def construct(family: str, p: int, s: int | None = None) -> Construction:
    """One of the classical K_{s,t}-free hypersurface constructions over F_p.

    '1a': x1 y1 + x2 y2 = 1 (s = 2).
    '1b': (x1-y1)^2 + (x2-y2)^2 + (x3-y3)^2 = c (s = 3), with c = 1 for
          p = 3 mod 4 and c the smallest quadratic non-residue otherwise.
    '1c': (N_s . pi_s)(x1+y1, ..., xs+ys) = 1, for t >= s! + 1.
    '1d': (N_{s-1} . pi_{s-1})(x2+y2, ..., xs+ys) = x1 y1, for t >= (s-1)! + 1.
    """
    from .fields import norm_poly

    Fp = GF(p)
    if family == "1a":
        if s not in (None, 2):
            raise UnsupportedParameters("family 1a has s = 2")
        s = 2
        vars = ("x1", "x2", "y1", "y2")
        affine = MultiPoly.parse(Fp, vars, "x1*y1 + x2*y2 - 1")
    elif family == "1b":
        if s not in (None, 3):
            raise UnsupportedParameters("family 1b has s = 3")
        if p == 2:
            raise BadCharacteristic("family 1b needs odd characteristic")
        s = 3
        c = 1 if p % 4 == 3 else smallest_nonresidue(p)
        vars = ("x1", "x2", "x3", "y1", "y2", "y3")
        affine = MultiPoly.parse(
            Fp,
            vars,
            f"(x1-y1)**2 + (x2-y2)**2 + (x3-y3)**2 - {c}",
        )
    elif family in ("1c", "1d"):
        if s is None or s < 2:
            raise UnsupportedParameters(f"family {family} needs s >= 2")
        vars = tuple(f"x{i}" for i in range(1, s + 1)) + tuple(
            f"y{i}" for i in range(1, s + 1)
        )
        if family == "1c":
            np = norm_poly(p, s)
            sub = {
                f"z{j}": MultiPoly.parse(Fp, vars, f"x{j} + y{j}")
                for j in range(1, s + 1)
            }
            affine = np.substitute(sub, new_vars=vars) - 1
        else:
            np = norm_poly(p, s - 1)
            sub = {
                f"z{j}": MultiPoly.parse(Fp, vars, f"x{j + 1} + y{j + 1}")
                for j in range(1, s)
            }
            affine = np.substitute(sub, new_vars=vars) - MultiPoly.parse(
                Fp, vars, "x1*y1"
            )
    else:
        raise UnsupportedParameters(f"unknown family {family!r}")
    return Construction(family, p, s, affine, Hypersurface(bihomogenize(affine, s)))


# -- sampled almost-equality ------------------------------------------------------


def almost_equal_sampled(
    H1: Hypersurface,
    H2: Hypersurface,
    X: OpenSet,
    Y: OpenSet,
    primes: list,
):
    """Sampled necessary check for V1 = V2 on X x Y: over each prime's
    rational points the two forms must vanish together.  Returns
    (equal, witness); witness is a (p, u, v) triple when they differ."""
    if H1.s != H2.s or X.dim != H1.s or Y.dim != H1.s:
        raise DimensionMismatch("ambient dimensions differ")
    s = H1.s
    sampled = False
    for p in primes:
        Fp = GF(p)
        G1 = reduce_hypersurface_mod(H1, p)
        G2 = reduce_hypersurface_mod(H2, p)
        Xp = X.reduce_mod(p)
        Yp = Y.reduce_mod(p)
        us = [u for u in proj_points(Fp, s) if Xp.contains(u)]
        vs = [v for v in proj_points(Fp, s) if Yp.contains(v)]
        if not us or not vs:
            continue
        sampled = True
        for u in us:
            s1 = G1.section(u)
            s2 = G2.section(u)
            for v in vs:
                coords = list(v.coords)
                z1 = s1.evaluate(coords).is_zero()
                z2 = s2.evaluate(coords).is_zero()
                if z1 != z2:
                    return False, (p, u, v)
    if not sampled:
        raise EmptySample("no rational points in X x Y for the given primes")
    return True, None
