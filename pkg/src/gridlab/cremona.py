"""Rational maps of P^2 and polynomial automorphisms of affine space, applied
to hypersurfaces with exact degree tracking: the standard quadratic
transformation, the degree-raising line-preserving maps, elementary (tame)
automorphisms and Nagata's automorphism."""

from __future__ import annotations

from .errors import (
    DegreeTooHigh,
    NotInvertibleShape,
    SampleTooSmall,
    ZeroPullback,
)
from .fields import GF, Field, FieldElem
from .poly import BiHomPoly, MultiPoly, exact_div, gcd, group_degree
from .hypersurfaces import (
    Hypersurface,
    ProjPoint,
    proj_points,
    reduce_hypersurface_mod,
    reduce_poly_mod,
)


class RationalMap:
    """Homogeneous components of equal degree, common content removed."""

    __slots__ = ("field", "vars", "components", "degree")

    def __init__(self, components: list):
        if not components or all(c.is_zero() for c in components):
            raise ZeroPullback("rational map needs a nonzero component")
        field = components[0].field
        vars = components[0].vars
        cont = MultiPoly.zero(field, vars)
        for c in components:
            cont = gcd(cont, c)
        if cont.degree() > 0:
            components = [exact_div(c, cont) for c in components]
        degs = {group_degree(c, vars) for c in components if not c.is_zero()}
        if len(degs) != 1:
            raise NotInvertibleShape(f"component degrees differ: {sorted(degs)}")
        self.field = field
        self.vars = vars
        self.components = components
        self.degree = degs.pop()

    def apply_point(self, v: ProjPoint) -> ProjPoint | None:
        """Image point, or None when v lies in the base locus."""
        coords = [c.evaluate(list(v.coords)) for c in self.components]
        if all(c.is_zero() for c in coords):
            return None
        return ProjPoint(self.field, coords)

    def reduce_mod(self, p: int) -> "RationalMap":
        return RationalMap([reduce_poly_mod(c, p) for c in self.components])

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "RationalMap":
        return cls([MultiPoly.from_json(c) for c in data["components"]])

    def __repr__(self):
        return f"RationalMap(deg {self.degree}){[repr(c) for c in self.components]}"


YV = ("y0", "y1", "y2")


def identity_map(field: Field, vars: tuple = YV) -> RationalMap:
    return RationalMap([MultiPoly.variable(field, vars, v) for v in vars])


def standard_quadratic(field: Field, vars: tuple = YV) -> RationalMap:
    """(y0:y1:y2) -> (y1 y2 : y0 y2 : y0 y1); an involution off the
    coordinate triangle."""
    v0, v1, v2 = (MultiPoly.variable(field, vars, v) for v in vars)
    return RationalMap([v1 * v2, v0 * v2, v0 * v1])


def example_line_map(field: Field, d: int, f_coeffs: list, vars: tuple = YV):
    """(y0:y1:y2) -> (y0^d : y0^(d-1) y1 : y0^(d-1) y2 + y0^d f(y1/y0)),
    with f given by its coefficient list (low degree first, deg f <= d)."""
    if d < 1:
        raise DegreeTooHigh("d must be positive")
    coeffs = [field.elem(c) for c in f_coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if len(coeffs) - 1 > d:
        raise DegreeTooHigh(f"deg f = {len(coeffs) - 1} exceeds d = {d}")
    y0, y1, y2 = (MultiPoly.variable(field, vars, v) for v in vars)
    third = y0 ** (d - 1) * y2
    for k, c in enumerate(coeffs):
        third = third + y0 ** (d - k) * y1**k * c
    return RationalMap([y0**d, y0 ** (d - 1) * y1, third])


def apply_map(
    sigma_x: RationalMap | None,
    sigma_y: RationalMap | None,
    H: Hypersurface,
) -> Hypersurface:
    """Pull back the defining form through (sigma_x, sigma_y) and strip the
    per-group contents arising from the base locus."""
    H2, _, _ = apply_with_contents(sigma_x, sigma_y, H)
    return H2


def apply_with_contents(sigma_x, sigma_y, H: Hypersurface):
    """Like apply_map but also returns the removed x- and y-group contents
    (needed to recognize the exceptional locus of the substitution)."""
    form = H.form
    mapping = {}
    if sigma_x is not None:
        if len(sigma_x.components) != len(form.xvars):
            raise NotInvertibleShape("x-map does not match the x-group")
        comps = [c.with_vars(form.poly.vars) for c in sigma_x.components]
        mapping.update(dict(zip(form.xvars, comps)))
    if sigma_y is not None:
        if len(sigma_y.components) != len(form.yvars):
            raise NotInvertibleShape("y-map does not match the y-group")
        comps = [c.with_vars(form.poly.vars) for c in sigma_y.components]
        mapping.update(dict(zip(form.yvars, comps)))
    pulled = form.poly.substitute(mapping, new_vars=form.poly.vars)
    if pulled.is_zero():
        raise ZeroPullback("the hypersurface contains the image of the map")
    cx = _group_content(pulled, form.xvars)
    if cx.degree() > 0:
        pulled = exact_div(pulled, cx)
    cy = _group_content(pulled, form.yvars)
    if cy.degree() > 0:
        pulled = exact_div(pulled, cy)
    return (
        Hypersurface(BiHomPoly(pulled, form.xvars, form.yvars)),
        cx.monic(),
        cy.monic(),
    )


def _group_content(F: MultiPoly, group: tuple) -> MultiPoly:
    """The common factor of F living purely in `group`'s variables."""
    other = tuple(v for v in F.vars if v not in group)
    cont = MultiPoly.zero(F.field, F.vars)
    for coeff in F.coeffs_in(other).values():
        cont = gcd(cont, coeff)
    return cont


# -- affine automorphisms ----------------------------------------------------------


class AffineAutomorphism:
    """Polynomial automorphism of affine s-space with a stored inverse."""

    __slots__ = ("field", "vars", "components", "inverse_components", "kind")

    def __init__(self, components, inverse_components, kind: str):
        self.field = components[0].field
        self.vars = components[0].vars
        self.components = components
        self.inverse_components = inverse_components
        self.kind = kind

    def apply_point(self, point) -> tuple:
        vals = [self.field.elem(c) for c in point]
        return tuple(c.evaluate(vals) for c in self.components)

    def apply_poly(self, F: MultiPoly) -> MultiPoly:
        return F.substitute(dict(zip(self.vars, self.components)), new_vars=F.vars)

    def inverse(self) -> "AffineAutomorphism":
        if self.inverse_components is None:
            raise NotInvertibleShape(f"no closed-form inverse for kind {self.kind}")
        return AffineAutomorphism(self.inverse_components, self.components, self.kind)

    def __repr__(self):
        return f"AffineAutomorphism[{self.kind}]{[repr(c) for c in self.components]}"


def affine_vars(s: int) -> tuple:
    return tuple(f"x{i}" for i in range(1, s + 1))


def identity_auto(field: Field, s: int) -> AffineAutomorphism:
    vars = affine_vars(s)
    comps = [MultiPoly.variable(field, vars, v) for v in vars]
    return AffineAutomorphism(comps, list(comps), "identity")


def elementary(i: int, c: FieldElem, f: MultiPoly) -> AffineAutomorphism:
    """Replace the i-th coordinate (1-based) by c*x_i + f, with c != 0 and
    f free of x_i."""
    field = f.field
    vars = f.vars
    if not isinstance(c, FieldElem):
        c = field.elem(c)
    if c.is_zero():
        raise NotInvertibleShape("the scale factor must be nonzero")
    name = vars[i - 1]
    if f.degree_in(name) > 0:
        raise NotInvertibleShape(f"f must not involve {name}")
    comps = []
    inv_comps = []
    cinv = c.inv()
    for v in vars:
        xv = MultiPoly.variable(field, vars, v)
        if v == name:
            comps.append(xv * c + f)
            inv_comps.append((xv - f) * cinv)
        else:
            comps.append(xv)
            inv_comps.append(xv)
    return AffineAutomorphism(comps, inv_comps, "elementary")


def compose(a: AffineAutomorphism, b: AffineAutomorphism) -> AffineAutomorphism:
    """(a . b)(x) = a(b(x))."""
    sub = dict(zip(a.vars, b.components))
    comps = [c.substitute(sub, new_vars=a.vars) for c in a.components]
    inv = None
    if a.inverse_components is not None and b.inverse_components is not None:
        sub_inv = dict(zip(a.vars, a.inverse_components))
        inv = [c.substitute(sub_inv, new_vars=a.vars) for c in b.inverse_components]
    return AffineAutomorphism(comps, inv, "composed")


def nagata(field: Field) -> AffineAutomorphism:
    """Nagata's wild automorphism of affine 3-space; it fixes x^2 - yz."""
    vars = affine_vars(3)
    x, y, z = (MultiPoly.variable(field, vars, v) for v in vars)
    delta = x * x - y * z
    comps = [x + delta * z, y + 2 * delta * x + delta * delta * z, z]
    inv = [x - delta * z, y - 2 * delta * x + delta * delta * z, z]
    return AffineAutomorphism(comps, inv, "nagata")


def nagata_invariant(field: Field) -> MultiPoly:
    vars = affine_vars(3)
    x, y, z = (MultiPoly.variable(field, vars, v) for v in vars)
    return x * x - y * z


# -- sampled grid transport ---------------------------------------------------------


def grid_transport_check(
    H: Hypersurface, sigma_y: RationalMap, p: int, s: int, t: int
) -> dict:
    """Verify on P^s(F_p) that applying (id, sigma_y) transports grids:
    off the base and exceptional loci, the pulled-back graph must coincide
    with the original graph under v -> sigma_y(v)."""
    from .gridcheck import BipartiteGraph, _adjacency_rows, _terms_int, find_grid

    Fp = GF(p)
    Hp = reduce_hypersurface_mod(H, p)
    sig = sigma_y.reduce_mod(p)
    Hpulled, _, cy = apply_with_contents(None, sig, Hp)
    pts = list(proj_points(Fp, Hp.s))
    # keep v where sigma is defined, injective on the sample, and off the
    # exceptional locus of the content removal
    pairs = []
    seen = {}
    for v in pts:
        w = sig.apply_point(v)
        if w is None:
            continue
        if cy.degree() > 0:
            vals = [
                v.coords[sig.vars.index(n)] if n in sig.vars else Fp.one
                for n in cy.vars
            ]
            if cy.evaluate(vals).is_zero():
                continue
        seen.setdefault(w, []).append(v)
    for w, vs in seen.items():
        if len(vs) == 1:
            pairs.append((vs[0], w))
    pairs.sort(key=lambda vw: tuple(c.val for c in vw[0].coords))
    if len(pairs) < t:
        raise SampleTooSmall(f"only {len(pairs)} usable sample points")
    left = [tuple(c.val for c in u.coords) for u in pts]
    right_orig = [tuple(c.val for c in w.coords) for _, w in pairs]
    right_pull = [tuple(c.val for c in v.coords) for v, _ in pairs]
    rows_orig = _adjacency_rows(_terms_int(Hp, p), left, right_orig, p)
    rows_pull = _adjacency_rows(_terms_int(Hpulled, p), left, right_pull, p)
    adjacency_match = rows_orig == rows_pull
    G1 = BipartiteGraph(left, right_orig, rows_orig)
    G2 = BipartiteGraph(left, right_pull, rows_pull)
    w1 = find_grid(G1, s, t)
    w2 = find_grid(G2, s, t)
    consistent = adjacency_match and (
        (w1 is None) == (w2 is None)
    ) and (w1 is None or (w1.S == w2.S and w1.T == w2.T))
    return {
        "p": p,
        "s": s,
        "t": t,
        "sample_size": len(pairs),
        "adjacency_match": adjacency_match,
        "grid_original": w1.to_json() if w1 else None,
        "grid_pulled": w2.to_json() if w2 else None,
        "consistent": consistent,
    }
