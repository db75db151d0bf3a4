"""Sparse exact multivariate polynomials over the fields in `gridlab.fields`.

Provides exactly the primitives the grid-free machinery needs: ring
arithmetic, substitution, derivatives, per-variable-group contents, GCD by
primitive-part subresultant PRS, squarefree parts, Sylvester resultants and
(bi)homogenization.  The monomial order is graded lex with the variable
tuple's later entries more significant; the leading coefficient in that
order is normalized to 1 wherever a canonical representative is needed.
"""

from __future__ import annotations

from .errors import (
    BadCharacteristic,
    DegreeZero,
    ExactDivisionError,
    MixedFields,
    NotHomogeneous,
    UnknownVariable,
    ZeroPolynomial,
)
from .fields import Field, FieldElem, field_from_descriptor


def _order_key(exps: tuple) -> tuple:
    # graded lex; later variables in the tuple dominate the tie-break
    return (sum(exps), tuple(reversed(exps)))


class MultiPoly:
    """Map from exponent vectors to nonzero coefficients, plus a var tuple."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, vars: tuple, terms: dict):
        self.field = field
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean = {}
        for exps, c in terms.items():
            if len(exps) != nv:
                raise UnknownVariable(f"exponent vector {exps} vs vars {self.vars}")
            if not isinstance(c, FieldElem):
                c = field.elem(c)
            elif c.field != field:
                raise MixedFields("coefficient from a different field")
            if not c.is_zero():
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, vars: tuple) -> "MultiPoly":
        return cls(field, vars, {})

    @classmethod
    def constant(cls, field: Field, vars: tuple, c) -> "MultiPoly":
        return cls(field, vars, {(0,) * len(vars): field.elem(c)})

    @classmethod
    def variable(cls, field: Field, vars: tuple, name: str) -> "MultiPoly":
        if name not in vars:
            raise UnknownVariable(name)
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(field, vars, {exps: field.one})

    @classmethod
    def parse(cls, field: Field, vars: tuple, expr: str) -> "MultiPoly":
        """Build a polynomial from a Python arithmetic expression string."""
        # wrap integer literals as constant polynomials so 1/3 stays exact
        import io
        import tokenize

        pieces = []
        prev_op = None
        toks = tokenize.generate_tokens(io.StringIO(expr).readline)
        for tok in toks:
            if tok.type == tokenize.NUMBER:
                # exponents stay plain integers (mod-p wrapping would corrupt them)
                if prev_op == "**":
                    pieces.append(tok.string)
                else:
                    pieces.append(f"__c({tok.string})")
                prev_op = None
            elif tok.type in (tokenize.NAME, tokenize.OP):
                pieces.append(tok.string)
                prev_op = tok.string if tok.type == tokenize.OP else None
        env = {v: cls.variable(field, vars, v) for v in vars}
        env["__c"] = lambda n: cls.constant(field, vars, n)
        env["__builtins__"] = {}
        return cls.constant(field, vars, 0) + eval(" ".join(pieces), env)  # noqa: S307

    # -- basic structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> FieldElem:
        if self.is_zero():
            return self.field.zero
        return self.terms[(0,) * len(self.vars)]

    def leading(self) -> tuple:
        """(exponents, coefficient) of the leading term."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading term")
        exps = max(self.terms, key=_order_key)
        return exps, self.terms[exps]

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        _, lc = self.leading()
        if lc.is_one():
            return self
        inv = lc.inv()
        return MultiPoly(
            self.field, self.vars, {e: c * inv for e, c in self.terms.items()}
        )

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def _vidx(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownVariable(var) from None

    def degree_in(self, var: str) -> int:
        i = self._vidx(var)
        if self.is_zero():
            return -1
        return max(e[i] for e in self.terms)

    def degree_in_vars(self, group: tuple) -> int:
        idx = [self._vidx(v) for v in group]
        if self.is_zero():
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    # -- arithmetic --------------------------------------------------------------

    def _coerce_operand(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise MixedFields("polynomials over different fields")
            if other.vars != self.vars:
                raise UnknownVariable(
                    f"variable tuples differ: {other.vars} vs {self.vars}"
                )
            return other
        return MultiPoly.constant(self.field, self.vars, other)

    def __add__(self, other):
        other = self._coerce_operand(other)
        terms = dict(self.terms)
        zero = self.field.zero
        for e, c in other.terms.items():
            s = terms.get(e, zero) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(self.field, self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(
            self.field, self.vars, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-self._coerce_operand(other))

    def __rsub__(self, other):
        return self._coerce_operand(other) - self

    def __mul__(self, other):
        if isinstance(other, (FieldElem, int)) or not isinstance(other, MultiPoly):
            c = other if isinstance(other, FieldElem) else self.field.elem(other)
            if c.is_zero():
                return MultiPoly.zero(self.field, self.vars)
            return MultiPoly(
                self.field, self.vars, {e: k * c for e, k in self.terms.items()}
            )
        other = self._coerce_operand(other)
        out: dict = {}
        zero = self.field.zero
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, zero) + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.field, self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by a nonzero constant only
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise ExactDivisionError("use exact_div for nonconstant divisors")
            other = other.constant_value()
        if not isinstance(other, FieldElem):
            other = self.field.elem(other)
        return self * other.inv()

    def __pow__(self, n):
        if isinstance(n, MultiPoly) and n.is_constant():
            n = n.constant_value().val
        if isinstance(n, FieldElem):
            n = n.val
        if n != int(n):
            raise ValueError("polynomial powers must be integers")
        n = int(n)
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.vars, frozenset((e, c.val) for e, c in self.terms.items()))
        )

    # -- calculus and evaluation -------------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        i = self._vidx(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            k = c * self.field.elem(e[i])
            if k.is_zero():
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = k
        return MultiPoly(self.field, self.vars, out)

    def evaluate(self, point) -> FieldElem:
        """Evaluate at a full assignment (dict var->value or sequence)."""
        if isinstance(point, dict):
            vals = [self.field.elem(point[v]) for v in self.vars]
        else:
            vals = [self.field.elem(v) for v in point]
            if len(vals) != len(self.vars):
                raise UnknownVariable("point length does not match variables")
        total = self.field.zero
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k:
                    t = t * val**k
            total = total + t
        return total

    def substitute(self, mapping: dict, new_vars: tuple | None = None) -> "MultiPoly":
        """Replace variables by polynomials or field elements.

        `mapping` maps variable names to MultiPoly (or coercible scalars);
        unreplaced variables stay.  The result lives in `new_vars` when given,
        otherwise in the untouched variables followed by any new ones coming
        from the substituted polynomials, in first-seen order.
        """
        for v in mapping:
            if v not in self.vars:
                raise UnknownVariable(v)
        if new_vars is None:
            seen = [v for v in self.vars if v not in mapping]
            for val in mapping.values():
                if isinstance(val, MultiPoly):
                    for v in val.vars:
                        if v not in seen:
                            seen.append(v)
            new_vars = tuple(seen)
        lifted = {}
        for v, val in mapping.items():
            if isinstance(val, MultiPoly):
                lifted[v] = val.with_vars(new_vars)
            else:
                lifted[v] = MultiPoly.constant(self.field, new_vars, val)
        result = MultiPoly.zero(self.field, new_vars)
        var_polys = {
            v: MultiPoly.variable(self.field, new_vars, v)
            for v in self.vars
            if v not in mapping and v in new_vars
        }
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.field, new_vars, c)
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                base = lifted.get(v) or var_polys.get(v)
                if base is None:
                    raise UnknownVariable(f"{v} not in target variables")
                term = term * base**k
            result = result + term
        return result

    def with_vars(self, new_vars: tuple) -> "MultiPoly":
        """Re-express over a different variable tuple (superset of support)."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        pos = {}
        for i, v in enumerate(self.vars):
            if v in new_vars:
                pos[i] = new_vars.index(v)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i not in pos:
                    raise UnknownVariable(f"{self.vars[i]} not in target variables")
                ne[pos[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(self.field, new_vars, out)

    # -- views --------------------------------------------------------------------

    def coeffs_in(self, group: tuple) -> dict:
        """View as a polynomial in `group`; maps group-exponents to the
        coefficient polynomial (same var tuple, degree 0 in `group`)."""
        idx = [self._vidx(v) for v in group]
        idx_set = set(idx)
        buckets: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = tuple(0 if i in idx_set else k for i, k in enumerate(e))
            buckets.setdefault(key, {})[rest] = c
        return {
            key: MultiPoly(self.field, self.vars, t) for key, t in buckets.items()
        }

    def univariate(self, var: str) -> list:
        """Dense coefficient list in `var`, low degree first; entries are
        MultiPolys of degree 0 in `var`."""
        i = self._vidx(var)
        d = self.degree_in(var)
        coeffs = [dict() for _ in range(max(d + 1, 1))]
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            coeffs[k][tuple(rest)] = c
        return [MultiPoly(self.field, self.vars, t) for t in coeffs]

    @staticmethod
    def from_univariate(coeffs: list, var: str) -> "MultiPoly":
        if not coeffs:
            raise ZeroPolynomial("empty coefficient list")
        base = coeffs[0]
        i = base._vidx(var)
        terms = {}
        for k, c in enumerate(coeffs):
            for e, coef in c.terms.items():
                ne = list(e)
                ne[i] += k
                terms[tuple(ne)] = coef
        return MultiPoly(base.field, base.vars, terms)

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        order = sorted(self.terms, key=_order_key, reverse=True)
        return {
            "field": self.field.descriptor(),
            "vars": list(self.vars),
            "terms": [
                {"e": list(e), "c": self.field.coeff_str(self.terms[e].val)}
                for e in order
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        field = field_from_descriptor(data["field"])
        vars = tuple(data["vars"])
        terms = {
            tuple(t["e"]): FieldElem(field, field.coeff_from_str(t["c"]))
            for t in data["terms"]
        }
        return cls(field, vars, terms)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, key=_order_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            cs = self.field.coeff_str(c.val)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


# -- exact division and gcd -------------------------------------------------------


def exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient a/b when b divides a exactly; raises ExactDivisionError."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    field, vars = a.field, a.vars
    quotient: dict = {}
    rem = a
    eb, cb = b.leading()
    cb_inv = cb.inv()
    while not rem.is_zero():
        ea, ca = rem.leading()
        qe = tuple(x - y for x, y in zip(ea, eb))
        if any(k < 0 for k in qe):
            raise ExactDivisionError("leading term not divisible")
        qc = ca * cb_inv
        quotient[qe] = qc
        rem = rem - MultiPoly(field, vars, {qe: qc}) * b
    return MultiPoly(field, vars, quotient)


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    if a.is_zero():
        return True
    if b.is_zero():
        return False
    try:
        exact_div(a, b)
        return True
    except ExactDivisionError:
        return False


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _prem(f: list, g: list) -> list:
    """Pseudo-remainder of coefficient lists (low-first); unit factors are
    irrelevant because the caller takes primitive parts."""
    f = f[:]
    dg = len(g) - 1
    lg = g[-1]
    while _trim(f) and len(f) - 1 >= dg:
        lf = f[-1]
        shift = len(f) - 1 - dg
        f = [c * lg for c in f]
        for i, gi in enumerate(g):
            f[shift + i] = f[shift + i] - lf * gi
        f.pop()
        _trim(f)
    return f


def _content_and_pp(a: MultiPoly, var: str):
    coeffs = _trim(a.univariate(var))
    cont = MultiPoly.zero(a.field, a.vars)
    for c in coeffs:
        cont = gcd(cont, c)
    pp = [exact_div(c, cont) for c in coeffs]
    return cont, pp


def gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """GCD over a field, normalized monic; primitive-part PRS one variable
    at a time, recursing into the coefficients for contents."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    main = None
    for v in reversed(a.vars):
        if a.degree_in(v) > 0 or b.degree_in(v) > 0:
            main = v
            break
    if main is None:
        return MultiPoly.constant(a.field, a.vars, 1)
    ca, fa = _content_and_pp(a, main)
    cb, fb = _content_and_pp(b, main)
    cont = gcd(ca, cb)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        r = _prem(fa, fb)
        _trim(r)
        if r:
            rc = MultiPoly.zero(a.field, a.vars)
            for c in r:
                rc = gcd(rc, c)
            r = [exact_div(c, rc) for c in r]
        fa, fb = fb, r
    g = cont * MultiPoly.from_univariate(fa, main)
    return g.monic()


def squarefree_part(a: MultiPoly, var: str) -> MultiPoly:
    """a / gcd(a, da/dvar), monic; demands characteristic 0 or larger than
    the degree in `var` so the derivative cannot collapse."""
    if a.is_zero():
        raise ZeroPolynomial("squarefree part of zero")
    char = a.field.characteristic
    d = a.degree_in(var)
    if char and d >= char:
        raise BadCharacteristic(
            f"char {char} <= degree {d} in {var}; derivative may degenerate"
        )
    if d <= 0:
        return a.monic()
    da = a.derivative(var)
    if da.is_zero():
        raise BadCharacteristic(f"derivative in {var} vanished")
    return exact_div(a, gcd(a, da)).monic()


def squarefree_in_vars(a: MultiPoly, group: tuple) -> MultiPoly:
    """Iterated per-variable squarefree pass over a variable group."""
    out = a
    for v in group:
        if out.degree_in(v) > 0:
            out = squarefree_part(out, v)
    return out.monic()


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Determinant of the Sylvester matrix in `var`."""
    da, db = a.degree_in(var), b.degree_in(var)
    if da < 1 or db < 1:
        raise DegreeZero(f"both operands need positive degree in {var}")
    ca = a.univariate(var)
    cb = b.univariate(var)
    n = da + db
    zero = MultiPoly.zero(a.field, a.vars)
    rows = []
    for i in range(db):
        row = [zero] * n
        for j, c in enumerate(ca):
            row[i + (da - j)] = c  # high-degree coefficients first
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for j, c in enumerate(cb):
            row[i + (db - j)] = c
        rows.append(row)
    return _det_bareiss(rows)


def _det_bareiss(m: list) -> MultiPoly:
    """Fraction-free determinant; entries are polynomials over a field."""
    n = len(m)
    if n == 0:
        raise ZeroPolynomial("empty matrix")
    field, vars = m[0][0].field, m[0][0].vars
    one = MultiPoly.constant(field, vars, 1)
    sign = 1
    prev = one
    m = [row[:] for row in m]
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot is None:
                return MultiPoly.zero(field, vars)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = MultiPoly.zero(field, vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# -- homogenization -----------------------------------------------------------------


def homogenize(
    F: MultiPoly, group: tuple, hvar: str, target: int | None = None
) -> MultiPoly:
    """Homogenize within a variable group using `hvar` (a member of it)."""
    idx = [F._vidx(v) for v in group]
    h = F._vidx(hvar)
    if h not in idx:
        raise UnknownVariable(f"{hvar} must belong to the group")
    if F.is_zero():
        return F
    maxdeg = max(sum(e[i] for i in idx) for e in F.terms)
    if target is None:
        target = maxdeg
    elif target < maxdeg:
        raise NotHomogeneous(f"target {target} below max group degree {maxdeg}")
    out = {}
    for e, c in F.terms.items():
        d = sum(e[i] for i in idx)
        ne = list(e)
        ne[h] += target - d
        out[tuple(ne)] = c
    return MultiPoly(F.field, F.vars, out)


def dehomogenize(F: MultiPoly, hvar: str) -> MultiPoly:
    """Set `hvar` = 1."""
    return F.substitute({hvar: F.field.one}, new_vars=F.vars)


def group_degree(F: MultiPoly, group: tuple):
    """Degree in the group if F is homogeneous there, else raises."""
    idx = [F._vidx(v) for v in group]
    degs = {sum(e[i] for i in idx) for e in F.terms}
    if len(degs) > 1:
        raise NotHomogeneous(f"degrees {sorted(degs)} in group {group}")
    return degs.pop() if degs else 0


class BiHomPoly:
    """A bihomogeneous polynomial with its bidegree, over groups (x̄, ȳ)."""

    __slots__ = ("poly", "xvars", "yvars", "bidegree")

    def __init__(self, poly: MultiPoly, xvars: tuple, yvars: tuple):
        self.poly = poly
        self.xvars = tuple(xvars)
        self.yvars = tuple(yvars)
        dx = group_degree(poly, self.xvars)
        dy = group_degree(poly, self.yvars)
        self.bidegree = (dx, dy)

    def __mul__(self, other: "BiHomPoly") -> "BiHomPoly":
        return BiHomPoly(self.poly * other.poly, self.xvars, self.yvars)

    def __add__(self, other: "BiHomPoly") -> "BiHomPoly":
        if self.bidegree != other.bidegree:
            raise NotHomogeneous("adding different bidegrees")
        return BiHomPoly(self.poly + other.poly, self.xvars, self.yvars)

    def __eq__(self, other):
        return isinstance(other, BiHomPoly) and self.poly == other.poly

    def monic(self) -> "BiHomPoly":
        return BiHomPoly(self.poly.monic(), self.xvars, self.yvars)

    def __repr__(self):
        return f"BiHom{self.bidegree}[{self.poly!r}]"


def xy_vars(s: int) -> tuple:
    """Standard variable tuple (x0..xs, y0..ys) for P^s x P^s."""
    return tuple(f"x{i}" for i in range(s + 1)) + tuple(
        f"y{i}" for i in range(s + 1)
    )


def bihomogenize(affine: MultiPoly, s: int) -> BiHomPoly:
    """Bihomogenize a polynomial in x1..xs, y1..ys with x0 and y0.

    The target bidegree is (max x-degree, max y-degree) over the terms.
    """
    full = xy_vars(s)
    F = affine.with_vars(full)
    xg = tuple(f"x{i}" for i in range(s + 1))
    yg = tuple(f"y{i}" for i in range(s + 1))
    F = homogenize(F, xg, "x0")
    F = homogenize(F, yg, "y0")
    return BiHomPoly(F, xg, yg)
