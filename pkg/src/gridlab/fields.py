"""Exact coefficient fields: Q, prime fields F_p, and extension fields F_{p^s}.

Extension fields are realized as F_p[b]/(modulus), where the modulus is by
default the canonical one: the lexicographically smallest monic irreducible
polynomial of degree s over F_p, coefficients compared low-degree-first.
Elements are coefficient vectors in the basis 1, b, ..., b^(s-1), which is
exactly the basis the linear isomorphism pi_s uses.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import (
    CoefficientNotInPrimeField,
    DimensionMismatch,
    DivisionByZero,
    MixedFields,
    UnsupportedParameters,
    WrongField,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldElem:
    """An element of a field, in canonical reduced form.

    Immutable; arithmetic delegates to the owning field object. Mixing
    elements of different fields raises MixedFields.
    """

    __slots__ = ("field", "val")

    def __init__(self, field: "Field", val):
        self.field = field
        self.val = val

    def _check(self, other) -> "FieldElem":
        if not isinstance(other, FieldElem):
            return self.field.elem(other)
        if other.field != self.field:
            raise MixedFields(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field._add(self.val, other.val))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field._sub(self.val, other.val))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElem(self.field, self.field._mul(self.val, other.val))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.val))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._check(other) / self

    def inv(self) -> "FieldElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return FieldElem(self.field, self.field._inv(self.val))

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.field._is_zero(self.val)

    def is_one(self) -> bool:
        return self.val == self.field.one.val

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.val == other.val

    def __hash__(self):
        return hash((id(self.field.__class__), self.field.descriptor_key(), self.val))

    def __repr__(self):
        return f"{self.field.short_name()}({self.field.coeff_str(self.val)})"


class Field:
    """Common surface of the three coefficient domains."""

    kind: str
    characteristic: int

    def elem(self, x) -> FieldElem:
        return FieldElem(self, self.coerce(x))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, self._zero())

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, self._one())

    def elements(self):
        """Iterate over all field elements (finite fields only)."""
        raise WrongField("infinite field")

    def descriptor(self) -> dict:
        raise NotImplementedError

    def descriptor_key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor_key() == (
            other.descriptor_key()
        )

    def __hash__(self):
        return hash(self.descriptor_key())

    def __repr__(self):
        return self.short_name()


class Rationals(Field):
    kind = "rationals"
    characteristic = 0

    def coerce(self, x) -> Fraction:
        if isinstance(x, FieldElem):
            if x.field != self:
                raise MixedFields("cannot coerce from another field")
            return x.val
        return Fraction(x)

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def coeff_str(self, a: Fraction) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def coeff_from_str(self, s: str) -> Fraction:
        return Fraction(s)

    def descriptor(self):
        return {"kind": "rationals"}

    def descriptor_key(self):
        return ("rationals",)

    def short_name(self):
        return "QQ"


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedParameters(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def coerce(self, x) -> int:
        if isinstance(x, FieldElem):
            if x.field != self:
                raise MixedFields("cannot coerce from another field")
            return x.val
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero("denominator divisible by p")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _is_zero(self, a):
        return a == 0

    def elements(self):
        for a in range(self.p):
            yield FieldElem(self, a)

    def coeff_str(self, a: int) -> str:
        return str(a)

    def coeff_from_str(self, s: str) -> int:
        return int(s) % self.p

    def descriptor(self):
        return {"kind": "prime", "p": self.p}

    def descriptor_key(self):
        return ("prime", self.p)

    def short_name(self):
        return f"F{self.p}"


# -- univariate helpers over F_p (dense, low-degree-first int tuples) ---------

def _upoly_trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _upoly_mod(a: tuple, m: tuple, p: int) -> tuple:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        a.pop()
    return _upoly_trim(a)


def _upoly_divides(d: tuple, a: tuple, p: int) -> bool:
    return len(_upoly_mod(a, d, p)) == 0


def _is_irreducible(m: tuple, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            if _upoly_divides(divisor, m, p):
                return False
    return True


def canonical_modulus(p: int, s: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree s over F_p.

    Coefficient tuples are compared low-degree-first, so the search order of
    itertools.product matches the comparison order.
    """
    for tail in product(range(p), repeat=s):
        m = tuple(tail) + (1,)
        if _is_irreducible(m, p):
            return m
    raise UnsupportedParameters(f"no irreducible of degree {s} over F_{p}")


class ExtensionField(Field):
    """F_{p^s} = F_p[b]/(modulus); elements are length-s coefficient tuples."""

    kind = "extension"

    def __init__(self, p: int, s: int, modulus: tuple | None = None):
        if not is_prime(p):
            raise UnsupportedParameters(f"{p} is not prime")
        if s < 1:
            raise UnsupportedParameters("s must be positive")
        self.p = p
        self.s = s
        self.characteristic = p
        if modulus is None:
            modulus = canonical_modulus(p, s)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != s + 1 or modulus[-1] != 1:
                raise UnsupportedParameters("modulus must be monic of degree s")
            if not _is_irreducible(modulus, p):
                raise UnsupportedParameters("modulus is reducible")
        self.modulus = modulus
        # reduction table: b^(s+k) expressed in the power basis, k = 0..s-2
        red = [None] * s
        head = tuple((-c) % p for c in modulus[:-1])  # b^s
        cur = list(head)
        self._red = [tuple(cur)]
        for _ in range(s - 2 + 1):
            cur = self._shift_reduce(cur)
            self._red.append(tuple(cur))
        del red

    def _shift_reduce(self, vec: list) -> list:
        # multiply by b and reduce once using b^s = head
        p, s = self.p, self.s
        out = [0] + vec[: s - 1]
        top = vec[s - 1]
        if top:
            head = self._red[0]
            out = [(out[i] + top * head[i]) % p for i in range(s)]
        else:
            out = [c % p for c in out]
        return out

    def coerce(self, x) -> tuple:
        if isinstance(x, FieldElem):
            if x.field == self:
                return x.val
            if isinstance(x.field, PrimeField) and x.field.p == self.p:
                return (x.val,) + (0,) * (self.s - 1)
            raise MixedFields("cannot coerce from another field")
        if isinstance(x, (tuple, list)):
            if len(x) != self.s:
                raise DimensionMismatch(f"need {self.s} coordinates")
            return tuple(int(c) % self.p for c in x)
        return (int(x) % self.p,) + (0,) * (self.s - 1)

    @property
    def generator(self) -> FieldElem:
        if self.s == 1:
            return FieldElem(self, self.coerce(self.modulus[0] and -self.modulus[0]))
        return FieldElem(self, (0, 1) + (0,) * (self.s - 2))

    def _zero(self):
        return (0,) * self.s

    def _one(self):
        return (1,) + (0,) * (self.s - 1)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        p, s = self.p, self.s
        prod = [0] * (2 * s - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:s]]
        for k in range(s, 2 * s - 1):
            c = prod[k] % p
            if c:
                red = self._red[k - s]
                for i in range(s):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def _inv(self, a):
        order = self.p**self.s
        e = order - 2
        result = self._one()
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def _is_zero(self, a):
        return all(c == 0 for c in a)

    def elements(self):
        for vec in product(range(self.p), repeat=self.s):
            yield FieldElem(self, vec)

    def prime_subfield(self) -> PrimeField:
        return GF(self.p)

    def in_prime_subfield(self, a: FieldElem) -> bool:
        return all(c == 0 for c in a.val[1:])

    def coeff_str(self, a: tuple) -> str:
        return ",".join(str(c) for c in a)

    def coeff_from_str(self, s: str) -> tuple:
        return self.coerce([int(c) for c in s.split(",")])

    def descriptor(self):
        return {
            "kind": "extension",
            "p": self.p,
            "s": self.s,
            "modulus": list(self.modulus),
        }

    def descriptor_key(self):
        return ("extension", self.p, self.s, self.modulus)

    def short_name(self):
        return f"F{self.p}^{self.s}"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int, s: int = 1, modulus: tuple | None = None) -> Field:
    """Finite field with p^s elements (prime field when s == 1)."""
    if s == 1:
        return PrimeField(p)
    return ExtensionField(p, s, modulus)


def field_from_descriptor(d: dict) -> Field:
    kind = d.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return GF(d["p"])
    if kind == "extension":
        return GF(d["p"], d["s"], tuple(d["modulus"]) if "modulus" in d else None)
    raise UnsupportedParameters(f"unknown field kind {kind!r}")


# -- norm and pi_s -------------------------------------------------------------

def norm(alpha: FieldElem) -> FieldElem:
    """Field norm F_{p^s} -> F_p via the power formula a^((p^s-1)/(p-1))."""
    F = alpha.field
    if not isinstance(F, ExtensionField):
        raise WrongField("norm needs an extension-field element")
    if alpha.is_zero():
        return F.prime_subfield().zero
    e = (F.p**F.s - 1) // (F.p - 1)
    val = (alpha**e).val
    if any(c != 0 for c in val[1:]):
        raise CoefficientNotInPrimeField("norm left the prime subfield")
    return F.prime_subfield().elem(val[0])


def pi_s(F: ExtensionField, u) -> FieldElem:
    """The F_p-linear isomorphism F_p^s -> F_{p^s}, u -> sum u_i b^(i-1)."""
    if not isinstance(F, ExtensionField):
        raise WrongField("pi_s needs an extension field")
    u = list(u)
    if len(u) != F.s:
        raise DimensionMismatch(f"need {F.s} coordinates")
    coords = [c.val if isinstance(c, FieldElem) else int(c) % F.p for c in u]
    return FieldElem(F, tuple(c % F.p for c in coords))


def pi_s_inv(alpha: FieldElem) -> list:
    """Inverse of pi_s; returns a list of prime-field elements."""
    F = alpha.field
    if not isinstance(F, ExtensionField):
        raise WrongField("pi_s_inv needs an extension-field element")
    Fp = F.prime_subfield()
    return [Fp.elem(c) for c in alpha.val]


def norm_poly(p: int, s: int, modulus: tuple | None = None):
    """The norm form N_s(pi_s(z)) as an F_p-polynomial in z_1..z_s.

    Expanded symbolically as the product of Frobenius conjugates
    prod_i (sum_j z_j * (b^(j-1))^(p^i)) over F_{p^s}; every coefficient of
    the expansion must land in the prime subfield.
    """
    from .poly import MultiPoly

    if s == 1:
        Fp = GF(p)
        return MultiPoly.variable(Fp, ("z1",), "z1")
    E = GF(p, s, modulus)
    zvars = tuple(f"z{j}" for j in range(1, s + 1))
    basis = [E.generator**j for j in range(s)]
    factors = []
    for i in range(s):
        q = p**i
        terms = {}
        for j in range(s):
            exp = [0] * s
            exp[j] = 1
            terms[tuple(exp)] = basis[j] ** q
        factors.append(MultiPoly(E, zvars, terms))
    prod_poly = factors[0]
    for f in factors[1:]:
        prod_poly = prod_poly * f
    Fp = GF(p)
    out_terms = {}
    for exps, coeff in prod_poly.terms.items():
        if not E.in_prime_subfield(coeff):
            raise CoefficientNotInPrimeField(f"coefficient {coeff!r} at {exps}")
        out_terms[exps] = Fp.elem(coeff.val[0])
    return MultiPoly(Fp, zvars, out_terms)
