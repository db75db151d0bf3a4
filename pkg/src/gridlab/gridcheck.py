"""Bipartite graphs from hypersurfaces over F_p, exhaustive (s,t)-grid
detection with bitset adjacency rows, and edge-count reporting against the
Kővári–Sós–Turán/Füredi leading term.

The subset scans iterate in lexicographic order; that order is part of the
contract so reports are byte-identical across runs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import (
    BudgetExceeded,
    EmptySide,
    ParameterOutOfRange,
)
from .fields import GF
from .hypersurfaces import (
    Hypersurface,
    OpenSet,
    ProjPoint,
    proj_points,
    reduce_hypersurface_mod,
)

DEFAULT_BUDGET = 10**8


def enumeration_budget() -> int:
    return int(os.environ.get("GRIDLAB_BUDGET", DEFAULT_BUDGET))


@dataclass
class GridWitness:
    """Index sets certifying an (s,t)-grid; re-verified on construction."""

    S: list
    T: list

    @classmethod
    def checked(cls, S, T, rows) -> "GridWitness":
        S, T = sorted(S), sorted(T)
        for i in S:
            for j in T:
                assert rows[i] >> j & 1, f"witness edge ({i},{j}) missing"
        return cls(S, T)

    def to_json(self) -> dict:
        return {"S": self.S, "T": self.T}


class BipartiteGraph:
    """Two indexed point lists plus adjacency bitset rows (row i = left i)."""

    def __init__(self, left: list, right: list, rows: list, meta: dict | None = None):
        if not left or not right:
            raise EmptySide("both sides need at least one vertex")
        if len(rows) != len(left):
            raise ParameterOutOfRange("adjacency rows do not match left side")
        self.left = left
        self.right = right
        self.rows = rows
        self.meta = meta or {}

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def column_mask(self, j: int) -> int:
        mask = 0
        for i, r in enumerate(self.rows):
            if r >> j & 1:
                mask |= 1 << i
        return mask


def _terms_int(H: Hypersurface, p: int):
    """The form's terms as (coeff, x-exps, y-exps) integer triples mod p."""
    Hp = reduce_hypersurface_mod(H, p)
    nx = len(Hp.form.xvars)
    terms = []
    for e, c in Hp.form.poly.terms.items():
        terms.append((c.val, e[:nx], e[nx:]))
    return terms


def _point_key(pt) -> tuple:
    if isinstance(pt, ProjPoint):
        return tuple(c.val for c in pt.coords)
    return pt


def _adjacency_rows(terms, left_coords, right_coords, p):
    yexps = sorted({ye for _, _, ye in terms})
    yindex = {ye: i for i, ye in enumerate(yexps)}
    right_vals = []
    for v in right_coords:
        vals = []
        for ye in yexps:
            m = 1
            for cv, e in zip(v, ye):
                if e:
                    m = m * pow(cv, e, p) % p
            vals.append(m)
        right_vals.append(vals)
    rows = []
    for u in left_coords:
        coeff = [0] * len(yexps)
        for c, xe, ye in terms:
            m = c
            for cu, e in zip(u, xe):
                if e:
                    m = m * pow(cu, e, p) % p
            i = yindex[ye]
            coeff[i] = (coeff[i] + m) % p
        nz = [(i, cf) for i, cf in enumerate(coeff) if cf]
        mask = 0
        for j, vals in enumerate(right_vals):
            tot = 0
            for i, cf in nz:
                tot += cf * vals[i]
            if tot % p == 0:
                mask |= 1 << j
        rows.append(mask)
    return rows


def build_graph(
    H: Hypersurface,
    p: int,
    X: OpenSet | None = None,
    Y: OpenSet | None = None,
    chart: str = "affine",
) -> BipartiteGraph:
    """Vertices are the F_p-points of the chosen chart inside X and Y;
    edges by exact evaluation of the defining form."""
    s = H.s
    Fp = GF(p)
    X = X or OpenSet.full(s)
    Y = Y or OpenSet.full(s)
    if chart == "affine":
        pts = [(1,) + tail for tail in product(range(p), repeat=s)]
        proj = [ProjPoint(Fp, c) for c in pts]
    elif chart == "projective":
        proj = list(proj_points(Fp, s))
        pts = [tuple(c.val for c in q.coords) for q in proj]
    else:
        raise ParameterOutOfRange(f"unknown chart {chart!r}")
    Xp = X.reduce_mod(p)
    Yp = Y.reduce_mod(p)
    left = [c for c, q in zip(pts, proj) if Xp.contains(q)]
    right = [c for c, q in zip(pts, proj) if Yp.contains(q)]
    if not left or not right:
        raise EmptySide("open-set filters removed a whole side")
    terms = _terms_int(H, p)
    rows = _adjacency_rows(terms, left, right, p)
    display = left if chart == "projective" else [u[1:] for u in left]
    display_r = right if chart == "projective" else [v[1:] for v in right]
    return BipartiteGraph(
        display,
        display_r,
        rows,
        meta={"p": p, "s": s, "chart": chart, "hypersurface": H.to_json()},
    )


def _check_budget(n: int, s: int, budget: int | None):
    limit = budget if budget is not None else enumeration_budget()
    if comb(n, s) > limit:
        raise BudgetExceeded(
            f"C({n},{s}) = {comb(n, s)} subset iterations exceed budget {limit}"
        )


def find_grid(
    G: BipartiteGraph, s: int, t: int, budget: int | None = None
) -> GridWitness | None:
    """First s-subset of left (lexicographic) whose common neighborhood has
    size >= t; T is its t smallest members.  None when grid-free."""
    n = len(G.rows)
    if s < 1 or s > n or t < 1:
        raise ParameterOutOfRange(f"(s,t)=({s},{t}) with |left|={n}")
    _check_budget(n, s, budget)
    rows = G.rows
    full = (1 << len(G.right)) - 1

    def rec(start, depth, inter, chosen):
        for i in range(start, n - (s - depth) + 1):
            ni = inter & rows[i]
            if ni.bit_count() < t:
                continue
            if depth + 1 == s:
                return chosen + [i], ni
            hit = rec(i + 1, depth + 1, ni, chosen + [i])
            if hit:
                return hit
        return None

    hit = rec(0, 0, full, [])
    if hit is None:
        return None
    S, common = hit
    T = []
    j = 0
    while len(T) < t:
        if common >> j & 1:
            T.append(j)
        j += 1
    return GridWitness.checked(S, T, rows)


def max_common_neighborhood(
    G: BipartiteGraph, s: int, budget: int | None = None
) -> tuple:
    """(max size, lexicographically first attaining s-subset of left)."""
    n = len(G.rows)
    if s < 1 or s > n:
        raise ParameterOutOfRange(f"s={s} with |left|={n}")
    _check_budget(n, s, budget)
    rows = G.rows
    full = (1 << len(G.right)) - 1
    best = -1
    arg = None

    def rec(start, depth, inter, chosen):
        nonlocal best, arg
        for i in range(start, n - (s - depth) + 1):
            ni = inter & rows[i]
            c = ni.bit_count()
            # deeper intersections only shrink; <= best cannot strictly win,
            # and equal ties keep the earlier (lex-smaller) argmax
            if c <= best:
                continue
            if depth + 1 == s:
                best, arg = c, chosen + [i]
            else:
                rec(i + 1, depth + 1, ni, chosen + [i])

    rec(0, 0, full, [])
    return best, arg


def _nth_root_floor(a: int, n: int) -> int:
    if a < 0:
        raise ParameterOutOfRange("negative radicand")
    if a == 0:
        return 0
    x = 1 << (-(-a.bit_length() // n))
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def _fmt_scaled(scaled: int, prec: int) -> str:
    digits = str(scaled).rjust(prec + 1, "0")
    return digits[:-prec] + "." + digits[-prec:]


def edge_report(G: BipartiteGraph, s: int, t: int, prec: int = 12) -> dict:
    """Edge count versus the Füredi leading term (1/2)(t-s+1)^(1/s) n^(2-1/s)."""
    n = len(G.left) + len(G.right)
    m = G.edge_count()
    power = n ** (2 * s - 1)
    root = _nth_root_floor(power, s)
    exact_power = root**s == power
    scale = 10**prec
    n_pow_scaled = (
        root * scale if exact_power else _nth_root_floor(power * scale**s, s)
    )
    base = t - s + 1
    broot = _nth_root_floor(base, s)
    exact_base = broot**s == base
    base_scaled = (
        broot * scale if exact_base else _nth_root_floor(base * scale**s, s)
    )
    furedi_scaled = base_scaled * n_pow_scaled // (2 * scale)
    ratio_scaled = 0 if m == 0 else m * scale**2 // n_pow_scaled
    report = {
        "n": n,
        "m": m,
        "s": s,
        "t": t,
        "n_power_exact": str(root) if exact_power else None,
        "n_power": _fmt_scaled(n_pow_scaled, prec),
        "furedi_leading": _fmt_scaled(furedi_scaled, prec),
        "ratio": _fmt_scaled(ratio_scaled, prec),
        "precision": prec,
    }
    return report
