"""Chevalley structure constants and the relative differential ``d_pi``.

Constants ``N[a, b]`` (``[e_a, e_b] = N[a, b] e_{a+b}``) are fixed by the
extraspecial-pair algorithm: positive roots of the domain are ordered by
height, then lexicographically, and every extraspecial pair gets the sign
``+``.  The remaining constants follow from the usual identities.

For the forms ``omega^{-delta}`` we use the convention
``[e_{-d}, e_{-d'}] = C[d, d'] e_{-(d+d')}``, i.e. ``C[d, d'] = N[-d, -d']``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .domains import HermitianDomain
from .report import Report
from .roots import Vec, format_vec, inner, solve_exact

__all__ = [
    "ChevalleyTable",
    "RelativeForm",
    "build_chevalley",
    "check_jacobi",
    "resign",
    "random_signs",
    "verify_graded_vanishing",
    "verify_relative_differentials",
    "d_pi",
    "generator",
    "random_form",
    "omega_nc1",
    "verify_omega_nc1_closed",
    "dump_table",
]


def simple_system(positive: Sequence[Vec]) -> list[Vec]:
    """Positive roots that are not a sum of two positive roots."""
    pos = set(positive)
    return [d for d in positive if not any((d - x) in pos for x in positive if x != d)]


def heights(positive: Sequence[Vec]) -> dict[Vec, int]:
    simple = simple_system(positive)
    gram = [[inner(a, b) for b in simple] for a in simple]
    out = {}
    for d in positive:
        coeffs = solve_exact(gram, [inner(a, d) for a in simple])
        if coeffs is None or any(c.denominator != 1 or c < 0 for c in coeffs):
            raise ValueError(f"{format_vec(d)} is not a nonnegative combination of simple roots")
        out[d] = int(sum(coeffs))
    return out


@dataclass(frozen=True)
class ChevalleyTable:
    """Structure constants for every pair of roots whose sum is a root.

    ``by_pair`` holds the ``C`` convention over positive roots; ``N`` holds
    the full table.  ``order`` is the canonical (lexicographic) order of
    ``Delta_+`` used to index forms.
    """

    dom: HermitianDomain
    N: Mapping[tuple[Vec, Vec], Fraction]
    order: tuple[Vec, ...]
    grading: Mapping[Vec, str]
    by_pair: Mapping[tuple[Vec, Vec], Fraction] = field(init=False)
    index: Mapping[Vec, int] = field(init=False)

    def __post_init__(self) -> None:
        pos = set(self.order)
        c = {
            (d, e): self.N[(-d, -e)]
            for d in self.order
            for e in self.order
            if (d + e) in pos
        }
        object.__setattr__(self, "by_pair", c)
        object.__setattr__(self, "index", {d: i for i, d in enumerate(self.order)})

    def C(self, d: Vec, e: Vec) -> Fraction:
        return self.by_pair.get((d, e), Fraction(0))


def _string_p(rs, a: Vec, b: Vec) -> int:
    """Largest ``p`` with ``b - p a`` a root."""
    p = 0
    while rs.is_root(b - (p + 1) * a):
        p += 1
    return p


def build_chevalley(dom: HermitianDomain) -> ChevalleyTable:
    rs = dom.rs
    pos = dom.positive
    posset = set(pos)
    ht = heights(pos)
    ordered = sorted(pos, key=lambda d: (ht[d], d))
    rank = {d: i for i, d in enumerate(ordered)}
    sq = lambda v: inner(v, v)  # noqa: E731

    Npos: dict[tuple[Vec, Vec], Fraction] = {}

    def N(a: Vec, b: Vec) -> Fraction:
        s = a + b
        if not rs.is_root(s):
            return Fraction(0)
        if a in posset and b in posset:
            return Npos[(a, b)]
        if a not in posset and b not in posset:
            return -N(-a, -b)
        c = -s
        # Rotate (a, b, c) until the leading pair shares a sign.
        if (b in posset) == (c in posset):
            return sq(c) * N(b, c) / sq(a)
        return sq(c) * N(c, a) / sq(b)

    for xi in ordered:
        pairs = [(a, xi - a) for a in ordered if rank[a] < rank.get(xi - a, -1)]
        if not pairs:
            continue
        g, d = pairs[0]  # extraspecial
        v = Fraction(_string_p(rs, g, d) + 1)
        Npos[(g, d)], Npos[(d, g)] = v, -v
        for a, b in pairs[1:]:
            val = Fraction(0)
            if rs.is_root(d - a):
                val += N(d, -a) * N(g, -b) / sq(d - a)
            if rs.is_root(g - a):
                val += N(-a, g) * N(d, -b) / sq(g - a)
            val = sq(xi) * val / Npos[(g, d)]
            Npos[(a, b)], Npos[(b, a)] = val, -val

    full = {(a, b): N(a, b) for a in rs.roots for b in rs.roots if rs.is_root(a + b)}
    grading = {d: dom.part_of(d) for d in pos}
    table = ChevalleyTable(dom, full, tuple(pos), grading)
    bad = check_jacobi(table)
    if bad:
        raise RuntimeError(f"Jacobi identity fails, e.g. {bad[0]}")
    for (a, b), v in full.items():
        if abs(v) != _string_p(rs, a, b) + 1:
            raise RuntimeError(f"|N({format_vec(a)}, {format_vec(b)})| != p + 1")
    return table


# Lie algebra elements: (cartan vector, {root: coeff}).
_Elem = tuple[Vec, dict]


def _bracket_basis(table: ChevalleyTable, a: Vec, b: Vec) -> _Elem:
    dim = table.dom.rs.ambient_dim
    if a + b == Vec.zero(dim):
        return 2 * a / inner(a, a), {}
    n = table.N.get((a, b))
    return Vec.zero(dim), ({a + b: n} if n else {})


def _bracket(table: ChevalleyTable, x: _Elem, y: _Elem) -> _Elem:
    hx, rx = x
    hy, ry = y
    h = Vec.zero(len(hx))
    out: dict[Vec, Fraction] = {}

    def acc(r, c):
        if c:
            out[r] = out.get(r, Fraction(0)) + c

    for r, c in ry.items():
        acc(r, inner(r, hx) * c)
    for r, c in rx.items():
        acc(r, -inner(r, hy) * c)
    for a, ca in rx.items():
        for b, cb in ry.items():
            hh, rr = _bracket_basis(table, a, b)
            h = h + ca * cb * hh
            for r, c in rr.items():
                acc(r, ca * cb * c)
    return h, {r: c for r, c in out.items() if c}


def check_jacobi(table: ChevalleyTable) -> list[str]:
    """All root triples violating ``[[x,y],z] + [[y,z],x] + [[z,x],y] = 0``."""
    roots = table.dom.rs.roots
    dim = table.dom.rs.ambient_dim
    zero = Vec.zero(dim)
    e = {r: (zero, {r: Fraction(1)}) for r in roots}
    bad = []
    for i, a in enumerate(roots):
        for j in range(i + 1, len(roots)):
            b = roots[j]
            ab = _bracket(table, e[a], e[b])
            for k in range(j + 1, len(roots)):
                c = roots[k]
                if a + b + c != zero and not any(
                    table.dom.rs.is_root(s) or s == zero for s in (a + b, b + c, a + c)
                ):
                    continue
                t1 = _bracket(table, ab, e[c])
                t2 = _bracket(table, _bracket(table, e[b], e[c]), e[a])
                t3 = _bracket(table, _bracket(table, e[c], e[a]), e[b])
                h = t1[0] + t2[0] + t3[0]
                tot: dict[Vec, Fraction] = {}
                for part in (t1[1], t2[1], t3[1]):
                    for r, v in part.items():
                        tot[r] = tot.get(r, Fraction(0)) + v
                if h != zero or any(tot.values()):
                    bad.append(f"{format_vec(a)} | {format_vec(b)} | {format_vec(c)}")
    return bad


def random_signs(table: ChevalleyTable, rng: random.Random) -> dict[Vec, int]:
    return {d: rng.choice((1, -1)) for d in table.order}


def resign(table: ChevalleyTable, eps: Mapping[Vec, int]) -> ChevalleyTable:
    """Replace ``e_{+-d}`` by ``eps[d] e_{+-d}``; Jacobi is preserved."""
    sign = lambda r: eps[r] if r in eps else eps[-r]  # noqa: E731
    N = {(a, b): sign(a) * sign(b) * sign(a + b) * v for (a, b), v in table.N.items()}
    return ChevalleyTable(table.dom, N, table.order, table.grading)


_ALLOWED = {
    ("c", "c"): {"c"},
    ("c", "nc1"): {"nc1"},
    ("c", "nc2"): {"nc2"},
    ("nc1", "nc2"): {"c"},
    ("nc1", "nc1"): set(),
    ("nc2", "nc2"): set(),
}
_GROUPS = {
    ("c", "c"): "cc",
    ("c", "nc1"): "cnc",
    ("c", "nc2"): "cnc",
    ("nc1", "nc2"): "ncnc",
    ("nc1", "nc1"): "ncinci",
    ("nc2", "nc2"): "ncinci",
}


def _class(table: ChevalleyTable, d: Vec, e: Vec) -> tuple[str, str]:
    pd, pe = table.grading[d], table.grading[e]
    key = tuple(sorted((pd, pe), key=("c", "nc1", "nc2").index))
    return key  # type: ignore[return-value]


def verify_graded_vanishing(table: ChevalleyTable) -> Report:
    """Every nonzero ``C[d, d']`` must land in the part allowed by the grading."""
    dom = table.dom
    rep = Report(dom.label, dict(dom.parameters))
    bad: dict[str, list[str]] = {g: [] for g in ("cc", "cnc", "ncnc", "ncinci")}
    allowed_count: dict[str, int] = {}
    for (d, e), c in sorted(table.by_pair.items()):
        if c == 0:
            continue
        key = _class(table, d, e)
        target = table.grading[d + e]
        if target not in _ALLOWED[key]:
            bad[_GROUPS[key]].append(f"C[{format_vec(d)}|{format_vec(e)}]={c} -> {target}")
        else:
            tag = f"{key[0]}+{key[1]}->{target}"
            allowed_count[tag] = allowed_count.get(tag, 0) + 1
    for g, items in bad.items():
        rep.add(f"vanishing-{g}", "graded-vanishing", not items, items[:5])
    summary = " ".join(f"{k}:{v}" for k, v in sorted(allowed_count.items()))
    rep.add("allowed-nonzero", "graded-vanishing", True, (), summary or "none")
    return rep


@dataclass(frozen=True)
class RelativeForm:
    """Constant-coefficient form: sorted index tuple -> coefficient."""

    terms: Mapping[tuple[int, ...], Fraction]
    degree: int

    @staticmethod
    def build(terms: Mapping[tuple[int, ...], Fraction], degree: int) -> "RelativeForm":
        clean = {}
        for k, v in terms.items():
            if v:
                if list(k) != sorted(set(k)) or len(k) != degree:
                    raise ValueError(f"monomial {k} not strictly increasing of degree {degree}")
                clean[k] = Fraction(v)
        return RelativeForm(dict(sorted(clean.items())), degree)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RelativeForm") -> "RelativeForm":
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return RelativeForm.build(out, self.degree if self.terms else other.degree)


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """Sign of the permutation sorting ``idx``; ``None`` if an index repeats."""
    if len(set(idx)) != len(idx):
        return 0, None
    arr = list(idx)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


def generator(table: ChevalleyTable, root: Vec) -> RelativeForm:
    return RelativeForm.build({(table.index[root],): Fraction(1)}, 1)


def _d_generator(table: ChevalleyTable, i: int) -> dict[tuple[int, ...], Fraction]:
    """``d omega^{-delta} = -1/2 sum C[d', d''] omega^{-d'} ^ omega^{-d''}`` over ``d'+d'' = delta``."""
    delta = table.order[i]
    out: dict[tuple[int, ...], Fraction] = {}
    for d1 in table.order:
        d2 = delta - d1
        if d2 not in table.index:
            continue
        c = table.C(d1, d2)
        if not c:
            continue
        sign, key = _sort_sign((table.index[d1], table.index[d2]))
        out[key] = out.get(key, Fraction(0)) - Fraction(1, 2) * c * sign
    return {k: v for k, v in out.items() if v}


def d_pi(form: RelativeForm, table: ChevalleyTable) -> RelativeForm:
    """Graded derivation of degree one."""
    gens = {}
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, coeff in form.terms.items():
        for j, i in enumerate(mono):
            if i not in gens:
                gens[i] = _d_generator(table, i)
            for pair, c in gens[i].items():
                sign, key = _sort_sign(mono[:j] + pair + mono[j + 1:])
                if key is None:
                    continue
                out[key] = out.get(key, Fraction(0)) + (-1) ** j * sign * coeff * c
    return RelativeForm.build(out, form.degree + 1)


def random_form(table: ChevalleyTable, rng: random.Random, max_degree: int = 4, max_terms: int = 4) -> RelativeForm:
    n = len(table.order)
    deg = rng.randint(1, min(max_degree, n))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = tuple(sorted(rng.sample(range(n), deg)))
        terms[key] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return RelativeForm.build(terms, deg)


def verify_relative_differentials(table: ChevalleyTable) -> Report:
    """``d omega^{-delta}`` only contains the monomial types allowed by the grading."""
    rep = Report(table.dom.label, dict(table.dom.parameters))
    expect = {
        "c": {("c", "c"), ("nc1", "nc2")},
        "nc1": {("c", "nc1")},
        "nc2": {("c", "nc2")},
    }
    for part in ("c", "nc1", "nc2"):
        bad = []
        for i, d in enumerate(table.order):
            if table.grading[d] != part:
                continue
            for a, b in _d_generator(table, i):
                key = _class(table, table.order[a], table.order[b])
                if key not in expect[part]:
                    bad.append(f"d omega^-({format_vec(d)}) has {key[0]}^{key[1]} term")
        rep.add(f"d-omega-{part}", "relative-differential", not bad, bad[:5])
    return rep


def omega_nc1(table: ChevalleyTable) -> RelativeForm:
    idx = tuple(sorted(table.index[b] for b in table.dom.nc1))
    return RelativeForm.build({idx: Fraction(1)}, len(idx))


def verify_omega_nc1_closed(table: ChevalleyTable) -> Report:
    """``d_pi omega^{nc,1} = 0`` and every expansion term repeats a factor."""
    dom = table.dom
    rep = Report(dom.label, dict(dom.parameters))
    w = omega_nc1(table)
    dw = d_pi(w, table)
    rep.add("d-omega-nc1-zero", "omega-closed", dw.is_zero(), [str(k) for k in list(dw.terms)[:5]], f"q={w.degree}")
    (mono,) = w.terms
    raw_terms = 0
    survivors = []
    for j, i in enumerate(mono):
        rest = set(mono[:j] + mono[j + 1:])
        for pair in _d_generator(table, i):
            raw_terms += 1
            if not (set(pair) & rest):
                survivors.append(f"factor {format_vec(table.order[i])}: {pair}")
    rep.add("repeated-factor-mechanism", "omega-closed", not survivors, survivors[:5], f"{raw_terms} raw terms")
    return rep


def dump_table(table: ChevalleyTable) -> list[str]:
    """``C[d|d']=value`` lines in canonical order."""
    return [f"C[{format_vec(d)}|{format_vec(e)}]={v}" for (d, e), v in sorted(table.by_pair.items())]
