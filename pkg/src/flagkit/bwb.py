"""Borel-Weil-Bott for the compact subgroup acting on the base cycle.

Only the compact positive roots ``Delta_+^c`` enter.  A weight ``lam`` is
moved into the dominant chamber by simple reflections applied to
``lam + rho_c``; the number of steps is the cohomological degree and the
Weyl dimension formula gives the dimension.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .chevalley import simple_system
from .domains import HermitianDomain, rho_components
from .penrose import check_injectivity
from .report import Report
from .roots import Vec, format_vec, inner, is_integral_weight, reflect

__all__ = [
    "CompactWeylGroup",
    "BwbOutcome",
    "ALL_VANISH",
    "CONCENTRATED",
    "build_compact_weyl",
    "bwb_cohomology",
    "h0_vanishes_on_cycle",
    "verify_mu_j_vanishing",
    "weyl_dimension",
    "freudenthal_dimension",
]

ALL_VANISH = "AllVanish"
CONCENTRATED = "Concentrated"

Matrix = tuple[tuple[Fraction, ...], ...]


def _apply(m: Matrix, v: Sequence[Fraction]) -> Vec:
    return Vec(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def _compose(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def _reflection_matrix(alpha: Vec) -> Matrix:
    n = len(alpha)
    basis = [Vec([1 if i == j else 0 for j in range(n)]) for i in range(n)]
    images = [reflect(e, alpha) for e in basis]
    return tuple(tuple(images[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class CompactWeylGroup:
    elements: tuple[Matrix, ...]
    lengths: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, i: int, v: Sequence[Fraction]) -> Vec:
        return _apply(self.elements[i], v)


def build_compact_weyl(dom: HermitianDomain, cap: int = factorial(10)) -> CompactWeylGroup:
    """Closure of the simple compact reflections, in breadth-first order."""
    n = dom.rs.ambient_dim
    ident: Matrix = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    gens = [_reflection_matrix(a) for a in simple_system(dom.delta_c)]
    seen = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                sw = _compose(s, w)
                if sw not in seen:
                    seen[sw] = seen[w] + 1
                    if len(seen) > cap:
                        raise ValueError(f"compact Weyl group exceeds cap {cap}")
                    nxt.append(sw)
        frontier = nxt
    pos = set(dom.delta_c)
    elements = tuple(seen)
    lengths = tuple(sum(1 for a in dom.delta_c if -_apply(w, a) in pos) for w in elements)
    assert all(lengths[i] == seen[w] for i, w in enumerate(elements)), "length mismatch"
    return CompactWeylGroup(elements, lengths)


@dataclass(frozen=True)
class BwbOutcome:
    status: str
    degree: int | None = None
    dimension: int | None = None
    dominant_rep: Vec | None = None


def _require_integral(dom: HermitianDomain, lam: Sequence[Fraction]) -> Vec:
    v = Vec(lam)
    dom.rs.check_dim(v)
    if not is_integral_weight(v, dom.rs):
        raise ValueError(f"{format_vec(v)} is not an integral weight")
    return v


def weyl_dimension(dom: HermitianDomain, lam: Sequence[Fraction]) -> Fraction:
    """``prod (lam + rho_c, a) / (rho_c, a)`` over compact positive roots."""
    rc = rho_components(dom).rho_c
    shifted = Vec(lam) + rc
    return prod((inner(shifted, a) / inner(rc, a) for a in dom.delta_c), start=Fraction(1))


def bwb_cohomology(dom: HermitianDomain, lam: Sequence[Fraction]) -> BwbOutcome:
    v = _require_integral(dom, lam)
    rc = rho_components(dom).rho_c
    x = v + rc
    if any(inner(x, a) == 0 for a in dom.delta_c):
        return BwbOutcome(ALL_VANISH)
    simple = simple_system(dom.delta_c)
    steps = 0
    while True:
        bad = next((a for a in simple if inner(x, a) < 0), None)
        if bad is None:
            break
        x = reflect(x, bad)
        steps += 1
    assert steps == sum(1 for a in dom.delta_c if inner(v + rc, a) < 0)
    dim = prod((inner(x, a) / inner(rc, a) for a in dom.delta_c), start=Fraction(1))
    assert dim.denominator == 1 and dim >= 1
    return BwbOutcome(CONCENTRATED, steps, int(dim), x - rc)


def h0_vanishes_on_cycle(dom: HermitianDomain, lam: Sequence[Fraction]) -> bool:
    """``True`` iff some compact ``alpha`` has ``(lam, alpha) < 0``.

    The shifted form ``(lam + rho_c, alpha) <= 0`` and the BWB outcome are
    both checked against this; disagreement raises ``AssertionError``.
    """
    v = _require_integral(dom, lam)
    rc = rho_components(dom).rho_c
    plain = any(inner(v, a) < 0 for a in dom.delta_c)
    shifted = any(inner(v + rc, a) <= 0 for a in dom.delta_c)
    if plain != shifted:
        raise AssertionError(f"vanishing criteria disagree at {format_vec(v)}")
    out = bwb_cohomology(dom, v)
    h0_zero = out.status == ALL_VANISH or out.degree != 0
    if h0_zero != plain:
        raise AssertionError(f"BWB disagrees with the vanishing criterion at {format_vec(v)}")
    return plain


def verify_mu_j_vanishing(dom: HermitianDomain, mu_prime: Sequence[Fraction]) -> Report:
    """For every ``beta_j`` in ``nc1``, ``H^0`` of ``L_{mu' - beta_j}`` on the cycle vanishes."""
    inj = check_injectivity(dom, mu_prime)
    if not inj.holds:
        raise ValueError(f"mu'={format_vec(mu_prime)} fails the injectivity condition")
    mp = Vec(mu_prime)
    rep = Report(dom.label, dict(dom.parameters) | {"mu_prime": format_vec(mp)})
    for b in dom.nc1:
        lam = mp - b
        ok = h0_vanishes_on_cycle(dom, lam)
        alpha = next((a for a in dom.delta_c if inner(lam, a) < 0), None)
        wit = [f"mu_j={format_vec(lam)}"] + ([f"alpha={format_vec(alpha)}"] if alpha is not None else [])
        rep.add(f"beta={format_vec(b)}", "mu-j", ok, wit)
    return rep


def freudenthal_dimension(dom: HermitianDomain, lam: Sequence[Fraction]) -> int:
    """Dimension of the compact irreducible module of highest weight ``lam``
    by summing Freudenthal multiplicities over the weights.

    Independent of :func:`weyl_dimension`; used as a cross-check.
    """
    lam = Vec(lam)
    pos = dom.delta_c
    if any(inner(lam, a) < 0 for a in pos):
        raise ValueError("highest weight must be compact-dominant")
    simple = simple_system(pos)
    rc = rho_components(dom).rho_c
    radius = inner(lam, lam)
    top = inner(lam + rc, lam + rc)

    def dominant(v: Vec) -> Vec:
        while True:
            a = next((s for s in simple if inner(v, s) < 0), None)
            if a is None:
                return v
            v = reflect(v, a)

    # Every weight lies in lam - Q_+ inside the ball |mu| <= |lam|.
    weights = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for w in frontier:
            for s in simple:
                u = w - s
                if u not in weights and inner(u, u) <= radius:
                    weights.add(u)
                    nxt.append(u)
        frontier = nxt
    dom_weights = sorted((w for w in weights if all(inner(w, s) >= 0 for s in simple)), key=lambda w: -inner(w + rc, w + rc))

    mult: dict[Vec, Fraction] = {}
    for mu in dom_weights:
        if mu == lam:
            mult[mu] = Fraction(1)
            continue
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = mu + k * a
                if inner(nu, nu) > radius:
                    break
                total += mult.get(dominant(nu), Fraction(0)) * inner(nu, a)
                k += 1
        denom = top - inner(mu + rc, mu + rc)
        mult[mu] = 2 * total / denom
    dim = Fraction(0)
    for mu, m in mult.items():
        if m:
            dim += m * _orbit_size(mu, simple)
    assert dim.denominator == 1
    return int(dim)


def _orbit_size(v: Vec, simple: Sequence[Vec]) -> int:
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for w in frontier:
            for s in simple:
                u = reflect(w, s)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return len(seen)
