"""Weight-level hypotheses for the Penrose transformation.

Everything here is a decidable predicate on exact weights: injectivity,
non-triviality, chamber membership, Property W, the canonical weight and
its threshold, and the cup-product weight calculus.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor
from typing import Sequence

from .domains import HermitianDomain, rho_components
from .report import FLAGGED, Report
from .roots import Vec, coroot_pairing, format_vec, gcd_of, inner, is_integral_weight

__all__ = [
    "InjectivityWitness",
    "ThresholdResult",
    "CupBookkeeping",
    "check_injectivity",
    "compact_witnesses",
    "check_nontriviality_necessary",
    "check_chamber",
    "check_property_w",
    "check_property_w_specialized",
    "canonical_mu_c",
    "penrose_pair",
    "threshold_constraints",
    "threshold_n",
    "verify_beta_alpha_lemma",
    "search_cup_pairs",
    "verify_cup_pair",
    "cup_bookkeeping",
]


def _require_integral(dom: HermitianDomain, w: Sequence[Fraction], what: str) -> Vec:
    v = Vec(w)
    dom.rs.check_dim(v)
    if not is_integral_weight(v, dom.rs):
        raise ValueError(f"{what}={format_vec(v)} is not an integral weight")
    return v


@dataclass(frozen=True)
class InjectivityWitness:
    """``assignments[i] = (beta, alpha_beta or None)``."""

    assignments: tuple[tuple[Vec, Vec | None], ...]
    holds: bool

    def lines(self) -> list[str]:
        return [
            f"beta={format_vec(b)} alpha={format_vec(a) if a is not None else 'none'}"
            for b, a in self.assignments
        ]


def compact_witnesses(dom: HermitianDomain, weight: Vec, roots: Sequence[Vec]) -> InjectivityWitness:
    """For each root ``x`` pick the first compact ``alpha`` with ``(weight - x, alpha) < 0``."""
    out = []
    for x in roots:
        shifted = weight - x
        out.append((x, next((a for a in dom.delta_c if inner(shifted, a) < 0), None)))
    return InjectivityWitness(tuple(out), all(a is not None for _, a in out))


def check_injectivity(dom: HermitianDomain, mu_prime: Sequence[Fraction]) -> InjectivityWitness:
    v = _require_integral(dom, mu_prime, "mu'")
    return compact_witnesses(dom, v, dom.nc1)


def check_nontriviality_necessary(dom: HermitianDomain, mu_prime: Sequence[Fraction]) -> bool:
    dom.rs.check_dim(mu_prime)
    return all(inner(mu_prime, a) >= 0 for a in dom.delta_c)


def check_chamber(dom: HermitianDomain, zeta: Sequence[Fraction]) -> bool:
    dom.rs.check_dim(zeta)
    return (
        all(inner(zeta, a) > 0 for a in dom.delta_c)
        and all(inner(zeta, b) > 0 for b in dom.nc1)
        and all(inner(zeta, g) < 0 for g in dom.nc2)
    )


def check_property_w(dom: HermitianDomain, mu: Sequence[Fraction]) -> bool:
    """General form, summing over every root positive on ``mu + rho``.

    Raises ``ValueError`` when ``mu + rho`` is singular.
    """
    dom.rs.check_dim(mu)
    lam = Vec(mu) + rho_components(dom).rho
    if any(inner(lam, a) == 0 for a in dom.rs.roots):
        raise ValueError(f"mu + rho = {format_vec(lam)} is singular")
    shift = Vec.zero(dom.rs.ambient_dim)
    for a in dom.rs.roots:
        if inner(lam, a) > 0:
            shift = shift + a
    core = lam - shift / 2
    nc = dom.noncompact + tuple(-b for b in dom.noncompact)
    return all(inner(core, b) > 0 for b in nc if inner(lam, b) > 0)


def check_property_w_specialized(dom: HermitianDomain, mu_prime: Sequence[Fraction]) -> bool:
    """``(mu' + 2 rho'_nc, -beta') > 0`` for every ``beta'`` in ``Delta'_+^nc``."""
    dom.rs.check_dim(mu_prime)
    v = Vec(mu_prime) + 2 * rho_components(dom).rho_prime_nc
    return all(inner(v, -b) > 0 for b in dom.prime_noncompact)


def canonical_mu_c(dom: HermitianDomain) -> tuple[Vec, int]:
    """``mu'_c = 2 rho_nc1 - 2 rho_nc2`` and the largest ``k0`` dividing it in the weight lattice."""
    rho = rho_components(dom)
    mu_c = 2 * rho.rho_nc1 - 2 * rho.rho_nc2
    pairings = [coroot_pairing(mu_c, a) for a in dom.rs.simple_roots]
    if any(p.denominator != 1 for p in pairings):
        raise ValueError("mu'_c is not integral")
    k0 = gcd_of(abs(int(p)) for p in pairings)
    if k0 == 0:
        raise ValueError("mu'_c vanishes on every simple coroot")
    return mu_c, k0


def penrose_pair(dom: HermitianDomain, k: int, mu0: Sequence[Fraction] | None = None) -> tuple[Vec, Vec]:
    """``mu' = (k/k0) mu'_c + mu0`` and ``mu = mu' - 2 rho_nc1``."""
    if k < 1:
        raise ValueError("k must be positive")
    mu0v = dom.zero() if mu0 is None else _require_integral(dom, mu0, "mu0")
    mu_c, k0 = canonical_mu_c(dom)
    rho = rho_components(dom)
    mu_p = Fraction(k, k0) * mu_c + mu0v
    mu = mu_p - 2 * rho.rho_nc1
    assert is_integral_weight(mu_p, dom.rs), "mu' lost integrality"
    assert mu + rho.rho == mu_p + rho.rho_prime
    return mu_p, mu


@dataclass(frozen=True)
class _Affine:
    """``slope * k + offset`` compared against 0 with the given sense."""

    group: str
    root: Vec
    slope: Fraction
    offset: Fraction
    sense: int  # +1: want > 0, -1: want < 0

    def value(self, k: int) -> Fraction:
        return self.slope * k + self.offset

    def holds(self, k: int) -> bool:
        return self.sense * self.value(k) > 0

    def min_k(self) -> int | None:
        a, b = self.sense * self.slope, self.sense * self.offset
        if a > 0:
            return max(1, floor(-b / a) + 1)
        return 1 if b > 0 else None


def threshold_constraints(dom: HermitianDomain, mu0: Vec) -> list[_Affine]:
    """The affine-in-``k`` inequalities for ``mu'_k = (k/k0) mu'_c + mu0``.

    ``(mu'_k + rho', x)`` is tested on ``nc1`` (> 0) and ``nc2`` (< 0);
    ``(mu'_k + 2 rho'_nc, -x)`` on ``Delta'_+^nc`` (> 0); the compact
    group has zero slope.
    """
    mu_c, k0 = canonical_mu_c(dom)
    rho = rho_components(dom)
    step = mu_c / k0
    base = mu0 + rho.rho_prime  # value at k = 0
    pw_base = mu0 + 2 * rho.rho_prime_nc
    out = [_Affine("c", a, inner(step, a), inner(base, a), 1) for a in dom.delta_c]
    out += [_Affine("nc1", b, inner(step, b), inner(base, b), 1) for b in dom.nc1]
    out += [_Affine("nc2", g, inner(step, g), inner(base, g), -1) for g in dom.nc2]
    out += [_Affine("pw", b, inner(step, -b), inner(pw_base, -b), 1) for b in dom.prime_noncompact]
    return out


def direct_constraints_hold(dom: HermitianDomain, k: int, mu0: Vec) -> dict[str, bool]:
    """Re-evaluate each constraint group at ``k`` straight from the weights."""
    rho = rho_components(dom)
    mu_p, _ = penrose_pair(dom, k, mu0)
    z = mu_p + rho.rho_prime
    w = mu_p + 2 * rho.rho_prime_nc
    return {
        "c": all(inner(z, a) > 0 for a in dom.delta_c),
        "nc1": all(inner(z, b) > 0 for b in dom.nc1),
        "nc2": all(inner(z, g) < 0 for g in dom.nc2),
        "pw": all(inner(w, -b) > 0 for b in dom.prime_noncompact),
    }


@dataclass(frozen=True)
class ThresholdResult:
    N: int
    per_constraint: tuple[tuple[str, int], ...]
    k0: int
    mu_c_prime: Vec
    failing_below: tuple[str, ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.per_constraint)


def threshold_n(dom: HermitianDomain, mu0: Sequence[Fraction] | None = None) -> ThresholdResult:
    """Smallest ``N`` such that every constraint holds for all ``k >= N``."""
    mu0v = dom.zero() if mu0 is None else _require_integral(dom, mu0, "mu0")
    if not check_nontriviality_necessary(dom, mu0v):
        raise ValueError("mu0 must satisfy (mu0, alpha) >= 0 on Delta_c")
    inj = compact_witnesses(dom, mu0v, dom.nc1)
    if not inj.holds:
        bad = [format_vec(b) for b, a in inj.assignments if a is None]
        raise ValueError(f"mu0 fails the injectivity condition at {', '.join(bad)}")
    mu_c, k0 = canonical_mu_c(dom)
    cons = threshold_constraints(dom, mu0v)
    groups: dict[str, int] = {}
    for c in cons:
        m = c.min_k()
        if m is None:
            raise ValueError(f"{c.group} constraint at {format_vec(c.root)} never holds")
        if c.group == "c":
            continue
        groups[c.group] = max(groups.get(c.group, 1), m)
    n = max(groups.values())
    at_n = direct_constraints_hold(dom, n, mu0v)
    assert all(at_n.values()), at_n
    failing: tuple[str, ...] = ()
    if n > 1:
        below = direct_constraints_hold(dom, n - 1, mu0v)
        failing = tuple(g for g, ok in below.items() if not ok)
        assert failing, "N is not minimal"
    per = tuple((g, groups[g]) for g in ("nc1", "nc2", "pw") if g in groups)
    return ThresholdResult(n, per, k0, mu_c, failing)


def verify_beta_alpha_lemma(dom: HermitianDomain, strong: bool = False) -> Report:
    """For each ``beta`` in ``nc1`` (all noncompact roots if ``strong``) find a
    compact ``alpha`` with ``(beta, alpha) > 0``.

    On ``sp(2)`` the non-strong form has a known gap at ``e1 + e2``, which
    is flagged rather than failed; the strong form is rejected there.
    """
    is_sp2 = dom.rs.family == "C" and dom.rs.rank == 2
    if strong and is_sp2:
        raise ValueError("the strong form excludes sp(2)")
    key = "compact-witness-strong" if strong else "compact-witness"
    rep = Report(dom.label, dict(dom.parameters) | {"strong": str(strong).lower()})
    for b in dom.noncompact if strong else dom.nc1:
        a = next((a for a in dom.delta_c if inner(b, a) > 0), None)
        name = f"beta={format_vec(b)}"
        if a is not None:
            rep.add(name, key, True, [f"alpha={format_vec(a)}"], f"(beta,alpha)={inner(b, a)}")
        elif is_sp2:
            rep.add(name, key, FLAGGED, [], "no compact witness; known sp(2) exception, the method does not apply")
        else:
            rep.add(name, key, False, [], "no compact alpha with (beta,alpha) > 0")
    return rep


def _scaled(v: Sequence[Fraction]) -> tuple[int, ...]:
    out = tuple(2 * c for c in v)
    assert all(c.denominator == 1 for c in out)
    return tuple(int(c) for c in out)


def search_cup_pairs(dom: HermitianDomain, bound: int = 5) -> list[tuple[Vec, Vec]]:
    """All integer ``mu0`` in ``[-bound, bound]^n`` whose partner
    ``lambda0 = rho_nc - rho_c - mu0`` completes an admissible cup pair.

    Results are re-verified by :func:`verify_cup_pair` and returned in
    lexicographic order of ``mu0``.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    rho = rho_components(dom)
    target = _scaled(rho.rho_nc - rho.rho_c)
    comp = [_scaled(a) for a in dom.delta_c]
    nc1 = [_scaled(b) for b in dom.nc1]
    nc2 = [_scaled(g) for g in dom.nc2]
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))  # noqa: E731

    def twisted_ok(w, shifts):
        return all(any(dot([x - y for x, y in zip(w, s)], a) < 0 for a in comp) for s in shifts)

    found = []
    for mu in product(range(-bound, bound + 1), repeat=dom.rs.ambient_dim):
        m2 = tuple(2 * x for x in mu)
        if any(dot(m2, a) < 0 for a in comp):
            continue
        l2 = tuple(t - x for t, x in zip(target, m2))
        if any(dot(l2, a) < 0 for a in comp):
            continue
        if twisted_ok(m2, nc1) and twisted_ok(l2, nc2):
            found.append((Vec(mu), rho.rho_nc - rho.rho_c - Vec(mu)))
    found.sort()
    for mu0, lam0 in found:
        ok, why = verify_cup_pair(dom, mu0, lam0)
        assert ok, f"second pass rejected mu0={format_vec(mu0)}: {why}"
    return found


def verify_cup_pair(dom: HermitianDomain, mu0: Vec, lam0: Vec) -> tuple[bool, str]:
    """Exact, Fraction-based check of every cup-pair condition."""
    rho = rho_components(dom)
    if mu0 + lam0 != rho.rho_nc - rho.rho_c:
        return False, "mu0 + lambda0 != rho_nc - rho_c"
    if not check_nontriviality_necessary(dom, mu0):
        return False, "(mu0, alpha) < 0 for some compact alpha"
    if not check_nontriviality_necessary(dom, lam0):
        return False, "(lambda0, alpha) < 0 for some compact alpha"
    if not compact_witnesses(dom, mu0, dom.nc1).holds:
        return False, "mu0 fails against nc1"
    if not compact_witnesses(dom, lam0, dom.nc2).holds:
        return False, "lambda0 fails against nc2"
    return True, ""


@dataclass(frozen=True)
class CupBookkeeping:
    mu: Vec
    lam: Vec
    sum_is_minus_rho: bool
    p: int
    q: int
    d: int
    dim_check: bool


def cup_bookkeeping(dom: HermitianDomain, mu0: Sequence[Fraction], k: int) -> CupBookkeeping:
    rho = rho_components(dom)
    mu_c, k0 = canonical_mu_c(dom)
    _, mu = penrose_pair(dom, k, mu0)
    lam0 = rho.rho_nc - rho.rho_c - Vec(mu0)
    lam_p = -Fraction(k, k0) * mu_c + lam0
    lam = lam_p - 2 * rho.rho_nc2
    c = dom.counts
    return CupBookkeeping(
        mu,
        lam,
        mu + lam == -rho.rho,
        c["p"],
        c["q"],
        c["d"],
        c["p"] + c["q"] + c["d"] == len(dom.rs.roots) // 2,
    )
