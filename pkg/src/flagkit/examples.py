"""One-shot reproduction of the worked SU(r,s) and Sp(2n) computations."""
from __future__ import annotations

import random

from .bwb import verify_mu_j_vanishing
from .chevalley import (
    build_chevalley,
    check_jacobi,
    d_pi,
    random_form,
    random_signs,
    resign,
    verify_graded_vanishing,
    verify_omega_nc1_closed,
    verify_relative_differentials,
)
from .domains import HermitianDomain, build_sp_domain, build_su_domain, rho_components, validate_domain
from .penrose import canonical_mu_c, direct_constraints_hold, search_cup_pairs, threshold_n, verify_beta_alpha_lemma
from .report import FAIL, PASS, Report
from .roots import Vec, format_vec, inner, unit

__all__ = ["reproduce_examples", "su_closed_forms", "sp_parity_vector", "CHEVALLEY_FAMILIES"]

CHEVALLEY_FAMILIES = ("su:2,1", "su:3,1", "su:3,2", "sp:2", "sp:3")


def su_closed_forms(r: int, s: int) -> dict[str, Vec]:
    """Closed forms of ``2 rho_c``, ``2 rho_nc`` and ``2 (rho_nc1 - rho_nc2)`` for ``SU(r, s)``."""
    two_rc = [r + 1 - 2 * i for i in range(1, r + 1)] + [s + 1 - 2 * l for l in range(1, s + 1)]
    two_rnc = [s + 2 - 2 * i if i <= s else -s for i in range(1, r + 1)] + [r - 2 * l for l in range(1, s + 1)]
    diff = [s] * r + [-r] * s
    return {"2rho_c": Vec(two_rc), "2rho_nc": Vec(two_rnc), "2(rho_nc1-rho_nc2)": Vec(diff)}


def sp_parity_vector(n: int) -> Vec:
    """``e1 + e3 + ...`` in ``R^n``."""
    return Vec(1 if i % 2 == 0 else 0 for i in range(n))


def _su_pairs(limit: int):
    return [(r, s) for r in range(1, limit + 1) for s in range(1, r + 1)]


def _closed_form_checks(rep: Report) -> None:
    bad = []
    for r, s in _su_pairs(6):
        rho = rho_components(build_su_domain(r, s))
        got = {"2rho_c": 2 * rho.rho_c, "2rho_nc": 2 * rho.rho_nc, "2(rho_nc1-rho_nc2)": 2 * (rho.rho_nc1 - rho.rho_nc2)}
        for key, want in su_closed_forms(r, s).items():
            if got[key] != want:
                bad.append(f"su({r},{s}) {key}: got {format_vec(got[key])}, want {format_vec(want)}")
    rep.add("su-rho-closed-forms", "rho-forms", not bad, bad, "1<=s<=r<=6")

    rho = rho_components(build_su_domain(3, 2))
    want = Vec([2, 2, 2, -3, -3])
    got = 2 * (rho.rho_nc1 - rho.rho_nc2)
    rep.add("su(3,2)-canonical-difference", "rho-forms", got == want, [format_vec(got)])

    bad = []
    for r, s in _su_pairs(8):
        if r + s < 3:
            continue
        rho = rho_components(build_su_domain(r, s))
        if (rho.rho_c == rho.rho_nc) != (r == s + 1):
            bad.append(f"su({r},{s})")
    rep.add("rho-balance-sweep", "rho-balance", not bad, bad, "1<=s<=r<=8")

    bad = []
    for n in range(2, 9):
        rho = rho_components(build_sp_domain(n))
        if rho.rho_nc - rho.rho_c != sp_parity_vector(n):
            bad.append(f"sp({n}): {format_vec(rho.rho_nc - rho.rho_c)}")
    rep.add("sp-parity-sweep", "rho-forms", not bad, bad, "2<=n<=8")


def _cup_checks(rep: Report) -> None:
    sp2 = search_cup_pairs(build_sp_domain(2), 10)
    rep.add("sp(2)-cup-empty", "cup", not sp2, [format_vec(m) for m, _ in sp2], "bound 10")

    d3 = build_sp_domain(3)
    pairs = search_cup_pairs(d3, 3)
    zero = Vec([0, 0, 0])
    lam = Vec([1, 0, 1])
    wit = [f"mu0={format_vec(m)} lambda0={format_vec(l)}" for m, l in pairs]
    rep.add("sp(3)-cup-pair", "cup", (zero, lam) in pairs, wit, f"{len(pairs)} pairs in box [-3,3]^3")
    e = lambda i: unit(3, i - 1)  # noqa: E731
    p1 = inner(lam + 2 * e(2), e(1) - e(2))
    p2 = inner(lam + e(2) + e(3), e(1) - e(3))
    rep.add("sp(3)-cup-pairings", "cup", p1 == -1 and p2 == -1, [f"gamma=0,-2,0: {p1}", f"gamma=0,-1,-1: {p2}"])

    for n in (4, 5):
        found = search_cup_pairs(build_sp_domain(n), 5)
        rep.add(f"sp({n})-cup-empty", "cup", not found, [format_vec(m) for m, _ in found], "bound 5")


def _witness_sweeps(rep: Report) -> None:
    bad = []
    for r, s in _su_pairs(8):
        if r + s < 3:
            continue
        sub = verify_beta_alpha_lemma(build_su_domain(r, s))
        bad += [f"su({r},{s}) {c.name}" for c in sub.checks if c.status != PASS]
    for n in range(3, 9):
        sub = verify_beta_alpha_lemma(build_sp_domain(n))
        bad += [f"sp({n}) {c.name}" for c in sub.checks if c.status != PASS]
    rep.add("compact-witness-sweep", "compact-witness", not bad, bad, "su r<=8, sp 3<=n<=8")
    rep.extend(verify_beta_alpha_lemma(build_sp_domain(2)), "sp(2) ")

    bad = []
    for n in range(3, 9):
        sub = verify_beta_alpha_lemma(build_sp_domain(n), strong=True)
        bad += [f"sp({n}) {c.name}" for c in sub.checks if c.status != PASS]
    rep.add("compact-witness-strong-sweep", "compact-witness-strong", not bad, bad, "sp 3<=n<=8")


def _domain(label: str) -> HermitianDomain:
    from .domains import parse_group

    return parse_group(label)


def _chevalley_checks(rep: Report, forms: int = 20, resignings: int = 3, seed: int = 0) -> None:
    for label in CHEVALLEY_FAMILIES:
        dom = _domain(label)
        table = build_chevalley(dom)
        rng = random.Random(seed)
        tag = dom.label
        rep.add(f"{tag} jacobi", "graded-vanishing", not check_jacobi(table))
        for sub in (verify_graded_vanishing(table), verify_relative_differentials(table), verify_omega_nc1_closed(table)):
            rep.extend(sub, f"{tag} ")
        dd = [f for f in (random_form(table, rng) for _ in range(forms)) if not d_pi(d_pi(f, table), table).is_zero()]
        rep.add(f"{tag} d-pi-squared", "relative-differential", not dd, [], f"{forms} random forms")
        base = _statuses(table)
        drift = 0
        for _ in range(resignings):
            if _statuses(resign(table, random_signs(table, rng))) != base:
                drift += 1
        rep.add(f"{tag} resign-invariance", "graded-vanishing", drift == 0, [], f"{resignings} re-signings")


def _statuses(table) -> tuple[str, ...]:
    return tuple(c.status for r in (verify_graded_vanishing(table), verify_omega_nc1_closed(table)) for c in r.checks)


def _threshold_checks(rep: Report) -> None:
    dom = build_su_domain(2, 1)
    res = threshold_n(dom)
    zero = dom.zero()
    later = all(all(direct_constraints_hold(dom, k, zero).values()) for k in range(res.N, res.N + 11))
    ok = res.N == 4 and res.k0 == 3 and res.as_dict() == {"nc1": 2, "nc2": 3, "pw": 4} and later
    rep.add(
        "su(2,1)-threshold",
        "threshold",
        ok,
        [f"{g}: k>={k}" for g, k in res.per_constraint] + [f"fails at N-1: {','.join(res.failing_below)}"],
        f"N={res.N} k0={res.k0} mu'_c={format_vec(res.mu_c_prime)}",
    )


def _mu_j_checks(rep: Report) -> None:
    for label in ("su:2,1", "su:3,2", "sp:3"):
        dom = _domain(label)
        for name, mp in (("0", dom.zero()), ("mu'_c", canonical_mu_c(dom)[0])):
            sub = verify_mu_j_vanishing(dom, mp)
            rep.add(f"{dom.label} mu_j at mu'={name}", "mu-j", sub.ok, [], f"{len(sub.checks)} roots")


def reproduce_examples() -> Report:
    rep = Report("examples")
    _closed_form_checks(rep)
    for label in ("su:2,1", "su:3,2", "sp:2", "sp:3"):
        v = validate_domain(_domain(label))
        rep.add(f"{v.group} structure", "split", v.ok, [c.name for c in v.checks if c.status == FAIL])
    _cup_checks(rep)
    _witness_sweeps(rep)
    _chevalley_checks(rep)
    _mu_j_checks(rep)
    _threshold_checks(rep)
    return rep
