from __future__ import annotations

from fractions import Fraction as Q
from itertools import combinations_with_replacement

import pytest

from flagkit.domains import (
    HermitianDomain,
    build_sp_domain,
    build_su_domain,
    chamber_degrees,
    parse_group,
    rho_components,
    validate_domain,
)
from flagkit.roots import Vec, inner


def v(*xs):
    return Vec(xs)


SU = [(r, s) for r in range(1, 9) for s in range(1, r + 1) if r + s >= 3 and r + s - 1 <= 8]
SP = list(range(2, 9))
ALL = [build_su_domain(r, s) for r, s in SU] + [build_sp_domain(n) for n in SP]


def test_su21_split():
    d = build_su_domain(2, 1)
    assert d.delta_c == (v(1, -1, 0),)
    assert d.nc1 == (v(1, 0, -1),)
    assert d.nc2 == (v(0, -1, 1),)
    assert d.counts == {"q": 1, "p": 1, "d": 1}


def test_su32_nc1_count():
    assert len(build_su_domain(3, 2).nc1) == 3


def test_su21_canonical_difference():
    rho = rho_components(build_su_domain(2, 1))
    assert 2 * rho.rho_nc1 - 2 * rho.rho_nc2 == v(1, 1, -2)


def test_sp2_split():
    d = build_sp_domain(2)
    assert set(d.delta_c) == {v(1, -1)}
    assert set(d.nc1) == {v(2, 0), v(1, 1)}
    assert set(d.nc2) == {v(0, -2)}


def test_sp3_split():
    d = build_sp_domain(3)
    assert set(d.delta_c) == {v(1, -1, 0), v(1, 0, -1), v(0, -1, 1)}
    assert set(d.nc1) == {v(2, 0, 0), v(1, 1, 0), v(1, 0, 1), v(0, 0, 2)}
    assert set(d.nc2) == {v(0, -2, 0), v(0, -1, -1)}
    rho = rho_components(d)
    assert rho.rho_nc - rho.rho_c == v(1, 0, 1)


def test_builders_reject_bad_parameters():
    for bad in ((1, 2), (0, 0), (3, 0)):
        with pytest.raises(ValueError):
            build_su_domain(*bad)
    with pytest.raises(ValueError):
        build_sp_domain(1)


def test_parse_group():
    assert parse_group("su:3,2").label == "su(3,2)"
    assert parse_group(" SP : 4 ").label == "sp(4)"
    for bad in ("su:3", "sp:2,1", "so:5", "su:a,b", ""):
        with pytest.raises(ValueError):
            parse_group(bad)


@pytest.mark.parametrize("dom", ALL, ids=lambda d: d.label)
def test_every_built_domain_validates(dom):
    rep = validate_domain(dom)
    assert rep.ok, [c for c in rep.checks if c.status != "pass"]
    assert len(dom.delta_c) + len(dom.nc1) + len(dom.nc2) == len(dom.rs.roots) // 2


def test_sp3_abelian_pair_count():
    rep = validate_domain(build_sp_domain(3))
    chk = next(c for c in rep.checks if c.name == "abelian-p-prime")
    assert chk.status == "pass" and chk.detail == "21 pairs"


def test_adversarial_split_fails_grading():
    d = build_su_domain(2, 1)
    bad = HermitianDomain.make(d.rs, d.delta_c + d.nc1, (), d.nc2, "su(2,1)-moved")
    rep = validate_domain(bad)
    status = {c.name: c.status for c in rep.checks}
    assert status["bracket-grading"] == "fail"
    assert status["non-classical"] == "fail"


def test_non_root_entries_are_reported_not_raised():
    d = build_su_domain(2, 1)
    bad = HermitianDomain.make(d.rs, [v(1, 1, 0)], d.nc1, d.nc2, "junk")
    rep = validate_domain(bad)
    assert rep.checks[0].name == "genuine-roots" and rep.checks[0].status == "fail"


def test_rho_examples():
    rho = rho_components(build_su_domain(2, 1))
    assert rho.rho_c == v(Q(1, 2), Q(-1, 2), 0)
    assert rho.rho == v(1, -1, 0)
    assert rho.rho_prime == v(0, -1, 1)
    rho = rho_components(build_sp_domain(2))
    assert rho.rho == v(2, -1)
    assert rho.rho_nc - rho.rho_c == v(1, 0)


@pytest.mark.parametrize("dom", ALL, ids=lambda d: d.label)
def test_rho_identities(dom):
    rho = rho_components(dom)
    assert rho.rho == rho.rho_c + rho.rho_nc1 + rho.rho_nc2
    assert rho.rho_nc == rho.rho_nc1 + rho.rho_nc2
    assert rho.rho_prime == rho.rho_c - rho.rho_nc1 + rho.rho_nc2
    assert rho.rho_prime_nc == rho.rho_nc2 - rho.rho_nc1


@pytest.mark.parametrize("s", range(1, 9))
def test_rho_balance_at_r_equals_s_plus_one(s):
    rho = rho_components(build_su_domain(s + 1, s))
    assert rho.rho_c == rho.rho_nc


def test_chamber_degree_examples():
    d = build_su_domain(2, 1)
    got = chamber_degrees(d, v(2, 0, -1))
    assert (got.q_of, got.q_prime_of, got.regular) == (1, 0, True)
    got = chamber_degrees(d, v(0, 0, 0))
    assert (got.q_of, got.q_prime_of, got.regular) == (0, 0, False)
    assert chamber_degrees(d, v(1, -1, 0)).q_of == 2


@pytest.mark.parametrize("dom", ALL, ids=lambda d: d.label)
def test_prime_noncompact_pairings_nonnegative(dom):
    pn = dom.prime_noncompact
    assert all(inner(a, b) >= 0 for a, b in combinations_with_replacement(pn, 2))


@pytest.mark.parametrize("dom", ALL, ids=lambda d: d.label)
def test_canonical_weight_orthogonal_to_compact_and_signed_on_nc(dom):
    rho = rho_components(dom)
    mu_c = 2 * rho.rho_nc1 - 2 * rho.rho_nc2
    assert all(inner(mu_c, a) == 0 for a in dom.delta_c)
    assert all(inner(mu_c, b) >= inner(b, b) > 0 for b in dom.nc1)
    assert all(inner(mu_c, g) <= -inner(g, g) < 0 for g in dom.nc2)


@pytest.mark.parametrize("dom", ALL, ids=lambda d: d.label)
def test_explicit_chamber_witness(dom):
    rho = rho_components(dom)
    zeta = rho.rho_c + rho.rho_nc1 - rho.rho_nc2
    got = chamber_degrees(dom, zeta)
    assert got.regular and got.q_of == len(dom.nc1) and got.q_prime_of == 0
