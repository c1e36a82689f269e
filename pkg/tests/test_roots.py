from __future__ import annotations

from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagkit.roots import (
    Vec,
    build_root_system,
    coroot_pairing,
    format_vec,
    inner,
    is_integral_weight,
    parse_vec,
    reflect,
    root_string,
)

SYSTEMS = [("A", n) for n in range(1, 9)] + [("C", n) for n in range(2, 9)]


def v(*xs):
    return Vec(xs)


def test_a2_roots():
    rs = build_root_system("A", 2)
    expected = {v(1, -1, 0), v(1, 0, -1), v(0, 1, -1)}
    expected |= {-x for x in expected}
    assert set(rs.roots) == expected
    assert rs.ambient_dim == 3


def test_c2_roots():
    rs = build_root_system("C", 2)
    expected = {v(a, b) for a in (1, -1) for b in (1, -1)} | {v(2, 0), v(-2, 0), v(0, 2), v(0, -2)}
    assert set(rs.roots) == expected


def test_c3_simple_roots():
    rs = build_root_system("C", 3)
    assert len(rs.roots) == 18
    assert rs.simple_roots == (v(1, -1, 0), v(0, 1, -1), v(0, 0, 2))


@pytest.mark.parametrize("family,rank", SYSTEMS)
def test_counts_and_negation(family, rank):
    rs = build_root_system(family, rank)
    want = rank * (rank + 1) if family == "A" else 2 * rank * rank
    assert len(rs.roots) == len(set(rs.roots)) == want
    assert all(rs.is_root(-a) for a in rs.roots)
    assert {inner(a, a) for a in rs.roots} <= {2, 4}
    assert list(rs.roots) == sorted(rs.roots)


@pytest.mark.parametrize("family,rank", SYSTEMS)
def test_simple_coefficients_have_one_sign(family, rank):
    rs = build_root_system(family, rank)
    for a in rs.roots:
        cs = rs.simple_coefficients(a)
        assert cs is not None and all(c.denominator == 1 for c in cs)
        assert all(c >= 0 for c in cs) or all(c <= 0 for c in cs)


@pytest.mark.parametrize("family,rank", [("X", 2), ("A", 0), ("C", 1)])
def test_build_rejects(family, rank):
    with pytest.raises(ValueError):
        build_root_system(family, rank)


def test_inner_examples():
    assert inner(v(1, -1, 0), v(1, 0, -1)) == 1
    assert inner(v(1, 1, -2), v(1, 0, -1)) == 3
    assert inner(v(1, 2, 1), v(1, -1, 0)) == -1
    with pytest.raises(ValueError):
        inner(v(1, 2), v(1, 2, 3))


def test_coroot_pairing_examples():
    c2 = build_root_system("C", 2)
    a2 = build_root_system("A", 2)
    assert coroot_pairing(v(1, 0), v(2, 0), c2) == 1
    assert coroot_pairing(v(Q(1, 3), Q(1, 3), Q(-2, 3)), v(1, 0, -1), a2) == 1
    assert coroot_pairing(v(1, -1, 0), v(1, -1, 0), a2) == 2
    with pytest.raises(ValueError):
        coroot_pairing(v(1, 0, 0), v(1, 1, 0), a2)


def test_integrality_examples():
    a2 = build_root_system("A", 2)
    assert is_integral_weight(v(1, 1, -2), a2)
    assert is_integral_weight(v(Q(1, 3), Q(1, 3), Q(-2, 3)), a2)
    assert not is_integral_weight(v(Q(1, 2), 0, 0), a2)


def test_reflect_examples():
    a2 = build_root_system("A", 2)
    rho_c = v(Q(1, 2), Q(-1, 2), 0)
    assert reflect(rho_c, v(1, -1, 0), a2) == v(Q(-1, 2), Q(1, 2), 0)
    assert reflect(v(2, 0, -1), v(1, -1, 0), a2) == v(0, 2, -1)


def test_root_string_examples():
    assert root_string(v(0, 1, -1), v(1, -1, 0), build_root_system("A", 2)) == (0, 1)
    # -e1-e2 and -2e1 both lie on the string, so p = 2 (and p - q = 2 = <beta, alpha^>)
    assert root_string(v(0, -2), v(1, -1), build_root_system("C", 2)) == (2, 0)
    assert root_string(v(1, 0, 1), v(1, 0, -1), build_root_system("C", 3)) == (1, 1)
    with pytest.raises(ValueError):
        root_string(v(1, -1, 0), v(-1, 1, 0), build_root_system("A", 2))


@pytest.mark.parametrize("family,rank", SYSTEMS)
def test_string_consistency_exhaustive(family, rank):
    rs = build_root_system(family, rank)
    for a in rs.roots:
        for b in rs.roots:
            if a == b or a == -b:
                continue
            p, q = root_string(b, a, rs)
            assert p - q == coroot_pairing(b, a)


@pytest.mark.parametrize("family,rank", SYSTEMS)
def test_reflections_permute_roots(family, rank):
    rs = build_root_system(family, rank)
    roots = set(rs.roots)
    for a in rs.simple_roots:
        assert {reflect(b, a) for b in rs.roots} == roots


def _weights(dim):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=dim, max_size=dim).map(Vec)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_reflect_involutive_and_isometric(data):
    rs = build_root_system("C", 3)
    lam = data.draw(_weights(3))
    mu = data.draw(_weights(3))
    a = data.draw(st.sampled_from(rs.roots))
    assert reflect(reflect(lam, a), a) == lam
    assert inner(reflect(lam, a), reflect(mu, a)) == inner(lam, mu)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_integrality_invariant_under_root_shift(data):
    rs = build_root_system("A", 3)
    lam = data.draw(_weights(4))
    a = data.draw(st.sampled_from(rs.roots))
    assert is_integral_weight(lam, rs) == is_integral_weight(lam + a, rs)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_type_a_trace_invariance(data):
    rs = build_root_system("A", 3)
    lam = data.draw(_weights(4))
    c = data.draw(st.fractions(min_value=-10, max_value=10, max_denominator=7))
    shifted = lam + c * Vec([1, 1, 1, 1])
    for a in rs.roots:
        assert coroot_pairing(shifted, a) == coroot_pairing(lam, a)


def test_parse_format_round_trip():
    text = "1/2,-1/2,0"
    assert format_vec(parse_vec(text)) == text
    assert parse_vec(" 3 , -2/4 ") == v(3, Q(-1, 2))
    for bad in ("", "1,,2", "a,b", "1/0"):
        with pytest.raises(ValueError):
            parse_vec(bad)


def test_vec_arithmetic_checks_dimension():
    with pytest.raises(ValueError):
        v(1, 2) + v(1, 2, 3)
    assert 2 * v(1, Q(1, 2)) == v(2, 1)
    assert all(type(x) is Q for x in v(1, 2.5))

