"""Hermitian flag domains as three-way splits of the positive roots.

``delta_c``, ``nc1`` and ``nc2`` partition a positive system; flipping the
sign of ``nc1`` gives the positive system of the associated classical
domain ``D'``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .report import Report
from .roots import RootSystem, Vec, build_root_system, format_vec, inner, unit

__all__ = [
    "HermitianDomain",
    "RhoSet",
    "ChamberDegrees",
    "build_su_domain",
    "build_sp_domain",
    "parse_group",
    "validate_domain",
    "rho_components",
    "chamber_degrees",
    "half_sum",
]


@dataclass(frozen=True)
class HermitianDomain:
    """A root system together with the split ``Delta_+ = c | nc1 | nc2``.

    The raw constructor accepts any split; :func:`validate_domain` decides
    whether it is admissible.
    """

    rs: RootSystem
    delta_c: tuple[Vec, ...]
    nc1: tuple[Vec, ...]
    nc2: tuple[Vec, ...]
    label: str
    parameters: tuple[tuple[str, str], ...] = ()

    @staticmethod
    def make(rs: RootSystem, c: Iterable, nc1: Iterable, nc2: Iterable, label: str, parameters=()) -> "HermitianDomain":
        canon = lambda xs: tuple(sorted(Vec(x) for x in xs))  # noqa: E731
        return HermitianDomain(rs, canon(c), canon(nc1), canon(nc2), label, tuple(parameters))

    @property
    def positive(self) -> tuple[Vec, ...]:
        return tuple(sorted(self.delta_c + self.nc1 + self.nc2))

    @property
    def noncompact(self) -> tuple[Vec, ...]:
        return tuple(sorted(self.nc1 + self.nc2))

    @property
    def prime_noncompact(self) -> tuple[Vec, ...]:
        """``Delta'_+^nc = -nc1 | nc2``."""
        return tuple(sorted([-b for b in self.nc1] + list(self.nc2)))

    @property
    def prime_positive(self) -> tuple[Vec, ...]:
        return tuple(sorted(self.delta_c + self.prime_noncompact))

    @property
    def dual_positive(self) -> tuple[Vec, ...]:
        """``Delta''_+ = c | nc1 | -nc2``."""
        return tuple(sorted(self.delta_c + self.nc1 + tuple(-g for g in self.nc2)))

    @property
    def counts(self) -> dict[str, int]:
        """``q = #nc1``, ``p = #nc2``, ``d = #c``."""
        return {"q": len(self.nc1), "p": len(self.nc2), "d": len(self.delta_c)}

    def part_of(self, root: Sequence[Fraction]) -> str | None:
        """``"c"``, ``"nc1"`` or ``"nc2"`` for a positive root, else ``None``."""
        if root in self.delta_c:
            return "c"
        if root in self.nc1:
            return "nc1"
        if root in self.nc2:
            return "nc2"
        return None

    def zero(self) -> Vec:
        return Vec.zero(self.rs.ambient_dim)


def build_su_domain(r: int, s: int) -> HermitianDomain:
    """Split for ``SU(r, s)`` realized in ``R^{r+s}``; requires ``r >= s >= 1``."""
    if s < 1 or r < s:
        raise ValueError(f"su({r},{s}) needs r >= s >= 1")
    m = r + s
    rs = build_root_system("A", m - 1)
    e = lambda i: unit(m, i - 1)  # noqa: E731  (1-based)
    c = [e(i) - e(j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
    c += [e(r + l) - e(r + k) for l in range(1, s + 1) for k in range(l + 1, s + 1)]
    nc1 = [e(l) - e(r + k) for l in range(1, s + 1) for k in range(l, s + 1)]
    nc2 = [e(r + l) - e(i) for l in range(1, s + 1) for i in range(l + 1, r + 1)]
    return HermitianDomain.make(rs, c, nc1, nc2, f"su({r},{s})", (("r", str(r)), ("s", str(s))))


def build_sp_domain(n: int) -> HermitianDomain:
    """Split for ``Sp(2n, R)`` realized in ``R^n``; requires ``n >= 2``."""
    if n < 2:
        raise ValueError(f"sp({n}) needs n >= 2")
    rs = build_root_system("C", n)
    e = lambda i: unit(n, i - 1)  # noqa: E731
    c = [(-1) ** (i - 1) * (e(i) - e(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    nc1 = [e(i) + e(j) for i in range(1, n + 1, 2) for j in range(i, n + 1)]
    nc2 = [-e(i) - e(j) for i in range(2, n + 1, 2) for j in range(i, n + 1)]
    return HermitianDomain.make(rs, c, nc1, nc2, f"sp({n})", (("n", str(n)),))


_GROUP_RE = re.compile(r"^\s*(su|sp)\s*:\s*(\d+)\s*(?:,\s*(\d+)\s*)?$", re.IGNORECASE)


def parse_group(text: str) -> HermitianDomain:
    """``"su:r,s"`` or ``"sp:n"``."""
    m = _GROUP_RE.match(text)
    if not m:
        raise ValueError(f"malformed group {text!r}; expected su:r,s or sp:n")
    kind, a, b = m.group(1).lower(), int(m.group(2)), m.group(3)
    if kind == "su":
        if b is None:
            raise ValueError(f"su needs two parameters: {text!r}")
        return build_su_domain(a, int(b))
    if b is not None:
        raise ValueError(f"sp takes one parameter: {text!r}")
    return build_sp_domain(a)


def half_sum(roots: Iterable[Vec], dim: int) -> Vec:
    total = Vec.zero(dim)
    for r in roots:
        total = total + r
    return total / 2


@dataclass(frozen=True)
class RhoSet:
    rho: Vec
    rho_c: Vec
    rho_nc: Vec
    rho_nc1: Vec
    rho_nc2: Vec
    rho_prime: Vec
    rho_prime_nc: Vec


def rho_components(dom: HermitianDomain) -> RhoSet:
    dim = dom.rs.ambient_dim
    rc = half_sum(dom.delta_c, dim)
    r1 = half_sum(dom.nc1, dim)
    r2 = half_sum(dom.nc2, dim)
    return RhoSet(
        rho=rc + r1 + r2,
        rho_c=rc,
        rho_nc=r1 + r2,
        rho_nc1=r1,
        rho_nc2=r2,
        rho_prime=rc - r1 + r2,
        rho_prime_nc=r2 - r1,
    )


@dataclass(frozen=True)
class ChamberDegrees:
    q_of: int
    q_prime_of: int
    regular: bool


def chamber_degrees(dom: HermitianDomain, lam: Sequence[Fraction]) -> ChamberDegrees:
    """Sign-violation counts of ``lam`` against the conventions of ``D`` and ``D'``."""
    dom.rs.check_dim(lam)
    neg_c = sum(1 for a in dom.delta_c if inner(lam, a) < 0)
    q = neg_c + sum(1 for b in dom.noncompact if inner(lam, b) > 0)
    qp = neg_c + sum(1 for b in dom.prime_noncompact if inner(lam, b) > 0)
    regular = all(inner(lam, a) != 0 for a in dom.positive)
    return ChamberDegrees(q, qp, regular)


def _pair_witness(a: Vec, b: Vec, extra: str = "") -> str:
    w = f"{format_vec(a)} + {format_vec(b)}"
    return f"{w} {extra}".rstrip()


def _closure_violations(rs: RootSystem, pos: Sequence[Vec]) -> list[str]:
    s = set(pos)
    bad = []
    for a, b in combinations_with_replacement(pos, 2):
        t = a + b
        if rs.is_root(t) and t not in s:
            bad.append(_pair_witness(a, b, f"= {format_vec(t)}"))
    return bad


def validate_domain(dom: HermitianDomain) -> Report:
    """Run every structural check on a split; never raises on a bad split."""
    rs = dom.rs
    rep = Report(dom.label, dict(dom.parameters))
    parts = {"c": dom.delta_c, "nc1": dom.nc1, "nc2": dom.nc2}

    bogus = [format_vec(x) for xs in parts.values() for x in xs if len(x) != rs.ambient_dim or not rs.is_root(x)]
    rep.add("genuine-roots", "split", not bogus, bogus)
    overlap = sorted(
        {format_vec(x) for (_, a), (_, b) in combinations(parts.items(), 2) for x in set(a) & set(b)}
    )
    rep.add("disjoint-parts", "split", not overlap, overlap)
    if bogus:
        return rep

    pos = set(dom.positive)
    sign_bad = [format_vec(d) for d in rs.roots if (d in pos) == (-d in pos)]
    rep.add("positive-system", "split", not sign_bad, sign_bad, f"#Delta_+={len(pos)}")

    for name, system in (("closed-D", dom.positive), ("closed-D-prime", dom.prime_positive), ("closed-D-dual", dom.dual_positive)):
        bad = _closure_violations(rs, system)
        rep.add(name, "closure", not bad, bad[:5])

    # k = roots of +-c, p'_+ = -nc1 | nc2, p'_- = its negative.
    compact = set(dom.delta_c) | {-a for a in dom.delta_c}
    p_plus = set(dom.prime_noncompact)
    p_minus = {-b for b in p_plus}
    graded = []
    for a in sorted(compact):
        for x in rs.roots:
            t = a + x
            if not rs.is_root(t):
                continue
            for block in (compact, p_plus, p_minus):
                if x in block and t not in block:
                    graded.append(_pair_witness(a, x, f"= {format_vec(t)}"))
    for x in sorted(p_plus):
        for y in sorted(p_minus):
            t = x + y
            if rs.is_root(t) and t not in compact:
                graded.append(_pair_witness(x, y, f"= {format_vec(t)}"))
    rep.add("bracket-grading", "grading", not graded, graded[:5])

    cross = []
    for b in dom.nc1:
        for g in dom.nc2:
            t = b + g
            if rs.is_root(t) and t not in dom.delta_c:
                cross.append(_pair_witness(b, g, f"= {format_vec(t)} not compact positive"))
            if rs.is_root(g - b):
                cross.append(_pair_witness(-b, g, "is a root"))
    for part in (dom.nc1, dom.nc2):
        for b, b2 in combinations_with_replacement(part, 2):
            if rs.is_root(b + b2):
                cross.append(_pair_witness(b, b2, "is a root"))
    rep.add("nc-brackets", "nc-brackets", not cross, cross[:5])

    pn = dom.prime_noncompact
    ab = [_pair_witness(b, b2) for b, b2 in combinations_with_replacement(pn, 2) if rs.is_root(b + b2)]
    rep.add("abelian-p-prime", "abelian", not ab, ab[:5], f"{len(pn) * (len(pn) + 1) // 2} pairs")

    neg = [f"({format_vec(b)}, {format_vec(b2)}) < 0" for b, b2 in combinations_with_replacement(pn, 2) if inner(b, b2) < 0]
    rep.add("nonneg-pairing-prime", "nonneg-pairing", not neg, neg[:5])

    rep.add("non-classical", "non-classical", bool(dom.nc1) and bool(dom.nc2), (), f"q={len(dom.nc1)} p={len(dom.nc2)}")
    return rep
