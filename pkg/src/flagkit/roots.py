"""Exact root-system arithmetic for the classical types A and C.

Roots and weights are both :class:`Vec` instances: tuples of
:class:`fractions.Fraction` in the orthonormal basis ``e_1, ..., e_m``.
The pairing is the standard Euclidean one, so ``(e_i, e_j) = delta_ij``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Vec",
    "RootSystem",
    "build_root_system",
    "inner",
    "coroot_pairing",
    "is_integral_weight",
    "reflect",
    "root_string",
    "parse_vec",
    "format_vec",
    "unit",
    "solve_exact",
]


class Vec(tuple):
    """Immutable exact vector; ``+``, ``-`` and scalar ``*`` act coordinatewise."""

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        return super().__new__(cls, (c if type(c) is Fraction else Fraction(c) for c in coords))

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls([0] * dim)

    def __add__(self, other):  # type: ignore[override]
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")
        return Vec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, scalar):  # type: ignore[override]
        s = Fraction(scalar)
        return Vec(s * a for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return Vec(a / s for a in self)

    def __repr__(self) -> str:
        return f"Vec({format_vec(self)})"

    def __str__(self) -> str:
        return format_vec(self)


def unit(dim: int, i: int, scale=1) -> Vec:
    """``scale * e_{i+1}`` (0-based index ``i``)."""
    coords = [0] * dim
    coords[i] = scale
    return Vec(coords)


def inner(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Exact Euclidean pairing."""
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def parse_vec(text: str) -> Vec:
    """Parse ``"1/2,-1/2,0"`` into a :class:`Vec`."""
    parts = [p.strip() for p in text.strip().split(",")]
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"malformed vector: {text!r}")
    try:
        return Vec(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed vector: {text!r}") from exc


def format_vec(v: Iterable[Fraction]) -> str:
    return ",".join(str(c) for c in v)


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``A x = b`` over the rationals for a square nonsingular ``A``.

    Returns ``None`` when ``A`` is singular.
    """
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class RootSystem:
    """A classical root system realized in its standard ambient space.

    ``roots`` is sorted lexicographically; ``simple_roots`` follows the
    usual Bourbaki ordering (``e_1 - e_2, ..., 2e_n`` for type C).
    """

    family: str
    rank: int
    ambient_dim: int
    roots: tuple[Vec, ...]
    simple_roots: tuple[Vec, ...]
    _root_set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_root_set", frozenset(self.roots))

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def is_root(self, v: Sequence[Fraction]) -> bool:
        return v in self._root_set

    def require_root(self, v: Sequence[Fraction]) -> None:
        if v not in self._root_set:
            raise ValueError(f"{format_vec(v)} is not a root of {self.label}")

    def check_dim(self, v: Sequence[Fraction]) -> None:
        if len(v) != self.ambient_dim:
            raise ValueError(
                f"dimension mismatch: expected {self.ambient_dim}, got {len(v)}"
            )

    def simple_coefficients(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        """Coordinates of ``v`` in the simple-root basis, or ``None`` if ``v``
        is outside their span."""
        self.check_dim(v)
        gram = [[inner(a, b) for b in self.simple_roots] for a in self.simple_roots]
        coeffs = solve_exact(gram, [inner(a, v) for a in self.simple_roots])
        if coeffs is None:
            return None
        back = reduce(
            lambda acc, pair: acc + pair[1] * pair[0],
            zip(self.simple_roots, coeffs),
            Vec.zero(self.ambient_dim),
        )
        return coeffs if back == Vec(v) else None


def _type_a(rank: int) -> tuple[list[Vec], list[Vec]]:
    m = rank + 1
    roots = [unit(m, i) - unit(m, j) for i in range(m) for j in range(m) if i != j]
    simple = [unit(m, i) - unit(m, i + 1) for i in range(rank)]
    return roots, simple


def _type_c(rank: int) -> tuple[list[Vec], list[Vec]]:
    n = rank
    roots: list[Vec] = []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    roots.append(unit(n, i, si) + unit(n, j, sj))
        roots.append(unit(n, i, 2))
        roots.append(unit(n, i, -2))
    simple = [unit(n, i) - unit(n, i + 1) for i in range(n - 1)] + [unit(n, n - 1, 2)]
    return roots, simple


def build_root_system(family: str, rank: int) -> RootSystem:
    """Build the type ``A`` or ``C`` root system of the given rank."""
    fam = family.upper()
    if fam == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        roots, simple = _type_a(rank)
        dim = rank + 1
    elif fam == "C":
        if rank < 2:
            raise ValueError("type C needs rank >= 2")
        roots, simple = _type_c(rank)
        dim = rank
    else:
        raise ValueError(f"unsupported family {family!r} (expected A or C)")
    return RootSystem(fam, rank, dim, tuple(sorted(roots)), tuple(simple))


def coroot_pairing(lam: Sequence[Fraction], alpha: Sequence[Fraction], rs: RootSystem | None = None) -> Fraction:
    """``2 (lam, alpha) / (alpha, alpha)``; ``alpha`` must be a root of ``rs``
    when a system is supplied."""
    if rs is not None:
        rs.require_root(alpha)
    return 2 * inner(lam, alpha) / inner(alpha, alpha)


def is_integral_weight(lam: Sequence[Fraction], rs: RootSystem) -> bool:
    rs.check_dim(lam)
    return all(coroot_pairing(lam, a).denominator == 1 for a in rs.simple_roots)


def reflect(lam: Sequence[Fraction], alpha: Sequence[Fraction], rs: RootSystem | None = None) -> Vec:
    """Reflection of ``lam`` in the hyperplane orthogonal to ``alpha``."""
    c = coroot_pairing(lam, alpha, rs)
    return Vec(lam) - c * Vec(alpha)


def root_string(beta: Vec, alpha: Vec, rs: RootSystem) -> tuple[int, int]:
    """The ``alpha``-string through ``beta``: ``(p, q)`` with ``beta - p alpha``
    and ``beta + q alpha`` the ends of the string."""
    rs.require_root(alpha)
    rs.require_root(beta)
    if alpha == beta or alpha == -beta:
        raise ValueError("root string undefined for alpha = +-beta")
    p = 0
    while rs.is_root(beta - (p + 1) * alpha):
        p += 1
    q = 0
    while rs.is_root(beta + (q + 1) * alpha):
        q += 1
    return p, q


def gcd_of(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)
