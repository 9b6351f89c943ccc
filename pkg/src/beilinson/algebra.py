"""Combinatorial model of the algebra family B(n, r): n vertices on a line,
r parallel arrows from each vertex to the next, and commuting compositions.

Because consecutive arrow choices commute, a basis of the paths from vertex i
to vertex j is the set of monomials of total degree j - i in r commuting
variables, and path composition is exponent addition. Everything downstream
(projectives, multiplication maps, duals) is phrased in this monomial basis.

Monomial order convention: wherever a basis of monomials is needed, they are
listed lexicographically with variable 1 highest (exponent tuples in
descending lexicographic order). This fixes every matrix in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactla import QQ, Mat


@dataclass(frozen=True)
class AlgebraData:
    """The pair (n, r): n >= 2 vertices, r >= 2 arrows per step."""

    n: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 2):
            raise ValueError(f"need at least 2 vertices, got n={self.n}")
        if not (isinstance(self.r, int) and self.r >= 2):
            raise ValueError(f"need at least 2 arrows per step, got r={self.r}")

    def __repr__(self):
        return f"AlgebraData(n={self.n}, r={self.r})"


@dataclass(frozen=True)
class PathBasisElt:
    """A basis path: starts at `source`, follows the commutative monomial
    `exponent` in the r arrow variables. Its endpoint is source + degree;
    elements produced by path_basis always satisfy endpoint <= n - 1."""

    source: int
    exponent: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponent)

    @property
    def target(self) -> int:
        return self.source + self.degree


@lru_cache(maxsize=None)
def monomials_of_degree(r: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total degree d in r variables, descending
    lexicographic (variable 1 highest)."""
    if d < 0:
        return ()
    if r == 1:
        return ((d,),)
    out = []
    for e1 in range(d, -1, -1):
        for rest in monomials_of_degree(r - 1, d - e1):
            out.append((e1,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_index(r: int, d: int) -> dict[tuple[int, ...], int]:
    return {e: k for k, e in enumerate(monomials_of_degree(r, d))}


def monomial_index(r: int, exp: tuple[int, ...]) -> int:
    """Position of `exp` in the fixed ordering of its degree."""
    return _monomial_index(r, sum(exp))[exp]


@lru_cache(maxsize=None)
def multiplication_index(r: int, d: int, var: int) -> tuple[int, ...]:
    """Entry k = index (in degree d+1) of variable `var` (0-based) times the
    k-th monomial of degree d."""
    idx = _monomial_index(r, d + 1)
    out = []
    for e in monomials_of_degree(r, d):
        bumped = list(e)
        bumped[var] += 1
        out.append(idx[tuple(bumped)])
    return tuple(out)


def path_basis(a: AlgebraData, i: int, j: int) -> list[PathBasisElt]:
    """Basis of paths from vertex i to vertex j: the degree-(j-i) monomials,
    empty when j < i. Raises on out-of-range vertices."""
    for v in (i, j):
        if not (0 <= v <= a.n - 1):
            raise ValueError(f"vertex {v} out of range 0..{a.n - 1}")
    if j < i:
        return []
    return [PathBasisElt(i, e) for e in monomials_of_degree(a.r, j - i)]


def multiply(a: AlgebraData, u: PathBasisElt, v: PathBasisElt):
    """Composite path 'first v, then u'. None when the endpoints do not match
    or the composite would run past the last vertex (a zero product)."""
    if len(u.exponent) != a.r or len(v.exponent) != a.r:
        raise ValueError("exponent length does not match the arrow count")
    if v.target != u.source:
        return None
    exp = tuple(x + y for x, y in zip(u.exponent, v.exponent))
    if v.source + sum(exp) > a.n - 1:
        return None
    return PathBasisElt(v.source, exp)


def cartan_matrix(a: AlgebraData) -> Mat:
    """n x n rational matrix; entry (j, i) counts paths from i to j, i.e.
    C(j-i+r-1, r-1) for j >= i and 0 otherwise. Lower unitriangular."""
    rows = [[comb(j - i + a.r - 1, a.r - 1) if j >= i else 0 for i in range(a.n)]
            for j in range(a.n)]
    return Mat.from_rows(QQ, rows)


def binomial(a: int, b: int) -> int:
    """C(a, b), zero outside the Pascal triangle."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)
