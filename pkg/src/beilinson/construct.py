"""Builders for the named module families over the graded algebras.

Everything here returns immutable `Rep` values over a chosen coefficient
field. The central family is the graded-quotient module `m_module(m, n, r)`:
vertex i carries the monomials of degree m-n+i in r commuting variables and
the arrows act by multiplication with the variables. Its linear dual
`w_module` reverses the vertices. Simples, projectives, and injectives use
the same monomial bases, and two functors move modules across algebras with
adjacent vertex counts: `iota` (prepend a zero vertex) and `delete_source`
(drop vertex 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraData, binomial, monomials_of_degree, multiplication_index
from .exactla import QQ, FieldSpec, Mat
from .rep import Rep, dual_rep, rep_from_maps, zero_rep

__all__ = [
    "GradedSlice",
    "delete_source",
    "dual",
    "graded_slice",
    "injective",
    "iota",
    "m_module",
    "projective",
    "simple",
    "w_module",
]


@dataclass(frozen=True)
class GradedSlice:
    """Consecutive graded pieces of the polynomial ring in r variables:
    degree d contributes the lex-ordered monomial basis of size
    C(d+r-1, r-1)."""

    r: int
    degrees: tuple[int, ...]
    bases: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one variable")
        for a, b in zip(self.degrees, self.degrees[1:]):
            if b != a + 1:
                raise ValueError("degrees must be consecutive")
        if len(self.bases) != len(self.degrees):
            raise ValueError("one basis per degree")
        for d, basis in zip(self.degrees, self.bases):
            if len(basis) != binomial(d + self.r - 1, self.r - 1):
                raise ValueError(f"degree-{d} basis has the wrong size")


def graded_slice(first_degree: int, count: int, r: int) -> GradedSlice:
    """The slice covering `count` consecutive degrees starting at
    `first_degree`."""
    if first_degree < 0 or count < 1:
        raise ValueError("need a nonnegative start degree and at least one degree")
    degrees = tuple(range(first_degree, first_degree + count))
    bases = tuple(monomials_of_degree(r, d) for d in degrees)
    return GradedSlice(r, degrees, bases)


def _multiplication_matrix(fld: FieldSpec, r: int, d: int, var: int) -> Mat:
    """0/1 matrix of multiplication by variable `var` (0-based) from the
    degree-d monomial basis to the degree-(d+1) basis."""
    src = binomial(d + r - 1, r - 1)
    dst = binomial(d + r, r - 1)
    idx = multiplication_index(r, d, var)
    ent = [[fld.zero] * src for _ in range(dst)]
    for b in range(src):
        ent[idx[b]][b] = fld.one
    return Mat(fld, dst, src, ent)


def m_module(m: int, n: int, r: int, field: FieldSpec = QQ) -> Rep:
    """Graded-quotient module on n vertices: vertex i carries the monomials
    of degree m-n+i, arrows act by variable multiplication. For m < n the
    result is m_module(n, n, r), the largest member with support starting in
    degree zero."""
    a = AlgebraData(n, r)  # validates n >= 2 and r >= 2
    if m < n:
        m = n
    fld = field
    dims = tuple(binomial(m - n + i + r - 1, r - 1) for i in range(n))
    maps = tuple(
        tuple(_multiplication_matrix(fld, r, m - n + i, s) for i in range(n - 1))
        for s in range(r)
    )
    return rep_from_maps(a, fld, dims, maps)


def w_module(m: int, n: int, r: int, field: FieldSpec = QQ) -> Rep:
    """Vertex-reversed linear dual of m_module(m, n, r)."""
    return dual_rep(m_module(m, n, r, field))


def dual(m: Rep) -> Rep:
    """Vertex-reversed linear dual (an involution up to equality of
    matrices: transposes each arrow map and relabels vertex i as n-1-i)."""
    return dual_rep(m)


def simple(i: int, n: int, r: int, field: FieldSpec = QQ) -> Rep:
    """One-dimensional module concentrated at vertex i."""
    a = AlgebraData(n, r)
    if not 0 <= i <= n - 1:
        raise ValueError(f"vertex {i} out of range 0..{n - 1}")
    fld = field
    dims = tuple(1 if j == i else 0 for j in range(n))
    maps = tuple(
        tuple(Mat.zeros(fld, dims[j + 1], dims[j]) for j in range(n - 1))
        for _ in range(r)
    )
    return rep_from_maps(a, fld, dims, maps)


def projective(i: int, n: int, r: int, field: FieldSpec = QQ) -> Rep:
    """Indecomposable projective at vertex i: vertex j >= i carries the
    degree-(j-i) monomial basis, arrows act by variable multiplication."""
    a = AlgebraData(n, r)
    if not 0 <= i <= n - 1:
        raise ValueError(f"vertex {i} out of range 0..{n - 1}")
    fld = field
    dims = tuple(binomial(j - i + r - 1, r - 1) if j >= i else 0 for j in range(n))
    maps = []
    for s in range(r):
        layer = []
        for j in range(n - 1):
            if j >= i:
                layer.append(_multiplication_matrix(fld, r, j - i, s))
            else:
                layer.append(Mat.zeros(fld, dims[j + 1], dims[j]))
        maps.append(tuple(layer))
    return rep_from_maps(a, fld, dims, tuple(maps))


def injective(i: int, n: int, r: int, field: FieldSpec = QQ) -> Rep:
    """Indecomposable injective at vertex i, realized as the vertex-reversed
    dual of the projective at vertex n-1-i."""
    a = AlgebraData(n, r)
    if not 0 <= i <= n - 1:
        raise ValueError(f"vertex {i} out of range 0..{n - 1}")
    return dual_rep(projective(n - 1 - i, n, r, field))


def iota(m: Rep) -> Rep:
    """Full exact embedding into the algebra with one extra source vertex:
    vertex 0 of the result is zero, vertex i >= 1 is vertex i-1 of the
    input, and the new layer-0 maps are the unique maps out of zero."""
    a = m.algebra
    big = AlgebraData(a.n + 1, a.r)
    fld = m.field
    dims = (0,) + m.dims
    maps = tuple(
        (Mat.zeros(fld, m.dims[0], 0),) + m.maps[s]
        for s in range(a.r)
    )
    return rep_from_maps(big, fld, dims, maps)


def delete_source(m: Rep) -> Rep:
    """Restriction to vertices 1..n-1, reindexed from 0: drops the source
    vertex and every layer-0 map. Left inverse to `iota` on modules whose
    vertex-0 component is zero."""
    a = m.algebra
    if a.n - 1 < 2:
        raise ValueError("the restricted algebra needs at least two vertices")
    small = AlgebraData(a.n - 1, a.r)
    dims = m.dims[1:]
    maps = tuple(m.maps[s][1:] for s in range(a.r))
    return rep_from_maps(small, m.field, dims, maps)
