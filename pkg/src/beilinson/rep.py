"""Representations of B(n, r) and the surrounding category machinery.

A representation assigns a vector space to each of the n vertices and, for
each of the r arrow choices s and each layer i, a matrix maps[s][i] of shape
dims[i+1] x dims[i]; consecutive layers must commute arrow-wise. On top of
the raw data this module provides Hom spaces (bases of the intertwining
linear system), isomorphism testing, radical/top/socle, kernels, cokernels,
pushouts, endomorphism algebras with their radicals, indecomposability, and
Krull-Schmidt decomposition by idempotent splitting.

Determinism: every basis choice comes from the fixed-pivot-order elimination
in exactla, and every randomized search takes an explicit seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from random import Random

from .algebra import AlgebraData
from .exactla import (QQ, FieldSpec, Mat, PrimeField, column_space_basis,
                      kernel_basis, kernel_basis_sparse, rank, rref, solve)
from .exactla.matrix import _rref_rowdicts

__all__ = [
    "Rep", "RepMorphism", "IsoResult", "EndoAlgebra",
    "UnsupportedFieldOperation", "NonSplitSemisimpleQuotient",
    "zero_rep", "validate", "direct_sum", "kernel_of", "cokernel_of",
    "pushout", "radical_rep", "top", "socle", "sub_rep_from_columns",
    "quotient_by_columns", "hom_space", "hom_dim", "iso", "endo_algebra",
    "is_indecomposable", "decompose", "dual_rep",
]


class UnsupportedFieldOperation(RuntimeError):
    """Raised when an operation is only sound over the rationals."""


class NonSplitSemisimpleQuotient(RuntimeError):
    """Raised when a decomposition step meets a semisimple quotient that is
    not recognizably a product of matrix algebras over the ground field."""


@dataclass(frozen=True)
class Rep:
    """A finite-dimensional representation: dims[i] at vertex i, and for each
    arrow choice s in 0..r-1 and layer i in 0..n-2 a matrix maps[s][i] of
    shape dims[i+1] x dims[i]."""

    algebra: AlgebraData
    field: FieldSpec
    dims: tuple[int, ...]
    maps: tuple[tuple[Mat, ...], ...]

    def __post_init__(self):
        n, r = self.algebra.n, self.algebra.r
        if len(self.dims) != n or any(d < 0 for d in self.dims):
            raise ValueError(f"dims must be {n} naturals, got {self.dims}")
        if len(self.maps) != r or any(len(row) != n - 1 for row in self.maps):
            raise ValueError(f"maps must be {r} tuples of {n - 1} matrices")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero_rep(self) -> bool:
        return self.total_dim == 0

    def layer(self, s: int, i: int) -> Mat:
        return self.maps[s][i]

    def validate(self) -> list[str]:
        """Empty list iff well-formed: matrix shapes first (reported
        distinctly), then the layer-commutativity relations (i, s, t)."""
        n, r = self.algebra.n, self.algebra.r
        out = []
        for s in range(r):
            for i in range(n - 1):
                m = self.maps[s][i]
                if m.field != self.field:
                    out.append(f"shape: maps[{s}][{i}] lives over the wrong field")
                elif (m.rows, m.cols) != (self.dims[i + 1], self.dims[i]):
                    out.append(
                        f"shape: maps[{s}][{i}] is {m.rows}x{m.cols}, "
                        f"expected {self.dims[i + 1]}x{self.dims[i]}")
        if out:
            return out
        for i in range(n - 2):
            for s in range(r):
                for t in range(s + 1, r):
                    lhs = self.maps[t][i + 1] @ self.maps[s][i]
                    rhs = self.maps[s][i + 1] @ self.maps[t][i]
                    if lhs != rhs:
                        out.append(f"relation: layers ({i}, arrows {s},{t}) do not commute")
        return out

    def __repr__(self):
        return f"Rep(n={self.algebra.n}, r={self.algebra.r}, dims={self.dims})"


def validate(m: Rep) -> list[str]:
    return m.validate()


def zero_rep(a: AlgebraData, fld: FieldSpec) -> Rep:
    dims = (0,) * a.n
    maps = tuple(tuple(Mat.zeros(fld, 0, 0) for _ in range(a.n - 1))
                 for _ in range(a.r))
    return Rep(a, fld, dims, maps)


def rep_from_maps(a: AlgebraData, fld: FieldSpec, dims, maps) -> Rep:
    """Normalize plain lists into the frozen Rep."""
    return Rep(a, fld, tuple(dims), tuple(tuple(row) for row in maps))


@dataclass(frozen=True)
class RepMorphism:
    """Vertexwise linear maps blocks[i]: source_i -> target_i intertwining
    the arrow actions."""

    source: Rep
    target: Rep
    blocks: tuple[Mat, ...]

    def __post_init__(self):
        if len(self.blocks) != self.source.algebra.n:
            raise ValueError("one block per vertex required")

    def is_intertwiner(self) -> bool:
        n, r = self.source.algebra.n, self.source.algebra.r
        for i in range(n):
            b = self.blocks[i]
            if (b.rows, b.cols) != (self.target.dims[i], self.source.dims[i]):
                return False
        for s in range(r):
            for i in range(n - 1):
                lhs = self.blocks[i + 1] @ self.source.maps[s][i]
                rhs = self.target.maps[s][i] @ self.blocks[i]
                if lhs != rhs:
                    return False
        return True

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("compose: middle objects differ")
        return RepMorphism(other.source, self.target,
                           tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           tuple(b.scale(c) for b in self.blocks))

    @property
    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    @staticmethod
    def identity(m: Rep) -> "RepMorphism":
        return RepMorphism(m, m, tuple(Mat.identity(m.field, d) for d in m.dims))

    @staticmethod
    def zero(source: Rep, target: Rep) -> "RepMorphism":
        return RepMorphism(source, target,
                           tuple(Mat.zeros(source.field, t, s)
                                 for t, s in zip(target.dims, source.dims)))


# -- universal constructions -------------------------------------------------

def direct_sum(m: Rep, n_: Rep) -> Rep:
    _same_category(m, n_)
    a = m.algebra
    dims = tuple(x + y for x, y in zip(m.dims, n_.dims))
    maps = []
    for s in range(a.r):
        row = []
        for i in range(a.n - 1):
            am, an = m.maps[s][i], n_.maps[s][i]
            top_ = am.hstack(Mat.zeros(m.field, am.rows, an.cols))
            bot = Mat.zeros(m.field, an.rows, am.cols).hstack(an)
            row.append(top_.vstack(bot))
        maps.append(tuple(row))
    return Rep(a, m.field, dims, tuple(maps))


def direct_sum_with_legs(m: Rep, n_: Rep):
    """(sum, incl_m, incl_n, proj_m, proj_n)."""
    s = direct_sum(m, n_)
    fld = m.field
    incl_m, incl_n, proj_m, proj_n = [], [], [], []
    for i in range(m.algebra.n):
        dm, dn = m.dims[i], n_.dims[i]
        im = Mat.identity(fld, dm).vstack(Mat.zeros(fld, dn, dm))
        in_ = Mat.zeros(fld, dm, dn).vstack(Mat.identity(fld, dn))
        incl_m.append(im)
        incl_n.append(in_)
        proj_m.append(im.transpose())
        proj_n.append(in_.transpose())
    return (s, RepMorphism(m, s, tuple(incl_m)), RepMorphism(n_, s, tuple(incl_n)),
            RepMorphism(s, m, tuple(proj_m)), RepMorphism(s, n_, tuple(proj_n)))


def sub_rep_from_columns(m: Rep, columns: list[Mat]):
    """Subrepresentation spanned vertexwise by the (independent) columns,
    assuming the span is arrow-stable. Returns (sub, inclusion)."""
    a = m.algebra
    maps = []
    for s in range(a.r):
        row = []
        for i in range(a.n - 1):
            rhs = m.maps[s][i] @ columns[i]
            y = solve(columns[i + 1], rhs)
            if y is None:
                raise ValueError("columns do not span an arrow-stable subspace")
            row.append(y)
        maps.append(tuple(row))
    sub = Rep(a, m.field, tuple(c.cols for c in columns), tuple(maps))
    return sub, RepMorphism(sub, m, tuple(columns))


def quotient_by_columns(m: Rep, columns: list[Mat]):
    """Quotient of m by the arrow-stable span of the given columns.
    Returns (quotient, projection)."""
    a = m.algebra
    projs = []
    for i in range(a.n):
        # rows spanning the left annihilator of the column span
        p = kernel_basis(columns[i].transpose()).transpose()
        projs.append(p)
    maps = []
    for s in range(a.r):
        row = []
        for i in range(a.n - 1):
            rhs = (projs[i + 1] @ m.maps[s][i]).transpose()
            yt = solve(projs[i].transpose(), rhs)
            if yt is None:
                raise ValueError("projection system inconsistent; span not arrow-stable")
            row.append(yt.transpose())
        maps.append(tuple(row))
    quot = Rep(a, m.field, tuple(p.rows for p in projs), tuple(maps))
    return quot, RepMorphism(m, quot, tuple(projs))


def kernel_of(f: RepMorphism):
    """(kernel subrepresentation of f.source, inclusion)."""
    cols = [kernel_basis(f.blocks[i]) for i in range(f.source.algebra.n)]
    return sub_rep_from_columns(f.source, cols)


def image_columns(f: RepMorphism) -> list[Mat]:
    return [column_space_basis(b) for b in f.blocks]


def cokernel_of(f: RepMorphism):
    """(cokernel of f inside f.target, projection)."""
    return quotient_by_columns(f.target, image_columns(f))


def pushout(f: RepMorphism, g: RepMorphism):
    """Pushout of f: K -> P along g: K -> N; returns (E, leg_P, leg_N) with
    leg_P: P -> E and leg_N: N -> E."""
    if f.source != g.source:
        raise ValueError("pushout needs a common source")
    p_rep, n_rep = f.target, g.target
    s, incl_p, incl_n, _, _ = direct_sum_with_legs(p_rep, n_rep)
    h_blocks = tuple(fp.vstack(gn.scale(_minus_one(f.source.field)))
                     for fp, gn in zip(f.blocks, g.blocks))
    h = RepMorphism(f.source, s, h_blocks)
    e, proj = cokernel_of(h)
    return e, proj.compose(incl_p), proj.compose(incl_n)


def _minus_one(fld: FieldSpec):
    return fld.neg(fld.one)


def radical_rep(m: Rep):
    """(rad M, inclusion): vertex i >= 1 carries the joint image of the
    layer-(i-1) arrow maps; vertex 0 is zero."""
    a = m.algebra
    cols = [Mat.zeros(m.field, m.dims[0], 0)]
    for i in range(1, a.n):
        stacked = m.maps[0][i - 1]
        for s in range(1, a.r):
            stacked = stacked.hstack(m.maps[s][i - 1])
        cols.append(column_space_basis(stacked))
    return sub_rep_from_columns(m, cols)


def top(m: Rep):
    """(top M = M / rad M, projection); arrows act as zero on the quotient."""
    a = m.algebra
    cols = [Mat.zeros(m.field, m.dims[0], 0)]
    for i in range(1, a.n):
        stacked = m.maps[0][i - 1]
        for s in range(1, a.r):
            stacked = stacked.hstack(m.maps[s][i - 1])
        cols.append(column_space_basis(stacked))
    return quotient_by_columns(m, cols)


def socle(m: Rep):
    """(soc M, inclusion): vertexwise joint kernel of the outgoing arrows;
    the last vertex contributes fully."""
    a = m.algebra
    cols = []
    for i in range(a.n - 1):
        stacked = m.maps[0][i]
        for s in range(1, a.r):
            stacked = stacked.vstack(m.maps[s][i])
        cols.append(kernel_basis(stacked))
    cols.append(Mat.identity(m.field, m.dims[a.n - 1]))
    return sub_rep_from_columns(m, cols)


def dual_rep(m: Rep) -> Rep:
    """Linear dual with vertices relabeled in reverse order: the arrow-s map
    at layer i is the transpose of the source's arrow-s map at layer n-2-i."""
    a = m.algebra
    dims = tuple(reversed(m.dims))
    maps = []
    for s in range(a.r):
        row = [m.maps[s][a.n - 2 - i].transpose() for i in range(a.n - 1)]
        maps.append(tuple(row))
    return Rep(a, m.field, dims, tuple(maps))


def _same_category(m: Rep, n_: Rep):
    if m.algebra != n_.algebra:
        raise ValueError(f"algebra mismatch: {m.algebra} vs {n_.algebra}")
    if m.field != n_.field:
        raise ValueError("field mismatch")


# -- Hom spaces ---------------------------------------------------------------

def _hom_system(m: Rep, n_: Rep):
    """Sparse rows of the intertwining system. Unknowns are the entries of
    the vertex blocks f_i (target.dims[i] x source.dims[i]), vertex-major and
    row-major within a vertex."""
    a = m.algebra
    fld = m.field
    offs = []
    off = 0
    for i in range(a.n):
        offs.append(off)
        off += n_.dims[i] * m.dims[i]
    total = off
    rows = []
    neg, is_z = fld.neg, fld.is_zero
    for s in range(a.r):
        for i in range(a.n - 1):
            am = m.maps[s][i]       # m.dims[i+1] x m.dims[i]
            an = n_.maps[s][i]      # n.dims[i+1] x n.dims[i]
            tm, sm = m.dims[i + 1], m.dims[i]
            tn, sn = n_.dims[i + 1], n_.dims[i]
            # equation (a, b): sum_c f_{i+1}[a][c] am[c][b] - sum_d an[a][d] f_i[d][b] = 0
            am_colnz = [[(c, am.entries[c][b]) for c in range(tm)
                         if not is_z(am.entries[c][b])] for b in range(sm)]
            an_rownz = [[(d, an.entries[a_][d]) for d in range(sn)
                         if not is_z(an.entries[a_][d])] for a_ in range(tn)]
            for a_ in range(tn):
                for b in range(sm):
                    row = {}
                    base1 = offs[i + 1] + a_ * tm
                    for c, v in am_colnz[b]:
                        row[base1 + c] = v
                    base0 = offs[i]
                    for d, v in an_rownz[a_]:
                        idx = base0 + d * sm + b
                        w = neg(v)
                        if idx in row:
                            row[idx] = fld.add(row[idx], w)
                            if is_z(row[idx]):
                                del row[idx]
                        else:
                            row[idx] = w
                    if row:
                        rows.append(row)
    return rows, total, offs


def hom_space(m: Rep, n_: Rep) -> list[RepMorphism]:
    """Deterministic basis of the space of morphisms m -> n_."""
    _same_category(m, n_)
    rows, total, offs = _hom_system(m, n_)
    _, vectors = kernel_basis_sparse(rows, total, m.field)
    a = m.algebra
    fld = m.field
    out = []
    for v in vectors:
        blocks = []
        for i in range(a.n):
            tn, sm = n_.dims[i], m.dims[i]
            ent = [[fld.zero] * sm for _ in range(tn)]
            base = offs[i]
            for idx, val in v.items():
                if base <= idx < base + tn * sm:
                    loc = idx - base
                    ent[loc // sm][loc % sm] = val
            blocks.append(Mat(fld, tn, sm, ent))
        out.append(RepMorphism(m, n_, tuple(blocks)))
    return out


def hom_dim(m: Rep, n_: Rep) -> int:
    """dim Hom(m, n_). Exact; uses a prime-field full-column-rank certificate
    as a fast path when it proves the dimension is zero (a nonzero minor mod p
    stays nonzero over the rationals), otherwise eliminates exactly."""
    _same_category(m, n_)
    rows, total, _ = _hom_system(m, n_)
    if total == 0:
        return 0
    if m.field == QQ and total >= 64:
        got = _full_column_rank_mod_p(rows, total)
        if got:
            return 0
    pivot_cols, _ = _rref_rowdicts(rows, total, m.field)
    return total - len(pivot_cols)


def _full_column_rank_mod_p(rows: list[dict], total: int, p: int = 10007) -> bool:
    """True only if the system provably has full column rank (soundness:
    rank over F_p never exceeds rank over Q). Denominators divisible by p
    make the reduction unusable; then report False (inconclusive)."""
    try:
        import numpy as np
    except ImportError:
        return False
    if len(rows) < total:
        return False
    arr = np.zeros((len(rows), total), dtype=np.int64)
    for k, row in enumerate(rows):
        for j, v in row.items():
            num, den = v.numerator, v.denominator
            if den % p == 0:
                return False
            arr[k, j] = (num * pow(den, p - 2, p)) % p
    return _numpy_rank_mod_p(arr, p) == total


def _numpy_rank_mod_p(arr, p: int) -> int:
    """In-place Gaussian elimination over F_p on an int64 array."""
    import numpy as np
    a = arr % p
    rows, cols = a.shape
    rnk = 0
    for col in range(cols):
        if rnk == rows:
            break
        piv = np.nonzero(a[rnk:, col])[0]
        if piv.size == 0:
            continue
        pr = rnk + int(piv[0])
        if pr != rnk:
            a[[rnk, pr]] = a[[pr, rnk]]
        inv = pow(int(a[rnk, col]), p - 2, p)
        a[rnk] = (a[rnk] * inv) % p
        hit = np.nonzero(a[:, col])[0]
        hit = hit[hit != rnk]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, col], a[rnk])) % p
        rnk += 1
    return rnk

# -- isomorphism testing -------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    """Three-valued isomorphism outcome: bool(result) is the best answer,
    .definite says whether it is a certificate or a bounded search report."""

    value: bool
    definite: bool
    detail: str
    witness: "RepMorphism | None" = None

    def __bool__(self) -> bool:
        return self.value


def _invertible_everywhere(f: RepMorphism) -> bool:
    for i, b in enumerate(f.blocks):
        if b.rows != b.cols:
            return False
        if rank(b) != b.rows:
            return False
    return True


def iso(m: Rep, n_: Rep, *, trials: int = 20, seed: int = 0) -> IsoResult:
    """Isomorphism test: dims filter, then random invertible combinations of
    the Hom basis, then an exact symbolic fallback on small instances (the
    vertex determinant of a generic combination is tested against the zero
    polynomial on a grid large enough for its degree)."""
    _same_category(m, n_)
    if m.dims != n_.dims:
        return IsoResult(False, True, "dimension vectors differ")
    if m.total_dim == 0:
        return IsoResult(True, True, "both zero")
    basis = hom_space(m, n_)
    if not basis:
        return IsoResult(False, True, "Hom space is zero")
    for h in basis:
        if _invertible_everywhere(h):
            return IsoResult(True, True, "basis element is invertible", h)
    rng = Random(seed)
    fld = m.field
    for _ in range(trials):
        coeffs = [rng.randint(-9, 9) for _ in basis]
        h = _combine(basis, [fld.from_int(c) for c in coeffs])
        if _invertible_everywhere(h):
            return IsoResult(True, True, "random combination is invertible", h)
    if len(basis) <= 4 and max(m.dims) <= 8 and fld == QQ:
        verdict = _symbolic_generic_invertibility(m, n_, basis)
        return verdict
    return IsoResult(False, False,
                     f"probably-not-isomorphic (no invertible combination in {trials} trials)")


def _combine(basis: list[RepMorphism], coeffs) -> RepMorphism:
    out = basis[0].scale(coeffs[0])
    for h, c in zip(basis[1:], coeffs[1:]):
        out = out + h.scale(c)
    return out


def _symbolic_generic_invertibility(m: Rep, n_: Rep, basis: list[RepMorphism]) -> IsoResult:
    """Exact: the determinant at vertex i of a generic combination is a
    polynomial of individual degree <= dims[i] in the combination variables,
    so it vanishes identically iff it vanishes on a (dims[i]+1)-per-axis
    integer grid. If some vertex determinant is the zero polynomial, no
    combination is invertible there; otherwise an isomorphism exists."""
    from itertools import product as iproduct
    from .exactla import det as exact_det
    b = len(basis)
    fld = m.field
    for i in range(m.algebra.n):
        d = m.dims[i]
        if d == 0:
            continue
        found_nonzero = False
        for point in iproduct(range(d + 1), repeat=b):
            blk = basis[0].blocks[i].scale(fld.from_int(point[0]))
            for t in range(1, b):
                blk = blk + basis[t].blocks[i].scale(fld.from_int(point[t]))
            if not fld.is_zero(exact_det(blk)):
                found_nonzero = True
                break
        if not found_nonzero:
            return IsoResult(False, True,
                             f"every Hom combination is singular at vertex {i}")
    # every vertex determinant is a nonzero polynomial, hence so is the
    # product; over the rationals a common nonvanishing point exists.
    degsum = sum(m.dims)
    from itertools import product as iproduct2
    budget = 20000
    for point in iproduct2(range(degsum + 1), repeat=b):
        budget -= 1
        if budget < 0:
            break
        h = _combine(basis, [fld.from_int(c) for c in point])
        if _invertible_everywhere(h):
            return IsoResult(True, True, "grid search found an isomorphism", h)
    return IsoResult(True, True,
                     "generic combination invertible (nonzero determinant polynomial)")


# -- endomorphism algebras and decomposition ----------------------------------

@dataclass(frozen=True)
class EndoAlgebra:
    """End(M) in a fixed basis: total dimension, trace-form radical, and the
    structure constants table (product[a][b] = coordinates of basis[a] after
    basis[b] ... stored as basis[a] composed with basis[b])."""

    basis: tuple[RepMorphism, ...]
    dim: int
    rad_dim: int
    semisimple_dim: int
    rad_coords: tuple[tuple, ...]          # rows: radical elements in basis coords
    id_coords: tuple                        # coordinates of the identity
    structure: tuple[tuple[tuple, ...], ...]  # structure[a][b] = coords of b[a] o b[b]


def _flatten_morphism(f: RepMorphism):
    out = []
    for b in f.blocks:
        for row in b.entries:
            out.extend(row)
    return out


def _trace_of_product(f: RepMorphism, g: RepMorphism):
    """trace(f o g) summed over vertices, without forming the composite."""
    fld = f.source.field
    acc = fld.zero
    for bf, bg in zip(f.blocks, g.blocks):
        # trace(bf @ bg) = sum_{a,c} bf[a][c] * bg[c][a]
        for a_ in range(bf.rows):
            rowf = bf.entries[a_]
            for c in range(bf.cols):
                v = rowf[c]
                if not fld.is_zero(v):
                    acc = fld.add(acc, fld.mul(v, bg.entries[c][a_]))
    return acc


def endo_algebra(m: Rep) -> EndoAlgebra:
    """Basis, radical (trace form, characteristic zero) and structure
    constants of End(m). Prime fields are refused: the trace criterion can be
    unsound in positive characteristic."""
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "endomorphism radical unsupported over this field; lift to the rationals")
    if m.is_zero_rep:
        raise ValueError("endomorphism algebra of the zero module")
    basis = hom_space(m, m)
    k = len(basis)
    fld = m.field
    gram = Mat.from_rows(fld, [[_trace_of_product(a, b) for b in basis] for a in basis])
    radv = kernel_basis(gram)  # columns = radical elements in basis coords
    rad_dim = radv.cols
    flat = Mat(fld, len(_flatten_morphism(basis[0])), k,
               [list(col) for col in zip(*(_flatten_morphism(b) for b in basis))])
    idvec = Mat(fld, flat.rows, 1,
                [[v] for v in _flatten_morphism(RepMorphism.identity(m))])
    idc = solve(flat, idvec)
    if idc is None:
        raise RuntimeError("identity endomorphism missing from Hom basis span")
    prods = []
    cols = []
    for a_ in range(k):
        for b_ in range(k):
            cols.append(_flatten_morphism(basis[a_].compose(basis[b_])))
    prod_mat = Mat(fld, flat.rows, k * k, [list(t) for t in zip(*cols)])
    x = solve(flat, prod_mat)
    if x is None:
        raise RuntimeError("End(M) not closed under composition (solver bug)")
    structure = tuple(tuple(tuple(x.entries[t][a_ * k + b_] for t in range(k))
                            for b_ in range(k))
                      for a_ in range(k))
    rad_rows = tuple(tuple(radv.entries[t][j] for t in range(k))
                     for j in range(radv.cols))
    id_coords = tuple(idc.entries[t][0] for t in range(k))
    return EndoAlgebra(tuple(basis), k, rad_dim, k - rad_dim, rad_rows,
                       id_coords, structure)


def is_indecomposable(m: Rep) -> bool:
    """True iff End(m) is local, detected as semisimple quotient of dimension
    one. Rational coefficients only; the zero module is rejected."""
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "indecomposability test unsupported over this field; lift to the rationals")
    if m.is_zero_rep:
        raise ValueError("the zero module is neither decomposable nor indecomposable")
    return endo_algebra(m).semisimple_dim == 1


def split_off_summand(e: Rep, d: Rep, *, seed: int = 0,
                      trials: int = 6) -> Rep | None:
    """A complement of the summand d inside e, or None.

    A morphism f: d -> e is a split monomorphism exactly when some
    g: e -> d satisfies g∘f = id; for a fixed f that condition is linear
    in g, so solving it certifies the splitting exactly, and then
    e = im(f) ⊕ ker(g) makes the kernel of g a complement.  When d really
    is a summand (and the coefficients are rational, hence the field
    infinite) almost every f in Hom(d, e) is split mono, so a few seeded
    draws decide.  None means no draw split — in particular whenever d is
    not a summand of e.
    """
    _same_category(e, d)
    if isinstance(e.field, PrimeField):
        raise UnsupportedFieldOperation(
            "summand splitting unsupported over this field; lift to the "
            "rationals")
    if d.is_zero_rep:
        return e
    basis_de = hom_space(d, e)
    if not basis_de:
        return None
    basis_ed = hom_space(e, d)
    if not basis_ed:
        return None
    fld = e.field
    id_d = RepMorphism(d, d, tuple(Mat.identity(fld, di) for di in d.dims))
    rhs_vec = _flatten_morphism(id_d)
    rhs = Mat(fld, len(rhs_vec), 1, [[v] for v in rhs_vec])
    rng = Random(seed)
    for trial in range(trials):
        if trial == 0:
            coeffs = [fld.one] * len(basis_de)
        else:
            coeffs = [fld.from_int(rng.randint(-4, 4)) for _ in basis_de]
        f = None
        for c, fk in zip(coeffs, basis_de):
            scaled = RepMorphism(d, e, tuple(b.scale(c) for b in fk.blocks))
            f = scaled if f is None else f + scaled
        cols = [_flatten_morphism(g.compose(f)) for g in basis_ed]
        system = Mat(fld, len(rhs_vec), len(cols),
                     [[cols[c_][r_] for c_ in range(len(cols))]
                      for r_ in range(len(rhs_vec))])
        y = solve(system, rhs)
        if y is None:
            continue
        g = None
        for k, gk in enumerate(basis_ed):
            scaled = RepMorphism(e, d, tuple(b.scale(y.entries[k][0])
                                             for b in gk.blocks))
            g = scaled if g is None else g + scaled
        check = g.compose(f)
        for i, blk in enumerate(check.blocks):
            ident = Mat.identity(fld, d.dims[i])
            if blk.entries != ident.entries:
                raise ArithmeticError("split solution fails its own "
                                      "certificate; solver bug")
        complement, _incl = kernel_of(g)
        return complement
    return None


# -- splitting off summands ----------------------------------------------------

def _poly_mul_q(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod_q(p, q):
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [Fraction(0)] * max(1, len(p) - dq)
    while len(p) - 1 >= dq and any(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        if len(p) - 1 < dq:
            break
        c = p[-1] / lead
        s = len(p) - 1 - dq
        quo[s] = c
        for i, b in enumerate(q):
            p[s + i] -= c * b
        p.pop()
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return quo, p


def _poly_ext_gcd_q(a, b):
    """(g, u, v) with u*a + v*b = g over the rationals, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    def is_zero(p):
        return all(c == 0 for c in p)
    while not is_zero(r1):
        q, rem = _poly_divmod_q(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub_q(s0, _poly_mul_q(q, s1))
        t0, t1 = t1, _poly_sub_q(t0, _poly_mul_q(q, t1))
    lc = r0[-1]
    if lc != 1:
        r0 = [c / lc for c in r0]
        s0 = [c / lc for c in s0]
        t0 = [c / lc for c in t0]
    return r0, s0, t0


def _poly_sub_q(p, q):
    out = [Fraction(0)] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, b in enumerate(q):
        out[i] -= b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _min_poly_of_matrix(a: Mat):
    """Monic minimal polynomial (rational coefficient list, low degree first)
    of a square rational matrix, by first linear dependence among its powers."""
    fld = a.field
    k = a.rows
    powers = [Mat.identity(fld, k)]
    flat_cols = []
    def flatten(mt):
        out = []
        for row in mt.entries:
            out.extend(row)
        return out
    flat_cols.append(flatten(powers[0]))
    cur = powers[0]
    for _ in range(k * k + 1):
        cur = cur @ a
        powers.append(cur)
        flat_cols.append(flatten(cur))
        # look for dependence: last power in span of previous ones
        mat = Mat(fld, len(flat_cols[0]), len(flat_cols) - 1,
                  [list(t) for t in zip(*flat_cols[:-1])])
        rhs = Mat(fld, len(flat_cols[0]), 1, [[v] for v in flat_cols[-1]])
        sol = solve(mat, rhs)
        if sol is not None:
            coeffs = [-sol.entries[t][0] for t in range(len(flat_cols) - 1)]
            coeffs.append(fld.one)
            return [Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
    raise RuntimeError("minimal polynomial search exceeded matrix-size bound")


def _sub_quotient_action(e: EndoAlgebra, coords):
    """Matrix of left multiplication by the element with the given basis
    coordinates on End/rad, in the quotient basis induced by non-radical
    coordinates. Returns (matrix over QQ, lift: quotient coords -> End coords,
    project: End coords -> quotient coords or None off the section)."""
    fld = QQ
    k = e.dim
    rad_cols = Mat(fld, k, e.rad_dim,
                   [[e.rad_coords[j][t] for j in range(e.rad_dim)] for t in range(k)]) \
        if e.rad_dim else Mat.zeros(fld, k, 0)
    # complement of the radical: columns of identity at non-pivot positions of rad
    full = rad_cols.hstack(Mat.identity(fld, k))
    _, full_piv = rref(full)
    comp_idx = [j - e.rad_dim for j in full_piv if j >= e.rad_dim]
    q = len(comp_idx)
    # basis of End = rad columns + unit vectors at comp_idx; change-of-basis:
    basis_cols = []
    for j in range(e.rad_dim):
        basis_cols.append([e.rad_coords[j][t] for t in range(k)])
    for j in comp_idx:
        col = [fld.zero] * k
        col[j] = fld.one
        basis_cols.append(col)
    b_mat = Mat(fld, k, k, [list(t) for t in zip(*basis_cols)])
    def star(avec, bvec):
        out = [fld.zero] * k
        for a_ in range(k):
            ca = avec[a_]
            if fld.is_zero(ca):
                continue
            for b_ in range(k):
                cb = bvec[b_]
                if fld.is_zero(cb):
                    continue
                sc = e.structure[a_][b_]
                w = fld.mul(ca, cb)
                for t in range(k):
                    if not fld.is_zero(sc[t]):
                        out[t] = fld.add(out[t], fld.mul(w, sc[t]))
        return out
    # images of quotient basis vectors under left mult by coords, in End coords
    img_cols = []
    for j in comp_idx:
        bvec = [fld.zero] * k
        bvec[j] = fld.one
        img_cols.append(star(coords, bvec))
    img = Mat(fld, k, q, [list(t) for t in zip(*img_cols)]) if q else Mat.zeros(fld, k, 0)
    coords_in_basis = solve(b_mat, img)
    if coords_in_basis is None:
        raise RuntimeError("structure constants inconsistent with radical basis")
    action = Mat(fld, q, q,
                 [[coords_in_basis.entries[e.rad_dim + a_][b_] for b_ in range(q)]
                  for a_ in range(q)])
    def lift(qcoords):
        out = [fld.zero] * k
        for pos, j in enumerate(comp_idx):
            out[j] = fld.add(out[j], qcoords[pos])
        return out
    return action, lift, comp_idx


def _idempotent_from_split(e: EndoAlgebra, coords, minpoly, root, mult):
    """Given element x (coords), its min poly m = (t-root)^mult * g with
    g(root) != 0, build the spectral idempotent onto the (t-root)-primary
    part: h = g * (g^{-1} mod (t-root)^mult) evaluated at x, then corrected by
    Newton iteration (in End(M), radical included) until exactly idempotent."""
    fld = QQ
    k = e.dim
    # factor out (t - root)^mult
    lin = [-root, Fraction(1)]
    g = list(minpoly)
    for _ in range(mult):
        g, rem = _poly_divmod_q(g, lin)
        if any(c != 0 for c in rem):
            raise RuntimeError("claimed root is not a root of the minimal polynomial")
    pk = [Fraction(1)]
    for _ in range(mult):
        pk = _poly_mul_q(pk, lin)
    gcd, u, v = _poly_ext_gcd_q(g, pk)
    if len(gcd) != 1:
        raise RuntimeError("factors of the minimal polynomial are not coprime")
    c = gcd[0]
    u = [ui / c for ui in u]
    h = _poly_mul_q(g, u)   # h = g*u = 1 - pk*v/c : idempotent mod minpoly on primary part
    # evaluate h at the element inside End(M) (full algebra, with radical)
    def star(avec, bvec):
        out = [fld.zero] * k
        for a_ in range(k):
            ca = avec[a_]
            if fld.is_zero(ca):
                continue
            for b_ in range(k):
                cb = bvec[b_]
                if fld.is_zero(cb):
                    continue
                sc = e.structure[a_][b_]
                w = fld.mul(ca, cb)
                for t in range(k):
                    if not fld.is_zero(sc[t]):
                        out[t] = fld.add(out[t], fld.mul(w, sc[t]))
        return out
    idv = list(e.id_coords)
    acc = [fld.mul(h[0], idv[t]) for t in range(k)]
    powv = idv
    for d in range(1, len(h)):
        powv = star(powv, coords)
        if h[d] != 0:
            hd = fld.coerce(h[d])
            for t in range(k):
                acc[t] = fld.add(acc[t], fld.mul(hd, powv[t]))
    # Newton lift to an exact idempotent: e <- 3e^2 - 2e^3
    for _ in range(64):
        sq = star(acc, acc)
        if sq == acc:
            return acc
        cube = star(sq, acc)
        acc = [fld.sub(fld.add(sq[t], fld.add(sq[t], sq[t])),
                       fld.add(cube[t], cube[t])) for t in range(k)]
    raise RuntimeError("idempotent refinement did not converge")


def _morphism_from_coords(e: EndoAlgebra, coords) -> RepMorphism:
    fld = e.basis[0].source.field
    out = e.basis[0].scale(coords[0])
    for t in range(1, e.dim):
        out = out + e.basis[t].scale(coords[t])
    return out


def _split_by_idempotent(m: Rep, f: RepMorphism):
    """M = im(f) + ker(f) for an idempotent endomorphism f: both summands as
    reps with inclusion morphisms."""
    img_cols = [column_space_basis(b) for b in f.blocks]
    ker_cols = [kernel_basis(b) for b in f.blocks]
    sub_i, inc_i = sub_rep_from_columns(m, img_cols)
    sub_k, inc_k = sub_rep_from_columns(m, ker_cols)
    if sub_i.total_dim + sub_k.total_dim != m.total_dim:
        raise RuntimeError("idempotent split dimensions do not add up")
    return sub_i, sub_k


def _candidate_elements(e: EndoAlgebra, rng: Random):
    """Stream of End(M) elements to try for a splitting: the quotient images
    of basis vectors, pairwise sums and differences, then random integer
    combinations."""
    k = e.dim
    fld = QQ
    for t in range(k):
        v = [fld.zero] * k
        v[t] = fld.one
        yield v
    for a_ in range(k):
        for b_ in range(a_ + 1, k):
            v = [fld.zero] * k
            v[a_] = fld.one
            v[b_] = fld.one
            yield v
            w = [fld.zero] * k
            w[a_] = fld.one
            w[b_] = fld.from_int(-1)
            yield w
    for _ in range(40):
        yield [fld.from_int(rng.randint(-5, 5)) for _ in range(k)]


def _try_split(m: Rep, *, seed: int = 0):
    """One splitting step: None if m is (certified) indecomposable, else a
    pair of proper summands. Raises NonSplitSemisimpleQuotient when End/rad
    has dimension > 1 but no rational splitting element is found."""
    e = endo_algebra(m)
    if e.semisimple_dim == 1:
        return None
    from .exactla.upoly import rational_roots
    rng = Random(seed)
    for coords in _candidate_elements(e, rng):
        action, lift, comp_idx = _sub_quotient_action(e, coords)
        if action.rows == 0:
            continue
        mp = _min_poly_of_matrix(action)
        if len(mp) <= 2:
            continue  # scalar in End/rad: no split from this element
        int_coeffs, den = _int_poly(mp)
        roots = rational_roots(int_coeffs)
        for root in roots:
            mult = _root_multiplicity(mp, root)
            if mult == len(mp) - 1:
                continue  # (t-root)^full: no coprime complement
            try:
                id_coords = _idempotent_from_split(e, coords, mp, root, mult)
            except RuntimeError:
                continue
            if id_coords == list(e.id_coords) or all(QQ.is_zero(c) for c in id_coords):
                continue
            f = _morphism_from_coords(e, id_coords)
            a, b = _split_by_idempotent(m, f)
            if a.total_dim and b.total_dim:
                return a, b
    raise NonSplitSemisimpleQuotient(
        "non-split semisimple quotient: End/rad has dimension "
        f"{e.semisimple_dim} but no rational idempotent was found")


def _int_poly(mp):
    den = 1
    for c in mp:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    return [int(c * den) for c in mp], den


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _root_multiplicity(mp, root):
    lin = [Fraction(-root), Fraction(1)]
    mult = 0
    cur = list(mp)
    while True:
        quo, rem = _poly_divmod_q(cur, lin)
        if all(c == 0 for c in rem):
            mult += 1
            cur = quo
        else:
            return mult


def decompose(m: Rep, *, seed: int = 0) -> list[tuple[Rep, int]]:
    """Full direct-sum decomposition over the rationals: list of
    (indecomposable summand, multiplicity), grouped up to isomorphism.
    Raises NonSplitSemisimpleQuotient when a splitting provably exists but
    has no rational witness in the search space."""
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "decomposition unsupported over this field; lift to the rationals")
    if m.is_zero_rep:
        return []
    pieces: list[Rep] = []
    stack = [m]
    while stack:
        cur = stack.pop()
        split = _try_split(cur, seed=seed)
        if split is None:
            pieces.append(cur)
        else:
            stack.extend(split)
    grouped: list[tuple[Rep, int]] = []
    for p in pieces:
        for idx, (q, cnt) in enumerate(grouped):
            if p.dims == q.dims and iso(p, q).value:
                grouped[idx] = (q, cnt + 1)
                break
        else:
            grouped.append((p, 1))
    grouped.sort(key=lambda t: (-t[0].total_dim, t[0].dims))
    return grouped
