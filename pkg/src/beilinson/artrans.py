"""Almost-split machinery for layered-algebra modules.

Minimal projective presentations, transport of presentations through the
socle-functor (projectives to injectives), the translate and its inverse,
extension spaces, almost split sequences for brick end terms, and component
windows: walks along the translate orbit of a mouth module that classify
every visited module by the equal-images / equal-kernels / constant-Jordan-
type deciders.

The translate is computed as the kernel of the transported presentation
map; its inverse goes through the duality (dual, translate, dual), which
keeps a single code path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraData, monomials_of_degree, monomial_index
from .construct import injective, projective, w_module
from .exactla import (Mat, QQ, FieldSpec, PrimeField, RationalField,
                      block_diag, rank, rref, solve)
from .jordan import PropertyReport, check_cjt, check_eip, check_ekp
from .rep import (IsoResult, NonSplitSemisimpleQuotient, Rep, RepMorphism,
                  UnsupportedFieldOperation, _flatten_morphism,
                  _numpy_rank_mod_p, decompose, dual_rep, endo_algebra,
                  hom_space, is_indecomposable, iso, kernel_of, pushout,
                  split_off_summand, zero_rep)

__all__ = [
    "ARPreconditionError",
    "ComponentReport",
    "PathMatrix",
    "ProjPresentation",
    "WindowNode",
    "ar_sequence_from",
    "component_window",
    "ext1_basis",
    "ext1_dim",
    "extension_rep",
    "is_quasi_simple",
    "min_proj_presentation",
    "nakayama_of",
    "projective_free",
    "realize_path_matrix",
    "stable_iso",
    "tau",
    "tau_inverse",
]


class ARPreconditionError(ValueError):
    """A precondition of the almost-split construction failed."""


# -- widths and summand offsets -------------------------------------------------

def _pwidth(r: int, v: int, a: int) -> int:
    """Dimension at vertex v of the projective generated at vertex a."""
    return len(monomials_of_degree(r, v - a)) if v >= a else 0


def _iwidth(r: int, v: int, i: int) -> int:
    """Dimension at vertex v of the injective with socle at vertex i."""
    return len(monomials_of_degree(r, i - v)) if v <= i else 0


def _offsets(widths: list[int]) -> list[int]:
    out = []
    acc = 0
    for w in widths:
        out.append(acc)
        acc += w
    return out


def _sum_rep(builder, a: AlgebraData, fld: FieldSpec, vertices) -> Rep:
    """Direct sum of single-vertex modules built by `builder(vertex)`."""
    comps = [builder(v, a.n, a.r, field=fld) for v in vertices]
    if not comps:
        return zero_rep(a, fld)
    dims = tuple(sum(c.dims[v] for c in comps) for v in range(a.n))
    maps = tuple(
        tuple(block_diag(fld, [c.maps[s][v] for c in comps])
              for v in range(a.n - 1))
        for s in range(a.r))
    return Rep(a, fld, dims, maps)


# -- projective covers -----------------------------------------------------------

def _top_unit_lifts(m: Rep) -> list[list[int]]:
    """Per vertex: indices of unit vectors completing the radical subspace to
    a basis — canonical lifts of a basis of the top."""
    fld = m.field
    out = []
    for i in range(m.algebra.n):
        d = m.dims[i]
        if d == 0:
            out.append([])
            continue
        if i == 0:
            radmat = Mat.zeros(fld, d, 0)
        else:
            radmat = m.maps[0][i - 1]
            for s in range(1, m.algebra.r):
                radmat = radmat.hstack(m.maps[s][i - 1])
        full = radmat.hstack(Mat.identity(fld, d))
        _, piv = rref(full)
        out.append([p - radmat.cols for p in piv if p >= radmat.cols])
    return out


def _apply_monomial(m: Rep, vertex: int, vec: list, exps) -> list:
    """Image of a vector at `vertex` under the given arrow-power monomial."""
    fld = m.field
    cur = Mat(fld, m.dims[vertex], 1, [[x] for x in vec])
    v = vertex
    for s, e in enumerate(exps):
        for _ in range(e):
            cur = m.maps[s][v] @ cur
            v += 1
    return [cur.entries[k][0] for k in range(cur.rows)]


def _rank_reaches(mat: Mat, t: int) -> bool:
    """rank(mat) >= t, with a sound fast path: full rank mod a large prime
    certifies full rank exactly; otherwise fall back to exact rank."""
    if t == 0:
        return True
    if isinstance(mat.field, RationalField):
        p = 10007
        import numpy as np
        arr = np.zeros((mat.rows, mat.cols), dtype=np.int64)
        ok = True
        for rr in range(mat.rows):
            for cc in range(mat.cols):
                val = mat.entries[rr][cc]
                if val.denominator % p == 0:
                    ok = False
                    break
                arr[rr, cc] = (val.numerator % p) * pow(val.denominator % p,
                                                        p - 2, p) % p
            if not ok:
                break
        if ok and _numpy_rank_mod_p(arr, p) >= t:
            return True
    return rank(mat) >= t


def _projective_cover(m: Rep):
    """(P0, flat vertex list, unit lift per summand, cover: P0 -> M).
    The cover sends each summand generator to its unit lift and every other
    projective basis monomial to the corresponding arrow-power image."""
    a, fld = m.algebra, m.field
    lifts = _top_unit_lifts(m)
    vertices = tuple(v for v in range(a.n) for _ in lifts[v])
    units = tuple(u for v in range(a.n) for u in lifts[v])
    p0 = _sum_rep(projective, a, fld, vertices)
    blocks = []
    for v in range(a.n):
        cols: list[list] = []
        for av, u in zip(vertices, units):
            if v < av:
                continue
            base = [fld.zero] * m.dims[av]
            base[u] = fld.one
            for exps in monomials_of_degree(a.r, v - av):
                cols.append(_apply_monomial(m, av, base, exps))
        ent = [[cols[c][rr] for c in range(len(cols))] for rr in range(m.dims[v])]
        blocks.append(Mat(fld, m.dims[v], p0.dims[v], ent))
        if not _rank_reaches(blocks[-1], m.dims[v]):
            raise ArithmeticError("projective cover is not surjective; "
                                  "top lift logic is broken")
    cover = RepMorphism(p0, m, tuple(blocks))
    return p0, vertices, units, cover


def _assert_kernel_in_radical(p0_vertices, r: int, incl: RepMorphism):
    """Minimality: the kernel of the cover meets no generator coordinate."""
    for b, vtx in enumerate(p0_vertices):
        off = sum(_pwidth(r, vtx, p0_vertices[b2]) for b2 in range(b))
        blk = incl.blocks[vtx]
        fld = blk.field
        if any(not fld.is_zero(x) for x in blk.entries[off]):
            raise ArithmeticError("cover kernel escapes the radical; "
                                  "presentation is not minimal")


# -- presentations and their algebra-valued matrices -----------------------------

@dataclass(frozen=True)
class PathMatrix:
    """Matrix of algebra elements. Column b is a summand generated at
    source_vertices[b], row a one generated at target_vertices[a]; the entry
    is a combination of arrow-power monomials of degree
    source_vertices[b] - target_vertices[a], stored as (exponents, coeff)
    pairs."""

    n: int
    r: int
    field: FieldSpec
    target_vertices: tuple[int, ...]
    source_vertices: tuple[int, ...]
    entries: tuple[tuple[tuple, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.target_vertices):
            raise ValueError("row count mismatch")
        for a_idx, row in enumerate(self.entries):
            if len(row) != len(self.source_vertices):
                raise ValueError("column count mismatch")
            for b_idx, pairs in enumerate(row):
                d = self.source_vertices[b_idx] - self.target_vertices[a_idx]
                for exps, _c in pairs:
                    if len(exps) != self.r or sum(exps) != d or min(exps, default=0) < 0:
                        raise ValueError("entry degree does not match the "
                                         "vertex difference")

    def compose(self, other: "PathMatrix") -> "PathMatrix":
        """self after other (matrix product with monomial multiplication)."""
        if self.source_vertices != other.target_vertices:
            raise ValueError("composition patterns do not match")
        fld = self.field
        rows = []
        for a_idx in range(len(self.target_vertices)):
            row = []
            for c_idx in range(len(other.source_vertices)):
                acc: dict[tuple, object] = {}
                for b_idx in range(len(self.source_vertices)):
                    for e1, c1 in self.entries[a_idx][b_idx]:
                        for e2, c2 in other.entries[b_idx][c_idx]:
                            key = tuple(x + y for x, y in zip(e1, e2))
                            v = fld.mul(c1, c2)
                            acc[key] = fld.add(acc[key], v) if key in acc else v
                row.append(tuple((e, c) for e, c in sorted(acc.items())
                                 if not fld.is_zero(c)))
            rows.append(tuple(row))
        return PathMatrix(self.n, self.r, fld, self.target_vertices,
                          other.source_vertices, tuple(rows))

    @staticmethod
    def identity(n: int, r: int, fld: FieldSpec, vertices) -> "PathMatrix":
        vs = tuple(vertices)
        zero_exps = (0,) * r
        rows = tuple(
            tuple(((zero_exps, fld.one),) if (a_idx == b_idx) else ()
                  for b_idx in range(len(vs)))
            for a_idx in range(len(vs)))
        return PathMatrix(n, r, fld, vs, vs, rows)


@dataclass(frozen=True)
class ProjPresentation:
    """Minimal projective presentation P1 -> P0 -> M -> 0: the cover from
    the top, its kernel with inclusion, the cover pattern lists, and the
    presentation map as an algebra-valued matrix."""

    module: Rep
    p0_pattern: tuple[tuple[int, int], ...]
    p1_pattern: tuple[tuple[int, int], ...]
    p0_vertices: tuple[int, ...]
    p1_vertices: tuple[int, ...]
    p0_rep: Rep
    p1_rep: Rep
    cover: RepMorphism
    kernel: Rep
    kernel_incl: RepMorphism
    path_matrix: PathMatrix


def _group_pattern(vertices) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for v in vertices:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return tuple((v, c) for v, c in out)


def min_proj_presentation(m: Rep) -> ProjPresentation:
    """Projective cover of the top, kernel, cover of the kernel's top, and
    the presentation map over the arrow-power basis."""
    if m.is_zero_rep:
        raise ValueError("the zero module has no minimal presentation")
    a, fld = m.algebra, m.field
    p0, p0_verts, _p0_units, cover = _projective_cover(m)
    k_rep, incl = kernel_of(cover)
    _assert_kernel_in_radical(p0_verts, a.r, incl)
    k_lifts = _top_unit_lifts(k_rep)
    p1_verts = tuple(v for v in range(a.n) for _ in k_lifts[v])
    p1_units = tuple(u for v in range(a.n) for u in k_lifts[v])
    p1 = _sum_rep(projective, a, fld, p1_verts)
    rows: list[list[tuple]] = [[] for _ in p0_verts]
    for ib, ub in zip(p1_verts, p1_units):
        # image of the b-th generator inside P0 at vertex ib: the kernel
        # inclusion column of its unit lift
        blk = incl.blocks[ib]
        vec = [blk.entries[rr][ub] for rr in range(blk.rows)]
        row_off = 0
        for a_idx, ja in enumerate(p0_verts):
            w = _pwidth(a.r, ib, ja)
            if w == 0:
                rows[a_idx].append(())
                continue
            mons = monomials_of_degree(a.r, ib - ja)
            pairs = tuple((mons[k], vec[row_off + k]) for k in range(w)
                          if not fld.is_zero(vec[row_off + k]))
            rows[a_idx].append(pairs)
            row_off += w
    pm = PathMatrix(a.n, a.r, fld, p0_verts, p1_verts,
                    tuple(tuple(row) for row in rows))
    return ProjPresentation(
        module=m,
        p0_pattern=_group_pattern(p0_verts), p1_pattern=_group_pattern(p1_verts),
        p0_vertices=p0_verts, p1_vertices=p1_verts,
        p0_rep=p0, p1_rep=p1, cover=cover,
        kernel=k_rep, kernel_incl=incl, path_matrix=pm)


def realize_path_matrix(p: PathMatrix) -> RepMorphism:
    """The morphism between sums of projectives that the algebra-valued
    matrix describes: each monomial entry acts by arrow-power
    multiplication on the source's basis monomials."""
    a = AlgebraData(p.n, p.r)
    fld = p.field
    src = _sum_rep(projective, a, fld, p.source_vertices)
    tgt = _sum_rep(projective, a, fld, p.target_vertices)
    blocks = []
    for v in range(a.n):
        col_ws = [_pwidth(p.r, v, ib) for ib in p.source_vertices]
        row_ws = [_pwidth(p.r, v, ja) for ja in p.target_vertices]
        col_offs, row_offs = _offsets(col_ws), _offsets(row_ws)
        ent = [[fld.zero] * src.dims[v] for _ in range(tgt.dims[v])]
        for b_idx, ib in enumerate(p.source_vertices):
            if col_ws[b_idx] == 0:
                continue
            for a_idx, _ja in enumerate(p.target_vertices):
                if row_ws[a_idx] == 0:
                    continue
                for exps, c in p.entries[a_idx][b_idx]:
                    for nu in monomials_of_degree(p.r, v - ib):
                        tgt_exps = tuple(x + y for x, y in zip(nu, exps))
                        rr = row_offs[a_idx] + monomial_index(p.r, tgt_exps)
                        cc = col_offs[b_idx] + monomial_index(p.r, nu)
                        ent[rr][cc] = fld.add(ent[rr][cc], c)
        blocks.append(Mat(fld, tgt.dims[v], src.dims[v], ent))
    return RepMorphism(src, tgt, tuple(blocks))


def nakayama_of(p: PathMatrix) -> RepMorphism:
    """Transport of an algebra-valued matrix between sums of projectives to
    the corresponding sums of injectives: each monomial entry acts on the
    dual basis by exponent subtraction (the transpose of multiplication)."""
    a = AlgebraData(p.n, p.r)
    fld = p.field
    src = _sum_rep(injective, a, fld, p.source_vertices)
    tgt = _sum_rep(injective, a, fld, p.target_vertices)
    blocks = []
    for v in range(a.n):
        col_ws = [_iwidth(p.r, v, ib) for ib in p.source_vertices]
        row_ws = [_iwidth(p.r, v, ja) for ja in p.target_vertices]
        col_offs, row_offs = _offsets(col_ws), _offsets(row_ws)
        ent = [[fld.zero] * src.dims[v] for _ in range(tgt.dims[v])]
        for b_idx, ib in enumerate(p.source_vertices):
            if col_ws[b_idx] == 0:
                continue
            for a_idx, _ja in enumerate(p.target_vertices):
                if row_ws[a_idx] == 0:
                    continue
                for exps, c in p.entries[a_idx][b_idx]:
                    for rho in monomials_of_degree(p.r, ib - v):
                        sigma = tuple(x - y for x, y in zip(rho, exps))
                        if min(sigma, default=0) < 0:
                            continue
                        rr = row_offs[a_idx] + monomial_index(p.r, sigma)
                        cc = col_offs[b_idx] + monomial_index(p.r, rho)
                        ent[rr][cc] = fld.add(ent[rr][cc], c)
        blocks.append(Mat(fld, tgt.dims[v], src.dims[v], ent))
    return RepMorphism(src, tgt, tuple(blocks))


# -- the translate ----------------------------------------------------------------

def tau(m: Rep) -> Rep:
    """Translate: kernel of the transported minimal presentation map.
    Projectives (and projective summands) contribute zero."""
    if m.is_zero_rep:
        return zero_rep(m.algebra, m.field)
    pres = min_proj_presentation(m)
    nu_q = nakayama_of(pres.path_matrix)
    t, _ = kernel_of(nu_q)
    return t


def tau_inverse(m: Rep) -> Rep:
    """Inverse translate through the duality: dual, translate, dual."""
    return dual_rep(tau(dual_rep(m)))


def projective_free(m: Rep, *, trials: int = 8, seed: int = 0) -> bool | None:
    """Whether m has no nonzero projective direct summand.

    True and False are exact: a projective summand at vertex v exists
    exactly when some morphism m -> P(v) is surjective (it then splits
    because the target is projective), and surjectivity fails for every
    member of the morphism space whenever the stacked basis blocks are
    already rank-deficient at some vertex.  When the stacked blocks have
    full rank but no sampled combination is surjective the answer is
    None (inconclusive).
    """
    from random import Random

    a = m.algebra
    fld = m.field
    rng = Random(seed)
    for v in range(a.n):
        p = projective(v, a.n, a.r, field=fld)
        if any(m.dims[i] < p.dims[i] for i in range(a.n)):
            continue  # no surjection is possible, so no such summand
        basis = hom_space(m, p)
        if not basis:
            continue
        deficient = False
        for i in range(a.n):
            if p.dims[i] == 0:
                continue
            stacked = basis[0].blocks[i]
            for f in basis[1:]:
                stacked = stacked.vstack(f.blocks[i])
            if rank(stacked) < p.dims[i]:
                deficient = True
                break
        if deficient:
            continue  # every combination misses full rank at vertex i
        for t in range(trials):
            coeffs = ([fld.one] * len(basis) if t == 0 else
                      [fld.from_int(rng.randint(-5, 5)) for _ in basis])
            blocks = []
            for i in range(a.n):
                acc = Mat.zeros(fld, p.dims[i], m.dims[i])
                for c, f in zip(coeffs, basis):
                    acc = acc + f.blocks[i].scale(c)
                blocks.append(acc)
            if all(rank(b) == b.rows for b in blocks):
                return False  # surjection found; it splits off P(v)
        return None
    return True


def stable_iso(m: Rep, n_: Rep, *, trials: int = 20, seed: int = 0) -> IsoResult:
    """Isomorphism test through the translate.

    The translate is an equivalence from the projective-stable category
    to the injective-stable one, so two projective-free modules are
    isomorphic exactly when their translates are.  The translates of the
    large preinjective-side modules produced by the inverse translate are
    much smaller than the modules themselves, which turns an intractable
    morphism-space elimination into a small one.  Falls back to the
    direct test when projective-freeness cannot be certified.
    """
    if m.dims != n_.dims:
        return IsoResult(False, True, "dimension vectors differ: "
                         f"{m.dims} vs {n_.dims}")
    if m.is_zero_rep:
        return IsoResult(True, True, "both representations are zero")
    if projective_free(m) is not True or projective_free(n_) is not True:
        return iso(m, n_, trials=trials, seed=seed)
    res = iso(tau(m), tau(n_), trials=trials, seed=seed)
    detail = ("translates compared in place of the modules "
              "(both certified projective-free): " + res.detail)
    return IsoResult(res.value, res.definite, detail, res.witness)


# -- extensions -------------------------------------------------------------------

def _ext1_data(pres: ProjPresentation, n_: Rep):
    """(basis of Hom(K, N), coordinate matrix of the restriction map
    Hom(P0, N) -> Hom(K, N))."""
    basis_kn = hom_space(pres.kernel, n_)
    fld = n_.field
    if not basis_kn:
        return [], Mat.zeros(fld, 0, 0)
    flat = [_flatten_morphism(f) for f in basis_kn]
    h = Mat(fld, len(flat[0]), len(flat),
            [[flat[c][rr] for c in range(len(flat))] for rr in range(len(flat[0]))])
    basis_p0n = hom_space(pres.p0_rep, n_)
    if not basis_p0n:
        return basis_kn, Mat.zeros(fld, len(basis_kn), 0)
    vecs = [_flatten_morphism(g.compose(pres.kernel_incl)) for g in basis_p0n]
    b = Mat(fld, len(vecs[0]), len(vecs),
            [[vecs[c][rr] for c in range(len(vecs))] for rr in range(len(vecs[0]))])
    rmat = solve(h, b)  # one elimination for all restrictions at once
    if rmat is None:
        raise ArithmeticError("restriction left the homomorphism space; "
                              "solver bug")
    return basis_kn, rmat


def ext1_dim(m: Rep, n_: Rep) -> int:
    """Dimension of the extension space of m by n_ (cokernel of restricting
    morphisms from the cover to its kernel)."""
    if m.is_zero_rep or n_.is_zero_rep:
        return 0
    pres = min_proj_presentation(m)
    basis_kn, rmat = _ext1_data(pres, n_)
    return len(basis_kn) - rank(rmat)


def ext1_basis(m: Rep, n_: Rep, pres: ProjPresentation | None = None):
    """Coset representatives of the extension space: morphisms from the
    presentation kernel of m to n_."""
    if m.is_zero_rep or n_.is_zero_rep:
        return []
    if pres is None:
        pres = min_proj_presentation(m)
    basis_kn, rmat = _ext1_data(pres, n_)
    if not basis_kn:
        return []
    fld = n_.field
    full = rmat.hstack(Mat.identity(fld, len(basis_kn)))
    _, piv = rref(full)
    return [basis_kn[p - rmat.cols] for p in piv if p >= rmat.cols]


def extension_rep(xi: RepMorphism, pres: ProjPresentation):
    """Realize a cocycle (a morphism from the presentation kernel of M to N)
    as a short exact sequence 0 -> N -> E -> M -> 0; returns (E, leg N -> E,
    epi E -> M)."""
    m = pres.module
    n_ = xi.target
    if xi.source is not pres.kernel and xi.source.dims != pres.kernel.dims:
        raise ValueError("cocycle does not start at the presentation kernel")
    e, leg_p0, leg_n = pushout(pres.kernel_incl, xi)
    fld = m.field
    blocks = []
    for v in range(m.algebra.n):
        j = leg_p0.blocks[v].hstack(leg_n.blocks[v])
        rhs = pres.cover.blocks[v].hstack(Mat.zeros(fld, m.dims[v], n_.dims[v]))
        sol = solve(j.transpose(), rhs.transpose())
        if sol is None:
            raise ArithmeticError("pushout legs are not jointly surjective; "
                                  "solver bug")
        blocks.append(sol.transpose())
    epi = RepMorphism(e, m, tuple(blocks))
    if e.total_dim != m.total_dim + n_.total_dim:
        raise ArithmeticError("extension has the wrong dimension; solver bug")
    return e, leg_n, epi


# -- almost split sequences ---------------------------------------------------------

def _is_projective_rep(m: Rep) -> bool:
    """A module is projective exactly when its minimal cover has zero
    kernel."""
    if m.is_zero_rep:
        return True
    pres_kernel_free = min_proj_presentation(m)
    return pres_kernel_free.kernel.is_zero_rep


def _is_injective_rep(m: Rep) -> bool:
    return _is_projective_rep(dual_rep(m))


def ar_sequence_from(m: Rep):
    """The almost split sequence starting at m: (m, middle, inverse
    translate of m). Requires m indecomposable, a brick, non-injective, and
    a one-dimensional extension space — each checked, with a hard error
    naming the failed condition."""
    if m.is_zero_rep:
        raise ARPreconditionError(
            "precondition not met: the module is zero, hence not indecomposable")
    e_alg = endo_algebra(m)
    if e_alg.semisimple_dim != 1:
        raise ARPreconditionError(
            "precondition not met: the module is not indecomposable")
    if e_alg.dim != 1:
        raise ARPreconditionError(
            "precondition not met: the module is not a brick "
            f"(endomorphism dimension {e_alg.dim})")
    if _is_injective_rep(m):
        raise ARPreconditionError(
            "precondition not met: the module is injective")
    n_ = tau_inverse(m)
    pres = min_proj_presentation(n_)
    cocycles = ext1_basis(n_, m, pres)
    if len(cocycles) != 1:
        raise ARPreconditionError(
            "precondition not met: the extension space of the inverse "
            f"translate by the module has dimension {len(cocycles)}, not 1")
    middle, _leg, _epi = extension_rep(cocycles[0], pres)
    return m, middle, n_


def is_quasi_simple(m: Rep) -> bool:
    """True when the middle term of the almost split sequence starting at m
    is indecomposable (mouth position of its component)."""
    _, middle, _ = ar_sequence_from(m)
    parts = decompose(middle)
    return sum(mult for _rep, mult in parts) == 1


# -- component windows ---------------------------------------------------------------

@dataclass(frozen=True)
class WindowNode:
    """One module of a component window. Mouth nodes (quasi-length 1) carry
    a classification and the equal-images / equal-kernels reports; every
    node carries a constant-Jordan-type report unless a note explains why
    not."""

    offset: int
    quasi_length: int
    dims: tuple[int, ...]
    rep: Rep
    classification: str | None
    eip: PropertyReport | None
    ekp: PropertyReport | None
    cjt: PropertyReport | None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "offset": self.offset,
            "quasi_length": self.quasi_length,
            "dims": list(self.dims),
            "classification": self.classification,
            "eip": self.eip.to_dict() if self.eip else None,
            "ekp": self.ekp.to_dict() if self.ekp else None,
            "cjt": self.cjt.to_dict() if self.cjt else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class ComponentReport:
    """Window of a translate orbit: mouth modules with classifications, the
    modules of higher quasi-length stacked over them, and the count of
    mouth modules classified 'neither' (only reported when the window met
    both an equal-images and an equal-kernels module)."""

    n: int
    r: int
    m: int
    orbit_radius: int
    quasi_length: int
    strategy: str
    nodes: tuple[WindowNode, ...]
    wc_count: int | None
    notes: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n, "r": self.r, "m": self.m,
            "orbit_radius": self.orbit_radius,
            "quasi_length": self.quasi_length,
            "strategy": self.strategy,
            "nodes": [nd.to_dict() for nd in self.nodes],
            "wc_count": self.wc_count,
            "notes": list(self.notes),
        }


_AR_ERRORS = (ARPreconditionError, UnsupportedFieldOperation,
              NonSplitSemisimpleQuotient)


def component_window(n: int, r: int, m: int, orbit_radius: int,
                     quasi_length: int, strategy: str = "auto", *,
                     field=QQ) -> ComponentReport:
    """Walk the translate orbit of the width-one mouth module: offsets
    count applications of the translate (positive) or its inverse
    (negative), stopping at zero modules. Each mouth module is classified
    (equal images / equal kernels / neither / projective-hit /
    injective-hit); modules of quasi-length up to the requested bound are
    built over each mouth position through almost split middles: the
    middle over the mouth is verified indecomposable, and each higher
    middle sheds the inverse translate of the module two levels down via
    an exactly certified splitting, leaving the next tower module.
    Failures of the almost-split preconditions are recorded per node and
    do not abort the window."""
    if m <= n:
        raise ValueError("the mouth module needs m > n")
    if orbit_radius < 0 or quasi_length < 1:
        raise ValueError("orbit_radius must be >= 0 and quasi_length >= 1")
    w = w_module(m, n, r, field=field)
    mouth: dict[int, Rep] = {0: w}
    for ell in range(1, orbit_radius + 1):
        x = tau(mouth[ell - 1])
        if x.is_zero_rep:
            break
        mouth[ell] = x
    for ell in range(-1, -orbit_radius - 1, -1):
        x = tau_inverse(mouth[ell + 1])
        if x.is_zero_rep:
            break
        mouth[ell] = x

    nodes: list[WindowNode] = []
    notes: list[str] = []
    classifications: dict[int, str] = {}
    for ell in sorted(mouth, reverse=True):
        x = mouth[ell]
        eip = ekp = None
        if _is_projective_rep(x):
            cls = "projective-hit"
        elif _is_injective_rep(x):
            cls = "injective-hit"
        else:
            eip = check_eip(x, strategy)
            ekp = check_ekp(x, strategy)
            if eip.ok and ekp.ok:
                raise ArithmeticError("a nonzero module reported both equal "
                                      "images and equal kernels; solver bug")
            cls = "EIP" if eip.ok else ("EKP" if ekp.ok else "neither")
        cjt = check_cjt(x, strategy)
        classifications[ell] = cls
        nodes.append(WindowNode(ell, 1, x.dims, x, cls, eip, ekp, cjt))
        tower = [x]
        for ql in range(2, quasi_length + 1):
            try:
                _, middle, _ = ar_sequence_from(tower[-1])
            except _AR_ERRORS as exc:
                notes.append(f"offset {ell}: tower stopped before "
                             f"quasi-length {ql}: {exc}")
                break
            if ql == 2:
                if not is_indecomposable(middle):
                    notes.append(f"offset {ell}: almost split middle over the "
                                 "mouth decomposes; no tower here")
                    break
                y = middle
            else:
                discard = tau_inverse(tower[-2])
                y = split_off_summand(middle, discard)
                if y is None or y.is_zero_rep:
                    notes.append(f"offset {ell}: unexpected middle "
                                 f"decomposition at quasi-length {ql}")
                    break
            cjt_y = check_cjt(y, strategy)
            nodes.append(WindowNode(ell, ql, y.dims, y, None, None, None,
                                    cjt_y))
            tower.append(y)

    has_eip = any(c == "EIP" for c in classifications.values())
    has_ekp = any(c == "EKP" for c in classifications.values())
    wc = (sum(1 for c in classifications.values() if c == "neither")
          if (has_eip and has_ekp) else None)
    if wc is None:
        notes.append("window did not reach both cones; the neither-count is "
                     "not reported")
    return ComponentReport(n=n, r=r, m=m, orbit_radius=orbit_radius,
                           quasi_length=quasi_length, strategy=strategy,
                           nodes=tuple(nodes), wc_count=wc,
                           notes=tuple(notes))
