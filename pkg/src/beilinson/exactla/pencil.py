"""Exact full-rank certificates for matrix pencils alpha*A + beta*B (r = 2).

The rank of alpha*A + beta*B stays >= target for every (alpha, beta) != 0
iff the gcd of all target-minors of A + t*B is a nonzero constant and the
single extra point (alpha, beta) = (0, 1) has rank >= target. The gcd is
accumulated minor by minor and the scan aborts as soon as it hits a nonzero
constant, so well-behaved pencils finish after a couple of minors.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import upoly
from .fields import QQ, PrimeField
from .matrix import Mat, rank, rref

DEFAULT_MINOR_BUDGET = 20000


class PencilBudgetExceeded(RuntimeError):
    """Minor enumeration budget exhausted before the gcd stabilized."""


def _det_int_of_fraction_rows(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant: clear each row to integers, Bareiss, unscale."""
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        den = 1
        for v in r:
            g = upoly._igcd(den, v.denominator)
            den = den * v.denominator // g
        scale *= den
        int_rows.append([int(v * den) for v in r])
    d = upoly.int_det_bareiss(int_rows)
    return Fraction(d) / scale


def rank_profile(m: Mat) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(pivot rows, pivot columns) under the fixed elimination order."""
    _, cols = rref(m)
    _, rows = rref(m.transpose())
    return rows, cols


def iter_selections(nrows: int, ncols: int, target: int, seed=None):
    """Deterministic (rows, cols) stream: the seed profile first, then all
    combinations in lexicographic order."""
    if seed is not None:
        yield seed
    for rs in combinations(range(nrows), target):
        for cs in combinations(range(ncols), target):
            if seed is not None and (rs, cs) == seed:
                continue
            yield rs, cs


def minor_poly_from_evals(evals: list[Mat], points: list[int],
                          rows_sel, cols_sel) -> list[int]:
    """Primitive integer poly of the (rows_sel, cols_sel) minor, interpolated
    from the cached evaluations (enough points for the degree bound)."""
    vals = []
    for ev in evals:
        sub = [[ev.entries[i][j] for j in cols_sel] for i in rows_sel]
        vals.append(_det_int_of_fraction_rows(sub))
    return upoly.fractions_to_primitive_int(upoly.lagrange_interpolate(points, vals))


def gcd_scan(evals: list[Mat], points: list[int], target: int,
             max_minors: int = DEFAULT_MINOR_BUDGET) -> tuple[list[int], bool]:
    """Running gcd over all target-minors. Returns (gcd, complete). complete
    means every minor was folded in (or the gcd went constant, which settles
    the answer anyway). Raises PencilBudgetExceeded past max_minors."""
    nrows, ncols = evals[0].rows, evals[0].cols
    if target == 0:
        return [1], True
    if target > min(nrows, ncols):
        return [], True
    best = max(range(len(evals)), key=lambda k: rank(evals[k]))
    if rank(evals[best]) < target:
        return [], True  # generic rank below target: every minor is identically 0
    prow, pcol = rank_profile(evals[best])
    seed = (prow[:target], pcol[:target]) if (len(prow) >= target and len(pcol) >= target) else None
    g: list[int] = []
    used = 0
    for rs, cs in iter_selections(nrows, ncols, target, seed):
        used += 1
        if used > max_minors:
            raise PencilBudgetExceeded(f"{max_minors} minors scanned, gcd still {g}")
        m = minor_poly_from_evals(evals, points, rs, cs)
        if upoly.is_zero(m):
            continue
        g = upoly.gcd(g, m)
        if upoly.is_nonzero_const(g):
            return g, True
    return g, True


def pencil_minor_gcd(a: Mat, b: Mat, target: int,
                     max_minors: int = DEFAULT_MINOR_BUDGET) -> tuple[list[int], bool]:
    """gcd of the target-minors of A + t*B as a primitive integer poly."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("pencil matrices must share a shape")
    if a.field != QQ or b.field != QQ:
        raise ValueError("rational pencil expected")
    points = list(range(target + 1))
    evals = [a + b.scale(Fraction(t0)) for t0 in points]
    return gcd_scan(evals, points, target, max_minors)


def pencil_full_rank_r2(a: Mat, b: Mat, target: int,
                        max_minors: int = DEFAULT_MINOR_BUDGET) -> bool:
    """True iff rank(alpha*A + beta*B) >= target for every (alpha, beta) != 0.

    Rational pencils use the interpolated minor-gcd scan; prime-field pencils
    run the same scan with polynomial arithmetic over F_p[t] (closure-valid in
    both cases). target must be at most min(rows, cols).
    """
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ValueError("pencil matrices must share a shape")
    if target < 0 or target > min(a.rows, a.cols):
        raise ValueError(f"target {target} out of range for {a.rows}x{a.cols}")
    if target == 0:
        return True
    if rank(b) < target:
        return False
    if isinstance(a.field, PrimeField):
        g, _ = _fp_pencil_minor_gcd(a, b, target, max_minors)
        return len(g) == 1
    g, _ = pencil_minor_gcd(a, b, target, max_minors)
    return upoly.is_nonzero_const(g)


# -- F_p[t] route (no interpolation: Bareiss with exact poly division) -------

def _fp_poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _fp_poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _fp_poly_trim(out)


def _fp_poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_poly_trim(out)


def _fp_poly_divexact(a, b, p):
    """a // b assuming exact divisibility over F_p[t]."""
    a = list(a)
    if not a:
        return []
    db = len(b) - 1
    inv_lb = pow(b[-1], p - 2, p)
    out = [0] * (len(a) - db)
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        c = (a[-1] * inv_lb) % p
        out[k] = c
        for i, y in enumerate(b):
            a[k + i] = (a[k + i] - c * y) % p
        _fp_poly_trim(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return _fp_poly_trim(out)


def _fp_poly_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lb = pow(b[-1], p - 2, p)
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        c = (a[-1] * inv_lb) % p
        for i, y in enumerate(b):
            a[k + i] = (a[k + i] - c * y) % p
        _fp_poly_trim(a)
    return a


def _fp_poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(x * inv) % p for x in a]
    return a


def _fp_poly_det_bareiss(entries, p):
    """Determinant of a matrix of F_p[t] polynomials (Bareiss, exact division)."""
    n = len(entries)
    if n == 0:
        return [1]
    m = [[list(e) for e in row] for row in entries]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = _fp_poly_sub(_fp_poly_mul(m[i][j], pk, p),
                                   _fp_poly_mul(mik, m[k][j], p), p)
                m[i][j] = _fp_poly_divexact(num, prev, p) if len(prev) > 1 or prev != [1] else num
            m[i][k] = []
        prev = pk
    d = m[n - 1][n - 1]
    if sign < 0:
        d = [(-x) % p for x in d]
    return d


def _fp_pencil_minor_gcd(a: Mat, b: Mat, target: int, max_minors: int):
    p = a.field.p
    entries = [[(a.entries[i][j], b.entries[i][j]) for j in range(a.cols)]
               for i in range(a.rows)]
    poly_entries = [[_fp_poly_trim([x, y]) for (x, y) in row] for row in entries]
    g: list[int] = []
    used = 0
    for rs, cs in iter_selections(a.rows, a.cols, target):
        used += 1
        if used > max_minors:
            raise PencilBudgetExceeded(f"{max_minors} minors scanned over F_{p}")
        sub = [[poly_entries[i][j] for j in cs] for i in rs]
        d = _fp_poly_det_bareiss(sub, p)
        if not d:
            continue
        g = _fp_poly_gcd(g, d, p) if g else ([x * pow(d[-1], p - 2, p) % p for x in d])
        if len(g) == 1:
            return g, True
    return g, True
