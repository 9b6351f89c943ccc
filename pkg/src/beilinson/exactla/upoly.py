"""Univariate integer polynomial helpers for pencil certificates.

Polynomials are coefficient lists, lowest degree first. gcd runs on primitive
integer polynomials (content stripped) so coefficients stay bounded; exact
throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


def trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: list[int]) -> int:
    return len(p) - 1  # degree of [] is -1


def is_zero(p: list[int]) -> bool:
    return not p


def is_nonzero_const(p: list[int]) -> bool:
    return len(p) == 1 and p[0] != 0


def evaluate(p: list[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def mul(p: list[int], q: list[int]) -> list[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return trim(out)


def content(p: list[int]) -> int:
    c = 0
    for a in p:
        c = _igcd(c, abs(a))
    return c


def primitive(p: list[int]) -> list[int]:
    p = trim(list(p))
    if not p:
        return []
    c = content(p)
    p = [a // c for a in p]
    if p[-1] < 0:
        p = [-a for a in p]
    return p


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of primitive integer polynomials (deg a >= deg b)."""
    a = list(a)
    db, lb = degree(b), b[-1]
    while a and degree(a) >= db:
        da, la = degree(a), a[-1]
        a = [x * lb for x in a]  # scale so the leading terms cancel exactly
        shift = da - db
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = trim(a)
    return a


def gcd(p: list[int], q: list[int]) -> list[int]:
    """Primitive gcd via the primitive polynomial remainder sequence."""
    a, b = primitive(p), primitive(q)
    if not a:
        return b
    if not b:
        return a
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = primitive(_pseudo_rem(a, b))
        a, b = b, r
    return primitive(a)


def lagrange_interpolate(points: list[int], values: list[Fraction]) -> list[Fraction]:
    """Coefficients (lowest first) of the unique poly through the given data,
    via Newton divided differences."""
    n = len(points)
    if n == 0:
        return []
    coefs = list(values)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coefs[i] = (coefs[i] - coefs[i - 1]) / Fraction(points[i] - points[i - level])
    # expand Newton form: sum coefs[k] * prod_{i<k} (x - points[i])
    out = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            out[i] += coefs[k] * b
        if k < n - 1:
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i] -= b * points[k]
                nxt[i + 1] += b
            basis = nxt
    while out and out[-1] == 0:
        out.pop()
    return out


def fractions_to_primitive_int(p: list[Fraction]) -> list[int]:
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // _igcd(den, c.denominator)
    return primitive([int(c * den) for c in p])


def int_det_bareiss(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def rational_roots(p: list[int], extra_denominator_bound: int = 64) -> list[Fraction]:
    """Rational roots of an integer polynomial (exact check per candidate).

    Divisor enumeration is capped; this is a witness finder, not a factoring
    routine. Roots are returned sorted, without multiplicity.
    """
    p = trim(list(p))
    if not p:
        return []
    roots = set()
    # strip x^k factor
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        p = p[k:]
    if len(p) <= 1:
        return sorted(roots)
    a0, an = abs(p[0]), abs(p[-1])

    def divisors(x: int, cap: int = 4000):
        out = []
        d = 1
        while d * d <= x and len(out) < cap:
            if x % d == 0:
                out.append(d)
                if d != x // d:
                    out.append(x // d)
            d += 1
        return out

    for num in divisors(a0):
        for den in divisors(an):
            if den > extra_denominator_bound and den != an:
                continue
            for s in (1, -1):
                cand = Fraction(s * num, den)
                acc = Fraction(0)
                for c in reversed(p):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)
