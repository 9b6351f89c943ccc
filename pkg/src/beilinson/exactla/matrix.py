"""Dense exact matrices with deterministic Gaussian elimination.

The public Mat type is dense (tuple of row tuples). Elimination uses sparse
row dicts internally, but pivots are chosen by a fixed rule - columns left to
right, lowest-index eligible row first - so rank, kernel and solve outputs are
deterministic and identical to naive Gauss-Jordan.
"""

from __future__ import annotations

from .fields import FieldSpec, QQ


class Mat:
    """Immutable rows x cols matrix over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldSpec, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        entries = tuple(tuple(r) for r in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entry grid does not match shape {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(field: FieldSpec, rows) -> "Mat":
        """Build from an iterable of rows, coercing ints/strings into the field."""
        coerced = [[field.coerce(x) for x in row] for row in rows]
        n = len(coerced)
        m = len(coerced[0]) if coerced else 0
        return Mat(field, n, m, coerced)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        z = field.zero
        return Mat(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        z, o = field.zero, field.one
        return Mat(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    # -- basic ops ---------------------------------------------------------

    def at(self, i: int, j: int):
        return self.entries[i][j]

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        if f != other.field:
            raise ValueError("field mismatch in matmul")
        add, mul, is_zero, zero = f.add, f.mul, f.is_zero, f.zero
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.entries[i]
            acc = out[i]
            for k in range(self.cols):
                a = row[k]
                if is_zero(a):
                    continue
                brow = other.entries[k]
                for j in range(other.cols):
                    b = brow[j]
                    if not is_zero(b):
                        acc[j] = add(acc[j], mul(a, b))
        return Mat(f, self.rows, other.cols, out)

    def _pointwise(self, other: "Mat", op) -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat(self.field, self.rows, self.cols,
                   [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)])

    def __add__(self, other: "Mat") -> "Mat":
        return self._pointwise(other, self.field.add)

    def __sub__(self, other: "Mat") -> "Mat":
        return self._pointwise(other, self.field.sub)

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, [[neg(a) for a in r] for r in self.entries])

    def scale(self, c) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, [[mul(c, a) for a in r] for r in self.entries])

    def is_zero(self) -> bool:
        is_z = self.field.is_zero
        return all(is_z(a) for r in self.entries for a in r)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Mat) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Mat({self.field!r}, {self.rows}x{self.cols})"

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return Mat(self.field, self.rows, self.cols + other.cols,
                   [ra + rb for ra, rb in zip(self.entries, other.entries)])

    def vstack(self, other: "Mat") -> "Mat":
        if self.cols != other.cols:
            raise ValueError("vstack needs equal col counts")
        return Mat(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_idx, col_idx) -> "Mat":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        return Mat(self.field, len(row_idx), len(col_idx),
                   [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def columns(self, col_idx) -> "Mat":
        return self.submatrix(range(self.rows), col_idx)


def block_diag(field: FieldSpec, mats) -> Mat:
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[field.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = list(m.entries[i])
        r0 += m.rows
        c0 += m.cols
    return Mat(field, rows, cols, out)


# -- elimination engine ----------------------------------------------------
#
# Rows live in dicts {col: nonzero value}. Rows are bucketed by leading
# column; processing columns in increasing order and always pivoting on the
# lowest original row index reproduces naive fixed-order Gauss-Jordan.

def _to_rowdicts(m: Mat):
    is_z = m.field.is_zero
    out = []
    for r in m.entries:
        d = {j: v for j, v in enumerate(r) if not is_z(v)}
        out.append(d)
    return out


def _rref_rowdicts(rowdicts, ncols: int, field: FieldSpec):
    """Reduced row echelon form. Returns (pivot_cols, pivot_rows) where
    pivot_rows[k] is the reduced row dict whose leading column is pivot_cols[k].
    """
    inv, mul, sub, is_z = field.inv, field.mul, field.sub, field.is_zero
    buckets: dict[int, list] = {}
    for idx, d in enumerate(rowdicts):
        if d:
            lead = min(d)
            buckets.setdefault(lead, []).append((idx, d))
    pivot_cols: list[int] = []
    pivot_rows: list[dict] = []
    col = 0
    while buckets:
        col = min(buckets)
        cand = buckets.pop(col)
        cand.sort(key=lambda t: t[0])
        pidx, prow = cand[0]
        # normalize pivot to 1
        pv = prow[col]
        if pv != field.one:
            c = inv(pv)
            prow = {j: mul(c, v) for j, v in prow.items()}
        # eliminate this column from the remaining candidates, re-bucket
        for idx, d in cand[1:]:
            f = d[col]
            for j, v in prow.items():
                if j in d:
                    w = sub(d[j], mul(f, v))
                    if is_z(w):
                        del d[j]
                    else:
                        d[j] = w
                else:
                    d[j] = field.neg(mul(f, v))
            if d:
                buckets.setdefault(min(d), []).append((idx, d))
        # back-substitute into finished pivot rows
        for k, r in enumerate(pivot_rows):
            if col in r:
                f = r[col]
                for j, v in prow.items():
                    if j in r:
                        w = sub(r[j], mul(f, v))
                        if is_z(w):
                            del r[j]
                        else:
                            r[j] = w
                    else:
                        r[j] = field.neg(mul(f, v))
        pivot_cols.append(col)
        pivot_rows.append(prow)
    order = sorted(range(len(pivot_cols)), key=lambda k: pivot_cols[k])
    return [pivot_cols[k] for k in order], [pivot_rows[k] for k in order]


def rref(m: Mat):
    """(R, pivot_cols): R has the reduced pivot rows first, then zero rows."""
    pivot_cols, pivot_rows = _rref_rowdicts(_to_rowdicts(m), m.cols, m.field)
    z = m.field.zero
    dense = []
    for d in pivot_rows:
        row = [z] * m.cols
        for j, v in d.items():
            row[j] = v
        dense.append(row)
    while len(dense) < m.rows:
        dense.append([z] * m.cols)
    return Mat(m.field, m.rows, m.cols, dense), tuple(pivot_cols)


def rank(m: Mat) -> int:
    pivot_cols, _ = _rref_rowdicts(_to_rowdicts(m), m.cols, m.field)
    return len(pivot_cols)


def kernel_basis(m: Mat) -> Mat:
    """Columns form the standard kernel basis: one vector per free column,
    with 1 at the free column and pivot entries filled by back-substitution.
    Satisfies m @ kernel_basis(m) = 0.
    """
    field = m.field
    pivot_cols, pivot_rows = _rref_rowdicts(_to_rowdicts(m), m.cols, field)
    pivot_set = set(pivot_cols)
    free = [j for j in range(m.cols) if j not in pivot_set]
    z, o, neg = field.zero, field.one, field.neg
    cols = []
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for pc, prow in zip(pivot_cols, pivot_rows):
            if f in prow:
                v[pc] = neg(prow[f])
        cols.append(v)
    return Mat(field, m.cols, len(free), [[c[i] for c in cols] for i in range(m.cols)])


def kernel_basis_sparse(rowdicts: list[dict], ncols: int, field: FieldSpec):
    """Kernel of the sparse system whose rows are dicts {col: value}.

    Returns (free_cols, vectors): one kernel vector per free column, as a
    dict {col: value} with value 1 at its free column — the same basis
    kernel_basis() produces, without densifying the system.
    """
    pivot_cols, pivot_rows = _rref_rowdicts(rowdicts, ncols, field)
    pivot_set = set(pivot_cols)
    free = [j for j in range(ncols) if j not in pivot_set]
    o, neg, is_z = field.one, field.neg, field.is_zero
    vectors = []
    for f in free:
        v = {f: o}
        for pc, prow in zip(pivot_cols, pivot_rows):
            if f in prow:
                w = neg(prow[f])
                if not is_z(w):
                    v[pc] = w
        vectors.append(v)
    return free, vectors


def rank_sparse(rowdicts: list[dict], ncols: int, field: FieldSpec) -> int:
    pivot_cols, _ = _rref_rowdicts(rowdicts, ncols, field)
    return len(pivot_cols)


def solve(m: Mat, b: Mat):
    """Particular solution X (free variables 0) of m @ X = b, or None."""
    if m.rows != b.rows:
        raise ValueError("solve: row mismatch")
    field = m.field
    aug = m.hstack(b)
    pivot_cols, pivot_rows = _rref_rowdicts(_to_rowdicts(aug), aug.cols, field)
    for pc in pivot_cols:
        if pc >= m.cols:
            return None  # pivot in the RHS block: inconsistent
    z = field.zero
    out = [[z] * b.cols for _ in range(m.cols)]
    for pc, prow in zip(pivot_cols, pivot_rows):
        for j, v in prow.items():
            if j >= m.cols:
                out[pc][j - m.cols] = v
    return Mat(field, m.cols, b.cols, out)


def column_space_basis(m: Mat) -> Mat:
    """The pivot columns of m itself (deterministic image basis)."""
    pivot_cols, _ = _rref_rowdicts(_to_rowdicts(m), m.cols, m.field)
    return m.columns(pivot_cols)


def det(m: Mat):
    """Determinant by fraction-exact elimination (field arithmetic)."""
    if m.rows != m.cols:
        raise ValueError("det of non-square matrix")
    n = m.rows
    field = m.field
    if n == 0:
        return field.one
    rows = [dict((j, v) for j, v in enumerate(r) if not field.is_zero(v)) for r in m.entries]
    mul, sub, is_z, inv = field.mul, field.sub, field.is_zero, field.inv
    sign = False
    acc = field.one
    live = list(range(n))
    for col in range(n):
        pr = None
        for k, i in enumerate(live):
            if col in rows[i]:
                pr = k
                break
        if pr is None:
            return field.zero
        if pr != 0:
            live[0], live[pr] = live[pr], live[0]
            sign = not sign
        p = live.pop(0)
        prow = rows[p]
        pv = prow[col]
        acc = mul(acc, pv)
        c = inv(pv)
        for i in live:
            d = rows[i]
            if col not in d:
                continue
            f = mul(d.pop(col), c)
            for j, v in prow.items():
                if j == col:
                    continue
                if j in d:
                    w = sub(d[j], mul(f, v))
                    if is_z(w):
                        del d[j]
                    else:
                        d[j] = w
                else:
                    d[j] = field.neg(mul(f, v))
    return field.neg(acc) if sign else acc


def mat_to_int_rows(m: Mat) -> list[list[int]]:
    """Clear denominators row by row (rationals only). Rank/kernel-support
    invariant; used by fast integer paths."""
    if m.field != QQ:
        raise ValueError("mat_to_int_rows expects a rational matrix")
    out = []
    for r in m.entries:
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        out.append([int(v * den) for v in r])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else abs(b)
