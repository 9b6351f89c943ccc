"""Deciders for coefficient-independence properties of the layered operator.

A module over the n-vertex, r-arrow layered algebra carries, for every
coefficient vector alpha != 0, the nilpotent "alpha operator": the sum of the
arrow actions weighted by alpha. Four properties of a module ask that some
numerical shadow of this operator is independent of alpha:

* equal images   (every layer matrix surjective for every alpha != 0),
* equal kernels  (every layer matrix injective for every alpha != 0),
* constant rank of the j-th power,
* constant Jordan type (constant rank for every power at once).

The quantifier runs over the algebraic closure, so verdicts are graded by
certificate strength:

* ``holds`` — an exact algebraic certificate valid over the closure
  (two-arrow pencil gcd, a Groebner staircase on a minor ideal, or a
  structural dimension count);
* ``holds-over-sampled-points`` — finite-field sweeps or random rational
  sampling; honest about what was checked;
* ``fails`` — always accompanied by a witness: explicit coefficients where
  the property breaks, or a description of the closure locus when no
  small rational witness exists.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import comb
from random import Random

import numpy as np

from .exactla import (
    DEFAULT_MINOR_BUDGET,
    DEFAULT_SPOLY_BUDGET,
    GF,
    GroebnerBudgetExceeded,
    Mat,
    MultiPoly,
    PencilBudgetExceeded,
    PrimeField,
    QQ,
    FieldSpec,
    rank,
    rref,
    zero_locus_is_origin,
)
from .exactla import upoly
from .exactla.pencil import gcd_scan, pencil_full_rank_r2, pencil_minor_gcd
from .rep import Rep, UnsupportedFieldOperation, _numpy_rank_mod_p

__all__ = [
    "AlphaVector",
    "CertificateBudgetExceeded",
    "DEFAULT_SWEEP_PRIMES",
    "PropertyReport",
    "SWEEP_PRIMES_ENV",
    "Witness",
    "alpha_operator",
    "as_alpha",
    "check_cjt",
    "check_constant_j_rank",
    "check_eip",
    "check_ekp",
    "j_rank",
    "jordan_type",
    "layer_matrix",
    "sweep_primes",
]

DEFAULT_SWEEP_PRIMES = (5, 7, 11)
SWEEP_PRIMES_ENV = "BEILINSON_SWEEP_PRIMES"
DEFAULT_TRIALS = 40
DEFAULT_WORK_BUDGET = 2_000_000
DEFAULT_GRID_BUDGET = 4096
# Speculative budgets for the automatic strategy: the exact attempt is only
# worth its cost when the arrow matrices are sparse enough that the seeded
# minors stay small, which a modest budget already covers; the dense matrices
# produced by the translates would burn the full budget before falling back
# to a sweep, so the automatic route keeps the first attempt cheap.  An
# explicitly requested strategy always gets the caller's full budgets.
AUTO_SPOLY_BUDGET = 1_500
AUTO_WORK_BUDGET = 250_000

STRATEGIES = ("exact-r2", "groebner", "sweep", "randomized")


class CertificateBudgetExceeded(RuntimeError):
    """An exact certificate was requested but its work cap was exceeded."""


BUDGET_ERRORS = (CertificateBudgetExceeded, GroebnerBudgetExceeded,
                 PencilBudgetExceeded)


def sweep_primes() -> tuple[int, ...]:
    """Sweep primes: the BEILINSON_SWEEP_PRIMES environment variable
    (comma- or space-separated) or the default (5, 7, 11)."""
    raw = os.environ.get(SWEEP_PRIMES_ENV)
    if not raw:
        return DEFAULT_SWEEP_PRIMES
    parts = [x for x in raw.replace(",", " ").split() if x]
    primes = tuple(int(x) for x in parts)
    for p in primes:
        GF(p)  # validates primality
    if len(set(primes)) != len(primes) or not primes:
        raise ValueError(f"{SWEEP_PRIMES_ENV} must list distinct primes")
    return primes


# -- coefficient vectors, witnesses, reports -----------------------------------

@dataclass(frozen=True)
class AlphaVector:
    """Nonzero coefficient vector weighting the r arrows."""

    field: FieldSpec
    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise ValueError("empty coefficient vector")
        if all(self.field.is_zero(c) for c in self.coords):
            raise ValueError("coefficient vector must be nonzero")

    def to_strings(self) -> tuple[str, ...]:
        return tuple(self.field.to_str(c) for c in self.coords)


def as_alpha(fld: FieldSpec, a) -> AlphaVector:
    """Normalize an AlphaVector, a sequence of field elements, or a sequence
    of ints/strings into an AlphaVector over fld."""
    if isinstance(a, AlphaVector):
        if a.field != fld:
            raise ValueError("coefficient vector over the wrong field")
        return a
    return AlphaVector(fld, tuple(fld.coerce(x) for x in a))


@dataclass(frozen=True)
class Witness:
    """Where a property fails: explicit coefficients (as canonical strings
    over the module's field) or, when the failure locus has no small rational
    point, a description of the closure locus."""

    coords: tuple[str, ...] | None
    description: str


_VERDICTS = ("holds", "fails", "holds-over-sampled-points")


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check. ``fails`` always carries a witness;
    ``holds`` always carries an exact certificate."""

    property_name: str
    verdict: str
    certificate: str
    witness: Witness | None = None
    rank_data: tuple[tuple[int, int], ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict not in _VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fails" and self.witness is None:
            raise ValueError("a failing verdict requires a witness")
        if self.verdict == "holds" and not self.certificate.startswith("exact-"):
            raise ValueError("'holds' requires an exact certificate")

    @property
    def ok(self) -> bool:
        return self.verdict != "fails"

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"alpha": list(self.witness.coords) if self.witness.coords else None,
                 "description": self.witness.description}
        return {
            "property": self.property_name,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "witness": w,
            "rank_data": {f"c_{j}": c for j, c in self.rank_data},
            "notes": list(self.notes),
        }


# -- the alpha operator and its numerical shadows ------------------------------

def layer_matrix(m: Rep, alpha, i: int) -> Mat:
    """Sum of the layer-i arrow matrices weighted by alpha."""
    a = as_alpha(m.field, alpha)
    out = m.maps[0][i].scale(a.coords[0])
    for s in range(1, m.algebra.r):
        out = out + m.maps[s][i].scale(a.coords[s])
    return out


def alpha_operator(m: Rep, alpha) -> Mat:
    """The weighted sum of all arrow actions as one endomorphism of the
    total space (block subdiagonal, hence nilpotent of order <= n)."""
    a = as_alpha(m.field, alpha)
    fld = m.field
    n = m.algebra.n
    total = m.total_dim
    offs = []
    off = 0
    for d in m.dims:
        offs.append(off)
        off += d
    ent = [[fld.zero] * total for _ in range(total)]
    for i in range(n - 1):
        blk = layer_matrix(m, a, i)
        for rr in range(blk.rows):
            row = ent[offs[i + 1] + rr]
            src = blk.entries[rr]
            for cc in range(blk.cols):
                row[offs[i] + cc] = src[cc]
    return Mat(fld, total, total, ent)


def _power_block(m: Rep, alpha, j: int, i: int) -> Mat:
    """Block (i+j, i) of the j-th power of the alpha operator: the product
    of the j consecutive layer matrices starting at layer i."""
    out = layer_matrix(m, alpha, i)
    for step in range(1, j):
        out = layer_matrix(m, alpha, i + step) @ out
    return out


def j_rank(m: Rep, alpha, j: int) -> int:
    """Rank of the j-th power of the alpha operator (0 for j >= n)."""
    if j < 1:
        raise ValueError("power must be at least 1")
    n = m.algebra.n
    if j >= n:
        return 0
    return sum(rank(_power_block(m, alpha, j, i)) for i in range(n - j))


def jordan_type(m: Rep, alpha) -> tuple[int, ...]:
    """Jordan block sizes of the alpha operator, weakly decreasing. The
    multiplicity of size j is rank^(j-1) - 2 rank^j + rank^(j+1)."""
    a = as_alpha(m.field, alpha)
    n = m.algebra.n
    ranks = [m.total_dim] + [j_rank(m, a, j) for j in range(1, n)] + [0, 0]
    parts = []
    for j in range(n, 0, -1):
        mult = ranks[j - 1] - 2 * ranks[j] + ranks[j + 1]
        if mult < 0:
            raise ArithmeticError("rank sequence is not convex; solver bug")
        parts.extend([j] * mult)
    if sum(parts) != m.total_dim:
        raise ArithmeticError("Jordan block sizes do not sum to the dimension")
    return tuple(parts)


# -- finite-field sweep machinery ----------------------------------------------

def _proj_points(p: int, r: int):
    """Canonical representatives of the projective space over F_p: first
    nonzero coordinate equals 1."""
    for lead in range(r):
        tail = r - 1 - lead
        for rest in iproduct(range(p), repeat=tail):
            yield (0,) * lead + (1,) + rest


def _reduce_maps_mod_p(m: Rep, p: int):
    """Arrow matrices as numpy int64 arrays mod p, or None when a rational
    entry has a denominator divisible by p."""
    out = []
    for s in range(m.algebra.r):
        layer = []
        for i in range(m.algebra.n - 1):
            blk = m.maps[s][i]
            arr = np.zeros((blk.rows, blk.cols), dtype=np.int64)
            for rr in range(blk.rows):
                for cc in range(blk.cols):
                    v = blk.entries[rr][cc]
                    if isinstance(m.field, PrimeField):
                        arr[rr, cc] = int(v) % p
                    else:
                        num, den = v.numerator, v.denominator
                        if den % p == 0:
                            return None
                        arr[rr, cc] = (num % p) * pow(den % p, p - 2, p) % p
            layer.append(arr)
        out.append(layer)
    return out


def _np_layer(red, alpha_ints, p: int, i: int):
    acc = (alpha_ints[0] * red[0][i]) % p
    for s in range(1, len(red)):
        if alpha_ints[s]:
            acc = (acc + alpha_ints[s] * red[s][i]) % p
    return acc


def _np_power_block(red, alpha_ints, p: int, j: int, i: int):
    acc = _np_layer(red, alpha_ints, p, i)
    for step in range(1, j):
        acc = (_np_layer(red, alpha_ints, p, i + step) @ acc) % p
    return acc


def _module_sweep_primes(m: Rep, primes) -> tuple[tuple[int, ...], list[str]]:
    """For rational modules: the configured primes. For prime-field modules:
    only the module's own characteristic (noted)."""
    notes: list[str] = []
    if isinstance(m.field, PrimeField):
        notes.append(f"prime-field module: sweeping its own field F_{m.field.p}")
        return (m.field.p,), notes
    return tuple(primes), notes


# -- shared full-rank (equal images / equal kernels) engine --------------------

def _full_rank_targets(m: Rep, kind: str) -> list[tuple[int, int]]:
    """(layer, required rank) pairs: rows for surjectivity (equal images),
    columns for injectivity (equal kernels). Zero targets are dropped."""
    out = []
    for i in range(m.algebra.n - 1):
        t = m.dims[i + 1] if kind == "EIP" else m.dims[i]
        if t > 0:
            out.append((i, t))
    return out


def _structural_failure(m: Rep, targets) -> "_PartialFail | None":
    """Layers whose target rank exceeds the matrix size fail for every
    coefficient vector; certified by a dimension count."""
    for i, t in targets:
        rows_, cols_ = m.dims[i + 1], m.dims[i]
        if t > min(rows_, cols_):
            return _PartialFail(
                _unit_alpha(m),
                f"layer {i}: required rank {t} exceeds the {rows_}x{cols_} "
                "matrix for every coefficient vector",
                "exact-structural")
    return None


def _unit_alpha(m: Rep) -> AlphaVector:
    fld = m.field
    coords = [fld.zero] * m.algebra.r
    coords[0] = fld.one
    return AlphaVector(fld, tuple(coords))


@dataclass(frozen=True)
class _PartialFail:
    """Internal: a failure found by an engine, before the property name is
    attached."""

    alpha: AlphaVector | None
    description: str
    certificate: str
    notes: tuple[str, ...] = ()


def _finish(name: str, partial, *, rank_data=(), extra_notes=()):
    """Attach the property name to an engine outcome."""
    if isinstance(partial, _PartialFail):
        return PropertyReport(
            property_name=name,
            verdict="fails",
            certificate=partial.certificate,
            witness=Witness(
                partial.alpha.to_strings() if partial.alpha else None,
                partial.description),
            rank_data=tuple(rank_data),
            notes=tuple(partial.notes) + tuple(extra_notes),
        )
    verdict, certificate, notes = partial
    return PropertyReport(
        property_name=name,
        verdict=verdict,
        certificate=certificate,
        rank_data=tuple(rank_data),
        notes=tuple(notes) + tuple(extra_notes),
    )


def _resolve_strategy(m: Rep, strategy: str, *, for_cr: bool) -> tuple[str, bool]:
    """(concrete strategy, fallback-allowed). 'auto' picks the strongest
    certificate available for the field and arrow count and allows falling
    back to a sweep when an exact budget runs out."""
    if strategy != "auto":
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}; "
                             f"choose one of {', '.join(STRATEGIES)} or 'auto'")
        return strategy, False
    r = m.algebra.r
    if r == 2:
        if for_cr and isinstance(m.field, PrimeField):
            return "sweep", False
        return "exact-r2", True
    if isinstance(m.field, PrimeField):
        return "sweep", False
    return "groebner", True


def _check_full_rank(m: Rep, name: str, strategy: str, *, primes, trials,
                     seed, max_minors, spoly_budget, work_budget) -> PropertyReport:
    targets = _full_rank_targets(m, name)
    if not targets:
        return PropertyReport(
            property_name=name, verdict="holds", certificate="exact-structural",
            notes=("every layer has target rank zero; nothing to check",))
    structural = _structural_failure(m, targets)
    if structural is not None:
        return _finish(name, structural)

    concrete, may_fall_back = _resolve_strategy(m, strategy, for_cr=False)
    speculative = may_fall_back and concrete == "groebner"
    spec_spoly, spec_work = spoly_budget, work_budget
    with_seeds = True
    if speculative:
        spec_spoly = min(spec_spoly, AUTO_SPOLY_BUDGET)
        spec_work = min(spec_work, AUTO_WORK_BUDGET)
        # seeding costs exact eliminations that pay off only when the
        # seeded minors stay term-sparse; skip it for dense entries and
        # let the clamped attempt fail fast instead
        with_seeds = _monomial_symbolics(m, [i for i, _ in targets])
    try:
        partial = _full_rank_engine(m, targets, concrete, primes=primes,
                                    trials=trials, seed=seed,
                                    max_minors=max_minors,
                                    spoly_budget=spec_spoly,
                                    work_budget=spec_work,
                                    speculative=speculative,
                                    with_seeds=with_seeds)
    except BUDGET_ERRORS as exc:
        if not may_fall_back:
            raise
        partial = _full_rank_engine(m, targets, "sweep", primes=primes,
                                    trials=trials, seed=seed,
                                    max_minors=max_minors,
                                    spoly_budget=spoly_budget,
                                    work_budget=work_budget)
        partial = _append_note(partial, f"exact certificate budget exhausted "
                                        f"({exc}); fell back to a sweep")
    return _finish(name, partial)


def _append_note(partial, note: str):
    if isinstance(partial, _PartialFail):
        return _PartialFail(partial.alpha, partial.description,
                            partial.certificate, partial.notes + (note,))
    verdict, certificate, notes = partial
    return verdict, certificate, tuple(notes) + (note,)


def _full_rank_engine(m, targets, concrete, *, primes, trials, seed,
                      max_minors, spoly_budget, work_budget,
                      speculative=False, with_seeds=True):
    if concrete == "exact-r2":
        return _full_rank_r2(m, targets, max_minors)
    if concrete == "groebner":
        return _full_rank_groebner(m, targets, spoly_budget, work_budget,
                                   primes, speculative=speculative,
                                   with_seeds=with_seeds)
    if concrete == "sweep":
        return _full_rank_sweep(m, targets, primes)
    if concrete == "randomized":
        return _full_rank_randomized(m, targets, trials, seed)
    raise ValueError(f"unknown strategy {concrete!r}")


def _full_rank_r2(m: Rep, targets, max_minors):
    if m.algebra.r != 2:
        raise ValueError("the exact-r2 strategy needs exactly two arrows")
    fld = m.field
    for i, t in targets:
        a, b = m.maps[0][i], m.maps[1][i]
        if pencil_full_rank_r2(a, b, t, max_minors):
            continue
        # find the sharpest witness we can
        if rank(b) < t:
            alpha = AlphaVector(fld, (fld.zero, fld.one))
            return _PartialFail(alpha, f"layer {i} drops below rank {t} at "
                                       "these coefficients",
                                "exact-r2-pencil")
        if isinstance(fld, PrimeField):
            # exhaust the small projective line over the module's own field
            for a0, a1 in _proj_points(fld.p, 2):
                lm = a.scale(fld.from_int(a0)) + b.scale(fld.from_int(a1))
                if rank(lm) < t:
                    alpha = AlphaVector(fld, (fld.from_int(a0), fld.from_int(a1)))
                    return _PartialFail(alpha,
                                        f"layer {i} drops below rank {t}",
                                        "exact-r2-pencil")
            return _PartialFail(None,
                                f"layer {i}: rank drops only at coefficient "
                                "ratios in a proper extension of the field",
                                "exact-r2-pencil")
        g, _ = pencil_minor_gcd(a, b, t, max_minors)
        for root in upoly.rational_roots(g):
            lm = a + b.scale(Fraction(root))
            if rank(lm) < t:
                alpha = AlphaVector(fld, (fld.one, Fraction(root)))
                return _PartialFail(alpha,
                                    f"layer {i} drops below rank {t}",
                                    "exact-r2-pencil")
        return _PartialFail(None,
                            f"layer {i}: rank drops exactly at the irrational "
                            f"roots of {_poly_str(g)} in the pencil parameter "
                            "(coefficients (1, t))",
                            "exact-r2-pencil")
    return "holds", "exact-r2-pencil", ()


def _poly_str(coeffs: list[int]) -> str:
    if not coeffs:
        return "0"
    bits = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        if d == 0:
            bits.append(str(c))
        elif d == 1:
            bits.append(f"{c}*t" if c != 1 else "t")
        else:
            bits.append(f"{c}*t^{d}" if c != 1 else f"t^{d}")
    return " + ".join(reversed(bits)) if bits else "0"


def _monomial_symbolics(m: Rep, layers) -> bool:
    """True when every symbolic entry of the named layer matrices has at
    most one term.  Minors of such matrices stay term-sparse, so an exact
    certificate is usually reachable and the automatic strategy spends its
    full budget; dense multi-term entries (typical of translates) blow up
    the determinant expansion and only merit a cheap speculative attempt."""
    for i in layers:
        for row in _symbolic_layer(m, i):
            for e in row:
                if len(e.terms) > 1:
                    return False
    return True


def _symbolic_layer(m: Rep, i: int) -> list[list[MultiPoly]]:
    """The layer-i matrix with generic coefficients: entry (a, b) is the
    linear form sum_s maps[s][i][a][b] * alpha_s."""
    r = m.algebra.r
    rows_, cols_ = m.dims[i + 1], m.dims[i]
    out = []
    for a_ in range(rows_):
        row = []
        for b_ in range(cols_):
            terms = {}
            for s in range(r):
                c = m.maps[s][i].entries[a_][b_]
                if not m.field.is_zero(c):
                    e = [0] * r
                    e[s] = 1
                    terms[tuple(e)] = c
            row.append(MultiPoly(r, terms))
        out.append(row)
    return out


def _symbolic_product(left: list[list[MultiPoly]],
                      right: list[list[MultiPoly]], r: int) -> list[list[MultiPoly]]:
    rows_, mid, cols_ = len(left), len(right), len(right[0]) if right else 0
    out = []
    for a_ in range(rows_):
        row = []
        for b_ in range(cols_):
            acc = MultiPoly.zero(r)
            for c_ in range(mid):
                if not left[a_][c_].is_zero() and not right[c_][b_].is_zero():
                    acc = acc + left[a_][c_] * right[c_][b_]
            row.append(acc)
        out.append(row)
    return out


def _rank_t_selection(mat: Mat, t: int):
    """(row indices, column indices) of an invertible t x t submatrix of a
    matrix of rank >= t, found by two pivot passes; None when rank < t."""
    _, pivot_cols = rref(mat)
    if len(pivot_cols) < t:
        return None
    csel = tuple(pivot_cols[:t])
    _, pivot_rows = rref(mat.columns(list(csel)).transpose())
    if len(pivot_rows) < t:
        return None
    return tuple(pivot_rows[:t]), csel


def _zero_locus_minors(sym: list[list[MultiPoly]], t: int, r: int,
                       spoly_budget: int, work_budget: int,
                       *, context: str, seeds=(),
                       speculative: bool = False) -> tuple[str, list[MultiPoly]]:
    """Show that the t x t minors of a polynomial matrix vanish together
    only at the origin, computing minors lazily.

    Minors accumulate in geometrically growing batches; after each batch the
    common zero locus of the minors found so far is tested.  A sublocus
    already pinned to the origin pins the full locus, so early success is
    sound and avoids materializing combinatorially many determinants.
    ``seeds`` are (row-selection, column-selection) pairs tried before the
    lexicographic enumeration — callers pass pivot selections known to give
    minors that are nonzero in useful coefficient directions.

    Under ``speculative`` (the automatic strategy probing for a cheap exact
    certificate) the attempt is abandoned once the seeded minors alone fail
    to pin the locus while being large multi-term forms: basis completion
    on such forms does not finish at any budget this library grants, so the
    caller's sweep fallback is reached while it is still cheap.

    Returns ("origin" | "all-zero" | "open", nonzero minors seen).  Raises
    CertificateBudgetExceeded when the determinant work cap is hit first or
    a speculative attempt is abandoned.
    """
    rows_ = len(sym)
    cols_ = len(sym[0]) if sym else 0

    def selections():
        seen = set()
        for sel in seeds:
            if sel is None or sel in seen:
                continue
            seen.add(sel)
            yield sel, True
        for rsel in combinations(range(rows_), t):
            for csel in combinations(range(cols_), t):
                if (rsel, csel) not in seen:
                    yield (rsel, csel), False

    live: list[MultiPoly] = []
    meter = _WorkMeter(work_budget, context=f"{context}: size-{t} minors")
    batch = 8
    pending = 0
    seeds_done = False
    for (rsel, csel), from_seed in selections():
        if speculative and not from_seed and not seeds_done:
            seeds_done = True
            if live:
                if zero_locus_is_origin(live, spoly_budget):
                    return "origin", live
                if t > 8 and any(len(p.terms) > 1 for p in live):
                    raise CertificateBudgetExceeded(
                        f"{context}: the seeded size-{t} minors are "
                        "multi-term and do not pin the locus; abandoning "
                        "the speculative exact attempt")
                pending = 0
        p = _poly_det(sym, rsel, csel, r, meter)
        if p.is_zero():
            continue
        live.append(p)
        pending += 1
        if pending >= batch:
            if zero_locus_is_origin(live, spoly_budget):
                return "origin", live
            pending = 0
            batch *= 2
    if not live:
        return "all-zero", live
    if pending and zero_locus_is_origin(live, spoly_budget):
        return "origin", live
    return "open", live


class _WorkMeter:
    """Pay-as-you-go budget on polynomial term multiplications, so sparse
    determinants are charged what they actually cost instead of the dense
    worst case."""

    __slots__ = ("left", "context")

    def __init__(self, budget: int, *, context: str):
        self.left = budget
        self.context = context

    def charge(self, amount: int) -> None:
        self.left -= amount
        if self.left < 0:
            raise CertificateBudgetExceeded(
                f"{self.context}: work budget exhausted")


def _poly_det(sym, rsel, csel, r: int, meter: _WorkMeter | None = None) -> MultiPoly:
    """Determinant of the selected submatrix via subset dynamic programming
    (expansion one row at a time over used-column masks)."""
    t = len(rsel)
    if t == 0:
        return MultiPoly.constant(r, 1)
    states: dict[int, MultiPoly] = {0: MultiPoly.constant(r, 1)}
    for depth, ridx in enumerate(rsel):
        nxt: dict[int, MultiPoly] = {}
        row = sym[ridx]
        for mask, acc in states.items():
            if acc.is_zero():
                continue
            parity_base = 0
            for pos, cidx in enumerate(csel):
                bit = 1 << pos
                if mask & bit:
                    parity_base += 1
                    continue
                entry = row[cidx]
                if entry.is_zero():
                    continue
                if meter is not None:
                    meter.charge(len(acc.terms) * len(entry.terms))
                term = acc * entry
                if parity_base % 2 == 1:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        states = nxt
        if not states:
            return MultiPoly.zero(r)
    return states.get((1 << t) - 1, MultiPoly.zero(r))


def _full_rank_groebner(m: Rep, targets, spoly_budget, work_budget, primes,
                        *, speculative=False, with_seeds=True):
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "groebner certificates need rational coefficients; "
            "use exact-r2 (two arrows) or sweep")
    r = m.algebra.r
    for i, t in targets:
        sym = _symbolic_layer(m, i)
        seeds = ([_rank_t_selection(layer_matrix(m, alpha, i), t)
                  for alpha in _sample_alphas(m, seed=0)]
                 if with_seeds else [])
        state, _live = _zero_locus_minors(sym, t, r, spoly_budget,
                                          work_budget, context=f"layer {i}",
                                          seeds=seeds,
                                          speculative=speculative)
        if state == "all-zero":
            alpha = _unit_alpha(m)
            return _PartialFail(alpha,
                                f"layer {i}: every rank-{t} minor is the zero "
                                "polynomial, so the rank is below target for "
                                "every coefficient vector",
                                "exact-groebner")
        if state == "origin":
            continue
        return _drop_witness_search(
            m, lambda alpha, _i=i, _t=t: rank(layer_matrix(m, alpha, _i)) < _t,
            f"layer {i} drops below rank {t}",
            f"layer {i}: the rank-{t} minors share a nonzero common zero "
            "over the algebraic closure",
            "exact-groebner", primes)
    return "holds", "exact-groebner", ()


def _drop_witness_search(m: Rep, is_drop, found_text, closure_text,
                         certificate, primes) -> _PartialFail:
    """The exact certificate says the property fails somewhere over the
    closure; hunt for an explicit small witness (integer grid, then lifted
    sweep points), falling back to a descriptive closure witness."""
    fld = m.field
    r = m.algebra.r
    seen = set()
    for pt in iproduct(range(-3, 4), repeat=r):
        if all(x == 0 for x in pt):
            continue
        alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
        if is_drop(alpha):
            return _PartialFail(alpha, found_text, certificate)
        seen.add(pt)
    for p in primes:
        for pt in _proj_points(p, r):
            if pt in seen:
                continue
            alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
            if is_drop(alpha):
                return _PartialFail(alpha, found_text, certificate)
    return _PartialFail(None, closure_text, certificate)


def _full_rank_sweep(m: Rep, targets, primes):
    use_primes, notes = _module_sweep_primes(m, primes)
    fld = m.field
    r = m.algebra.r
    fields_used = []
    points_used = 0
    artifacts = 0
    for p in use_primes:
        red = _reduce_maps_mod_p(m, p)
        if red is None:
            notes.append(f"skipped F_{p}: a denominator is divisible by {p}")
            continue
        fields_used.append(f"F{p}")
        for pt in _proj_points(p, r):
            points_used += 1
            for i, t in targets:
                lm = _np_layer(red, pt, p, i)
                if _numpy_rank_mod_p(lm, p) < t:
                    if isinstance(fld, PrimeField):
                        alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
                        return _PartialFail(
                            alpha, f"layer {i} drops below rank {t}",
                            _sweep_cert([f"F{p}"], points_used), tuple(notes))
                    alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
                    if rank(layer_matrix(m, alpha, i)) < t:
                        return _PartialFail(
                            alpha,
                            f"layer {i} drops below rank {t} (found mod {p}, "
                            "verified exactly)",
                            _sweep_cert([f"F{p}"], points_used), tuple(notes))
                    artifacts += 1
    if artifacts:
        notes.append(f"{artifacts} mod-p rank drops did not survive exact "
                     "verification (reduction artifacts)")
    if not fields_used:
        raise CertificateBudgetExceeded(
            "no sweep prime was usable (denominators collide with every "
            "configured prime)")
    return ("holds-over-sampled-points",
            _sweep_cert(fields_used, points_used), tuple(notes))


def _sweep_cert(fields_used, npoints) -> str:
    return f"sweep({','.join(fields_used)}; {npoints} points)"


def _random_alpha(fld: FieldSpec, r: int, rng: Random) -> AlphaVector:
    while True:
        if isinstance(fld, PrimeField):
            coords = tuple(fld.from_int(rng.randrange(fld.p)) for _ in range(r))
        else:
            coords = tuple(fld.from_int(rng.randint(-30, 30)) for _ in range(r))
        if not all(fld.is_zero(c) for c in coords):
            return AlphaVector(fld, coords)


def _full_rank_randomized(m: Rep, targets, trials, seed):
    rng = Random(seed)
    fld = m.field
    r = m.algebra.r
    cert = f"randomized(trials={trials}, seed={seed})"
    for _ in range(trials):
        alpha = _random_alpha(fld, r, rng)
        for i, t in targets:
            if rank(layer_matrix(m, alpha, i)) < t:
                return _PartialFail(alpha, f"layer {i} drops below rank {t}",
                                    cert)
    return "holds-over-sampled-points", cert, ()


def check_eip(m: Rep, strategy: str = "auto", *, primes=None,
              trials: int = DEFAULT_TRIALS, seed: int = 0,
              max_minors: int = DEFAULT_MINOR_BUDGET,
              spoly_budget: int = DEFAULT_SPOLY_BUDGET,
              work_budget: int = DEFAULT_WORK_BUDGET) -> PropertyReport:
    """Equal images: every layer matrix is surjective for every nonzero
    coefficient vector over the algebraic closure."""
    return _check_full_rank(m, "EIP", strategy,
                            primes=primes or sweep_primes(), trials=trials,
                            seed=seed, max_minors=max_minors,
                            spoly_budget=spoly_budget, work_budget=work_budget)


def check_ekp(m: Rep, strategy: str = "auto", *, primes=None,
              trials: int = DEFAULT_TRIALS, seed: int = 0,
              max_minors: int = DEFAULT_MINOR_BUDGET,
              spoly_budget: int = DEFAULT_SPOLY_BUDGET,
              work_budget: int = DEFAULT_WORK_BUDGET) -> PropertyReport:
    """Equal kernels: every layer matrix is injective for every nonzero
    coefficient vector over the algebraic closure."""
    return _check_full_rank(m, "EKP", strategy,
                            primes=primes or sweep_primes(), trials=trials,
                            seed=seed, max_minors=max_minors,
                            spoly_budget=spoly_budget, work_budget=work_budget)


# -- constant rank of a power --------------------------------------------------

def _sample_alphas(m: Rep, seed: int) -> list[AlphaVector]:
    """Structured plus seeded sample points used to estimate generic ranks,
    cross-checked with a second independent seed."""
    fld = m.field
    r = m.algebra.r
    out = []
    for s in range(r):
        coords = [fld.zero] * r
        coords[s] = fld.one
        out.append(AlphaVector(fld, tuple(coords)))
    out.append(AlphaVector(fld, tuple(fld.one for _ in range(r))))
    out.append(AlphaVector(fld, tuple(fld.from_int(2 ** s + 1) for s in range(r))))
    out.append(AlphaVector(fld, tuple(fld.from_int(3 * s + 2) for s in range(r))))
    for rng_seed in (seed, seed + 1):
        rng = Random(rng_seed)
        for _ in range(3):
            out.append(_random_alpha(fld, r, rng))
    return out


def _block_shapes(m: Rep, j: int) -> list[tuple[int, int, int]]:
    """(start layer, rows, cols) of each nonempty block of the j-th power."""
    n = m.algebra.n
    out = []
    for i in range(n - j):
        rows_, cols_ = m.dims[i + j], m.dims[i]
        if rows_ and cols_:
            out.append((i, rows_, cols_))
    return out


def check_constant_j_rank(m: Rep, j: int, strategy: str = "auto", *,
                          primes=None, trials: int = DEFAULT_TRIALS,
                          seed: int = 0,
                          max_minors: int = DEFAULT_MINOR_BUDGET,
                          spoly_budget: int = DEFAULT_SPOLY_BUDGET,
                          work_budget: int = DEFAULT_WORK_BUDGET,
                          grid_budget: int = DEFAULT_GRID_BUDGET) -> PropertyReport:
    """Is the rank of the j-th power of the alpha operator independent of
    the (nonzero) coefficient vector? Decided blockwise: each block's rank is
    at most its generic value everywhere, so the total is constant exactly
    when every block's rank is."""
    if j < 1:
        raise ValueError("power must be at least 1")
    name = f"CR({j})"
    n = m.algebra.n
    if j >= n:
        return PropertyReport(
            property_name=name, verdict="holds", certificate="exact-structural",
            rank_data=((j, 0),),
            notes=(f"the {j}-th power of the operator is identically zero",))
    blocks = _block_shapes(m, j)
    if not blocks:
        return PropertyReport(
            property_name=name, verdict="holds", certificate="exact-structural",
            rank_data=((j, 0),),
            notes=("every block of the power matrix is empty",))

    samples = _sample_alphas(m, seed)
    generic = {}
    for i, _, _ in blocks:
        generic[i] = max(rank(_power_block(m, a, j, i)) for a in samples)

    concrete, may_fall_back = _resolve_strategy(m, strategy, for_cr=True)
    speculative = may_fall_back and concrete == "groebner"
    spec_spoly, spec_work = spoly_budget, work_budget
    with_seeds = True
    if speculative:
        spec_spoly = min(spec_spoly, AUTO_SPOLY_BUDGET)
        spec_work = min(spec_work, AUTO_WORK_BUDGET)
        factor_layers = {i + step for i, _, _ in blocks for step in range(j)}
        with_seeds = _monomial_symbolics(m, sorted(factor_layers))
    try:
        partial, generic = _cr_engine(m, j, blocks, generic, concrete,
                                      primes=primes or sweep_primes(),
                                      trials=trials, seed=seed,
                                      max_minors=max_minors,
                                      spoly_budget=spec_spoly,
                                      work_budget=spec_work,
                                      grid_budget=grid_budget,
                                      speculative=speculative,
                                      with_seeds=with_seeds)
    except BUDGET_ERRORS as exc:
        if not may_fall_back:
            raise
        partial, generic = _cr_engine(m, j, blocks, generic, "sweep",
                                      primes=primes or sweep_primes(),
                                      trials=trials, seed=seed,
                                      max_minors=max_minors,
                                      spoly_budget=spoly_budget,
                                      work_budget=work_budget,
                                      grid_budget=grid_budget)
        partial = _append_note(partial, f"exact certificate budget exhausted "
                                        f"({exc}); fell back to a sweep")
    total = sum(generic.values())
    block_note = ("generic block ranks: "
                  + ", ".join(f"layer {i}->{i + j}: {generic[i]}"
                              for i, _, _ in blocks))
    return _finish(name, partial, rank_data=((j, total),),
                   extra_notes=(block_note,))


def _cr_engine(m, j, blocks, generic, concrete, *, primes, trials, seed,
               max_minors, spoly_budget, work_budget, grid_budget,
               speculative=False, with_seeds=True):
    if concrete == "exact-r2":
        return _cr_r2(m, j, blocks, generic, max_minors)
    if concrete == "groebner":
        return _cr_groebner(m, j, blocks, generic, spoly_budget, work_budget,
                            grid_budget, primes, speculative=speculative,
                            with_seeds=with_seeds)
    if concrete == "sweep":
        return _cr_sweep(m, j, blocks, generic, primes)
    if concrete == "randomized":
        return _cr_randomized(m, j, blocks, generic, trials, seed)
    raise ValueError(f"unknown strategy {concrete!r}")


def _cr_r2(m: Rep, j, blocks, generic, max_minors):
    """Exact two-arrow certificate: along the affine chart (1, t) the block
    is a polynomial matrix of entry degree j; the gcd of its generic-rank
    minors is interpolated from enough integer points, and the point (0, 1)
    is checked separately."""
    if m.algebra.r != 2:
        raise ValueError("the exact-r2 strategy needs exactly two arrows")
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "exact constant-rank certificates over prime fields are not "
            "supported; use sweep")
    fld = m.field
    generic = dict(generic)
    for i, rows_, cols_ in blocks:
        cstruct = min(rows_, cols_)
        dmax = j * cstruct
        points = list(range(dmax + 1))
        evals = []
        for t0 in points:
            alpha = AlphaVector(fld, (fld.one, fld.from_int(t0)))
            evals.append(_power_block(m, alpha, j, i))
        inf_alpha = AlphaVector(fld, (fld.zero, fld.one))
        inf_block = _power_block(m, inf_alpha, j, i)
        chart_ranks = [rank(ev) for ev in evals]
        cg = max(chart_ranks)
        c = max(cg, rank(inf_block), generic[i])
        generic[i] = c
        if rank(inf_block) < c:
            return _PartialFail(
                inf_alpha,
                f"rank of the power-{j} block at layer {i} drops to "
                f"{rank(inf_block)} (generic {c})",
                "exact-r2-pencil"), generic
        if cg < c:
            alpha = AlphaVector(fld, (fld.one, fld.zero))
            return _PartialFail(
                alpha,
                f"rank of the power-{j} block at layer {i} is below the "
                f"generic value {c} on the whole affine chart",
                "exact-r2-pencil"), generic
        g, _ = gcd_scan(evals, points, c, max_minors)
        if upoly.is_nonzero_const(g):
            continue
        for root in upoly.rational_roots(g):
            alpha = AlphaVector(fld, (fld.one, Fraction(root)))
            if rank(_power_block(m, alpha, j, i)) < c:
                return _PartialFail(
                    alpha,
                    f"rank of the power-{j} block at layer {i} drops below "
                    f"the generic value {c}",
                    "exact-r2-pencil"), generic
        return _PartialFail(
            None,
            f"power-{j} block at layer {i}: rank drops exactly at the "
            f"irrational roots of {_poly_str(g)} (coefficients (1, t))",
            "exact-r2-pencil"), generic
    return ("holds", "exact-r2-pencil", ()), generic


def _cr_groebner(m: Rep, j, blocks, generic, spoly_budget, work_budget,
                 grid_budget, primes, *, speculative=False, with_seeds=True):
    """Exact many-arrow certificate: the generic rank of each block is
    certified by exhausting an integer grid large enough for the minor
    degrees (polynomial identity testing), then the locus where the rank
    drops is shown to be the origin by a Groebner staircase."""
    if isinstance(m.field, PrimeField):
        raise UnsupportedFieldOperation(
            "groebner certificates need rational coefficients; use sweep")
    r = m.algebra.r
    fld = m.field
    generic = dict(generic)
    for i, rows_, cols_ in blocks:
        c = generic[i]
        # certify the generic rank: every (c+1)-minor has individual degree
        # <= j*(c+1), so vanishing on the grid {0..j*(c+1)}^r makes it the
        # zero polynomial; checking rank <= c at every grid point checks all
        # minors at once.
        while True:
            d = j * (c + 1)
            npoints = (d + 1) ** r
            if npoints > grid_budget:
                raise CertificateBudgetExceeded(
                    f"generic-rank grid for the layer-{i} block needs "
                    f"{npoints} points (budget {grid_budget})")
            bumped = None
            for pt in iproduct(range(d + 1), repeat=r):
                if all(x == 0 for x in pt):
                    continue
                alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
                rk = rank(_power_block(m, alpha, j, i))
                if rk > c:
                    bumped = rk
                    break
            if bumped is None:
                break
            c = bumped
        generic[i] = c
        if c == 0:
            continue  # identically zero block: constant
        sym = _symbolic_layer(m, i)
        for step in range(1, j):
            sym = _symbolic_product(_symbolic_layer(m, i + step), sym, r)
        seeds = ([_rank_t_selection(_power_block(m, alpha, j, i), c)
                  for alpha in _sample_alphas(m, seed=0)]
                 if with_seeds else [])
        state, _live = _zero_locus_minors(
            sym, c, r, spoly_budget, work_budget,
            context=f"power-{j} block at layer {i}", seeds=seeds,
            speculative=speculative)
        if state == "all-zero":
            raise ArithmeticError(
                "certified generic rank has only zero minors; solver bug")
        if state == "origin":
            continue
        partial = _drop_witness_search(
            m,
            lambda alpha, _i=i, _c=c: rank(_power_block(m, alpha, j, _i)) < _c,
            f"rank of the power-{j} block at layer {i} drops below the "
            f"generic value {c}",
            f"power-{j} block at layer {i}: the rank-{c} minors share a "
            "nonzero common zero over the algebraic closure",
            "exact-groebner", primes)
        return partial, generic
    return ("holds", "exact-groebner", ()), generic


def _cr_sweep(m: Rep, j, blocks, generic, primes):
    use_primes, notes = _module_sweep_primes(m, primes)
    fld = m.field
    r = m.algebra.r
    generic = dict(generic)
    fields_used = []
    points_used = 0
    artifacts = 0
    candidates: list[tuple[tuple[int, ...], int]] = []
    sweep_data: list[tuple[int, list, tuple[int, ...]]] = []
    for p in use_primes:
        red = _reduce_maps_mod_p(m, p)
        if red is None:
            notes.append(f"skipped F_{p}: a denominator is divisible by {p}")
            continue
        fields_used.append(f"F{p}")
        for pt in _proj_points(p, r):
            points_used += 1
            for i, _, _ in blocks:
                rk = _numpy_rank_mod_p(_np_power_block(red, pt, p, j, i), p)
                if rk > generic[i]:
                    generic[i] = rk  # mod-p rank bounds the exact rank below
                if rk < generic[i]:
                    candidates.append((pt, i))
    if not fields_used:
        raise CertificateBudgetExceeded(
            "no sweep prime was usable (denominators collide with every "
            "configured prime)")
    cert = _sweep_cert(fields_used, points_used)
    checked = set()
    for pt, i in candidates:
        if (pt, i) in checked or len(checked) >= 64:
            continue
        checked.add((pt, i))
        alpha = AlphaVector(fld, tuple(fld.from_int(x) for x in pt))
        rk = rank(_power_block(m, alpha, j, i))
        if rk != generic[i]:
            return _PartialFail(
                alpha,
                f"rank of the power-{j} block at layer {i} is {rk}, but the "
                f"generic value is {generic[i]}",
                cert, tuple(notes)), generic
        artifacts += 1
    if artifacts:
        notes.append(f"{artifacts} mod-p rank drops did not survive exact "
                     "verification (reduction artifacts)")
    return ("holds-over-sampled-points", cert, tuple(notes)), generic


def _cr_randomized(m: Rep, j, blocks, generic, trials, seed):
    rng = Random(seed)
    fld = m.field
    r = m.algebra.r
    generic = dict(generic)
    cert = f"randomized(trials={trials}, seed={seed})"
    for _ in range(trials):
        alpha = _random_alpha(fld, r, rng)
        for i, _, _ in blocks:
            rk = rank(_power_block(m, alpha, j, i))
            if rk > generic[i]:
                generic[i] = rk
            if rk < generic[i]:
                return _PartialFail(
                    alpha,
                    f"rank of the power-{j} block at layer {i} is {rk}, but "
                    f"another sampled point attains {generic[i]}",
                    cert), generic
    return ("holds-over-sampled-points", cert, ()), generic


def check_cjt(m: Rep, strategy: str = "auto", *, primes=None,
              trials: int = DEFAULT_TRIALS, seed: int = 0,
              max_minors: int = DEFAULT_MINOR_BUDGET,
              spoly_budget: int = DEFAULT_SPOLY_BUDGET,
              work_budget: int = DEFAULT_WORK_BUDGET,
              grid_budget: int = DEFAULT_GRID_BUDGET) -> PropertyReport:
    """Constant Jordan type: the rank of every power of the alpha operator
    is coefficient-independent. The n-th power is identically zero and is
    recorded as vacuous rather than checked."""
    n = m.algebra.n
    reports = [
        check_constant_j_rank(m, j, strategy, primes=primes, trials=trials,
                              seed=seed, max_minors=max_minors,
                              spoly_budget=spoly_budget,
                              work_budget=work_budget, grid_budget=grid_budget)
        for j in range(1, n)
    ]
    rank_data = tuple((j, rep.rank_data[0][1])
                      for j, rep in zip(range(1, n), reports))
    notes: list[str] = [f"power {n} is identically zero (vacuously constant)"]
    if not m.is_zero_rep:
        samples = _sample_alphas(m, seed)
        sample = samples[min(m.algebra.r, len(samples) - 1)]
        notes.append("Jordan type at a sample point: "
                     + str(list(jordan_type(m, sample))))
    for j, rep in zip(range(1, n), reports):
        if rep.verdict == "fails":
            return PropertyReport(
                property_name="CJT", verdict="fails",
                certificate=rep.certificate, witness=rep.witness,
                rank_data=rank_data,
                notes=tuple(notes) + (f"power {j} has non-constant rank",)
                + rep.notes)
        for note in rep.notes:
            if "fell back" in note:
                notes.append(f"power {j}: {note}")
    if all(rep.verdict == "holds" for rep in reports):
        certs = []
        for rep in reports:
            if rep.certificate not in certs:
                certs.append(rep.certificate)
        return PropertyReport(
            property_name="CJT", verdict="holds",
            certificate="+".join(certs) if certs else "exact-structural",
            rank_data=rank_data, notes=tuple(notes))
    certs = []
    for rep in reports:
        if rep.certificate not in certs:
            certs.append(rep.certificate)
    return PropertyReport(
        property_name="CJT", verdict="holds-over-sampled-points",
        certificate="+".join(certs), rank_data=rank_data, notes=tuple(notes))
