"""Acceptance suite: a registry of named, numbered claims about the library.

Each claim reruns a published structural fact (module identifications,
translate identities, membership of the named families in the equal-images
and equal-kernels classes, component-window counts, constant Jordan type)
or an internal invariant battery, at exact-arithmetic tolerance (equality).
The suite is runnable from the CLI (``beilinson verify``) and from the test
suite; the claim table reports one pass/fail line per criterion.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .algebra import AlgebraData, cartan_matrix, monomials_of_degree
from .artrans import (ComponentReport, ar_sequence_from, component_window,
                      stable_iso, tau, tau_inverse)
from .construct import (delete_source, injective, iota, m_module, projective,
                        simple, w_module)
from .exactla import (GF, QQ, Mat, MultiPoly, kernel_basis, rank,
                      zero_locus_is_origin)
from .exactla.pencil import pencil_full_rank_r2
from .jordan import (alpha_operator, as_alpha, check_cjt, check_eip,
                     check_ekp, j_rank, jordan_type)
from .rep import (Rep, decompose, direct_sum, dual_rep, hom_dim, iso,
                  radical_rep, validate)
from .serialize import dumps_rep, loads_rep

__all__ = ["ClaimResult", "format_table", "run_criterion", "run_suite",
           "CRITERIA"]


@dataclass(frozen=True)
class ClaimResult:
    number: int
    name: str
    ok: bool
    seconds: float
    budget: float | None
    failures: tuple[str, ...]
    notes: tuple[str, ...] = ()


@dataclass
class SuiteOptions:
    max_m: int | None = None
    max_n: int | None = None
    cache: dict = field(default_factory=dict)

    def m_values(self, lo: int, hi: int) -> list[int]:
        """The inclusive family-parameter range [lo, hi], truncated."""
        top = hi if self.max_m is None else min(hi, self.max_m)
        return list(range(lo, top + 1))

    def n_values(self, values) -> list[int]:
        if self.max_n is None:
            return list(values)
        return [n for n in values if n <= self.max_n]


# -- golden data -------------------------------------------------------------------

# degree-1 -> degree-2 multiplication matrices in three variables, bases in
# descending lexicographic order (x1, x2, x3) and (x1^2, x1x2, x1x3, x2^2,
# x2x3, x3^2); entry (a, b) = 1 iff variable s times basis vector b equals
# basis vector a.
_FIGURE_MATRICES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 0, 0), (0, 0, 0)),
    ((0, 0, 0), (1, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)),
    ((0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 0, 0), (0, 1, 0), (0, 0, 1)),
)


def _as_int_rows(mat: Mat) -> tuple:
    return tuple(tuple(int(v) for v in row) for row in mat.entries)


# -- criterion bodies --------------------------------------------------------------

def _crit_1_figure(opts: SuiteOptions):
    """Three-variable module with layer sizes (3, 6) matches golden matrices."""
    fails = []
    m = m_module(3, 2, 3)
    if m.dims != (3, 6):
        fails.append(f"m_module(3,2,3) dims {m.dims} != (3, 6)")
    for s in range(3):
        got = _as_int_rows(m.maps[s][0])
        if got != _FIGURE_MATRICES[s]:
            fails.append(f"arrow {s + 1} matrix {got} != golden")
    return fails, []


def _crit_2_source_projective(opts: SuiteOptions):
    """m_module(n,n,r) is the vertex-0 projective."""
    fails = []
    for n in opts.n_values((2, 3, 4)):
        for r in (2, 3):
            res = iso(m_module(n, n, r), projective(0, n, r))
            if not res.value:
                fails.append(f"m_module({n},{n},{r}) !~ projective(0): {res.detail}")
    return fails, []


def _crit_3_radical(opts: SuiteOptions):
    """Source deletion of rad P(0) gives the one-smaller m-family module."""
    fails = []
    for n in opts.n_values((3, 4)):
        for r in (2, 3):
            rad, _incl = radical_rep(projective(0, n, r))
            left = delete_source(rad)
            res = iso(left, m_module(n, n - 1, r))
            if not res.value:
                fails.append(f"delete_source(rad P(0)) !~ m_module({n},{n - 1},{r}): "
                             f"{res.detail}")
    return fails, []


def _crit_4_translate_simple(opts: SuiteOptions):
    """tau of the almost-projective m-family member is the vertex-1 simple."""
    fails = []
    for n in opts.n_values((3, 4, 5)):
        res = iso(tau(m_module(n + 1, n, 2)), simple(1, n, 2))
        if not res.value:
            fails.append(f"tau(m_module({n + 1},{n},2)) !~ simple(1): {res.detail}")
    return fails, []


def _iso_sized(left: Rep, right: Rep):
    """Direct isomorphism test on small modules; through the translate on
    large ones, where the direct morphism-space elimination is intractable."""
    if left.total_dim <= 120 or left.dims != right.dims:
        return iso(left, right)
    return stable_iso(left, right)


def _crit_5_embedding_translate(opts: SuiteOptions):
    """Inverse-translate commutes with the source-vertex embedding on both
    module families."""
    fails = []
    for n in opts.n_values((3, 4)):
        for r in (2, 3):
            for m in opts.m_values(n + 1, n + 4):
                left = iota(tau_inverse(m_module(m, n - 1, r)))
                right = tau_inverse(m_module(m, n, r))
                res = _iso_sized(left, right)
                if not res.value:
                    fails.append(f"(i) fails at (m={m},n={n},r={r}): {res.detail}")
                left = iota(tau_inverse(w_module(m, n - 1, r)))
                right = tau_inverse(w_module(m + 1, n, r))
                res = _iso_sized(left, right)
                if not res.value:
                    fails.append(f"(ii) fails at (m={m},n={n},r={r}): {res.detail}")
    return fails, []


def _crit_6_two_vertex_sequences(opts: SuiteOptions):
    """Almost split sequences of the two-vertex w-family: doubled middle,
    double-step inverse translate."""
    fails = []
    for m in opts.m_values(5, 8):
        w = w_module(m, 2, 2)
        _, middle, _ = ar_sequence_from(w)
        expect = direct_sum(w_module(m - 1, 2, 2), w_module(m - 1, 2, 2))
        res = iso(middle, expect)
        if not res.value:
            fails.append(f"middle of the sequence from w({m},2,2) is not the "
                         f"doubled w({m - 1},2,2): {res.detail}")
        res = iso(tau_inverse(w), w_module(m - 2, 2, 2))
        if not res.value:
            fails.append(f"tau_inverse(w({m},2,2)) !~ w({m - 2},2,2): {res.detail}")
    return fails, []


def _crit_7_membership_grid(opts: SuiteOptions):
    """w-family in the equal-images class, m-family in the equal-kernels
    class, with the strongest certificate the budget allows."""
    fails = []
    notes = []
    exact = 0
    sampled = 0
    for n in opts.n_values((2, 3, 4)):
        for r in (2, 3):
            for m in opts.m_values(n, n + 3):
                rw = check_eip(w_module(m, n, r), "auto")
                rm = check_ekp(m_module(m, n, r), "auto")
                for tag, rep in (("w EIP", rw), ("m EKP", rm)):
                    if not rep.ok:
                        fails.append(f"{tag} at (m={m},n={n},r={r}): {rep.verdict} "
                                     f"({rep.witness.description if rep.witness else ''})")
                    elif rep.verdict == "holds":
                        exact += 1
                    else:
                        sampled += 1
    notes.append(f"exact certificates: {exact}, sampled-level: {sampled}")
    return fails, notes


# window plan: the two-arrow orbits need radius 2 (the criterion names the
# first and second inverse translates) and towers to quasi-length 3 for the
# Jordan-type claim; the three-arrow orbits grow their vector sizes nearly
# sevenfold per translate step, so the smallest window that reaches both
# classified cones (radius 1, mouth only) keeps the run inside the budget.
# (Criterion 9 inspects the same windows; every node there has quasi-length
# at most 3, so the Jordan-type claim is evaluated on all of them.)
_R2_WINDOW = {"orbit_radius": 2, "quasi_length": 3}
_R3_WINDOW = {"orbit_radius": 1, "quasi_length": 1}


def _windows(opts: SuiteOptions) -> list[tuple[int, int, int, ComponentReport]]:
    key = "windows"
    if key in opts.cache:
        return opts.cache[key]
    out = []
    for m in opts.m_values(4, 7):
        out.append((3, 2, m, component_window(3, 2, m, strategy="auto",
                                              **_R2_WINDOW)))
    for n in (2, 3):
        for m in opts.m_values(4, 7):
            out.append((n, 3, m, component_window(n, 3, m, strategy="auto",
                                                  **_R3_WINDOW)))
    opts.cache[key] = out
    return out


def _crit_8_windows(opts: SuiteOptions):
    """Window counts: one unclassified mouth module for two arrows, none for
    three arrows; the first inverse translate is neither, the second is in
    the equal-kernels class."""
    fails = []
    notes = []
    for n, r, m, repo in _windows(opts):
        label = f"window ({n},{r},m={m})"
        mouth = {nd.offset: nd for nd in repo.nodes if nd.quasi_length == 1}
        if r == 2:
            if repo.wc_count != 1:
                fails.append(f"{label}: wc_count {repo.wc_count} != 1")
            minus1 = mouth.get(-1)
            if minus1 is None or minus1.classification != "neither":
                fails.append(f"{label}: first inverse translate is "
                             f"{minus1.classification if minus1 else 'missing'}, "
                             "expected neither")
            minus2 = mouth.get(-2)
            if minus2 is None or minus2.classification != "EKP":
                fails.append(f"{label}: second inverse translate is "
                             f"{minus2.classification if minus2 else 'missing'}, "
                             "expected EKP")
        else:
            if repo.wc_count != 0:
                fails.append(f"{label}: wc_count {repo.wc_count} != 0")
        for note in repo.notes:
            notes.append(f"{label}: {note}")
    return fails, notes


def _crit_9_window_jordan(opts: SuiteOptions):
    """Every window module reports constant Jordan type; exact certificates
    on the two-arrow windows."""
    fails = []
    for n, r, m, repo in _windows(opts):
        label = f"window ({n},{r},m={m})"
        for nd in repo.nodes:
            where = f"{label} offset {nd.offset} quasi-length {nd.quasi_length}"
            if nd.cjt is None:
                fails.append(f"{where}: no Jordan-type report ({nd.note})")
                continue
            if not nd.cjt.ok:
                fails.append(f"{where}: {nd.cjt.verdict}")
            elif r == 2 and nd.cjt.verdict != "holds":
                fails.append(f"{where}: sampled-level only "
                             f"({nd.cjt.certificate}), expected exact")
    return fails, ["included in the criterion-8 runtime"]


def _crit_10_hom_vanishing(opts: SuiteOptions):
    """No nonzero morphisms from the w-family to the m-family."""
    fails = []
    for n in opts.n_values((2, 3, 4)):
        for r in (2, 3):
            ms = opts.m_values(n, n + 3)
            for m in ms:
                w = w_module(m, n, r)
                for m2 in ms:
                    d = hom_dim(w, m_module(m2, n, r))
                    if d != 0:
                        fails.append(f"hom(w({m},{n},{r}), m({m2},{n},{r})) "
                                     f"has dimension {d}")
    return fails, []


def _duality_corpus(opts: SuiteOptions) -> list[tuple[str, Rep]]:
    corpus: list[tuple[str, Rep]] = []
    for i in range(3):
        corpus.append((f"simple({i},3,2)", simple(i, 3, 2)))
        corpus.append((f"projective({i},3,2)", projective(i, 3, 2)))
        corpus.append((f"injective({i},3,2)", injective(i, 3, 2)))
    for m in (4, 5):
        corpus.append((f"m_module({m},3,2)", m_module(m, 3, 2)))
        corpus.append((f"w_module({m},3,2)", w_module(m, 3, 2)))
    corpus.append(("m_module(4,2,3)", m_module(4, 2, 3)))
    corpus.append(("w_module(4,2,3)", w_module(4, 2, 3)))
    corpus.append(("m_module(5,4,2)", m_module(5, 4, 2)))
    corpus.append(("w_module(5,4,2)", w_module(5, 4, 2)))
    corpus.append(("iota(w_module(3,2,2))", iota(w_module(3, 2, 2))))
    corpus.append(("iota(m_module(3,2,2))", iota(m_module(3, 2, 2))))
    corpus.append(("co-embedded w_module(3,2,2)",
                   dual_rep(iota(dual_rep(w_module(3, 2, 2))))))
    return corpus


def _crit_11_duality_translate(opts: SuiteOptions):
    """dual(tau(M)) ~ tau_inverse(dual(M)) over a twenty-module corpus."""
    fails = []
    corpus = _duality_corpus(opts)
    for name, m in corpus:
        res = iso(dual_rep(tau(m)), tau_inverse(dual_rep(m)))
        if not res.value:
            fails.append(f"{name}: {res.detail}")
    return fails, [f"corpus size: {len(corpus)}"]


def _crit_12_embedding_falsification(opts: SuiteOptions):
    """Source-embedded nonzero equal-images modules lose the property with
    an explicit witness; dually for sink-embedded equal-kernels modules."""
    fails = []
    eip_cases = [("w_module(4,2,2)", w_module(4, 2, 2)),
                 ("w_module(3,2,3)", w_module(3, 2, 3)),
                 ("injective(1,2,2)", injective(1, 2, 2))]
    for name, base in eip_cases:
        pre = check_eip(base, "auto")
        if not pre.ok:
            fails.append(f"{name} is not in the equal-images class before "
                         "embedding; bad test corpus")
            continue
        emb = iota(base)
        if emb.dims[0] != 0:
            fails.append(f"iota({name}) has nonzero source layer")
        rep = check_eip(emb, "auto")
        if rep.verdict != "fails":
            fails.append(f"iota({name}) still reports {rep.verdict}")
        elif rep.witness is None or rep.witness.coords is None:
            fails.append(f"iota({name}) fails without an explicit witness")
    ekp_cases = [("projective(0,2,2)", projective(0, 2, 2)),
                 ("m_module(4,2,2)", m_module(4, 2, 2)),
                 ("m_module(3,2,3)", m_module(3, 2, 3))]
    for name, base in ekp_cases:
        pre = check_ekp(base, "auto")
        if not pre.ok:
            fails.append(f"{name} is not in the equal-kernels class before "
                         "embedding; bad test corpus")
            continue
        emb = dual_rep(iota(dual_rep(base)))
        if emb.dims[-1] != 0:
            fails.append(f"sink embedding of {name} has nonzero last layer")
        rep = check_ekp(emb, "auto")
        if rep.verdict != "fails":
            fails.append(f"sink-embedded {name} still reports {rep.verdict}")
        elif rep.witness is None or rep.witness.coords is None:
            fails.append(f"sink-embedded {name} fails without an explicit witness")
    return fails, []


# -- criterion 13: the per-module invariant battery --------------------------------

def _random_mat(fld, rng: Random, rows: int, cols: int) -> Mat:
    if fld is QQ:
        entries = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                    for _ in range(cols)] for _ in range(rows)]
    else:
        entries = [[fld.from_int(rng.randint(0, fld.p - 1))
                    for _ in range(cols)] for _ in range(rows)]
    return Mat(fld, rows, cols, entries)


def _battery_exact_linear_algebra():
    fails = []
    rng = Random(20240817)
    for fld, fname in ((QQ, "Q"), (GF(5), "F5")):
        for trial in range(200):
            rows, cols = rng.randint(0, 5), rng.randint(0, 5)
            m = _random_mat(fld, rng, rows, cols)
            rk = rank(m)
            if rk != rank(m.transpose()):
                fails.append(f"rank/transpose disagree over {fname}, trial {trial}")
            ker = kernel_basis(m)
            if ker.cols != cols - rk:
                fails.append(f"rank-nullity fails over {fname}, trial {trial}")
            prod = m @ ker
            if any(not fld.is_zero(v) for row in prod.entries for v in row):
                fails.append(f"m @ kernel_basis(m) != 0 over {fname}, trial {trial}")
    return fails


def _random_quadric(rng: Random, nv: int) -> MultiPoly | None:
    terms = {}
    for e in monomials_of_degree(nv, 2):
        c = rng.randint(-2, 2)
        if c:
            terms[e] = Fraction(c)
    return MultiPoly(nv, terms) if terms else None


def _battery_zero_locus_oracles():
    """Both answers of the staircase certificate are definite statements
    about the zero set over the algebraic closure in characteristic zero,
    so the oracles are (a) ideals planted to vanish at a known rational
    point must never certify, (b) ideals containing a pure power of every
    variable must always certify, and (c) a certified ideal has no common
    rational zero of small height."""
    fails = []
    rng = Random(97)
    for trial in range(40):
        nv = rng.choice((2, 3))
        # (a) plant a nonzero rational zero: g - (g(v)/h(v)) h kills v
        v = [0] * nv
        while all(x == 0 for x in v):
            v = [rng.randint(-2, 2) for _ in range(nv)]
        h = None
        while h is None or h.evaluate(v) == 0:
            h = _random_quadric(rng, nv)
        hv = h.evaluate(v)
        planted = []
        for _ in range(rng.randint(1, 4)):
            g = _random_quadric(rng, nv)
            if g is None:
                continue
            adjusted = g + h.scale(-g.evaluate(v) / hv)
            if not adjusted.is_zero():
                planted.append(adjusted)
        if planted:
            try:
                if zero_locus_is_origin(planted, 4000):
                    fails.append(f"certified an ideal planted to vanish at "
                                 f"{tuple(v)} (trial {trial})")
            except Exception:
                pass  # budget exhaustion is an honest non-answer
        # (b) pure powers of every variable force the origin
        gens = [MultiPoly(nv, {tuple(2 if k == i else 0 for k in range(nv)):
                               Fraction(1)}) for i in range(nv)]
        extra = _random_quadric(rng, nv)
        if extra is not None:
            gens.append(extra)
        try:
            if not zero_locus_is_origin(gens, 4000):
                fails.append(f"refused an ideal containing every pure square "
                             f"(trial {trial})")
        except Exception as exc:
            fails.append(f"budget exhausted on a pure-square ideal: {exc}")
        # (c) certified random ideals have no small rational projective zero
        rand = [g for g in (_random_quadric(rng, nv) for _ in range(3))
                if g is not None]
        if not rand:
            continue
        try:
            cert = zero_locus_is_origin(rand, 4000)
        except Exception:
            continue
        if not cert:
            continue
        for pt in _small_proj_points(nv):
            if all(g.evaluate(pt) == 0 for g in rand):
                fails.append(f"certificate contradicts the rational zero "
                             f"{pt} (trial {trial})")
                break
    return fails


def _small_proj_points(nv: int, height: int = 2):
    """Projective rational points with first nonzero coordinate 1 and
    integer coordinates of absolute value <= height."""
    span = range(-height, height + 1)

    def rec(prefix, started):
        if len(prefix) == nv:
            if started:
                yield tuple(prefix)
            return
        if not started:
            yield from rec(prefix + [0], False)
            yield from rec(prefix + [1], True)
        else:
            for x in span:
                yield from rec(prefix + [x], True)
    yield from rec([], False)


def _int_mat(rows_of_ints) -> Mat:
    rows = len(rows_of_ints)
    cols = len(rows_of_ints[0]) if rows else 0
    return Mat(QQ, rows, cols,
               [[Fraction(v) for v in row] for row in rows_of_ints])


def _exact_pencil_drop(ma: Mat, mb: Mat, t: int):
    """First point of P^1 over the sweep primes whose exact lift drops rank."""
    for p in (5, 7, 11, 13):
        for al, be in [(1, x) for x in range(p)] + [(0, 1)]:
            comb_ = Mat(QQ, ma.rows, ma.cols,
                        [[Fraction(al) * ma.entries[i][j]
                          + Fraction(be) * mb.entries[i][j]
                          for j in range(ma.cols)] for i in range(ma.rows)])
            if rank(comb_) < t:
                return (al, be)
    return None


def _battery_pencil_vs_sweep():
    fails = []
    rng = Random(4242)
    # square pencils: a nonzero determinant form in two variables always
    # factors into linear forms over the closure, so some point drops rank,
    # and a zero determinant form drops rank everywhere; either way the
    # full-rank certificate must come back negative.
    for trial in range(12):
        t = rng.randint(1, 4)
        ma = _int_mat([[rng.randint(-4, 4) for _ in range(t)] for _ in range(t)])
        mb = _int_mat([[rng.randint(-4, 4) for _ in range(t)] for _ in range(t)])
        if pencil_full_rank_r2(ma, mb, t):
            fails.append(f"square pencil trial {trial} certified full rank")
    # nonsquare pencils with a planted rational drop at (1, 1): the
    # certificate must be negative
    for trial in range(12):
        rows = rng.randint(2, 3)
        cols = rows + rng.randint(1, 2)
        a = [[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)]
        b = [[-a[i][j] if i == 0 else rng.randint(-4, 4)
              for j in range(cols)] for i in range(rows)]
        ma, mb = _int_mat(a), _int_mat(b)
        if pencil_full_rank_r2(ma, mb, rows):
            fails.append(f"planted-drop pencil trial {trial} certified full rank")
    # random nonsquare pencils: a positive certificate must survive the
    # exact lifted sweep over every prime
    for trial in range(12):
        rows = rng.randint(1, 3)
        cols = rows + rng.randint(1, 2)
        ma = _int_mat([[rng.randint(-4, 4) for _ in range(cols)]
                       for _ in range(rows)])
        mb = _int_mat([[rng.randint(-4, 4) for _ in range(cols)]
                       for _ in range(rows)])
        if pencil_full_rank_r2(ma, mb, rows):
            drop = _exact_pencil_drop(ma, mb, rows)
            if drop is not None:
                fails.append(f"pencil trial {trial}: certified full rank but "
                             f"the exact sweep drops at {drop}")
    return fails


def _battery_path_combinatorics():
    fails = []
    from math import comb as _comb
    for r in (2, 3, 4):
        for d in range(0, 5):
            got = len(monomials_of_degree(r, d))
            if got != _comb(d + r - 1, r - 1):
                fails.append(f"path count wrong at r={r}, degree {d}")
    # multiplication of monomials is associative: exponent addition
    for r in (2, 3):
        monos = monomials_of_degree(r, 1) + monomials_of_degree(r, 2)
        for e1 in monos:
            for e2 in monos:
                for e3 in monomials_of_degree(r, 1):
                    left = tuple(x + y for x, y in zip(tuple(x + y for x, y in zip(e1, e2)), e3))
                    right = tuple(x + y for x, y in zip(e1, tuple(x + y for x, y in zip(e2, e3))))
                    if left != right:
                        fails.append(f"path concatenation not associative at r={r}")
    for n in (2, 3, 4):
        for r in (2, 3):
            c = cartan_matrix(AlgebraData(n, r))
            for i in range(n):
                if c.entries[i][i] != 1:
                    fails.append(f"cartan diagonal not unit at ({n},{r})")
                for j in range(i + 1, n):
                    if not QQ.is_zero(c.entries[i][j]):
                        fails.append(f"cartan not lower triangular at ({n},{r})")
    return fails


def _module_corpus() -> list[tuple[str, Rep]]:
    corpus = []
    for n in (2, 3, 4):
        for r in (2, 3):
            for i in range(n):
                corpus.append((f"simple({i},{n},{r})", simple(i, n, r)))
                corpus.append((f"projective({i},{n},{r})", projective(i, n, r)))
                corpus.append((f"injective({i},{n},{r})", injective(i, n, r)))
            for m in range(n, n + 4):
                corpus.append((f"m_module({m},{n},{r})", m_module(m, n, r)))
                corpus.append((f"w_module({m},{n},{r})", w_module(m, n, r)))
    return corpus


def _battery_representations():
    fails = []
    corpus = _module_corpus()
    for name, m in corpus:
        try:
            validate(m)
        except Exception as exc:
            fails.append(f"{name} fails validate(): {exc}")
    # Yoneda: dim Hom(P(i), M) = dims[i]
    for name, m in [("m_module(5,3,2)", m_module(5, 3, 2)),
                    ("w_module(5,3,2)", w_module(5, 3, 2)),
                    ("simple(1,3,2)", simple(1, 3, 2)),
                    ("injective(1,3,2)", injective(1, 3, 2)),
                    ("m_module(4,2,3)", m_module(4, 2, 3))]:
        n = m.algebra.n
        r = m.algebra.r
        for i in range(n):
            d = hom_dim(projective(i, n, r), m)
            if d != m.dims[i]:
                fails.append(f"hom(projective({i}), {name}) = {d} != {m.dims[i]}")
    # iso reflexive/symmetric and dims agreement
    sample = [m_module(4, 3, 2), w_module(4, 3, 2), projective(1, 3, 2)]
    for m in sample:
        if not iso(m, m).value:
            fails.append("iso not reflexive")
    a, b = m_module(4, 3, 2), dual_rep(w_module(4, 3, 2))
    ab, ba = iso(a, b), iso(b, a)
    if ab.value != ba.value:
        fails.append("iso not symmetric on the corpus pair")
    # decompose then recombine
    for name, m in [("P(0)+S(1) over (3,2)",
                     direct_sum(projective(0, 3, 2), simple(1, 3, 2))),
                    ("w(4,2,2)+w(3,2,2)",
                     direct_sum(w_module(4, 2, 2), w_module(3, 2, 2)))]:
        parts = decompose(m)
        back = None
        for part, mult in parts:
            for _ in range(mult):
                back = part if back is None else direct_sum(back, part)
        if back is None or not iso(back, m).value:
            fails.append(f"decompose does not recombine for {name}")
    return fails


def _battery_construct():
    fails = []
    # dual is an involution and swaps the two families
    for n in (2, 3):
        for r in (2, 3):
            for m in range(n, n + 3):
                w = w_module(m, n, r)
                if not iso(dual_rep(dual_rep(w)), w).value:
                    fails.append(f"dual not involutive on w({m},{n},{r})")
                if not iso(dual_rep(m_module(m, n, r)), w).value:
                    fails.append(f"dual(m({m},{n},{r})) is not w({m},{n},{r})")
    for m in range(2, 7):
        w = w_module(m, 2, 2)
        if w.dims != (m, m - 1):
            fails.append(f"w_module({m},2,2) dims {w.dims} != ({m},{m - 1})")
        al = as_alpha(QQ, (1, 1))
        op = alpha_operator(w, al)
        if rank(op) != w.dims[1]:
            fails.append(f"w_module({m},2,2) layer map not surjective at (1,1)")
    return fails


def _battery_jordan():
    fails = []
    w = w_module(5, 3, 2)
    fld = w.field
    for coords in [(1, 1), (1, 2), (3, 1), (2, 5)]:
        al = as_alpha(fld, coords)
        jt = jordan_type(w, al)
        if sum(jt) != sum(w.dims):
            fails.append(f"jordan type at {coords} does not sum to the dimension")
        ranks = [j_rank(w, al, j) for j in (1, 2)]
        if ranks != [7, 3]:
            fails.append(f"j-ranks at {coords} = {ranks} != [7, 3]")
    # equal-images corpus: image dimension of the alpha operator
    for name, m in [("w_module(5,3,2)", w), ("w_module(4,2,2)", w_module(4, 2, 2)),
                    ("injective(2,3,2)", injective(2, 3, 2))]:
        expect = sum(m.dims[1:])
        for coords in [(1, 1), (1, 4), (5, 2)]:
            al = as_alpha(m.field, coords)
            if rank(alpha_operator(m, al)) != expect:
                fails.append(f"{name}: image dimension at {coords} != "
                             "sum of higher layers")
    # duality exchanges the two verdicts
    for name, m in [("m_module(5,3,2)", m_module(5, 3, 2)),
                    ("simple(1,3,2)", simple(1, 3, 2)),
                    ("w_module(4,3,2)", w_module(4, 3, 2))]:
        if check_eip(m, "auto").verdict != check_ekp(dual_rep(m), "auto").verdict:
            fails.append(f"duality does not exchange verdicts on {name}")
    # sweep and exact certificates agree where both complete
    for name, m in [("w_module(5,3,2)", w), ("m_module(4,3,2)", m_module(4, 3, 2)),
                    ("w_module(6,2,2)", w_module(6, 2, 2))]:
        exact_rep = check_cjt(m, "exact-r2")
        sweep_rep = check_cjt(m, "sweep")
        if exact_rep.ok != sweep_rep.ok:
            fails.append(f"sweep disagrees with the exact certificate on {name}")
        if exact_rep.rank_data != sweep_rep.rank_data:
            fails.append(f"sweep rank data disagrees with exact on {name}")
    return fails


def _battery_translates():
    fails = []
    for n in (2, 3, 4):
        for r in (2, 3):
            for i in range(n):
                if not tau(projective(i, n, r)).is_zero_rep:
                    fails.append(f"tau(projective({i},{n},{r})) nonzero")
                if not tau_inverse(injective(i, n, r)).is_zero_rep:
                    fails.append(f"tau_inverse(injective({i},{n},{r})) nonzero")
    # round trips on indecomposable non-projective / non-injective modules
    for name, m in [("m_module(4,3,2)", m_module(4, 3, 2)),
                    ("w_module(5,3,2)", w_module(5, 3, 2)),
                    ("simple(1,3,2)", simple(1, 3, 2)),
                    ("w_module(4,2,3)", w_module(4, 2, 3))]:
        if not iso(tau_inverse(tau(m)), m).value:
            fails.append(f"tau_inverse(tau({name})) !~ {name}")
        if not iso(tau(tau_inverse(m)), m).value:
            fails.append(f"tau(tau_inverse({name})) !~ {name}")
    # translate of the m-family through the double duality (two-arrow case)
    for (m, n) in [(5, 3), (6, 3), (6, 4)]:
        left = tau(m_module(m, n, 2))
        right = w_module(m - n, 2, 2)
        for _ in range(n - 2):
            right = iota(right)
        right = dual_rep(right)
        if not iso(left, right).value:
            fails.append(f"translate identity fails at (m={m},n={n})")
        if left.dims[n - 1] != 0:
            fails.append(f"translate of m({m},{n},2) has nonzero last layer")
    # two-vertex dimension vectors follow the lattice transform
    c = cartan_matrix(AlgebraData(2, 2))
    cinv = [[1, 0], [-2, 1]]
    for m in (4, 5, 6):
        w = w_module(m, 2, 2)
        d = w.dims
        # phi = -C^T C^{-1} with columns of C the projective vectors
        ct_cinv = [[sum(c.entries[k][i] * cinv[k][j] for k in range(2))
                    for j in range(2)] for i in range(2)]
        phi_d = tuple(-sum(ct_cinv[i][j] * d[j] for j in range(2))
                      for i in range(2))
        if tau(w).dims != phi_d:
            fails.append(f"two-vertex translate dims {tau(w).dims} != lattice "
                         f"transform {phi_d} at m={m}")
    return fails


def _battery_cli():
    fails = []
    from .cli import main as cli_main
    corpus = _module_corpus()
    count = 0
    for name, m in corpus:
        text = dumps_rep(m)
        back = loads_rep(text)
        if back.dims != m.dims or dumps_rep(back) != text:
            fails.append(f"serialization round trip breaks on {name}")
        count += 1
    for n, r, p in ((3, 2, 5), (2, 3, 7)):
        m = w_module(n + 1, n, r, field=GF(p))
        text = dumps_rep(m)
        if dumps_rep(loads_rep(text)) != text:
            fails.append(f"serialization round trip breaks over F_{p}")
        count += 1
    if count < 100:
        fails.append(f"serialization corpus has only {count} modules")

    import contextlib
    import io

    def run(argv):
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main(argv)
        return code, out.getvalue(), err.getvalue()

    with tempfile.TemporaryDirectory() as tmp:
        wpath = os.path.join(tmp, "w.json")
        code, out, _ = run(["construct", "w", "--m", "5", "--n", "3", "--r", "2",
                            "--out", wpath])
        if code != 0 or out.strip() != "5 4 3":
            fails.append(f"construct exit/echo wrong: {code}, {out!r}")
        code, out, _ = run(["check", "eip", "--file", wpath])
        if code != 0:
            fails.append(f"check eip on the w-module exited {code}")
        try:
            json.loads(out)
        except json.JSONDecodeError:
            fails.append("check output is not valid JSON")
        spath = os.path.join(tmp, "s.json")
        code, out, _ = run(["construct", "simple", "--i", "1", "--n", "3",
                            "--r", "2", "--out", spath])
        code, out, _ = run(["check", "eip", "--file", spath])
        if code != 1:
            fails.append(f"check eip on a failing module exited {code} != 1")
        code, out, _ = run(["construct", "m", "--n", "3", "--r", "2"])
        if code != 2:
            fails.append(f"construct without --m exited {code} != 2")
        # budget exhaustion: a module whose denominators collide with every
        # default sweep prime, checked under an explicit sweep strategy
        w = w_module(4, 3, 2)
        scaled = Rep(w.algebra, w.field, w.dims,
                     tuple(tuple(blk.scale(Fraction(1, 385)) for blk in row)
                           for row in w.maps))
        bpath = os.path.join(tmp, "b.json")
        with open(bpath, "w", encoding="utf-8") as fh:
            fh.write(dumps_rep(scaled))
        code, out, _ = run(["check", "cjt", "--file", bpath,
                            "--strategy", "sweep"])
        if code != 3:
            fails.append(f"budget exhaustion exited {code} != 3")
        code, out, _ = run(["component", "--n", "2", "--r", "2", "--m", "4",
                            "--radius", "1", "--quasi-length", "1",
                            "--format", "json"])
        if code != 0:
            fails.append(f"component exited {code}")
        else:
            try:
                json.loads(out)
            except json.JSONDecodeError:
                fails.append("component JSON output is not valid JSON")
        code, out, _ = run(["component", "--n", "2", "--r", "2", "--m", "4",
                            "--radius", "1", "--format", "dot"])
        if code != 0 or out.count("{") != out.count("}") or "digraph" not in out:
            fails.append("component DOT output malformed")
    return fails


def _crit_13_invariants(opts: SuiteOptions):
    fails = []
    notes = []
    for label, battery in (
        ("exact linear algebra", _battery_exact_linear_algebra),
        ("zero locus oracle battery", _battery_zero_locus_oracles),
        ("pencil vs verified sweep", _battery_pencil_vs_sweep),
        ("path combinatorics", _battery_path_combinatorics),
        ("representation toolkit", _battery_representations),
        ("module constructors", _battery_construct),
        ("rank and Jordan deciders", _battery_jordan),
        ("translates", _battery_translates),
        ("serialization and command line", _battery_cli),
    ):
        sub = battery()
        if sub:
            fails.extend(f"[{label}] {f}" for f in sub)
        else:
            notes.append(f"{label}: green")
    return fails, notes


CRITERIA = (
    (1, "figure module golden matrices", 1.0, _crit_1_figure),
    (2, "source projective identification", 5.0, _crit_2_source_projective),
    (3, "radical of the source projective", 5.0, _crit_3_radical),
    (4, "translate hits the vertex-1 simple", 10.0, _crit_4_translate_simple),
    (5, "embedding/translate identities", 60.0, _crit_5_embedding_translate),
    (6, "two-vertex almost split structure", 30.0, _crit_6_two_vertex_sequences),
    (7, "membership grid", 180.0, _crit_7_membership_grid),
    (8, "component windows", 180.0, _crit_8_windows),
    (9, "window Jordan types", None, _crit_9_window_jordan),
    (10, "hom vanishing", 30.0, _crit_10_hom_vanishing),
    (11, "duality/translate compatibility", 30.0, _crit_11_duality_translate),
    (12, "embedding falsification", 10.0, _crit_12_embedding_falsification),
    (13, "invariant battery", 300.0, _crit_13_invariants),
)

_QUICK = (1, 2, 3, 4, 5, 6)


def run_criterion(number: int, opts: SuiteOptions | None = None) -> ClaimResult:
    opts = opts or SuiteOptions()
    for num, name, budget, func in CRITERIA:
        if num != number:
            continue
        start = time.monotonic()
        failures, notes = func(opts)
        seconds = time.monotonic() - start
        ok = not failures
        if budget is not None and seconds > budget:
            ok = False
            failures = list(failures) + [
                f"exceeded the {budget:.0f}s time budget ({seconds:.1f}s)"]
        return ClaimResult(number=num, name=name, ok=ok, seconds=seconds,
                           budget=budget, failures=tuple(failures),
                           notes=tuple(notes))
    raise ValueError(f"no criterion numbered {number}")


def run_suite(suite: str = "paper", max_m: int | None = None,
              max_n: int | None = None, progress=None) -> list[ClaimResult]:
    if suite not in ("paper", "quick"):
        raise ValueError(f"unknown suite {suite!r}")
    numbers = _QUICK if suite == "quick" else tuple(num for num, *_ in CRITERIA)
    opts = SuiteOptions(max_m=max_m, max_n=max_n)
    results = []
    for num in numbers:
        if progress is not None:
            print(f"running criterion {num}...", file=progress, flush=True)
        results.append(run_criterion(num, opts))
    return results


def format_table(results: list[ClaimResult]) -> str:
    lines = []
    width = max(len(res.name) for res in results) + 2
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        budget = f"/{res.budget:.0f}s" if res.budget is not None else ""
        lines.append(f"criterion {res.number:>2}  {status}  "
                     f"{res.name:<{width}}{res.seconds:8.2f}s{budget}")
        for failure in res.failures:
            lines.append(f"    failure: {failure}")
        for note in res.notes:
            lines.append(f"    note: {note}")
    passed = sum(1 for res in results if res.ok)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
