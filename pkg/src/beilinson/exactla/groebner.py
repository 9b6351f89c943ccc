"""Minimal Buchberger engine deciding whether a homogeneous zero locus is {0}.

Normal pair selection, product and chain criteria only, budget-limited: every
S-polynomial reduction counts against an explicit budget and blowing through
it raises GroebnerBudgetExceeded so callers can fall back to sweeps.
"""

from __future__ import annotations

from .multipoly import MultiPoly, degrevlex_key

DEFAULT_SPOLY_BUDGET = 4000


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when the S-polynomial budget is exhausted; caller may fall back."""

    def __init__(self, budget: int):
        super().__init__(f"S-polynomial budget of {budget} exhausted")
        self.budget = budget


def _lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _coprime(e1, e2) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(e1, e2))


def normal_form(p: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full multivariate division remainder of p against basis (all monic)."""
    lts = [g.lt()[0] for g in basis]
    remainder_terms: dict = {}
    work = p
    while not work.is_zero():
        e, c = work.lt()
        reduced = False
        for g, lte in zip(basis, lts):
            if _divides(lte, e):
                shift = tuple(a - b for a, b in zip(e, lte))
                work = work - g.term_mul(shift, c)
                reduced = True
                break
        if not reduced:
            remainder_terms[e] = remainder_terms.get(e, 0) + c
            work = work - MultiPoly(p.nvars, {e: c})
    return MultiPoly(p.nvars, remainder_terms)


def _spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ef, cf = f.lt()
    eg, cg = g.lt()
    l = _lcm(ef, eg)
    return (f.term_mul(tuple(a - b for a, b in zip(l, ef)), 1 / cf)
            - g.term_mul(tuple(a - b for a, b in zip(l, eg)), 1 / cg))


def interreduce(gens: list[MultiPoly]) -> list[MultiPoly]:
    """One reduction pass: replace each generator by its remainder against
    the others, dropping zeros. The span of the ideal is unchanged."""
    monic = [g.monic() for g in gens if not g.is_zero()]
    out: list[MultiPoly] = []
    for idx, g in enumerate(monic):
        others = out + monic[idx + 1:]
        rem = normal_form(g, others) if others else g
        if not rem.is_zero():
            out.append(rem.monic())
    return out


def buchberger(gens: list[MultiPoly], spoly_budget: int = DEFAULT_SPOLY_BUDGET,
               stop_when=None) -> list[MultiPoly]:
    """Groebner basis (degrevlex, monic, inter-reduced leading terms).

    When ``stop_when`` is given it is called with the partial basis after
    every new element; a true return stops early and yields the partial
    basis.  Every partial-basis element lies in the ideal, so callers may
    draw membership conclusions from it, but only a completed run is a
    Groebner basis."""
    basis = [g.monic() for g in gens if not g.is_zero()]
    if not basis:
        return []
    nvars = basis[0].nvars
    if any(g.nvars != nvars for g in basis):
        raise ValueError("mixed variable counts")

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    reductions = 0
    while pairs:
        # normal selection: smallest lcm in degrevlex
        best = min(pairs, key=lambda ij: degrevlex_key(
            _lcm(basis[ij[0]].lt()[0], basis[ij[1]].lt()[0])))
        pairs.discard(best)
        i, j = best
        ei, ej = basis[i].lt()[0], basis[j].lt()[0]
        if _coprime(ei, ej):
            continue  # product criterion
        l = _lcm(ei, ej)
        # chain criterion: some k with lt(k) | lcm and both pairs retired
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(basis[k].lt()[0], l):
                pik = (max(i, k), min(i, k))
                pjk = (max(j, k), min(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        reductions += 1
        if reductions > spoly_budget:
            raise GroebnerBudgetExceeded(spoly_budget)
        rem = normal_form(_spoly(basis[i], basis[j]), basis)
        if rem.is_zero():
            continue
        rem = rem.monic()
        new_index = len(basis)
        basis.append(rem)
        for k in range(new_index):
            pairs.add((new_index, k))
        if stop_when is not None and stop_when(basis):
            return basis
    # prune members whose lt is divisible by another lt (minimal basis)
    keep = []
    for idx, g in enumerate(basis):
        e = g.lt()[0]
        if any(k != idx and _divides(basis[k].lt()[0], e)
               and (degrevlex_key(basis[k].lt()[0]) != degrevlex_key(e) or k < idx)
               for k in range(len(basis))):
            continue
        keep.append(g)
    return keep


def zero_locus_is_origin(gens: list[MultiPoly],
                         spoly_budget: int = DEFAULT_SPOLY_BUDGET) -> bool:
    """True iff the projective zero set of the homogeneous gens is empty,
    i.e. the affine zero locus is exactly the origin.

    Decided by a Groebner staircase check: the quotient by the ideal is
    finite-dimensional iff every variable has a pure power among the leading
    terms. Raises GroebnerBudgetExceeded when the budget runs out and
    ValueError on inhomogeneous input.
    """
    gens = [g for g in gens if g is not None]
    if not gens:
        raise ValueError("empty generator list")
    nvars = gens[0].nvars
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("zero_locus_is_origin needs homogeneous generators")
    live = [g.monic() for g in gens if not g.is_zero()]
    if not live:
        return False  # zero ideal: the whole space vanishes
    if any(g.total_degree() == 0 for g in live):
        return True  # unit ideal

    def uncovered(basis: list[MultiPoly], vars_left: set[int]) -> set[int]:
        """Variables whose pure power is NOT yet a proven ideal member.

        Reduction to zero against any list of ideal members proves
        membership, so a successful division here is sound even when the
        list is not a Groebner basis."""
        dmax = max(g.total_degree() for g in basis)
        still = set()
        for i in vars_left:
            hit = False
            for d in (dmax, dmax + 1):
                e = tuple(d if k == i else 0 for k in range(nvars))
                if normal_form(MultiPoly(nvars, {e: 1}), basis).is_zero():
                    hit = True
                    break
            if not hit:
                still.add(i)
        return still

    remaining = uncovered(live, set(range(nvars)))
    if not remaining:
        return True
    live = interreduce(live)
    if any(g.total_degree() == 0 for g in live):
        return True
    remaining = uncovered(live, remaining)
    if not remaining:
        return True

    state = {"vars": remaining, "count": 0}

    def stop(basis: list[MultiPoly]) -> bool:
        # Retest membership only when a new leading term touches a missing
        # variable's axis, to keep the callback cheap.
        e = basis[-1].lt()[0]
        pure = [i for i in state["vars"]
                if e[i] > 0 and all(e[k] == 0 for k in range(nvars) if k != i)]
        state["count"] += 1
        if not pure and state["count"] % 16 != 0:
            return False
        state["vars"] = uncovered(basis, state["vars"])
        return not state["vars"]

    basis = buchberger(live, spoly_budget, stop_when=stop)
    if not state["vars"]:
        return True
    # completed Groebner basis: the staircase decides exactly
    for i in range(nvars):
        found = False
        for g in basis:
            e = g.lt()[0]
            if e[i] > 0 and all(e[k] == 0 for k in range(nvars) if k != i):
                found = True
                break
        if not found:
            return False
    return True
