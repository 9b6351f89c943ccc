"""Multivariate polynomials over Q with the degrevlex order (x1 highest)."""

from __future__ import annotations

from fractions import Fraction


def degrevlex_key(exps: tuple[int, ...]):
    """Sort key: higher key = larger monomial in degrevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    """Polynomial as {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c != 0:
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {})

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return MultiPoly(nvars, {tuple(exps): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def lt(self):
        """(exponents, coefficient) of the degrevlex-leading term."""
        if not self.terms:
            raise ValueError("leading term of 0")
        e = max(self.terms, key=degrevlex_key)
        return e, self.terms[e]

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, t)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) - c
        return MultiPoly(self.nvars, t)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def term_mul(self, exps: tuple[int, ...], coeff: Fraction) -> "MultiPoly":
        return MultiPoly(self.nvars,
                         {tuple(a + b for a, b in zip(e, exps)): c * coeff
                          for e, c in self.terms.items()})

    def monic(self) -> "MultiPoly":
        _, lc = self.lt()
        return self if lc == 1 else self.scale(1 / lc)

    def evaluate(self, point) -> Fraction:
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v *= x
            acc += v
        return acc

    def canonical(self):
        return tuple(sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0])))

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.canonical()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True):
            mono = "*".join(f"x{i+1}^{k}" if k > 1 else f"x{i+1}"
                            for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)
