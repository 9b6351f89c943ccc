"""Exact coefficient fields: the rationals and prime fields F_p (p >= 5).

Elements are plain Python objects (Fraction for Q, int in 0..p-1 for F_p);
the field object supplies the arithmetic so matrix code stays field-generic.
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """Arbitrary-precision rational arithmetic via fractions.Fraction."""

    kind = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return Fraction(n)

    def coerce(self, x):
        """Accept int, Fraction or 'a/b' string."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def to_str(self, a) -> str:
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with elements stored as ints in 0..p-1. Requires prime p >= 5."""

    kind = "Fp"

    def __init__(self, p: int):
        if p < 5 or not _is_prime(p):
            raise ValueError(f"prime field needs a prime p >= 5, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.reduce_fraction(x)
        if isinstance(x, str):
            return self.reduce_fraction(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def reduce_fraction(self, q: Fraction):
        """Reduce a rational mod p; the denominator must be a unit."""
        if q.denominator % self.p == 0:
            raise BadReduction(f"denominator {q.denominator} not invertible mod {self.p}")
        return (q.numerator * self.inv(q.denominator % self.p)) % self.p

    def to_str(self, a) -> str:
        return str(a % self.p)

    def __repr__(self):
        return f"F_{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class BadReduction(ArithmeticError):
    """A rational entry has no image in F_p (denominator divisible by p)."""


QQ = RationalField()

_fp_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _fp_cache:
        _fp_cache[p] = PrimeField(p)
    return _fp_cache[p]


# FieldSpec is the union accepted by every matrix/rep operation.
FieldSpec = RationalField | PrimeField
