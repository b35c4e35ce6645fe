"""Exact scalar arithmetic over a prime field F_p or the rationals.

Scalars are plain Python values: canonical integers in [0, p) for the
prime case, reduced ``fractions.Fraction`` instances for the rational
case.  A FieldSpec bundles the arithmetic so matrix code can stay
field-agnostic.  Floating point never appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

__all__ = ["FieldSpec"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: ``kind`` is "prime" (with modulus ``p``) or "rational"."""

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "prime":
            p = self.p
            # bool is an int subclass; never a modulus
            if not isinstance(p, int) or isinstance(p, bool):
                raise ValueError(f"prime field needs an integer modulus, got {p!r}")
            if not 2 <= p < 2**31:
                raise ValueError(f"modulus out of range [2, 2^31): {p}")
            if not _is_prime(p):
                raise ValueError(f"modulus is not prime: {p}")
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind: {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def __str__(self) -> str:
        return f"F_{self.p}" if self.kind == "prime" else "Q"

    # -- scalar arithmetic -------------------------------------------------

    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def coerce(self, x):
        """Canonicalize a numeric scalar; rejects bools, floats and junk."""
        if isinstance(x, bool):
            raise ValueError(f"not a scalar: {x!r}")
        if self.kind == "prime":
            if not isinstance(x, int):
                raise ValueError(f"not an integer scalar: {x!r}")
            return x % self.p
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ValueError(f"not a rational scalar: {x!r}")

    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        return a - b

    def mul(self, a, b):
        if self.kind == "prime":
            return (a * b) % self.p
        return a * b

    def neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        return -a

    def inv(self, a):
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.kind == "prime":
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, -1, self.p)
        return Fraction(1) / a
