"""Exact coefficient fields.

Two variants are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields F_p (elements are Python ints reduced to ``[0, p)``).
A field object carries the variant tag; scalars themselves are plain
immutable Python values so that the polynomial kernel stays cheap.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003


class FieldError(ValueError):
    pass


class Field:
    """Common interface. ``norm`` brings a raw ring value back into canonical form."""

    name = "field"
    characteristic = 0
    zero = 0
    one = 1

    def convert(self, x):
        raise NotImplementedError

    def norm(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def is_zero(self, x) -> bool:
        return x == 0

    def random_element(self, rng, nonzero: bool = False):
        raise NotImplementedError

    def to_str(self, x) -> str:
        raise NotImplementedError

    def descriptor(self) -> str:
        return self.name


class RationalField(Field):
    name = "QQ"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldError(f"cannot convert {x!r} to a rational")

    def norm(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def random_element(self, rng, nonzero=False):
        while True:
            v = Fraction(rng.randint(-9, 9))
            if v or not nonzero:
                return v

    def to_str(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def convert(self, x):
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        raise FieldError(f"cannot convert {x!r} to GF({p})")

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def random_element(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.p)

    def signed(self, x) -> int:
        """Symmetric representative in (-p/2, p/2]."""
        x %= self.p
        return x - self.p if x > self.p // 2 else x

    def to_str(self, x) -> str:
        return str(self.signed(x))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(s: str) -> Field:
    """Parse ``QQ`` / ``Q`` / ``GF(p)`` / ``p`` (an integer prime)."""
    s = s.strip()
    if s.upper() in ("QQ", "Q"):
        return QQ
    if s.upper().startswith("GF(") and s.endswith(")"):
        return PrimeField(int(s[3:-1]))
    if s.isdigit():
        return PrimeField(int(s))
    raise FieldError(f"unknown field descriptor {s!r}")
