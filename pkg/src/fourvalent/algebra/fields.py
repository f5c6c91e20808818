"""Exact coefficient fields: the rationals and prime fields F_p.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
elements are :class:`Mod` instances carrying their modulus, and arithmetic
between residues of different moduli raises :class:`FieldMismatchError`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterator, Union

MAX_MODULUS = 2**31


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``; immutable and hashable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Mod is immutable")

    def _coerce(self, other) -> int | None:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(
                    f"cannot combine residues mod {self.p} and mod {other.p}"
                )
            return other.value
        if isinstance(other, bool):
            return int(other)
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatchError("cannot combine a rational with a residue")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.value == 0:
            raise ZeroDivisionError("division by zero")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __lt__(self, other):
        if not isinstance(other, Mod) or other.p != self.p:
            return NotImplemented
        return self.value < other.value

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


FieldElement = Union[Fraction, Mod]


class RationalField:
    """The field Q, realised by :class:`fractions.Fraction`."""

    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Mod):
            raise FieldMismatchError("cannot coerce a residue into Q")
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "q"


class PrimeField:
    """The prime field F_p for a prime ``p < 2**31``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < MAX_MODULUS or not _is_prime(p):
            raise ValueError(f"modulus must be a prime below 2^31, got {p!r}")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatchError(f"residue mod {x.p} is not in F_{self.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        if isinstance(x, int):
            return Mod(x, self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self) -> Mod:
        return Mod(0, self.p)

    @property
    def one(self) -> Mod:
        return Mod(1, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.p == self.p

    def elements(self) -> Iterator[Mod]:
        for v in range(self.p):
            yield Mod(v, self.p)

    def units(self) -> Iterator[Mod]:
        for v in range(1, self.p):
            yield Mod(v, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __str__(self):
        return f"fp:{self.p}"


Field = Union[RationalField, PrimeField]

QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(text: str) -> Field:
    """Parse ``"q"`` or ``"fp:P"``."""
    t = text.strip().lower()
    if t in ("q", "qq"):
        return QQ
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ValueError(f"bad field {text!r}") from None
        return GF(p)
    raise ValueError(f"bad field {text!r}; expected 'q' or 'fp:P'")


def field_of(x) -> Field:
    if isinstance(x, Mod):
        return GF(x.p)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise TypeError(f"{x!r} is not a field element")


def common_field(values) -> Field:
    """The single field shared by ``values``; plain ints adapt to any field."""
    field = None
    for v in values:
        if isinstance(v, int) and not isinstance(v, bool):
            continue
        f = field_of(v)
        if field is None:
            field = f
        elif f != field:
            raise FieldMismatchError(f"entries from {field!r} and {f!r}")
    return QQ if field is None else field


def inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; zero raises ``ZeroDivisionError``."""
    if isinstance(x, Mod):
        return x.inverse()
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / x


def format_element(x: FieldElement) -> str:
    """Rationals as ``p/q`` (or ``p``), residues as their integer value."""
    if isinstance(x, Mod):
        return str(x.value)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
