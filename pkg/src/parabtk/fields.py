"""Exact base fields: the rationals and prime fields.

Every computation in this package is exact.  Field elements are either
:class:`fractions.Fraction` values (rationals) or :class:`FpElement` values
(prime field of odd or even characteristic).  Both support the arithmetic
operators, equality and hashing, so all higher-level code is written
generically against a :class:`FieldConfig` that can construct, parse, format
and (for finite fields) enumerate elements.

Invariants:
  * an ``FpElement`` always stores a representative in ``range(p)``;
  * elements of distinct fields never mix (checked on every operation);
  * parsing and formatting round-trip: ``cfg.parse(cfg.format(c)) == c``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Union

__all__ = ["FpElement", "FieldConfig", "QQ", "GF", "Scalar"]


class FpElement:
    """An element of the prime field with ``p`` elements."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return (FpElement(1, self.p) / self) ** (-k)
        return FpElement(pow(self.v, k, self.p), self.p)

    # -- comparisons / hashing ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


Scalar = Union[Fraction, FpElement]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FieldConfig:
    """Selects and services the base field: exact rationals or a prime field.

    ``FieldConfig()`` (or :data:`QQ`) is the rational field; ``FieldConfig(p)``
    (or ``GF(p)``) is the field with ``p`` elements, ``p`` prime.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    # -- basic facts --------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    # -- construction -------------------------------------------------
    def of(self, value) -> Scalar:
        """Coerce an int, Fraction, string or field element into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.p is None:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} into the rationals")
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise ValueError(f"element of F_{value.p} used in F_{self.p}")
            return value
        if isinstance(value, int):
            return FpElement(value, self.p)
        if isinstance(value, Fraction):
            return FpElement(value.numerator, self.p) / FpElement(value.denominator, self.p)
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def zero(self) -> Scalar:
        return self.of(0)

    def one(self) -> Scalar:
        return self.of(1)

    def parse(self, text: str) -> Scalar:
        """Parse ``"a"`` or ``"a/b"`` written with integer numerals."""
        frac = Fraction(text.strip())
        return self.of(frac)

    def format(self, c: Scalar) -> str:
        if isinstance(c, FpElement):
            return str(c.v)
        return str(c)

    # -- enumeration / sampling ----------------------------------------
    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("cannot enumerate an infinite field")
        for v in range(self.p):
            yield FpElement(v, self.p)

    def random_element(self, rng, height: int = 9, nonzero: bool = False) -> Scalar:
        """A pseudo-random element; over the rationals an integer of bounded height."""
        while True:
            if self.p is None:
                c: Scalar = Fraction(rng.randint(-height, height))
            else:
                c = FpElement(rng.randrange(self.p), self.p)
            if not nonzero or c != self.zero():
                return c

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldConfig) and self.p == other.p

    def __hash__(self):
        return hash(("FieldConfig", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldConfig()


def GF(p: int) -> FieldConfig:
    """The prime field with ``p`` elements."""
    return FieldConfig(p)
