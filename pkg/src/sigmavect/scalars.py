"""Exact coefficient fields: rationals and small prime fields.

No floating point anywhere; every scalar is a Fraction or a prime-field
element, and every operation is exact.
"""

from __future__ import annotations

from fractions import Fraction


class FpElement:
    """Element of GF(p), p < 2**31 prime."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed prime-field moduli: %d vs %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, FpElement) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "%d" % self.value


class Field:
    """A coefficient field handle: exact rationals or GF(p)."""

    def __init__(self, name, p=None):
        self.name = name
        self.p = p

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def of(self, x):
        """Coerce an int, Fraction or textual 'p/q' into the field."""
        if self.p is None:
            if isinstance(x, FpElement):
                raise TypeError("prime-field element in rational context")
            return Fraction(x)
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError("modulus mismatch")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return FpElement(x.numerator, self.p) / FpElement(x.denominator, self.p)
        return FpElement(int(x), self.p)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.of(Fraction(int(num), int(den)))
        return self.of(int(text))

    def format(self, x):
        return str(x)

    def is_zero(self, x):
        return not x

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return self.name


QQ = Field("QQ")


def GF(p):
    if p < 2 or p >= 2 ** 31:
        raise ValueError("modulus out of range")
    for d in range(2, min(p, 1 << 10)):
        if d * d > p:
            break
        if p % d == 0:
            raise ValueError("%d is not prime" % p)
    return Field("GF(%d)" % p, p)


def field_from_spec(spec):
    """Parse a --field flag value: 'rational' or 'fp:<p>'."""
    if spec == "rational":
        return QQ
    if spec.startswith("fp:"):
        return GF(int(spec[3:]))
    raise ValueError("unknown field spec %r" % spec)
