"""Exact ground fields: the rationals and the prime fields GF(p).

Matrices store *raw* field values for speed: ``Fraction`` (or ``int``) for
the rationals and ``int`` residues in ``[0, p)`` for GF(p).  A ``Field``
knows how to reduce, invert, parse and print those values.  ``Scalar`` is a
tagged value for callers who want field-checked operator arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, ParseError

_SCALAR_RE = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")


def is_prime(n):
    """Trial-division primality test (fine for machine-word moduli)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``kind == "rational"``) or GF(p)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "gf":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls):
        return cls("rational")

    @classmethod
    def gf(cls, p):
        return cls("gf", p)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            return cls.from_string(obj)
        try:
            kind = obj["type"]
        except (TypeError, KeyError):
            raise ParseError(f"field spec must be an object with a 'type' key, got {obj!r}")
        try:
            if kind in ("rational", "Q", "q"):
                return cls.rational()
            if kind in ("gf", "prime-field"):
                return cls.gf(obj["p"])
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad field spec {obj!r}: {exc}")
        raise ParseError(f"unknown field type {kind!r}")

    @classmethod
    def from_string(cls, text):
        """Parse ``rational``/``Q`` or ``gf:<p>``/``GF(<p>)``."""
        t = text.strip()
        if t.lower() in ("rational", "q", "qq"):
            return cls.rational()
        m = re.fullmatch(r"(?i)gf[:(]\s*(\d+)\s*\)?", t)
        if m is None:
            raise ParseError(f"cannot parse field {text!r}; use 'rational' or 'gf:<p>'")
        try:
            return cls.gf(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc))

    def to_json(self):
        if self.kind == "rational":
            return {"type": "rational"}
        return {"type": "gf", "p": self.p}

    def __str__(self):
        return "Q" if self.kind == "rational" else f"GF({self.p})"

    @property
    def is_finite(self):
        return self.kind == "gf"

    @property
    def order(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __call__(self, value):
        """Coerce an int, Fraction, Scalar, or scalar string into a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} scalar used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if self.p is None:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction):
                return value.numerator if value.denominator == 1 else value
            raise TypeError(f"cannot coerce {value!r} into {self}")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def reduce(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / x
        return pow(x, -1, self.p)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if self.p is None:
            q = Fraction(a) / b
            return q.numerator if q.denominator == 1 else q
        return a * pow(b, -1, self.p) % self.p

    def parse(self, text):
        m = _SCALAR_RE.fullmatch(text) if isinstance(text, str) else None
        if m is None:
            raise ParseError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if self.p is None:
            return self(Fraction(num, den))
        if den % self.p == 0:
            raise ParseError(f"denominator of {text!r} vanishes mod {self.p}")
        return self.div(num % self.p, den % self.p)

    def format(self, x):
        if self.p is None:
            x = Fraction(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x)

    def key(self, x):
        """Canonical total order: rationals by value, residues by residue."""
        return x

    def elements(self):
        if self.p is None:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.p)

    def random_element(self, rng, bound=10):
        """Uniform residue over GF(p); over Q a small random fraction."""
        if self.p is not None:
            return rng.randrange(self.p)
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return self(Fraction(num, den))

    def random_nonzero(self, rng, bound=10):
        while True:
            x = self.random_element(rng, bound)
            if x != 0:
                return x

    def scalar(self, value):
        return Scalar(self, self(value))


QQ = Field.rational()


def GF(p):
    return Field.gf(p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field.

    Two scalars are equal iff they live in the same field and are
    mathematically equal; mixing fields raises ``FieldMismatch``.
    """

    field: Field
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def _wrap(self, raw):
        return Scalar(self.field, self.field(raw) if self.field.p is None else raw % self.field.p)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"


def scalar_parse(text, field):
    return Scalar(field, field.parse(text))


def scalar_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two scalars."""
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine {a.field} and {b.field} scalars")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
