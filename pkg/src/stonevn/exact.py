"""Scalar backends: exact rationals and checked double-precision reals.

Rationals are ``gmpy2.mpq`` values, which are always stored reduced with a
positive denominator.  Reals are plain ``float`` values; every
operation routed through this module rejects NaN and infinities.
"""

import math
from numbers import Rational as _RationalABC

from gmpy2 import mpq

from .errors import ContractError, DomainError, ParseError

Rational = mpq
_ZERO = mpq(0)
_ONE = mpq(1)
RealApprox = float


def _is_rational(x):
    return isinstance(x, _RationalABC)


def _is_real(x):
    return isinstance(x, float)


def _check_finite(x):
    if not math.isfinite(x):
        raise DomainError(f"non-finite real result: {x!r}")
    return x


def _binary(x, y, op, name):
    if _is_rational(x) and _is_rational(y):
        return mpq(op(mpq(x), mpq(y)))
    if _is_real(x) and _is_real(y):
        return _check_finite(float(op(x, y)))
    raise ContractError(f"{name}: mixed or unsupported scalars {x!r}, {y!r}")


def field_add(x, y):
    return _binary(x, y, lambda a, b: a + b, "field_add")


def field_mul(x, y):
    return _binary(x, y, lambda a, b: a * b, "field_mul")


def field_neg(x):
    if _is_rational(x):
        return -mpq(x)
    if _is_real(x):
        return _check_finite(-x)
    raise ContractError(f"field_neg: unsupported scalar {x!r}")


def field_inverse(x):
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    if _is_rational(x):
        if x == 0:
            raise ZeroDivisionError("field_inverse of zero")
        return 1 / mpq(x)
    if _is_real(x):
        if x == 0.0:
            raise ZeroDivisionError("field_inverse of zero")
        return _check_finite(1.0 / x)
    raise ContractError(f"field_inverse: unsupported scalar {x!r}")


class Field:
    """A scalar backend.  Concrete instances are :data:`QQ` and :data:`RR`."""

    name = None
    exact = False

    def coerce(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def add(self, x, y):
        return field_add(x, y)

    def mul(self, x, y):
        return field_mul(x, y)

    def neg(self, x):
        return field_neg(x)

    def sub(self, x, y):
        return field_add(x, field_neg(y))

    def inverse(self, x):
        return field_inverse(x)

    def is_zero(self, x):
        return x == 0

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (field_by_name, (self.name,))


class RationalField(Field):
    name = "Q"
    exact = True

    # mpq arithmetic is already exact and reduced; skip the generic dispatch.
    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not _is_rational(value):
            raise ContractError(f"not an exact rational: {value!r}")
        return mpq(value)

    @property
    def zero(self):
        return _ZERO

    @property
    def one(self):
        return _ONE

    def parse(self, text):
        """Parse ``"p/q"`` or ``"p"``.  Decimal strings are rejected."""
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ParseError(f"bad rational literal {text!r}") from None
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return mpq(p, q)

    def format(self, x):
        x = mpq(x)
        p, q = int(x.numerator), int(x.denominator)
        return str(p) if q == 1 else f"{p}/{q}"

    def random(self, rng, zero_rate=0.3, height=9):
        if rng.random() < zero_rate:
            return _ZERO
        p = 0
        while p == 0:
            p = rng.randint(-height, height)
        return mpq(p, rng.randint(1, height))


class RealField(Field):
    name = "R"
    exact = False

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise ContractError(f"not a real: {value!r}")
        try:
            x = float(value)
        except (TypeError, ValueError):
            raise ContractError(f"not a real: {value!r}") from None
        return _check_finite(x)

    def parse(self, text):
        try:
            x = float(text)
        except ValueError:
            raise ParseError(f"bad real literal {text!r}") from None
        if not math.isfinite(x):
            raise ParseError(f"non-finite real literal {text!r}")
        return x

    def format(self, x):
        return repr(float(x))

    def random(self, rng, zero_rate=0.3, scale=2.0):
        if rng.random() < zero_rate:
            return 0.0
        return rng.uniform(-scale, scale)


QQ = RationalField()
RR = RealField()


def field_by_name(name):
    if name == "Q":
        return QQ
    if name == "R":
        return RR
    raise ParseError(f"unknown field {name!r}; expected 'Q' or 'R'")
