"""Exact scalars in a real quadratic field Q(sqrt(d)), d in {1, 2, 3}.

Every closed-form configuration in this package has its circle data in a
single such field, so tangency, orthogonality and integrality predicates can
be decided by integer arithmetic alone.  A value is stored as
(a + b*sqrt(d)) / q with arbitrary-precision integers, gcd(a, b, q) = 1 and
q >= 1.  For d = 1 the root is rational and b is folded into a.

A parallel float path exists throughout the package; helpers at the bottom of
this module (``scalar_sign``, ``as_float``) make code polymorphic over
``QuadExt`` and ``float``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

SUPPORTED_D = (1, 2, 3)

# sqrt(d) to ~70 digits, enough that float() of the assembled Fraction is the
# correctly rounded double for desk-scale inputs.
_SQRT_FRAC = {
    d: Fraction(math.isqrt(d * 10**140), 10**70) for d in SUPPORTED_D
}


class FieldMismatchError(TypeError):
    """Raised when two scalars from genuinely different fields meet."""


def _gcd3(a: int, b: int, c: int) -> int:
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))


class QuadExt:
    """Immutable exact value (a + b*sqrt(d)) / q."""

    __slots__ = ("a", "b", "q", "d")

    def __init__(self, a: int, b: int = 0, q: int = 1, d: int = 1):
        if q == 0:
            raise ZeroDivisionError("zero denominator in QuadExt")
        if d not in SUPPORTED_D:
            raise ValueError(f"unsupported field tag d={d}")
        if d == 1:
            a, b = a + b, 0
        if q < 0:
            a, b, q = -a, -b, -q
        g = _gcd3(a, b, q)
        if g > 1:
            a, b, q = a // g, b // g, q // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):  # pragma: no cover - immutability
        raise AttributeError("QuadExt is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, d: int = 1) -> "QuadExt":
        return cls(n, 0, 1, d)

    @classmethod
    def from_fraction(cls, f: Fraction, d: int = 1) -> "QuadExt":
        return cls(f.numerator, 0, f.denominator, d)

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadExt":
        """The element sqrt(d) itself."""
        return cls(0, 1, 1, d)

    # -- field bookkeeping -------------------------------------------------

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            return other
        if isinstance(other, int):
            return QuadExt(other, 0, 1, self.d)
        if isinstance(other, Fraction):
            return QuadExt(other.numerator, 0, other.denominator, self.d)
        return None

    def _join_d(self, other: "QuadExt") -> int:
        if self.d == other.d:
            return self.d
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        raise FieldMismatchError(
            f"cannot mix sqrt({self.d}) and sqrt({other.d}) values"
        )

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.q)

    def is_integer(self) -> bool:
        return self.b == 0 and self.q == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.a

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        return QuadExt(
            self.a * o.q + o.a * self.q,
            self.b * o.q + o.b * self.q,
            self.q * o.q,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        return QuadExt(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.q * o.q,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_d(o)
        norm = o.a * o.a - o.b * o.b * d
        if norm == 0:
            raise ZeroDivisionError("division by zero QuadExt")
        # 1/o = conj(o) * q / norm with conj(a + b sqrt d) = a - b sqrt d
        num = self * QuadExt(o.a, -o.b, 1, d)
        return QuadExt(num.a * o.q, num.b * o.q, num.q * norm, d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadExt(1, 0, 1, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order and equality -------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value, by integer comparisons."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        t = a * a - b * b * self.d
        if a > 0:  # b < 0
            return (t > 0) - (t < 0)
        return (t < 0) - (t > 0)  # a < 0, b > 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a and self.q == o.q
        return (
            self.d == o.d
            and self.a == o.a
            and self.b == o.b
            and self.q == o.q
        )

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.q))
        return hash((self.a, self.b, self.q, self.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadExt with {type(other)}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversions ---------------------------------------------------------

    def __float__(self) -> float:
        return float(
            (Fraction(self.a) + self.b * _SQRT_FRAC[self.d]) / self.q
        )

    def sqrt(self) -> "QuadExt | None":
        """Exact square root within the same field, or None.

        Solves (x + y*sqrt(d))^2 = value over the rationals: x^2 and y^2 d
        are the roots of t^2 - A t + (B^2 d)/4 with A, B the rational and
        sqrt(d) parts, which is solvable in the field iff the norm A^2 - B^2 d
        has a rational square root.
        """
        s = self.sign()
        if s < 0:
            return None
        if s == 0:
            return QuadExt(0, 0, 1, self.d)
        A = Fraction(self.a, self.q)
        B = Fraction(self.b, self.q)
        if B == 0:
            r = _frac_sqrt(A)
            if r is not None:
                return QuadExt.from_fraction(r, self.d)
            r = _frac_sqrt(A / self.d)
            if r is not None:
                return QuadExt(0, r.numerator, r.denominator, self.d)
            return None
        n = _frac_sqrt(A * A - B * B * self.d)
        if n is None:
            return None
        for x2 in ((A + n) / 2, (A - n) / 2):
            if x2 <= 0:
                continue
            x = _frac_sqrt(x2)
            if x is None:
                continue
            y = B / (2 * x)
            cand = QuadExt(
                x.numerator * y.denominator,
                y.numerator * x.denominator,
                x.denominator * y.denominator,
                self.d,
            )
            if cand * cand == self:
                return abs(cand)
        return None

    # -- text form -------------------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.q == 1 else f"{self.a}/{self.q}"
        core = f"({self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d}))"
        return core if self.q == 1 else f"{core}/{self.q}"

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b}, {self.q}, d={self.d})"


def _frac_sqrt(f: Fraction) -> Fraction | None:
    """Rational square root of a nonnegative Fraction, or None."""
    if f < 0:
        return None
    rn = math.isqrt(f.numerator)
    rd = math.isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


_PAREN_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)"
    r"(?:\s*/\s*(\d+))?$"
)
_RAT_RE = re.compile(r"^(-?\d+)(?:\s*/\s*(\d+))?$")


def parse_scalar(text: str) -> QuadExt:
    """Parse the canonical string forms emitted by ``str(QuadExt)``.

    Accepts "(a+b*sqrt(d))/q", "(a-b*sqrt(d))", "a/q" and "a".
    """
    s = text.strip()
    m = _PAREN_RE.match(s)
    if m:
        a, sgn, b, d, q = m.groups()
        bb = int(b) if sgn == "+" else -int(b)
        return QuadExt(int(a), bb, int(q) if q else 1, int(d))
    m = _RAT_RE.match(s)
    if m:
        a, q = m.groups()
        return QuadExt(int(a), 0, int(q) if q else 1, 1)
    raise ValueError(f"malformed exact scalar: {text!r}")


Scalar = Union[QuadExt, float]


def scalar_sign(x: Scalar, eps: float = 1e-9) -> int:
    """Sign of an exact or float scalar; floats use the tolerance eps."""
    if isinstance(x, QuadExt):
        return x.sign()
    if x > eps:
        return 1
    if x < -eps:
        return -1
    return 0


def as_float(x: Scalar) -> float:
    return float(x)


def exact_sqrt(x: Scalar):
    """Square root: exact in-field for QuadExt (None if absent), math.sqrt
    for floats."""
    if isinstance(x, QuadExt):
        return x.sqrt()
    return math.sqrt(x)
