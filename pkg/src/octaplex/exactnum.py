"""Exact arithmetic in the field Q(√2), and quaternions over it.

Every vertex coordinate and every symmetry coefficient used by this project
lies in {0, ±1/2, ±1, ±1/√2} or products thereof, all of which live in
Q(√2).  Storing scalars as a + b·√2 with exact rational a, b turns group
closure, incidence derivation and membership tests into exact set
operations with no tolerances.  Floating point enters only through
``to_float`` on the way to rendering.
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rational = Union[int, Fraction]

_SQRT2 = math.sqrt(2.0)


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@total_ordering
class QSqrt2:
    """The real number a + b·√2 with exact rational a, b.

    Values are immutable; ``Fraction`` keeps components in lowest terms with
    positive denominators, so structural equality coincides with numeric
    equality.  Ordering is the exact numeric order (no floats involved).
    """

    __slots__ = ("a", "b", "_hash")

    def __init__(self, a: Rational = 0, b: Rational = 0):
        object.__setattr__(self, "a", a if isinstance(a, Fraction) else Fraction(a))
        object.__setattr__(self, "b", b if isinstance(b, Fraction) else Fraction(b))
        object.__setattr__(self, "_hash", hash((self.a, self.b)))

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("QSqrt2 is immutable")

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def sign(self) -> int:
        """Exact sign of a + b√2: -1, 0 or +1."""
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 1 if (a or b) else 0
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare a^2 with 2 b^2 (both sides of a = -b√2 squared)
        lhs = a * a
        rhs = 2 * b * b
        if lhs == rhs:
            return 0  # cannot happen for nonzero rational a, b; kept for safety
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if lhs < rhs else -1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: QSqrt2 | Rational) -> QSqrt2:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: QSqrt2 | Rational) -> QSqrt2:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Rational) -> QSqrt2:
        return (-self) + other

    def __neg__(self) -> QSqrt2:
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, other: QSqrt2 | Rational) -> QSqrt2:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QSqrt2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: QSqrt2 | Rational) -> QSqrt2:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(√2)")
        # multiply by the conjugate a - b√2; the norm a^2 - 2b^2 is rational
        norm = other.a * other.a - 2 * other.b * other.b
        return QSqrt2(
            (self.a * other.a - 2 * self.b * other.b) / norm,
            (self.b * other.a - self.a * other.b) / norm,
        )

    def __rtruediv__(self, other: Rational) -> QSqrt2:
        return QSqrt2(other) / self

    def __pow__(self, n: int) -> QSqrt2:
        if n < 0:
            return QSqrt2(1) / self ** (-n)
        out = QSqrt2(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self) -> QSqrt2:
        """Exact square root, when it exists inside Q(√2).

        Solves (c + d√2)^2 = a + b√2 over the rationals and raises
        ``ValueError`` when there is no solution.
        """
        if self.sign() < 0:
            raise ValueError(f"{self} is negative")
        if self.is_zero():
            return QSqrt2()
        if not self.b:
            r = _fraction_sqrt(self.a)
            if r is not None:
                return QSqrt2(r)
            r = _fraction_sqrt(self.a / 2)
            if r is not None:
                return QSqrt2(0, r)
            raise ValueError(f"{self} has no square root in Q(√2)")
        disc = self.a * self.a - 2 * self.b * self.b
        n = _fraction_sqrt(disc) if disc >= 0 else None
        if n is not None:
            for s in (n, -n):
                c = _fraction_sqrt((self.a + s) / 2)
                if c:
                    d = self.b / (2 * c)
                    cand = QSqrt2(c, d)
                    if cand * cand == self:
                        return cand if cand.sign() > 0 else -cand
        raise ValueError(f"{self} has no square root in Q(√2)")

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return self._hash

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        return float(self.a) + _SQRT2 * float(self.b)

    def to_string(self) -> str:
        """Serialize as "(a/b) + (c/d)√2"; parses back identically."""
        return (
            f"({self.a.numerator}/{self.a.denominator})"
            f" + ({self.b.numerator}/{self.b.denominator})√2"
        )

    @classmethod
    def from_string(cls, text: str) -> QSqrt2:
        m = _re.fullmatch(
            r"\((-?\d+)/(\d+)\) \+ \((-?\d+)/(\d+)\)√2", text.strip()
        )
        if not m:
            raise ValueError(f"not a Q(√2) literal: {text!r}")
        return cls(
            Fraction(int(m.group(1)), int(m.group(2))),
            Fraction(int(m.group(3)), int(m.group(4))),
        )

    def __repr__(self) -> str:
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}√2"
        return f"{self.a}{'+' if self.b > 0 else ''}{self.b}√2"


def _coerce(value) -> QSqrt2:
    if isinstance(value, QSqrt2):
        return value
    if isinstance(value, (int, Fraction)):
        return QSqrt2(value)
    return NotImplemented


ZERO = QSqrt2()
ONE = QSqrt2(1)
HALF = QSqrt2(Fraction(1, 2))
SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))


@total_ordering
class QuatEx:
    """Quaternion x·i + y·j + z·k + w·1 with QSqrt2 components.

    Multiplication follows the right-handed convention ij = k, jk = i,
    ki = j, i² = j² = k² = -1.  Values are immutable and hashable;
    ordering is lexicographic on (x, y, z, w), which gives polytope code a
    canonical way to sort vertex lists.
    """

    __slots__ = ("x", "y", "z", "w", "_hash")

    def __init__(self, x: QSqrt2, y: QSqrt2, z: QSqrt2, w: QSqrt2):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "_hash", hash((x, y, z, w)))

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("QuatEx is immutable")

    @classmethod
    def of(cls, x: Rational | QSqrt2, y: Rational | QSqrt2,
           z: Rational | QSqrt2, w: Rational | QSqrt2) -> QuatEx:
        conv = lambda v: v if isinstance(v, QSqrt2) else QSqrt2(v)
        return cls(conv(x), conv(y), conv(z), conv(w))

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other) -> QuatEx:
        if isinstance(other, QuatEx):
            x1, y1, z1, w1 = self.x, self.y, self.z, self.w
            x2, y2, z2, w2 = other.x, other.y, other.z, other.w
            return QuatEx(
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 + y1 * w2 + z1 * x2 - x1 * z2,
                w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            )
        if isinstance(other, (int, Fraction, QSqrt2)):
            s = other if isinstance(other, QSqrt2) else QSqrt2(other)
            return QuatEx(self.x * s, self.y * s, self.z * s, self.w * s)
        return NotImplemented

    def __rmul__(self, other) -> QuatEx:
        if isinstance(other, (int, Fraction, QSqrt2)):
            return self * other  # scalars commute
        return NotImplemented

    def __add__(self, other: QuatEx) -> QuatEx:
        if not isinstance(other, QuatEx):
            return NotImplemented
        return QuatEx(self.x + other.x, self.y + other.y,
                      self.z + other.z, self.w + other.w)

    def __sub__(self, other: QuatEx) -> QuatEx:
        if not isinstance(other, QuatEx):
            return NotImplemented
        return QuatEx(self.x - other.x, self.y - other.y,
                      self.z - other.z, self.w - other.w)

    def __neg__(self) -> QuatEx:
        return QuatEx(-self.x, -self.y, -self.z, -self.w)

    def __pow__(self, n: int) -> QuatEx:
        if n < 0:
            return self.inv() ** (-n)
        out = QUAT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> QuatEx:
        """Quaternion conjugate 2·re(q) - q: negates x, y, z, fixes w."""
        return QuatEx(-self.x, -self.y, -self.z, self.w)

    def norm_sq(self) -> QSqrt2:
        return (self.x * self.x + self.y * self.y
                + self.z * self.z + self.w * self.w)

    def inv(self) -> QuatEx:
        n = self.norm_sq()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero quaternion")
        c = self.conj()
        return QuatEx(c.x / n, c.y / n, c.z / n, c.w / n)

    @property
    def real(self) -> QSqrt2:
        return self.w

    def dot(self, other: QuatEx) -> QSqrt2:
        """Euclidean 4D inner product; equals re(self · conj(other))."""
        return (self.x * other.x + self.y * other.y
                + self.z * other.z + self.w * other.w)

    def is_unit(self) -> bool:
        return self.norm_sq() == ONE

    def is_zero(self) -> bool:
        return (self.x.is_zero() and self.y.is_zero()
                and self.z.is_zero() and self.w.is_zero())

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuatEx):
            return NotImplemented
        return (self.x == other.x and self.y == other.y
                and self.z == other.z and self.w == other.w)

    def __lt__(self, other: QuatEx) -> bool:
        if not isinstance(other, QuatEx):
            return NotImplemented
        return (self.x, self.y, self.z, self.w) < (other.x, other.y, other.z, other.w)

    def __hash__(self) -> int:
        return self._hash

    # -- conversions ----------------------------------------------------------

    def to_float(self) -> tuple[float, float, float, float]:
        """(x, y, z, w) as doubles; the one-way exit to the float pipeline."""
        return (float(self.x), float(self.y), float(self.z), float(self.w))

    def __repr__(self) -> str:
        return f"QuatEx({self.x!r}, {self.y!r}, {self.z!r}, {self.w!r})"

    def __str__(self) -> str:
        parts = []
        for comp, unit in ((self.x, "i"), (self.y, "j"), (self.z, "k"), (self.w, "")):
            if not comp.is_zero():
                parts.append(f"({comp}){unit}")
        return " + ".join(parts) if parts else "0"


QUAT_ZERO = QuatEx(ZERO, ZERO, ZERO, ZERO)
QUAT_ONE = QuatEx(ZERO, ZERO, ZERO, ONE)
QUAT_I = QuatEx(ONE, ZERO, ZERO, ZERO)
QUAT_J = QuatEx(ZERO, ONE, ZERO, ZERO)
QUAT_K = QuatEx(ZERO, ZERO, ONE, ZERO)

#: The Hurwitz unit (1 + i + j + k)/2; cubes to -1 and generates the
#: hexagonal vertex rings of the 24-cell.
OMEGA = QuatEx(HALF, HALF, HALF, HALF)

#: (1 + i)/√2; right (or left) multiplication by it carries the vertex-down
#: 24-cell onto its cell-down dual.
DUAL_UNIT = QuatEx(INV_SQRT2, ZERO, ZERO, INV_SQRT2)
