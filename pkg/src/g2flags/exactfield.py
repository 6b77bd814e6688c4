"""Exact arithmetic in the real quadratic field Q(sqrt 13).

A :class:`QF13` is stored as three integers ``(a, b, d)`` meaning
``(a + b*sqrt(13)) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``, so
equality and hashing are plain tuple operations.  The public view is the
pair of rationals ``rat`` and ``irr`` (coefficients of 1 and sqrt 13).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QF13",
    "SQRT13",
    "ALPHA",
    "BETA",
    "as_qf13",
    "parse_qf13",
    "scalar_arith",
    "scalar_sign",
    "scalar_to_float",
]

_SQRT13_F = math.sqrt(13.0)


class QF13:
    """Element ``rat + irr*sqrt(13)`` of Q(sqrt 13), immutable."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, rat=0, irr=0):
        r = Fraction(rat)
        s = Fraction(irr)
        d = r.denominator * s.denominator // math.gcd(r.denominator, s.denominator)
        self._set(r.numerator * (d // r.denominator), s.numerator * (d // s.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = math.gcd(math.gcd(a, b), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> QF13:
        if d == 0:
            raise ZeroDivisionError("QF13 with zero denominator")
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QF13 is immutable")

    # -- views -----------------------------------------------------------
    @property
    def rat(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def irr(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_rational(self) -> bool:
        return self._b == 0

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> QF13:
        return QF13._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """Field norm ``rat**2 - 13*irr**2``."""
        return Fraction(self._a * self._a - 13 * self._b * self._b, self._d * self._d)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._d, o._d
        if d1 == d2:
            return QF13._raw(self._a + o._a, self._b + o._b, d1)
        return QF13._raw(self._a * d2 + o._a * d1, self._b * d2 + o._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return QF13._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QF13._raw(self._a * other, self._b * other, self._d)
        o = _coerce(other)
        if o is NotImplemented:
            return o
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        return QF13._raw(a1 * a2 + 13 * b1 * b2, a1 * b2 + a2 * b1, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> QF13:
        n = self._a * self._a - 13 * self._b * self._b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 13)")
        # 1/x = d * conj(a + b s) / (a^2 - 13 b^2)
        return QF13._raw(self._d * self._a, -self._d * self._b, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons -----------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def sign(self) -> int:
        return scalar_sign(self)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return scalar_to_float(self)

    def sqrt(self) -> QF13:
        """Square root when it lies in the field (rational input only)."""
        if self._b != 0:
            raise ValueError(f"sqrt of irrational element {self} not supported")
        if self._a < 0:
            raise ValueError("sqrt of negative number")
        num, den = self._a, self._d
        # sqrt(num/den) = sqrt(num*den)/den
        nd = num * den
        r = math.isqrt(nd)
        if r * r == nd:
            return QF13._raw(r, 0, den)
        if nd % 13 == 0:
            q = nd // 13
            r = math.isqrt(q)
            if r * r == q:
                return QF13._raw(0, r, den)
        raise ValueError(f"sqrt({self}) is not in Q(sqrt 13)")

    # -- text ------------------------------------------------------------
    def __str__(self):
        r, s = self.rat, self.irr
        if s == 0:
            return str(r)
        tail = "sqrt13" if abs(s) == 1 else f"{abs(s)}*sqrt13"
        if r == 0:
            return ("-" if s < 0 else "") + tail
        return f"{r} {'-' if s < 0 else '+'} {tail}"

    def __repr__(self):
        return f"QF13({str(self.rat)!r}, {str(self.irr)!r})"

    def to_text(self) -> str:
        """Canonical serialization ``"p/q + r/s*sqrt13"`` (always both terms)."""
        s = self.irr
        return f"{_frac_text(self.rat)} {'-' if s < 0 else '+'} {_frac_text(abs(s))}*sqrt13"


def _frac_text(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _coerce(x):
    if isinstance(x, QF13):
        return x
    if isinstance(x, int):
        return QF13._raw(x, 0, 1)
    if isinstance(x, Rational):
        return QF13._raw(x.numerator, 0, x.denominator)
    return NotImplemented


def as_qf13(x) -> QF13:
    """Convert int, Fraction, numeric string or QF13 into a QF13."""
    if isinstance(x, str):
        return parse_qf13(x)
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to QF13 exactly")
    return o


ZERO = QF13._raw(0, 0, 1)
ONE = QF13._raw(1, 0, 1)
SQRT13 = QF13._raw(0, 1, 1)
ALPHA = QF13._raw(-2, 1, 1)  # sqrt13 - 2
BETA = QF13._raw(2, 1, 1)  # sqrt13 + 2

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*\s*sqrt\s*\(?\s*13\s*\)?)?
          |(?P<bare>sqrt\s*\(?\s*13\s*\)?)(?:\s*\*\s*(?P<post>\d+(?:/\d+)?))?
        )\s*""",
    re.VERBOSE,
)


def parse_qf13(text: str) -> QF13:
    """Parse linear combinations such as ``"3/2"``, ``"1+2*sqrt13"``, ``"-sqrt13"``.

    Accepts the serialization produced by :meth:`QF13.to_text` as well.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    rat = Fraction(0)
    irr = Fraction(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"cannot parse scalar {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("star"):
                irr += sign * c
            else:
                rat += sign * c
        elif m.group("bare") is not None:
            c = Fraction(m.group("post")) if m.group("post") else Fraction(1)
            irr += sign * c
        else:
            raise ValueError(f"cannot parse scalar {text!r}")
        pos = m.end()
        first = False
    return QF13(rat, irr)


def scalar_arith(a, b, op: str) -> QF13:
    a, b = as_qf13(a), as_qf13(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt 13)")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def _isign(n: int) -> int:
    return (n > 0) - (n < 0)


def scalar_sign(x) -> int:
    """Exact sign of ``a + b*sqrt13``."""
    x = as_qf13(x)
    sa, sb = _isign(x._a), _isign(x._b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of a^2 and 13 b^2 wins
    return sa if x._a * x._a > 13 * x._b * x._b else sb


def scalar_to_float(x) -> float:
    """Nearest-double style evaluation, avoiding cancellation.

    Raises OverflowError rather than returning an infinity.
    """
    x = as_qf13(x)
    a, b, d = x._a, x._b, x._d
    if b == 0:
        v = a / d
    elif a == 0:
        v = (b / d) * _SQRT13_F
    elif (a > 0) == (b > 0):
        v = a / d + (b / d) * _SQRT13_F
    else:
        # a + b s = (a^2 - 13 b^2) / (a - b s), denominator has no cancellation
        n = a * a - 13 * b * b
        den = a / d - (b / d) * _SQRT13_F
        v = (n / (d * d)) / den
    if math.isinf(v) or math.isnan(v):
        raise OverflowError("QF13 value out of float range")
    return v


# -- exact linear algebra ------------------------------------------------

def _rref(rows):
    """Reduced row echelon form over Q(sqrt 13). Returns (matrix, pivot columns)."""
    m = [[as_qf13(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(_rref(rows)[1])


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly; returns one solution or None.

    Free variables are set to zero when the system is underdetermined.
    """
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, piv = _rref(aug)
    if n in piv:
        return None
    x = [ZERO] * n
    for i, c in enumerate(piv):
        x[c] = red[i][n]
    return x


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def in_span(vector, generators) -> bool:
    """Exact membership test ``vector in span(generators)``."""
    if not generators:
        return all(as_qf13(v).is_zero() for v in vector)
    return rank(list(generators) + [vector]) == rank(generators)
