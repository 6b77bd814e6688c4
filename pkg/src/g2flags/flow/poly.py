"""Sparse Laurent polynomials in three variables over QF13.

Exponents may be negative while a chart transformation is being built;
``is_polynomial`` tells whether the result has come back to an honest
polynomial.
"""

from __future__ import annotations

from numbers import Number

from ..exactfield import QF13, ZERO, as_qf13, scalar_to_float

Exp = tuple  # (i, j, k)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


class Poly:
    __slots__ = ("terms", "_float_terms")

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = as_qf13(c)
            if not c.is_zero():
                clean[tuple(e)] = c
        self.terms = clean
        self._float_terms = None

    # -- constructors --------------------------------------------------

    @classmethod
    def const(cls, c) -> Poly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, exp: Exp, c=1) -> Poly:
        return cls({exp: c})

    @classmethod
    def var(cls, i: int) -> Poly:
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def variables(cls) -> tuple:
        return cls.var(0), cls.var(1), cls.var(2)

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (QF13, Number)):
            return Poly.const(as_qf13(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (QF13, Number)):
            s = as_qf13(other)
            return Poly({e: c * s for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, ZERO) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (QF13, Number)):
            s = as_qf13(other)
            return Poly({e: c / s for e, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self.terms.items()
            return Poly({(e[0] * n, e[1] * n, e[2] * n): c ** n})
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_polynomial(self) -> bool:
        return all(min(e) >= 0 for e in self.terms)

    def coeff(self, exp: Exp) -> QF13:
        return self.terms.get(tuple(exp), ZERO)

    def shift(self, exp: Exp) -> Poly:
        """Multiply by the monomial x^exp (negative entries divide)."""
        return Poly({_add_exp(e, exp): c for e, c in self.terms.items()})

    def diff(self, i: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly(out)

    def homogeneous_part(self, d: int) -> Poly:
        return Poly({e: c for e, c in self.terms.items() if sum(e) == d})

    # -- evaluation ----------------------------------------------------

    def __call__(self, point):
        """Exact evaluation for exact inputs, float evaluation for floats."""
        if any(isinstance(v, float) for v in point):
            return self.eval_float(point)
        pt = [as_qf13(v) for v in point]
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def eval_float(self, point) -> float:
        if self._float_terms is None:
            self._float_terms = [(e, scalar_to_float(c)) for e, c in self.terms.items()]
        x, y, z = (float(v) for v in point)
        return sum(c * x ** e[0] * y ** e[1] * z ** e[2] for e, c in self._float_terms)

    def compose(self, subs) -> Poly:
        """Substitute Laurent polynomials for the three variables."""
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = subs[i] ** k
            return cache[(i, k)]

        out = Poly()
        for e, c in self.terms.items():
            out = out + power(0, e[0]) * power(1, e[1]) * power(2, e[2]) * c
        return out

    # -- display -------------------------------------------------------

    def to_text(self, names=("x", "y", "z")) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            c = self.terms[e]
            text = str(c)
            if " " in text:
                text = f"({text})"
            if mono and text in ("1", "-1"):
                text = text[:-1]
            elif mono:
                text += "*"
            parts.append(text + mono)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_text()})"

    # -- sympy bridge --------------------------------------------------

    def to_sympy(self, symbols):
        import sympy

        s13 = sympy.sqrt(13)
        total = sympy.Integer(0)
        for e, c in self.terms.items():
            coef = sympy.Rational(c.rat.numerator, c.rat.denominator) + sympy.Rational(
                c.irr.numerator, c.irr.denominator
            ) * s13
            total += coef * symbols[0] ** e[0] * symbols[1] ** e[1] * symbols[2] ** e[2]
        return total

    @classmethod
    def from_sympy(cls, expr, symbols) -> Poly:
        import sympy

        p = sympy.Poly(sympy.expand(expr), *symbols)
        return cls({e: sympy_to_qf13(c) for e, c in p.terms()})


def sympy_to_qf13(c) -> QF13:
    """a + b*sqrt(13) with rational a, b, as a QF13."""
    import sympy
    from fractions import Fraction

    c = sympy.expand(c)
    s13 = sympy.sqrt(13)
    irr = c.coeff(s13)
    rat = sympy.expand(c - irr * s13)
    if not (rat.is_Rational and irr.is_Rational):
        raise ValueError(f"not an element of Q(sqrt13): {c}")
    return QF13(Fraction(int(rat.p), int(rat.q)), Fraction(int(irr.p), int(irr.q)))


X, Y, Z = Poly.variables()
