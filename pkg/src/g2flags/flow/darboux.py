"""Darboux polynomials of the xyz system.

A pair (f, k) is Darboux when (grad f) . X = k f.  Verification is an exact
polynomial identity over QF13.  The search has two stages: degree-one
polynomials by case analysis on which coefficients vanish, then degree two.
Degree-two candidates are products of degree-one results; their
completeness is certified by a sweep over every possible leading monomial
of a monic f, in which the cofactor is eliminated linearly and the
remaining polynomial conditions on f are solved by factor-and-branch
elimination (sympy does the factoring over Q(sqrt13)).

Why products suffice, informally: an irreducible invariant quadric would
factor over C into Darboux linear forms, and the linear search over C
finds only x, y and z.  The sweep does not rely on this argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from ..exactfield import ALPHA, BETA
from .field import PolyField, XYZ_FIELD
from .poly import Poly, X, Y, Z

# graded lex, x > y > z, degree <= 2
MONOMIALS = (
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0),
)
LINEAR = MONOMIALS[6:]


@dataclass(frozen=True)
class DarbouxPair:
    f: Poly
    k: Poly

    def to_dict(self) -> dict:
        return {"f": self.f.to_text(), "k": self.k.to_text()}


def darboux_verify(pair: DarbouxPair, field: PolyField = XYZ_FIELD) -> bool:
    return (field.lie_derivative(pair.f) - pair.k * pair.f).is_zero()


def _table() -> tuple:
    a, b = 1 / ALPHA, 1 / BETA
    return (
        DarbouxPair(Z ** 2, -X ** 2 / 2 - Y ** 2 / 2),
        DarbouxPair(X ** 2, -X ** 2 - Y ** 2 / 2 + 2 * a * X),
        DarbouxPair(Y ** 2, -X ** 2 / 2 - Y ** 2 + 2 * b * Y),
        DarbouxPair(X * Y, -3 * X ** 2 / 4 - 3 * Y ** 2 / 4 + a * X + b * Y),
        DarbouxPair(X * Z, -3 * X ** 2 / 4 - Y ** 2 / 2 + a * X),
        DarbouxPair(Y * Z, -X ** 2 / 2 - 3 * Y ** 2 / 4 + b * Y),
    )


# the invariant quadrics and their cofactors, as printed
TABLE1 = _table()
DEGREE_ONE = (
    DarbouxPair(X, -X ** 2 / 2 + X / ALPHA - Y ** 2 / 4),
    DarbouxPair(Y, -X ** 2 / 4 + Y / BETA - Y ** 2 / 2),
    DarbouxPair(Z, -(X ** 2 + Y ** 2) / 4),
)


# -- elimination -----------------------------------------------------------


def _sympy():
    import sympy

    return sympy


def _branch(eqs, unknowns: frozenset, subs: dict) -> list:
    """All solutions of a polynomial system, as substitution dicts.

    Linear pivots with constant coefficients are substituted first; then an
    equation that factors splits the problem; univariate equations are
    solved outright; anything left goes to sympy.solve.
    """
    sp = _sympy()
    s13 = sp.sqrt(13)
    eqs = [e for e in (sp.expand(e) for e in eqs) if e != 0]
    if not eqs:
        return [subs]
    if any(not (e.free_symbols & unknowns) for e in eqs):
        return []
    eqs.sort(key=sp.count_ops)

    def substitute(v, val):
        new = {k: sp.expand(w.subs(v, val)) for k, w in subs.items()}
        new[v] = sp.expand(val)
        return _branch([e.subs(v, val) for e in eqs], unknowns - {v}, new)

    for e in eqs:
        for v in sorted(e.free_symbols & unknowns, key=str):
            p = sp.Poly(e, v)
            lead = p.coeff_monomial(v)
            if p.degree() == 1 and not lead.free_symbols:
                return substitute(v, -p.coeff_monomial(1) / lead)
    for e in eqs:
        gens = sorted(e.free_symbols & unknowns, key=str)
        _, factors = sp.Poly(e, *gens, extension=s13).factor_list()
        if len(factors) > 1 or factors[0][1] > 1:
            rest = [g for g in eqs if g is not e]
            out = []
            for fac, _ in factors:
                out += _branch([fac.as_expr()] + rest, unknowns, subs)
            return out
    for e in eqs:
        free = e.free_symbols & unknowns
        if len(free) == 1:
            v = next(iter(free))
            out = []
            for r in sp.solve(e, v):
                out += substitute(v, r)
            return out
    sols = sp.solve(eqs, sorted(unknowns, key=str), dict=True)
    return [{**{k: sp.expand(w.subs(s)) for k, w in subs.items()}, **s} for s in sols]


@dataclass(frozen=True)
class SweepResult:
    leading: tuple
    pairs: tuple  # DarbouxPair with QF13 coefficients
    families: tuple  # solutions with free parameters (text)
    outside_field: tuple  # isolated solutions not in Q(sqrt13) (text)


def _monomial(sp, syms, e):
    return syms[0] ** e[0] * syms[1] ** e[1] * syms[2] ** e[2]


def sweep_leading(leading: tuple, field: PolyField = XYZ_FIELD, support=None) -> SweepResult:
    """Monic f with the given leading monomial; cofactor of degree <= 2.

    ``support`` restricts the lower monomials of f (default: all smaller
    monomials of degree <= 2).
    """
    sp = _sympy()
    syms = sp.symbols("x y z")
    xs = [c.to_sympy(syms) for c in field.components]
    pos = MONOMIALS.index(leading)
    lower = MONOMIALS[pos + 1:] if support is None else tuple(support)
    a = sp.symbols(f"a0:{len(lower)}")
    coef = {leading: sp.Integer(1), **dict(zip(lower, a))}
    f = sum((c * _monomial(sp, syms, e) for e, c in coef.items()), sp.Integer(0))
    lf = sp.Poly(sp.expand(sum(sp.diff(f, v) * xi for v, xi in zip(syms, xs))), *syms)

    # coefficient of leading*mu in k f is k_mu plus terms in k_nu with nu > mu
    k = {}
    for i, mu in enumerate(MONOMIALS):
        target = tuple(p + q for p, q in zip(leading, mu))
        val = lf.coeff_monomial(target)
        for nu in MONOMIALS[:i]:
            q = tuple(t - n for t, n in zip(target, nu))
            if q in coef:
                val -= k[nu] * coef[q]
        k[mu] = sp.expand(val)
    kexpr = sum(k[mu] * _monomial(sp, syms, mu) for mu in MONOMIALS)
    rest = sp.Poly(sp.expand(lf.as_expr() - kexpr * f), *syms).coeffs()
    nonzero = [c for e, c in coef.items() if e != leading and support is not None]
    sols = _branch(rest, frozenset(a), {})

    pairs, families, outside = [], [], []
    seen = set()
    for s in sols:
        fs = sp.expand(f.subs(s))
        ks = sp.expand(kexpr.subs(s))
        if any(sp.expand(c.subs(s)) == 0 for c in nonzero):
            continue
        if (fs.free_symbols | ks.free_symbols) - set(syms):
            families.append(f"f = {fs}, k = {ks}")
            continue
        try:
            pair = DarbouxPair(Poly.from_sympy(fs, syms), Poly.from_sympy(ks, syms))
        except ValueError:
            outside.append(f"f = {fs}, k = {ks}")
            continue
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    return SweepResult(leading, tuple(pairs), tuple(families), tuple(outside))


@lru_cache(maxsize=None)
def degree_one_search() -> tuple:
    """Stage 1: f = a0 + a1 x + a2 y + a3 z over all 16 zero patterns."""
    found = []
    for pattern in itertools.product((False, True), repeat=4):
        support = [e for e, on in zip(LINEAR, pattern[1:]) if on]
        const = pattern[0]
        if not support:
            continue  # constants (and zero) are excluded
        leading, lower = support[0], support[1:] + ([(0, 0, 0)] if const else [])
        res = sweep_leading(leading, support=lower)
        if res.families or res.outside_field:
            raise ArithmeticError(f"unexpected degree-one solutions for pattern {pattern}")
        found += [p for p in res.pairs if p not in found]
    return tuple(found)


@lru_cache(maxsize=None)
def completeness_sweep() -> tuple:
    """Monic f of degree <= 2 for each of the nine nonconstant leading monomials."""
    return tuple(sweep_leading(m) for m in MONOMIALS[:-1])


def product_candidates(pairs) -> tuple:
    out = []
    for p, q in itertools.combinations_with_replacement(pairs, 2):
        out.append(DarbouxPair(p.f * q.f, p.k + q.k))
    return tuple(out)


def _table_order(pairs) -> list:
    order = {p.f: i for i, p in enumerate(TABLE1)}
    return sorted(pairs, key=lambda p: order.get(p.f, len(order)))


@lru_cache(maxsize=None)
def darboux_search(max_degree: int = 2) -> tuple:
    """Degree-two pairs (table order) followed by the degree-one pairs."""
    if max_degree not in (1, 2):
        raise ValueError("max_degree must be 1 or 2")
    linear = degree_one_search()
    rank = {p.f: i for i, p in enumerate(DEGREE_ONE)}
    ordered_linear = sorted(linear, key=lambda p: rank.get(p.f, len(rank)))
    if max_degree == 1:
        return tuple(ordered_linear)
    quadrics = [p for p in product_candidates(linear) if darboux_verify(p)]
    swept = [p for r in completeness_sweep() for p in r.pairs if p.f.degree() == 2]
    if set(swept) != set(quadrics):
        raise ArithmeticError("sweep and product candidates disagree")
    return tuple(_table_order(quadrics)) + tuple(ordered_linear)


def sweep_report() -> dict:
    rows = []
    for r in completeness_sweep():
        rows.append({
            "leading": "x^{}y^{}z^{}".format(*r.leading),
            "pairs": [p.to_dict() for p in r.pairs],
            "families": list(r.families),
            "outside_field": list(r.outside_field),
        })
    return {"sweep": rows}
