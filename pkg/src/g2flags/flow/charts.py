"""Blow-up chart kappa1 and Poincare charts U1, U2, U3 of the xyz system.

The chart systems are derived from ``XYZ_FIELD`` by substitution.  The
printed forms are kept separately in ``PRINTED_SYSTEMS`` so that the two
can be compared coefficient by coefficient.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ..exactfield import ALPHA, BETA
from .field import Frame, PolyField, XYZ_FIELD
from .poly import Poly, X, Y, Z

CHARTS = (Frame.KAPPA1, Frame.U1, Frame.U2, Frame.U3)

# For U_i: the coordinate sent to infinity, and the order of the other two.
_POINCARE = {Frame.U1: (0, (1, 2)), Frame.U2: (1, (0, 2)), Frame.U3: (2, (0, 1))}


def _exact_divide(p: Poly, exp: tuple) -> Poly:
    q = p.shift(tuple(-e for e in exp))
    if not q.is_polynomial():
        raise ArithmeticError(f"{p.to_text()} is not divisible by the monomial {exp}")
    return q


def derive_kappa1(field: PolyField = XYZ_FIELD) -> PolyField:
    """x = r1 x1, y = r1, z = z1 in variables (x1, r1, z1), then divide by r1."""
    x1, r1, z1 = Poly.variables()
    subs = (r1 * x1, r1, z1)
    p1, p2, p3 = (c.compose(subs) for c in field.components)
    # x' = r1' x1 + r1 x1'
    dx1 = _exact_divide(p1 - x1 * p2, (0, 1, 0))
    comps = tuple(_exact_divide(c, (0, 1, 0)) for c in (dx1, p2, p3))
    return PolyField(comps, Frame.KAPPA1, "s")


def derive_poincare(chart, field: PolyField = XYZ_FIELD) -> PolyField:
    """p(X) = z3^3 / Delta^2 (-z1 P^i + P^j, -z2 P^i + P^k, -z3 P^i); Delta^2 dropped."""
    chart = Frame.parse(chart)
    i, (j, k) = _POINCARE[chart]
    z1, z2, z3 = Poly.variables()
    inv = z3 ** -1
    subs = [None, None, None]
    subs[i] = inv
    subs[j] = z1 * inv
    subs[k] = z2 * inv
    pi, pj, pk = (field.components[n].compose(subs) for n in (i, j, k))
    d = field.degree()
    comps = tuple((c).shift((0, 0, d)) for c in (-z1 * pi + pj, -z2 * pi + pk, -z3 * pi))
    for c in comps:
        if not c.is_polynomial():
            raise ArithmeticError("Poincare transform did not clear denominators")
    return PolyField(comps, chart, "s")


@lru_cache(maxsize=None)
def chart_system(chart) -> PolyField:
    chart = Frame.parse(chart)
    if chart is Frame.KAPPA1:
        return derive_kappa1()
    if chart in _POINCARE:
        return derive_poincare(chart)
    raise ValueError(f"unknown chart {chart.value!r}")


def _printed() -> dict:
    x1, r1, z1 = Poly.variables()
    kappa1 = (
        x1 * (r1 / 4 * (1 - x1 ** 2) - 1 / BETA + x1 / ALPHA),
        -r1 * ((2 + x1 ** 2) * r1 / 4 - 1 / BETA),
        -r1 * z1 * (1 + x1 ** 2) / 4,
    )
    z1, z2, z3 = X, Y, Z
    u1 = (
        z1 * ((1 - z1 ** 2) / 4 - z3 / ALPHA + z1 * z3 / BETA),
        z2 * (Poly.const(1) / 4 - z3 / ALPHA),
        z3 / 4 * (2 + z1 ** 2 - 4 * z3 / ALPHA),
    )
    u2 = (
        z1 * ((1 - z1 ** 2) / 4 - z3 / BETA + z1 * z3 / ALPHA),
        z2 * (Poly.const(1) / 4 - z3 / BETA),
        z3 / 4 * (2 + z1 ** 2 - 4 * z3 / BETA),
    )
    u3 = (
        z1 ** 2 * (-z1 / 4 + z3 / ALPHA),
        -z2 ** 2 * (z2 / 4 - z3 / BETA),
        z3 * (z1 ** 2 + z2 ** 2) / 4,
    )
    return {
        Frame.KAPPA1: PolyField(kappa1, Frame.KAPPA1, "s"),
        Frame.U1: PolyField(u1, Frame.U1, "s"),
        Frame.U2: PolyField(u2, Frame.U2, "s"),
        Frame.U3: PolyField(u3, Frame.U3, "s"),
    }


PRINTED_SYSTEMS = _printed()


def chart_diff(chart) -> list:
    """Coefficients where derived and printed systems differ: (component, exponent, derived, printed)."""
    chart = Frame.parse(chart)
    out = []
    for n, (d, p) in enumerate(zip(chart_system(chart).components, PRINTED_SYSTEMS[chart].components)):
        for e in sorted(set(d.terms) | set(p.terms)):
            if d.coeff(e) != p.coeff(e):
                out.append((n, e, d.coeff(e), p.coeff(e)))
    return out


def chart_field(chart, s) -> tuple:
    chart = Frame.parse(chart)
    p = s.coords if hasattr(s, "coords") else tuple(s)
    return chart_system(chart)(p)


def to_xyz(chart, point) -> tuple:
    """Finite xyz point for a chart point (None where it lies at infinity)."""
    chart = Frame.parse(chart)
    a, b, c = (float(v) for v in point)
    if chart is Frame.KAPPA1:
        return (b * a, b, c)
    if c == 0:
        return None
    i, (j, k) = _POINCARE[chart]
    out = [0.0, 0.0, 0.0]
    out[i], out[j], out[k] = 1 / c, a / c, b / c
    return tuple(out)


def disk_projection(chart, point) -> tuple:
    """pi(x) = x / Delta(x) of the corresponding point of the closed ball."""
    chart = Frame.parse(chart)
    if chart is Frame.KAPPA1 or chart is Frame.XYZ:
        p = to_xyz(chart, point) if chart is Frame.KAPPA1 else tuple(float(v) for v in point)
        delta = math.sqrt(1 + sum(v * v for v in p))
        return tuple(v / delta for v in p)
    a, b, c = (float(v) for v in point)
    i, (j, k) = _POINCARE[chart]
    delta = math.sqrt(1 + a * a + b * b + c * c)
    out = [0.0, 0.0, 0.0]
    out[i], out[j], out[k] = 1 / delta, a / delta, b / delta
    return tuple(out)
