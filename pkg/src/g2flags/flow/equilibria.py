"""Equilibria of the xyz system and of its charts, with linearizations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..exactfield import ALPHA, BETA, QF13, as_qf13, scalar_to_float
from .charts import CHARTS, chart_system, disk_projection
from .eigen import classify, eigen_decomposition
from .field import Frame, FlowState, PolyField, XYZ_FIELD

Q3_GUESS = (0.05, 0.35)
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Equilibrium:
    label: str
    point: FlowState
    eigenvalues: tuple
    eigenvectors: tuple
    vector_kinds: tuple
    classification: str
    family_parameter: str | None = None
    disk: tuple | None = None
    residual: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "frame": self.point.frame.value,
            "point": list(self.point.coords),
            "eigenvalues": list(self.eigenvalues),
            "eigenvectors": [list(v) for v in self.eigenvectors],
            "vector_kinds": list(self.vector_kinds),
            "classification": self.classification,
            "family_parameter": self.family_parameter,
            "disk": list(self.disk) if self.disk is not None else None,
            "residual": self.residual,
        }


def system_for(frame) -> PolyField:
    frame = Frame.parse(frame)
    if frame is Frame.XYZ:
        return XYZ_FIELD
    if frame in CHARTS:
        return chart_system(frame)
    raise ValueError(f"no polynomial system in the {frame.value} frame")


def jacobian_at(frame, point) -> list:
    """Exact symbolic Jacobian evaluated at the point (exact or float)."""
    return [[d(point) for d in row] for row in system_for(frame).jacobian()]


def _residual(frame, point) -> float:
    return math.sqrt(sum(v * v for v in system_for(frame).eval_float(point)))


def _to_float(v) -> float:
    return v if isinstance(v, float) else scalar_to_float(v)


def linearize(frame, point) -> tuple:
    """(eigenvalues, eigenvectors, kinds, classification) at an equilibrium."""
    frame = Frame.parse(frame)
    coords = point.coords if isinstance(point, FlowState) else tuple(point)
    res = _residual(frame, coords)
    if res >= 1e-10:
        raise ValueError(f"not an equilibrium of the {frame.value} field (residual {res:.3g})")
    jac = [[_to_float(v) for v in row] for row in jacobian_at(frame, coords)]
    vals, vecs, kinds = eigen_decomposition(jac)
    return tuple(vals), tuple(vecs), tuple(kinds), classify(vals)


def equilibrium(label, frame, coords, family_parameter=None, disk=None) -> Equilibrium:
    frame = Frame.parse(frame)
    vals, vecs, kinds, cls = linearize(frame, coords)
    return Equilibrium(
        label,
        FlowState(tuple(coords), frame),
        vals,
        vecs,
        kinds,
        cls,
        family_parameter,
        disk,
        _residual(frame, coords),
    )


def newton_q3(guess=Q3_GUESS, tol: float = NEWTON_TOL) -> tuple:
    """Interior zero of the planar system A(x, y) = B(x, y) = 0."""
    a = 1 / scalar_to_float(ALPHA)
    b = 1 / scalar_to_float(BETA)
    x, y = guess
    for _ in range(NEWTON_MAX_ITER):
        f = -x * x / 2 + a * x - y * y / 4
        g = -x * x / 4 + b * y - y * y / 2
        j11, j12 = -x + a, -y / 2
        j21, j22 = -x / 2, b - y
        det = j11 * j22 - j12 * j21
        dx = (f * j22 - g * j12) / det
        dy = (j11 * g - j21 * f) / det
        x, y = x - dx, y - dy
        if max(abs(dx), abs(dy)) < tol and max(abs(f), abs(g)) < tol:
            return (x, y)
    raise ConvergenceError(f"Newton did not converge in {NEWTON_MAX_ITER} iterations")


def finite_equilibria(z_param=QF13(1)) -> list:
    """q1, q2 exactly, q3 by Newton, and the z-axis family q4 at z = z_param."""
    q3 = newton_q3()
    pts = [
        ("q1", (2 / ALPHA, QF13(0), QF13(0)), None),
        ("q2", (QF13(0), 2 / BETA, QF13(0)), None),
        ("q3", (q3[0], q3[1], 0.0), None),
        ("q4", (QF13(0), QF13(0), as_qf13(z_param)), "z"),
    ]
    return [
        equilibrium(label, Frame.XYZ, p, fam, disk_projection(Frame.XYZ, [_to_float(v) for v in p]))
        for label, p, fam in pts
    ]


def chart_equilibria(chart, z_star=QF13(1)) -> list:
    """Equilibria on r1 = 0 for kappa1 and on the sphere at infinity for U1..U3."""
    chart = Frame.parse(chart)
    zero, one = QF13(0), QF13(1)
    if chart is Frame.KAPPA1:
        z_star = as_qf13(z_star)
        pts = [("p+", (ALPHA / BETA, zero, z_star), "z1*"), ("p-", (zero, zero, z_star), "z1*")]
    elif chart in (Frame.U1, Frame.U2):
        pts = [("p1", (one, zero, zero), None), ("p2", (-one, zero, zero), None), ("origin", (zero, zero, zero), None)]
    elif chart is Frame.U3:
        pts = [("origin", (zero, zero, zero), None)]
    else:
        raise ValueError(f"unknown chart {chart.value!r}")
    return [
        equilibrium(label, chart, p, fam, disk_projection(chart, [_to_float(v) for v in p]))
        for label, p, fam in pts
    ]


def kappa1_generalized_vector(z_star) -> tuple:
    """v3+ = (0, 1, -z1*(alpha^2 + beta^2)/(4 beta)), exactly."""
    z_star = as_qf13(z_star)
    return (QF13(0), QF13(1), -z_star * (ALPHA * ALPHA + BETA * BETA) / (4 * BETA))
