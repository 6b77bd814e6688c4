"""Vector fields of the Ricci flow on the a2 flag, in the mu and xyz frames."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..exactfield import ALPHA, BETA, as_qf13, scalar_to_float
from .poly import Poly, X, Y, Z


class DomainError(ValueError):
    """A state lies outside the domain of the requested map or field."""


class Frame(str, Enum):
    MU = "mu"
    XYZ = "xyz"
    KAPPA1 = "kappa1"
    U1 = "U1"
    U2 = "U2"
    U3 = "U3"

    @classmethod
    def parse(cls, value) -> Frame:
        if isinstance(value, cls):
            return value
        for f in cls:
            if f.value.lower() == str(value).lower():
                return f
        raise ValueError(f"unknown frame {value!r}; expected one of {[f.value for f in cls]}")


COORD_NAMES = {
    Frame.MU: ("mu1", "mu2", "mu3"),
    Frame.XYZ: ("x", "y", "z"),
    Frame.KAPPA1: ("x1", "r1", "z1"),
    Frame.U1: ("z1", "z2", "z3"),
    Frame.U2: ("z1", "z2", "z3"),
    Frame.U3: ("z1", "z2", "z3"),
}


@dataclass(frozen=True)
class FlowState:
    coords: tuple
    frame: Frame = Frame.XYZ

    def __post_init__(self):
        if len(self.coords) != 3:
            raise ValueError("a flow state has three coordinates")
        object.__setattr__(self, "coords", tuple(self.coords))
        object.__setattr__(self, "frame", Frame.parse(self.frame))

    def floats(self) -> tuple:
        return tuple(scalar_to_float(c) if not isinstance(c, float) else c for c in self.coords)

    def is_exact(self) -> bool:
        return not any(isinstance(c, float) for c in self.coords)


@dataclass(frozen=True)
class PolyField:
    """X = (P1, P2, P3) with exact coefficients."""

    components: tuple
    frame: Frame
    time: str = "tau"

    def __call__(self, point):
        return tuple(p(point) for p in self.components)

    def eval_float(self, point) -> tuple:
        return tuple(p.eval_float(point) for p in self.components)

    def jacobian(self) -> tuple:
        return tuple(tuple(p.diff(j) for j in range(3)) for p in self.components)

    def degree(self) -> int:
        return max(p.degree() for p in self.components)

    def lie_derivative(self, f: Poly) -> Poly:
        """(grad f) . X"""
        return sum((f.diff(i) * p for i, p in enumerate(self.components)), Poly())

    def __eq__(self, other):
        return isinstance(other, PolyField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)


# factor of the Ricci closed form: 544 gives the published field, 136 the
# one from the general formula; coordinates rescale by 68 or 17
SCALE = {"published": 68, "corrected": 17}


def _ratio_scale(variant: str) -> int:
    try:
        return SCALE[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None


def _positive(values, what: str) -> None:
    for v in values:
        if (v <= 0) if isinstance(v, float) else as_qf13(v).sign() <= 0:
            raise DomainError(f"{what} requires positive coordinates, got {values}")


def _exact(values) -> bool:
    return not any(isinstance(v, float) for v in values)


def _constants(exact: bool):
    if exact:
        return ALPHA, BETA
    return scalar_to_float(ALPHA), scalar_to_float(BETA)


def mu_field(m, variant: str = "published") -> tuple:
    """mu' = -2 Ric(mu), componentwise on the three moduli."""
    m = m.coords if isinstance(m, FlowState) else tuple(m)
    _positive(m, "mu_field")
    exact = _exact(m)
    mu1, mu2, mu3 = (as_qf13(v) for v in m) if exact else (float(v) for v in m)
    a, b = _constants(exact)
    c = 4 * _ratio_scale(variant)  # 272 or 68
    r2 = a * mu1 / mu2
    r3 = b * mu1 / mu3
    return (
        -(r2 * r2 + r3 * r3) / c,
        a * r2 / c - 1,
        b * r3 / c - 1,
    )


def mu_to_xyz(m, variant: str = "published") -> FlowState:
    m = m.coords if isinstance(m, FlowState) else tuple(m)
    _positive(m, "mu_to_xyz")
    exact = _exact(m)
    mu1, mu2, mu3 = (as_qf13(v) for v in m) if exact else (float(v) for v in m)
    a, b = _constants(exact)
    s = _ratio_scale(variant)
    return FlowState((a * mu1 / (s * mu2), b * mu1 / (s * mu3), mu1 / s), Frame.XYZ)


def xyz_to_mu(s, variant: str = "published") -> FlowState:
    p = s.coords if isinstance(s, FlowState) else tuple(s)
    _positive(p, "xyz_to_mu")
    exact = _exact(p)
    x, y, z = (as_qf13(v) for v in p) if exact else (float(v) for v in p)
    a, b = _constants(exact)
    k = _ratio_scale(variant)
    return FlowState((k * z, a * z / x, b * z / y), Frame.MU)


def _xyz_components() -> tuple:
    return (
        X * (-X ** 2 / 2 + X / ALPHA - Y ** 2 / 4),
        Y * (-X ** 2 / 4 + Y / BETA - Y ** 2 / 2),
        -Z * (X ** 2 + Y ** 2) / 4,
    )


XYZ_FIELD = PolyField(_xyz_components(), Frame.XYZ, "tau")


def poly_field(s) -> tuple:
    """Right-hand side of the polynomial system (time tau, t = z tau)."""
    p = s.coords if isinstance(s, FlowState) else tuple(s)
    return XYZ_FIELD(p)


def main_eq(s) -> tuple:
    """The xyz system in the original time t: poly_field divided by z."""
    p = s.coords if isinstance(s, FlowState) else tuple(s)
    if (p[2] <= 0) if isinstance(p[2], float) else as_qf13(p[2]).sign() <= 0:
        raise DomainError("main_eq requires z > 0")
    return tuple(v / p[2] for v in XYZ_FIELD(p))


def chain_rule_check(m, variant: str = "published") -> bool:
    """Chain rule check: d/dt mu_to_xyz(mu) equals main_eq at the image point."""
    m = tuple(as_qf13(v) for v in m)
    dm = mu_field(m, variant)
    x, y, z = mu_to_xyz(m, variant).coords
    mu1, mu2, mu3 = m
    k = _ratio_scale(variant)
    dx = ALPHA / k * (dm[0] / mu2 - mu1 * dm[1] / (mu2 * mu2))
    dy = BETA / k * (dm[0] / mu3 - mu1 * dm[2] / (mu3 * mu3))
    dz = dm[0] / k
    return (dx, dy, dz) == main_eq((x, y, z))
