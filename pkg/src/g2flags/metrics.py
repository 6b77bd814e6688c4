"""Invariant metrics on the flags: parametrization, g.o. and equigeodesic tests.

Closed forms are paired with independent oracles: the Souris criterion
``[Z + X, AX] = 0`` solved for Z in the isotropy algebra, and the
bracket equations ``[X, T_i^j X_i + T_j^i X_j]_m = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional

import numpy as np

from .exactfield import ALPHA, BETA, QF13, ZERO, as_qf13, solve
from .flags import FlagData, FlagId, ZERO6, flag_data, vadd, vscale
from .g2core import k_bracket, k_inner

ALPHA2 = ALPHA * ALPHA  # (2 - sqrt13)^2
BETA2 = BETA * BETA  # (2 + sqrt13)^2

_N_DIAG = {FlagId.EMPTY: 6, FlagId.ALPHA1: 3, FlagId.ALPHA2: 3}
_N_OFF = {FlagId.EMPTY: 3, FlagId.ALPHA1: 1, FlagId.ALPHA2: 0}


class MetricError(ValueError):
    """Parameters outside the domain of invariant metrics."""


@dataclass(frozen=True)
class MetricParams:
    theta: FlagId
    diag: tuple
    offdiag: tuple = ()

    def __post_init__(self):
        theta = FlagId.parse(self.theta)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "diag", tuple(as_qf13(x) for x in self.diag))
        object.__setattr__(self, "offdiag", tuple(as_qf13(x) for x in self.offdiag))
        if len(self.diag) != _N_DIAG[theta]:
            raise MetricError(f"{theta.value}: expected {_N_DIAG[theta]} diagonal parameters, got {len(self.diag)}")
        if len(self.offdiag) != _N_OFF[theta]:
            raise MetricError(f"{theta.value}: expected {_N_OFF[theta]} off-diagonal parameters, got {len(self.offdiag)}")

    def scaled(self, c) -> MetricParams:
        c = as_qf13(c)
        return MetricParams(self.theta, tuple(c * x for x in self.diag), tuple(c * x for x in self.offdiag))

    def violations(self) -> list:
        """Names of violated bounds; empty iff the parameters define a metric."""
        out = [f"mu{i + 1} > 0" for i, m in enumerate(self.diag) if m.sign() <= 0]
        if self.theta is FlagId.EMPTY:
            for k, a in enumerate(self.offdiag):
                m1, m2 = self.diag[2 * k], self.diag[2 * k + 1]
                if (a * a - m1 * m2).sign() >= 0:
                    out.append(f"a{k + 1}^2 < mu{2 * k + 1}*mu{2 * k + 2}")
        elif self.theta is FlagId.ALPHA1:
            (a,) = self.offdiag
            if (a * a - self.diag[1] * self.diag[2]).sign() >= 0:
                out.append("a^2 < mu2*mu3")
        return out

    def validate(self) -> MetricParams:
        bad = self.violations()
        if bad:
            raise MetricError(f"invalid {self.theta.value} metric: violates {', '.join(bad)}")
        return self


@dataclass(frozen=True)
class TangentVector:
    theta: FlagId
    coeffs: tuple

    def __post_init__(self):
        theta = FlagId.parse(self.theta)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "coeffs", tuple(as_qf13(x) for x in self.coeffs))
        n = flag_data(theta).dim_m
        if len(self.coeffs) != n:
            raise ValueError(f"{theta.value}: tangent vector needs {n} coefficients, got {len(self.coeffs)}")

    @property
    def data(self) -> FlagData:
        return flag_data(self.theta)

    def kvector(self) -> tuple:
        return self.data.to_vector(self.coeffs)

    def scaled(self, c) -> TangentVector:
        c = as_qf13(c)
        return TangentVector(self.theta, tuple(c * x for x in self.coeffs))


def metric_matrix(p: MetricParams) -> list:
    """[A] in the ordered basis of the flag, exactly as in the block layouts."""
    p.validate()
    d, a = p.diag, p.offdiag
    if p.theta is FlagId.EMPTY:
        m = [[ZERO] * 6 for _ in range(6)]
        for k in range(3):
            i = 2 * k
            m[i][i], m[i + 1][i + 1] = d[i], d[i + 1]
            m[i][i + 1] = m[i + 1][i] = a[k]
        return m
    m = [[ZERO] * 5 for _ in range(5)]
    m[0][0] = d[0]
    m[1][1] = m[2][2] = d[1]
    m[3][3] = m[4][4] = d[2]
    if p.theta is FlagId.ALPHA1:
        m[1][3] = m[3][1] = m[2][4] = m[4][2] = a[0]
    return m


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    violations: tuple
    eigenvalues: tuple  # floats, one per 2x2 block or diagonal entry

    def to_dict(self) -> dict:
        return {"valid": self.valid, "violations": list(self.violations), "eigenvalues": list(self.eigenvalues)}


def _block_eigs(m1: float, m2: float, a: float) -> tuple:
    r = math.hypot(m1 - m2, 2 * a)
    return ((m1 + m2 - r) / 2, (m1 + m2 + r) / 2)


def metric_is_valid(p: MetricParams) -> ValidityReport:
    d = [float(x) for x in p.diag]
    a = [float(x) for x in p.offdiag]
    if p.theta is FlagId.EMPTY:
        eig = sum((_block_eigs(d[2 * k], d[2 * k + 1], a[k]) for k in range(3)), ())
    elif p.theta is FlagId.ALPHA1:
        eig = (d[0],) + _block_eigs(d[1], d[2], a[0])
    else:
        eig = tuple(d)
    bad = p.violations()
    return ValidityReport(not bad, tuple(bad), eig)


def apply_metric(p: MetricParams, v) -> tuple:
    """A(v) for a KVector ``v`` in m."""
    data = flag_data(p.theta)
    c = data.project_m(v)
    m = metric_matrix(p)
    n = len(c)
    ac = [sum((m[i][j] * c[j] for j in range(n)), ZERO) for i in range(n)]
    return data.to_vector(ac)


def metric_inner(p: MetricParams, u, v) -> QF13:
    """<u, v> = (A u, v) for KVectors in m."""
    return k_inner(apply_metric(p, u), v)


# -- geodesic orbit metrics ---------------------------------------------------------


def is_go_closed_form(p: MetricParams) -> bool:
    p.validate()
    d, a = p.diag, p.offdiag
    if p.theta is FlagId.EMPTY:
        return all(x == d[0] for x in d) and a[1] == -a[0] and a[2] == a[0]
    if p.theta is FlagId.ALPHA1:
        mu1, mu, mu3 = d
        # mu = mu1 (a = 0) is the normal metric, also g.o.
        return mu == mu3 and (mu - mu1).sign() >= 0 and a[0] * a[0] == mu * (mu - mu1)
    mu1, mu2, mu3 = d
    return mu1 * (BETA2 * mu2 + ALPHA2 * mu3) == 34 * mu2 * mu3


def go_lambda_formula(p: MetricParams, x: TangentVector) -> QF13:
    """lambda = 9 x1 (mu2 - mu3) / ((2+sqrt13)^2 mu2 + (2-sqrt13)^2 mu3) on the a2 flag."""
    if p.theta is not FlagId.ALPHA2:
        raise ValueError("the closed-form witness exists only for the a2 flag")
    _, mu2, mu3 = p.diag
    return 9 * x.coeffs[0] * (mu2 - mu3) / (BETA2 * mu2 + ALPHA2 * mu3)


@dataclass(frozen=True)
class Witness:
    found: bool
    coeffs: tuple  # coefficients on the isotropy basis
    z: Optional[tuple]  # the KVector Z, or None

    @property
    def lam(self):
        return self.coeffs[0] if self.coeffs else ZERO


def souris_residual(p: MetricParams, x: TangentVector, z) -> tuple:
    xv = x.kvector()
    return k_bracket(vadd(z, xv), apply_metric(p, xv))


def go_witness(p: MetricParams, x: TangentVector) -> Witness:
    """Solve [Z + X, AX] = 0 for Z in k_Theta (full bracket in k)."""
    p.validate()
    data = flag_data(p.theta)
    xv = x.kvector()
    ax = apply_metric(p, xv)
    base = k_bracket(xv, ax)
    if not data.isotropy:
        ok = all(c.is_zero() for c in base)
        return Witness(ok, (), ZERO6 if ok else None)
    cols = [k_bracket(k, ax) for k in data.isotropy]
    mat = [[col[r] for col in cols] for r in range(6)]
    sol = solve(mat, [-c for c in base])
    if sol is None:
        return Witness(False, (), None)
    z = vadd(ZERO6, *(vscale(c, k) for c, k in zip(sol, data.isotropy)))
    return Witness(True, tuple(sol), z)


def go_closed_form_float(theta, diag, offdiag=(), tol: float = 1e-12) -> bool:
    """Float version of the closed form, for irrational entries such as a = sqrt2."""
    theta = FlagId.parse(theta)
    d = [float(x) for x in diag]
    a = [float(x) for x in offdiag]
    scale = max(abs(x) for x in d)
    if theta is FlagId.EMPTY:
        return all(abs(x - d[0]) <= tol * scale for x in d) and abs(a[1] + a[0]) <= tol * scale and abs(a[2] - a[0]) <= tol * scale
    if theta is FlagId.ALPHA1:
        mu1, mu, mu3 = d
        return abs(mu - mu3) <= tol * scale and mu >= mu1 - tol * scale and abs(a[0] ** 2 - mu * (mu - mu1)) <= tol * scale**2
    mu1, mu2, mu3 = d
    b2, a2 = float(BETA2), float(ALPHA2)
    return abs(mu1 * (b2 * mu2 + a2 * mu3) - 34 * mu2 * mu3) <= tol * scale**2 * 34


def _float_bracket_tensor() -> np.ndarray:
    from .g2core import structure_constants_wz

    c = structure_constants_wz()
    return np.array([[[float(x) for x in c[i][j]] for j in range(6)] for i in range(6)])


def go_witness_float(theta, diag, offdiag, coeffs, tol: float = 1e-10) -> tuple:
    """Least-squares Souris solve in floats; returns (found, Z coefficients, residual)."""
    data = flag_data(theta)
    ten = _float_bracket_tensor()
    basis = np.array([[float(x) for x in b] for b in data.basis])
    d = [float(x) for x in diag]
    a = [float(x) for x in offdiag]
    n = data.dim_m
    m = np.zeros((n, n))
    if data.theta is FlagId.EMPTY:
        for k in range(3):
            m[2 * k, 2 * k], m[2 * k + 1, 2 * k + 1] = d[2 * k], d[2 * k + 1]
            m[2 * k, 2 * k + 1] = m[2 * k + 1, 2 * k] = a[k]
    else:
        m[:] = np.diag([d[0], d[1], d[1], d[2], d[2]])
        if data.theta is FlagId.ALPHA1:
            m[1, 3] = m[3, 1] = m[2, 4] = m[4, 2] = a[0]
    c = np.array([float(x) for x in coeffs])
    xv = c @ basis
    axv = (m @ c) @ basis
    br = lambda u, v: np.einsum("i,j,ijk->k", u, v, ten)  # noqa: E731
    base = br(xv, axv)
    if not data.isotropy:
        res = float(np.linalg.norm(base))
        return res <= tol, np.zeros(0), res
    ks = np.array([[float(x) for x in k] for k in data.isotropy])
    cols = np.stack([br(k, axv) for k in ks], axis=1)
    sol, *_ = np.linalg.lstsq(cols, -base, rcond=None)
    res = float(np.linalg.norm(cols @ sol + base))
    return res <= tol * max(1.0, float(np.linalg.norm(base))), sol, res


# -- equigeodesic vectors -----------------------------------------------------------


def is_equigeodesic_closed_form(x: TangentVector) -> bool:
    c = x.coeffs
    nz = [not v.is_zero() for v in c]
    if x.theta is FlagId.EMPTY:
        # pairs in basis order (W1, Z3), (W2, Z2), (W3, Z1)
        return sum(1 for k in range(3) if nz[2 * k] or nz[2 * k + 1]) <= 1
    if x.theta is FlagId.ALPHA1:
        if not any(nz[1:]):
            return True
        w2, w3, z2, z1 = c[1], c[2], c[3], -c[4]
        return not nz[0] and (w2 * z1 + w3 * z2).is_zero()
    return not nz[0] or not any(nz[1:])


def _t_map(data: FlagData, i: int, j: int, v) -> tuple:
    """T_i^j applied to a KVector ``v`` of module i."""
    if i == j:
        return v
    for pair in data.equiv_pairs:
        for src, dst, forward in ((pair.source, pair.target, True), (pair.target, pair.source, False)):
            if (src, dst) != (i, j):
                continue
            gens = data.modules[src].generators if forward else pair.images
            imgs = pair.images if forward else data.modules[pair.source].generators
            norms = [k_inner(g, g) for g in gens]
            coeffs = [k_inner(v, g) / n for g, n in zip(gens, norms)]
            return vadd(ZERO6, *(vscale(cf, im) for cf, im in zip(coeffs, imgs)))
    return ZERO6


def equigeodesic_equations(x: TangentVector) -> list:
    """All left-hand sides [X, T_i^j X_i + T_j^i X_j]_m as basis coordinates."""
    data = x.data
    xv = x.kvector()
    parts = [data.module_part(xv, i) for i in range(len(data.modules))]
    out = []
    for i, j in combinations_with_replacement(range(len(data.modules)), 2):
        y = vadd(_t_map(data, i, j, parts[i]), _t_map(data, j, i, parts[j]))
        out.append(((i, j), data.project_m(k_bracket(xv, y))))
    return out


def equigeodesic_check(x: TangentVector) -> bool:
    return all(all(c.is_zero() for c in eq) for _, eq in equigeodesic_equations(x))

