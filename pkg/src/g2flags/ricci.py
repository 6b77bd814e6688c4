"""Ricci tensor of invariant metrics on the a2 flag.

``ricci_closed`` evaluates closed-form components.  ``ricci_besse``
evaluates the general reductive-space formula (with the U map) from the
brackets of k, using unnormalized generators and the inverse metric Gram
matrix so that no square roots appear.

The published closed form carries the constant 544 in its bracket terms.
Evaluating the general formula on the same bracket relations gives 136
(the printed [v2, v3] and [v4, v5] coefficients are half of what
ad-invariance forces).  Both are available through ``variant``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactfield import ALPHA, BETA, QF13, ZERO, as_qf13, inverse, solve
from .flags import FlagId, flag_data
from .g2core import k_bracket
from .metrics import MetricParams, TangentVector, metric_matrix

ALPHA2 = ALPHA * ALPHA
BETA2 = BETA * BETA

RICCI_CONSTANT = {"published": 544, "corrected": 136}


@dataclass(frozen=True)
class RicciComponents:
    ric1: QF13
    ric2: QF13
    ric3: QF13

    def as_tuple(self) -> tuple:
        return (self.ric1, self.ric2, self.ric3)

    def floats(self) -> tuple:
        return tuple(float(x) for x in self.as_tuple())


def mu_params(mu) -> MetricParams:
    return MetricParams(FlagId.ALPHA2, tuple(as_qf13(m) for m in mu))


def _a2(p) -> MetricParams:
    if not isinstance(p, MetricParams):
        p = mu_params(p)
    if p.theta is not FlagId.ALPHA2:
        raise ValueError("Ricci components are available for the a2 flag only")
    return p.validate()


def ricci_closed(p, variant: str = "published") -> RicciComponents:
    """Closed-form components; the (sqrt13+2) line is returned as Ric3."""
    c = RICCI_CONSTANT[variant]
    mu1, mu2, mu3 = _a2(p).diag
    half = QF13(1, 0) / 2
    ric1 = mu1 * mu1 / c * (ALPHA2 / (mu2 * mu2) + BETA2 / (mu3 * mu3))
    ric2 = half - ALPHA2 * mu1 / (c * mu2)
    ric3 = half - BETA2 * mu1 / (c * mu3)
    return RicciComponents(ric1, ric2, ric3)


@lru_cache(maxsize=None)
def _bracket_tensor(theta: FlagId) -> tuple:
    """C[a][b] = basis coordinates of [b_a, b_b]_m (metric independent)."""
    data = flag_data(theta)
    b = data.basis
    return tuple(tuple(data.project_m(k_bracket(b[i], b[j])) for j in range(len(b))) for i in range(len(b)))


class _Besse:
    """General Ricci formula in basis coordinates for one metric."""

    def __init__(self, p: MetricParams):
        self.p = p
        self.data = flag_data(p.theta)
        self.n = n = self.data.dim_m
        m = metric_matrix(p)
        nrm = self.data.basis_norms
        # <b_i, b_j> = (A b_i, b_j) = M[j][i] (b_j, b_j)
        self.gram = [[m[j][i] * nrm[j] for j in range(n)] for i in range(n)]
        self.ginv = inverse(self.gram)
        self.c = _bracket_tensor(p.theta)
        self.pairs = [(a, b) for a in range(n) for b in range(n) if not self.ginv[a][b].is_zero()]

    def unit(self, i: int) -> tuple:
        return tuple(QF13(1, 0) if k == i else ZERO for k in range(self.n))

    def inner(self, u, v) -> QF13:
        g = self.gram
        return sum((u[i] * g[i][j] * v[j] for i in range(self.n) if not u[i].is_zero()
                    for j in range(self.n) if not v[j].is_zero()), ZERO)

    def bracket(self, u, v) -> tuple:
        out = [ZERO] * self.n
        for i in range(self.n):
            if u[i].is_zero():
                continue
            for j in range(self.n):
                if v[j].is_zero():
                    continue
                uv = u[i] * v[j]
                for k, x in enumerate(self.c[i][j]):
                    if not x.is_zero():
                        out[k] += uv * x
        return tuple(out)

    def u_map(self, u, v) -> tuple:
        rhs = [
            (self.inner(self.bracket(self.unit(w), u), v) + self.inner(self.bracket(self.unit(w), v), u)) / 2
            for w in range(self.n)
        ]
        return tuple(solve([list(r) for r in self.gram], rhs))

    def z_vector(self) -> tuple:
        z = [ZERO] * self.n
        for a, b in self.pairs:
            ua = self.u_map(self.unit(a), self.unit(b))
            z = [zi + self.ginv[a][b] * x for zi, x in zip(z, ua)]
        return tuple(z)

    def ricci(self, x, y, z=None) -> QF13:
        g, n = self.ginv, self.n
        t1 = sum(
            (g[a][b] * self.inner(self.bracket(x, self.unit(a)), self.bracket(y, self.unit(b))) for a, b in self.pairs),
            ZERO,
        )
        kx = self.data.to_vector(x)
        ky = self.data.to_vector(y)
        t2 = sum((p * q for p, q in zip(kx, ky)), ZERO)  # -B(x, y) = (x, y)
        px = [[self.inner(self.c[a][b], x) for b in range(n)] for a in range(n)]
        py = px if x == y else [[self.inner(self.c[a][b], y) for b in range(n)] for a in range(n)]
        t3 = ZERO
        for a, c in self.pairs:
            for b, d in self.pairs:
                t3 += g[a][c] * g[b][d] * px[a][b] * py[c][d]
        z = self.z_vector() if z is None else z
        t4 = self.inner(self.u_map(x, y), z)
        return -t1 / 2 + t2 / 2 + t3 / 4 - t4


def u_bilinear(p, u: TangentVector, v: TangentVector) -> TangentVector:
    """U(u, v) from 2<U(u,v), w> = <[w,u]_m, v> + <[w,v]_m, u>."""
    p = _a2(p)
    return TangentVector(p.theta, _Besse(p).u_map(u.coeffs, v.coeffs))


def u_table(p) -> dict:
    """U(b_i, b_j) for i <= j, as basis coordinates."""
    b = _Besse(_a2(p))
    return {(i, j): b.u_map(b.unit(i), b.unit(j)) for i in range(b.n) for j in range(i, b.n)}


def u_diagonal_vanishes(p) -> bool:
    """U(b_i, b_i) = 0 for every basis vector (hence Z = 0)."""
    b = _Besse(_a2(p))
    return all(all(c.is_zero() for c in b.u_map(b.unit(i), b.unit(i))) for i in range(b.n))


def u_vanishes_all_pairs(p) -> bool:
    return all(all(c.is_zero() for c in v) for v in u_table(p).values())


def besse_z(p) -> tuple:
    """Z = sum_i U(v_i, v_i) over a metric-orthonormal basis."""
    return _Besse(_a2(p)).z_vector()


def ricci_matrix(p) -> list:
    """Ric(b_i, b_j) on the unnormalized basis, from the general formula."""
    b = _Besse(_a2(p))
    z = b.z_vector()
    return [[b.ricci(b.unit(i), b.unit(j), z) for j in range(b.n)] for i in range(b.n)]


def ricci_besse(p) -> RicciComponents:
    """Components Ric(u_k, u_k)/(u_k, u_k), one per module; checks module consistency."""
    b = _Besse(_a2(p))
    z = b.z_vector()
    vals = [b.ricci(b.unit(i), b.unit(i), z) / nrm for i, nrm in enumerate(b.data.basis_norms)]
    comps = []
    for m in range(3):
        mine = [v for v, o in zip(vals, b.data.basis_module) if o == m]
        if any(v != mine[0] for v in mine):
            raise ArithmeticError(f"Ricci not constant on module {m + 1}")
        comps.append(mine[0])
    return RicciComponents(*comps)
