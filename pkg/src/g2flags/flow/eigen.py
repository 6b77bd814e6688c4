"""Eigen-data of small real matrices.

Eigenvalues come from the characteristic polynomial in closed form.
Decoupled coordinates (an off-diagonal row or column that vanishes) are
split off first, so diagonal entries are returned without rounding.
Eigenvectors are null vectors of (J - lambda I)^m via SVD.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

ZERO_TOL = 1e-9


def _quadratic(a: float, b: float, c: float, d: float) -> list:
    """Eigenvalues of [[a, b], [c, d]]."""
    half_tr = (a + d) / 2
    disc = ((a - d) / 2) ** 2 + b * c
    if disc >= 0:
        r = math.sqrt(disc)
        big = half_tr + math.copysign(r, half_tr) if half_tr else r
        det = a * d - b * c
        if big == 0:
            return [0.0, 0.0]
        return [big, det / big]
    r = cmath.sqrt(disc)
    return [half_tr + r, half_tr - r]


def _cubic_roots(a: float, b: float, c: float) -> list:
    """Roots of t^3 + a t^2 + b t + c."""
    p = b - a * a / 3
    q = 2 * a ** 3 / 27 - a * b / 3 + c
    shift = -a / 3
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if abs(p) < 1e-300 and abs(q) < 1e-300:
        roots = [shift] * 3
    elif disc <= 0:
        r = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * r)))
        phi = math.acos(arg) / 3
        roots = [r * math.cos(phi - 2 * math.pi * k / 3) + shift for k in range(3)]
    else:
        s = math.sqrt(disc)
        u = math.copysign(abs(-q / 2 - math.copysign(s, q)) ** (1 / 3), -q / 2 - math.copysign(s, q))
        v = -p / (3 * u) if u else 0.0
        real = u + v + shift
        im = math.sqrt(3) / 2 * (u - v)
        roots = [real, complex(-(u + v) / 2 + shift, im), complex(-(u + v) / 2 + shift, -im)]
    return [_newton(r, a, b, c) for r in roots]


def _newton(t, a, b, c, steps: int = 3):
    for _ in range(steps):
        f = ((t + a) * t + b) * t + c
        df = (3 * t + 2 * a) * t + b
        if df == 0:
            break
        step = f / df
        t = t - step
        if abs(step) <= 1e-17 * max(1.0, abs(t)):
            break
    return t


def _split(m: list, idx: list) -> list:
    """Eigenvalues of the principal submatrix on idx, peeling decoupled rows/columns."""
    if len(idx) == 1:
        return [m[idx[0]][idx[0]]]
    for i in idx:
        others = [j for j in idx if j != i]
        if all(m[i][j] == 0 for j in others) or all(m[j][i] == 0 for j in others):
            return [m[i][i]] + _split(m, others)
    if len(idx) == 2:
        i, j = idx
        return _quadratic(m[i][i], m[i][j], m[j][i], m[j][j])
    sub = np.array([[m[i][j] for j in idx] for i in idx], dtype=float)
    tr = float(np.trace(sub))
    minors = sum(sub[i, i] * sub[j, j] - sub[i, j] * sub[j, i] for i in range(3) for j in range(i + 1, 3))
    det = float(np.linalg.det(sub))
    return _cubic_roots(-tr, float(minors), -det)


def _clean(v):
    v = complex(v)
    if abs(v.imag) <= 1e-14 * max(1.0, abs(v.real)):
        return complex(v.real, 0.0)
    return v


def eigenvalues(m) -> list:
    """Eigenvalues of a real 3x3 matrix, sorted by (real part, imaginary part)."""
    m = [[float(v) for v in row] for row in m]
    vals = [_clean(v) for v in _split(m, list(range(len(m))))]
    return sorted(vals, key=lambda v: (round(v.real, 13), v.imag))


def _null_space(a: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    _, s, vh = np.linalg.svd(a)
    scale = max(1.0, s[0] if s.size else 0.0)
    rank = int((s > tol * scale).sum())
    return vh[rank:].conj().T


def _normalize(v: np.ndarray) -> tuple:
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    v = v * (abs(v[k]) / v[k])
    v = np.where(np.abs(v) < 1e-14, 0, v)
    if np.all(np.abs(np.imag(v)) < 1e-14):
        return tuple(float(np.real(c)) for c in v)
    return tuple(complex(c) for c in v)


def cluster(vals: list, tol: float = 1e-7) -> list:
    """Group equal eigenvalues: list of (value, multiplicity)."""
    groups = []
    for v in vals:
        for g in groups:
            if abs(g[0] - v) <= tol * max(1.0, abs(v)):
                g[1] += 1
                break
        else:
            groups.append([v, 1])
    return [(v, k) for v, k in groups]


def eigen_decomposition(m) -> tuple:
    """Eigenvalues and one vector per eigenvalue, plus the vector kinds.

    For a defective eigenvalue the missing vectors are generalized
    eigenvectors, taken orthogonal to the true eigenspace.
    """
    vals = eigenvalues(m)
    a = np.array(m, dtype=float)
    n = a.shape[0]
    vectors, kinds = [], []
    for lam, mult in cluster(vals):
        shifted = a - lam * np.eye(n)
        eig = _null_space(shifted)
        basis = [eig[:, k] for k in range(min(eig.shape[1], mult))]
        kinds += ["eigen"] * len(basis)
        if len(basis) < mult:
            gen = _null_space(np.linalg.matrix_power(shifted, mult))
            proj = gen - eig @ (eig.conj().T @ gen)
            _, _, vh = np.linalg.svd(proj)
            extra = (gen @ vh.conj().T)[:, : mult - len(basis)]
            for k in range(extra.shape[1]):
                w = extra[:, k] - eig @ (eig.conj().T @ extra[:, k])
                basis.append(w)
                kinds.append("generalized")
        vectors += [_normalize(v) for v in basis]
    return vals, vectors, kinds


def classify(vals: list, tol: float = ZERO_TOL) -> str:
    re = [complex(v).real for v in vals]
    if any(abs(r) < tol for r in re):
        return "nonhyperbolic"
    if all(r < 0 for r in re):
        return "attractor"
    if all(r > 0 for r in re):
        return "source"
    return "saddle"
