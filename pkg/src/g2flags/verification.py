"""Exact invariant suite run by ``g2flags verify``."""

from __future__ import annotations

import time
from fractions import Fraction as F

from .exactfield import QF13, ZERO
from .flags import FlagId, Report, flag_data, flag_reports, kvec_text, tilde_t_check
from .g2core import (
    K_LABELS,
    PUBLISHED_CONSTANTS,
    WZ_LABELS,
    bracket_coords,
    jacobi_violations,
    killing_form,
    orthonormal_basis,
    structure_constants_g2,
    structure_constants_k,
    structure_constants_wz,
)

# (i, j, {k: coefficient}) in the (X1, X2, X3, Y1, Y2, Y3) basis
BRACKETS_XY = (
    (0, 1, {2: 1}),
    (1, 2, {0: 1}),
    (2, 5, {4: -1}),
    (0, 2, {1: -1}),
    (1, 3, {5: 1}),
    (3, 4, {0: 1, 5: F(4, 3)}),
    (0, 3, {4: 1}),
    (1, 5, {3: -1}),
    (3, 5, {1: 1, 4: F(-4, 3)}),
    (0, 4, {3: -1}),
    (2, 4, {5: 1}),
    (4, 5, {2: 1, 3: F(4, 3)}),
)

# the same in the orthonormal (W1, W2, W3, Z1, Z2, Z3) basis
_H = F(1, 2)
BRACKETS_WZ = (
    (0, 1, {2: _H}),
    (1, 2, {0: _H}),
    (2, 5, {4: -_H}),
    (0, 2, {1: -_H}),
    (1, 3, {5: _H}),
    (3, 4, {0: _H}),
    (0, 3, {4: _H}),
    (1, 5, {3: -_H}),
    (3, 5, {1: _H}),
    (0, 4, {3: -_H}),
    (2, 4, {5: _H}),
    (4, 5, {2: _H}),
)

# nonzero values of (.,.) on X/Y basis pairs
KILLING_VALUES = (
    (0, 0, 4), (1, 1, 4), (2, 2, 4),
    (3, 3, F(68, 9)), (4, 4, F(68, 9)), (5, 5, F(68, 9)),
    (0, 5, F(8, 3)), (1, 4, F(-8, 3)), (2, 3, F(8, 3)),
)


def _unit(i: int) -> tuple:
    return tuple(QF13(1) if k == i else ZERO for k in range(6))


def _expected(spec: dict) -> tuple:
    return tuple(QF13(spec.get(k, 0)) for k in range(6))


def _bracket_table_check(name, tensor, relations, labels) -> Report:
    rep = Report(name)
    for i, j, spec in relations:
        got = bracket_coords(tensor, _unit(i), _unit(j))
        want = _expected(spec)
        if got != want:
            rep.fail(f"[{labels[i]},{labels[j]}] = {kvec_text(got)}, expected {kvec_text(want)}")
        back = bracket_coords(tensor, _unit(j), _unit(i))
        if back != tuple(-c for c in want):
            rep.fail(f"[{labels[j]},{labels[i]}] is not antisymmetric")
    return rep


def check_jacobi_g2() -> Report:
    rep = Report("jacobi_g2")
    bad = jacobi_violations(structure_constants_g2(PUBLISHED_CONSTANTS), 14)
    if bad:
        rep.fail(f"{len(bad)} ordered basis triples violate the Jacobi identity, first {bad[0]}")
    return rep


def check_jacobi_k() -> Report:
    rep = Report("jacobi_k")
    c = structure_constants_k()
    table = {
        (i, j): {k: v for k, v in enumerate(c[i][j]) if not v.is_zero()}
        for i in range(6) for j in range(6)
    }
    bad = jacobi_violations(table, 6)
    if bad:
        rep.fail(f"{len(bad)} triples violate the Jacobi identity in k")
    return rep


def check_brackets_xy() -> Report:
    return _bracket_table_check("brackets_xy", structure_constants_k(), BRACKETS_XY, K_LABELS)


def check_brackets_wz() -> Report:
    rep = _bracket_table_check("brackets_wz", structure_constants_wz(), BRACKETS_WZ, WZ_LABELS)
    listed = {(i, j) for i, j, _ in BRACKETS_WZ}
    c = structure_constants_wz()
    for i in range(6):
        for j in range(i + 1, 6):
            if (i, j) not in listed and any(not v.is_zero() for v in c[i][j]):
                rep.fail(f"[{WZ_LABELS[i]},{WZ_LABELS[j]}] should vanish")
    return rep


def check_killing() -> Report:
    rep = Report("killing_values")
    want = {}
    for i, j, v in KILLING_VALUES:
        want[(i, j)] = want[(j, i)] = QF13(v)
    for i in range(6):
        for j in range(6):
            got = killing_form(_unit(i), _unit(j))
            if got != want.get((i, j), ZERO):
                rep.fail(f"({K_LABELS[i]},{K_LABELS[j]}) = {got}")
    return rep


def check_orthonormal_basis() -> Report:
    rep = Report("orthonormal_basis")
    h = F(1, 2)
    a = QF13(0, F(3, 26))  # 3/(2 sqrt13)
    b = QF13(0, F(1, 13))  # 1/sqrt13
    z = ZERO
    want = (
        (QF13(h), z, z, z, z, z),
        (z, QF13(h), z, z, z, z),
        (z, z, QF13(h), z, z, z),
        (z, z, -b, a, z, z),
        (z, b, z, z, a, z),
        (-b, z, z, z, z, a),
    )
    for label, got, exp in zip(WZ_LABELS, orthonormal_basis(), want):
        if tuple(got) != exp:
            rep.fail(f"{label} = {kvec_text(got)}")
    return rep


def check_flags() -> list:
    out = []
    for theta in FlagId:
        for r in flag_reports(theta):
            short = r.name.split("[")[0]
            out.append(Report(f"flag_{theta.value}_{short}", r.passed, list(r.violations)))
        dims = flag_data(theta).dims
        want = (1,) * 6 if theta is FlagId.EMPTY else (1, 2, 2)
        rep = Report(f"flag_{theta.value}_dims")
        if tuple(dims) != want:
            rep.fail(f"dims {dims}, expected {want}")
        out.append(rep)
    t = tilde_t_check()
    out.append(Report("flag_a1_tilde_t", t.passed, list(t.violations)))
    return out


def check_table1() -> Report:
    from .flow.darboux import DEGREE_ONE, TABLE1, darboux_verify

    rep = Report("darboux_table")
    for pair in TABLE1 + DEGREE_ONE:
        if not darboux_verify(pair):
            rep.fail(f"f = {pair.f.to_text()} is not Darboux with k = {pair.k.to_text()}")
    return rep


def check_charts() -> Report:
    from .flow.charts import CHARTS, chart_diff

    rep = Report("chart_derivation")
    for chart in CHARTS:
        for comp, exp, got, printed in chart_diff(chart):
            rep.fail(f"{chart.value} component {comp + 1}, monomial {exp}: derived {got}, printed {printed}")
    return rep


def check_flow_frames(samples: int = 25) -> Report:
    from .flow.field import chain_rule_check, mu_field
    from .ricci import ricci_closed
    from .sampling import positive, rng

    rep = Report("flow_frames")
    r = rng()
    for _ in range(samples):
        mu = tuple(positive(r) for _ in range(3))
        if mu_field(mu) != tuple(-2 * c for c in ricci_closed(mu).as_tuple()):
            rep.fail(f"mu_field != -2 Ric at {mu}")
        if not chain_rule_check(mu):
            rep.fail(f"xyz chain rule fails at {mu}")
    return rep


CHECKS = {
    "jacobi_g2": lambda: [check_jacobi_g2()],
    "jacobi_k": lambda: [check_jacobi_k()],
    "brackets_xy": lambda: [check_brackets_xy()],
    "brackets_wz": lambda: [check_brackets_wz()],
    "killing_values": lambda: [check_killing()],
    "orthonormal_basis": lambda: [check_orthonormal_basis()],
    "flags": check_flags,
    "darboux_table": lambda: [check_table1()],
    "chart_derivation": lambda: [check_charts()],
    "flow_frames": lambda: [check_flow_frames()],
}


def run_suite(skip=()) -> list:
    """Run every check not in ``skip``; returns (report, seconds) pairs."""
    unknown = set(skip) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    out = []
    for name, fn in CHECKS.items():
        if name in skip:
            continue
        t0 = time.perf_counter()
        reports = fn()
        dt = time.perf_counter() - t0
        out += [(r, dt / len(reports)) for r in reports]
    return out
