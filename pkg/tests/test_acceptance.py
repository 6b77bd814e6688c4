"""Acceptance criteria 1-10 at their stated tolerances.

Each criterion is a function returning (passed, detail).  Under pytest every
criterion is one test and a PASS/FAIL line per criterion is printed in the
terminal summary; ``python tests/test_acceptance.py`` prints the same lines.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from g2flags.exactfield import ALPHA, BETA, scalar_to_float
from g2flags.flags import FlagId, flag_data, flag_reports
from g2flags.flow import CHARTS, TABLE1, DEGREE_ONE, Frame, chart_diff, darboux_search, darboux_verify, integrate
from g2flags.flow.collapse import collapse_diagnostics
from g2flags.flow.darboux import completeness_sweep
from g2flags.flow.equilibria import chart_equilibria, finite_equilibria
from g2flags.metrics import (
    equigeodesic_check,
    go_lambda_formula,
    go_witness,
    is_equigeodesic_closed_form,
    is_go_closed_form,
    souris_residual,
)
from g2flags.ricci import ricci_besse, ricci_closed, u_vanishes_all_pairs
from g2flags.sampling import go_params, mixed_params, positive, rng, tangent
from g2flags.verification import check_brackets_wz, check_brackets_xy, check_jacobi_g2, check_killing

RESULTS: dict = {}

A, B = scalar_to_float(ALPHA), scalar_to_float(BETA)


def _real(vals) -> list:
    return sorted(complex(v).real for v in vals)


def _close(got, want, tol) -> bool:
    return len(got) == len(want) and all(abs(a - b) <= tol for a, b in zip(got, want))


# -- criteria ---------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    parts = {
        "jacobi_g2": check_jacobi_g2(),
        "brackets_xy": check_brackets_xy(),
        "brackets_wz": check_brackets_wz(),
        "killing": check_killing(),
    }
    dt = time.perf_counter() - t0
    bad = [f"{k}: {r.violations[0]}" for k, r in parts.items() if not r.passed]
    ok = not bad and dt < 10
    return ok, f"{dt:.2f}s; " + ("; ".join(bad) if bad else "all exact checks hold")


def criterion_2():
    bad = []
    for theta, dims in ((FlagId.EMPTY, (1,) * 6), (FlagId.ALPHA1, (1, 2, 2)), (FlagId.ALPHA2, (1, 2, 2))):
        bad += [f"{theta.value} {r.name}" for r in flag_reports(theta) if not r.passed]
        if flag_data(theta).dims != dims:
            bad.append(f"{theta.value} dims {flag_data(theta).dims}")
    return not bad, "; ".join(bad) or "decomposition, invariance, equivariance and dims exact for all flags"


def criterion_3():
    bad, counts = [], {}
    for theta in FlagId:
        r = rng(300 + list(FlagId).index(theta))
        n_go = 0
        for _ in range(200):
            p = mixed_params(theta, r)
            if is_go_closed_form(p):
                n_go += 1
                for _ in range(50):
                    x = tangent(theta, r, full=True)
                    w = go_witness(p, x)
                    if not w.found or any(not c.is_zero() for c in souris_residual(p, x, w.z)):
                        bad.append(f"{theta.value}: closed form g.o. but no witness")
                        break
            elif all(go_witness(p, tangent(theta, r, full=True)).found for _ in range(50)):
                bad.append(f"{theta.value}: closed form rejects but every sampled X has a witness")
        counts[theta.value] = n_go
    r = rng(399)
    for _ in range(50):
        p = go_params(FlagId.ALPHA2, r)
        x = tangent(FlagId.ALPHA2, r, full=True)
        w = go_witness(p, x)
        if not w.found or w.lam != go_lambda_formula(p, x):
            bad.append("a2 witness lambda differs from the formula")
            break
    return not bad, "; ".join(bad) or f"200 metrics per flag (g.o. counts {counts}); 50 lambda checks exact"


def criterion_4():
    bad = []
    for theta in FlagId:
        r = rng(400 + list(FlagId).index(theta))
        n_true = 0
        for _ in range(1000):
            x = tangent(theta, r)
            closed = is_equigeodesic_closed_form(x)
            n_true += closed
            if closed != equigeodesic_check(x):
                bad.append(f"{theta.value}: disagreement at {tuple(map(str, x.coeffs))}")
                break
        if not bad and n_true == 0:
            bad.append(f"{theta.value}: sample contains no equigeodesic vectors")
    return not bad, "; ".join(bad) or "1000 vectors per flag agree exactly"


def criterion_5():
    r = rng(500)
    mismatches, u_fail = 0, 0
    example = None
    for _ in range(100):
        mu = tuple(positive(r) for _ in range(3))
        if ricci_besse(mu) != ricci_closed(mu):
            mismatches += 1
            example = example or mu
        if not u_vanishes_all_pairs(mu):
            u_fail += 1
    ok = mismatches == 0 and u_fail == 0
    detail = (
        f"ricci_besse != ricci_closed on {mismatches}/100 triples"
        + (f" (first mu = {tuple(map(str, example))})" if example else "")
        + f"; U nonzero on some basis pair for {u_fail}/100 triples"
    )
    return ok, detail


def criterion_6():
    q1, q2, q3, _ = finite_equilibria()
    checks = {
        "q1 = 2/alpha": abs(q1.point.floats()[0] - 2 / A) <= 1e-12,
        "q2 = 2/beta": abs(q2.point.floats()[1] - 2 / B) <= 1e-12,
        "q3 position": _close(q3.point.floats()[:2], (0.0521831, 0.352931), 5e-6),
        "q3 eigenvalues": _close(_real(q3.eigenvalues), [-0.0625182, -0.0318209, 0.0306973], 1e-4),
        "q1 eigenvalues": _close(_real(q1.eigenvalues), sorted([-2 / A**2, -1 / A**2, -1 / A**2]), 1e-10),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, "failed: " + ", ".join(bad) if bad else "q1, q2, q3 and their spectra within tolerance"


def criterion_7():
    pairs = darboux_search(2)
    bad = []
    if pairs != TABLE1 + DEGREE_ONE:
        bad.append("search output differs from the table")
    if not all(darboux_verify(p) for p in pairs):
        bad.append("a returned pair fails verification")
    extra = [p for r in completeness_sweep() for p in r.pairs if p not in pairs]
    if extra or any(r.families or r.outside_field for r in completeness_sweep()):
        bad.append("sweep found additional solutions")
    return not bad, "; ".join(bad) or "6 quadrics + 3 linear factors, exact cofactors; sweep complete"


def criterion_8():
    bad = [f"{c.value} differs from the printed system" for c in CHARTS if chart_diff(c)]
    want = {
        ("kappa1", "p+"): [0, 1 / B, 1 / B],
        ("kappa1", "p-"): [-1 / B, 0, 1 / B],
    }
    for c in ("U1", "U2"):
        want[(c, "p1")] = want[(c, "p2")] = [-0.5, 0.25, 0.75]
        want[(c, "origin")] = [0.25, 0.25, 0.5]
    for chart in ("kappa1", "U1", "U2"):
        for e in chart_equilibria(chart):
            if not _close(_real(e.eigenvalues), want[(chart, e.label)], 1e-10):
                bad.append(f"{chart} {e.label} eigenvalues {_real(e.eigenvalues)}")
    return not bad, "; ".join(bad) or "four chart systems equal the printed ones; chart spectra within 1e-10"


def criterion_9():
    t0 = time.perf_counter()
    r = random.Random(900)
    bad, limits = [], {}
    for _ in range(20):
        mu = tuple(10 ** r.uniform(-1, 1) for _ in range(3))
        rep = collapse_diagnostics(integrate(Frame.MU, mu, 1e4))
        limits[rep.omega_limit] = limits.get(rep.omega_limit, 0) + 1
        if not rep.z_strictly_decreasing:
            bad.append(f"z not strictly decreasing from {mu}")
        near_q3 = rep.omega_limit == "q3"
        if not near_q3 and (rep.omega_limit not in ("q1", "q2") or rep.omega_distance > 1e-6):
            bad.append(f"omega-limit {rep.omega_limit} at distance {rep.omega_distance:.2g} from {mu}")
        if rep.omega_limit == "q1" and not all(rep.collapsed[:2]):
            bad.append(f"q1 run without collapse of mu1, mu2 from {mu}")
    dt = time.perf_counter() - t0
    if dt >= 60:
        bad.append(f"runtime {dt:.1f}s")
    return not bad, "; ".join(bad) or f"20 runs in {dt:.1f}s, limits {dict(sorted(limits.items()))}"


def criterion_10():
    # figures replaced by checkable structure: invariant planes, attractor/saddle types, monotone z
    bad = []
    for init in ((0.0, 0.7, 0.4), (0.9, 0.0, 0.4), (0.9, 0.7, 0.0)):
        traj = integrate("xyz", init, 100.0)
        i = init.index(0.0)
        if any(s[i] != 0.0 for s in traj.states):
            bad.append(f"plane {'xyz'[i]} = 0 not invariant")
    kinds = [e.classification for e in finite_equilibria()[:3]]
    if kinds != ["attractor", "attractor", "saddle"]:
        bad.append(f"equilibrium types {kinds}")
    traj = integrate("xyz", (0.6, 0.6, 2.0), 1e3)
    zs = traj.component(2)
    if not all(b < a for a, b in zip(zs, zs[1:])):
        bad.append("z not monotone")
    return not bad, "; ".join(bad) or "invariant planes, q1/q2 attractors, q3 saddle, z decreasing"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 11)}


def evaluate(n: int):
    passed, detail = CRITERIA[n]()
    RESULTS[n] = (passed, detail)
    return passed, detail


@pytest.mark.parametrize("n", sorted(CRITERIA), ids=lambda n: f"criterion_{n}")
def test_criterion(n):
    passed, detail = evaluate(n)
    assert passed, detail


def summary_lines() -> list:
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        ok, detail = evaluate(n)
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
