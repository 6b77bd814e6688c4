"""Collapse of invariant metrics along the normalized-free Ricci flow."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..exactfield import ALPHA, BETA, scalar_to_float
from .equilibria import newton_q3
from .field import Frame, FlowState, mu_to_xyz
from .integrate import Trajectory, integrate

COLLAPSE_FRACTION = 1e-3


def attractors() -> dict:
    q3 = newton_q3()
    return {
        "q1": (2 / scalar_to_float(ALPHA), 0.0, 0.0),
        "q2": (0.0, 2 / scalar_to_float(BETA), 0.0),
        "q3": (q3[0], q3[1], 0.0),
    }


@dataclass(frozen=True)
class CollapseReport:
    initial: tuple
    terminal: tuple
    monotone_decreasing: tuple  # per mu component
    collapsed: tuple  # per mu component, below fraction * initial
    z_strictly_decreasing: bool
    terminal_xyz: tuple
    omega_limit: str
    omega_distance: float
    status: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _monotone_down(values, strict: bool) -> bool:
    pairs = list(zip(values, values[1:]))
    return all((b < a) if strict else (b <= a) for a, b in pairs)


def _nearest(point) -> tuple:
    best = min(attractors().items(), key=lambda kv: math.dist(kv[1], point))
    return best[0], math.dist(best[1], point)


OMEGA_TOL = 1e-10
OMEGA_TAU_MAX = 20000.0


def omega_limit(xyz, tau: float = 400.0) -> tuple:
    """Follow the xyz system from a positive point; nearest equilibrium.

    Integration continues in chunks of ``tau`` until the state is within
    OMEGA_TOL of q1 or q2 or OMEGA_TAU_MAX is spent; the slow direction at
    q2 decays like exp(-tau/31), so a single short chunk is not enough.
    """
    state, spent = tuple(xyz), 0.0
    while True:
        traj = integrate(Frame.XYZ, state, tau, rel_tol=1e-10, positivity_guard=False)
        state, spent = traj.states[-1], spent + tau
        label, dist = _nearest(state)
        if (label != "q3" and dist < OMEGA_TOL) or spent >= OMEGA_TAU_MAX:
            return label, dist


def collapse_diagnostics(traj: Trajectory, fraction: float = COLLAPSE_FRACTION, follow_tau: float = 400.0) -> CollapseReport:
    """Monotonicity, collapsed components and omega-limit of a mu trajectory.

    The mu flow becomes singular in finite time, before the xyz image has
    settled; the omega-limit is read off by continuing the xyz system from
    the terminal image point in chunks of ``follow_tau`` rescaled time.
    """
    if traj.frame is not Frame.MU:
        raise ValueError("collapse diagnostics need a mu-frame trajectory")
    first, last = traj.states[0], traj.states[-1]
    monotone = tuple(_monotone_down(traj.component(i), strict=True) for i in range(3))
    collapsed = tuple(last[i] < fraction * first[i] for i in range(3))
    zs = [s[0] / 68 for s in traj.states]  # z = mu1/68
    xyz = mu_to_xyz(FlowState(tuple(last), Frame.MU)).coords
    label, dist = omega_limit(xyz, follow_tau) if follow_tau > 0 else _nearest(xyz)
    return CollapseReport(
        tuple(first),
        tuple(last),
        monotone,
        collapsed,
        _monotone_down(zs, strict=True),
        tuple(xyz),
        label,
        dist,
        traj.status,
    )
