"""Adaptive Dormand-Prince 5(4) integration with a positivity guard."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .field import DomainError, Frame, FlowState, XYZ_FIELD, mu_field

POSITIVITY_FLOOR = 1e-14

# Butcher tableau; the fields are autonomous so the nodes are not needed
A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
# fifth minus fourth order weights
E = (
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
)
# continuous extension: theta polynomial coefficients per stage
P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)


@dataclass
class Trajectory:
    frame: Frame
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    status: str = "ok"
    message: str = ""
    accepted: int = 0
    rejected: int = 0

    def __len__(self):
        return len(self.times)

    def __iter__(self):
        return iter(zip(self.times, self.states))

    @property
    def final(self) -> FlowState:
        return FlowState(self.states[-1], self.frame)

    def component(self, i: int) -> list:
        return [s[i] for s in self.states]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "c1", "c2", "c3", "frame"])
        for t, s in self:
            w.writerow([f"{t:.12g}"] + [f"{v:.12g}" for v in s] + [self.frame.value])
        return buf.getvalue()


def field_function(frame, variant: str = "published"):
    """Float right-hand side for a frame."""
    frame = Frame.parse(frame)
    if frame is Frame.MU:
        return lambda y: mu_field(tuple(float(v) for v in y), variant)
    if frame is Frame.XYZ:
        return XYZ_FIELD.eval_float
    from .charts import chart_system

    return chart_system(frame).eval_float


def guarded_indices(frame: Frame, init) -> tuple:
    if frame is Frame.MU:
        if any(v <= 0 for v in init):
            raise DomainError(f"mu frame requires positive coordinates, got {tuple(init)}")
        return (0, 1, 2)
    if frame is Frame.XYZ:
        return tuple(i for i, v in enumerate(init) if v > 0)
    return ()


def _rms(err, y0, y1, rtol, atol, relative=()) -> float:
    """RMS of scaled errors; ``relative`` components get pure relative control."""
    total = 0.0
    for i, (e, a, b) in enumerate(zip(err, y0, y1)):
        size = max(abs(a), abs(b))
        scale = rtol * size if i in relative else atol + rtol * size
        total += (e / scale) ** 2
    return math.sqrt(total / len(err))


def _initial_step(f, y, f0, direction, rtol, atol, span) -> float:
    scale = [atol + rtol * abs(v) for v in y]
    d0 = math.sqrt(sum((v / s) ** 2 for v, s in zip(y, scale)) / 3)
    d1 = math.sqrt(sum((v / s) ** 2 for v, s in zip(f0, scale)) / 3)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, span)
    try:
        f1 = f([v + direction * h0 * d for v, d in zip(y, f0)])
    except DomainError:
        return h0 * 1e-3
    d2 = math.sqrt(sum(((a - b) / s) ** 2 for a, b, s in zip(f1, f0, scale)) / 3) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1 / 5)
    return min(100 * h0, h1, span)


def _dense(y, h, ks, theta) -> list:
    powers = (theta, theta ** 2, theta ** 3, theta ** 4)
    weights = [sum(p * q for p, q in zip(row, powers)) for row in P]
    return [yi + h * sum(w * k[i] for w, k in zip(weights, ks)) for i, yi in enumerate(y)]


def integrate(
    frame,
    init,
    t_end: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    sample_times=None,
    max_steps: int = 200_000,
    variant: str = "published",
    positivity_guard: bool = True,
) -> Trajectory:
    """Integrate the frame's field from t = 0 to t_end.

    Without ``sample_times`` every accepted step is recorded; with them the
    trajectory holds dense-output values at those times only.  Guarded
    (positive) coordinates are error-controlled relatively, so tiny values
    keep their sign and monotonicity.
    """
    frame = Frame.parse(frame)
    if not 1e-12 <= rel_tol <= 1e-3:
        raise ValueError("rel_tol must lie in [1e-12, 1e-3]")
    if isinstance(init, FlowState):
        init = init.floats()
    y = [float(v) for v in init]
    guard = guarded_indices(frame, y) if positivity_guard else ()
    f = field_function(frame, variant)
    traj = Trajectory(frame)
    direction = 1.0 if t_end >= 0 else -1.0
    span = abs(t_end)
    samples = None
    if sample_times is not None:
        samples = sorted((float(s) for s in sample_times), key=lambda s: direction * s)
        if any(direction * s < 0 or direction * s > span for s in samples):
            raise ValueError("sample times must lie between 0 and t_end")
    si = 0

    def record(t, state):
        traj.times.append(t)
        traj.states.append(tuple(state))

    if samples is None:
        record(0.0, y)
    else:
        while si < len(samples) and samples[si] == 0.0:
            record(0.0, y)
            si += 1
    if span == 0:
        return traj

    t = 0.0
    k1 = f(y)
    h = _initial_step(f, y, k1, direction, rel_tol, abs_tol, span)
    while True:
        if traj.accepted >= max_steps:
            traj.status, traj.message = "max_steps", f"stopped after {max_steps} steps at t={t:.6g}"
            break
        remaining = span - direction * t
        if remaining <= 0:
            break
        hmin = 16 * math.ulp(max(1.0, abs(t)))
        if h < hmin:
            traj.status, traj.message = "underflow", f"step size underflow at t={t:.6g}"
            break
        h = min(h, remaining)
        hs = direction * h
        ks = [k1]
        try:
            for s in range(1, 7):
                ys = [yi + hs * sum(a * k[i] for a, k in zip(A[s], ks)) for i, yi in enumerate(y)]
                ks.append(f(ys))
        except DomainError:
            traj.rejected += 1
            h *= 0.25
            continue
        y_new = ys  # last stage is the fifth-order solution (FSAL)
        err = [hs * sum(e * k[i] for e, k in zip(E, ks)) for i in range(3)]
        en = _rms(err, y, y_new, rel_tol, abs_tol, guard)
        if en > 1 or any(y_new[i] <= 0 for i in guard):
            traj.rejected += 1
            h *= max(0.2, 0.9 * en ** -0.2) if en > 1 else 0.25
            continue
        t_new = t + hs if h < remaining else direction * span
        if samples is None:
            record(t_new, y_new)
        else:
            while si < len(samples) and direction * samples[si] <= direction * t_new:
                theta = (samples[si] - t) / hs
                record(samples[si], _dense(y, hs, ks, theta))
                si += 1
        traj.accepted += 1
        t, y, k1 = t_new, y_new, ks[6]
        if any(y[i] < POSITIVITY_FLOOR for i in guard):
            traj.status = "positivity"
            traj.message = f"coordinate below {POSITIVITY_FLOOR:g} at t={t:.6g}"
            if samples is not None and (not traj.times or traj.times[-1] != t):
                record(t, y)
            break
        h *= min(10.0, 0.9 * en ** -0.2) if en > 0 else 10.0
    return traj
