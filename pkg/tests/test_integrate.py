import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from g2flags.exactfield import ALPHA, scalar_to_float
from g2flags.flow import DomainError, Frame, XYZ_FIELD, integrate, mu_field
from g2flags.flow.integrate import field_function

coord = st.floats(min_value=0.05, max_value=2.0)


def _scipy(frame, init, t_end, t_eval=None):
    f = field_function(frame)
    sol = solve_ivp(lambda t, y: f(y), (0, t_end), init, method="DOP853", rtol=1e-12, atol=1e-14, t_eval=t_eval)
    assert sol.success
    return sol


@given(coord, coord, coord)
@settings(max_examples=15)
def test_xyz_matches_scipy(x, y, z):
    traj = integrate(Frame.XYZ, (x, y, z), 5.0, rel_tol=1e-10, abs_tol=1e-13)
    assert traj.status == "ok"
    ref = _scipy(Frame.XYZ, [x, y, z], 5.0)
    np.testing.assert_allclose(traj.states[-1], ref.y[:, -1], rtol=1e-7, atol=1e-9)


def test_dense_output_matches_scipy():
    times = np.linspace(0, 20, 41)
    traj = integrate("xyz", (0.3, 0.9, 1.1), 20.0, rel_tol=1e-10, sample_times=times)
    assert traj.times == list(times)
    ref = _scipy(Frame.XYZ, [0.3, 0.9, 1.1], 20.0, t_eval=times)
    np.testing.assert_allclose(np.array(traj.states).T, ref.y, rtol=1e-7, atol=1e-9)


def test_mu_frame_matches_scipy_before_collapse():
    traj = integrate("mu", (1.0, 2.0, 3.0), 1.0, rel_tol=1e-10)
    ref = _scipy(Frame.MU, [1.0, 2.0, 3.0], 1.0)
    np.testing.assert_allclose(traj.states[-1], ref.y[:, -1], rtol=1e-7)


def test_chart_frame_integrates():
    traj = integrate("U3", (0.2, 0.3, 0.1), 2.0)
    ref = _scipy(Frame.U3, [0.2, 0.3, 0.1], 2.0)
    np.testing.assert_allclose(traj.states[-1], ref.y[:, -1], rtol=1e-6, atol=1e-10)


def test_zero_time():
    traj = integrate("xyz", (1.0, 1.0, 1.0), 0.0)
    assert traj.times == [0.0] and traj.states == [(1.0, 1.0, 1.0)]


def test_backward_time():
    fwd = integrate("xyz", (0.5, 0.5, 0.5), 1.0, rel_tol=1e-11)
    back = integrate("xyz", fwd.states[-1], -1.0, rel_tol=1e-11)
    np.testing.assert_allclose(back.states[-1], (0.5, 0.5, 0.5), rtol=1e-8)


def test_invariant_planes_stay_exact():
    for init in ((0.0, 0.7, 0.4), (0.9, 0.0, 0.4), (0.9, 0.7, 0.0)):
        traj = integrate("xyz", init, 30.0)
        i = init.index(0.0)
        assert all(s[i] == 0.0 for s in traj.states)


@given(coord, coord, coord)
@settings(max_examples=10)
def test_positivity_and_z_decrease(x, y, z):
    traj = integrate("xyz", (x, y, z), 50.0)
    assert all(min(s) > 0 for s in traj.states)
    zs = traj.component(2)
    assert all(b < a for a, b in zip(zs, zs[1:]))


def test_unit_start_reaches_q1():
    traj = integrate("xyz", (1.0, 1.0, 1.0), 200.0)
    assert traj.states[-1][0] == pytest.approx(2 / scalar_to_float(ALPHA), abs=1e-8)


def test_mu_collapse_stops_on_positivity():
    traj = integrate("mu", (1.0, 2.0, 3.0), 100.0)
    assert traj.status == "positivity"
    assert traj.times[-1] < 100.0
    assert all(min(s) > 0 for s in traj.states)


def test_step_rejection_near_singularity_is_counted():
    traj = integrate("mu", (1.0, 2.0, 3.0), 100.0)
    assert traj.rejected > 0 and traj.accepted == len(traj) - 1


def test_errors():
    with pytest.raises(DomainError):
        integrate("mu", (1.0, -1.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        integrate("xyz", (1.0, 1.0, 1.0), 1.0, rel_tol=1e-2)
    with pytest.raises(ValueError):
        integrate("xyz", (1.0, 1.0, 1.0), 1.0, sample_times=[2.0])


def test_max_steps():
    traj = integrate("xyz", (1.0, 1.0, 1.0), 1e6, max_steps=10)
    assert traj.status == "max_steps" and traj.accepted == 10


def test_csv_output():
    traj = integrate("xyz", (1.0, 1.0, 1.0), 1.0, sample_times=[0.0, 0.5, 1.0])
    lines = traj.to_csv().splitlines()
    assert lines[0] == "t,c1,c2,c3,frame"
    assert lines[1] == "0,1,1,1,xyz"
    assert len(lines) == 4


def test_field_function_agrees_with_exact_field():
    f = field_function("xyz")
    p = (0.3, 0.2, 0.7)
    assert f(p) == pytest.approx(XYZ_FIELD.eval_float(p))
    g = field_function("mu")
    assert g((1.0, 2.0, 3.0)) == pytest.approx([scalar_to_float(v) for v in mu_field((1, 2, 3))])
    assert math.isfinite(g((1.0, 1.0, 1.0))[0])
