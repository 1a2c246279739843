import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from landau_osc import classical as cl
from landau_osc.core import FieldParams


@pytest.fixture
def f1():
    return FieldParams()  # m = omega = 1


def arrays6():
    return st.lists(st.floats(-3, 3), min_size=6, max_size=6).map(np.array)


def test_hamiltonian_h_examples(f1):
    assert cl.hamiltonian_h(cl.PhaseState([0, 0, 0], [0, 0, 0]), f1) == 0
    # (m/2) Omega x = (0, 1/2, 0) -> H = (1/2)^2 / 2
    assert cl.hamiltonian_h(cl.PhaseState([1, 0, 0], [0, 0, 0]), f1) == pytest.approx(1 / 8, abs=1e-15)
    assert cl.hamiltonian_h(cl.PhaseState([0, 0, 5], [0, 0, 0]), f1) == 0


def test_hamiltonian_k_examples(f1):
    assert cl.hamiltonian_k(cl.OscillatorState([0, 0, 0], [0, 0, 0]), f1) == 0
    assert cl.hamiltonian_k(cl.OscillatorState([1, 0, 0], [0, 0, 0]), f1) == pytest.approx(1 / 8, abs=1e-15)
    assert cl.hamiltonian_k(cl.OscillatorState([0, 0, 0], [0, 0, 2]), f1) == 2


def test_h_equals_k_at_t0(f1):
    s = cl.PhaseState([1, 0, 0], [0, 0, 0])
    assert cl.hamiltonian_k(cl.to_oscillator_frame(s, 0.0, f1), f1) == cl.hamiltonian_h(s, f1)


def test_expanded_form_matches_vector_form():
    f = FieldParams.from_omega(1.7, mass=2.3)
    for v in cl.random_states(30, seed=5, scale=3.0):
        s = cl.PhaseState.from_vector(v)
        assert cl.hamiltonian_h_expanded(s, f) == pytest.approx(cl.hamiltonian_h(s, f), abs=1e-12)


def test_generating_function_examples(f1):
    x, P = np.array([0.3, -1.2, 0.7]), np.array([1.1, 0.4, -0.5])
    assert cl.generating_function(x, P, 0.0, f1) == pytest.approx(x @ P, abs=1e-15)
    # omega t / 2 = pi/2: R(-pi/2) (0, 1) = (1, 0), hand-checked
    assert cl.generating_function([1, 0, 0], [0, 1, 0], math.pi, f1) == pytest.approx(1.0, abs=1e-15)
    for t in (0.0, 1.3, -7.0):
        assert cl.generating_function([0, 0, 3], [0, 0, 2], t, f1) == 6


def test_frame_map_examples(f1):
    s = cl.PhaseState([0.3, -0.4, 1.5], [0.2, 0.9, -0.1])
    same = cl.to_oscillator_frame(s, 0.0, f1)
    assert np.array_equal(same.Q, s.x) and np.array_equal(same.P, s.p)
    flipped = cl.to_oscillator_frame(s, 2 * math.pi, f1)  # omega t / 2 = pi
    assert np.allclose(flipped.Qbar, -s.xbar, atol=1e-15)
    assert np.allclose(flipped.Pbar, -s.pbar, atol=1e-15)
    assert flipped.Q[2] == s.x[2] and flipped.P[2] == s.p[2]
    back = cl.from_oscillator_frame(flipped, 2 * math.pi, f1)
    assert np.max(np.abs(back.as_vector() - s.as_vector())) < 1e-14


def test_frame_map_matches_generator_equations(f1):
    """Q = grad_P F2 and p = grad_x F2, both by finite differences."""
    s = cl.PhaseState([0.3, -0.4, 1.5], [0.2, 0.9, -0.1])
    t = 0.9
    new = cl.to_oscillator_frame(s, t, f1)
    h = 1e-6
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        dq = (cl.generating_function(s.x, new.P + e, t, f1) - cl.generating_function(s.x, new.P - e, t, f1)) / (2 * h)
        dp = (cl.generating_function(s.x + e, new.P, t, f1) - cl.generating_function(s.x - e, new.P, t, f1)) / (2 * h)
        assert dq == pytest.approx(new.Q[i], abs=1e-9)
        assert dp == pytest.approx(s.p[i], abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(v=arrays6(), t=st.floats(-20, 20))
def test_frame_map_preserves_transverse_norms(v, t):
    f = FieldParams.from_omega(1.3)
    s = cl.PhaseState.from_vector(v)
    new = cl.to_oscillator_frame(s, t, f)
    assert abs(np.linalg.norm(new.Qbar) - np.linalg.norm(s.xbar)) < 1e-14 * max(1, np.linalg.norm(s.xbar))
    assert abs(np.linalg.norm(new.Pbar) - np.linalg.norm(s.pbar)) < 1e-14 * max(1, np.linalg.norm(s.pbar))
    back = cl.from_oscillator_frame(new, t, f)
    assert np.max(np.abs(back.as_vector() - v)) < 1e-14 * max(1, np.max(np.abs(v))) * 4


def _fd_gradient(fun, v, h=1e-6):
    g = np.zeros(6)
    for i in range(6):
        e = np.zeros(6)
        e[i] = h
        g[i] = (fun(v + e) - fun(v - e)) / (2 * h)
    return g


@pytest.mark.parametrize("which", ["h", "k"])
def test_eom_matches_finite_difference_gradient(which):
    f = FieldParams.from_omega(1.7, mass=1.4)
    if which == "h":
        cls, ham, eom = cl.PhaseState, cl.hamiltonian_h, cl.eom_h
    else:
        cls, ham, eom = cl.OscillatorState, cl.hamiltonian_k, cl.eom_k
    for v in np.random.default_rng(11).uniform(-2, 2, size=(20, 6)):
        grad = _fd_gradient(lambda u: ham(cls.from_vector(u), f), v)
        d = eom(cls.from_vector(v), f).as_vector()
        expected = np.concatenate([grad[3:], -grad[:3]])
        assert np.max(np.abs(d - expected)) <= 1e-6 * max(1.0, np.max(np.abs(expected)))


def test_eom_zero_kinetic_momentum(f1):
    x = np.array([0.7, -0.2, 0.4])
    p = 0.5 * f1.mass * (np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0.0]]) @ x)
    assert np.allclose(cl.eom_h(cl.PhaseState(x, p), f1).x, 0, atol=1e-16)
    zero = cl.eom_k(cl.OscillatorState([0, 0, 0], [0, 0, 0]), f1)
    assert not zero.as_vector().any()


def test_integrate_zero_state(f1):
    tr = cl.integrate(cl.eom_h, cl.PhaseState([0] * 3, [0] * 3), 3.0, 0.01, f1)
    assert not tr.states.any()
    assert np.all(np.diff(tr.times) > 0)


def test_integrate_generic_path_matches_linear_path(f1):
    s0 = cl.PhaseState([0.5, 0.1, -0.3], [0.2, -0.7, 0.4])
    fast = cl.integrate(cl.eom_h, s0, 2.0, 0.01, f1)
    slow = cl.integrate(cl.eom_h, s0, 2.0, 0.01, f1, linear=False)
    assert np.max(np.abs(fast.states - slow.states)) < 1e-13


def test_integrate_nonlinear_rhs_uses_generic_path(f1):
    def eom(s, f):
        return cl.PhaseState(s.p, -np.sin(s.x))

    tr = cl.integrate(eom, cl.PhaseState([1.0, 0, 0], [0, 0, 0]), 1.0, 0.01, f1)
    # pendulum energy
    e = 0.5 * tr.states[:, 3] ** 2 - np.cos(tr.states[:, 0])
    assert np.ptp(e) < 1e-9
    with pytest.raises(ValueError):
        cl.integrate(eom, cl.PhaseState([1.0, 0, 0], [0, 0, 0]), 1.0, 0.01, f1, linear=True)


def test_integrate_divergence(f1):
    def eom(s, f):
        with np.errstate(over="ignore"):
            return cl.PhaseState(s.x**3, s.p)

    with pytest.raises(cl.DivergenceError) as info:
        cl.integrate(eom, cl.PhaseState([10.0, 0, 0], [0, 0, 0]), 10.0, 0.1, f1)
    assert info.value.t > 0


def test_integrate_rejects_bad_steps(f1):
    s = cl.PhaseState([0] * 3, [0] * 3)
    with pytest.raises(ValueError):
        cl.integrate(cl.eom_h, s, 1.0, 0.0, f1)
    with pytest.raises(ValueError):
        cl.integrate(cl.eom_h, s, 0.0, 0.1, f1)


def test_larmor_orbit_closes(f1):
    x0 = [1.0, 0.0, 0.0]
    s0 = cl.larmor_orbit(x0, 0.0, f1)
    tr = cl.integrate(cl.eom_h, s0, 2 * math.pi, 1e-3, f1)
    assert np.max(np.abs(tr.states[-1] - s0.as_vector())) < 1e-8
    mid = cl.larmor_orbit(x0, 1.234, f1)
    assert np.allclose(cl.eom_h(mid, f1).x, -np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]]) @ mid.x)


def test_rk4_fourth_order(f1):
    x0 = [1.0, 0.0, 0.0]
    s0 = cl.larmor_orbit(x0, 0.0, f1)
    exact = cl.larmor_orbit(x0, 2 * math.pi, f1).as_vector()
    errs = [np.max(np.abs(cl.integrate(cl.eom_h, s0, 2 * math.pi, h, f1).states[-1] - exact)) for h in (0.05, 0.025)]
    assert 14 < errs[0] / errs[1] < 18


def test_k_transverse_period():
    f = FieldParams.from_omega(3.0)
    period = 2 * math.pi / f.omega_osc
    s0 = cl.OscillatorState([0.8, -0.1, 0.0], [0.3, 0.5, 0.2])
    tr = cl.integrate(cl.eom_k, s0, period, 1e-3, f)
    end = tr.states[-1]
    assert np.allclose(end[[0, 1, 3, 4]], s0.as_vector()[[0, 1, 3, 4]], atol=1e-9)
    assert end[2] == pytest.approx(0.2 * period, abs=1e-12)


def test_energy_conservation(unit_field):
    s0 = cl.PhaseState([0.7, -0.3, 0.2], [0.4, 0.9, -0.5])
    tr = cl.integrate(cl.eom_h, s0, 10 * math.pi, 1e-3 / 2, unit_field)
    e = np.array([cl.hamiltonian_h(tr.state(i), unit_field) for i in range(0, len(tr), 500)])
    assert np.ptp(e) / e[0] < 1e-9


def test_equivalence_short(unit_field):
    s0 = cl.PhaseState([0.7, -0.3, 0.2], [0.4, 0.9, -0.5])
    dev, _, _ = cl.equivalence_deviation(s0, 2 * math.pi, 1e-3 / 2, unit_field)
    assert dev.max() < 1e-7


def test_kamiltonian_residual(unit_field):
    assert cl.kamiltonian_residual(cl.PhaseState([0] * 3, [0] * 3), 0.4, unit_field) == 0
    s = cl.PhaseState([0.3, -0.5, 0.2], [1.1, 0.4, 0.9])
    # identity transform: only the finite-difference error of dF2/dt remains
    assert abs(cl.kamiltonian_residual(s, 0.0, unit_field)) < 1e-9
    rng = np.random.default_rng(1)
    for v, t in zip(cl.random_states(100, 3, 2.0), rng.uniform(-5, 5, 100)):
        assert abs(cl.kamiltonian_residual(cl.PhaseState.from_vector(v), t, unit_field)) < 1e-7


def test_kamiltonian_at_t0_is_k_minus_h_minus_claimed(unit_field):
    # at t = 0 the map is the identity, so K - H equals the closed-form dF2/dt
    s = cl.PhaseState([0.3, -0.5, 0.2], [1.1, 0.4, 0.9])
    new = cl.to_oscillator_frame(s, 0.0, unit_field)
    gap = cl.hamiltonian_k(new, unit_field) - cl.hamiltonian_h(s, unit_field) - cl.dF2_dt_claimed(s, unit_field)
    assert abs(gap) < 1e-12


def test_symplectic(unit_field):
    assert cl.symplectic_check(0.0, unit_field) == 0.0
    assert cl.symplectic_check(2.0 / unit_field.omega * 1.0, unit_field) < 1e-9  # omega t / 2 = 1
    jacs = [cl.frame_jacobian(0.8, unit_field, b) for b in cl.random_states(10, 4)]
    assert max(np.max(np.abs(j - jacs[0])) for j in jacs) < 1e-12


def test_zero_field_is_identity():
    f = FieldParams(field=0.0)
    s = cl.PhaseState([0.3, -0.5, 0.2], [1.1, 0.4, 0.9])
    new = cl.to_oscillator_frame(s, 5.0, f)
    assert np.array_equal(new.as_vector(), s.as_vector())
    assert cl.hamiltonian_k(new, f) == pytest.approx(s.p @ s.p / 2)
    assert cl.symplectic_check(3.0, f) == 0.0
    dev, _, _ = cl.equivalence_deviation(s, 5.0, 0.01, f)
    assert dev.max() == 0


def test_trajectory_csv(tmp_path, f1):
    tr = cl.integrate(cl.eom_h, cl.PhaseState([1 / 3, 0, 0], [0, 0.1, 0]), 0.05, 0.01, f1)
    path = tmp_path / "t.csv"
    tr.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,x1,x2,x3,p1,p2,p3"
    assert len(lines) == len(tr) + 1
    row = [float(v) for v in lines[1].split(",")]
    assert row[1] == 1 / 3  # 17 significant digits round-trip


def test_trajectory_rejects_unordered_times():
    with pytest.raises(ValueError):
        cl.Trajectory(np.array([0.0, 0.0]), np.zeros((2, 6)), 0.1)
