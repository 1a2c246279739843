"""Classical Hamiltonians, the rotating-frame canonical map and its checks.

States are stored as 6-vectors ``(x1, x2, x3, p1, p2, p3)`` inside the
integrator; the dataclasses below are the public face.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Union

import numpy as np

from landau_osc.core import FieldParams, generator, rotation2


class DivergenceError(RuntimeError):
    def __init__(self, t: float):
        super().__init__(f"non-finite state encountered at t={t:.17g}")
        self.t = t


def _vec3(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError("state components must be finite")
    return a


@dataclass(frozen=True)
class PhaseState:
    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", _vec3(self.x))
        object.__setattr__(self, "p", _vec3(self.p))

    @property
    def xbar(self):
        return self.x[:2]

    @property
    def pbar(self):
        return self.p[:2]

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.x, self.p])

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])


@dataclass(frozen=True)
class OscillatorState:
    Q: np.ndarray
    P: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "Q", _vec3(self.Q))
        object.__setattr__(self, "P", _vec3(self.P))

    @property
    def Qbar(self):
        return self.Q[:2]

    @property
    def Pbar(self):
        return self.P[:2]

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.Q, self.P])

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])


State = Union[PhaseState, OscillatorState]


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled trajectory; ``states[i]`` is the 6-vector at ``times[i]``."""

    times: np.ndarray
    states: np.ndarray
    dt: float
    state_type: type = PhaseState
    columns: tuple = dc_field(default=())

    def __post_init__(self):
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("trajectory times must be strictly increasing")
        if not self.columns:
            names = ("x", "p") if self.state_type is PhaseState else ("Q", "P")
            cols = tuple(f"{n}{i}" for n in names for i in (1, 2, 3))
            object.__setattr__(self, "columns", cols)

    def __len__(self):
        return len(self.times)

    def state(self, i: int) -> State:
        return self.state_type.from_vector(self.states[i])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(("t",) + self.columns)
            for t, row in zip(self.times, self.states):
                w.writerow([f"{t:.17g}"] + [f"{v:.17g}" for v in row])


# -- Hamiltonians ---------------------------------------------------------


def kinetic_momentum(x, p, f: FieldParams) -> np.ndarray:
    """``p - (m/2) Omega x``, i.e. ``p - qA/c`` in the symmetric gauge."""
    return np.asarray(p) - 0.5 * f.mass * (generator(f.omega) @ np.asarray(x))


def hamiltonian_h(s: PhaseState, f: FieldParams) -> float:
    pi = kinetic_momentum(s.x, s.p, f)
    return float(pi @ pi) / (2.0 * f.mass)


def hamiltonian_h_expanded(s: PhaseState, f: FieldParams, potential_coeff: float | None = None) -> float:
    """Expanded transverse/longitudinal form of H.

    ``potential_coeff`` multiplies ``|xbar|^2``; by default the value that
    follows from expanding the vector form, ``m omega^2 / 8``.
    """
    m, w = f.mass, f.omega
    if potential_coeff is None:
        potential_coeff = m * w * w / 8.0
    om0 = generator(w)[:2, :2]
    return float(
        s.pbar @ s.pbar / (2 * m)
        - 0.5 * s.pbar @ (om0 @ s.xbar)
        + potential_coeff * s.xbar @ s.xbar
        + s.p[2] ** 2 / (2 * m)
    )


def hamiltonian_k(s: OscillatorState, f: FieldParams) -> float:
    m, w = f.mass, f.omega_osc
    return float(
        s.Pbar @ s.Pbar / (2 * m) + 0.5 * m * w * w * (s.Qbar @ s.Qbar) + s.P[2] ** 2 / (2 * m)
    )


# -- canonical map ----------------------------------------------------------


def generating_function(x, P, t: float, f: FieldParams) -> float:
    """Type-2 generator ``<x, U(-t/2) P>``."""
    x = np.asarray(x, dtype=float)
    P = np.asarray(P, dtype=float)
    r = rotation2(-0.5 * f.omega * t)
    return float(x[:2] @ (r @ P[:2]) + x[2] * P[2])


def dF2_dt_claimed(s: PhaseState, f: FieldParams) -> float:
    """Closed-form time derivative of the generator, ``1/2 <pbar, Omega0 xbar>``."""
    om0 = generator(f.omega)[:2, :2]
    return 0.5 * float(s.pbar @ (om0 @ s.xbar))


def _frame_vector(v: np.ndarray, angle: float) -> np.ndarray:
    r = rotation2(angle)
    out = v.copy()
    out[..., 0:2] = v[..., 0:2] @ r.T
    out[..., 3:5] = v[..., 3:5] @ r.T
    return out


def to_oscillator_frame(s: PhaseState, t: float, f: FieldParams) -> OscillatorState:
    return OscillatorState.from_vector(_frame_vector(s.as_vector(), 0.5 * f.omega * t))


def from_oscillator_frame(s: OscillatorState, t: float, f: FieldParams) -> PhaseState:
    return PhaseState.from_vector(_frame_vector(s.as_vector(), -0.5 * f.omega * t))


# -- equations of motion --------------------------------------------------


def eom_h(s: PhaseState, f: FieldParams) -> PhaseState:
    om = generator(f.omega)
    pi = kinetic_momentum(s.x, s.p, f)
    return PhaseState(pi / f.mass, -0.5 * (om @ pi))


def eom_k(s: OscillatorState, f: FieldParams) -> OscillatorState:
    m, w = f.mass, f.omega_osc
    pdot = np.zeros(3)
    pdot[:2] = -m * w * w * s.Qbar
    return OscillatorState(s.P / m, pdot)


def _probe_linear(rhs: Callable[[np.ndarray], np.ndarray], rng) -> np.ndarray | None:
    """Matrix of ``rhs`` if it is linear on R^6, else None."""
    a = np.column_stack([rhs(e) for e in np.eye(6)])
    if np.any(rhs(np.zeros(6)) != 0):
        return None
    v = rng.standard_normal(6)
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(rhs(v) - a @ v)) > 1e-12 * scale * 6:
        return None
    return a


def integrate(eom, s0: State, t_end: float, dt: float, f: FieldParams, linear: bool | None = None) -> Trajectory:
    """Fixed-step classical RK4, sampled at every step.

    When the right-hand side is linear (auto-detected unless ``linear`` is
    given) each step is applied as the RK4 transfer matrix
    ``I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24``, which is the same scheme
    without the per-step Python overhead.
    """
    if not dt > 0 or not t_end > 0:
        raise ValueError("dt and t_end must be positive")
    cls = type(s0)

    def rhs(v):
        return eom(cls.from_vector(v), f).as_vector()

    n = int(math.ceil(t_end / dt - 1e-9))
    h = t_end / n
    times = np.arange(n + 1) * h
    out = np.empty((n + 1, 6))
    out[0] = s0.as_vector()

    a = None
    if linear is None or linear:
        a = _probe_linear(rhs, np.random.default_rng(0))
        if linear and a is None:
            raise ValueError("equations of motion are not linear")

    if a is not None:
        ha = h * a
        step = np.eye(6)
        term = np.eye(6)
        for k in range(1, 5):
            term = term @ ha / k
            step = step + term
        step_t = step.T
        v = out[0]
        for i in range(1, n + 1):
            v = v @ step_t
            out[i] = v
        bad = ~np.all(np.isfinite(out), axis=1)
        if bad.any():
            raise DivergenceError(float(times[np.argmax(bad)]))
    else:
        v = out[0]
        for i in range(1, n + 1):
            try:
                with np.errstate(over="ignore", invalid="ignore"):
                    k1 = rhs(v)
                    k2 = rhs(v + 0.5 * h * k1)
                    k3 = rhs(v + 0.5 * h * k2)
                    k4 = rhs(v + h * k3)
                    v = v + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            except ValueError:
                # a non-finite intermediate state was rejected by the state type
                raise DivergenceError(float(times[i])) from None
            if not np.all(np.isfinite(v)):
                raise DivergenceError(float(times[i]))
            out[i] = v
    return Trajectory(times, out, h, cls)


def larmor_orbit(x0, t, f: FieldParams) -> PhaseState:
    """Exact circular orbit about the origin through ``x0`` (transverse).

    Kinetic momentum ``-m Omega x0`` makes ``x(t) = exp(-t Omega) x0``.
    """
    x0 = np.asarray(x0, dtype=float)
    om = generator(f.omega)
    u = np.eye(3)
    u[:2, :2] = rotation2(-f.omega * t)
    x = u @ x0
    return PhaseState(x, -0.5 * f.mass * (om @ x))


def map_trajectory(traj: Trajectory, f: FieldParams) -> Trajectory:
    """Carry an H-trajectory into the oscillator frame sample by sample."""
    out = np.array([_frame_vector(v, 0.5 * f.omega * t) for t, v in zip(traj.times, traj.states)])
    return Trajectory(traj.times, out, traj.dt, OscillatorState)


def equivalence_deviation(s0: PhaseState, t_end: float, dt: float, f: FieldParams):
    """Max-norm gap between the mapped H-flow and the independent K-flow.

    Returns ``(deviation_series, mapped_traj, k_traj)``.
    """
    h_traj = integrate(eom_h, s0, t_end, dt, f)
    k_traj = integrate(eom_k, to_oscillator_frame(s0, 0.0, f), t_end, dt, f)
    mapped = map_trajectory(h_traj, f)
    dev = np.max(np.abs(mapped.states - k_traj.states), axis=1)
    return dev, mapped, k_traj


# -- canonicity checks ----------------------------------------------------


def kamiltonian_residual(s: PhaseState, t: float, f: FieldParams, h: float = 1e-6) -> float:
    """``K(Q, P) - H(x, p) - dF2/dt``, the time derivative by central difference."""
    new = to_oscillator_frame(s, t, f)
    if h == 0 or f.omega == 0:
        dfdt = 0.0
    else:
        h_t = h / abs(f.omega)
        dfdt = (
            generating_function(s.x, new.P, t + h_t, f) - generating_function(s.x, new.P, t - h_t, f)
        ) / (2 * h_t)
    return hamiltonian_k(new, f) - hamiltonian_h(s, f) - dfdt


SYMPLECTIC_J = np.block([[np.zeros((3, 3)), np.eye(3)], [-np.eye(3), np.zeros((3, 3))]])


def frame_jacobian(t: float, f: FieldParams, base, h: float = 2.0**-4) -> np.ndarray:
    """Central-difference Jacobian of ``(x, p) -> (Q, P)`` at ``base``.

    The map is linear, so the difference quotient is exact up to rounding and
    a coarse dyadic step keeps that rounding at machine level.
    """
    base = np.asarray(base, dtype=float)
    angle = 0.5 * f.omega * t
    jac = np.empty((6, 6))
    for j in range(6):
        e = np.zeros(6)
        e[j] = h
        jac[:, j] = (_frame_vector(base + e, angle) - _frame_vector(base - e, angle)) / (2 * h)
    return jac


def symplectic_residual(jac: np.ndarray) -> float:
    return float(np.max(np.abs(jac @ SYMPLECTIC_J @ jac.T - SYMPLECTIC_J)))


def random_states(n: int, seed: int = 42, scale: float = 1.0) -> np.ndarray:
    """Seeded 6-vectors on a dyadic lattice so finite differences are exact at t=0."""
    rng = np.random.default_rng(seed)
    return np.round(rng.uniform(-scale, scale, size=(n, 6)) * 4096) / 4096


def symplectic_check(t: float, f: FieldParams, n_states: int = 4, seed: int = 42) -> float:
    """Largest ``||M J M^T - J||_inf`` over seeded base states."""
    return max(symplectic_residual(frame_jacobian(t, f, b)) for b in random_states(n_states, seed))
