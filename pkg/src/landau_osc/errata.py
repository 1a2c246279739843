"""Numerical evidence for printed formulas that disagree with their oracles.

Each function returns the measured size of the disagreement; the suites
attach it to an errata entry together with the tolerance it violates.
"""

from __future__ import annotations

import math

import numpy as np

from landau_osc import classical as cl
from landau_osc import hermite as hm
from landau_osc.core import FieldParams, matrix_exp_series, generator, printed_rotation_block, rotation2
from landau_osc.quantum_grid import (
    FockSuperposition,
    GridSpec,
    evaluate_fock,
    oscillator_alpha,
    schrodinger_residual,
)


def rotation_block_error(angle: float = 1.0) -> float:
    """Distance of the ``+sin/+sin`` block from the series exponential."""
    series = matrix_exp_series(generator(1.0)[:2, :2], angle, 1e-15)
    return float(np.max(np.abs(printed_rotation_block(angle) - series)))


def rotation_block_orthogonality(angle: float = 1.0) -> float:
    b = printed_rotation_block(angle)
    return float(np.max(np.abs(b.T @ b - np.eye(2))))


def expansion_coefficient_error(f: FieldParams, states) -> float:
    """Largest ``|H - H_expanded|`` with the oscillator coefficient ``m omega^2 / 2``."""
    coeff = 0.5 * f.mass * f.omega**2
    return max(
        abs(cl.hamiltonian_h(s, f) - cl.hamiltonian_h_expanded(s, f, coeff)) for s in states
    )


def printed_kamiltonian(s: cl.OscillatorState, f: FieldParams) -> float:
    """K with unit mass factors and the full cyclotron frequency, as printed."""
    return float(
        0.5 * s.Pbar @ s.Pbar + 0.5 * f.mass * f.omega**2 * (s.Qbar @ s.Qbar) + 0.5 * s.P[2] ** 2
    )


def printed_kamiltonian_error(f: FieldParams, states, t: float = 0.7) -> float:
    """Largest ``|K_printed - (H + dF2/dt)|`` over ``states``."""
    worst = 0.0
    for s in states:
        new = cl.to_oscillator_frame(s, t, f)
        target = cl.hamiltonian_h(s, f) + cl.dF2_dt_claimed(s, f)
        worst = max(worst, abs(printed_kamiltonian(new, f) - target))
    return worst


def printed_frequency_trajectory_error(f: FieldParams, s0: cl.PhaseState, periods: float = 1.0,
                                       dt_scale: float = 1e-3) -> float:
    """Mapped H-flow against a K-flow run at the cyclotron (not Larmor) frequency."""
    w = abs(f.omega)
    t_end = periods * 2 * math.pi / w
    dt = dt_scale / w
    doubled = FieldParams(f.charge * 2, f.mass, f.field, f.light_speed, f.hbar)
    h_traj = cl.integrate(cl.eom_h, s0, t_end, dt, f)
    k_traj = cl.integrate(cl.eom_k, cl.to_oscillator_frame(s0, 0.0, f), t_end, dt, doubled)
    mapped = cl.map_trajectory(h_traj, f)
    return float(np.max(np.abs(mapped.states - k_traj.states)))


def printed_eigenfunction_residual(n: int = 2, mass: float = 2.0, omega_osc: float = 1.5) -> float:
    x = np.linspace(-2.5, 2.5, 20) / math.sqrt(mass * omega_osc)
    res = hm.eigen_equation_residual(
        n, x, mass, omega_osc, psi=lambda v: hm.printed_eigenfunction(n, v, mass, omega_osc)
    )
    return float(np.max(res))


def longitudinal_dispersion_error(hbar: float = 0.5, mass: float = 1.0, k: float = 2.0) -> float:
    """Relative mismatch of ``-(hbar/2m) d^2/dz^2`` against the free-particle energy.

    The free phase ``exp(i k z - i hbar k^2 t / 2m)`` solves the Schroedinger
    equation only for the ``hbar^2`` operator; both operators are applied
    spectrally to the plane wave.
    """
    n, length = 64, 2 * math.pi * 8 / k
    z = np.arange(n) * length / n
    wave = np.exp(1j * k * z)
    kk = 2 * np.pi * np.fft.fftfreq(n, d=length / n)
    d2 = np.fft.ifft(-(kk**2) * np.fft.fft(wave))
    printed = -(hbar / (2 * mass)) * d2
    expected = (hbar * k) ** 2 / (2 * mass) * wave
    return float(np.max(np.abs(printed - expected)) / np.max(np.abs(expected)))


def _fourier_pair(phi, x, hbar: float, synth_phase_scale: float):
    """Forward transform with ``exp(-i P Q / hbar)``, synthesis with
    ``exp(i x P * synth_phase_scale)``; both by direct quadrature in 1D."""
    dx = x[1] - x[0]
    p = hbar * 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(len(x), d=dx))
    dp = p[1] - p[0]
    fwd = np.exp(-1j * np.outer(p, x) / hbar) @ phi * dx / math.sqrt(2 * math.pi * hbar)
    back = np.exp(1j * np.outer(x, p) * synth_phase_scale) @ fwd * dp / math.sqrt(2 * math.pi * hbar)
    return back


def repct_hbar_error(hbar: float = 0.5) -> float:
    """At ``t = 0`` the transform must return the input; ``exp(i F2)`` without
    ``1/hbar`` does not.  Relative ``L^2`` error of the printed phase."""
    x = np.linspace(-12, 12, 256, endpoint=False)
    phi = np.pi**-0.25 * np.exp(-x * x / 2) * (1 + x)
    printed = _fourier_pair(phi, x, hbar, 1.0)
    return float(np.linalg.norm(printed - phi) / np.linalg.norm(phi))


def repct_hbar_consistent(hbar: float = 0.5) -> float:
    x = np.linspace(-12, 12, 256, endpoint=False)
    phi = np.pi**-0.25 * np.exp(-x * x / 2) * (1 + x)
    fixed = _fourier_pair(phi, x, hbar, 1.0 / hbar)
    return float(np.linalg.norm(fixed - phi) / np.linalg.norm(phi))


def repct_synthesis(f: FieldParams, t: float, n: int = 48, length_alpha: float = 16.0):
    """Evaluate ``int Phi~(P) exp(i F2(x, P, t)/hbar) dP`` on a grid.

    Returns ``(synthesized, phi_at_U_plus, phi_at_U_minus)`` where the last two
    are ``Phi(U(t/2) x)`` and ``Phi(U(-t/2) x)`` evaluated analytically for the
    state ``(psi_1 psi_0 + psi_0 psi_2)/sqrt 2``.
    """
    state = FockSuperposition({(1, 0): 1.0, (0, 2): 1.0}).normalized()
    spec = GridSpec(n, length_alpha / oscillator_alpha(f))
    x1, x2 = spec.mesh()
    phi = evaluate_fock(state, x1, x2, f)
    coeffs = np.fft.fft2(phi)
    k = spec.k
    # F2(x, P) = <x, U(-t/2) P> = <U(t/2) x, P>; P = hbar k
    r = rotation2(0.5 * f.omega * t)
    y1 = (r[0, 0] * x1 + r[0, 1] * x2).ravel()
    y2 = (r[1, 0] * x1 + r[1, 1] * x2).ravel()
    x0 = spec.x[0]
    e1 = np.exp(1j * np.outer(y1 - x0, k))
    e2 = np.exp(1j * np.outer(y2 - x0, k))
    synth = np.einsum("pa,ab,pb->p", e1, coeffs, e2) / n**2
    synth = synth.reshape(x1.shape)

    def at(angle):
        rr = rotation2(angle)
        return evaluate_fock(state, rr[0, 0] * x1 + rr[0, 1] * x2, rr[1, 0] * x1 + rr[1, 1] * x2, f)

    return synth, at(0.5 * f.omega * t), at(-0.5 * f.omega * t)


def repct_sign_evidence(f: FieldParams, t: float | None = None):
    """``(distance to printed right side, distance to Phi(U(t/2) x))``, relative."""
    if t is None:
        t = 1.2 / abs(f.omega)
    synth, plus, minus = repct_synthesis(f, t)
    scale = np.linalg.norm(plus)
    return float(np.linalg.norm(synth - minus) / scale), float(np.linalg.norm(synth - plus) / scale)


def minimal_coupling_mismatch(f: FieldParams, spec: GridSpec, t: float = 0.4) -> float:
    """Schroedinger residual of the mapped solution under the H1-quantized sign."""
    state = FockSuperposition({(1, 0): 1.0, (0, 1): 1.0, (2, 0): 0.5}).normalized()
    return schrodinger_residual(state, t, f, spec, rotation_sign=+1)
