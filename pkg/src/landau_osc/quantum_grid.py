"""Transverse wave functions on a periodic 2D grid.

Two generators act here: the oscillator ``K = -hbar^2/2m Lap + m w_L^2 |x|^2 / 2``
and the field Hamiltonian ``H = K - (i hbar/2) <Omega x, grad>`` (``w_L`` is the
Larmor frequency ``omega/2``).  The map ``T_t`` sends ``Phi(Q, t)`` to
``Psi(x, t) = Phi(U(-t/2) x, t)``.  The longitudinal direction is kept
analytic: a grid carries its wavenumber ``k`` and picks up the free phase
``exp(-i hbar k^2 t / 2m)`` wherever time passes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.fft as sfft
from scipy import ndimage

from landau_osc.core import FieldParams, InvalidParameterError, rotation2
from landau_osc.entangle import FockLabel
from landau_osc.hermite import eigenfunction_derivatives, eigenfunctions

DEFAULT_N = 256
DEFAULT_LENGTH_ALPHA = 24.0
DEFAULT_DT = 1e-3


class TruncationWarning(UserWarning):
    pass


class InstabilityError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    n: int = DEFAULT_N
    length: float = DEFAULT_LENGTH_ALPHA

    def __post_init__(self):
        if self.n < 16:
            raise InvalidParameterError("grid needs at least 16 points per side")
        if not self.length > 0:
            raise InvalidParameterError("grid length must be positive")

    @classmethod
    def for_field(cls, f: FieldParams, n: int = DEFAULT_N, length_alpha: float = DEFAULT_LENGTH_ALPHA):
        """Grid of ``length_alpha`` oscillator lengths per side."""
        return cls(n, length_alpha / oscillator_alpha(f))

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.dx

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * sfft.fftfreq(self.n, d=self.dx)

    def mesh(self):
        return np.meshgrid(self.x, self.x, indexing="ij")


@dataclass(frozen=True)
class WaveGrid:
    """Samples ``psi[i, j] = psi(x[i], x[j])`` plus analytic longitudinal ``k``."""

    psi: np.ndarray
    spec: GridSpec
    k: float = 0.0
    interpolation_error_bound: float = 0.0

    def __post_init__(self):
        if self.psi.shape != (self.spec.n, self.spec.n):
            raise ValueError(f"amplitudes shape {self.psi.shape} does not match grid {self.spec.n}")

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def with_psi(self, psi, **kw) -> "WaveGrid":
        return replace(self, psi=psi, **kw)


@dataclass(frozen=True)
class FockSuperposition:
    """Amplitudes over oscillator labels ``(n1, n2)``; shared longitudinal ``k``."""

    amplitudes: dict = field(default_factory=dict)
    k: float = 0.0

    def __post_init__(self):
        amps = {}
        for label, a in dict(self.amplitudes).items():
            if isinstance(label, FockLabel):
                label = (label.n1, label.n2)
            n1, n2 = (int(v) for v in label)
            if n1 < 0 or n2 < 0:
                raise ValueError("quantum numbers must be nonnegative")
            amps[(n1, n2)] = complex(a)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def single(cls, n1: int, n2: int, k: float = 0.0):
        return cls({(n1, n2): 1.0}, k)

    @property
    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def normalized(self) -> "FockSuperposition":
        s = math.sqrt(self.norm_sq)
        if s == 0:
            raise ValueError("cannot normalize the zero state")
        return FockSuperposition({lab: a / s for lab, a in self.amplitudes.items()}, self.k)

    @property
    def max_degree(self) -> int:
        return max((max(lab) for lab in self.amplitudes), default=0)


def oscillator_alpha(f: FieldParams) -> float:
    if f.omega == 0:
        raise InvalidParameterError("oscillator length undefined for zero field")
    return math.sqrt(f.mass * abs(f.omega_osc) / f.hbar)


def spectrum_energy(label: FockLabel, f: FieldParams) -> float:
    w = abs(f.omega_osc)
    return f.hbar * w * (label.n1 + label.n2 + 1) + (f.hbar * label.k) ** 2 / (2 * f.mass)


def printed_spectrum_energy(label: FockLabel, f: FieldParams) -> float:
    """Level formula without the oscillator frequency; errata evidence only."""
    return f.hbar * (label.n1 + label.n2 + 1) + (f.hbar * label.k) ** 2 / (2 * f.mass)


def longitudinal_phase(k: float, t: float, f: FieldParams) -> complex:
    return np.exp(-1j * f.hbar * k * k * t / (2 * f.mass))


# -- sampling -------------------------------------------------------------


def evaluate_fock(state: FockSuperposition, y1, y2, f: FieldParams) -> np.ndarray:
    """Transverse amplitude at arbitrary points ``(y1, y2)``."""
    alpha = oscillator_alpha(f)
    nmax = state.max_degree
    e1 = eigenfunctions(nmax, y1, alpha)
    e2 = eigenfunctions(nmax, y2, alpha) if y2 is not y1 else e1
    out = np.zeros(np.shape(y1), dtype=complex)
    for (n1, n2), a in state.amplitudes.items():
        out += a * e1[n1] * e2[n2]
    return out


def evaluate_fock_gradient(state: FockSuperposition, y1, y2, f: FieldParams):
    alpha = oscillator_alpha(f)
    nmax = state.max_degree
    e1, e2 = eigenfunctions(nmax, y1, alpha), eigenfunctions(nmax, y2, alpha)
    d1, d2 = eigenfunction_derivatives(nmax, y1, alpha), eigenfunction_derivatives(nmax, y2, alpha)
    g1 = np.zeros(np.shape(y1), dtype=complex)
    g2 = np.zeros(np.shape(y1), dtype=complex)
    for (n1, n2), a in state.amplitudes.items():
        g1 += a * d1[n1] * e2[n2]
        g2 += a * e1[n1] * d2[n2]
    return g1, g2


def _check_truncation(psi: np.ndarray) -> None:
    peak = np.max(np.abs(psi))
    if peak == 0:
        return
    edge = max(
        np.max(np.abs(psi[0])), np.max(np.abs(psi[-1])), np.max(np.abs(psi[:, 0])), np.max(np.abs(psi[:, -1]))
    )
    if edge > 1e-8 * peak:
        warnings.warn(
            f"boundary amplitude {edge / peak:.2e} of peak; enlarge the grid", TruncationWarning, stacklevel=3
        )


def sample_fock(state: FockSuperposition, spec: GridSpec, f: FieldParams) -> WaveGrid:
    x1, x2 = spec.mesh()
    psi = evaluate_fock(state, x1, x2, f)
    _check_truncation(psi)
    return WaveGrid(psi, spec, state.k)


def gaussian_packet(spec: GridSpec, sigma: float, k0=(0.0, 0.0), center=(0.0, 0.0), k: float = 0.0) -> WaveGrid:
    """Normalized ``exp(-|x-c|^2 / 4 sigma^2 + i k0.x)``."""
    x1, x2 = spec.mesh()
    r2 = (x1 - center[0]) ** 2 + (x2 - center[1]) ** 2
    psi = np.exp(-r2 / (4 * sigma * sigma) + 1j * (k0[0] * x1 + k0[1] * x2)) / math.sqrt(2 * math.pi * sigma**2)
    return WaveGrid(psi.astype(complex), spec, k)


def norm(grid: WaveGrid) -> float:
    """Grid ``L^2`` norm squared, ``dx^2 sum |psi|^2``."""
    return float(np.sum(np.abs(grid.psi) ** 2) * grid.spec.dx**2)


def inner(a: WaveGrid, b: WaveGrid) -> complex:
    return complex(np.vdot(a.psi, b.psi) * a.spec.dx**2)


def distance(a: WaveGrid, b: WaveGrid) -> float:
    return math.sqrt(float(np.sum(np.abs(a.psi - b.psi) ** 2)) * a.spec.dx**2)


# -- rotations ------------------------------------------------------------


def _shear(psi, spec: GridSpec, a: float, axis: int):
    # axis 0: g(x1, x2) = f(x1 + a x2, x2); axis 1: g = f(x1, x2 + a x1)
    k = spec.k
    x = spec.x
    if axis == 0:
        phase = np.exp(1j * a * np.outer(k, x))
    else:
        phase = np.exp(1j * a * np.outer(x, k))
    return sfft.ifft(sfft.fft(psi, axis=axis) * phase, axis=axis)


def rotate_spectral(psi: np.ndarray, spec: GridSpec, angle: float) -> np.ndarray:
    """``g(x) = f(R(angle) x)`` by three FFT shears (exact for band-limited data)."""
    if angle == 0:
        return psi.copy()
    pieces = max(1, int(math.ceil(abs(angle) / (math.pi / 4))))
    step = angle / pieces
    a = -math.tan(step / 2)
    b = math.sin(step)
    out = psi
    for _ in range(pieces):
        out = _shear(out, spec, a, 0)
        out = _shear(out, spec, b, 1)
        out = _shear(out, spec, a, 0)
    return out


class _Rotator:
    """Precomputed shear phases for repeated rotations by a fixed small angle."""

    def __init__(self, spec: GridSpec, angle: float):
        a = -math.tan(angle / 2)
        b = math.sin(angle)
        k, x = spec.k, spec.x
        self.px = np.exp(1j * a * np.outer(k, x))
        self.py = np.exp(1j * b * np.outer(x, k))

    def __call__(self, psi):
        psi = sfft.ifft(sfft.fft(psi, axis=0) * self.px, axis=0)
        psi = sfft.ifft(sfft.fft(psi, axis=1) * self.py, axis=1)
        return sfft.ifft(sfft.fft(psi, axis=0) * self.px, axis=0)


def _bilinear_bound(grid: WaveGrid) -> float:
    h = grid.spec.dx
    k = grid.spec.k
    f = sfft.fft2(grid.psi)
    fxx = sfft.ifft2(f * -(k[:, None] ** 2))
    fyy = sfft.ifft2(f * -(k[None, :] ** 2))
    return float(h * h / 8 * (np.max(np.abs(fxx)) + np.max(np.abs(fyy))))


def apply_map_T(source, t: float, f: FieldParams, spec: GridSpec | None = None,
                method: str = "bilinear") -> WaveGrid:
    """``Psi(x) = Phi(U(-t/2) x)``.

    Fock sources are evaluated analytically at the rotated points.  Grid
    sources are resampled, bilinearly (with an error bound recorded on the
    result) or spectrally with ``method="spectral"``.
    """
    angle = -0.5 * f.omega * t
    if isinstance(source, FockSuperposition):
        if spec is None:
            raise ValueError("a grid spec is required for Fock sources")
        x1, x2 = spec.mesh()
        r = rotation2(angle)
        y1 = r[0, 0] * x1 + r[0, 1] * x2
        y2 = r[1, 0] * x1 + r[1, 1] * x2
        return WaveGrid(evaluate_fock(source, y1, y2, f), spec, source.k)

    grid: WaveGrid = source
    if angle == 0:
        return grid
    if method == "spectral":
        return grid.with_psi(rotate_spectral(grid.psi, grid.spec, angle))
    if method != "bilinear":
        raise ValueError(f"unknown method {method!r}")
    s = grid.spec
    x1, x2 = s.mesh()
    r = rotation2(angle)
    # fractional indices of the rotated points
    i = (r[0, 0] * x1 + r[0, 1] * x2) / s.dx + s.n // 2
    j = (r[1, 0] * x1 + r[1, 1] * x2) / s.dx + s.n // 2
    coords = np.array([i, j])
    re = ndimage.map_coordinates(grid.psi.real, coords, order=1, mode="grid-wrap")
    im = ndimage.map_coordinates(grid.psi.imag, coords, order=1, mode="grid-wrap")
    return grid.with_psi(re + 1j * im, interpolation_error_bound=_bilinear_bound(grid))


# -- evolution ------------------------------------------------------------


def propagate_k(state: FockSuperposition, t: float, f: FieldParams) -> FockSuperposition:
    amps = {}
    for (n1, n2), a in state.amplitudes.items():
        e = spectrum_energy(FockLabel(n1, n2, state.k), f)
        amps[(n1, n2)] = a * np.exp(-1j * e * t / f.hbar)
    return FockSuperposition(amps, state.k)


def check_step(spec: GridSpec, dt: float, f: FieldParams) -> None:
    if dt * abs(f.omega) >= 0.1:
        raise InvalidParameterError(f"dt*omega = {dt * abs(f.omega):.3g} must be below 0.1")
    kmax = math.pi / spec.dx
    kin = 0.5 * dt * f.hbar * kmax * kmax / (2 * f.mass)
    if kin >= 0.5:
        raise InvalidParameterError(f"half-step kinetic phase {kin:.3g} at the grid cutoff must be below 0.5")


def propagate_h_grid(grid: WaveGrid, t_end: float, dt: float, f: FieldParams,
                     norm_tol: float = 1e-6) -> WaveGrid:
    """Strang-split evolution under H.

    Each step is half kinetic, full potential, full rotation by ``-omega dt/2``
    (the exact flow of the ``<Omega x, grad>`` term), half kinetic.  Adjacent
    kinetic halves are fused.
    """
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    if t_end == 0:
        return grid
    spec = grid.spec
    check_step(spec, dt, f)
    n = int(math.ceil(t_end / dt - 1e-9))
    h = t_end / n
    k1, k2 = np.meshgrid(spec.k, spec.k, indexing="ij")
    kin = f.hbar * (k1**2 + k2**2) / (2 * f.mass)
    half_kin = np.exp(-0.5j * kin * h)
    full_kin = half_kin * half_kin
    x1, x2 = spec.mesh()
    pot = np.exp(-1j * f.mass * f.omega_osc**2 * (x1**2 + x2**2) * h / (2 * f.hbar))
    rot = _Rotator(spec, -0.5 * f.omega * h) if f.omega != 0 else None

    psi = sfft.ifft2(sfft.fft2(grid.psi) * half_kin)
    prev = float(np.sum(np.abs(psi) ** 2))
    for i in range(n):
        psi = psi * pot
        if rot is not None:
            psi = rot(psi)
        psi = sfft.ifft2(sfft.fft2(psi) * (full_kin if i < n - 1 else half_kin))
        cur = float(np.sum(np.abs(psi) ** 2))
        if not math.isfinite(cur) or abs(cur - prev) > norm_tol * max(prev, 1e-300):
            raise InstabilityError(f"norm drift {abs(cur - prev) / prev:.2e} in step {i + 1} (t={(i + 1) * h:.6g})")
        prev = cur
    return grid.with_psi(psi * longitudinal_phase(grid.k, t_end, f), interpolation_error_bound=0.0)


# -- operators ------------------------------------------------------------


def spectral_gradient(grid: WaveGrid):
    s = grid.spec
    f = sfft.fft2(grid.psi)
    g1 = sfft.ifft2(f * (1j * s.k[:, None]))
    g2 = sfft.ifft2(f * (1j * s.k[None, :]))
    return g1, g2


def apply_hamiltonian(grid: WaveGrid, f: FieldParams, rotation_sign: int = -1) -> np.ndarray:
    """``H psi`` with spectral derivatives, longitudinal ``hbar^2 k^2/2m`` included.

    ``rotation_sign=-1`` gives the ``-(i hbar/2) <Omega x, grad>`` term paired
    with ``T_t``; ``+1`` is the minimal-coupling sign.
    """
    s = grid.spec
    k1, k2 = np.meshgrid(s.k, s.k, indexing="ij")
    psi = grid.psi
    f_hat = sfft.fft2(psi)
    out = sfft.ifft2(f_hat * (f.hbar**2 * (k1**2 + k2**2) / (2 * f.mass)))
    x1, x2 = s.mesh()
    out = out + 0.5 * f.mass * f.omega_osc**2 * (x1**2 + x2**2) * psi
    if f.omega != 0:
        g1 = sfft.ifft2(f_hat * (1j * k1))
        g2 = sfft.ifft2(f_hat * (1j * k2))
        # Omega xbar = omega * (-x2, x1)
        drift = f.omega * (-x2 * g1 + x1 * g2)
        out = out + rotation_sign * 0.5j * f.hbar * drift
    out = out + (f.hbar * grid.k) ** 2 / (2 * f.mass) * psi
    return out


def energy_expectation(grid: WaveGrid, f: FieldParams) -> float:
    hp = apply_hamiltonian(grid, f)
    return float(np.real(np.vdot(grid.psi, hp)) / np.real(np.vdot(grid.psi, grid.psi)))


def mapped_state(state: FockSuperposition, t: float, f: FieldParams, spec: GridSpec) -> WaveGrid:
    """Exact solution path: evolve under K in the eigenbasis, then map by ``T_t``."""
    return apply_map_T(propagate_k(state, t, f), t, f, spec)


def schrodinger_residual(state: FockSuperposition, t: float, f: FieldParams, spec: GridSpec,
                         rotation_sign: int = -1, h: float = 1e-4) -> float:
    """Relative ``L^2`` size of ``i hbar dPsi/dt - H Psi`` along the mapped solution."""
    h_t = h / abs(f.omega) if f.omega else h
    plus = mapped_state(state, t + h_t, f, spec).psi
    minus = mapped_state(state, t - h_t, f, spec).psi
    here = mapped_state(state, t, f, spec)
    lhs = 1j * f.hbar * (plus - minus) / (2 * h_t)
    rhs = apply_hamiltonian(here, f, rotation_sign)
    return float(np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))


def consistency_residual(state: FockSuperposition, t: float, dt: float, f: FieldParams,
                         spec: GridSpec | None = None) -> float:
    """``L^2`` gap between the exact mapped path and grid propagation under H."""
    if spec is None:
        spec = GridSpec.for_field(f)
    exact = mapped_state(state, t, f, spec)
    if t == 0:
        return 0.0
    start = apply_map_T(state, 0.0, f, spec)
    evolved = propagate_h_grid(start, t, dt, f)
    return distance(exact, evolved)


def evolve_series(state: FockSuperposition, t_end: float, dt: float, f: FieldParams,
                  spec: GridSpec, samples: int = 10):
    """Grid propagation in ``samples`` segments, recording diagnostics.

    Returns a list of dicts with keys ``t``, ``residual``, ``norm``,
    ``energy`` and the final grid.
    """
    grid = apply_map_T(state, 0.0, f, spec)
    rows = [{"t": 0.0, "residual": 0.0, "norm": norm(grid), "energy": energy_expectation(grid, f)}]
    if t_end == 0:
        return rows, grid
    times = np.linspace(0.0, t_end, samples + 1)
    for t0, t1 in zip(times[:-1], times[1:]):
        grid = propagate_h_grid(grid, t1 - t0, dt, f)
        exact = mapped_state(state, t1, f, spec)
        rows.append({
            "t": float(t1),
            "residual": distance(exact, grid),
            "norm": norm(grid),
            "energy": energy_expectation(grid, f),
        })
    return rows, grid


def grid_to_rows(grid: WaveGrid):
    """``(i, j, re, im)`` rows for CSV export."""
    n = grid.spec.n
    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return zip(ii.ravel(), jj.ravel(), grid.psi.real.ravel(), grid.psi.imag.ravel())


def grid_metadata(grid: WaveGrid) -> dict:
    return {"N": grid.spec.n, "L": grid.spec.length, "dx": grid.spec.dx, "k": grid.k}
