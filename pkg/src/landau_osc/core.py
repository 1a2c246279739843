"""Field parameters, the antisymmetric field generator and its exponential."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class InvalidParameterError(ValueError):
    """Raised for physically meaningless parameters (nonpositive mass, ...)."""


class OracleFailure(RuntimeError):
    """Raised when a reference computation fails to converge."""


@dataclass(frozen=True)
class FieldParams:
    """Charge, mass, z-aligned field strength and light speed.

    ``hbar`` rides along so the quantum modules can share one parameter
    object; it is ignored by the classical code.
    """

    charge: float = 1.0
    mass: float = 1.0
    field: float = 1.0
    light_speed: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidParameterError(f"mass must be positive, got {self.mass}")
        if not self.light_speed > 0:
            raise InvalidParameterError(
                f"light speed must be positive, got {self.light_speed}"
            )
        if not self.hbar > 0:
            raise InvalidParameterError(f"hbar must be positive, got {self.hbar}")
        if not math.isfinite(self.omega):
            raise InvalidParameterError("cyclotron frequency is not finite")

    @property
    def omega(self) -> float:
        """Signed cyclotron frequency qB/(mc)."""
        return self.charge * self.field / (self.mass * self.light_speed)

    @property
    def omega_osc(self) -> float:
        """Larmor frequency, the oscillator frequency of the rotating frame."""
        return 0.5 * self.omega

    @classmethod
    def from_omega(cls, omega: float, mass: float = 1.0, hbar: float = 1.0):
        """Unit charge and light speed with the field chosen to give ``omega``."""
        return cls(charge=1.0, mass=mass, field=omega * mass, light_speed=1.0, hbar=hbar)


def cyclotron_frequency(field: FieldParams) -> float:
    if not field.mass > 0 or not field.light_speed > 0:
        raise InvalidParameterError("mass and light speed must be positive")
    return field.omega


def generator(omega: float) -> np.ndarray:
    """3x3 antisymmetric generator for a z-aligned field.

    ``generator(w) @ x`` equals ``w * (z_hat x x)``.
    """
    return np.array([[0.0, -omega, 0.0], [omega, 0.0, 0.0], [0.0, 0.0, 0.0]])


def generator_from_vector(omegas) -> np.ndarray:
    """General antisymmetric generator, ``Omega @ x == omegas x x``."""
    w1, w2, w3 = omegas
    return np.array([[0.0, -w3, w2], [w3, 0.0, -w1], [-w2, w1, 0.0]])


def rotation2(angle: float) -> np.ndarray:
    """2x2 rotation ``exp(angle * [[0, -1], [1, 0]])``."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def rotation(t: float, omega: float) -> np.ndarray:
    """Closed form of ``U(t) = exp(t * generator(omega))``.

    The third row and column are those of the identity; the transverse block
    is the proper rotation by ``omega * t``.
    """
    u = np.eye(3)
    u[:2, :2] = rotation2(omega * t)
    return u


def printed_rotation_block(angle: float) -> np.ndarray:
    """Transverse block with ``+sin`` in both off-diagonal slots.

    Kept only so reports can measure how far it is from the true exponential.
    """
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s], [s, c]])


def matrix_exp_series(m, t: float, tol: float = 1e-14, max_terms: int = 200) -> np.ndarray:
    """Sum ``(t m)^n / n!`` until a term's largest entry drops below ``tol``.

    Reference implementation used to arbitrate :func:`rotation`.
    """
    if not tol > 0:
        raise InvalidParameterError("tol must be positive")
    a = t * np.asarray(m, dtype=float)
    total = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for n in range(1, max_terms + 1):
        term = term @ a / n
        total = total + term
        if np.max(np.abs(term)) < tol:
            return total
    raise OracleFailure(f"series did not converge within {max_terms} terms")
