"""Expansion of a rotated 2D Fock product state over the degenerate Fock basis.

Convention: the rotated state of source label ``(n, m)`` is
``psi_n((R x)_1) psi_m((R x)_2)`` with ``R = [[cos t, -sin t], [sin t, cos t]]``
and ``t`` the angle passed in.  The state carried by the time-dependent map
at time ``t`` uses ``R = U(-t/2)``, i.e. angle :func:`map_angle`.

Coefficients are real.  The quadrature overlap is authoritative; the closed
forms are evaluated alongside it and audited.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from landau_osc.core import FieldParams
from landau_osc.hermite import gauss_hermite, oscillator_polynomials, required_order

DEFAULT_CUTOFF = 20


class CutoffExceeded(ValueError):
    pass


class QuadratureAccuracyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FockLabel:
    n1: int
    n2: int
    k: float = 0.0

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("quantum numbers must be nonnegative")

    @property
    def total(self) -> int:
        return self.n1 + self.n2


def map_angle(t: float, f: FieldParams) -> float:
    """Angle of the transverse rotation ``U(-t/2)`` applied to coordinates."""
    return -0.5 * f.omega * t


def degenerate_labels(total: int) -> list[tuple[int, int]]:
    """Labels with ``l1 + l2 == total``, ordered by decreasing ``l1``."""
    return [(total - j, j) for j in range(total + 1)]


# -- closed forms ---------------------------------------------------------


def coefficient_closed_form(n1: int, n2: int, l1: int, l2: int, theta: float,
                            strategy: str = "printed") -> float:
    """One summand of the closed-form expansion.

    ``"printed"``: ``D * C(n1,l1) * C(n2,l2)`` with
    ``C = cos^(n1+l1) sin^(n2+l2)`` and the square-root factorial ratio, the
    generating-series factors ``s1^n1 s2^n2`` set to one.  The summand lands on
    target ``(l1 + l2, n1 + n2 - l1 - l2)``.

    ``"corrected"``: the generating-function derivation redone, where ``l1``
    counts the powers of ``s1`` drawn from the first rotated variable; the
    summand lands on target ``(l1 + l2, n1 + n2 - l1 - l2)`` as well.
    """
    if not (0 <= l1 <= n1 and 0 <= l2 <= n2):
        raise IndexError(f"need 0<=l1<={n1}, 0<=l2<={n2}; got l1={l1}, l2={l2}")
    c, s = math.cos(theta), math.sin(theta)
    p = l1 + l2
    q = n1 + n2 - p
    if strategy == "printed":
        trig = c ** (n1 + l1) * s ** (n2 + l2)
        root = math.sqrt(math.factorial(p) * math.factorial(q) / (math.factorial(n1) * math.factorial(n2)))
        return trig * root * math.comb(n1, l1) * math.comb(n2, l2)
    if strategy == "corrected":
        return _corrected_summand(n1, n2, l1, l2, c, s)
    raise ValueError(f"unknown strategy {strategy!r}")


def _corrected_summand(n, m, j1, j2, c, s) -> float:
    # source (n, m) with y = R x; x-target (p, q) where p = j1 + j2.
    # s1 draws j1 from (c s1 + s s2)^p and n - j1 from (-s s1 + c s2)^q;
    # relabel: j1 powers of s1 from first factor, j2 = p - j1 powers of s2.
    p = j1 + j2
    q = n + m - p
    k = n - j1  # s1 powers from the second factor
    if k < 0 or k > q:
        return 0.0
    val = math.comb(p, j1) * math.comb(q, k) * c**j1 * s**j2 * (-s) ** k * c ** (q - k)
    return val * math.sqrt(math.factorial(n) * math.factorial(m) / (math.factorial(p) * math.factorial(q)))


def closed_form_entry(n: int, m: int, target: tuple[int, int], theta: float,
                      strategy: str = "printed") -> float:
    """Closed-form coefficient on ``target`` summed over contributing ``(l1, l2)``."""
    p, q = target
    if p + q != n + m:
        return 0.0
    if strategy == "corrected":
        return sum(
            _corrected_summand(n, m, j1, p - j1, math.cos(theta), math.sin(theta))
            for j1 in range(0, p + 1)
        )
    return sum(
        coefficient_closed_form(n, m, l1, p - l1, theta, strategy)
        for l1 in range(max(0, p - m), min(n, p) + 1)
    )


# -- quadrature oracle ----------------------------------------------------


class OverlapResult(NamedTuple):
    value: float
    exact: bool


def _rotated_source_on_nodes(n, m, theta, quad):
    z = quad.nodes
    x1, x2 = np.meshgrid(z, z, indexing="ij")
    c, s = math.cos(theta), math.sin(theta)
    y1 = c * x1 - s * x2
    y2 = s * x1 + c * x2
    return oscillator_polynomials(n, y1)[n] * oscillator_polynomials(m, y2)[m]


def overlaps_on_shell(n: int, m: int, theta: float, total: int, quad_order: int | None = None) -> np.ndarray:
    """Overlaps of the rotated ``(n, m)`` state with every label of ``total`` quanta.

    Entries follow :func:`degenerate_labels`.  The Gaussian factors combine to
    ``exp(-|x|^2)`` because rotations preserve ``|x|``, so a tensor-product
    Gauss-Hermite rule of sufficient order is exact.
    """
    if quad_order is None:
        quad_order = required_order(n + m + total)
    quad = gauss_hermite(quad_order)
    src = _rotated_source_on_nodes(n, m, theta, quad) * np.outer(quad.weights, quad.weights)
    h = oscillator_polynomials(total, quad.nodes)
    return np.array([h[a] @ src @ h[b] for a, b in degenerate_labels(total)])


def coefficient_oracle(n: int, m: int, l1: int, l2: int, theta: float,
                       quad_order: int | None = None) -> OverlapResult:
    """``<psi_l1 psi_l2, rotated psi_n psi_m>`` by 2D Gauss-Hermite quadrature."""
    need = required_order(n + m + l1 + l2)
    if quad_order is None:
        quad_order = need
    exact = quad_order >= need
    if not exact:
        warnings.warn(
            f"quadrature order {quad_order} below {need} for total degree {n + m + l1 + l2}",
            QuadratureAccuracyWarning,
            stacklevel=2,
        )
    quad = gauss_hermite(quad_order)
    src = _rotated_source_on_nodes(n, m, theta, quad) * np.outer(quad.weights, quad.weights)
    h1 = oscillator_polynomials(l1, quad.nodes)[l1]
    h2 = oscillator_polynomials(l2, quad.nodes)[l2]
    return OverlapResult(float(h1 @ src @ h2), exact)


def quanta_leakage(n: int, m: int, theta: float, probe_total: int) -> float:
    """Largest overlap of the rotated state with labels of ``probe_total`` quanta."""
    if probe_total == n + m:
        raise ValueError("probe_total must differ from n + m")
    if probe_total < 0:
        return 0.0
    return float(np.max(np.abs(overlaps_on_shell(n, m, theta, probe_total))))


# -- tables ---------------------------------------------------------------


@dataclass
class CoefficientTable:
    source: tuple[int, int]
    theta: float
    targets: list[tuple[int, int]]
    oracle: np.ndarray
    closed_form: np.ndarray
    strategy: str = "printed"
    extra: dict = field(default_factory=dict)

    @property
    def abs_diff(self) -> np.ndarray:
        return np.abs(self.closed_form - self.oracle)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.oracle**2))

    def coefficient(self, target) -> float:
        return float(self.oracle[self.targets.index(tuple(target))])

    def to_dict(self) -> dict:
        return {
            "source": list(self.source),
            "theta": self.theta,
            "entries": [
                {
                    "target": list(t),
                    "oracle": float(o),
                    "closed_form": float(c),
                    "abs_diff": float(abs(c - o)),
                }
                for t, o, c in zip(self.targets, self.oracle, self.closed_form)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict, strategy: str = "printed"):
        entries = d["entries"]
        return cls(
            source=tuple(d["source"]),
            theta=float(d["theta"]),
            targets=[tuple(e["target"]) for e in entries],
            oracle=np.array([e["oracle"] for e in entries]),
            closed_form=np.array([e["closed_form"] for e in entries]),
            strategy=strategy,
        )


def expand_rotated_state(n: int, m: int, theta: float, cutoff: int = DEFAULT_CUTOFF,
                         strategy: str = "printed", quad_order: int | None = None) -> CoefficientTable:
    if n < 0 or m < 0:
        raise ValueError("quantum numbers must be nonnegative")
    if n + m > cutoff:
        raise CutoffExceeded(f"n + m = {n + m} exceeds cutoff {cutoff}")
    total = n + m
    targets = degenerate_labels(total)
    if quad_order is not None and quad_order < required_order(2 * total):
        warnings.warn(f"quadrature order {quad_order} too low for {total} quanta", QuadratureAccuracyWarning,
                      stacklevel=2)
    oracle = overlaps_on_shell(n, m, theta, total, quad_order)
    closed = np.array([closed_form_entry(n, m, t, theta, strategy) for t in targets])
    return CoefficientTable((n, m), theta, targets, oracle, closed, strategy)


def shell_matrix(total: int, theta: float) -> np.ndarray:
    """Oracle matrix ``M[target, source]`` on the ``total``-quanta shell."""
    labels = degenerate_labels(total)
    return np.column_stack([overlaps_on_shell(a, b, theta, total) for a, b in labels])


def composition_defect(total: int, theta1: float, theta2: float) -> float:
    a = shell_matrix(total, theta1)
    b = shell_matrix(total, theta2)
    return float(np.max(np.abs(a @ b - shell_matrix(total, theta1 + theta2))))
