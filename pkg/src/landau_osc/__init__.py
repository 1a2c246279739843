"""Numerical checks of the canonical and unitary equivalence between a charged
particle in a uniform magnetic field and a 2D oscillator plus a free particle."""

from landau_osc.core import (
    FieldParams,
    InvalidParameterError,
    OracleFailure,
    cyclotron_frequency,
    generator,
    matrix_exp_series,
    rotation,
    rotation2,
)

__all__ = [
    "FieldParams",
    "InvalidParameterError",
    "OracleFailure",
    "cyclotron_frequency",
    "generator",
    "matrix_exp_series",
    "rotation",
    "rotation2",
]

__version__ = "0.1.0"
