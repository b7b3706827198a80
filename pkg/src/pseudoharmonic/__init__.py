"""Pseudoharmonic oscillator: classical motion, exact orbitals and their information measures."""

__version__ = "0.1.0"

from . import _backend
from .classical_mechanics import ClassicalState, PhoModel
from .errors import (
    AccuracyLossError,
    BelowThresholdError,
    DegreeBudgetError,
    DomainError,
    GridTooCoarseError,
    PhoError,
    PoleError,
    QuadratureError,
    RangeOverflowError,
)
from .info_measures import MeasureReport, RenyiQuery, measure_report
from .quadrature import QuadratureSpec
from .quantum_solver import Orbital, make_orbital

backend = _backend.name

__all__ = [
    "AccuracyLossError",
    "BelowThresholdError",
    "ClassicalState",
    "DegreeBudgetError",
    "DomainError",
    "GridTooCoarseError",
    "MeasureReport",
    "Orbital",
    "PhoError",
    "PhoModel",
    "PoleError",
    "QuadratureError",
    "QuadratureSpec",
    "RangeOverflowError",
    "RenyiQuery",
    "backend",
    "make_orbital",
    "measure_report",
]
