"""Classical motion in the pseudoharmonic well.

Units: hbar = m = omega = 1, so the oscillator length x_omega = 1, the
double-frequency length x_2omega = 1/sqrt(2) and the energy unit
D_omega = m omega^2 x_omega^2 / 2 = 1/2.  Classical energies are passed in
units of D_omega.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_endpoint_singular

HBAR = 1.0
MASS = 1.0
OMEGA = 1.0
X_OMEGA = math.sqrt(HBAR / (MASS * OMEGA))
X_2OMEGA = X_OMEGA / math.sqrt(2.0)
D_OMEGA = 0.5 * MASS * OMEGA**2 * X_OMEGA**2


@dataclass(frozen=True)
class PhoModel:
    """Pseudoharmonic oscillator with dimensionless repulsion ``a``."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a >= 0):
            raise DomainError(f"repulsion parameter must be finite and >= 0, got {self.a}")

    @property
    def eta(self) -> float:
        return 0.5 * math.sqrt(1.0 + 4.0 * self.a)

    @property
    def x_z(self) -> float:
        """Position of the potential minimum."""
        return self.a**0.25 * X_OMEGA


@dataclass(frozen=True)
class ClassicalState:
    model: PhoModel
    energy: float  # units of D_omega

    def __post_init__(self):
        if not (math.isfinite(self.energy) and self.energy > 0):
            raise DomainError(f"classical energy must be > 0, got {self.energy}")


def potential(model: PhoModel, x):
    """V(x) in units of D_omega; x in units of x_omega (x > 0)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("potential is defined for x > 0 only")
    v = (x / X_OMEGA - math.sqrt(model.a) * X_OMEGA / x) ** 2
    return float(v) if v.ndim == 0 else v


def turning_points(state: ClassicalState) -> tuple[float, float]:
    """Left and right turning points (x_minus, x_plus) in units of x_omega."""
    e = state.energy
    ra = math.sqrt(state.model.a)
    outer = 0.5 * e + ra
    inner = math.sqrt(0.25 * e * e + e * ra)
    x_plus = X_OMEGA * math.sqrt(outer + inner)
    # outer - inner loses digits when a is small; use the product a = x-^2 x+^2
    x_minus = X_OMEGA * (math.sqrt(state.model.a) / (x_plus / X_OMEGA) if ra > 0 else 0.0)
    return x_minus, x_plus


def diameter(state: ClassicalState) -> float:
    """x_plus - x_minus = x_omega sqrt(E/D_omega)."""
    return X_OMEGA * math.sqrt(state.energy)


def symmetry_ratio(model: PhoModel, energy: float) -> float:
    """r = |x_- - x_Z| / |x_+ - x_Z|; the E -> 0 limit is 1 by convention."""
    if energy == 0:
        return 1.0
    state = ClassicalState(model, energy)
    xm, xp = turning_points(state)
    xz = model.x_z
    return (xz - xm) / (xp - xz)


def symmetry_ratio_large_a(model: PhoModel, energy: float) -> float:
    """Two-term large-a expansion of the symmetry ratio."""
    q = model.a**0.25
    return 1.0 - math.sqrt(energy) / (2.0 * q) + energy / (8.0 * q * q)


def period(model: PhoModel) -> float:
    """Exact period pi/omega, independent of energy and of a."""
    return math.pi / OMEGA


def period_numeric(state: ClassicalState, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """T = sqrt(2m) * integral of dx / sqrt(E - V) between the turning points."""
    xm, xp = turning_points(state)
    e_abs = state.energy * D_OMEGA
    model = state.model

    def integrand(x):
        gap = e_abs - D_OMEGA * potential(model, x)
        return math.sqrt(2.0 * MASS) / np.sqrt(np.maximum(gap, 1e-300))

    # at a = 0 the left end is the hard wall, where the integrand stays finite
    return integrate_endpoint_singular(integrand, xm, xp, quad).value


def average_speed(state: ClassicalState) -> float:
    """(2/pi) sqrt(2E/m), energy taken in absolute units."""
    return 2.0 / math.pi * math.sqrt(2.0 * state.energy * D_OMEGA / MASS)
