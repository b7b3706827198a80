"""Bound states of the pseudoharmonic oscillator.

Position waveforms are evaluated in log form so that huge repulsions (large
eta) neither overflow the Gamma prefactor nor underflow the power of x.

Momentum waveforms come from substituting the power sum of the Laguerre
polynomial into the half-line Fourier integral.  Each power produces

    int_0^inf exp(-i k y - y^2/2) y^s dy
        = 2^((s-1)/2) Gamma((s+1)/2) e^{-z} M(-s/2, 1/2, z)
          - i k 2^(s/2) Gamma(s/2+1) e^{-z} M(1/2-s/2, 3/2, z),   z = k^2/2,

with s = eta + 2j + 1/2 (Kummer's transformation has already been applied).
Where the alternating sums lose too many digits the integral is done
numerically instead.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import special_functions as sf
from .classical_mechanics import ClassicalState, PhoModel, X_2OMEGA, X_OMEGA, turning_points
from .errors import DomainError
from .quadrature import gauss_legendre_panels

log = logging.getLogger(__name__)

LN2 = math.log(2.0)
# A Kummer-sum value is accepted when its rounding estimate is below
# max(KUMMER_REL_BUDGET * |phi|, KUMMER_ABS_BUDGET); otherwise that k is
# recomputed by direct quadrature.
KUMMER_REL_BUDGET = 1e-10
KUMMER_ABS_BUDGET = 1e-13
_FOURIER_MARGIN = 7.0


@dataclass(frozen=True)
class Orbital:
    model: PhoModel
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"orbital index must be a non-negative integer, got {self.n}")

    @property
    def eta(self) -> float:
        return self.model.eta

    @property
    def a(self) -> float:
        return self.model.a


def make_orbital(a: float, n: int = 0) -> Orbital:
    return Orbital(PhoModel(float(a)), int(n))


def energy(orb: Orbital) -> float:
    """E_n = hbar omega (2n + 1 + eta - sqrt(a))."""
    return 2.0 * orb.n + 1.0 + orb.eta - math.sqrt(orb.a)


def energy_small_a(orb: Orbital) -> float:
    """Expansion of the energy to first order in a."""
    return 2.0 * orb.n + 1.5 - math.sqrt(orb.a) + orb.a


def energy_large_a(orb: Orbital) -> float:
    """Expansion of the energy for a -> infinity."""
    a = orb.a
    return 2.0 * (orb.n + 0.5 + 1.0 / (16.0 * math.sqrt(a)) - 1.0 / (256.0 * a**1.5))


def _log_norm(orb: Orbital) -> float:
    """ln of [2 n! / Gamma(n+eta+1)]^(1/2) / x_omega^(1/2)."""
    return 0.5 * (LN2 + math.lgamma(orb.n + 1.0) - sf.ln_gamma(orb.n + orb.eta + 1.0).value) \
        - 0.5 * math.log(X_OMEGA)


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("position waveforms are defined for x >= 0")
    return x


def _envelope(orb: Orbital, y: np.ndarray) -> np.ndarray:
    """Normalisation times y^(eta+1/2) e^(-y^2/2); zero at y = 0."""
    out = np.zeros_like(y)
    pos = y > 0
    with np.errstate(under="ignore"):
        out[pos] = np.exp(_log_norm(orb) + (orb.eta + 0.5) * np.log(y[pos]) - 0.5 * y[pos] ** 2)
    return out


def psi(orb: Orbital, x):
    """Position waveform, positive as x -> 0+."""
    x = _check_x(x)
    y = np.atleast_1d(x / X_OMEGA)
    out = _envelope(orb, y) * sf.laguerre(orb.n, orb.eta, y * y)
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def psi_derivative(orb: Orbital, x):
    """d psi / dx from the analytic derivative of the Laguerre form."""
    x = _check_x(x)
    y = np.atleast_1d(x / X_OMEGA)
    env = _envelope(orb, y)
    lag = sf.laguerre(orb.n, orb.eta, y * y)
    dlag = -sf.laguerre(orb.n - 1, orb.eta + 1.0, y * y) if orb.n > 0 else np.zeros_like(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        bracket = np.where(y > 0, lag * ((orb.eta + 0.5) / y - y) + 2.0 * y * dlag, 0.0)
    out = env * bracket / X_OMEGA
    if orb.eta == 0.5:
        # a = 0: psi ~ c x near the wall, so the slope at x = 0 is finite
        out = np.where(y > 0, out, math.exp(_log_norm(orb)) * sf.laguerre(orb.n, 0.5, 0.0) / X_OMEGA)
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def rho(orb: Orbital, x):
    """Position density psi^2."""
    p = psi(orb, x)
    return p * p


def psi_hho_hermite(n: int, x):
    """Half-harmonic waveform written through H_{2n+1}; valid only at a = 0."""
    x = np.asarray(x, dtype=float)
    y = x / X_OMEGA
    lg = -(2 * n + 0.5) * LN2 - 0.5 * (math.lgamma(n + 1.0) + math.lgamma(n + 1.5)) \
        - 0.5 * math.log(X_OMEGA)
    return (-1.0) ** n * math.exp(lg) * np.exp(-0.5 * y * y) * sf.hermite(2 * n + 1, y)


def support(orb: Orbital, margin: float = _FOURIER_MARGIN) -> tuple[float, float]:
    """Interval (x_omega units) outside which |psi| is negligible."""
    state = ClassicalState(orb.model, energy(orb) / 0.5)
    xm, xp = turning_points(state)
    return max(0.0, xm - margin), xp + margin


@dataclass(frozen=True)
class _Term:
    # one Laguerre power j: weights already include the overall normalisation
    s: float
    w_re: float
    w_im: float


@dataclass(frozen=True)
class MomentumWaveform:
    """Momentum-space waveform Phi_n(k) = Phi_r + i Phi_i of one orbital.

    Immutable after construction, so one instance can be shared freely.
    """

    orbital: Orbital
    terms: tuple = field(init=False)
    usable: bool = field(init=False)

    def __post_init__(self):
        orb = self.orbital
        eta, n = orb.eta, orb.n
        ln_pref = 0.5 * (math.lgamma(n + 1.0) - math.log(math.pi)
                         - sf.ln_gamma(n + eta + 1.0).value) + 0.5 * math.log(X_OMEGA)
        coeffs = sf.laguerre_coefficients(n, eta) if n <= 170 else None
        terms = []
        usable = coeffs is not None
        if usable:
            for j, c in enumerate(coeffs):
                s = eta + 2.0 * j + 0.5
                if c == 0.0:
                    continue
                base = ln_pref + math.log(abs(c))
                lr = base + 0.5 * (s - 1.0) * LN2 + sf.ln_gamma(0.5 * (s + 1.0)).value
                li = base + 0.5 * s * LN2 + sf.ln_gamma(0.5 * s + 1.0).value
                if max(lr, li) > 700.0:
                    usable = False
                    break
                sign = math.copysign(1.0, c)
                terms.append(_Term(s, sign * math.exp(lr), -sign * math.exp(li)))
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "usable", usable)

    # -- Kummer sums -------------------------------------------------------
    def _kummer(self, p: np.ndarray, with_derivative: bool):
        z = 0.5 * p * p
        re = np.zeros_like(p)
        im = np.zeros_like(p)
        err = np.zeros_like(p)
        dre = np.zeros_like(p) if with_derivative else None
        dim = np.zeros_like(p) if with_derivative else None
        for t in self.terms:
            a_r = -0.5 * t.s
            a_i = 0.5 - 0.5 * t.s
            mr, er = sf.kummer_scaled(a_r, 0.5, z)
            mi, ei = sf.kummer_scaled(a_i, 1.5, z)
            re += t.w_re * mr
            im += t.w_im * p * mi
            err += abs(t.w_re) * (er + 4 * sf.EPS * np.abs(mr)) \
                + abs(t.w_im) * p * (ei + 4 * sf.EPS * np.abs(mi))
            if with_derivative:
                # d/dk [e^-z M(a,b,z)] = k e^-z [(a/b) M(a+1,b+1,z) - M(a,b,z)]
                mr1, er1 = sf.kummer_scaled(a_r + 1.0, 1.5, z)
                mi1, ei1 = sf.kummer_scaled(a_i + 1.0, 2.5, z)
                dre += t.w_re * p * (a_r / 0.5 * mr1 - mr)
                dim += t.w_im * (mi + p * p * (a_i / 1.5 * mi1 - mi))
                err += abs(t.w_re) * p * (er1 + er) + abs(t.w_im) * (1 + p * p) * (ei1 + ei)
        return re, im, dre, dim, err

    # -- direct quadrature -------------------------------------------------
    def _numeric(self, p: np.ndarray, with_derivative: bool):
        lo, hi = support(self.orbital)
        kmax = float(np.max(p)) if p.size else 0.0
        panels = int(math.ceil((hi - lo) * max(2.0, kmax / 6.0)))
        x, w = gauss_legendre_panels(lo, hi, panels, order=24, graded_start=(lo == 0.0))
        wpsi = w * psi(self.orbital, x) / math.sqrt(2.0 * math.pi)
        re = np.empty_like(p)
        im = np.empty_like(p)
        dre = np.empty_like(p) if with_derivative else None
        dim = np.empty_like(p) if with_derivative else None
        step = max(1, int(4_000_000 // max(x.size, 1)))
        for s0 in range(0, p.size, step):
            kk = p[s0:s0 + step]
            phase = np.outer(kk, x)
            c = np.cos(phase)
            s = np.sin(phase)
            re[s0:s0 + step] = c @ wpsi
            im[s0:s0 + step] = -(s @ wpsi)
            if with_derivative:
                xw = wpsi * x
                # d/dk of int psi e^{-ikx} = int (-i x) psi e^{-ikx}
                dre[s0:s0 + step] = -(s @ xw)
                dim[s0:s0 + step] = -(c @ xw)
        return re, im, dre, dim

    def _evaluate(self, k, with_derivative: bool):
        k = np.asarray(k, dtype=float)
        flat = np.abs(k.ravel())
        if self.usable:
            with np.errstate(over="ignore", invalid="ignore"):
                re, im, dre, dim, err = self._kummer(flat, with_derivative)
                mag = np.hypot(re, im)
            # huge weights can cancel to inf/nan; those points fall back as well
            bad = ~(np.isfinite(mag) & (err <= np.maximum(KUMMER_REL_BUDGET * mag, KUMMER_ABS_BUDGET)))
        else:
            re = np.empty_like(flat)
            im = np.empty_like(flat)
            dre = np.empty_like(flat) if with_derivative else None
            dim = np.empty_like(flat) if with_derivative else None
            bad = np.ones(flat.shape, dtype=bool)
        if bad.any():
            if self.usable:
                log.debug("a=%g n=%d: %d of %d k-points use direct quadrature (|k| in [%g, %g])",
                          self.orbital.a, self.orbital.n, int(bad.sum()), flat.size,
                          flat[bad].min(), flat[bad].max())
            r2, i2, dr2, di2 = self._numeric(flat[bad], with_derivative)
            re[bad] = r2
            im[bad] = i2
            if with_derivative:
                dre[bad] = dr2
                dim[bad] = di2
        sgn = np.where(k.ravel() < 0, -1.0, 1.0)
        # Phi_r is even, Phi_i odd; their k-derivatives swap parity
        im = im * sgn
        out = (re.reshape(k.shape), im.reshape(k.shape))
        if with_derivative:
            dre = dre * sgn
            out = out + (dre.reshape(k.shape), dim.reshape(k.shape))
        return out

    def __call__(self, k):
        """(Phi_r, Phi_i) at wave vector(s) k."""
        re, im = self._evaluate(k, False)
        return re, im

    def with_derivative(self, k):
        """(Phi_r, Phi_i, dPhi_r/dk, dPhi_i/dk)."""
        return self._evaluate(k, True)

    def kummer_only(self, k):
        """Kummer-sum values and their rounding estimates, no fallback."""
        p = np.abs(np.asarray(k, dtype=float))
        re, im, _, _, err = self._kummer(p.ravel(), False)
        sgn = np.where(np.asarray(k, dtype=float).ravel() < 0, -1.0, 1.0)
        return re.reshape(p.shape), (im * sgn).reshape(p.shape), err.reshape(p.shape)

    def numeric_only(self, k):
        """Direct-quadrature values, bypassing the Kummer sums."""
        k = np.asarray(k, dtype=float)
        re, im, _, _ = self._numeric(np.abs(k.ravel()), False)
        sgn = np.where(k.ravel() < 0, -1.0, 1.0)
        return re.reshape(k.shape), (im * sgn).reshape(k.shape)


def momentum_waveform(orb: Orbital) -> MomentumWaveform:
    return MomentumWaveform(orb)


def phi(orb: Orbital, k):
    """(Phi_r, Phi_i) of orbital ``orb`` at wave vector(s) ``k``."""
    return MomentumWaveform(orb)(k)


def gamma_density(orb: Orbital, k, waveform: MomentumWaveform | None = None):
    """Momentum density |Phi|^2."""
    wf = waveform or MomentumWaveform(orb)
    re, im = wf(k)
    return re * re + im * im


def phi_ground_closed(model: PhoModel, k):
    """Ground-state Kummer form written out explicitly (reference for n = 0)."""
    eta = model.eta
    k = np.asarray(k, dtype=float)
    z = 0.5 * (X_OMEGA * k) ** 2
    pre = math.sqrt(X_OMEGA / (math.pi * sf.gamma(eta + 1.0).value))
    m1, _ = sf.kummer_scaled(-eta / 2 - 0.25, 0.5, z)
    m2, _ = sf.kummer_scaled(-eta / 2 + 0.25, 1.5, z)
    re = pre * 2 ** (eta / 2 - 0.25) * sf.gamma(eta / 2 + 0.75).value * m1
    im = -pre * 2 ** (eta / 2 + 0.25) * sf.gamma(eta / 2 + 1.25).value * X_OMEGA * k * m2
    return re, im


def phi_first_closed(model: PhoModel, k):
    """First-excited Kummer form written out explicitly (reference for n = 1).

    The imaginary part carries an overall minus sign: with the e^{-ikx}
    kernel and psi_1 > 0 near the origin, Im Phi_1 is positive for small
    k > 0 (confirmed by direct quadrature).
    """
    eta = model.eta
    k = np.asarray(k, dtype=float)
    z = 0.5 * (X_OMEGA * k) ** 2
    pre = math.sqrt(X_OMEGA / (math.pi * sf.gamma(eta + 2.0).value))
    ma, _ = sf.kummer_scaled(-eta / 2 - 0.25, 0.5, z)
    mb, _ = sf.kummer_scaled(-eta / 2 - 1.25, 0.5, z)
    mc, _ = sf.kummer_scaled(-eta / 2 + 0.25, 1.5, z)
    md, _ = sf.kummer_scaled(-eta / 2 - 0.75, 1.5, z)
    re = pre * 2 ** (eta / 2 - 1.25) * sf.gamma(eta / 2 + 0.75).value \
        * (2 * (1 + eta) * ma - (3 + 2 * eta) * mb)
    im = -pre * 2 ** (eta / 2 - 0.75) * sf.gamma(eta / 2 + 1.25).value * X_OMEGA * k \
        * (2 * (1 + eta) * mc - (5 + 2 * eta) * md)
    return re, im


def phi_ground_large_a(model: PhoModel, k):
    """Double-frequency Gaussian limit of the ground-state momentum waveform.

    The phase is e^{-i k x_Z}: the position peak sits at the potential
    minimum x_Z = a^(1/4) x_omega.
    """
    k = np.asarray(k, dtype=float)
    amp = math.sqrt(X_2OMEGA) / math.pi**0.25 * np.exp(-0.5 * (X_2OMEGA * k) ** 2)
    phase = -k * model.x_z
    return amp * np.cos(phase), amp * np.sin(phase)


def ground_state_gaussian(model: PhoModel, x):
    """Gaussian of width x_2omega centred at x_Z (large-a ground state)."""
    x = np.asarray(x, dtype=float)
    return (math.pi * X_2OMEGA**2) ** -0.25 * np.exp(-0.5 * ((x - model.x_z) / X_2OMEGA) ** 2)


def count_sign_changes(values: np.ndarray, floor: float = 0.0) -> int:
    """Number of sign changes in a sampled function, ignoring |v| <= floor."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > floor]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))
