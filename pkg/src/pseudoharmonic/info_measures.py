"""Information measures of pseudoharmonic orbitals.

Moments, Shannon, Fisher, Onicescu, Renyi and Tsallis functionals in
position and momentum space, the non-Gaussianities of the ground state,
the momentum convergence threshold and the Renyi/Tsallis uncertainty gaps.

Raw integrals are done in x_omega units (x_omega = 1).  Public results are
dimensionless in the x_2omega convention: lengths in x_2omega, wave vectors
in 1/x_2omega, so that e.g. S_x is reported as S_x - ln x_2omega and S_k as
S_k + ln x_2omega.  Where closed forms exist they are provided as separate
``*_closed`` functions so that the quadrature results can be checked
against them.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import special_functions as sf
from .classical_mechanics import ClassicalState, PhoModel, X_2OMEGA, X_OMEGA, turning_points
from .errors import BelowThresholdError, DomainError
from .quadrature import (
    DEFAULT_SPEC,
    UNDERFLOW_FLOOR,
    QuadratureSpec,
    gauss_legendre_edges,
    integrate_half_line,
    integrate_interval,
    log_safe,
)
from .quantum_solver import MomentumWaveform, Orbital, psi, psi_derivative, rho

LN_X2 = math.log(X_2OMEGA)
LN_XW = math.log(X_OMEGA)
# the algebraic momentum tail is integrated numerically up to this multiple
# of the truncation point and analytically beyond
_TAIL_STRETCH = 1e6

UNITS = {"x2omega": X_2OMEGA, "xomega": X_OMEGA}


def _unit(units: str) -> float:
    try:
        return UNITS[units]
    except KeyError:
        raise DomainError(f"units must be one of {sorted(UNITS)}, got {units!r}") from None


# ---------------------------------------------------------------------------
# integration windows
# ---------------------------------------------------------------------------

def _x_window(orb: Orbital) -> tuple[float, float]:
    """(center, scale) hints for position integrals."""
    e = (2.0 * orb.n + 1.0 + orb.eta - math.sqrt(orb.a)) / 0.5
    xm, xp = turning_points(ClassicalState(orb.model, e))
    return 0.5 * (xm + xp), 0.5 * (xp - xm) + X_2OMEGA


def _k_scale(orb: Orbital) -> float:
    return math.sqrt(2.0 * orb.n + 1.0 + 0.25 / orb.eta) / X_OMEGA


def _x_integral(f, orb: Orbital, quad: QuadratureSpec) -> float:
    center, scale = _x_window(orb)
    return integrate_half_line(f, quad, scale=scale, center=center).value


@lru_cache(maxsize=256)
def _waveform(orb: Orbital) -> MomentumWaveform:
    return MomentumWaveform(orb)


def _ln_tail_amplitude(orb: Orbital) -> float:
    """ln C in gamma(k) ~ C |k|^-(2 eta + 3) for |k| -> infinity (x_omega units).

    Only the j = 0 power of the Laguerre sum contributes at leading order;
    its Kummer functions behave as Gamma(b)/Gamma(a) z^(a-b).  Returns -inf
    when both leading coefficients vanish.
    """
    eta, n = orb.eta, orb.n
    s = eta + 0.5
    ln_pref = 0.5 * (math.lgamma(n + 1.0) - math.log(math.pi) - sf.ln_gamma(n + eta + 1.0).value)
    ln_c0 = math.lgamma(n + eta + 1.0) - math.lgamma(n + 1.0) - math.lgamma(eta + 1.0)

    def part(ln_w, a_par, b_par):
        if sf._is_nonpositive_integer(a_par):
            return -math.inf
        return 2.0 * (ln_w + math.lgamma(b_par) - math.lgamma(a_par) + (b_par - a_par) * math.log(2.0))

    re = part(ln_pref + ln_c0 + 0.5 * (s - 1.0) * math.log(2.0) + math.lgamma(0.5 * (s + 1.0)),
              -0.5 * s, 0.5)
    im = part(ln_pref + ln_c0 + 0.5 * s * math.log(2.0) + math.lgamma(0.5 * s + 1.0),
              0.5 - 0.5 * s, 1.5)
    return float(np.logaddexp(re, im)) - (2 * eta + 2) * math.log(X_OMEGA)


def _tail_remainder(ln_c: float, alpha: float, q: float):
    """Remainder int_K^inf C^alpha k^-q dk of an integrand with tail C^alpha k^-q."""
    def rest(kk):
        if ln_c == -math.inf:
            return 0.0
        return math.exp(alpha * ln_c + (1.0 - q) * math.log(kk)) / (q - 1.0)
    return rest


def _k_integral(f, orb: Orbital, quad: QuadratureSpec, tail_power: float,
                tail_remainder=None) -> float:
    """Integral over the whole k axis of an even integrand built from gamma.

    ``tail_power`` is the algebraic decay exponent of ``f``; the tail is
    integrated numerically to a far cut-off and ``tail_remainder(K)``
    supplies the analytic integral beyond it.
    """
    scale = _k_scale(orb)
    span = quad.tail_cutoff_sigma * scale
    body = integrate_interval(f, 0.0, span, quad)
    far = span * _TAIL_STRETCH
    tail = _power_tail_segment(f, span, far, tail_power, quad)
    rest = tail_remainder(far) if tail_remainder is not None else 0.0
    return 2.0 * float(body.value + tail + rest)


def _power_tail_segment(f, start: float, stop: float, q: float, quad: QuadratureSpec) -> float:
    """Integral of f over [start, stop] for f ~ k^-q, flattened by k = start u^(-1/(q-1))."""
    s = 1.0 / (q - 1.0)
    u_stop = (start / stop) ** (1.0 / s)

    def g(u):
        k = start * u ** (-s)
        return f(k) * start * s * u ** (-s - 1.0)

    return integrate_interval(g, u_stop, 1.0, quad).value


def _gamma_k(orb: Orbital, k: np.ndarray) -> np.ndarray:
    re, im = _waveform(orb)(k)
    return re * re + im * im


# ---------------------------------------------------------------------------
# moments and deviations
# ---------------------------------------------------------------------------

def mean_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """<x>/x_2omega by quadrature."""
    return _x_integral(lambda x: x * rho(orb, x), orb, quad) / X_2OMEGA


def mean_x_closed(orb: Orbital) -> float:
    """<x>/x_2omega from a terminating 3F2 sum.

    Expanding L_n^(eta) in L_m^(eta+1/2) and using their orthogonality gives
    <x>_n = x_omega Gamma(n+eta+3/2)/Gamma(n+eta+1) 3F2(-n, -1/2, -1/2; 1, -n-eta-1/2; 1).
    The -n parameter stops the series after n + 1 terms; the lower parameter
    -n-eta-1/2 never reaches zero within them because eta >= 1/2.
    """
    eta, n = orb.eta, orb.n
    total = 0.0
    term = 1.0
    for j in range(n + 1):
        total += term
        term *= (j - n) * (j - 0.5) ** 2 / ((j + 1.0) ** 2 * (j - n - eta - 0.5))
    ratio = math.exp(sf.ln_gamma(n + eta + 1.5).value - sf.ln_gamma(n + eta + 1.0).value)
    return math.sqrt(2.0) * ratio * total


def mean_x2_closed(orb: Orbital) -> float:
    """<x^2>/x_2omega^2 = 2 (2n + eta + 1)."""
    return 2.0 * (2 * orb.n + orb.eta + 1.0)


def mean_x2(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    return _x_integral(lambda x: x * x * rho(orb, x), orb, quad) / X_2OMEGA**2


def mean_inv_x2_closed(orb: Orbital) -> float:
    """x_2omega^2 <1/x^2> = 1/(2 eta), the same for every orbital."""
    return 1.0 / (2.0 * orb.eta)


def mean_inv_x2(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    def f(x):
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = rho(orb, x[pos]) / (x[pos] * x[pos])
        return out
    return _x_integral(f, orb, quad) * X_2OMEGA**2


def variance_x_from_moments(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """sigma_x^2 / x_2omega^2 as <x^2> (closed form) minus the squared quadrature mean."""
    m = mean_x(orb, quad)
    return mean_x2_closed(orb) - m * m


def variance_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """sigma_x^2 / x_2omega^2 as the centred quadrature int (x - <x>)^2 rho dx.

    At large a, <x^2> and <x>^2 both grow like sqrt(a) while their
    difference stays near 1/2, so the moment difference loses digits.
    """
    m = mean_x(orb, quad) * X_2OMEGA
    return _x_integral(lambda x: (x - m) ** 2 * rho(orb, x), orb, quad) / X_2OMEGA**2


def variance_x_ground_closed(model: PhoModel) -> float:
    eta = model.eta
    r = math.exp(math.lgamma(eta + 1.5) - math.lgamma(eta + 1.0))
    return 2.0 * (eta + 1.0 - r * r)


def variance_k(orb: Orbital) -> float:
    """sigma_k^2 x_2omega^2 = (2n + 1 + 1/(2 sqrt(1+4a)))/2, valid for every n."""
    return 0.5 * (2 * orb.n + 1.0 + 1.0 / (2.0 * math.sqrt(1.0 + 4.0 * orb.a)))


def variance_k_numeric(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    q = 2 * orb.eta + 1.0
    # k^2 gamma ~ C k^-(2 eta + 1)
    rest = _tail_remainder(_ln_tail_amplitude(orb), 1.0, q)
    val = _k_integral(lambda k: k * k * _gamma_k(orb, k), orb, quad, q, rest)
    return val * X_2OMEGA**2


def sigma_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    return math.sqrt(variance_x(orb, quad))


def sigma_k(orb: Orbital) -> float:
    return math.sqrt(variance_k(orb))


def heisenberg_product(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    return sigma_x(orb, quad) * sigma_k(orb)


def heisenberg_ground_large_a(model: PhoModel) -> float:
    return 0.5 * (1.0 + 1.0 / (16.0 * math.sqrt(model.a)))


# ---------------------------------------------------------------------------
# Shannon entropies and non-Gaussianities
# ---------------------------------------------------------------------------

def shannon_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """S_x - ln x_2omega."""
    s = -_x_integral(lambda x: log_safe(rho(orb, x)), orb, quad)
    return s - LN_X2


def shannon_x_ground_closed(model: PhoModel) -> float:
    eta = model.eta
    return (0.5 * math.log(2.0) + sf.ln_gamma(eta + 1.0).value - math.log(2.0)
            - (eta + 0.5) * sf.digamma(eta).value + eta - 1.0 / (2.0 * eta))


def shannon_k(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """S_k + ln x_2omega."""
    q = 2 * orb.eta + 3.0
    s = -_k_integral(lambda k: log_safe(_gamma_k(orb, k)), orb, quad, q)
    return s + LN_X2


def shannon_sum(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    return shannon_x(orb, quad) + shannon_k(orb, quad)


def gaussian_entropy_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Entropy of the Gaussian with the same variance (x_2omega units)."""
    return 0.5 * (1.0 + math.log(2.0 * math.pi)) + 0.5 * math.log(variance_x(orb, quad))


def gaussian_entropy_k(orb: Orbital) -> float:
    return 0.5 * (1.0 + math.log(2.0 * math.pi)) + 0.5 * math.log(variance_k(orb))


def _require_ground(orb: Orbital, what: str) -> None:
    if orb.n != 0:
        raise DomainError(f"{what} is defined for the ground orbital only (n = 0)")


def nongaussianity_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    _require_ground(orb, "position non-Gaussianity")
    return gaussian_entropy_x(orb, quad) - shannon_x(orb, quad)


def nongaussianity_x_closed(model: PhoModel) -> float:
    """Ground-state closed form; the Gamma-ratio difference loses digits beyond a ~ 1e6."""
    return (0.5 * (1.0 + math.log(2.0 * math.pi))
            + 0.5 * math.log(variance_x_ground_closed(model)) - shannon_x_ground_closed(model))


def nongaussianity_x_large_a(model: PhoModel) -> float:
    a = model.a
    return 1.0 / (48.0 * math.sqrt(a)) - 17.0 / (768.0 * a)


def nongaussianity_k(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    _require_ground(orb, "momentum non-Gaussianity")
    return gaussian_entropy_k(orb) - shannon_k(orb, quad)


def h_function(x: float) -> float:
    """h(x) = (x+1/2) ln(x+1/2) - (x-1/2) ln(x-1/2), defined for x >= 1/2."""
    if x < 0.5:
        raise DomainError(f"h(x) requires x >= 1/2, got {x}")
    lo = (x - 0.5) * math.log(x - 0.5) if x > 0.5 else 0.0
    return (x + 0.5) * math.log(x + 0.5) - lo


def covariance_offdiagonal(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """(1/2)<xk + kx> - <x><k> by quadrature; zero for real waveforms.

    <xk + kx> = -i (2 int x psi psi' dx + 1) and <k> = 0, so the symmetrised
    correlator reduces to the real part, and the magnitude of the bracket
    is returned as a check on the integration.
    """
    val = _x_integral(lambda x: x * psi(orb, x) * psi_derivative(orb, x), orb, quad)
    return 0.5 * (2.0 * val + 1.0)


def nongaussianity_q(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """h(sqrt(det sigma)) with sigma11 = sigma_x^2/x2^2, sigma22 = x2^2 sigma_k^2."""
    _require_ground(orb, "quantum non-Gaussianity")
    prod = heisenberg_product(orb, quad)
    if prod < 0.5:
        raise DomainError(f"Heisenberg product {prod} below 1/2")
    return h_function(prod)


def nongaussianity_q_large_a(model: PhoModel) -> float:
    a = model.a
    return (0.5 * math.log(a) + 5.0 * math.log(2.0) + 1.0) / (32.0 * math.sqrt(a))


# ---------------------------------------------------------------------------
# Fisher informations
# ---------------------------------------------------------------------------

def fisher_x(orb: Orbital) -> float:
    """x_2omega^2 I_x = 2 (2n + 1 + 1/(4 eta))."""
    return 2.0 * (2 * orb.n + 1.0 + 1.0 / (4.0 * orb.eta))


def fisher_x_numeric(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """4 int psi'^2 dx (= int rho'^2/rho without dividing by rho)."""
    val = 4.0 * _x_integral(lambda x: psi_derivative(orb, x) ** 2, orb, quad)
    return val * X_2OMEGA**2


def fisher_k(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """x_2omega^-2 I_k with gamma' from the analytic waveform derivative."""
    wf = _waveform(orb)

    def f(k):
        re, im, dre, dim = wf.with_derivative(k)
        g = re * re + im * im
        dg = 2.0 * (re * dre + im * dim)
        out = np.zeros_like(k)
        ok = g > UNDERFLOW_FLOOR
        out[ok] = dg[ok] ** 2 / g[ok]
        return out

    q = 2 * orb.eta + 5.0
    return _k_integral(f, orb, quad, q) / X_2OMEGA**2


# ---------------------------------------------------------------------------
# density-power kernel: Onicescu, Renyi, Tsallis
# ---------------------------------------------------------------------------

def power_integral_x(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int rho^alpha dx in x_omega units."""
    if not alpha > 0:
        raise DomainError(f"order must be positive, got {alpha}")

    def f(x):
        r = rho(orb, x)
        out = np.zeros_like(r)
        ok = r > UNDERFLOW_FLOOR
        out[ok] = np.exp(alpha * np.log(r[ok]))
        return out

    return _x_integral(f, orb, quad)


def alpha_threshold(model: PhoModel) -> float:
    """Lowest order for which momentum Renyi/Tsallis integrals converge."""
    return 1.0 / (3.0 + math.sqrt(1.0 + 4.0 * model.a))


def alpha_threshold_small_a(model: PhoModel) -> float:
    """Taylor series of the threshold at a = 0; the linear coefficient is -1/8."""
    a = model.a
    return 0.25 - a / 8.0 + 3.0 / 16.0 * a * a


def alpha_threshold_large_a(model: PhoModel) -> float:
    a = model.a
    return 1.0 / (2.0 * math.sqrt(a)) - 3.0 / (4.0 * a)


def conjugate_order(alpha: float) -> float:
    """beta with 1/alpha + 1/beta = 2; infinite at alpha = 1/2."""
    if not alpha > 0.5:
        if alpha == 0.5:
            return math.inf
        raise DomainError(f"conjugate order needs alpha >= 1/2, got {alpha}")
    if math.isinf(alpha):
        return 0.5
    return alpha / (2.0 * alpha - 1.0)


def power_integral_k(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """int gamma^alpha dk in x_omega units; needs alpha above the threshold."""
    th = alpha_threshold(orb.model)
    if not alpha > th:
        raise BelowThresholdError(
            f"momentum integral of gamma^{alpha:g} diverges: threshold is {th:.6g} at a = {orb.a:g}"
        )
    q = (2 * orb.eta + 3.0) * alpha

    def f(k):
        g = _gamma_k(orb, k)
        out = np.zeros_like(g)
        ok = g > UNDERFLOW_FLOOR
        out[ok] = np.exp(alpha * np.log(g[ok]))
        return out

    return _k_integral(f, orb, quad, q, _tail_remainder(_ln_tail_amplitude(orb), alpha, q))


def _golden_max(f, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _grid_max(f, lo: float, hi: float, points: int = 801) -> tuple[float, float]:
    """Coarse grid scan followed by golden-section refinement."""
    xs = np.linspace(lo, hi, points)
    vals = f(xs)
    i = int(np.argmax(vals))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, points - 1)]
    x, v = _golden_max(lambda t: float(f(np.array([t]))[0]), a, b)
    if vals[i] > v:
        return float(xs[i]), float(vals[i])
    return x, v


def density_max_x(orb: Orbital) -> float:
    center, scale = _x_window(orb)
    lo = max(0.0, center - 3 * scale)
    return _grid_max(lambda x: rho(orb, x), lo, center + 3 * scale)[1]


def density_max_k(orb: Orbital) -> float:
    scale = _k_scale(orb)
    return _grid_max(lambda k: _gamma_k(orb, k), 0.0, 6.0 * scale)[1]


def onicescu_x(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """x_2omega O_x."""
    return power_integral_x(orb, 2.0, quad) * X_2OMEGA


def onicescu_x_ground_closed(model: PhoModel) -> float:
    eta = model.eta
    return math.exp(sf.ln_gamma(2 * eta + 1.5).value - (2 * eta + 1.0) * math.log(2.0)
                    - 2.0 * sf.ln_gamma(eta + 1.0).value)


def onicescu_k(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """O_k / x_2omega."""
    return power_integral_k(orb, 2.0, quad) / X_2OMEGA


def _renyi_from_power(log_integral: float, alpha: float) -> float:
    return log_integral / (1.0 - alpha)


def renyi_x(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC,
            units: str = "x2omega") -> float:
    """R_x(alpha) - ln L with L = x_2omega (default) or x_omega."""
    lu = math.log(_unit(units))
    if alpha == 1.0:
        return shannon_x(orb, quad) + LN_X2 - lu
    if math.isinf(alpha):
        return -math.log(density_max_x(orb)) - lu
    return _renyi_from_power(math.log(power_integral_x(orb, alpha, quad)), alpha) - lu


def renyi_k(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC,
            units: str = "x2omega") -> float:
    """R_k(alpha) + ln L."""
    lu = math.log(_unit(units))
    if math.isinf(alpha):
        return -math.log(density_max_k(orb)) + lu
    if alpha == 1.0:
        return shannon_k(orb, quad) - LN_X2 + lu
    return _renyi_from_power(math.log(power_integral_k(orb, alpha, quad)), alpha) + lu


def renyi_x_ground_closed(model: PhoModel, alpha: float, units: str = "xomega") -> float:
    """Closed-form ground-state position Renyi entropy minus ln L."""
    eta = model.eta
    lu = math.log(_unit(units))
    if alpha == 1.0:
        return shannon_x_ground_closed(model) + LN_X2 - lu
    if math.isinf(alpha):
        return renyi_x_ground_infinite(model) + LN_XW - lu
    b = alpha * (eta + 0.5) + 0.5
    inner = sf.ln_gamma(b).value - alpha * sf.ln_gamma(eta + 1.0).value - b * math.log(alpha)
    return -math.log(2.0) + inner / (1.0 - alpha) + LN_XW - lu


def renyi_x_ground_infinite(model: PhoModel) -> float:
    """R_x0(inf) - ln x_omega from the density maximum at x^2 = eta + 1/2."""
    eta = model.eta
    return -math.log(2.0) + eta + 0.5 - (eta + 0.5) * math.log(eta + 0.5) + sf.ln_gamma(eta + 1.0).value


def renyi_x_ground_slope_at_one(model: PhoModel) -> float:
    """dR_x0/dalpha at alpha = 1, i.e. -Var(ln rho_0)/2.

    With t = x^2 Gamma(eta+1)-distributed this is
    1/2 + 1/(2 eta) + 1/(8 eta^2) + eta/2 - (eta+1/2)^2 psi'(eta)/2.
    """
    eta = model.eta
    return 0.5 + 0.5 / eta + 0.125 / eta**2 + 0.5 * eta - 0.5 * (eta + 0.5) ** 2 * sf.trigamma(eta).value


def tsallis_from_power(integral: float, alpha: float) -> float:
    return (1.0 - integral) / (alpha - 1.0)


def tsallis_from_renyi(r: float, alpha: float) -> float:
    """T = [1 - e^{(1-alpha) R}]/(alpha - 1)."""
    return -math.expm1((1.0 - alpha) * r) / (alpha - 1.0)


def renyi_from_tsallis(t: float, alpha: float) -> float:
    """R = ln[1 + (1-alpha) T]/(1 - alpha)."""
    return math.log1p((1.0 - alpha) * t) / (1.0 - alpha)


def tsallis_x(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC,
              units: str = "x2omega") -> float:
    """Tsallis entropy of the position density measured in units L."""
    if alpha == 1.0:
        return renyi_x(orb, 1.0, quad, units)
    lu = _unit(units)
    return tsallis_from_power(power_integral_x(orb, alpha, quad) * lu ** (alpha - 1.0), alpha)


def tsallis_k(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC,
              units: str = "x2omega") -> float:
    if alpha == 1.0:
        return renyi_k(orb, 1.0, quad, units)
    lu = _unit(units)
    return tsallis_from_power(power_integral_k(orb, alpha, quad) * lu ** (1.0 - alpha), alpha)


@dataclass(frozen=True)
class RenyiQuery:
    """An entropy order with its Sobolev conjugate and validity flags."""

    alpha: float
    beta: float
    threshold: float
    position_ok: bool
    momentum_ok: bool
    conjugate_momentum_ok: bool


def renyi_query(model: PhoModel, alpha: float) -> RenyiQuery:
    th = alpha_threshold(model)
    beta = conjugate_order(alpha) if alpha >= 0.5 else math.nan
    return RenyiQuery(alpha, beta, th, alpha > 0, alpha > th,
                      (not math.isnan(beta)) and beta > th)


def tsallis_sides(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """Dimensionless (x_2omega units) left and right sides of the Tsallis relation."""
    beta = conjugate_order(alpha)
    ix = power_integral_x(orb, alpha, quad) * X_2OMEGA ** (alpha - 1.0)
    lhs = (alpha / math.pi) ** (1.0 / (4.0 * alpha)) * ix ** (1.0 / (2.0 * alpha))
    if math.isinf(beta):
        rhs = math.sqrt(density_max_k(orb) / X_2OMEGA)
    else:
        ik = power_integral_k(orb, beta, quad) * X_2OMEGA ** (1.0 - beta)
        rhs = (beta / math.pi) ** (1.0 / (4.0 * beta)) * ik ** (1.0 / (2.0 * beta))
    return lhs, rhs


def renyi_bound(alpha: float) -> float:
    """-(1/2)[ln(alpha/pi)/(1-alpha) + ln(beta/pi)/(1-beta)]."""
    beta = conjugate_order(alpha)

    def piece(o):
        if math.isinf(o):
            return 0.0
        if o == 1.0:
            return -1.0 - math.log(math.pi)  # limit of ln(o/pi)/(1-o) is -(1 + ln pi)
        return math.log(o / math.pi) / (1.0 - o)

    return -0.5 * (piece(alpha) + piece(beta))


def renyi_sum(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC) -> float:
    """R_x(alpha) + R_k(beta) (the ln L terms cancel)."""
    beta = conjugate_order(alpha)
    return renyi_x(orb, alpha, quad) + renyi_k(orb, beta, quad)


def uncertainty_gaps(orb: Orbital, alpha: float, quad: QuadratureSpec = DEFAULT_SPEC) -> tuple[float, float]:
    """(Delta_R, Delta_T): left minus right side of the Renyi and Tsallis relations.

    Delta_T is returned for any alpha >= 1/2; the Tsallis relation itself only
    claims it is non-negative on [1/2, 1].
    """
    if alpha < 0.5:
        raise DomainError(f"uncertainty relations need alpha >= 1/2, got {alpha}")
    delta_r = renyi_sum(orb, alpha, quad) - renyi_bound(alpha)
    lhs, rhs = tsallis_sides(orb, alpha, quad)
    return delta_r, lhs - rhs


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasureReport:
    a: float
    n: int
    sigma_x: float
    sigma_k: float
    heisenberg_product: float
    shannon_x: float
    shannon_k: float
    shannon_sum: float
    fisher_x: float
    fisher_k: float
    fisher_product: float
    onicescu_x: float
    onicescu_k: float
    onicescu_product: float
    ng_x: float
    ng_k: float
    ng_q: float

    def as_dict(self) -> dict:
        return asdict(self)


REPORT_FIELDS = tuple(MeasureReport.__dataclass_fields__)


def measure_report(orb: Orbital, quad: QuadratureSpec = DEFAULT_SPEC) -> MeasureReport:
    """All position/momentum measures of one orbital.

    Non-Gaussianities are defined for the ground orbital only and are NaN
    for n > 0.
    """
    sx = sigma_x(orb, quad)
    sk = sigma_k(orb)
    s_x = shannon_x(orb, quad)
    s_k = shannon_k(orb, quad)
    i_x = fisher_x(orb)
    i_k = fisher_k(orb, quad)
    o_x = onicescu_x(orb, quad)
    o_k = onicescu_k(orb, quad)
    if orb.n == 0:
        ng_x = 0.5 * (1.0 + math.log(2.0 * math.pi)) + math.log(sx) - s_x
        ng_k = 0.5 * (1.0 + math.log(2.0 * math.pi)) + math.log(sk) - s_k
        ng_q = h_function(sx * sk)
    else:
        ng_x = ng_k = ng_q = math.nan
    return MeasureReport(
        a=orb.a, n=orb.n,
        sigma_x=sx, sigma_k=sk, heisenberg_product=sx * sk,
        shannon_x=s_x, shannon_k=s_k, shannon_sum=s_x + s_k,
        fisher_x=i_x, fisher_k=i_k, fisher_product=i_x * i_k,
        onicescu_x=o_x, onicescu_k=o_k, onicescu_product=o_x * o_k,
        ng_x=ng_x, ng_k=ng_k, ng_q=ng_q,
    )


# ---------------------------------------------------------------------------
# asymptotic expansions of ground-state quantities
# ---------------------------------------------------------------------------

def mean_x_ground_large_a(model: PhoModel) -> float:
    """<x>_0 / x_2omega ~ sqrt(2) a^(1/4) (1 + 3/(8 sqrt(a)))."""
    return math.sqrt(2.0) * model.a**0.25 * (1.0 + 3.0 / (8.0 * math.sqrt(model.a)))


def renyi_x_ground_small_a(model: PhoModel, alpha: float) -> float:
    """R_x0 - ln x_omega to first order in a."""
    a = model.a
    lead = sf.ln_gamma(alpha + 0.5).value - alpha * math.log(0.5 * math.sqrt(math.pi)) \
        - (alpha + 0.5) * math.log(alpha)
    first = sf.digamma(alpha + 0.5).value - 2.0 + sf.EULER_GAMMA + math.log(4.0 / alpha)
    return -math.log(2.0) + lead / (1.0 - alpha) + alpha / (1.0 - alpha) * first * a


def renyi_x_ground_large_a(model: PhoModel, alpha: float) -> float:
    """R_x0 - ln x_2omega approaching the 2 omega oscillator value."""
    a = model.a
    dfo = 0.5 * math.log(math.pi) - 0.5 * math.log(alpha) / (1.0 - alpha)
    return dfo - (alpha + 1.0) / (24.0 * alpha) * (a**-0.5 - 0.5 / a)
