"""Adaptive Gauss-Kronrod integration for density functionals.

Integrands are vectorised callables ``f(x: ndarray) -> ndarray``.  Panels
are refined in batches so every integrand call sees many nodes at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import QuadratureError

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    GAUSS_WEIGHTS[_i] = _w
    GAUSS_WEIGHTS[14 - _i] = _w
GAUSS_WEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps
UNDERFLOW_FLOOR = 1e-300

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive rules."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    tail_cutoff_sigma: float = 12.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.tail_cutoff_sigma > 0:
            raise ValueError("tail_cutoff_sigma must be positive")

    def tightened(self, factor: float = 0.5) -> "QuadratureSpec":
        return QuadratureSpec(self.rel_tol * factor, self.abs_tol * factor,
                              self.max_subdivisions, self.tail_cutoff_sigma)


DEFAULT_SPEC = QuadratureSpec()


class QuadResult(NamedTuple):
    value: float
    err_est: float


def _eval_panels(f: Integrand, a: np.ndarray, b: np.ndarray):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = x[~np.isfinite(fx)][0]
        raise QuadratureError(f"integrand is not finite at x = {bad!r}")
    k = half * (fx @ KRONROD_WEIGHTS)
    g = half * (fx @ GAUSS_WEIGHTS)
    mean = (k / np.where(half == 0, 1.0, 2 * half))[:, None]
    resasc = half * (np.abs(fx - mean) @ KRONROD_WEIGHTS)
    resabs = half * (np.abs(fx) @ KRONROD_WEIGHTS)
    diff = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(resasc > 0, np.minimum(1.0, (200.0 * diff / resasc) ** 1.5), 0.0)
    err = np.where(resasc > 0, resasc * ratio, diff)
    err = np.maximum(err, 50.0 * _EPS * resabs)
    return k, err


def integrate_interval(f: Integrand, lo: float, hi: float,
                       spec: QuadratureSpec = DEFAULT_SPEC,
                       breakpoints=()) -> QuadResult:
    """Adaptive G7-K15 integral of ``f`` over the finite interval [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise QuadratureError("integrate_interval needs finite limits")
    if hi == lo:
        return QuadResult(0.0, 0.0)
    sign = 1.0
    if hi < lo:
        lo, hi, sign = hi, lo, -1.0
    edges = np.unique(np.clip(np.concatenate([[lo, hi], np.asarray(breakpoints, float)]), lo, hi))
    a, b = edges[:-1], edges[1:]
    k, err = _eval_panels(f, a, b)
    done_val = 0.0
    done_err = 0.0
    splits = 0
    while True:
        total = done_val + k.sum()
        total_err = done_err + err.sum()
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if total_err <= tol:
            return QuadResult(float(sign * total), float(total_err))
        # refine the largest-error panels until the rest fits in half the budget
        order = np.argsort(err)[::-1]
        rest = np.cumsum(err[order][::-1])[::-1]
        n_split = int(np.searchsorted(-rest, -0.5 * tol, side="left"))
        n_split = max(1, n_split)
        pick = order[:n_split]
        keep = order[n_split:]
        width = b[pick] - a[pick]
        tiny = width <= 64.0 * _EPS * np.maximum(np.abs(a[pick]), np.abs(b[pick]))
        if tiny.any():
            done_val += k[pick[tiny]].sum()
            done_err += err[pick[tiny]].sum()
            pick = pick[~tiny]
        splits += len(pick)
        if splits > spec.max_subdivisions:
            raise QuadratureError(
                f"no convergence after {spec.max_subdivisions} subdivisions: "
                f"value {sign * total:.16g}, error {total_err:.3e}, tolerance {tol:.3e}"
            )
        if len(pick) == 0:
            a, b, k, err = a[keep], b[keep], k[keep], err[keep]
            if len(keep) == 0:
                return QuadResult(float(sign * done_val), float(done_err))
            continue
        mid = 0.5 * (a[pick] + b[pick])
        new_a = np.concatenate([a[pick], mid])
        new_b = np.concatenate([mid, b[pick]])
        k_new, err_new = _eval_panels(f, new_a, new_b)
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        k = np.concatenate([k[keep], k_new])
        err = np.concatenate([err[keep], err_new])


def _power_tail(f: Integrand, start: float, q: float, spec: QuadratureSpec) -> QuadResult:
    """Integral of f over (start, inf) for f ~ x^(-q), q > 1.

    The map x = start * u^(-1/(q-1)) turns the leading power law into a
    constant on u in (0, 1].
    """
    if not q > 1:
        raise QuadratureError(f"tail power {q} does not give a convergent integral")
    s = 1.0 / (q - 1.0)

    def g(u):
        x = start * u ** (-s)
        return f(x) * start * s * u ** (-s - 1.0)

    return integrate_interval(g, 0.0, 1.0, spec)


def _gaussian_tail_bound(f: Integrand, x: float, scale: float, spec: QuadratureSpec) -> float:
    v = float(np.abs(np.asarray(f(np.array([x])), dtype=float))[0])
    if not math.isfinite(v):
        raise QuadratureError(f"integrand is not finite at truncation point {x}")
    return v * scale / spec.tail_cutoff_sigma


def integrate_half_line(f: Integrand, spec: QuadratureSpec = DEFAULT_SPEC, *,
                        scale: float = 1.0, center: float = 0.0,
                        tail_power: float | None = None) -> QuadResult:
    """Integral of ``f`` over (0, inf).

    The caller declares where the mass sits: ``center`` and the natural width
    ``scale``.  The integral runs over ``center +- tail_cutoff_sigma*scale``
    (clipped at 0).  A Gaussian tail bound is added to the error estimate; a
    declared algebraic decay ``f ~ x^(-tail_power)`` is integrated instead.
    """
    if not scale > 0:
        raise QuadratureError("scale hint must be positive")
    span = spec.tail_cutoff_sigma * scale
    lo = max(0.0, center - span)
    hi = center + span
    bps = [center] if lo < center < hi else []
    res = integrate_interval(f, lo, hi, spec, breakpoints=bps)
    value, err = res.value, res.err_est
    if lo > 0.0:
        err += _gaussian_tail_bound(f, lo, scale, spec)
    if tail_power is not None:
        tail = _power_tail(f, hi, tail_power, spec)
        value += tail.value
        err += tail.err_est
    else:
        err += _gaussian_tail_bound(f, hi, scale, spec)
    return QuadResult(float(value), float(err))


def integrate_real_line(f: Integrand, spec: QuadratureSpec = DEFAULT_SPEC, *,
                        scale: float = 1.0, symmetry: str | None = None,
                        tail_power: float | None = None) -> QuadResult:
    """Integral of ``f`` over the real line, centred at 0.

    ``symmetry="even"`` integrates one half and doubles it; ``"odd"`` returns
    exactly zero without evaluating ``f``.
    """
    if symmetry == "odd":
        return QuadResult(0.0, 0.0)
    right = integrate_half_line(f, spec, scale=scale, tail_power=tail_power)
    if symmetry == "even":
        return QuadResult(2.0 * right.value, 2.0 * right.err_est)
    if symmetry is not None:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    left = integrate_half_line(lambda x: f(-x), spec, scale=scale, tail_power=tail_power)
    return QuadResult(right.value + left.value, right.err_est + left.err_est)


def integrate_endpoint_singular(f: Integrand, x_lo: float, x_hi: float,
                                spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Integral over [x_lo, x_hi] with inverse-square-root endpoint singularities.

    Substitutes x = x_lo + (x_hi - x_lo) sin^2(theta), which cancels both
    singularities, then integrates the smooth result adaptively.
    """
    width = x_hi - x_lo
    if not width > 0:
        raise QuadratureError("endpoint-singular integral needs x_hi > x_lo")

    def g(theta):
        s = np.sin(theta)
        c = np.cos(theta)
        x = x_lo + width * s * s
        return f(x) * 2.0 * width * s * c

    return integrate_interval(g, 0.0, 0.5 * math.pi, spec)


def gauss_legendre_panels(lo: float, hi: float, panels: int, order: int = 20,
                          graded_start: bool = False):
    """Composite Gauss-Legendre nodes and weights on [lo, hi].

    ``graded_start`` adds geometrically shrinking panels towards ``lo`` for
    integrands with an algebraic branch point there.
    """
    edges = np.linspace(lo, hi, panels + 1)
    if graded_start:
        first = edges[1] - lo
        extra = lo + first * np.logspace(-12, 0, 25)[:-1]
        edges = np.concatenate([[lo], extra, edges[1:]])
    return gauss_legendre_edges(edges, order)


def gauss_legendre_edges(edges, order: int = 20):
    """Gauss-Legendre nodes and weights on the panels delimited by ``edges``."""
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.asarray(edges, dtype=float)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return x, wts


def log_safe(rho: np.ndarray) -> np.ndarray:
    """rho * ln(rho) with the 0 ln 0 = 0 convention below the underflow floor."""
    rho = np.asarray(rho, dtype=float)
    out = np.zeros_like(rho)
    ok = rho > UNDERFLOW_FLOOR
    out[ok] = rho[ok] * np.log(rho[ok])
    return out
