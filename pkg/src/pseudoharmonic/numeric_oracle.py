"""Brute-force reference computations.

A three-point finite-difference eigensolver on a walled grid and a direct
quadrature Fourier transform of its eigenvectors.  Nothing here touches the
closed forms of the analytic solver, so agreement between the two is a
genuine check.  Both grids in a Richardson pair share their end points and
the fine grid interleaves the coarse one.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .classical_mechanics import PhoModel
from .errors import DomainError, GridTooCoarseError
from .info_measures import REPORT_FIELDS, MeasureReport, h_function

MAX_LEVEL = 10
DEFAULT_POINTS = 4095
# wall position relative to the potential minimum when a > 0; psi ~ x^(eta+1/2)
# there, and at 1e-3 the cut-off mass already shifts E by ~4e-7 at a = 1
WALL_FRACTION = 1e-4
# V(x_min) must exceed the largest sought level by this factor
WALL_MARGIN = 1e3
# relative size of the O(h^2) correction beyond which Richardson is not trusted
COARSE_LIMIT = 1e-3


class AliasingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with hard walls at x_min and x_max and ``points`` interior nodes."""

    x_min: float
    x_max: float
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if not (self.x_min >= 0 and self.x_max > self.x_min):
            raise DomainError(f"need 0 <= x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.points < 16:
            raise DomainError(f"grid needs at least 16 interior points, got {self.points}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.points + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.points + 1)

    def refined(self) -> "GridSpec":
        return GridSpec(self.x_min, self.x_max, 2 * self.points + 1)


def _potential(model: PhoModel, x: np.ndarray) -> np.ndarray:
    """Potential energy in units of hbar*omega (x in oscillator lengths)."""
    ra = math.sqrt(model.a)
    return 0.5 * (x - ra / x) ** 2


def default_grid(model: PhoModel, n_max: int = 0, points: int = DEFAULT_POINTS) -> GridSpec:
    """A grid that contains the first ``n_max + 1`` levels with a wide margin."""
    xz = model.a**0.25
    x_min = WALL_FRACTION * xz
    # classically allowed region of the DFO-like well for level n_max, plus 10 decay lengths
    reach = math.sqrt(2.0 * (2 * n_max + 1.5 + model.a**0.5)) + 10.0
    return GridSpec(x_min, xz + reach if xz > 0 else reach, points)


def _check_wall(model: PhoModel, grid: GridSpec, e_top: float) -> None:
    if model.a == 0:
        if grid.x_min != 0:
            raise DomainError("the a = 0 oscillator has its wall at x = 0")
        return
    if grid.x_min <= 0:
        raise DomainError("the inverse-square term needs x_min > 0")
    if _potential(model, np.array([grid.x_min]))[0] < WALL_MARGIN * e_top:
        raise DomainError(
            f"wall at x_min = {grid.x_min} is too soft: V(x_min) < {WALL_MARGIN:g} * E_max"
        )


@dataclass(frozen=True)
class FdLevel:
    """One eigenpair on one grid."""

    energy: float
    grid: GridSpec
    psi: np.ndarray = field(repr=False)


def _solve(model: PhoModel, n_max: int, grid: GridSpec) -> list[FdLevel]:
    x = grid.nodes
    h = grid.h
    diag = 1.0 / (h * h) + _potential(model, x)
    off = np.full(grid.points - 1, -0.5 / (h * h))
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_max),
                                  lapack_driver="stebz")
    out = []
    for e, v in zip(vals, vecs.T):
        # trapezoid norm with zero end values is h * sum
        v = v / math.sqrt(h * np.dot(v, v))
        lead = v[np.argmax(np.abs(v) > 1e-3 * np.abs(v).max())]
        if lead < 0:
            v = -v
        out.append(FdLevel(float(e), grid, v))
    return out


@dataclass(frozen=True)
class FdSolution:
    """Richardson-extrapolated levels from a grid and its refinement."""

    model: PhoModel
    energies: tuple[float, ...]
    corrections: tuple[float, ...]
    coarse: tuple[FdLevel, ...] = field(repr=False)
    fine: tuple[FdLevel, ...] = field(repr=False)


def fd_eigensolve(model: PhoModel, n_max: int, grid: GridSpec | None = None) -> FdSolution:
    """Lowest ``n_max + 1`` levels (units of hbar*omega) with a Richardson step."""
    if not 0 <= n_max <= MAX_LEVEL:
        raise DomainError(f"n_max must be in [0, {MAX_LEVEL}], got {n_max}")
    grid = grid or default_grid(model, n_max)
    coarse = _solve(model, n_max, grid)
    _check_wall(model, grid, coarse[-1].energy)
    fine = _solve(model, n_max, grid.refined())
    energies, corrections = [], []
    for c, f in zip(coarse, fine):
        corr = (f.energy - c.energy) / 3.0
        if abs(corr) > COARSE_LIMIT * abs(f.energy):
            raise GridTooCoarseError(
                f"O(h^2) correction {corr:.3e} too large for E = {f.energy:.6g}; refine the grid"
            )
        energies.append(f.energy + corr)
        corrections.append(corr)
    return FdSolution(model, tuple(energies), tuple(corrections), tuple(coarse), tuple(fine))


def node_count(psi: np.ndarray, rel_floor: float = 1e-6) -> int:
    """Sign changes among samples above ``rel_floor`` of the maximum."""
    big = psi[np.abs(psi) > rel_floor * np.abs(psi).max()]
    return int(np.count_nonzero(np.signbit(big[1:]) != np.signbit(big[:-1])))


# ---------------------------------------------------------------------------
# Fourier transform
# ---------------------------------------------------------------------------

_CHUNK = 256


def _transform(columns: np.ndarray, grid: GridSpec, k: np.ndarray) -> np.ndarray:
    if np.any(np.abs(k) > math.pi / grid.h):
        warnings.warn(f"k beyond pi/h = {math.pi / grid.h:.4g} is aliased", AliasingWarning,
                      stacklevel=3)
    x = grid.nodes
    out = np.empty((k.size, columns.shape[1]), dtype=complex)
    for i in range(0, k.size, _CHUNK):
        kk = k[i:i + _CHUNK]
        out[i:i + _CHUNK] = np.exp(-1j * np.outer(kk, x)) @ columns
    return out


def numeric_fourier(psi: np.ndarray, grid: GridSpec, k, *, derivative: bool = False) -> np.ndarray:
    """Phi(k) = (2 pi)^-1/2 int psi(x) e^{-ikx} dx by the trapezoid rule.

    The walls carry psi = 0, so the rule reduces to h * sum over interior
    nodes.  With ``derivative`` the transform of -i x psi (= dPhi/dk) is
    returned instead.
    """
    k = np.atleast_1d(np.asarray(k, dtype=float))
    f = psi * grid.h / math.sqrt(2.0 * math.pi)
    if derivative:
        f = -1j * grid.nodes * f
    return _transform(f.astype(complex)[:, None], grid, k)[:, 0]


def numeric_fourier_pair(psi: np.ndarray, grid: GridSpec, k) -> tuple[np.ndarray, np.ndarray]:
    """(Phi, dPhi/dk) sharing one exponential matrix."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    f = psi * grid.h / math.sqrt(2.0 * math.pi)
    both = _transform(np.stack([f + 0j, -1j * grid.nodes * f], axis=1), grid, k)
    return both[:, 0], both[:, 1]


def fd_momentum(sol: FdSolution, n: int, k, *, derivative: bool = False) -> np.ndarray:
    """Richardson combination of the transforms on both grids."""
    c, f = sol.coarse[n], sol.fine[n]
    pc = numeric_fourier(c.psi, c.grid, k, derivative=derivative)
    pf = numeric_fourier(f.psi, f.grid, k, derivative=derivative)
    return pf + (pf - pc) / 3.0


def fd_momentum_pair(sol: FdSolution, n: int, k) -> tuple[np.ndarray, np.ndarray]:
    c, f = sol.coarse[n], sol.fine[n]
    pc, dc = numeric_fourier_pair(c.psi, c.grid, k)
    pf, df = numeric_fourier_pair(f.psi, f.grid, k)
    return pf + (pf - pc) / 3.0, df + (df - dc) / 3.0


def parseval_sum(psi: np.ndarray, grid: GridSpec) -> float:
    """sum |Phi|^2 dk over one period [-pi/h, pi/h] on a grid fine enough to be exact.

    |Phi|^2 is a trigonometric polynomial in k h of degree below the node
    count, so the periodic trapezoid rule with more samples than that
    integrates it without error.
    """
    m = 2 * grid.points + 2
    dk = 2.0 * math.pi / grid.h / m
    k = dk * np.arange(m // 2 + 1)
    g = np.abs(numeric_fourier(psi, grid, k)) ** 2
    # even in k: count the interior samples twice
    return float(dk * (g[0] + 2.0 * g[1:-1].sum() + g[-1]))


# ---------------------------------------------------------------------------
# measures from grid densities
# ---------------------------------------------------------------------------

def _position_measures(level: FdLevel) -> dict:
    x, h, psi = level.grid.nodes, level.grid.h, level.psi
    rho = psi * psi
    m1 = h * np.dot(x, rho)
    m2 = h * np.dot(x * x, rho)
    pos = rho > 1e-300
    s = -h * np.sum(rho[pos] * np.log(rho[pos]))
    # forward differences across every cell, walls included: the discrete kinetic energy
    padded = np.concatenate([[0.0], psi, [0.0]])
    k2 = np.sum(np.diff(padded) ** 2) / h
    return {"m1": m1, "var_x": m2 - m1 * m1, "s_x": s, "k2": k2, "o_x": h * np.dot(rho, rho)}


def _tail_fit(k: np.ndarray, g: np.ndarray) -> tuple[float, float]:
    """Local power law g ~ C k^-p from the last two samples."""
    p = -math.log(g[-1] / g[-2]) / math.log(k[-1] / k[-2])
    return math.log(g[-1]) + p * math.log(k[-1]), p


def _momentum_measures(sol: FdSolution, n: int, k_max: float, panels: int) -> dict:
    t, w = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(0.0, k_max, panels + 1)
    half = 0.5 * np.diff(edges)
    k = ((edges[:-1] + edges[1:])[:, None] * 0.5 + half[:, None] * t).ravel()
    wk = (half[:, None] * w).ravel()
    phi, dphi = fd_momentum_pair(sol, n, k)
    g = np.abs(phi) ** 2
    dg = 2.0 * np.real(np.conj(phi) * dphi)
    pos = g > 1e-300
    s = -2.0 * np.sum(wk[pos] * g[pos] * np.log(g[pos]))
    fisher = 2.0 * np.sum(wk[pos] * dg[pos] ** 2 / g[pos])
    onicescu = 2.0 * np.dot(wk, g * g)
    # algebraic tail of -g ln g beyond k_max from a power law fitted to the edge samples
    ke = np.array([0.98 * k_max, k_max])
    ge = np.abs(fd_momentum(sol, n, ke)) ** 2
    ln_c, p = _tail_fit(ke, ge)
    kk = k_max
    c = math.exp(ln_c)
    tail = c * kk ** (1 - p) * ((p * math.log(kk) - ln_c) / (p - 1) + p / (p - 1) ** 2)
    s += 2.0 * tail
    return {"s_k": s, "i_k": fisher, "o_k": onicescu}


def oracle_report(model: PhoModel, n: int, grid: GridSpec | None = None, *,
                  k_max: float = 60.0, k_panels: int = 240) -> MeasureReport:
    """MeasureReport recomputed from finite-difference densities.

    Position functionals are Richardson-combined over the grid pair;
    momentum functionals use the Richardson-combined transform.  <k^2>
    comes from int psi'^2 dx.  Units follow the analytic report (x_2omega).
    """
    sol = fd_eigensolve(model, n, grid)
    pc = _position_measures(sol.coarse[n])
    pf = _position_measures(sol.fine[n])
    p = {key: pf[key] + (pf[key] - pc[key]) / 3.0 for key in pf}
    mk = _momentum_measures(sol, n, k_max, k_panels)
    x2 = 1.0 / math.sqrt(2.0)
    sx = math.sqrt(p["var_x"]) / x2
    sk = math.sqrt(p["k2"]) * x2
    s_x = p["s_x"] - math.log(x2)
    s_k = mk["s_k"] + math.log(x2)
    i_x = 4.0 * p["k2"] * x2 * x2
    i_k = mk["i_k"] / (x2 * x2)
    o_x = p["o_x"] * x2
    o_k = mk["o_k"] / x2
    if n == 0:
        ng_x = 0.5 * (1.0 + math.log(2.0 * math.pi)) + math.log(sx) - s_x
        ng_k = 0.5 * (1.0 + math.log(2.0 * math.pi)) + math.log(sk) - s_k
        ng_q = h_function(sx * sk)
    else:
        ng_x = ng_k = ng_q = math.nan
    return MeasureReport(
        a=model.a, n=n, sigma_x=sx, sigma_k=sk, heisenberg_product=sx * sk,
        shannon_x=s_x, shannon_k=s_k, shannon_sum=s_x + s_k,
        fisher_x=i_x, fisher_k=i_k, fisher_product=i_x * i_k,
        onicescu_x=o_x, onicescu_k=o_k, onicescu_product=o_x * o_k,
        ng_x=ng_x, ng_k=ng_k, ng_q=ng_q,
    )


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

DEFAULT_TOLERANCE = 1e-5


@dataclass(frozen=True)
class FieldDiscrepancy:
    name: str
    analytic: float
    oracle: float
    discrepancy: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.discrepancy <= self.tolerance


@dataclass(frozen=True)
class DiscrepancySummary:
    a: float
    n: int
    fields: tuple[FieldDiscrepancy, ...]

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.fields)

    @property
    def worst(self) -> FieldDiscrepancy | None:
        return max(self.fields, key=lambda f: f.discrepancy / f.tolerance, default=None)

    def failures(self) -> list[FieldDiscrepancy]:
        return [f for f in self.fields if not f.ok]

    def as_dict(self) -> dict:
        return {
            "a": self.a, "n": self.n, "passed": self.passed,
            "fields": [
                {"name": f.name, "analytic": f.analytic, "oracle": f.oracle,
                 "discrepancy": f.discrepancy, "tolerance": f.tolerance, "ok": f.ok}
                for f in self.fields
            ],
        }


def compare_report(analytic: MeasureReport, oracle: MeasureReport,
                   tol_profile: dict[str, float] | float = DEFAULT_TOLERANCE) -> DiscrepancySummary:
    """Per-field |analytic - oracle| / max(|analytic|, 1).

    The unit floor makes the measure absolute for small fields such as the
    non-Gaussianities.  NaN on both sides (undefined fields) counts as a
    match.
    """
    if (analytic.a, analytic.n) != (oracle.a, oracle.n):
        raise DomainError("reports describe different orbitals")
    out = []
    for name in REPORT_FIELDS:
        if name in ("a", "n"):
            continue
        tol = tol_profile if isinstance(tol_profile, float) else tol_profile.get(name, DEFAULT_TOLERANCE)
        va = float(getattr(analytic, name))
        vo = float(getattr(oracle, name))
        if math.isnan(va) and math.isnan(vo):
            d = 0.0
        elif math.isnan(va) or math.isnan(vo):
            d = math.inf
        else:
            d = abs(va - vo) / max(abs(va), 1.0)
        out.append(FieldDiscrepancy(name, va, vo, d, tol))
    return DiscrepancySummary(analytic.a, analytic.n, tuple(out))
