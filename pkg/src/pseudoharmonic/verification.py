"""Checks run by ``pho verify``: oracle comparisons and invariants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import info_measures as im
from . import numeric_oracle as no
from .classical_mechanics import ClassicalState, PhoModel, period, period_numeric
from .quantum_solver import energy, make_orbital, phi


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class VerifyConfig:
    a_values: tuple[float, ...] = (0.0, 1.0, 100.0)
    energy_a_values: tuple[float, ...] = (0.0, 1.0, 100.0, 1e4)
    n_max: int = 3
    energy_n_max: int = 5
    momentum_n_max: int = 4
    alphas: tuple[float, ...] = (0.5, 0.75, 1.0, 2.0, 3.0)
    tol: float | None = None

    @classmethod
    def quick(cls, tol: float | None = None) -> "VerifyConfig":
        return cls(a_values=(0.0, 100.0), energy_a_values=(0.0, 1.0, 100.0, 1e4), n_max=1,
                   energy_n_max=5, momentum_n_max=2, alphas=(0.5, 1.0, 2.0), tol=tol)


def _tol(cfg: VerifyConfig, default: float) -> float:
    return default if cfg.tol is None else cfg.tol


def check_energies(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for a in cfg.energy_a_values:
        sol = no.fd_eigensolve(PhoModel(a), cfg.energy_n_max)
        worst = max(abs(e / energy(make_orbital(a, n)) - 1.0) for n, e in enumerate(sol.energies))
        out.append(CheckResult(f"fd_energy[a={a:g}]", worst, _tol(cfg, 1e-6),
                               f"n <= {cfg.energy_n_max}, relative"))
    return out


def check_momentum(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    k = np.linspace(-15.0, 15.0, 241)
    for a in cfg.a_values:
        model = PhoModel(a)
        sol = no.fd_eigensolve(model, cfg.momentum_n_max)
        worst = 0.0
        for n in range(cfg.momentum_n_max + 1):
            re, imag = phi(make_orbital(a, n), k)
            worst = max(worst, float(np.max(np.abs(no.fd_momentum(sol, n, k) - (re + 1j * imag)))))
        out.append(CheckResult(f"fourier_sup[a={a:g}]", worst, _tol(cfg, 1e-6),
                               f"n <= {cfg.momentum_n_max}, |k| <= 15"))
        lvl = sol.coarse[0]
        par = abs(no.parseval_sum(lvl.psi, lvl.grid) - 1.0)
        out.append(CheckResult(f"parseval[a={a:g}]", par, _tol(cfg, 1e-7)))
    return out


def check_reports(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for a in cfg.a_values:
        for n in range(cfg.n_max + 1):
            summary = no.compare_report(im.measure_report(make_orbital(a, n)),
                                        no.oracle_report(PhoModel(a), n),
                                        _tol(cfg, no.DEFAULT_TOLERANCE))
            w = summary.worst
            out.append(CheckResult(f"oracle_report[a={a:g},n={n}]", w.discrepancy, w.tolerance,
                                   f"worst field {w.name}"))
    return out


def check_inequalities(cfg: VerifyConfig) -> list[CheckResult]:
    """Heisenberg, Shannon and Renyi relations as non-negative margins (residual = violation)."""
    out = []
    for a in cfg.a_values:
        for n in range(cfg.n_max + 1):
            orb = make_orbital(a, n)
            r = im.measure_report(orb)
            viol = max(0.5 - r.heisenberg_product, 1.0 + math.log(math.pi) - r.shannon_sum, 0.0)
            for al in cfg.alphas:
                d_r, _ = im.uncertainty_gaps(orb, al)
                viol = max(viol, -d_r)
            out.append(CheckResult(f"inequalities[a={a:g},n={n}]", viol, _tol(cfg, 1e-10)))
    return out


def check_limit_web(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for a in cfg.a_values:
        orb = make_orbital(a, 0)
        o = im.onicescu_x(orb)
        res = max(abs(math.exp(-im.renyi_x(orb, 2.0)) - o),
                  abs(1.0 - im.tsallis_x(orb, 2.0) - o),
                  abs(im.renyi_x(orb, 1.0) - im.shannon_x(orb)))
        out.append(CheckResult(f"limit_web[a={a:g}]", res, _tol(cfg, 1e-8)))
    return out


def check_closed_forms(cfg: VerifyConfig) -> list[CheckResult]:
    out = []
    for a in cfg.a_values:
        orb = make_orbital(a, 0)
        m = orb.model
        pairs = [
            (im.mean_x(orb), im.mean_x_closed(orb)),
            (im.shannon_x(orb), im.shannon_x_ground_closed(m)),
            (im.onicescu_x(orb), im.onicescu_x_ground_closed(m)),
            (im.fisher_x_numeric(orb), im.fisher_x(orb)),
            (im.renyi_x(orb, 2.5, units="xomega"), im.renyi_x_ground_closed(m, 2.5)),
            (im.nongaussianity_x(orb), im.nongaussianity_x_closed(m)),
        ]
        res = max(abs(x - y) / max(abs(y), 1.0) for x, y in pairs)
        out.append(CheckResult(f"closed_forms[a={a:g}]", res, _tol(cfg, 1e-8)))
    return out


def check_classical(cfg: VerifyConfig) -> list[CheckResult]:
    worst = 0.0
    for a in cfg.energy_a_values:
        for e in (0.01, 1.0, 10.0, 100.0):
            model = PhoModel(a)
            worst = max(worst, abs(period_numeric(ClassicalState(model, e)) - period(model)))
    return [CheckResult("classical_period", worst, _tol(cfg, 1e-8))]


CHECKS: tuple[Callable[[VerifyConfig], list[CheckResult]], ...] = (
    check_energies, check_momentum, check_reports, check_inequalities,
    check_limit_web, check_closed_forms, check_classical,
)


def run_checks(cfg: VerifyConfig) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        results.extend(check(cfg))
    return results
