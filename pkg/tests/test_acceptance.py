"""One test per acceptance criterion; each prints a PASS/FAIL line.

Tolerances are 1e-3 absolute on four-digit anchors unless a criterion
names its own.  Run with ``pytest tests/test_acceptance.py -v`` to see the
summary lines in the log.
"""
import math

import numpy as np
import pytest

from pseudoharmonic import info_measures as im
from pseudoharmonic import numeric_oracle as no
from pseudoharmonic.classical_mechanics import (
    ClassicalState,
    PhoModel,
    diameter,
    period_numeric,
    symmetry_ratio,
    turning_points,
)
from pseudoharmonic.quadrature import integrate_half_line, integrate_real_line
from pseudoharmonic.quantum_solver import energy, make_orbital, momentum_waveform, phi, psi, support

ANCHOR_TOL = 1e-3
A_GRID = (0.0, 1.0, 100.0, 1e4)
LN_2PI = math.log(2 * math.pi)


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line per criterion (bypassing capture) and assert."""
    def emit(label, checks):
        failed = [name for name, ok, _ in checks if not ok]
        detail = "; ".join(f"{name}={val}" for name, _, val in checks)
        with capsys.disabled():
            print(f"\n[{'PASS' if not failed else 'FAIL'}] {label}: {detail}")
        assert not failed, f"{label}: failed {failed}"
    return emit


def near(x, ref, tol):
    return abs(x - ref) <= tol


def orb(a, n=0):
    return make_orbital(a, n)


def test_criterion_01_heisenberg(verdict):
    sx, sk = im.sigma_x(orb(0.0)), im.sigma_k(orb(0.0))
    prod = sx * sk
    grid_min = min(im.heisenberg_product(orb(a, n)) for a in (0.0, 0.1, 1.0, 10.0, 100.0, 1e4, 1e6)
                   for n in range(4))
    big = im.heisenberg_product(orb(1e4))
    asym = 0.5 * (1 + 1 / (16 * math.sqrt(1e4)))
    verdict("1 Heisenberg", [
        ("sigma_x0(0)", near(sx, 0.6734, ANCHOR_TOL), f"{sx:.6f}"),
        ("sigma_k0(0)", near(sk, 0.8660, ANCHOR_TOL), f"{sk:.6f}"),
        ("product(0)", near(prod, 0.5832, ANCHOR_TOL), f"{prod:.6f}"),
        ("min product >= 1/2", grid_min >= 0.5, f"{grid_min:.8f}"),
        ("product(1e4) vs asymptote", near(big, asym, 1e-4), f"{big - asym:.2e}"),
    ])


def test_criterion_02_shannon(verdict):
    s0 = im.shannon_x(orb(0.0))
    bound = 1 + math.log(math.pi)
    sums = [im.shannon_sum(orb(a)) for a in (0.0, 1.0, 100.0, 1e4)]
    excess = sums[-1] - bound
    verdict("2 Shannon", [
        ("S_x0(0)", near(s0, 0.9961, ANCHOR_TOL), f"{s0:.6f}"),
        ("bound 1+ln pi", near(bound, 2.1447, ANCHOR_TOL), f"{bound:.6f}"),
        ("sum decreasing", all(y < x for x, y in zip(sums, sums[1:])), [f"{s:.5f}" for s in sums]),
        ("sum(1e4) from above within a^-1/2", 0 < excess <= 1e4**-0.5, f"{excess:.2e}"),
    ])


def test_criterion_03_nongaussianity(verdict):
    ngx, ngk, ngq = (im.nongaussianity_x(orb(0.0)), im.nongaussianity_k(orb(0.0)),
                     im.nongaussianity_q(orb(0.0)))
    diff = lambda a: im.nongaussianity_k(orb(a)) - im.nongaussianity_x(orb(a))
    lo, hi = 0.1, 0.25
    bracketed = diff(lo) > 0 > diff(hi)
    if bracketed:
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if diff(mid) > 0 else (lo, mid)
    crossing = 0.5 * (lo + hi)
    h = 1e-3
    slope = (im.nongaussianity_q(orb(2 * h)) - im.nongaussianity_q(orb(0.0))) / (2 * h)
    verdict("3 non-Gaussianity", [
        ("ng_x(0)", near(ngx, 0.02742, ANCHOR_TOL), f"{ngx:.6f}"),
        ("ng_k(0)", near(ngk, 0.04095, 5e-4), f"{ngk:.6f}"),
        ("crossing in [0.1, 0.25]", bracketed and 0.1 <= crossing <= 0.25, f"{crossing:.4f}"),
        ("ng_q(0)", near(ngq, 0.2934, ANCHOR_TOL), f"{ngq:.6f}"),
        ("ng_q slope at 1e-3", near(slope, -0.4450, 2e-2), f"{slope:.4f}"),
    ])


def test_criterion_04_fisher(verdict):
    ix = im.fisher_x(orb(0.0))
    ixq = im.fisher_x_numeric(orb(0.0))
    ik = im.fisher_k(orb(0.0))
    prod5 = im.fisher_x(orb(5.0)) * im.fisher_k(orb(5.0))
    verdict("4 Fisher", [
        ("I_x0(0) closed", ix == 3.0, f"{ix!r}"),
        ("I_x0(0) quadrature", near(ixq, 3.0, 1e-6), f"{ixq - 3:.2e}"),
        ("I_k0(0)", near(ik, 1.518, 2e-3), f"{ik:.6f}"),
        ("I_x0(5) I_k0(5)", near(prod5, 4.00843, 5e-4), f"{prod5:.6f}"),
    ])


def test_criterion_05_onicescu(verdict):
    ox, ok_ = im.onicescu_x(orb(0.0)), im.onicescu_k(orb(0.0))
    bx, bk = im.onicescu_x(orb(1e6)), im.onicescu_k(orb(1e6))
    lim = 0.3989
    verdict("5 Onicescu", [
        ("O_x0(0)", near(ox, 0.4231, ANCHOR_TOL), f"{ox:.6f}"),
        ("O_k0(0)", near(ok_, 0.3524, ANCHOR_TOL), f"{ok_:.6f}"),
        ("O_x0(1e6)", near(bx, lim, 1e-3), f"{bx:.6f}"),
        ("O_k0(1e6)", near(bk, lim, 1e-3), f"{bk:.6f}"),
    ])


def test_criterion_06_threshold(verdict):
    th0 = im.alpha_threshold(PhoModel(0.0))
    small, large = PhoModel(1e-3), PhoModel(1e4)
    exact_small, exact_large = im.alpha_threshold(small), im.alpha_threshold(large)
    quoted_small = 0.25 - 2 * small.a + 3 / 16 * small.a**2
    guard = []
    for a in (0.0, 1.0, 100.0):
        th = im.alpha_threshold(PhoModel(a))
        converges = math.isfinite(im.renyi_k(orb(a), 1.1 * th))
        try:
            im.renyi_k(orb(a), 0.9 * th)
            raised = False
        except im.BelowThresholdError:
            raised = True
        guard.append(converges and raised)
    verdict("6 threshold", [
        ("alpha_TH(0) = 1/4", th0 == 0.25, f"{th0!r}"),
        # first omitted term is (17/16) a^(-3/2)
        ("large-a series at 1e4", abs(exact_large - im.alpha_threshold_large_a(large)) < 1.2 * 17 / 16 * 1e4**-1.5,
         f"{exact_large - im.alpha_threshold_large_a(large):.2e}"),
        ("small-a series at 1e-3 (linear term -a/8)",
         abs(exact_small - im.alpha_threshold_small_a(small)) < small.a**2,
         f"{exact_small - im.alpha_threshold_small_a(small):.2e}"),
        ("guard 1.1/0.9 x alpha_TH at a in {0,1,100}", all(guard), guard),
    ])
    # recorded, not asserted: the commonly quoted series with a -2a linear term misses by 1.9e-3
    print(f"  note: series with a -2a linear term off by {exact_small - quoted_small:.2e} at a = 1e-3")


def test_criterion_07_renyi_saturation(verdict):
    sat = {a: im.renyi_sum(orb(a), 0.5) for a in A_GRID}
    alphas = np.linspace(2.0, 3.2, 25)
    sums = np.array([im.renyi_sum(orb(0.0), al) for al in alphas])
    i = int(np.argmax(sums))
    # refine the peak with a parabola through the three best samples
    c = np.polyfit(alphas[i - 1:i + 2], sums[i - 1:i + 2], 2)
    loc = -c[1] / (2 * c[0])
    top = np.polyval(c, loc)
    verdict("7 Renyi saturation", [
        ("R_x(1/2)+R_k(inf) = ln 2pi", all(near(v, LN_2PI, 1e-4) for v in sat.values()),
         {a: f"{v - LN_2PI:.1e}" for a, v in sat.items()}),
        ("HHO max value", near(top, 2.280, 5e-3), f"{top:.5f}"),
        ("HHO max location", near(loc, 2.55, 0.1), f"{loc:.3f}"),
    ])


def test_criterion_08_classical(verdict):
    a_grid, e_grid = (0.0, 1.0, 100.0, 1e4), (0.5, 1.0, 2.0, 5.0)
    worst_t = max(abs(period_numeric(ClassicalState(PhoModel(a), e)) - math.pi) / math.pi
                  for a in a_grid for e in e_grid)
    worst_d = 0.0
    for a in a_grid:
        for e in e_grid:
            xm, xp = turning_points(ClassicalState(PhoModel(a), e))
            worst_d = max(worst_d, abs((xp - xm) ** 2 / e - 1.0),
                          abs(diameter(ClassicalState(PhoModel(a), e)) - math.sqrt(e)))
    r0 = [symmetry_ratio(PhoModel(a), 1e-12) for a in (0.5, 1.0, 100.0)]
    fine_a = (0.0, 0.01, 0.1, 1.0, 10.0, 100.0, 1e4)
    up_in_a = all(
        all(y >= x for x, y in zip(rs, rs[1:]))
        for rs in ([symmetry_ratio(PhoModel(a), e) for a in fine_a] for e in e_grid)
    )
    down_in_e = all(
        all(y <= x for x, y in zip(rs, rs[1:]))
        for rs in ([symmetry_ratio(PhoModel(a), e) for e in e_grid] for a in fine_a[1:])
    )
    verdict("8 classical", [
        ("isochrony 1e-8", worst_t <= 1e-8, f"{worst_t:.1e}"),
        ("diameter law", worst_d <= 1e-12, f"{worst_d:.1e}"),
        ("r(a, E->0) -> 1", all(near(r, 1.0, 1e-4) for r in r0), [f"{r:.6f}" for r in r0]),
        ("r up in a, down in E", up_in_a and down_in_e, f"{up_in_a},{down_in_e}"),
    ])


def test_criterion_09_oracle(verdict):
    worst_e, worst_f = 0.0, 0.0
    k = np.linspace(-12, 12, 241)
    for a in A_GRID:
        sol = no.fd_eigensolve(PhoModel(a), 5)
        for n, e in enumerate(sol.energies):
            worst_e = max(worst_e, abs(e - energy(orb(a, n))) / energy(orb(a, n)))
        for n in range(5):
            re, imag = phi(orb(a, n), k)
            worst_f = max(worst_f, float(np.max(np.abs(no.fd_momentum(sol, n, k) - (re + 1j * imag)))))
    verdict("9 oracle equivalence", [
        ("FD energies n<=5", worst_e <= 1e-6, f"{worst_e:.1e}"),
        ("Fourier sup norm n<=4", worst_f <= 1e-6, f"{worst_f:.1e}"),
    ])


def test_criterion_10_orthonormality(verdict):
    worst_x, worst_k, worst_parseval = 0.0, 0.0, 0.0
    for a in A_GRID:
        lo, hi = support(orb(a, 6))
        for i in range(7):
            for j in range(i, 7):
                f = lambda x, i=i, j=j: psi(orb(a, i), x) * psi(orb(a, j), x)
                v = integrate_half_line(f, scale=(hi - lo) / 12, center=0.5 * (lo + hi)).value
                worst_x = max(worst_x, abs(v - (i == j)))
        eta = PhoModel(a).eta
        wfs = [momentum_waveform(orb(a, n)) for n in range(5)]
        for i in range(5):
            for j in range(i, 5):
                def g(kk, i=i, j=j):
                    r1, i1 = wfs[i](kk)
                    r2, i2 = wfs[j](kk)
                    return r1 * r2 + i1 * i2
                v = integrate_real_line(g, scale=3.0, symmetry="even", tail_power=2 * eta + 3).value
                worst_k = max(worst_k, abs(v - (i == j)))
        sol = no.fd_eigensolve(PhoModel(a), 4)
        for level in sol.coarse:
            worst_parseval = max(worst_parseval, abs(no.parseval_sum(level.psi, level.grid) - 1))
    verdict("10 orthonormality/Parseval", [
        ("position n,n'<=6", worst_x <= 1e-8, f"{worst_x:.1e}"),
        ("momentum n,n'<=4", worst_k <= 1e-7, f"{worst_k:.1e}"),
        ("discrete Parseval", worst_parseval <= 1e-7, f"{worst_parseval:.1e}"),
    ])


def test_criterion_11_inequalities(verdict):
    heis = shannon = renyi = tsallis = True
    worst_r = math.inf
    for a in (0.0, 1.0, 100.0):
        for n in range(3):
            o = orb(a, n)
            heis &= im.heisenberg_product(o) >= 0.5
            shannon &= im.shannon_sum(o) >= 1 + math.log(math.pi)
            for alpha in (0.5, 0.7, 1.0, 2.0, 4.0):
                dr, dt = im.uncertainty_gaps(o, alpha)
                worst_r = min(worst_r, dr)
                renyi &= dr >= -1e-10
                if n == 0 and alpha <= 1.0:
                    tsallis &= dt >= -1e-10
    _, violation = im.uncertainty_gaps(orb(0.0), 2.0)
    verdict("11 inequalities", [
        ("Heisenberg", heis, heis),
        ("Shannon", shannon, shannon),
        ("Renyi alpha>=1/2", renyi, f"min gap {worst_r:.1e}"),
        ("Tsallis on [1/2,1]", tsallis, tsallis),
        ("Tsallis violated at alpha=2, a=0", violation < 0, f"{violation:.4f}"),
    ])


def test_criterion_12_limit_web(verdict):
    worst = 0.0
    for a in (0.0, 1.0, 100.0):
        for n in (0, 1, 2):
            o = orb(a, n)
            for space in ("x", "k"):
                s = getattr(im, f"shannon_{space}")(o)
                r1 = getattr(im, f"renyi_{space}")(o, 1.0)
                t1 = getattr(im, f"tsallis_{space}")(o, 1.0)
                onic = getattr(im, f"onicescu_{space}")(o)
                r2 = getattr(im, f"renyi_{space}")(o, 2.0)
                t2 = getattr(im, f"tsallis_{space}")(o, 2.0)
                worst = max(worst, abs(r1 - s), abs(t1 - s), abs(onic - math.exp(-r2)), abs(onic - (1 - t2)))
    verdict("12 limit web", [("R(1)=T(1)=S, O=e^-R(2)=1-T(2)", worst <= 1e-8, f"{worst:.1e}")])


def test_criterion_13_monotonic_sweeps(verdict):
    a_sweep = np.concatenate([[0.0], np.logspace(-2, 4, 13)])
    rep = [im.measure_report(orb(a)) for a in a_sweep]
    col = lambda name: np.array([getattr(r, name) for r in rep])
    inc = lambda v: bool(np.all(np.diff(v) > 0))
    dec = lambda v: bool(np.all(np.diff(v) < 0))
    span = lambda name: f"{col(name)[0]:.4f}->{col(name)[-1]:.4f}"
    verdict("13 monotonic sweeps", [
        ("sigma_x0 increasing", inc(col("sigma_x")), span("sigma_x")),
        ("sigma_k0 decreasing", dec(col("sigma_k")), span("sigma_k")),
        ("ng_x decreasing", dec(col("ng_x")), span("ng_x")),
        ("ng_k decreasing", dec(col("ng_k")), span("ng_k")),
        ("I_x0 decreasing", dec(col("fisher_x")), span("fisher_x")),
        ("I_k0 increasing", inc(col("fisher_k")), span("fisher_k")),
    ])
