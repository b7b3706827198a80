"""Regenerate frozen_oracles.json with mpmath at 30 digits.

    python tests/data/make_frozen_oracles.py

Everything here is built from mpmath primitives only (its own gamma,
Laguerre, 1F1 and quadrature); nothing imports the package under test.
Units: hbar = m = omega = 1, lengths in oscillator lengths x_omega.
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30


def eta(a):
    return mp.sqrt(1 + 4 * mp.mpf(a)) / 2


def psi(a, n, x):
    e = eta(a)
    norm = mp.sqrt(2 * mp.factorial(n) / mp.gamma(n + e + 1))
    return norm * x ** (e + mp.mpf(1) / 2) * mp.exp(-x * x / 2) * mp.laguerre(n, e, x * x)


def phi_direct(a, n, k):
    """(2 pi)^-1/2 int_0^inf psi(x) e^{-ikx} dx by oscillatory quadrature."""
    f_re = lambda x: psi(a, n, x) * mp.cos(k * x)
    f_im = lambda x: -psi(a, n, x) * mp.sin(k * x)
    c = mp.sqrt(mp.sqrt(a)) if a > 0 else 0
    pts = sorted(set([0] + [max(0, c + d) for d in (-4, -2, -1, 0, 1, 2, 4, 8, 12)]))
    re = mp.quad(f_re, pts)
    im = mp.quad(f_im, pts)
    return re / mp.sqrt(2 * mp.pi), im / mp.sqrt(2 * mp.pi)


def phi_ground_1f1(a, k):
    """n = 0 waveform from the half-line Gaussian moment integral in 1F1 form."""
    e = eta(a)
    s = e + mp.mpf(1) / 2
    norm = mp.sqrt(2 / mp.gamma(e + 1))
    z = k * k / 2
    j_re = 2 ** ((s - 1) / 2) * mp.gamma((s + 1) / 2) * mp.hyp1f1((s + 1) / 2, mp.mpf(1) / 2, -z)
    j_im = -k * 2 ** (s / 2) * mp.gamma(s / 2 + 1) * mp.hyp1f1(s / 2 + 1, mp.mpf(3) / 2, -z)
    return norm * j_re / mp.sqrt(2 * mp.pi), norm * j_im / mp.sqrt(2 * mp.pi)


def gamma0(a, k):
    re, im = phi_ground_1f1(a, k)
    return re * re + im * im


def k_integral(f, a, alpha=1):
    """2 int_0^inf f(k) dk for f ~ gamma^alpha.

    Quadrature runs to K = 1e12; beyond it gamma is a pure power law
    C k^-(2 eta + 3) and C is read off gamma(K) itself.
    """
    big = mp.mpf(10) ** 12
    pts = [0, 0.5, 1, 2, 4, 8] + [mp.mpf(2) ** j for j in range(4, 41)] + [big]
    body = mp.quad(f, pts)
    p = 2 * eta(a) + 3
    c = gamma0(a, big) * big**p
    q = alpha * p
    tail = c**alpha * big ** (1 - q) / (q - 1)
    return 2 * (body + tail)


def mean_x(a, n):
    return mp.quad(lambda x: x * psi(a, n, x) ** 2, [0, 2, 5, 10, mp.inf])


def main():
    out = {"phi": [], "mean_x": [], "momentum": []}
    for a, n, k in [(1, 2, 0.3), (1, 2, 1.7), (1, 2, 4.0), (0, 1, 2.5), (100, 0, 1.0), (0.5, 3, 3.3)]:
        re, im = phi_direct(a, n, mp.mpf(k))
        out["phi"].append({"a": a, "n": n, "k": k, "re": mp.nstr(re, 20), "im": mp.nstr(im, 20)})
    for a, n in [(1, 2), (0.5, 3), (0, 4), (25, 1)]:
        out["mean_x"].append({"a": a, "n": n, "value": mp.nstr(mean_x(a, n), 20)})
    for a in (0, 1):
        g = lambda k: gamma0(a, k)
        s_k = -k_integral(lambda k: g(k) * mp.log(g(k)) if g(k) > 0 else 0, a)
        o_k = k_integral(lambda k: g(k) ** 2, a)
        out["momentum"].append({"a": a, "quantity": "shannon", "value": mp.nstr(s_k, 20)})
        out["momentum"].append({"a": a, "quantity": "onicescu", "value": mp.nstr(o_k, 20)})
    for a, al in ((0, 0.3), (1, 0.6)):
        val = k_integral(lambda k: gamma0(a, k) ** al, a, al)
        out["momentum"].append({"a": a, "quantity": f"power_{al}", "value": mp.nstr(val, 20)})
    path = Path(__file__).with_name("frozen_oracles.json")
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
