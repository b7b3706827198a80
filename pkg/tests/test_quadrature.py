import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudoharmonic.errors import QuadratureError
from pseudoharmonic.quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_endpoint_singular,
    integrate_half_line,
    integrate_interval,
    integrate_real_line,
    log_safe,
)
from pseudoharmonic.quantum_solver import gamma_density, make_orbital, rho

X2 = 1 / math.sqrt(2)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadratureSpec(tail_cutoff_sigma=-1)


def test_half_line_gaussian():
    r = integrate_half_line(lambda x: np.exp(-x * x), scale=1 / math.sqrt(2))
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-13)
    assert abs(r.value - math.sqrt(math.pi) / 2) <= max(r.err_est, 1e-15)
    assert r.err_est <= max(DEFAULT_SPEC.abs_tol, DEFAULT_SPEC.rel_tol * r.value) * 2


def test_half_line_density_normalisation_and_moment():
    orb = make_orbital(1.0, 0)
    norm = integrate_half_line(lambda x: rho(orb, x), scale=X2, center=1.0).value
    assert norm == pytest.approx(1.0, abs=1e-10)
    eta = math.sqrt(5) / 2
    second = integrate_half_line(lambda x: x * x * rho(orb, x), scale=X2, center=1.0).value
    assert second == pytest.approx(2 * (eta + 1) * X2**2, rel=1e-10)


def test_real_line_momentum_density():
    orb = make_orbital(0.0, 0)
    norm = integrate_real_line(lambda k: gamma_density(orb, k), scale=1.0, symmetry="even",
                               tail_power=4.0).value
    assert norm == pytest.approx(1.0, abs=1e-9)
    odd = integrate_real_line(lambda k: k * gamma_density(orb, k), symmetry="odd")
    assert odd.value == 0.0 and odd.err_est == 0.0
    second = integrate_real_line(lambda k: k * k * gamma_density(orb, k), scale=1.0,
                                 symmetry="even", tail_power=2.0).value
    assert second == pytest.approx(3 / (4 * X2**2), rel=1e-8)


def test_real_line_without_symmetry():
    r = integrate_real_line(lambda x: np.exp(-((x - 0.3) ** 2)), scale=1.0)
    assert r.value == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    with pytest.raises(ValueError):
        integrate_real_line(lambda x: x, symmetry="weird")


def test_endpoint_singular_beta():
    r = integrate_endpoint_singular(lambda x: 1 / np.sqrt(x * (1 - x)), 0.0, 1.0)
    assert r.value == pytest.approx(math.pi, rel=1e-13)


def test_nonconvergence_and_nan():
    with pytest.raises(QuadratureError):
        integrate_interval(lambda x: np.sin(1 / x) / x, 1e-9, 1.0, QuadratureSpec(max_subdivisions=5))
    with pytest.raises(QuadratureError):
        integrate_interval(lambda x: np.where(x > 0.5, np.nan, 1.0), 0.0, 1.0)


def test_reversed_and_empty_interval():
    f = lambda x: x * x
    assert integrate_interval(f, 0.0, 0.0).value == 0.0
    assert integrate_interval(f, 2.0, 0.0).value == pytest.approx(-8 / 3, rel=1e-14)


def test_log_safe_handles_nodes():
    v = log_safe(np.array([0.0, 1e-320, 0.5, 1.0]))
    assert np.all(np.isfinite(v))
    assert v[0] == 0.0 and v[1] == 0.0
    assert v[2] == pytest.approx(0.5 * math.log(0.5))


def test_entropy_integrand_with_node_is_finite():
    # rho_1 at a = 0 has an interior node; the 0 ln 0 convention keeps the sum finite
    orb = make_orbital(0.0, 1)
    r = integrate_half_line(lambda x: -log_safe(rho(orb, x)), scale=X2, center=1.8)
    assert math.isfinite(r.value)


@given(st.floats(min_value=0.3, max_value=3.0), st.floats(min_value=-2.0, max_value=2.0))
def test_halving_tolerance_stays_within_error_estimate(width, shift):
    f = lambda x: np.exp(-((x - shift) / width) ** 2) * np.cos(x)
    spec = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-9)
    coarse = integrate_real_line(f, spec, scale=abs(shift) + width)
    fine = integrate_real_line(f, spec.tightened(), scale=abs(shift) + width)
    assert abs(fine.value - coarse.value) <= coarse.err_est + 1e-15
