"""Reduction constants, quadrature routes, mollified widths, extrapolation."""

import math

import mpmath
import pytest

from caslab import riesz
from caslab.errors import ConvergenceError, ParameterError


def mp_reduction_constant(m, s):
    with mpmath.workdps(50):
        val = (
            (4 * mpmath.pi) ** (-mpmath.mpf(m) / 2)
            * mpmath.gamma(mpmath.mpf(s) - mpmath.mpf(m) / 2)
            / mpmath.gamma(mpmath.mpf(s))
        )
        return float(val)


def test_reduction_constant_frozen_values():
    assert riesz.reduction_constant(3, 2.5) == pytest.approx(
        1.0 / (6.0 * math.pi**2), rel=1e-14
    )
    assert riesz.reduction_constant(1, 3.0) == pytest.approx(3.0 / 16.0, rel=1e-14)


def test_chain_product_constant():
    prod = riesz.reduction_constant(1, 3.0) * riesz.reduction_constant(3, 2.5)
    assert prod == pytest.approx(1.0 / (32.0 * math.pi**2), rel=1e-14)


def test_reduction_constant_against_mpmath_grid():
    for m in (1, 2, 3, 4):
        s = 0.5 * m + 0.3
        while s < 0.5 * m + 3.0:
            got = riesz.reduction_constant(m, s)
            assert got == pytest.approx(mp_reduction_constant(m, s), rel=5e-15)
            s += 0.7


def test_reduction_constant_divergent_region():
    with pytest.raises(ConvergenceError):
        riesz.reduction_constant(3, 1.5)
    with pytest.raises(ConvergenceError):
        riesz.reduction_constant(2, 0.9)


def test_critical_exponent():
    for m in (1, 2, 3, 4):
        assert riesz.critical_exponent(m) == 1.0 + 0.5 * m
    assert riesz.critical_exponent(3) == 2.5


def test_sphere_area():
    assert riesz.sphere_area(1) == pytest.approx(2.0, rel=1e-15)
    assert riesz.sphere_area(2) == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert riesz.sphere_area(3) == pytest.approx(4.0 * math.pi, rel=1e-15)


def test_momentum_integral_matches_closed_form():
    for m, s in ((1, 3.0), (3, 2.5), (4, 3.0)):
        for lam in (0.5, 2.0):
            closed = riesz.reduction_constant(m, s) * lam ** (0.5 * m - s)
            assert riesz.momentum_integral(m, s, lam) == pytest.approx(closed, rel=1e-8)


def test_momentum_integral_critical_scaling():
    # at the critical exponent the integral is a pure 1/lambda law
    m = 3
    s = riesz.critical_exponent(m)
    vals = [lam * riesz.momentum_integral(m, s, lam) for lam in (0.5, 1.0, 5.0)]
    spread = (max(vals) - min(vals)) / min(vals)
    assert spread < 1e-8


def test_schwinger_route_both_endpoint_branches():
    # s - 1 - m/2 < 0 exercises the weighted endpoint quadrature
    for m, s in ((3, 2.0), (1, 1.2), (3, 4.0), (2, 2.0)):
        closed = riesz.reduction_constant(m, s) * 1.0 ** (0.5 * m - s)
        assert riesz.schwinger_integral(m, s, 1.0) == pytest.approx(closed, rel=1e-9)


def test_momentum_integral_rejects_bad_input():
    with pytest.raises(ConvergenceError):
        riesz.momentum_integral(3, 1.5, 1.0)
    with pytest.raises(ParameterError):
        riesz.momentum_integral(3, 2.5, -1.0)
    with pytest.raises(ParameterError):
        riesz.momentum_integral(0, 2.5, 1.0)


def test_reduction_params_normalization():
    p = riesz.ReductionParams(3, 2.5, 1.0, kappa=2.0)
    assert p.g == pytest.approx(2.0 / (6.0 * math.pi**2), rel=1e-14)
    with pytest.raises(ParameterError):
        riesz.ReductionParams(3, 2.5, 1.0, kappa=1.0, g=0.123)
    q = riesz.ReductionParams(2, 2.0, 1.0)
    assert q.g is None


def test_mollified_zero_width_short_circuit():
    spec = riesz.MollifierSpec(eps=0.0)
    assert riesz.mollified_reduction(3, 2.5, 1.0, spec) == riesz.momentum_integral(
        3, 2.5, 1.0
    )


def test_mollified_error_battery_at_critical_pair():
    """Frozen deficit ladder at (3, 5/2): the width-squared-log law shows up
    as halving ratios well below 4."""
    exact = riesz.momentum_integral(3, 2.5, 1.0)
    frozen = {0.2: 2.572653e-3, 0.1: 9.647226e-4, 0.05: 3.263421e-4}
    errs = {}
    for eps, want in frozen.items():
        val = riesz.mollified_reduction(3, 2.5, 1.0, riesz.MollifierSpec(eps=eps))
        errs[eps] = exact - val
        assert errs[eps] == pytest.approx(want, rel=1e-5)
    assert errs[0.2] / errs[0.1] == pytest.approx(2.6667, abs=1e-3)
    assert errs[0.1] / errs[0.05] == pytest.approx(2.9562, abs=1e-3)


def test_mollified_subcritical_pair_extrapolates_clean():
    # away from the critical exponent the deficit is pure eps^2 + eps^4 and
    # the halving ratio sits near 4
    exact = 3.0 / 16.0
    eps = (0.2, 0.1, 0.05)
    vals = [
        riesz.mollified_reduction(1, 3.0, 1.0, riesz.MollifierSpec(eps=e)) for e in eps
    ]
    errs = [exact - v for v in vals]
    assert abs(errs[0] / errs[1] - 4.0) < 0.5
    assert abs(errs[1] / errs[2] - 4.0) < 0.5
    lim = riesz.richardson_limit(eps, vals, orders=(2.0, 4.0))
    assert abs(lim - exact) < 1e-6


def test_mollified_monotone_in_width():
    vals = [
        riesz.mollified_reduction(3, 2.5, 1.0, riesz.MollifierSpec(eps=e))
        for e in (0.4, 0.2, 0.1, 0.0)
    ]
    assert vals == sorted(vals)


def test_richardson_exact_on_polynomial_data():
    a, b = 0.7, -3.0
    eps = (0.4, 0.2, 0.1)
    vals = [a + b * e * e for e in eps]
    lim = riesz.richardson_limit(eps, vals, orders=(2.0,))
    assert lim == pytest.approx(a, abs=1e-13)


def test_richardson_annihilates_squared_log_term():
    # repeated order-2 sweeps on a halving grid also remove eps^2 log eps
    a, b, c = 1.3, 4.0, -2.0
    eps = (0.2, 0.1, 0.05)
    vals = [a + b * e * e * math.log(1.0 / e) + c * e * e for e in eps]
    lim = riesz.richardson_limit(eps, vals, orders=(2.0, 2.0))
    assert lim == pytest.approx(a, abs=1e-12)


def test_richardson_input_validation():
    with pytest.raises(ParameterError):
        riesz.richardson_limit((0.2, 0.1), (1.0,))
    with pytest.raises(ParameterError):
        riesz.richardson_limit((0.1, 0.2), (1.0, 2.0))
    with pytest.raises(ParameterError):
        riesz.richardson_limit((0.2, 0.1), (1.0, 2.0), orders=(2.0, 2.0))


def test_two_step_chain_triple():
    for lam in (0.5, 1.0, 2.0):
        c1, c3, nested = riesz.two_step_chain(lam)
        assert c1 == pytest.approx(3.0 / 16.0, rel=1e-14)
        assert c3 == pytest.approx(1.0 / (6.0 * math.pi**2), rel=1e-14)
        assert nested == pytest.approx(c1 * c3 / lam, rel=1e-7)
    with pytest.raises(ParameterError):
        riesz.two_step_chain(0.0)
