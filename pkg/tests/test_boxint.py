"""Cell overlap energies, the aspect-ratio grid, concavity and positivity."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from caslab import boxint
from caslab.errors import ParameterError


def test_interval_overlap_against_2d_quadrature():
    for L, t in ((1.0, 1.0), (2.0, 0.7), (0.5, 3.0)):
        want, err = integrate.dblquad(
            lambda x, y: math.exp(-t * (x - y) ** 2), 0.0, L, 0.0, L
        )
        assert err < 1e-10
        assert boxint.interval_overlap(L, t) == pytest.approx(want, abs=1e-10)


def test_interval_overlap_small_t_limit():
    assert boxint.interval_overlap(1.5, 1e-12) == pytest.approx(1.5**2, rel=1e-9)


def test_interval_overlap_scaling():
    # I_{cL}(t) = c^2 I_L(c^2 t)
    c, L, t = 2.0, 0.7, 1.3
    left = boxint.interval_overlap(c * L, t)
    right = c * c * boxint.interval_overlap(L, c * c * t)
    assert left == pytest.approx(right, rel=1e-13)


def test_interval_overlap_validation():
    with pytest.raises(ParameterError):
        boxint.interval_overlap(0.0, 1.0)
    with pytest.raises(ParameterError):
        boxint.interval_overlap(1.0, 0.0)


@settings(max_examples=60, deadline=None)
@given(L=st.floats(0.2, 4.0), t=st.floats(0.01, 50.0))
def test_interval_overlap_bounds_property(L, t):
    val = boxint.interval_overlap(L, t)
    assert 0.0 < val <= min(L * L, L * math.sqrt(math.pi / t)) * (1.0 + 1e-12)


def test_cell_energy_fifth_power_scaling():
    unit = boxint.cell_overlap_energy((1.0, 1.0, 1.0))
    doubled = boxint.cell_overlap_energy((2.0, 2.0, 2.0))
    assert doubled == pytest.approx(32.0 * unit, rel=1e-11)


def test_cell_energy_permutation_invariance():
    a = boxint.cell_overlap_energy((2.0, 0.5, 1.0))
    b = boxint.cell_overlap_energy((0.5, 1.0, 2.0))
    assert a == pytest.approx(b, rel=1e-12)


def test_delta_cube_closed_form_value():
    assert boxint.delta_cube_closed_form() == pytest.approx(
        1.8823126443896605, rel=1e-15
    )


def test_delta_t_integral_hits_closed_form():
    got = boxint.delta_alpha(1.0, boxint.DeltaMethod.T_INTEGRAL)
    assert abs(got - boxint.delta_cube_closed_form()) < 1e-12


def test_delta_quadrature_hits_closed_form():
    got = boxint.delta_alpha(1.0, boxint.DeltaMethod.QUADRATURE_3D)
    assert abs(got - boxint.delta_cube_closed_form()) < 1e-9


def test_delta_monte_carlo_consistent():
    est = boxint.delta_alpha(
        1.0, boxint.DeltaMethod.MONTE_CARLO, budget=500_000, seed=77
    )
    closed = boxint.delta_cube_closed_form()
    assert abs(est.mean - closed) <= 5.0 * est.stderr
    repeat = boxint.delta_alpha(
        1.0, boxint.DeltaMethod.MONTE_CARLO, budget=500_000, seed=77
    )
    assert est.mean == repeat.mean


def test_delta_frozen_aspect_values():
    frozen = {
        1.5: 1.803220166012,
        2.0: 1.667051201533,
        3.0: 1.413363226189,
        5.0: 1.074397958728,
    }
    for alpha, want in frozen.items():
        got = boxint.delta_alpha(alpha)
        assert got == pytest.approx(want, abs=5e-12)


def test_delta_reciprocal_symmetry():
    for alpha in (1.25, 1.5, 2.0, 3.0, 5.0):
        assert boxint.delta_alpha(alpha) == pytest.approx(
            boxint.delta_alpha(1.0 / alpha), rel=1e-12
        )


def test_cube_is_the_strict_maximum():
    cube = boxint.delta_alpha(1.0)
    for alpha in (0.25, 0.5, 0.8, 1.25, 2.0, 4.0):
        assert boxint.delta_alpha(alpha) < cube


def test_delta_global_bound():
    # Delta <= 2 pi R^2 with R the circumradius scale sqrt(3) of the cube family
    for alpha in (0.5, 1.0, 2.0, 5.0):
        assert boxint.delta_alpha(alpha) <= 2.0 * math.pi * 3.0


def test_aspect_cell_validation():
    with pytest.raises(ParameterError):
        boxint.AspectCell(0.0)
    assert boxint.AspectCell(2.0).lengths == (2.0, 0.5, 1.0)


def test_aspect_result_bundle():
    res = boxint.aspect_result(1.5, budget=100_000, seed=5)
    assert res.method_spread < 1e-8
    assert res.mc_zscore < 5.0
    payload = json.loads(res.to_json())
    assert payload["alpha"] == 1.5
    assert payload["delta_mc"]["n"] == 100_000


def test_reference_energy_formula():
    delta = 1.88
    got = boxint.reference_energy(2.0, 3, 1.5, delta)
    assert got == pytest.approx(-(3.0**2 / 1.5) * 2.0 * delta, rel=1e-15)
    assert got < 0.0


def test_second_difference_negative_samples():
    for t in (0.01, 1.0, 100.0):
        for u in (-3.0, -0.7, 0.0, 1.3, 3.0):
            assert boxint.second_difference_margin(t, u, 1e-3) < 0.0


def test_concavity_scan_frozen_margin():
    scan = boxint.log_concavity_scan()
    assert scan.max_second_difference == pytest.approx(
        -1.652544767694053e-05, rel=1e-6
    )
    assert scan.min_second_difference < -0.5
    assert scan.violations == ()
    assert scan.product_monotone
    assert scan.symmetry_deviation <= 1e-9
    assert scan.passed


def test_concavity_scan_custom_grid():
    scan = boxint.log_concavity_scan(
        t_grid=np.geomspace(0.1, 10.0, 7), u_grid=np.linspace(-1.0, 1.0, 11)
    )
    assert scan.passed
    with pytest.raises(ParameterError):
        boxint.log_concavity_scan(h_step=0.0)
    with pytest.raises(ParameterError):
        boxint.log_concavity_scan(t_grid=np.array([]))


def test_chain_endpoint_values():
    assert boxint.chain_h(0.0) == 0.0
    assert boxint.chain_h(3.0) == pytest.approx(0.8844995651524932, rel=1e-14)
    assert boxint.chain_a(1.0) == pytest.approx(
        0.5 * math.sqrt(math.pi) * math.erf(1.0), rel=1e-14
    )


def test_chain_small_r_quartic_law():
    r = 0.05
    assert boxint.chain_k(r) / ((5.0 / 6.0) * r**4) == pytest.approx(1.0, abs=1e-3)


def test_chain_k_lower_bounds():
    # quartic lower bound on the small-r side, source-mass bound past 1/sqrt(2)
    for r in (0.1, 0.3, 0.5, 0.7):
        assert boxint.chain_k(r) >= 0.5 * r**4 * (1.0 + r * r)
    for r in (0.71, 1.0, 2.0, 5.0):
        e = math.exp(-r * r)
        assert boxint.chain_k(r) >= 0.5 * (1.0 - e)


def test_positivity_chain_report():
    report = boxint.positivity_chain()
    assert report.passed
    assert report.h_at_zero == 0.0
    assert report.k_min > 0.0
    assert report.h_min > 0.0
    assert report.max_derivative_rel_err <= 1e-6
    assert report.r_grid[0] == pytest.approx(0.05)
    payload = json.loads(report.to_json())
    assert payload["passed"] is True


@settings(max_examples=40, deadline=None)
@given(
    c=st.floats(0.3, 3.0),
    L=st.floats(0.3, 3.0),
    t=st.floats(0.05, 10.0),
)
def test_interval_overlap_scaling_property(c, L, t):
    left = boxint.interval_overlap(c * L, t)
    right = c * c * boxint.interval_overlap(L, c * c * t)
    assert left == pytest.approx(right, rel=1e-11)
