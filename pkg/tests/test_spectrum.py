"""Box spectra: enumeration against brute force, Weyl count, tail bounds."""

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caslab import spectrum
from caslab.errors import (
    ConstraintError,
    EmptySpectrumError,
    ParameterError,
    ResourceError,
)


def axis_modes_brute(ax, cutoff):
    out = []
    if ax.bc is spectrum.Bc.PERIODIC:
        base = (2.0 * math.pi / ax.length) ** 2
        out.append((0.0, 1))
        for k in range(1, 10_000):
            v = base * k * k
            if v > cutoff:
                break
            out.append((v, 2))
    else:
        base = (math.pi / ax.length) ** 2
        start = 0 if ax.bc is spectrum.Bc.NEUMANN else 1
        for n in range(start, 10_000):
            v = base * n * n
            if v > cutoff:
                break
            out.append((v, 1))
    return out


def brute_enumerate(box, cutoff):
    found = []
    for v1, k1 in axis_modes_brute(box.axes[0], cutoff):
        for v2, k2 in axis_modes_brute(box.axes[1], cutoff):
            if v1 + v2 > cutoff:
                break
            for v3, k3 in axis_modes_brute(box.axes[2], cutoff):
                if v1 + v2 + v3 > cutoff:
                    break
                found.append((v1 + v2 + v3, k1 * k2 * k3))
    found.sort()
    merged = [list(found[0])]
    for v, k in found[1:]:
        if v - merged[-1][0] <= 1e-12 * v:
            merged[-1][1] += k
        else:
            merged.append([v, k])
    return [(v, k) for v, k in merged]


D = spectrum.Bc.DIRICHLET
N = spectrum.Bc.NEUMANN
P = spectrum.Bc.PERIODIC


@pytest.mark.parametrize(
    "axes,cutoff",
    [
        (((1.0, D), (1.0, D), (1.0, D)), 200.0),
        (((1.3, N), (0.7, N), (1.1, D)), 60.0),
        (((2.0, P), (1.1, N), (0.9, D)), 80.0),
        (((0.5, D), (2.5, P), (1.0, D)), 120.0),
    ],
)
def test_enumeration_matches_brute_force(axes, cutoff):
    box = spectrum.BoxSpec(tuple(spectrum.AxisSpec(l, bc) for l, bc in axes))
    stream = spectrum.enumerate_modes(box, cutoff)
    want = brute_enumerate(box, cutoff)
    assert len(stream.values) == len(want)
    for (gv, gk), (wv, wk) in zip(stream.values, want):
        assert gv == pytest.approx(wv, rel=1e-12)
        assert gk == wk


def test_unit_cube_low_modes():
    axis = spectrum.AxisSpec(1.0, D)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 200.0)
    pi2 = math.pi**2
    lead = stream.values[:5]
    want = [(3 * pi2, 1), (6 * pi2, 3), (9 * pi2, 3), (11 * pi2, 3), (12 * pi2, 1)]
    for (gv, gk), (wv, wk) in zip(lead, want):
        assert gv == pytest.approx(wv, rel=1e-13)
        assert gk == wk


def test_sorted_and_merged():
    axis = spectrum.AxisSpec(1.0, D)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 500.0)
    vals = [v for v, _ in stream.values]
    assert vals == sorted(vals)
    for a, b in zip(vals, vals[1:]):
        assert b - a > 1e-12 * b  # no unmerged near-duplicates


def test_weyl_count():
    axis = spectrum.AxisSpec(1.0, D)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 1e4)
    weyl = 1e4**1.5 / (6.0 * math.pi**2)
    assert abs(stream.mode_count / weyl - 1.0) < 0.1


def test_empty_spectrum_raises():
    axis = spectrum.AxisSpec(1.0, D)
    with pytest.raises(EmptySpectrumError):
        spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 2.0 * math.pi**2)


def test_resource_guard_trips_before_walking():
    axis = spectrum.AxisSpec(1.0, D)
    with pytest.raises(ResourceError):
        spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 7e5)


def test_enumerate_alias():
    assert spectrum.enumerate is spectrum.enumerate_modes


def test_box_requires_dirichlet_axis():
    n = spectrum.AxisSpec(1.0, N)
    p = spectrum.AxisSpec(1.0, P)
    with pytest.raises(ParameterError):
        spectrum.BoxSpec((n, n, p))


def test_axis_validation():
    with pytest.raises(ParameterError):
        spectrum.AxisSpec(0.0, D)
    with pytest.raises(ParameterError):
        spectrum.AxisSpec(-1.0, N)


def test_axis_heat_sum_matches_lattice():
    for length, bc in ((1.0, D), (0.7, N), (2.0, P)):
        ax = spectrum.AxisSpec(length, bc)
        for t in (0.1, 0.3, 1.0):
            brute = sum(k * math.exp(-t * v) for v, k in axis_modes_brute(ax, 5e3))
            assert ax.heat_sum(t) == pytest.approx(brute, rel=1e-13)


def test_tail_bound_dominates_actual_tail():
    axis = spectrum.AxisSpec(1.0, D)
    box = spectrum.BoxSpec((axis, axis, axis))
    small = spectrum.enumerate_modes(box, 100.0)
    big = spectrum.enumerate_modes(box, 400.0)
    for t in (0.2, 0.5, 1.0):
        actual = sum(
            k * math.sqrt(v) * math.exp(-t * v)
            for v, k in big.values
            if v > small.cutoff
        )
        assert small.tail_bound(t) >= actual
    with pytest.raises(ParameterError):
        small.tail_bound(0.0)


def test_tail_bound_nonincreasing_in_t():
    axis = spectrum.AxisSpec(1.0, D)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 100.0)
    ts = [0.05, 0.1, 0.3, 0.7, 1.5, 3.0]
    bounds = [stream.tail_bound(t) for t in ts]
    assert bounds == sorted(bounds, reverse=True)


def test_stream_json_shape():
    axis = spectrum.AxisSpec(1.0, D)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), 100.0)
    payload = json.loads(stream.to_json())
    assert payload["cutoff"] == 100.0
    assert payload["modes"][0] == {"value": pytest.approx(3 * math.pi**2), "multiplicity": 1}
    assert sum(m["multiplicity"] for m in payload["modes"]) == stream.mode_count


def test_lateral_gap():
    assert spectrum.lateral_gap(2.0, 0.5) == pytest.approx(math.pi**2 / 4.0, rel=1e-15)
    assert spectrum.lateral_gap(1.0, 1.0) == pytest.approx(math.pi**2, rel=1e-15)
    with pytest.raises(ParameterError):
        spectrum.lateral_gap(0.0, 1.0)


def test_saturation_ratio_closed_form_bit_exact():
    from fractions import Fraction

    grid = [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1),
            Fraction(4, 3), Fraction(3, 2), Fraction(2)]
    for fr in grid:
        alpha = float(fr)
        check = spectrum.saturation_check(alpha * 1.0, 1.0 / alpha, 1.0)
        assert check.ratio == min(alpha, 1.0 / alpha) ** 2
        assert check.saturated == (fr == 1)


def test_saturation_constraint_enforced():
    with pytest.raises(ConstraintError):
        spectrum.saturation_check(2.0, 1.0, 1.0)


@settings(max_examples=80, deadline=None)
@given(alpha=st.floats(0.2, 5.0))
def test_saturation_ratio_property(alpha):
    check = spectrum.saturation_check(alpha, 1.0 / alpha, 1.0)
    assert 0.0 < check.ratio <= 1.0 + 1e-15
    want = min(alpha, 1.0 / alpha) ** 2
    assert check.ratio == pytest.approx(want, rel=1e-14)
    if check.saturated:
        assert abs(alpha - 1.0) < 1e-6
