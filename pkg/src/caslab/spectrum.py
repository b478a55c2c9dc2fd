"""Separable box spectra with certified truncation bounds.

Eigenvalues of the product operators on rectangular cells and torus-interval
products are sums of per-axis one-dimensional modes.  Enumeration below a
cutoff is a bounded lattice walk; the discarded part of heat-weighted sums is
controlled by an explicit per-axis envelope so downstream traces can report
rigorous remainders.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import NamedTuple

from . import specfun
from .errors import (
    ConstraintError,
    EmptySpectrumError,
    ParameterError,
    ResourceError,
)

_MERGE_RTOL = 1e-12
DEFAULT_MODE_CAP = 2_000_000


class Bc(str, enum.Enum):
    """Boundary condition of one axis."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class AxisSpec:
    """One factor interval: length and boundary condition.

    Modes: Dirichlet pi^2 r^2 / L^2 (r >= 1), Neumann pi^2 m^2 / L^2 (m >= 0),
    periodic (2 pi k / L)^2 (k in Z, multiplicity 2 for k != 0).
    """

    length: float
    bc: Bc

    def __post_init__(self):
        if not isinstance(self.bc, Bc):
            object.__setattr__(self, "bc", Bc(self.bc))
        if not self.length > 0.0:
            raise ParameterError("axis length must be > 0")

    @property
    def min_value(self) -> float:
        if self.bc is Bc.DIRICHLET:
            return (math.pi / self.length) ** 2
        return 0.0

    def modes_below(self, cutoff: float) -> list[tuple[float, int]]:
        """Sorted (value, multiplicity) pairs with value <= cutoff."""
        out: list[tuple[float, int]] = []
        if self.bc is Bc.PERIODIC:
            base = (2.0 * math.pi / self.length) ** 2
            out.append((0.0, 1))
            k = 1
            while base * k * k <= cutoff:
                out.append((base * k * k, 2))
                k += 1
        else:
            base = (math.pi / self.length) ** 2
            start = 0 if self.bc is Bc.NEUMANN else 1
            n = start
            while base * n * n <= cutoff:
                out.append((base * n * n, 1))
                n += 1
        return out

    def heat_sum(self, t: float) -> float:
        """Full heat sum over every axis mode, sum_j mult_j exp(-t value_j)."""
        if self.bc is Bc.DIRICHLET:
            return specfun.theta(specfun.ThetaKind.DIRICHLET, self.length, t)
        if self.bc is Bc.NEUMANN:
            return specfun.theta(specfun.ThetaKind.NEUMANN, self.length, t)
        # periodic modes coincide with Dirichlet modes of the half interval,
        # doubled, plus the zero mode
        return 1.0 + 2.0 * specfun.theta(
            specfun.ThetaKind.DIRICHLET, 0.5 * self.length, t
        )


@dataclass(frozen=True)
class BoxSpec:
    """Three ordered axes; at least one must be Dirichlet so the bottom of the
    spectrum stays strictly positive."""

    axes: tuple[AxisSpec, AxisSpec, AxisSpec]

    def __post_init__(self):
        axes = tuple(self.axes)
        object.__setattr__(self, "axes", axes)
        if len(axes) != 3:
            raise ParameterError("BoxSpec takes exactly three axes")
        if not any(ax.bc is Bc.DIRICHLET for ax in axes):
            raise ParameterError("at least one axis must be Dirichlet")

    @property
    def lambda_min(self) -> float:
        return sum(ax.min_value for ax in self.axes)

    @property
    def volume(self) -> float:
        v = 1.0
        for ax in self.axes:
            v *= ax.length
        return v


@dataclass(frozen=True)
class EigenStream:
    """Complete sorted spectrum below a cutoff, with a heat-tail envelope."""

    cutoff: float
    values: tuple[tuple[float, int], ...]
    box: BoxSpec

    @property
    def mode_count(self) -> int:
        return sum(mult for _, mult in self.values)

    def tail_bound(self, t: float) -> float:
        """Upper bound on sum_{lambda > cutoff} mult * lambda^{1/2} e^{-t lambda}.

        Split e^{-t lambda} = e^{-t lambda/2} e^{-t lambda/2}; the first factor
        times lambda^{1/2} is maximized explicitly over lambda > cutoff and the
        rest is dominated by the full factorized heat sum at t/2.  The result
        is nonincreasing in t.
        """
        if not t > 0.0:
            raise ParameterError("tail bound needs t > 0")
        half = 0.5 * t
        peak = 1.0 / t
        if self.cutoff >= peak:
            envelope = math.sqrt(self.cutoff) * math.exp(-half * self.cutoff)
        else:
            envelope = math.sqrt(peak) * math.exp(-0.5)
        product = 1.0
        for ax in self.box.axes:
            product *= ax.heat_sum(half)
        return envelope * product

    def to_json(self) -> str:
        payload = {
            "cutoff": self.cutoff,
            "modes": [
                {"value": v, "multiplicity": m} for v, m in self.values
            ],
        }
        return json.dumps(payload)


def enumerate_modes(
    spec: BoxSpec, cutoff: float, max_modes: int = DEFAULT_MODE_CAP
) -> EigenStream:
    """Complete sorted enumeration of box eigenvalues below the cutoff.

    Bounded lattice walk over per-axis indices with early termination; equal
    values are merged within 1e-12 relative so lattice-symmetry degeneracies
    report a single multiplicity.
    """
    cutoff = float(cutoff)
    lam_min = spec.lambda_min
    if cutoff <= lam_min:
        raise EmptySpectrumError(
            f"cutoff {cutoff} admits no modes (lowest eigenvalue {lam_min})"
        )
    weyl = spec.volume * cutoff**1.5 / (6.0 * math.pi**2)
    if weyl > 4.0 * max_modes:
        raise ResourceError(
            f"estimated {weyl:.3e} modes below cutoff exceeds cap {max_modes}"
        )
    a1, a2, a3 = spec.axes
    m2min, m3min = a2.min_value, a3.min_value
    modes1 = a1.modes_below(cutoff - m2min - m3min)
    found: list[tuple[float, int]] = []
    count = 0
    for v1, k1 in modes1:
        modes2 = a2.modes_below(cutoff - v1 - m3min)
        for v2, k2 in modes2:
            modes3 = a3.modes_below(cutoff - v1 - v2)
            for v3, k3 in modes3:
                found.append((v1 + v2 + v3, k1 * k2 * k3))
                count += k1 * k2 * k3
                if count > max_modes:
                    raise ResourceError(
                        f"mode count exceeded cap {max_modes} during walk"
                    )
    if not found:
        raise EmptySpectrumError(f"no modes at or below cutoff {cutoff}")
    found.sort(key=lambda pair: pair[0])
    merged: list[tuple[float, int]] = [found[0]]
    for value, mult in found[1:]:
        prev, pmult = merged[-1]
        if value - prev <= _MERGE_RTOL * value:
            merged[-1] = (prev, pmult + mult)
        else:
            merged.append((value, mult))
    return EigenStream(cutoff=cutoff, values=tuple(merged), box=spec)


# the op is named after what it does; keep the bare name available too
enumerate = enumerate_modes  # noqa: A001


def lateral_gap(l1: float, l2: float) -> float:
    """First positive lateral mode scale pi^2 / max(l1, l2)^2."""
    if not (l1 > 0.0 and l2 > 0.0):
        raise ParameterError("lateral lengths must be > 0")
    longest = max(l1, l2)
    return (math.pi / longest) ** 2


class SaturationResult(NamedTuple):
    saturated: bool
    ratio: float


def saturation_check(l1: float, l2: float, a: float) -> SaturationResult:
    """Gap ratio of a constrained cell against the square cross-section.

    For l1 l2 = a^2 the ratio of lateral_gap(l1, l2) to pi^2/a^2 reduces to
    (a / max(l1, l2))^2 = min(alpha^2, alpha^-2); the cell is saturated
    exactly when that ratio is 1.
    """
    if not (l1 > 0.0 and l2 > 0.0 and a > 0.0):
        raise ParameterError("lengths must be > 0")
    target = a * a
    if abs(l1 * l2 - target) > 1e-12 * target:
        raise ConstraintError(
            f"fixed-area constraint violated: l1*l2 = {l1 * l2!r}, a^2 = {target!r}"
        )
    ratio = (a / max(l1, l2)) ** 2
    return SaturationResult(saturated=abs(ratio - 1.0) <= 1e-12, ratio=ratio)
