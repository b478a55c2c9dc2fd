"""Codimension-m reduction constants and their quadrature cross-checks.

A product operator with an m-dimensional translation-invariant factor reduces,
on the diagonal, to multiples of lambda^{m/2-s} with constant

    C_{m,s} = (4 pi)^{-m/2} Gamma(s - m/2) / Gamma(s),    s > m/2.

This module evaluates the defining momentum integral three independent ways
(radial quadrature, Schwinger proper-time form, mollified smearing with an
explicit width) and exposes the two-stage chain whose combined constant is
1/(32 pi^2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import scipy.integrate as integrate

from . import specfun
from .errors import ConvergenceError, ParameterError, QuadratureError

_TAIL_FRACTION = 1e-12  # radial truncation tail relative to the head integral


def _check_m(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ParameterError("transverse dimension m must be a positive integer")
    return m


def reduction_constant(m: int, s: float) -> float:
    """C_{m,s} = (4 pi)^{-m/2} Gamma(s - m/2) / Gamma(s) for s > m/2."""
    _check_m(m)
    s = float(s)
    if not s > 0.5 * m:
        raise ConvergenceError(
            f"reduction constant diverges: need s > m/2, got s={s}, m={m}"
        )
    return (
        (4.0 * math.pi) ** (-0.5 * m)
        * specfun.gamma(s - 0.5 * m)
        / specfun.gamma(s)
    )


def critical_exponent(m: int) -> float:
    """Smallest exponent with a pure 1/lambda reduction: s*(m) = 1 + m/2."""
    _check_m(m)
    return 1.0 + 0.5 * m


def sphere_area(m: int) -> float:
    """Surface area of the unit (m-1)-sphere, 2 pi^{m/2} / Gamma(m/2)."""
    _check_m(m)
    return 2.0 * math.pi ** (0.5 * m) / specfun.gamma(0.5 * m)


class MollifierShape(str, enum.Enum):
    """Supported smearing profiles (unit mass, so the Fourier image is 1 at 0)."""

    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class MollifierSpec:
    """Smearing profile plus width for mollified restriction integrals."""

    shape: MollifierShape = MollifierShape.GAUSSIAN
    eps: float = 0.0

    def __post_init__(self):
        if not isinstance(self.shape, MollifierShape):
            object.__setattr__(self, "shape", MollifierShape(self.shape))
        if not self.eps >= 0.0:
            raise ParameterError("mollifier width must be >= 0")

    def fourier_sq(self, q: float) -> float:
        """|eta_hat(eps q)|^2; equals exp(-(eps q)^2) for the Gaussian."""
        x = self.eps * q
        return math.exp(-x * x)


@dataclass(frozen=True)
class ReductionParams:
    """Parameter bundle for a single reduction: dimension, exponent, spectrum.

    kappa is the free ambient normalization; the induced normalization g is
    tied to it by g = kappa/(6 pi^2) at the canonical point (m, s) = (3, 5/2)
    and left unset elsewhere.
    """

    m: int
    s: float
    lam: float
    kappa: float = 1.0
    g: float | None = field(default=None)

    def __post_init__(self):
        _check_m(self.m)
        if not self.lam > 0.0:
            raise ParameterError("spectral value lam must be > 0")
        if not self.kappa > 0.0:
            raise ParameterError("kappa must be > 0")
        canonical = self.m == 3 and self.s == 2.5
        if self.g is None and canonical:
            object.__setattr__(self, "g", self.kappa / (6.0 * math.pi**2))
        if self.g is not None and canonical:
            expect = self.kappa / (6.0 * math.pi**2)
            if abs(self.g - expect) > 1e-12 * expect:
                raise ParameterError(
                    "inconsistent normalizations: g must equal kappa/(6 pi^2)"
                )


def _quad_checked(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    epsabs: float,
    epsrel: float = 1e-11,
    limit: int = 400,
) -> float:
    out = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(f"quadrature on [{a}, {b}] failed: {out[3]}")
    if abserr > max(epsabs, 10.0 * epsrel * abs(value)):
        raise QuadratureError(
            f"quadrature on [{a}, {b}] reached {abserr:.3e}, wanted {epsabs:.3e}"
        )
    return value


def _radial_integral(m: int, s: float, lam: float, damp_eps: float = 0.0) -> float:
    """integral_0^inf q^{m-1} w(q) (lam+q^2)^{-s} dq with w = Gaussian damp.

    Truncates at Q fixed by the bound integral_Q^inf q^{m-1-2s} dq
    = Q^{m-2s}/(2s-m), kept below _TAIL_FRACTION of the head.
    """

    def f(q: float) -> float:
        base = q ** (m - 1) * (lam + q * q) ** (-s)
        if damp_eps:
            x = damp_eps * q
            base *= math.exp(-x * x)
        return base

    q_head = 10.0 * math.sqrt(lam) + 1.0
    head = integrate.quad(f, 0.0, q_head, epsabs=0.0, epsrel=1e-9, limit=200)[0]
    if head <= 0.0:
        raise QuadratureError("radial head integral vanished")
    tail_target = _TAIL_FRACTION * head * (2.0 * s - m)
    q_cut = math.exp(math.log(tail_target) / (m - 2.0 * s))
    q_cut = max(q_cut, q_head)
    # piecewise over geometric windows: a single panel spanning the decades
    # up to q_cut defeats the adaptive subdivision
    total = _quad_checked(f, 0.0, q_head, epsabs=1e-13 * head)
    lo = q_head
    while lo < q_cut:
        hi = min(lo * 100.0, q_cut)
        total += _quad_checked(f, lo, hi, epsabs=1e-13 * head)
        lo = hi
    return total


def momentum_integral(m: int, s: float, lam: float) -> float:
    """integral d^m q / (2 pi)^m  (lam + |q|^2)^{-s} by radial quadrature.

    Agrees with reduction_constant(m, s) * lam^{m/2 - s} to relative 1e-8.
    """
    _check_m(m)
    s = float(s)
    lam = float(lam)
    if not s > 0.5 * m:
        raise ConvergenceError(f"momentum integral diverges: need s > m/2, got {s}")
    if not lam > 0.0:
        raise ParameterError("lam must be > 0")
    pref = sphere_area(m) / (2.0 * math.pi) ** m
    return pref * _radial_integral(m, s, lam)


def schwinger_integral(m: int, s: float, lam: float) -> float:
    """Proper-time form (4 pi)^{-m/2} Gamma(s)^{-1} int_0^inf t^{s-1-m/2} e^{-t lam} dt.

    The endpoint exponent a = s - 1 - m/2 can sit in (-1, 0); that piece is
    handled with an algebraic-weight rule so the contract matches
    momentum_integral to relative 1e-8.
    """
    _check_m(m)
    s = float(s)
    lam = float(lam)
    if not s > 0.5 * m:
        raise ConvergenceError(f"schwinger integral diverges: need s > m/2, got {s}")
    if not lam > 0.0:
        raise ParameterError("lam must be > 0")
    a = s - 1.0 - 0.5 * m
    if a < 0.0:
        out = integrate.quad(
            lambda t: math.exp(-lam * t),
            0.0,
            1.0,
            weight="alg",
            wvar=(a, 0.0),
            epsabs=0.0,
            epsrel=1e-12,
            limit=200,
            full_output=1,
        )
        if len(out) > 3:
            raise QuadratureError(f"endpoint-weighted quadrature failed: {out[3]}")
        head = out[0]
    else:
        head = _quad_checked(
            lambda t: t**a * math.exp(-lam * t), 0.0, 1.0, epsabs=1e-14
        )
    tail_out = integrate.quad(
        lambda t: t**a * math.exp(-lam * t),
        1.0,
        math.inf,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=200,
        full_output=1,
    )
    if len(tail_out) > 3:
        raise QuadratureError(f"proper-time tail quadrature failed: {tail_out[3]}")
    pref = (4.0 * math.pi) ** (-0.5 * m) / specfun.gamma(s)
    return pref * (head + tail_out[0])


def mollified_reduction(
    m: int, s: float, lam: float, mollifier: MollifierSpec
) -> float:
    """Momentum integral smeared by |eta_hat(eps q)|^2.

    Monotone nonincreasing in the width and converges to momentum_integral as
    the width shrinks; width 0 short-circuits to momentum_integral since the
    profile is identically 1 there.
    """
    _check_m(m)
    if not isinstance(mollifier, MollifierSpec):
        raise ParameterError("mollifier must be a MollifierSpec")
    if mollifier.eps == 0.0:
        return momentum_integral(m, s, lam)
    s = float(s)
    lam = float(lam)
    if not s > 0.5 * m:
        raise ConvergenceError(f"mollified integral diverges: need s > m/2, got {s}")
    if not lam > 0.0:
        raise ParameterError("lam must be > 0")
    pref = sphere_area(m) / (2.0 * math.pi) ** m
    return pref * _radial_integral(m, s, lam, damp_eps=mollifier.eps)


def richardson_limit(
    eps: Sequence[float], values: Sequence[float], orders: Sequence[float] = (2.0, 2.0)
) -> float:
    """Extrapolate width-dependent values to width 0.

    Performs one elimination sweep per entry of orders, each sweep assuming the
    current leading error scales like eps**order.  Repeating the same order
    (the default) is deliberate: it also cancels a leading term of the form
    eps^2 * log(eps) exactly on a geometric width sequence, which plain
    polynomial extrapolation does not.
    """
    if len(eps) != len(values) or len(eps) < 2:
        raise ParameterError("need matching eps/value sequences of length >= 2")
    if len(orders) > len(eps) - 1:
        raise ParameterError("too many elimination sweeps for the data")
    e = [float(x) for x in eps]
    v = [float(x) for x in values]
    if any(e[i + 1] >= e[i] for i in range(len(e) - 1)):
        raise ParameterError("eps must be strictly decreasing")
    for p in orders:
        nxt = []
        for i in range(len(v) - 1):
            r = e[i + 1] / e[i]
            w = r ** (-p)
            nxt.append((w * v[i + 1] - v[i]) / (w - 1.0))
        v = nxt
        e = e[1:]
        if len(v) == 1:
            break
    return v[0]


def two_step_chain(lam: float) -> tuple[float, float, float]:
    """Stagewise and combined reduction across one 1D and one 3D factor.

    Returns (C_{1,3}, C_{3,5/2}, nested quadrature of the combined kernel).
    The product of the stage constants is 1/(32 pi^2); the nested value is
    checked against (product)/lam to relative 1e-7 before returning.
    """
    lam = float(lam)
    if not lam > 0.0:
        raise ParameterError("lam must be > 0")
    c1 = reduction_constant(1, 3.0)
    c3 = reduction_constant(3, 2.5)
    expect = c1 * c3 / lam

    def inner(mu: float) -> float:
        # (1/(2 pi)) int_R (mu + p^2)^{-3} dp, evaluated numerically
        out = integrate.quad(
            lambda p: (mu + p * p) ** (-3),
            0.0,
            math.inf,
            epsabs=0.0,
            epsrel=1e-11,
            limit=200,
        )
        return out[0] / math.pi

    def outer(q: float) -> float:
        return q * q * inner(lam + q * q)

    q_cut = 200.0 * math.sqrt(lam)
    main = _quad_checked(outer, 0.0, q_cut, epsabs=1e-11 * expect, epsrel=1e-10)
    # beyond q_cut the inner integral is C_{1,3} (lam+q^2)^{-5/2} to O(q^-2),
    # and int_Q^inf q^2 (lam+q^2)^{-5/2} dq has the closed form below
    tail = (c1 / (3.0 * lam)) * (1.0 - q_cut**3 * (lam + q_cut * q_cut) ** (-1.5))
    nested = (main + tail) / (2.0 * math.pi**2)
    if abs(nested - expect) > 1e-7 * expect:
        raise ConvergenceError(
            f"combined reduction mismatch: nested={nested!r}, stagewise={expect!r}"
        )
    return c1, c3, nested
