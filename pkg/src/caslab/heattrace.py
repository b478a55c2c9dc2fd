"""Regulated traces, mixed-cell heat traces, and finite-part extraction.

The regulated trace (1/2) sum lambda^{1/2} e^{-tau lambda} carries a certified
truncation remainder from its eigenvalue stream.  Mixed rectangular cells
factorize into one-dimensional theta sums, whose short-time expansion has
computable volume, area, edge, and corner coefficients.  The finite part of a
divergent small-tau expansion is extracted by a weighted linear fit with an
explicit window-stability guard.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import specfun
from .errors import (
    ConvergenceError,
    CutoffError,
    FitConditionError,
    FitInstabilityError,
    ParameterError,
)
from .spectrum import EigenStream, saturation_check

_TAIL_TARGET = 1e-6  # tail bound must stay below this fraction of the value


@dataclass(frozen=True)
class HeatTraceSample:
    """One regulator value tau, the trace value, and its truncation bound."""

    tau: float
    value: float
    tail_bound: float

    def to_json(self) -> str:
        return json.dumps(
            {"tau": self.tau, "value": self.value, "tail_bound": self.tail_bound}
        )


def regulated_trace(stream: EigenStream, tau: float) -> HeatTraceSample:
    """(1/2) sum_j mult_j lambda_j^{1/2} exp(-tau lambda_j) over the stream.

    The stream's heat-tail envelope at tau (halved like the sum) is attached
    as the sample's tail bound; if that bound exceeds 1e-6 of the value the
    cutoff was too low for this tau and a CutoffError is raised.
    """
    if not tau > 0.0:
        raise ParameterError("regulated trace needs tau > 0")
    total = 0.0
    for value, mult in stream.values:
        total += mult * math.sqrt(value) * math.exp(-tau * value)
    total *= 0.5
    tail = 0.5 * stream.tail_bound(tau)
    if tail > _TAIL_TARGET * total:
        raise CutoffError(
            f"truncation tail {tail:.3e} exceeds {_TAIL_TARGET:.0e} of value "
            f"{total:.6e}; raise the cutoff or tau",
            tail_bound=tail,
            target=_TAIL_TARGET * total,
        )
    return HeatTraceSample(tau=tau, value=total, tail_bound=tail)


def mixed_cell_heat_trace(l1: float, l2: float, a: float, t: float) -> float:
    """Heat trace of the Neumann x Neumann x Dirichlet cell.

    Separability factorizes the trace into Theta_N(l1; t) Theta_N(l2; t)
    Theta_D(a; t), each evaluated on its automatically chosen route.
    """
    tn = specfun.ThetaKind.NEUMANN
    td = specfun.ThetaKind.DIRICHLET
    return (
        specfun.theta(tn, l1, t)
        * specfun.theta(tn, l2, t)
        * specfun.theta(td, a, t)
    )


def short_time_grid(lo: float = 1e-4, hi: float = 1e-3, n: int = 16) -> np.ndarray:
    """Default geometric t-grid for short-time coefficient fits."""
    return np.geomspace(lo, hi, n)


def short_time_coefficients(
    l1: float, l2: float, a: float, t_grid: Sequence[float] | None = None
) -> dict[str, float]:
    """Fit the four-term small-t law of the mixed-cell heat trace.

    Model: K(t) = c32 t^{-3/2} + c1 t^{-1} + c12 t^{-1/2} + c0, fitted by
    least squares with weights t^{3/2} so every basis column is O(1).
    Returns the fitted coefficients keyed by the exponent they multiply.
    """
    t = np.asarray(t_grid if t_grid is not None else short_time_grid(), dtype=float)
    if t.ndim != 1 or t.size < 6:
        raise ParameterError("need a one-dimensional grid with >= 6 points")
    k = np.array([mixed_cell_heat_trace(l1, l2, a, ti) for ti in t])
    w = t**1.5
    cols = np.column_stack([t**-1.5, t**-1.0, t**-0.5, np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(cols * w[:, None], k * w, rcond=None)
    return {
        "t^-3/2": float(coef[0]),
        "t^-1": float(coef[1]),
        "t^-1/2": float(coef[2]),
        "1": float(coef[3]),
    }


def b_coefficient(l1: float, l2: float, a: float) -> float:
    """Area-type coefficient B = (a (l1 + l2) - a^2) / (8 pi) on the
    fixed-cross-section family l1 l2 = a^2.

    Before returning, the closed form is checked against a companion fit of
    the t^{-1} term of the mixed-cell trace.  The fit removes the exact
    volume term first and keeps the two lower-order columns in the basis so
    they cannot leak into the t^{-1} coefficient; agreement within 1% is
    enforced.
    """
    saturation_check(l1, l2, a)  # raises ConstraintError when l1 l2 != a^2
    closed = (a * (l1 + l2) - a * a) / (8.0 * math.pi)
    t = short_time_grid()
    vol = l1 * l2 * a / (8.0 * math.pi**1.5)
    resid = np.array(
        [mixed_cell_heat_trace(l1, l2, a, ti) - vol * ti**-1.5 for ti in t]
    )
    w = t**1.0
    cols = np.column_stack([t**-1.0, t**-0.5, np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(cols * w[:, None], resid * w, rcond=None)
    fitted = float(coef[0])
    if abs(fitted - closed) > 0.01 * abs(closed):
        raise ConvergenceError(
            f"companion fit {fitted!r} disagrees with closed form {closed!r}"
        )
    return closed


@dataclass(frozen=True)
class FinitePartModel:
    """Result of a finite-part fit: modeled divergences and the constant term.

    c0 already includes the optional local counterterm.  The stability fields
    record how much c0 moved when the fit window was cut in half at the top.
    """

    exponents: tuple[float, ...]
    include_log: bool
    mu: float
    coefficients: dict[str, float]
    log_coefficient: float
    c0: float
    counterterm: float
    residual: float
    window: tuple[float, float]
    condition_number: float
    nested_c0: float
    stability_drift: float
    stability_tol: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "exponents": list(self.exponents),
                "include_log": self.include_log,
                "mu": self.mu,
                "coefficients": self.coefficients,
                "log_coefficient": self.log_coefficient,
                "c0": self.c0,
                "counterterm": self.counterterm,
                "residual": self.residual,
                "window": list(self.window),
                "condition_number": self.condition_number,
                "nested_c0": self.nested_c0,
                "stability_drift": self.stability_drift,
                "stability_tol": self.stability_tol,
            }
        )


def _finite_part_solve(
    tau: np.ndarray,
    values: np.ndarray,
    exponents: tuple[float, ...],
    include_log: bool,
    mu: float,
    cond_limit: float,
) -> tuple[np.ndarray, float, float]:
    """Weighted, column-equilibrated least squares; returns (coef, resid, cond)."""
    cols = [tau ** (-b) for b in exponents]
    if include_log:
        cols.append(np.log(mu * mu * tau))
    cols.append(np.ones_like(tau))
    design = np.column_stack(cols)
    w = tau ** max(exponents)
    aw = design * w[:, None]
    bw = values * w
    scale = np.max(np.abs(aw), axis=0)
    scale[scale == 0.0] = 1.0
    aeq = aw / scale
    cond = float(np.linalg.cond(aeq))
    if cond > cond_limit:
        raise FitConditionError(
            f"fit design matrix condition number {cond:.3e} exceeds "
            f"{cond_limit:.0e}; choose better-separated exponents or a wider "
            "window",
            condition_number=cond,
        )
    coef_eq, *_ = np.linalg.lstsq(aeq, bw, rcond=None)
    coef = coef_eq / scale
    resid = float(np.sqrt(np.mean((aw @ coef - bw) ** 2)))
    return coef, resid, cond


def finite_part(
    samples: Sequence[HeatTraceSample],
    exponents: Sequence[float],
    include_log: bool = False,
    mu: float = 1.0,
    counterterm: float = 0.0,
    stability_tol: float = 5e-3,
    cond_limit: float = 1e10,
) -> FinitePartModel:
    """Extract the constant term of value(tau) = sum_b a_b tau^{-b}
    [+ a_log log(mu^2 tau)] + c0 from trace samples.

    The fit is linear least squares with weights tau^{max b}, repeated on the
    nested window [tau_min, tau_max/2]; the two constant terms must agree
    within stability_tol (relative) or a FitInstabilityError is raised.  The
    optional counterterm is added to c0, matching a renormalization scheme
    that shifts the finite part by a fixed local constant.
    """
    exps = tuple(sorted({float(b) for b in exponents}, reverse=True))
    if not exps or any(b <= 0.0 for b in exps):
        raise ParameterError("divergent exponents must be positive reals")
    if not mu > 0.0:
        raise ParameterError("reference scale mu must be > 0")
    if len(samples) < len(exps) + 2:
        raise ParameterError(
            f"need at least {len(exps) + 2} samples for exponents {exps}"
        )
    ordered = sorted(samples, key=lambda s: s.tau)
    tau = np.array([s.tau for s in ordered], dtype=float)
    values = np.array([s.value for s in ordered], dtype=float)
    if np.any(tau <= 0.0):
        raise ParameterError("sample tau values must be > 0")
    if tau[-1] < 10.0 * tau[0]:
        raise ParameterError("samples must span at least one decade of tau")
    for s in ordered:
        if s.tail_bound > _TAIL_TARGET * abs(s.value):
            raise ParameterError(
                f"sample at tau={s.tau} carries tail bound {s.tail_bound:.3e} "
                "above the fit's accuracy target"
            )

    ncols = len(exps) + (2 if include_log else 1)
    coef, resid, cond = _finite_part_solve(
        tau, values, exps, include_log, mu, cond_limit
    )
    half = tau <= tau[-1] / 2.0
    if int(half.sum()) < ncols + 1:
        raise ParameterError("too few samples in the nested half window")
    coef_half, _, _ = _finite_part_solve(
        tau[half], values[half], exps, include_log, mu, cond_limit
    )
    c0_full = float(coef[-1])
    c0_half = float(coef_half[-1])
    drift = abs(c0_full - c0_half)
    coeff_scale = float(np.max(np.abs(coef))) if coef.size else 1.0
    allowed = stability_tol * max(abs(c0_full), abs(c0_half), 1e-9 * max(coeff_scale, 1.0))
    if drift > allowed:
        raise FitInstabilityError(
            f"finite part moved by {drift:.3e} between nested windows "
            f"(allowed {allowed:.3e}); the model is missing a term",
            drift=drift,
            tolerance=allowed,
        )
    log_coef = float(coef[len(exps)]) if include_log else 0.0
    return FinitePartModel(
        exponents=exps,
        include_log=include_log,
        mu=mu,
        coefficients={f"tau^-{b:g}": float(c) for b, c in zip(exps, coef)},
        log_coefficient=log_coef,
        c0=c0_full + counterterm,
        counterterm=counterterm,
        residual=resid,
        window=(float(tau[0]), float(tau[-1])),
        condition_number=cond,
        nested_c0=c0_half + counterterm,
        stability_drift=drift,
        stability_tol=stability_tol,
    )
