"""Speed limits on unitary operator flows.

Two families of bounds constrain how fast the overlap between an operator and
its Heisenberg-evolved image can decay: a linear one governed by the mean
absolute gap (Margolus-Levitin type) and a quadratic one governed by the mean
squared gap (Mandelstam-Tamm type). This module provides the tangency
constant of the linear bound, overlap floors, minimum times to reach a target
overlap, the crossover time between the two regimes, the weaker
Hamiltonian-anchored and trigonometric variants, the bound for driven
fixed-eigenbasis Hamiltonians, and the maximal-speed operator construction.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.optimize import brentq

from .gaps import WeightedGapDistribution, abs_moment, overlap_distribution, second_moment
from .linalg import EnergyBasisOperator, Spectrum

__all__ = [
    "alpha_constant",
    "tangency_point",
    "QslVelocities",
    "BoundCurve",
    "velocities_from_distribution",
    "ml_overlap_floor",
    "mt_overlap_floor",
    "ml_min_time",
    "mt_min_time",
    "crossover_time",
    "ml_hamiltonian_min_time",
    "max_speed_operator",
    "trig_ml_min_time",
    "trig_mt_min_time",
    "driven_ml_floor",
    "driven_overlap",
    "driven_ml_floor_curve",
    "operator_angle",
]

logger = logging.getLogger(__name__)

BOUND_KINDS = frozenset({"ml", "mt", "trig_ml", "trig_mt", "driven_ml"})

#: Tolerated arccos-argument excursion beyond [-1, 1] before raising.
ANGLE_CLAMP_TOL = 1e-9


@lru_cache(maxsize=1)
def _tangency() -> tuple[float, float]:
    # x* solves cos x + x sin x = 1 on (2, 3); the slope of the tangent line
    # 1 - alpha*x touching cos x from below is alpha = sin x*.
    f = lambda x: math.cos(x) + x * math.sin(x) - 1.0
    xstar = brentq(f, 2.0, 3.0, xtol=1e-15, rtol=8.9e-16)
    # one Newton polish step; f'(x) = x cos x
    xstar -= f(xstar) / (xstar * math.cos(xstar))
    if abs(f(xstar)) > 1e-12:
        raise RuntimeError(f"tangency root did not converge: residual {f(xstar):.3e}")
    return xstar, math.sin(xstar)


def alpha_constant() -> float:
    """Slope of the steepest line ``1 - alpha*x`` lying below ``cos x`` for ``x > 0``.

    Computed once from the tangency condition and cached; approximately 0.7246.
    """
    return _tangency()[1]


def tangency_point() -> float:
    """Abscissa where ``1 - alpha*x`` touches ``cos x`` (about 2.3311)."""
    return _tangency()[0]


@dataclass(frozen=True)
class QslVelocities:
    """Flow speeds: mean absolute gap, mean squared gap, and the tangency slope."""

    abs_liouvillian: float
    second_moment: float
    alpha: float

    def __post_init__(self) -> None:
        if self.second_moment < 0 or self.abs_liouvillian < 0:
            raise ValueError("flow speeds must be nonnegative")
        if self.abs_liouvillian**2 > self.second_moment * (1 + 1e-12) + 1e-300:
            raise ValueError(
                "inconsistent speeds: <|L|>^2 = "
                f"{self.abs_liouvillian**2!r} exceeds <L^2> = {self.second_moment!r}"
            )


@dataclass(frozen=True)
class BoundCurve:
    """A bound sampled on a time grid."""

    grid: np.ndarray
    values: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("grid and values must be matching 1-d arrays")
        if g.size > 1 and np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        if self.kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}, expected one of {sorted(BOUND_KINDS)}")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)


def velocities_from_distribution(dist: WeightedGapDistribution) -> QslVelocities:
    """Moments of a (normalized) gap distribution packaged as flow speeds."""
    return QslVelocities(
        abs_liouvillian=abs_moment(dist),
        second_moment=second_moment(dist),
        alpha=alpha_constant(),
    )


def _check_time(t) -> np.ndarray:
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("time must be nonnegative")
    return t_arr


def _check_target(target: float) -> float:
    if not -1.0 <= target <= 1.0:
        raise ValueError(f"target overlap must lie in [-1, 1], got {target!r}")
    return float(target)


def ml_overlap_floor(v: QslVelocities, t):
    """Linear floor ``1 - alpha <|L|> t`` under the real part of the overlap."""
    return 1.0 - v.alpha * v.abs_liouvillian * _check_time(t)


def mt_overlap_floor(v: QslVelocities, t):
    """Quadratic floor ``1 - <L^2> t^2 / 2`` under the real part of the overlap."""
    return 1.0 - 0.5 * v.second_moment * _check_time(t) ** 2


def ml_min_time(v: QslVelocities, target_overlap: float) -> float:
    """Minimum time for the real overlap to reach ``target_overlap`` (linear bound)."""
    target = _check_target(target_overlap)
    if target == 1.0:
        return 0.0
    if v.abs_liouvillian == 0.0:
        return math.inf
    return (1.0 - target) / (v.alpha * v.abs_liouvillian)


def mt_min_time(v: QslVelocities, target_overlap: float) -> float:
    """Minimum time for the real overlap to reach ``target_overlap`` (quadratic bound)."""
    target = _check_target(target_overlap)
    if target == 1.0:
        return 0.0
    if v.second_moment == 0.0:
        return math.inf
    return math.sqrt(2.0 * (1.0 - target) / v.second_moment)


def crossover_time(v: QslVelocities) -> float:
    """Time ``2 alpha <|L|> / <L^2>`` where the linear floor overtakes the quadratic one.

    For ``t`` below the crossover the quadratic floor is the higher (tighter)
    of the two, above it the linear floor is; infinite when ``<L^2> = 0``.
    """
    if v.second_moment == 0.0:
        return math.inf
    return 2.0 * v.alpha * v.abs_liouvillian / v.second_moment


def ml_hamiltonian_min_time(oe: EnergyBasisOperator, target_overlap: float) -> float:
    """Linear minimum time anchored to the ground energy instead of the gaps.

    Replaces ``<|L|>`` by ``Tr(O^dag {H - E_0, O}) / ||O||^2``, which dominates
    it, so this bound is never tighter than :func:`ml_min_time`.
    """
    target = _check_target(target_overlap)
    e = oe.spectrum.energies
    w = np.abs(oe.elements) ** 2
    norm_sq = float(w.sum())
    if norm_sq == 0.0:
        raise ValueError("zero operator has no flow")
    anchored = float((w * ((e[:, None] - e[0]) + (e[None, :] - e[0]))).sum())
    if target == 1.0:
        return 0.0
    if anchored <= 0.0:
        raise ValueError("anchored gap sum vanishes; the bound degenerates")
    return norm_sq * (1.0 - target) / (alpha_constant() * anchored)


def max_speed_operator(spectrum: Spectrum, mu: complex, nu: complex) -> np.ndarray:
    """Operator supported only on the extremal level pair, the fastest possible flow.

    Returns ``mu |E_max><E_0| + nu |E_0><E_max|`` in the original basis; choose
    ``nu = conj(mu)`` for a Hermitian result. Both its mean absolute gap and
    root mean squared gap equal the full spectral width ``E_max - E_0``.
    """
    if spectrum.dim < 2:
        raise ValueError("need at least two levels")
    if mu == 0 and nu == 0:
        raise ValueError("mu and nu cannot both vanish")
    e = spectrum.energies
    width = e[-1] - e[0]
    if e[1] - e[0] <= 1e-12 * max(abs(width), 1.0) or e[-1] - e[-2] <= 1e-12 * max(abs(width), 1.0):
        warnings.warn(
            "extremal level is degenerate; using the first eigenvector of each extremal level",
            stacklevel=2,
        )
    lo = spectrum.vectors[:, 0]
    hi = spectrum.vectors[:, -1]
    return mu * np.outer(hi, lo.conj()) + nu * np.outer(lo, hi.conj())


def trig_ml_min_time(v: QslVelocities, target_overlap: float) -> float:
    """Weaker linear minimum time ``(pi/4)(1 - target)/<|L|>``."""
    target = _check_target(target_overlap)
    if target == 1.0:
        return 0.0
    if v.abs_liouvillian == 0.0:
        return math.inf
    return (math.pi / 4.0) * (1.0 - target) / v.abs_liouvillian


def trig_mt_min_time(v: QslVelocities, target_overlap: float) -> float:
    """Weaker quadratic minimum time ``(pi/sqrt(6)) sqrt(1 - target)/sqrt(<L^2>)``."""
    target = _check_target(target_overlap)
    if target == 1.0:
        return 0.0
    if v.second_moment == 0.0:
        return math.inf
    return (math.pi / math.sqrt(6.0)) * math.sqrt(1.0 - target) / math.sqrt(v.second_moment)


def _accumulated_phases(
    oe: EnergyBasisOperator, energies: np.ndarray, s_grid: np.ndarray, t: float
) -> tuple[np.ndarray, np.ndarray]:
    """Per-pair accumulated gaps ``int_0^t (E_j(s) - E_k(s)) ds`` and pair weights.

    ``energies`` holds ``E_j(s)`` sampled time-major, shape ``(len(s_grid), d)``;
    integration is by the trapezoid rule on the caller's grid, with linear
    interpolation for a ``t`` between samples.
    """
    s_grid = np.asarray(s_grid, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if energies.shape != (s_grid.size, oe.dim):
        raise ValueError(
            f"energy trajectories must have shape {(s_grid.size, oe.dim)}, got {energies.shape}"
        )
    if s_grid[0] > 0.0 or t > s_grid[-1] + 1e-12 or t < 0.0:
        raise ValueError(f"grid [{s_grid[0]}, {s_grid[-1]}] does not cover [0, {t}]")
    cumulative = cumulative_trapezoid(energies, s_grid, axis=0, initial=0.0)
    phases = np.empty(oe.dim)
    for j in range(oe.dim):
        phases[j] = np.interp(t, s_grid, cumulative[:, j])
    w = np.abs(oe.elements) ** 2
    norm_sq = float(w.sum())
    if norm_sq == 0.0:
        raise ValueError("zero operator has no flow")
    pair_phase = phases[:, None] - phases[None, :]
    return pair_phase, w / norm_sq


def driven_ml_floor(
    oe: EnergyBasisOperator, energies: np.ndarray, s_grid: np.ndarray, t: float
) -> float:
    """Linear overlap floor for a driven Hamiltonian with stationary eigenvectors.

    The static gap ``delta * t`` is replaced by the accumulated gap
    ``int_0^t delta(s) ds``; for constant trajectories this reduces exactly to
    the static floor.
    """
    pair_phase, w = _accumulated_phases(oe, energies, s_grid, t)
    return 1.0 - alpha_constant() * float((w * np.abs(pair_phase)).sum())


def driven_overlap(
    oe: EnergyBasisOperator, energies: np.ndarray, s_grid: np.ndarray, t: float
) -> complex:
    """Realized overlap ``sum w_jk exp(i int_0^t delta_jk ds)`` of the driven flow."""
    pair_phase, w = _accumulated_phases(oe, energies, s_grid, t)
    return complex((w * np.exp(1j * pair_phase)).sum())


def driven_ml_floor_curve(
    oe: EnergyBasisOperator, energies: np.ndarray, s_grid: np.ndarray
) -> BoundCurve:
    """The driven floor evaluated at every grid point."""
    s_grid = np.asarray(s_grid, dtype=float)
    values = np.array([driven_ml_floor(oe, energies, s_grid, t) for t in s_grid])
    return BoundCurve(grid=s_grid, values=values, kind="driven_ml")


def operator_angle(overlap_re: float) -> float:
    """Angle ``arccos`` of the real overlap, in ``[0, pi]``.

    Arguments are clamped to ``[-1, 1]``; excursions beyond 1e-9 are rejected
    as genuine errors rather than roundoff.
    """
    x = float(overlap_re)
    if abs(x) > 1.0 + ANGLE_CLAMP_TOL:
        raise ValueError(f"overlap {x!r} lies outside [-1, 1] beyond tolerance")
    if abs(x) > 1.0:
        logger.debug("clamping arccos argument %r to [-1, 1]", x)
        x = max(-1.0, min(1.0, x))
    return math.acos(x)
