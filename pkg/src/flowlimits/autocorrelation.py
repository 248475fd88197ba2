"""Finite-temperature autocorrelation functions and their decay bounds.

``C_O(t) = Tr(O_t^dag O_0 rho)`` for a stationary state is the characteristic
function of the correlation gap distribution. Its real part decays no faster
than a quadratic law set by the flow velocity and a linear law set by the
ground-anchored gap sum; its imaginary part grows no faster than linearly.
The exactly solvable two-level system is included in closed form as an
independent oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .gaps import anchored_sum, char_function, correlation_distribution
from .linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityMatrix,
    EnergyBasisOperator,
    hermiticity_defect,
)
from .speed_limits import alpha_constant

__all__ = [
    "CorrelationCurve",
    "QubitParams",
    "QubitReference",
    "qubit_hamiltonian",
    "autocorr_curve",
    "velocity_moment",
    "mt_autocorr_floor",
    "ml_autocorr_floor",
    "autocorr_crossover",
    "im_autocorr_ceiling",
    "qubit_reference",
]


@dataclass(frozen=True)
class CorrelationCurve:
    """Sampled complex autocorrelation function on a time grid."""

    grid: np.ndarray
    values: np.ndarray
    c0: float
    normalized: bool = False

    def __post_init__(self) -> None:
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("grid and values must be matching 1-d arrays")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        if g.size and g[0] == 0.0 and abs(v[0] - self.c0) > 1e-12 * max(1.0, abs(self.c0)):
            raise ValueError(f"curve value at t=0 is {v[0]!r}, expected c0 = {self.c0!r}")
        if self.normalized and abs(self.c0 - 1.0) > 1e-12:
            raise ValueError("a normalized curve must have c0 = 1")

    def normalized_copy(self) -> "CorrelationCurve":
        """Curve divided by its initial value, as used in figures."""
        if self.c0 <= 0.0:
            raise ValueError("cannot normalize a curve with nonpositive c0")
        return CorrelationCurve(
            grid=self.grid, values=self.values / self.c0, c0=1.0, normalized=True
        )


@dataclass(frozen=True)
class QubitParams:
    """Two-level Hamiltonian coefficients ``k*1 + a sx + b sy + c sz`` and a temperature.

    The identity coefficient ``k`` shifts all energies uniformly and cannot
    affect gaps or thermal weights; it is kept as a field so that invariance
    is testable.
    """

    a: float
    b: float
    c: float
    beta: float
    k: float = 0.0

    def __post_init__(self) -> None:
        if self.r == 0.0:
            raise ValueError("Pauli coefficients (a, b, c) cannot all vanish")
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"inverse temperature must be finite and >= 0, got {self.beta!r}")

    @property
    def r(self) -> float:
        return math.sqrt(self.a**2 + self.b**2 + self.c**2)


def qubit_hamiltonian(q: QubitParams) -> np.ndarray:
    """Dense 2x2 Hamiltonian for the given coefficients."""
    return q.k * np.eye(2, dtype=complex) + q.a * SIGMA_X + q.b * SIGMA_Y + q.c * SIGMA_Z


def autocorr_curve(oe: EnergyBasisOperator, rho: DensityMatrix, grid) -> CorrelationCurve:
    """Autocorrelation ``C_O(t) = Tr(O_t^dag O_0 rho)`` sampled on ``grid``.

    Hermitian observables are the intended use; non-Hermitian input is
    accepted but flagged, since the symmetric/antisymmetric split loses its
    usual meaning there.
    """
    if hermiticity_defect(oe.elements) > 1e-10 * max(1.0, float(np.abs(oe.elements).max())):
        warnings.warn("autocorrelation of a non-Hermitian operator", stacklevel=2)
    dist = correlation_distribution(oe, rho)
    grid = np.asarray(grid, dtype=float)
    values = char_function(dist, grid)
    return CorrelationCurve(grid=grid, values=values, c0=dist.total_weight)


def velocity_moment(oe: EnergyBasisOperator, rho: DensityMatrix) -> float:
    """Squared flow velocity ``||[H, O sqrt(rho)]||^2 = sum |O_jk|^2 p_k (E_j - E_k)^2``.

    Time independent along the flow; sets the quadratic decay scale of the
    autocorrelation function.
    """
    if rho.dim != oe.dim:
        raise ValueError(f"dimension mismatch: operator {oe.dim}, state {rho.dim}")
    e = oe.spectrum.energies
    gaps_sq = (e[:, None] - e[None, :]) ** 2
    return float(((np.abs(oe.elements) ** 2) * rho.populations[None, :] * gaps_sq).sum())


def mt_autocorr_floor(c0: float, velocity_moment: float, t):
    """Quadratic floor ``C(0) - <Odot^2> t^2 / 2`` under ``Re C_O(t)``."""
    t = np.asarray(t, dtype=float)
    return c0 - 0.5 * velocity_moment * t**2


def ml_autocorr_floor(c0: float, anchored: float, t):
    """Linear floor ``C(0) - alpha <O {H - E_0, O}> t`` under ``Re C_O(t)``."""
    if anchored < 0:
        raise ValueError(f"anchored gap sum must be >= 0, got {anchored!r}")
    t = np.asarray(t, dtype=float)
    return c0 - alpha_constant() * anchored * t


def autocorr_crossover(velocity_moment: float, anchored: float) -> float:
    """Time ``2 alpha <O {H - E_0, O}> / <Odot^2>`` where the linear floor takes over.

    The quadratic floor is the tighter one strictly before this time, the
    linear one after; infinite (no crossover) for a frozen operator.
    """
    if velocity_moment < 0:
        raise ValueError("velocity moment must be >= 0")
    if velocity_moment == 0.0:
        return math.inf
    return 2.0 * alpha_constant() * anchored / velocity_moment


def im_autocorr_ceiling(anchored: float, t):
    """Linear ceiling ``<O^dag {H - E_0, O}> t`` over ``|Im C_O(t)|``."""
    t = np.asarray(t, dtype=float)
    return anchored * t


@dataclass(frozen=True)
class QubitReference:
    """Closed-form two-level autocorrelation and its bound scales.

    ``im`` carries the sign of the direct trace ``Tr(O_t^dag O_0 rho)``:
    for the thermal two-level system it starts *negative*,
    ``Im C = -((b^2+c^2)/r^2) tanh(beta r) sin(2 r t)``.
    """

    re: np.ndarray
    im: np.ndarray
    mt_scale: float
    ml_scale: float
    liouvillian_ml_scale: float


def qubit_reference(q: QubitParams, t) -> QubitReference:
    """Exact two-level autocorrelation of ``sigma_x`` under ``k + a sx + b sy + c sz``.

    Returns the closed forms (with ``C(0) = 1``) together with the three bound
    scales: the squared velocity ``4(b^2+c^2)``, the anchored sum
    ``(2/r)(2a^2/(1+e^{2 beta r}) + b^2 + c^2)``, and the gap-based linear
    scale ``(2/r)(b^2+c^2)``.
    """
    t = np.asarray(t, dtype=float)
    r = q.r
    bc = q.b**2 + q.c**2
    re = (q.a**2 + bc * np.cos(2.0 * r * t)) / r**2
    im = -(bc / r**2) * math.tanh(q.beta * r) * np.sin(2.0 * r * t)
    mt_scale = 4.0 * bc
    ml_scale = (2.0 / r) * (2.0 * q.a**2 / (1.0 + math.exp(min(2.0 * q.beta * r, 700.0))) + bc)
    liouvillian_ml_scale = (2.0 / r) * bc
    return QubitReference(
        re=re,
        im=im,
        mt_scale=mt_scale,
        ml_scale=ml_scale,
        liouvillian_ml_scale=liouvillian_ml_scale,
    )
