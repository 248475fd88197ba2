"""Dynamical susceptibilities, the Kubo response, and three competing ceilings.

The causal susceptibility ``chi_AV(t) = -i theta(t) <[A_I(t), V]>`` fixes the
linear response to a weak drive. Three upper bounds compete: a constant one
from the uncertainty relation, a temperature-dependent constant one from the
Bogoliubov inequality, and a time-linear one from the speed limit on operator
flows (for ``A = V``). Crossover times mark where each takes over.

The Bogoliubov ceiling is implemented in two variants: ``"derived"`` squares
the inequality directly and is the one guaranteed to dominate ``|chi|``;
``"as_printed"`` inverts the temperature ratio and is kept only for
comparison, since it demonstrably fails (see the regression tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaps import anchored_sum
from .linalg import (
    DensityMatrix,
    Spectrum,
    assert_hermitian,
    eigh,
    gibbs,
    to_energy_basis,
)

__all__ = [
    "SusceptibilityCurve",
    "CrossoverTimes",
    "BoundTensor",
    "susceptibility_curve",
    "kubo_response",
    "heisenberg_ceiling",
    "bogoliubov_temperature",
    "bogoliubov_ceiling",
    "qsl_ceiling",
    "tau_qsl",
    "crossover_times",
    "bound_tensor",
]

_REALITY_TOL = 1e-10


@dataclass(frozen=True)
class SusceptibilityCurve:
    """Real susceptibility samples on a ``t >= 0`` grid (``theta(0) = 1``)."""

    grid: np.ndarray
    values: np.ndarray
    pair: tuple[str, str] = ("A", "V")

    def __post_init__(self) -> None:
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.shape != v.shape or g.ndim != 1:
            raise ValueError("grid and values must be matching 1-d arrays")
        if g.size and g[0] < 0:
            raise ValueError("susceptibility is defined on t >= 0")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)


def _thermal(h0: np.ndarray, beta: float) -> tuple[Spectrum, DensityMatrix]:
    spectrum = eigh(h0)
    return spectrum, gibbs(spectrum, beta)


def _thermal_expect(op: np.ndarray, spectrum: Spectrum, rho: DensityMatrix) -> float:
    diag = np.einsum("ij,ji->i", spectrum.vectors.conj().T @ op, spectrum.vectors)
    return float((rho.populations * diag).real.sum())


def _variance(op: np.ndarray, spectrum: Spectrum, rho: DensityMatrix) -> float:
    mean = _thermal_expect(op, spectrum, rho)
    mean_sq = _thermal_expect(op @ op, spectrum, rho)
    return max(mean_sq - mean**2, 0.0)


def susceptibility_curve(
    a_op: np.ndarray, v_op: np.ndarray, h0: np.ndarray, beta: float, grid
) -> SusceptibilityCurve:
    """Sample ``chi_AV(t) = -i <[A_I(t), V]>`` over the thermal state of ``h0``.

    The commutator expectation is purely imaginary for Hermitian ``A, V``, so
    the result is real; residual imaginary parts beyond roundoff are rejected.
    For ``A = V`` this equals twice the imaginary part of the autocorrelation
    function of ``V``.
    """
    a_op = assert_hermitian(a_op)
    v_op = assert_hermitian(v_op)
    grid = np.asarray(grid, dtype=float)
    if grid.size and grid.min() < 0:
        raise ValueError("susceptibility grid must satisfy t >= 0")
    spectrum, rho = _thermal(h0, beta)
    ae = to_energy_basis(a_op, spectrum).elements
    ve = to_energy_basis(v_op, spectrum).elements
    e = spectrum.energies
    p = rho.populations
    # chi(t) = -i sum_kj p_k [A_kj V_jk e^{i(E_k-E_j)t} - V_kj A_jk e^{i(E_j-E_k)t}]
    w1 = (p[:, None] * ae * ve.T).ravel()
    w2 = (p[:, None] * ve * ae.T).ravel()
    gaps = (e[:, None] - e[None, :]).ravel()
    phases = np.exp(1j * np.outer(grid, gaps))
    raw = -1j * (phases @ w1 - phases.conj() @ w2)
    max_im = float(np.abs(raw.imag).max(initial=0.0))
    scale = max(float(np.abs(raw.real).max(initial=0.0)), 1.0)
    if max_im > _REALITY_TOL * scale:
        raise ValueError(f"susceptibility came out complex: max |Im| = {max_im:.3e}")
    return SusceptibilityCurve(grid=grid, values=raw.real)


def kubo_response(chi: SusceptibilityCurve, drive: np.ndarray, coupling: float) -> np.ndarray:
    """Causal convolution ``lambda * int_0^t chi(t - s) f(s) ds`` by the trapezoid rule.

    ``drive`` must be sampled on the susceptibility's own (uniform) grid and
    is understood to vanish for ``t <= 0``.
    """
    drive = np.asarray(drive, dtype=float)
    grid = chi.grid
    if drive.shape != grid.shape:
        raise ValueError(f"drive shape {drive.shape} does not match grid {grid.shape}")
    if grid.size < 2:
        return coupling * np.zeros_like(drive)
    steps = np.diff(grid)
    dt = float(steps[0])
    if not np.allclose(steps, dt, rtol=1e-9, atol=0.0):
        raise ValueError("kubo_response needs a uniform grid")
    # full discrete convolution, then trapezoid end-corrections per output time
    full = np.convolve(chi.values, drive)[: grid.size] * dt
    ends = 0.5 * dt * (chi.values * drive[0] + chi.values[0] * drive)
    out = full - ends
    out[0] = 0.0
    return coupling * out


def heisenberg_ceiling(a_op: np.ndarray, v_op: np.ndarray, h0: np.ndarray, beta: float) -> float:
    """Constant ceiling ``2 dA dV`` from the uncertainty relation."""
    a_op = assert_hermitian(a_op)
    v_op = assert_hermitian(v_op)
    spectrum, rho = _thermal(h0, beta)
    return 2.0 * math.sqrt(_variance(a_op, spectrum, rho) * _variance(v_op, spectrum, rho))


def _double_commutator_expect(
    v_op: np.ndarray, h0: np.ndarray, spectrum: Spectrum, rho: DensityMatrix
) -> float:
    vhv = v_op @ h0 @ v_op
    dc = 2.0 * vhv - h0 @ v_op @ v_op - v_op @ v_op @ h0
    value = _thermal_expect(dc, spectrum, rho)
    # <[V,[H,V]]> is nonnegative for thermal states; anything below roundoff is a bug
    if value < -1e-10 * max(1.0, abs(value)):
        raise ValueError(f"double commutator expectation is negative: {value!r}")
    return max(value, 0.0)


def bogoliubov_temperature(
    a_op: np.ndarray, v_op: np.ndarray, h0: np.ndarray, beta: float
) -> float:
    """Characteristic temperature ``<A^2> <[V,[H0,V]]> / (4 (dA dV)^2)``."""
    a_op = assert_hermitian(a_op)
    v_op = assert_hermitian(v_op)
    spectrum, rho = _thermal(h0, beta)
    var_a = _variance(a_op, spectrum, rho)
    var_v = _variance(v_op, spectrum, rho)
    if var_a == 0.0 or var_v == 0.0:
        raise ValueError("Bogoliubov temperature needs nonzero variances")
    a_sq = _thermal_expect(a_op @ a_op, spectrum, rho)
    dc = _double_commutator_expect(v_op, h0, spectrum, rho)
    return a_sq * dc / (4.0 * var_a * var_v)


def bogoliubov_ceiling(
    a_op: np.ndarray,
    v_op: np.ndarray,
    h0: np.ndarray,
    beta: float,
    variant: str = "derived",
) -> float:
    """Temperature-dependent constant ceiling from the Bogoliubov inequality.

    ``variant="derived"`` evaluates ``sqrt(<A^2> <[V,[H0,V]]> / T)``, i.e.
    ``2 sqrt(T_B/T) dV dA``, which provably dominates ``|chi|`` for thermal
    states. ``variant="as_printed"`` flips the ratio to ``sqrt(T/T_B)`` and is
    retained only to document that form; it is violated already by a qubit.
    """
    if variant not in ("derived", "as_printed"):
        raise ValueError(f"unknown variant {variant!r}")
    if beta <= 0:
        raise ValueError("Bogoliubov ceiling needs beta > 0")
    a_op = assert_hermitian(a_op)
    v_op = assert_hermitian(v_op)
    spectrum, rho = _thermal(h0, beta)
    var_a = _variance(a_op, spectrum, rho)
    var_v = _variance(v_op, spectrum, rho)
    if variant == "derived":
        a_sq = _thermal_expect(a_op @ a_op, spectrum, rho)
        dc = _double_commutator_expect(v_op, h0, spectrum, rho)
        return math.sqrt(a_sq * dc * beta)
    t_b = bogoliubov_temperature(a_op, v_op, h0, beta)
    temperature = 1.0 / beta
    return 2.0 * math.sqrt(temperature / t_b) * math.sqrt(var_a * var_v)


def _anchored(v_op: np.ndarray, h0: np.ndarray, beta: float) -> float:
    spectrum, rho = _thermal(h0, beta)
    ve = to_energy_basis(assert_hermitian(v_op), spectrum)
    return anchored_sum(ve, rho, spectrum.ground_energy)


def qsl_ceiling(v_op: np.ndarray, h0: np.ndarray, beta: float, t):
    """Time-linear ceiling ``2 t <V {H0 - E_0, V}>`` on ``|chi_VV(t)|``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("time must be nonnegative")
    return 2.0 * t * _anchored(v_op, h0, beta)


def tau_qsl(v_op: np.ndarray, h0: np.ndarray, beta: float) -> float:
    """Timescale ``<V {H0 - E_0, V}>^(-1/3)`` of the time-linear ceiling."""
    anchored = _anchored(v_op, h0, beta)
    if anchored <= 0.0:
        raise ValueError("anchored expectation vanishes; no QSL timescale")
    return anchored ** (-1.0 / 3.0)


@dataclass(frozen=True)
class CrossoverTimes:
    """Times where the time-linear ceiling meets the two constant ones.

    ``tau_b`` uses the as-printed temperature ratio, ``tau_b_derived`` the
    derived one (the intersection with the ceiling that actually holds);
    ``tau_h`` is the intersection with the uncertainty-relation ceiling.
    """

    tau_b: float
    tau_h: float
    tau_b_derived: float


def crossover_times(
    v_op: np.ndarray, a_op: np.ndarray, h0: np.ndarray, beta: float
) -> CrossoverTimes:
    """Ceiling intersection times for the ``A = V`` setting."""
    if not np.allclose(np.asarray(a_op, dtype=complex), np.asarray(v_op, dtype=complex)):
        raise ValueError("crossover times are defined for A = V")
    spectrum, rho = _thermal(h0, beta)
    var_v = _variance(assert_hermitian(v_op), spectrum, rho)
    tau3 = tau_qsl(v_op, h0, beta) ** 3
    t_b = bogoliubov_temperature(v_op, v_op, h0, beta)
    temperature = 1.0 / beta
    tau_h = var_v * tau3
    return CrossoverTimes(
        tau_b=var_v * math.sqrt(temperature / t_b) * tau3,
        tau_h=tau_h,
        tau_b_derived=var_v * math.sqrt(t_b / temperature) * tau3,
    )


@dataclass(frozen=True)
class BoundTensor:
    """Elementwise ceilings for families of observables and perturbations.

    ``qsl_slopes[i]`` is the linear-ceiling slope ``2 <V_i {H0 - E_0, V_i}>``,
    defined only for diagonal pairs with ``A_i = V_i`` (NaN otherwise).
    """

    heisenberg: np.ndarray
    bogoliubov: np.ndarray
    qsl_slopes: np.ndarray


def bound_tensor(
    a_ops: list[np.ndarray],
    v_ops: list[np.ndarray],
    h0: np.ndarray,
    beta: float,
    variant: str = "derived",
) -> BoundTensor:
    """Ceilings for every ``(A_i, V_j)`` pair, e.g. conductivity or magnetization tensors."""
    if not a_ops or not v_ops:
        raise ValueError("need at least one observable and one perturbation")
    n, m = len(a_ops), len(v_ops)
    heis = np.empty((n, m))
    bog = np.empty((n, m))
    for i, a in enumerate(a_ops):
        for j, v in enumerate(v_ops):
            heis[i, j] = heisenberg_ceiling(a, v, h0, beta)
            bog[i, j] = bogoliubov_ceiling(a, v, h0, beta, variant=variant)
    slopes = np.full(min(n, m), np.nan)
    for i in range(min(n, m)):
        if np.allclose(
            np.asarray(a_ops[i], dtype=complex), np.asarray(v_ops[i], dtype=complex)
        ):
            slopes[i] = 2.0 * _anchored(v_ops[i], h0, beta)
    return BoundTensor(heisenberg=heis, bogoliubov=bog, qsl_slopes=slopes)
