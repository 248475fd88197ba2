"""Weighted energy-gap distributions.

The central reduction of the library: a Hamiltonian spectrum and an operator
(optionally with a stationary state) collapse to pairs ``(gap, weight)``.
Overlaps and autocorrelation functions are the characteristic function of
that distribution; flow speeds and bound slopes are its moments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, EnergyBasisOperator

__all__ = [
    "WeightedGapDistribution",
    "overlap_distribution",
    "correlation_distribution",
    "char_function",
    "first_moment",
    "abs_moment",
    "second_moment",
    "anchored_sum",
]

#: Gaps closer than this are merged into a single weighted entry.
GAP_MERGE_TOL = 1e-12
#: Entries lighter than this fraction of the total weight are dropped.
WEIGHT_DROP_RTOL = 1e-15
#: Time-axis chunk for characteristic-function evaluation (memory control).
_CHAR_CHUNK = 64


@dataclass(frozen=True)
class WeightedGapDistribution:
    """Pairs ``(delta_m, w_m)`` of real gaps and nonnegative weights."""

    deltas: np.ndarray
    weights: np.ndarray
    normalized: bool

    def __post_init__(self) -> None:
        d = np.asarray(self.deltas, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if d.shape != w.shape or d.ndim != 1:
            raise ValueError("deltas and weights must be matching 1-d arrays")
        if np.any(w < 0):
            raise ValueError(f"negative weight: min = {w.min():.3e}")
        object.__setattr__(self, "deltas", d)
        object.__setattr__(self, "weights", w)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def __len__(self) -> int:
        return self.deltas.shape[0]


def _compress(deltas: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Merge near-equal gaps and drop negligible weights.

    Pure optimization: moments and characteristic functions change by less
    than ~1e-12 of the total weight (merge width and drop threshold are both
    below that).
    """
    total = weights.sum()
    if total > 0:
        keep = weights > WEIGHT_DROP_RTOL * total
        deltas, weights = deltas[keep], weights[keep]
    if deltas.size == 0:
        return deltas, weights
    order = np.argsort(deltas, kind="stable")
    deltas, weights = deltas[order], weights[order]
    # group boundaries where consecutive sorted gaps differ by more than the tolerance
    new_group = np.empty(deltas.size, dtype=bool)
    new_group[0] = True
    np.greater(np.diff(deltas), GAP_MERGE_TOL, out=new_group[1:])
    group_id = np.cumsum(new_group) - 1
    n_groups = group_id[-1] + 1
    w_merged = np.bincount(group_id, weights=weights, minlength=n_groups)
    dw_merged = np.bincount(group_id, weights=deltas * weights, minlength=n_groups)
    d_first = deltas[new_group]
    # weight-averaged representative gap; fall back to the first member for zero-weight groups
    safe = w_merged > 0
    d_merged = np.where(safe, dw_merged / np.where(safe, w_merged, 1.0), d_first)
    return d_merged, w_merged


def overlap_distribution(oe: EnergyBasisOperator) -> WeightedGapDistribution:
    """Normalized distribution with entries ``(E_j - E_k, |O_jk|^2 / ||O||^2)``.

    Its characteristic function is the operator overlap of the Heisenberg
    flow generated by the operator's spectrum.
    """
    o = oe.elements
    norm_sq = float(np.vdot(o, o).real)
    if norm_sq == 0.0:
        raise ValueError("overlap distribution of the zero operator is undefined")
    e = oe.spectrum.energies
    deltas = (e[:, None] - e[None, :]).ravel()
    weights = (np.abs(o) ** 2).ravel() / norm_sq
    deltas, weights = _compress(deltas, weights)
    return WeightedGapDistribution(deltas=deltas, weights=weights, normalized=True)


def correlation_distribution(
    oe: EnergyBasisOperator, rho: DensityMatrix
) -> WeightedGapDistribution:
    """Unnormalized distribution whose characteristic function is ``C_O(t)``.

    Entries are ``(-(E_j - E_k), |O_jk|^2 p_k)``; the sign makes
    ``char_function`` reproduce ``Tr(O_t^dag O_0 rho)`` directly, and the
    total weight equals ``C_O(0)``.
    """
    if rho.dim != oe.dim:
        raise ValueError(f"dimension mismatch: operator {oe.dim}, state {rho.dim}")
    e = oe.spectrum.energies
    deltas = -(e[:, None] - e[None, :]).ravel()
    weights = ((np.abs(oe.elements) ** 2) * rho.populations[None, :]).ravel()
    deltas, weights = _compress(deltas, weights)
    return WeightedGapDistribution(deltas=deltas, weights=weights, normalized=False)


def char_function(dist: WeightedGapDistribution, t):
    """Characteristic function ``sum_m w_m exp(i delta_m t)``.

    Accepts a scalar or an array of times; evaluation is chunked over the
    time axis to bound memory on large distributions.
    """
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape, dtype=complex)
    for i in range(0, t_arr.size, _CHAR_CHUNK):
        chunk = t_arr[i : i + _CHAR_CHUNK]
        out[i : i + chunk.size] = np.exp(1j * np.outer(chunk, dist.deltas)) @ dist.weights
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out[0])
    return out


def _normalized_weights(dist: WeightedGapDistribution) -> np.ndarray:
    total = dist.total_weight
    if total <= 0.0:
        raise ValueError("moments of a zero-weight distribution are undefined")
    return dist.weights / total


def first_moment(dist: WeightedGapDistribution) -> float:
    """Mean gap ``<delta>`` of the weight-normalized distribution."""
    return float(_normalized_weights(dist) @ dist.deltas)


def abs_moment(dist: WeightedGapDistribution) -> float:
    """Mean absolute gap ``<|delta|>``: the linear-bound speed."""
    return float(_normalized_weights(dist) @ np.abs(dist.deltas))


def second_moment(dist: WeightedGapDistribution) -> float:
    """Mean squared gap ``<delta^2>``: the quadratic-bound speed squared."""
    return float(_normalized_weights(dist) @ dist.deltas**2)


def anchored_sum(oe: EnergyBasisOperator, rho: DensityMatrix, e0: float) -> float:
    """Ground-anchored gap sum ``sum_jk |O_jk|^2 p_k (E_j + E_k - 2 E_0)``.

    Equals the thermal expectation ``Tr(rho O^dag {H - E_0, O})`` and, since
    ``|E_j - E_k| <= E_j + E_k - 2 E_0``, dominates the unnormalized absolute
    gap moment of the correlation distribution.
    """
    if rho.dim != oe.dim:
        raise ValueError(f"dimension mismatch: operator {oe.dim}, state {rho.dim}")
    e = oe.spectrum.energies
    if e0 > e[0] + 1e-12 * max(1.0, float(np.abs(e).max())):
        raise ValueError(
            f"anchor {e0!r} exceeds the ground energy {e[0]!r}; the gap bound needs e0 <= min(E)"
        )
    w = (np.abs(oe.elements) ** 2) * rho.populations[None, :]
    anchored_gaps = (e[:, None] - e0) + (e[None, :] - e0)
    return float((w * anchored_gaps).sum())
