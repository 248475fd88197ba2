"""Shared helpers: independent dense-matrix oracles built on scipy.linalg.expm.

The oracles deliberately avoid the library's eigendecomposition path so that
agreement between the two is a real cross-check.
"""

from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import expm


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def expm_evolve(h: np.ndarray, o: np.ndarray, t: float) -> np.ndarray:
    """Heisenberg evolution via the matrix exponential, no eigenbasis involved."""
    u = expm(-1j * t * h)
    return u.conj().T @ o @ u


def dense_overlap(h: np.ndarray, o: np.ndarray, t: float) -> complex:
    """Normalized operator overlap Tr(O^dag O_t) / ||O||^2 via expm."""
    ot = expm_evolve(h, o, t)
    return complex(np.vdot(o, ot) / np.vdot(o, o))


def dense_gibbs_matrix(h: np.ndarray, beta: float) -> np.ndarray:
    """Full thermal density matrix exp(-beta H)/Z via expm on shifted energies."""
    shift = np.min(np.linalg.eigvalsh(h))
    rho = expm(-beta * (h - shift * np.eye(h.shape[0])))
    return rho / np.trace(rho).real


def dense_autocorr(h: np.ndarray, o: np.ndarray, beta: float, t: float) -> complex:
    """C_O(t) = Tr(O_t^dag O_0 rho) entirely by dense matrix products."""
    rho = dense_gibbs_matrix(h, beta)
    ot = expm_evolve(h, o, t)
    return complex(np.trace(ot.conj().T @ o @ rho))


def read_curve_csv(path):
    """Parse a runner CSV: '#' metadata lines, header, float rows."""
    metadata, header, rows = {}, None, []
    for line in open(path, encoding="utf-8"):
        line = line.rstrip("\n")
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            metadata[key.strip()] = value.strip()
        elif header is None:
            header = line.split(",")
        else:
            rows.append([float(x) for x in line.split(",")])
    return metadata, header, np.array(rows)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
