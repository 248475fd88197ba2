"""Dense complex Hermitian linear algebra for operator flows.

Everything downstream runs in the energy eigenbasis: this module turns a
Hermitian matrix into a :class:`Spectrum`, expresses operators in that basis,
evolves them in the Heisenberg picture, and provides the Hilbert-Schmidt
geometry (inner product, norm, vectorization) together with the Liouvillian
superoperator and Gibbs states.

Conventions: natural units ``hbar = k_B = 1``; matrices are dense complex
``numpy`` arrays; eigenvalues are sorted ascending. Dense storage targets
dimensions up to a few hundred.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "Spectrum",
    "EnergyBasisOperator",
    "DensityMatrix",
    "hermiticity_defect",
    "is_hermitian",
    "assert_hermitian",
    "eigh",
    "to_energy_basis",
    "evolve_heisenberg",
    "hs_inner",
    "hs_norm",
    "vectorize",
    "build_liouvillian",
    "gibbs",
    "commutator",
    "anticommutator",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

#: Hermiticity defect tolerance, relative to the largest entry magnitude.
HERMITICITY_RTOL = 1e-12


def _as_square_matrix(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValueError(f"{name} has non-finite entries")
    return a


def hermiticity_defect(h: np.ndarray) -> float:
    """Largest entry of ``|H - H^dag|``."""
    h = _as_square_matrix(h)
    return float(np.abs(h - h.conj().T).max())


def is_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> bool:
    h = _as_square_matrix(h)
    scale = max(float(np.abs(h).max()), 1.0)
    return hermiticity_defect(h) <= rtol * scale


def assert_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Return ``h`` as a complex array, raising if it is not Hermitian.

    The error message reports the symmetry-violation magnitude so callers can
    tell roundoff from genuinely non-Hermitian input.
    """
    h = _as_square_matrix(h)
    defect = hermiticity_defect(h)
    scale = max(float(np.abs(h).max()), 1.0)
    if defect > rtol * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |H - H^dag| = {defect:.3e} "
            f"exceeds {rtol:.1e} * {scale:.3e}"
        )
    return h


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Attributes
    ----------
    energies : ndarray
        Real eigenvalues, ascending.
    vectors : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def max_energy(self) -> float:
        return float(self.energies[-1])


@dataclass(frozen=True)
class EnergyBasisOperator:
    """Matrix elements ``O_jk`` of an operator in the energy eigenbasis."""

    elements: np.ndarray
    spectrum: Spectrum

    @property
    def dim(self) -> int:
        return self.elements.shape[0]

    def hs_norm(self) -> float:
        return hs_norm(self.elements)


@dataclass(frozen=True)
class DensityMatrix:
    """Stationary state: populations ``p_k >= 0`` in the energy basis."""

    populations: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.populations, dtype=float)
        if p.ndim != 1:
            raise ValueError("populations must be a 1-d array")
        if np.any(p < -1e-14):
            raise ValueError(f"negative population: min = {p.min():.3e}")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"populations sum to {total!r}, expected 1")
        object.__setattr__(self, "populations", np.clip(p, 0.0, None))

    @property
    def dim(self) -> int:
        return self.populations.shape[0]


def eigh(h: np.ndarray) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    ValueError
        If the input fails the Hermiticity check; the message carries the
        violation magnitude.
    """
    h = assert_hermitian(h)
    energies, vectors = np.linalg.eigh(h)
    return Spectrum(energies=energies, vectors=vectors)


def to_energy_basis(o: np.ndarray, spectrum: Spectrum) -> EnergyBasisOperator:
    """Express an operator in the energy eigenbasis, ``V^dag O V``."""
    o = _as_square_matrix(o, "operator")
    if o.shape[0] != spectrum.dim:
        raise ValueError(
            f"dimension mismatch: operator is {o.shape[0]}, spectrum is {spectrum.dim}"
        )
    v = spectrum.vectors
    return EnergyBasisOperator(elements=v.conj().T @ o @ v, spectrum=spectrum)


def evolve_heisenberg(oe: EnergyBasisOperator, t: float) -> EnergyBasisOperator:
    """Heisenberg evolution ``O_t = U^dag O U`` for ``U = exp(-iHt)``.

    In the energy basis this is elementwise: ``(O_t)_jk = exp(i (E_j - E_k) t) O_jk``.
    """
    e = oe.spectrum.energies
    phases = np.exp(1j * t * (e[:, None] - e[None, :]))
    return EnergyBasisOperator(elements=oe.elements * phases, spectrum=oe.spectrum)


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dag B)``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def vectorize(a: np.ndarray) -> np.ndarray:
    """Flatten an operator to a unit vector of length ``d**2`` (row-major).

    The normalization makes the Euclidean inner product of two vectorized
    operators equal to their normalized Hilbert-Schmidt overlap.
    """
    a = _as_square_matrix(a, "operator")
    norm = hs_norm(a)
    if norm == 0.0:
        raise ValueError("cannot vectorize the zero operator")
    return a.ravel() / norm


def build_liouvillian(h: np.ndarray) -> np.ndarray:
    """Superoperator ``i (H (x) 1 - 1 (x) H^T)`` acting on row-major vectorized operators.

    Anti-Hermitian; its eigenvalues are ``i`` times the energy gaps. Applied to
    ``vec(O)`` it returns ``vec(i [H, O])``.
    """
    h = assert_hermitian(h)
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    return 1j * (np.kron(h, eye) - np.kron(eye, h.T))


def gibbs(spectrum: Spectrum, beta: float) -> DensityMatrix:
    """Thermal populations ``exp(-beta E_k) / Z`` at inverse temperature ``beta``.

    Exponentials are taken on ``E_k - E_0`` so large ``beta`` cannot overflow;
    the populations are exactly invariant under uniform energy shifts.
    """
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"inverse temperature must be finite and >= 0, got {beta!r}")
    shifted = spectrum.energies - spectrum.ground_energy
    weights = np.exp(-beta * shifted)
    return DensityMatrix(populations=weights / weights.sum())


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b + b @ a
