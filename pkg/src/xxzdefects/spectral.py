"""Dense symmetric eigendecomposition and spectral time evolution.

Time is measured in units of 1/J with hbar = 1.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NotFoundError, NumericError

SYMMETRY_TOL = 1e-12
RESIDUAL_TOL = 1e-10
DEGENERACY_TOL = 1e-8


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self):
        return len(self.values)

    def degenerate_mask(self, tol=DEGENERACY_TOL):
        """True for every level that has a near-equal neighbour."""
        return degenerate_mask(self.values, tol)


@dataclass(frozen=True)
class SectorState:
    basis: object
    amplitudes: np.ndarray

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2


def degenerate_mask(values, tol=DEGENERACY_TOL):
    values = np.asarray(values)
    gaps = np.diff(values)
    scale = np.maximum(1.0, np.abs(values[:-1]))
    close = gaps < tol * scale
    mask = np.zeros(len(values), dtype=bool)
    mask[:-1] |= close
    mask[1:] |= close
    return mask


def eigh(matrix, check=True):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a real symmetric matrix.

    Backed by LAPACK ``syevd`` via numpy. With ``check`` the residual and
    orthonormality bounds are verified and a :class:`NumericError` raised if
    either is violated.
    """
    H = np.asarray(matrix, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {H.shape}")
    asym = np.max(np.abs(H - H.T)) if H.size else 0.0
    if asym > SYMMETRY_TOL:
        raise InvalidArgumentError(f"matrix not symmetric (max |H - H^T| = {asym:.3e})")
    try:
        values, vectors = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver did not converge for dim={H.shape[0]}: {exc}") from exc
    decomp = EigenDecomposition(values, vectors)
    if check and H.size:
        n = H.shape[0]
        bound = RESIDUAL_TOL * max(1.0, np.max(np.abs(H)) * n)
        residual = np.max(np.linalg.norm(H @ vectors - vectors * values, axis=0))
        ortho = np.max(np.abs(vectors.T @ vectors - np.eye(n)))
        if not (residual <= bound and ortho <= RESIDUAL_TOL):
            raise NumericError(
                f"eigendecomposition failed checks: residual={residual:.3e} "
                f"(bound {bound:.3e}), orthonormality={ortho:.3e}"
            )
    return decomp


def state_from_register(basis, register):
    amps = np.zeros(len(basis), dtype=complex)
    try:
        amps[basis.index_of[int(register)]] = 1.0
    except KeyError:
        raise NotFoundError(f"register {int(register):#b} not in sector N={basis.N}") from None
    return SectorState(basis, amps)


def evolve_state(decomp, initial, t):
    """Propagate ``initial`` to time ``t`` (scalar) or a 1-D array of times.

    For an array the returned state holds amplitudes of shape ``(len(t), dim)``.
    """
    psi0 = np.asarray(initial.amplitudes, dtype=complex)
    if psi0.shape[0] != decomp.dim:
        raise InvalidArgumentError(
            f"state dimension {psi0.shape[0]} != decomposition dimension {decomp.dim}"
        )
    if np.ndim(t) == 0 and t == 0:
        return SectorState(initial.basis, psi0.copy())
    V = decomp.vectors
    coeffs = V.T @ psi0
    phases = np.exp(-1j * np.multiply.outer(np.asarray(t, dtype=float), decomp.values))
    amps = (phases * coeffs) @ V.T
    amps[np.asarray(t) == 0] = psi0
    return SectorState(initial.basis, amps)


def register_probability(state, register):
    try:
        i = state.basis.index_of[int(register)]
    except KeyError:
        raise NotFoundError(f"register {int(register):#b} not in sector N={state.basis.N}") from None
    return np.abs(state.amplitudes[..., i]) ** 2


def expectation(matrix, state):
    psi = state.amplitudes
    return np.real(np.einsum("...i,ij,...j->...", psi.conj(), matrix, psi))
