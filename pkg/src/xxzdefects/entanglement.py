"""Two-qubit reduced density matrices and Wootters concurrence.

Density matrices are plain ``(4, 4)`` complex arrays (or stacks ``(..., 4, 4)``)
in the basis order ``|11>, |10>, |01>, |00>``, the first slot being the first
site of the pair.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError, NumericError
from .hamiltonian import sector_hamiltonian
from .spectral import SectorState, eigh

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)

NEGATIVE_TOL = 1e-8
# eigenvalues of rho below this fraction of the largest are roundoff
RANK_TOL = 1e-13


@lru_cache(maxsize=64)
def _pair_layout(states_key, L, a, b):
    states = np.frombuffer(states_key, dtype=np.int64)
    occ_a = (states >> (a - 1)) & 1
    occ_b = (states >> (b - 1)) & 1
    slot = 2 * (1 - occ_a) + (1 - occ_b)
    env = states & ~((1 << (a - 1)) | (1 << (b - 1)))
    _, env_index = np.unique(env, return_inverse=True)
    return slot, env_index, int(env_index.max()) + 1 if len(env_index) else 0


def reduced_density(state, pair):
    """Trace out every site except ``pair`` (two distinct 1-based sites).

    ``state`` is a :class:`~xxzdefects.spectral.SectorState`; its amplitudes may
    carry leading batch axes, in which case a stack of matrices is returned.
    """
    basis = state.basis
    a, b = (int(n) for n in pair)
    if a == b or not (1 <= a <= basis.L and 1 <= b <= basis.L):
        raise InvalidArgumentError(f"pair {pair} must be two distinct sites in 1..{basis.L}")
    slot, env_index, n_env = _pair_layout(basis.states.tobytes(), basis.L, a, b)
    amps = np.asarray(state.amplitudes)
    blocks = np.zeros(amps.shape[:-1] + (n_env, 4), dtype=complex)
    blocks[..., env_index, slot] = amps
    return np.einsum("...ei,...ej->...ij", blocks, blocks.conj())


def check_density(rho, tol=1e-10):
    """Raise :class:`InvalidArgumentError` unless ``rho`` is a valid 2-qubit state."""
    rho = np.asarray(rho)
    if rho.shape[-2:] != (4, 4):
        raise InvalidArgumentError(f"expected 4x4 density matrices, got {rho.shape}")
    trace = np.trace(rho, axis1=-2, axis2=-1)
    if np.any(np.abs(trace - 1) > tol):
        raise InvalidArgumentError("density matrix trace differs from 1")
    if np.any(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))) > 1e-12):
        raise InvalidArgumentError("density matrix not Hermitian")
    if np.any(np.linalg.eigvalsh(rho) < -tol):
        raise InvalidArgumentError("density matrix has negative eigenvalues")


def spin_flip(rho):
    """Time-reversed matrix (sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    return YY @ np.conj(rho) @ YY


def wootters_lambdas(rho):
    """Square roots of the eigenvalues of rho * rho~, descending.

    Writes rho = X X^dagger from its eigendecomposition and takes the singular
    values of X^T (sigma_y x sigma_y) X, whose squares are the eigenvalues of
    rho * rho~. Unlike diagonalising the product directly this stays accurate
    for rank-deficient rho, where the product is defective.
    """
    rho = np.asarray(rho, dtype=complex)
    w, U = np.linalg.eigh(rho)
    if np.any(w < -NEGATIVE_TOL):
        raise NumericError(f"density matrix eigenvalue {w.min():.3e} < 0; malformed rho")
    scale = np.max(w, axis=-1, keepdims=True)
    w = np.where(w > RANK_TOL * scale, w, 0.0)
    X = U * np.sqrt(w)[..., None, :]
    tau = np.swapaxes(X, -1, -2) @ YY @ X
    return np.linalg.svd(tau, compute_uv=False)


def concurrence(rho):
    """Wootters concurrence; accepts one matrix or a stack."""
    lam = wootters_lambdas(rho)
    c = lam[..., 0] - lam[..., 1:].sum(axis=-1)
    c = np.clip(c, 0.0, 1.0)
    return float(c) if c.ndim == 0 else c


def pure_state_concurrence(amplitudes):
    """2|ad - bc| for a two-qubit pure state (a, b, c, d) in |11>,|10>,|01>,|00> order."""
    a, b, c, d = np.asarray(amplitudes, dtype=complex)
    return 2 * abs(a * d - b * c)


def binary_entropy(p):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = -p * np.log2(p) - (1 - p) * np.log2(1 - p)
    return np.where((p <= 0) | (p >= 1), 0.0, terms)


def entanglement_of_formation(C):
    """E_F = h((1 + sqrt(1 - C^2)) / 2) with h the binary entropy in bits."""
    C = np.asarray(C, dtype=float)
    if np.any((C < 0) | (C > 1)):
        raise InvalidArgumentError("concurrence must lie in [0, 1]")
    ef = binary_entropy((1 + np.sqrt(1 - C**2)) / 2)
    return float(ef) if ef.ndim == 0 else ef


def eigenstate_concurrences(basis, decomp, pair):
    """Concurrence of ``pair`` in every eigenvector of ``decomp``."""
    rho = reduced_density(SectorState(basis, decomp.vectors.T), pair)
    return concurrence(rho)


@dataclass(frozen=True)
class MaxConcurrence:
    c_max: float
    index: int
    energy: float
    degenerate: bool


def max_concurrence_over_eigenstates(spec, N, pair=None):
    """Most entangled eigenstate of the ``N``-excitation sector.

    Exact ties go to the lower energy. ``degenerate`` is set when the winner
    belongs to a cluster of (numerically) degenerate levels, where the
    eigenvector choice is solver dependent.
    """
    pair = spec.defect_sites if pair is None else pair
    sh = sector_hamiltonian(spec, N)
    decomp = eigh(sh.matrix)
    conc = eigenstate_concurrences(sh.basis, decomp, pair)
    k = int(np.argmax(conc))
    return MaxConcurrence(
        c_max=float(conc[k]),
        index=k,
        energy=float(decomp.values[k]),
        degenerate=bool(decomp.degenerate_mask()[k]),
    )
