"""XXZ ring with two defect qubits, assembled sector by sector.

Conventions: sigma^z = +1 for an excited (up) site, hopping amplitude J/2
between registers related by one nearest-neighbour exchange, and energies
measured from the all-down state, ``E0 = -(L*eps + 2*d)/2 + L*J*Delta/4``.
"""
from dataclasses import dataclass, replace

import numpy as np

from .basis import enumerate_sector
from .errors import InvalidArgumentError, ResourceError

MAX_SECTOR_DIM = 1 << 13
MAX_FULL_SITES = 12


@dataclass(frozen=True)
class ChainSpec:
    L: int
    J: float = 1.0
    Delta: float = 0.0
    epsilon: float = 0.0
    d: float = 10.0
    defect_sites: tuple = (1, 2)

    def __post_init__(self):
        a, b = self.defect_sites
        object.__setattr__(self, "defect_sites", (int(a), int(b)))
        if self.L < 3:
            raise InvalidArgumentError(f"need at least 3 sites, got L={self.L}")
        if a == b or not (1 <= a <= self.L and 1 <= b <= self.L):
            raise InvalidArgumentError(
                f"defect sites {self.defect_sites} must be distinct and in 1..{self.L}"
            )
        if self.J <= 0:
            raise InvalidArgumentError(f"J must be positive, got {self.J}")
        if self.d < 0:
            raise InvalidArgumentError(f"d must be >= 0, got {self.d}")
        if self.Delta < 0:
            raise InvalidArgumentError(f"Delta must be >= 0, got {self.Delta}")

    def with_(self, **changes):
        return replace(self, **changes)

    @property
    def ground_energy(self):
        return -(self.L * self.epsilon + 2 * self.d) / 2 + self.L * self.J * self.Delta / 4


@dataclass(frozen=True)
class SectorHamiltonian:
    basis: object
    matrix: np.ndarray

    @property
    def dim(self):
        return self.matrix.shape[0]


def site_fields(spec):
    """Level spacing of each site; defects sit ``d`` above the rest."""
    eps = np.full(spec.L, float(spec.epsilon))
    for n in spec.defect_sites:
        eps[n - 1] += spec.d
    return eps


def _sz(states, L):
    bits = (np.asarray(states, dtype=np.int64)[:, None] >> np.arange(L)) & 1
    return 2 * bits - 1


def diagonal_energies(spec, states):
    """Classical (Ising plus Zeeman) energy of each bitmask, offset by E0."""
    sz = _sz(states, spec.L)
    zeeman = sz @ (site_fields(spec) / 2)
    ising = (spec.J * spec.Delta / 4) * np.sum(sz * np.roll(sz, -1, axis=1), axis=1)
    return zeeman + ising - spec.ground_energy


def diagonal_energy(spec, state):
    return float(diagonal_energies(spec, [int(state)])[0])


def _hops(states, L):
    """Yield ``(rows, partner_states)`` for every bond's allowed exchange."""
    states = np.asarray(states, dtype=np.int64)
    for n in range(L):
        m = (n + 1) % L
        mask = (1 << n) | (1 << m)
        differ = ((states >> n) ^ (states >> m)) & 1
        rows = np.nonzero(differ)[0]
        yield rows, states[rows] ^ mask


def build_sector_hamiltonian(spec, basis, max_dim=MAX_SECTOR_DIM):
    if basis.L != spec.L:
        raise InvalidArgumentError(f"basis has L={basis.L}, spec has L={spec.L}")
    dim = len(basis)
    if dim > max_dim:
        raise ResourceError(f"sector dimension {dim} exceeds cap {max_dim}")
    states = basis.states
    H = np.zeros((dim, dim))
    H[np.diag_indices(dim)] = diagonal_energies(spec, states)
    half_J = spec.J / 2
    for rows, partners in _hops(states, spec.L):
        cols = np.searchsorted(states, partners)
        H[rows, cols] = half_J
    return SectorHamiltonian(basis, H)


def sector_hamiltonian(spec, N, max_dim=MAX_SECTOR_DIM):
    return build_sector_hamiltonian(spec, enumerate_sector(spec.L, N), max_dim)


def full_hamiltonian(spec):
    """Dense 2^L matrix in plain integer ordering of the bitmasks."""
    if spec.L > MAX_FULL_SITES:
        raise ResourceError(f"full Hilbert space capped at L={MAX_FULL_SITES}")
    states = np.arange(1 << spec.L, dtype=np.int64)
    H = np.diag(diagonal_energies(spec, states))
    for rows, partners in _hops(states, spec.L):
        H[rows, partners] = spec.J / 2
    return H


def total_sz(L):
    """Diagonal of the total S^z operator in plain integer ordering."""
    return _sz(np.arange(1 << L), L).sum(axis=1) / 2
