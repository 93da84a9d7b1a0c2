import numpy as np
import pytest
from scipy.linalg import expm

from xxzdefects.basis import enumerate_sector, register_from_sites
from xxzdefects.errors import InvalidArgumentError, NotFoundError, NumericError
from xxzdefects.hamiltonian import ChainSpec, sector_hamiltonian
from xxzdefects.spectral import (
    SectorState, degenerate_mask, eigh, evolve_state, expectation, register_probability,
    state_from_register,
)


def test_two_level_epr_pair():
    a, J = 3.2, 1.0
    dec = eigh(np.array([[a, J / 2], [J / 2, a]]))
    assert np.allclose(dec.values, [a - J / 2, a + J / 2], atol=1e-14)
    minus = dec.vectors[:, 0] * np.sign(dec.vectors[0, 0])
    plus = dec.vectors[:, 1] * np.sign(dec.vectors[0, 1])
    assert np.allclose(minus, np.array([1, -1]) / np.sqrt(2))
    assert np.allclose(plus, np.array([1, 1]) / np.sqrt(2))


def test_identity():
    dec = eigh(np.eye(7))
    assert np.array_equal(dec.values, np.ones(7))
    assert dec.degenerate_mask().all()


def test_random_reconstruction():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(50, 50))
    H = (A + A.T) / 2
    dec = eigh(H)
    assert np.all(np.diff(dec.values) >= 0)
    assert np.max(np.abs(dec.vectors @ np.diag(dec.values) @ dec.vectors.T - H)) <= 1e-9
    assert np.max(np.abs(dec.vectors.T @ dec.vectors - np.eye(50))) <= 1e-10


def test_rejects_bad_input():
    with pytest.raises(InvalidArgumentError):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(InvalidArgumentError):
        eigh(np.zeros((2, 3)))


def test_nonconvergence_becomes_numeric_error():
    with pytest.raises(NumericError):
        eigh(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_degenerate_mask():
    mask = degenerate_mask(np.array([0.0, 1.0, 1.0 + 1e-10, 2.0, 3.0, 3.0]))
    assert mask.tolist() == [False, True, True, False, True, True]


@pytest.fixture(scope="module")
def chain():
    spec = ChainSpec(L=8, Delta=1.5, d=4.0)
    sh = sector_hamiltonian(spec, 3)
    return sh, eigh(sh.matrix)


def test_evolution_matches_matrix_exponential(chain):
    sh, dec = chain
    psi0 = state_from_register(sh.basis, register_from_sites(8, [1, 4, 6]))
    for t in (0.0, 0.3, 2.7, 11.0):
        ref = expm(-1j * t * sh.matrix) @ psi0.amplitudes
        assert np.max(np.abs(evolve_state(dec, psi0, t).amplitudes - ref)) < 1e-10


def test_evolution_invariants(chain):
    sh, dec = chain
    psi0 = state_from_register(sh.basis, register_from_sites(8, [2, 3, 7]))
    ts = np.linspace(0, 25, 101)
    traj = evolve_state(dec, psi0, ts)
    assert np.max(np.abs(traj.probabilities().sum(axis=1) - 1)) < 1e-10
    energy = expectation(sh.matrix, traj)
    assert np.ptp(energy) < 1e-9 * np.max(np.abs(sh.matrix))
    two_step = evolve_state(dec, evolve_state(dec, psi0, 1.3), 2.9)
    assert np.max(np.abs(two_step.amplitudes - evolve_state(dec, psi0, 4.2).amplitudes)) < 1e-10
    assert np.array_equal(evolve_state(dec, psi0, 0.0).amplitudes, psi0.amplitudes)


def test_stationary_eigenstate(chain):
    sh, dec = chain
    psi = SectorState(sh.basis, dec.vectors[:, 5].astype(complex))
    traj = evolve_state(dec, psi, np.linspace(0, 10, 21))
    assert np.allclose(traj.probabilities(), psi.probabilities()[None, :], atol=1e-12)


def test_register_probability(chain):
    sh, dec = chain
    reg = register_from_sites(8, [1, 4, 6])
    psi0 = state_from_register(sh.basis, reg)
    assert register_probability(psi0, reg) == 1.0
    assert register_probability(psi0, register_from_sites(8, [1, 4, 7])) == 0.0
    with pytest.raises(NotFoundError):
        register_probability(psi0, register_from_sites(8, [1, 4]))
    with pytest.raises(NotFoundError):
        state_from_register(sh.basis, 0)


def test_dimension_mismatch(chain):
    _, dec = chain
    bad = SectorState(enumerate_sector(8, 2), np.ones(28, dtype=complex) / np.sqrt(28))
    with pytest.raises(InvalidArgumentError):
        evolve_state(dec, bad, 1.0)


def test_rabi_period_in_large_anisotropy_limit():
    spec = ChainSpec(L=12, Delta=50.0, d=10.0)
    sh = sector_hamiltonian(spec, 4)
    dec = eigh(sh.matrix)
    reg = register_from_sites(12, [1, 6, 7, 8])
    psi0 = state_from_register(sh.basis, reg)
    ts = np.array([np.pi, 2 * np.pi])
    p = register_probability(evolve_state(dec, psi0, ts), reg)
    assert p[0] < 0.02 and p[1] > 0.98
    grid = np.arange(0, 3 * np.pi, 0.05)
    p = register_probability(evolve_state(dec, psi0, grid), reg)
    assert np.max(np.abs(p - (1 + np.cos(grid)) / 2)) < 0.02
