import numpy as np
import pytest

from oracles import pauli_hamiltonian
from xxzdefects.basis import enumerate_sector, register_from_sites
from xxzdefects.errors import InvalidArgumentError, ResourceError
from xxzdefects.hamiltonian import (
    ChainSpec, build_sector_hamiltonian, diagonal_energy, full_hamiltonian,
    sector_hamiltonian, site_fields, total_sz,
)
from xxzdefects.spectral import eigh


def test_site_fields():
    spec = ChainSpec(L=8, d=10.0)
    assert np.array_equal(site_fields(spec), [10, 10, 0, 0, 0, 0, 0, 0])
    assert np.array_equal(site_fields(ChainSpec(L=6, epsilon=2.0, d=0.0)), np.full(6, 2.0))
    shifted = site_fields(ChainSpec(L=8, defect_sites=(1, 3)))
    assert np.nonzero(shifted)[0].tolist() == [0, 2]


@pytest.mark.parametrize("kwargs", [
    dict(L=8, defect_sites=(1, 1)), dict(L=8, defect_sites=(0, 2)), dict(L=8, defect_sites=(1, 9)),
    dict(L=8, J=0.0), dict(L=8, Delta=-1.0), dict(L=8, d=-1.0), dict(L=2),
])
def test_chainspec_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        ChainSpec(**kwargs)


def test_diagonal_energies_against_level_formulas():
    spec = ChainSpec(L=10, J=1.0, Delta=2.5, epsilon=0.7, d=10.0)
    eps, J, D, d = 0.7, 1.0, 2.5, 10.0
    assert diagonal_energy(spec, 0) == pytest.approx(0.0, abs=1e-12)
    # isolated ordinary excitation
    assert diagonal_energy(spec, register_from_sites(10, [6])) == pytest.approx(eps - J * D)
    # defect excitation with a bound ordinary neighbour: eps2 + d + J Delta
    assert diagonal_energy(spec, register_from_sites(10, [2, 3])) == pytest.approx(
        2 * eps - 2 * J * D + d + J * D)
    # across the periodic bond L -> 1
    assert diagonal_energy(spec, register_from_sites(10, [1, 10])) == pytest.approx(
        2 * eps - 2 * J * D + d + J * D)


def test_hand_built_four_site_matrix():
    spec = ChainSpec(L=4, J=1.0, Delta=0.0, epsilon=0.0, d=0.0)
    H = sector_hamiltonian(spec, 1).matrix
    # states 0001, 0010, 0100, 1000: a 4-cycle with hopping J/2
    expected = 0.5 * np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert np.array_equal(H, expected)


@pytest.mark.parametrize("L", [4, 5, 6, 8])
def test_full_matrix_matches_pauli_construction(L):
    rng = np.random.default_rng(L)
    spec = ChainSpec(L=L, J=rng.uniform(0.5, 2), Delta=rng.uniform(0, 3),
                     epsilon=rng.uniform(-1, 1), d=rng.uniform(1, 12), defect_sites=(2, L))
    H = full_hamiltonian(spec)
    ref = pauli_hamiltonian(L, spec.J, spec.Delta, spec.epsilon, spec.d, spec.defect_sites)
    assert np.max(np.abs(H - ref)) < 1e-12


@pytest.mark.parametrize("L", [4, 6, 8])
def test_full_matrix_is_block_diagonal_in_sectors(L):
    spec = ChainSpec(L=L, Delta=1.3, epsilon=0.2, d=4.0)
    H = full_hamiltonian(spec)
    order = np.concatenate([enumerate_sector(L, N).states for N in range(L + 1)])
    P = H[np.ix_(order, order)]
    start = 0
    for N in range(L + 1):
        block = sector_hamiltonian(spec, N).matrix
        n = block.shape[0]
        assert np.max(np.abs(P[start:start + n, start:start + n] - block)) <= 1e-12
        P[start:start + n, start:start + n] = 0
        start += n
    assert not P.any()
    sz = total_sz(L)
    assert np.array_equal(H * sz[None, :] - sz[:, None] * H, np.zeros_like(H))
    assert H.shape == (2**L, 2**L)


def test_sector_matrix_structure():
    spec = ChainSpec(L=10, J=1.0, Delta=3.0, d=10.0)
    for N in range(11):
        H = sector_hamiltonian(spec, N).matrix
        assert np.array_equal(H, H.T)
        off = H - np.diag(np.diag(H))
        assert set(np.unique(off)) <= {0.0, 0.5}
        assert np.all(np.abs(off).sum(axis=1) <= 2 * 0.5 * min(N, 10 - N) + 1e-15)


def test_one_excitation_defect_levels():
    spec = ChainSpec(L=10, J=1.0, Delta=0.7, epsilon=0.3, d=30.0)
    values = eigh(sector_hamiltonian(spec, 1).matrix).values
    eps1 = spec.epsilon - spec.J * spec.Delta
    for target in (eps1 + spec.d + 0.5, eps1 + spec.d - 0.5):
        assert np.min(np.abs(values - target)) < 0.05


def test_eps_shift_covariance():
    spec = ChainSpec(L=8, Delta=1.7, d=6.0)
    shifted = spec.with_(epsilon=0.37)
    for N in range(9):
        a = sector_hamiltonian(spec, N).matrix
        b = sector_hamiltonian(shifted, N).matrix
        assert np.allclose(b - a, N * 0.37 * np.eye(len(a)), atol=1e-12, rtol=0)


def test_basis_length_mismatch_and_caps():
    with pytest.raises(InvalidArgumentError):
        build_sector_hamiltonian(ChainSpec(L=8), enumerate_sector(6, 2))
    with pytest.raises(ResourceError):
        build_sector_hamiltonian(ChainSpec(L=12), enumerate_sector(12, 6), max_dim=500)
    with pytest.raises(ResourceError):
        full_hamiltonian(ChainSpec(L=13))
