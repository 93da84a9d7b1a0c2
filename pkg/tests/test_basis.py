from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from xxzdefects.basis import (
    enumerate_sector, occupied_sites, parse_register_label, rank, register_from_sites,
    register_label, sector_sizes, unrank,
)
from xxzdefects.errors import InvalidArgumentError, NotFoundError


def brute_sector(L, N):
    return sorted(sum(1 << i for i in c) for c in combinations(range(L), N))


def test_small_sector_listing():
    b = enumerate_sector(4, 2)
    assert list(b.states) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]


@pytest.mark.parametrize("L,N,size", [(12, 6, 924), (12, 4, 495), (8, 0, 1), (8, 8, 1), (1, 1, 1)])
def test_sector_size(L, N, size):
    assert len(enumerate_sector(L, N)) == size == comb(L, N)


def test_vacuum():
    assert list(enumerate_sector(8, 0).states) == [0]


@pytest.mark.parametrize("L", range(1, 13))
def test_sizes_sum_to_hilbert_dimension(L):
    assert sum(len(enumerate_sector(L, N)) for N in range(L + 1)) == 2**L == sum(sector_sizes(L))


@pytest.mark.parametrize("L", range(1, 11))
def test_matches_brute_force_and_rank_bijection(L):
    for N in range(L + 1):
        b = enumerate_sector(L, N)
        assert list(b.states) == brute_sector(L, N)
        for i, s in enumerate(b.states):
            assert rank(b, s) == i
            assert unrank(b, rank(b, s)) == s


def test_rank_extremes():
    b = enumerate_sector(6, 3)
    assert len(b) == 20
    assert rank(b, b.states[0]) == 0
    assert rank(b, max(b.states)) == comb(6, 3) - 1


@pytest.mark.parametrize("L,N", [(0, 0), (4, 5), (4, -1), (25, 2)])
def test_invalid_sector(L, N):
    with pytest.raises(InvalidArgumentError):
        enumerate_sector(L, N)


def test_rank_errors():
    b = enumerate_sector(6, 3)
    with pytest.raises(NotFoundError):
        rank(b, 0b1)
    with pytest.raises(NotFoundError):
        unrank(b, 20)


def test_registers():
    assert register_from_sites(8, [1, 2]) == 0b00000011
    assert register_from_sites(4, []) == 0
    assert occupied_sites(register_from_sites(12, [1, 6, 7, 8])) == [1, 6, 7, 8]
    assert occupied_sites(0b00000011) == [1, 2]
    assert occupied_sites(0) == []


@pytest.mark.parametrize("sites", [[1, 1], [0], [9]])
def test_register_errors(sites):
    with pytest.raises(InvalidArgumentError):
        register_from_sites(8, sites)


@given(st.integers(1, 20).flatmap(
    lambda L: st.tuples(st.just(L), st.sets(st.integers(1, L)))))
def test_register_round_trip(case):
    L, sites = case
    state = register_from_sites(L, sites)
    assert state < 2**L
    assert occupied_sites(state) == sorted(sites)
    assert parse_register_label(register_label(state), L) == state


def test_label_format():
    assert register_label([8, 1, 7, 6]) == "phi(1,6,7,8)"
    assert register_label(0) == "phi()"
    with pytest.raises(InvalidArgumentError):
        parse_register_label("psi(1,2)", 4)
