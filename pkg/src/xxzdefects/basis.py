"""Fixed-magnetization bitmask bases and quantum-register labels.

A basis state is a plain ``int`` whose bit ``n - 1`` is set when site ``n``
carries an excitation (spin up). Sites are 1-based everywhere outside this
module's bit twiddling.
"""
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import InvalidArgumentError, NotFoundError

MAX_SITES = 24


def _next_same_popcount(x):
    # Gosper's hack: smallest integer > x with the same number of set bits.
    lowest = x & -x
    ripple = x + lowest
    return (((ripple ^ x) >> 2) // lowest) | ripple


@dataclass(frozen=True)
class SectorBasis:
    """All ``L``-site configurations with exactly ``N`` excitations, ascending."""

    L: int
    N: int
    states: np.ndarray
    index_of: dict = field(repr=False, compare=False)

    def __len__(self):
        return len(self.states)

    def __contains__(self, state):
        return int(state) in self.index_of

    def rank(self, state):
        return rank(self, state)

    def unrank(self, index):
        return unrank(self, index)


def enumerate_sector(L, N):
    """Return the :class:`SectorBasis` for ``L`` sites and ``N`` excitations."""
    if L <= 0 or L > MAX_SITES:
        raise InvalidArgumentError(f"L must be in 1..{MAX_SITES}, got {L}")
    if N < 0 or N > L:
        raise InvalidArgumentError(f"N must be in 0..L={L}, got {N}")
    size = comb(L, N)
    states = np.empty(size, dtype=np.int64)
    x = (1 << N) - 1
    states[0] = x
    for i in range(1, size):
        x = _next_same_popcount(x)
        states[i] = x
    states.setflags(write=False)
    index_of = {int(s): i for i, s in enumerate(states)}
    return SectorBasis(L, N, states, index_of)


def register_from_sites(L, sites):
    """Bitmask for the register with excitations on ``sites`` (1-based)."""
    sites = list(sites)
    if len(set(sites)) != len(sites):
        raise InvalidArgumentError(f"duplicate sites in {sites}")
    state = 0
    for n in sites:
        if not 1 <= n <= L:
            raise InvalidArgumentError(f"site {n} outside 1..{L}")
        state |= 1 << (n - 1)
    return state


def occupied_sites(state):
    state = int(state)
    sites = []
    n = 1
    while state:
        if state & 1:
            sites.append(n)
        state >>= 1
        n += 1
    return sites


def rank(basis, state):
    try:
        return basis.index_of[int(state)]
    except KeyError:
        raise NotFoundError(
            f"state {int(state):#b} not in sector L={basis.L}, N={basis.N}"
        ) from None


def unrank(basis, index):
    if not 0 <= index < len(basis.states):
        raise NotFoundError(f"index {index} outside sector of size {len(basis)}")
    return int(basis.states[index])


def register_label(sites_or_state):
    """Format a register as ``phi(1,6,7,8)``; accepts a bitmask or site list."""
    if isinstance(sites_or_state, (int, np.integer)):
        sites = occupied_sites(sites_or_state)
    else:
        sites = sorted(sites_or_state)
    return "phi(" + ",".join(str(n) for n in sites) + ")"


def parse_register_label(label, L):
    """Inverse of :func:`register_label`, returning the bitmask."""
    text = label.strip()
    if not (text.startswith("phi(") and text.endswith(")")):
        raise InvalidArgumentError(f"not a register label: {label!r}")
    body = text[4:-1].strip()
    sites = [int(tok) for tok in body.split(",")] if body else []
    return register_from_sites(L, sites)


def sector_sizes(L):
    return [comb(L, N) for N in range(L + 1)]

