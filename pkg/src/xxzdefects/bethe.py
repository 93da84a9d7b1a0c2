"""Closed-form defect-band states for strongly detuned nearest-neighbour defects.

With ``d >> J`` the ring splits into the two-site defect chain and an open chain
of ``L - 2`` ordinary sites. The functions here build the resulting product
(Bethe-type) states, the boundary-modified ground state of the band for
``0 < Delta < d/J``, the bound-cluster Bell states at large ``Delta`` and the
two-level Rabi dynamics between the defects.

All states are returned as :class:`~xxzdefects.spectral.SectorState` objects on
the ring's sector basis, so they can be compared directly with numerics.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .basis import enumerate_sector, register_from_sites
from .errors import DegradedResultError, InvalidArgumentError
from .hamiltonian import ChainSpec
from .spectral import SectorState

log = logging.getLogger(__name__)

BETA_TOL = 1e-10


@dataclass(frozen=True)
class DBandModel:
    L: int
    n0: int = 1
    Delta: float = 0.0
    J: float = 1.0
    d: float = 10.0
    epsilon: float = 0.0

    def __post_init__(self):
        if self.L < 6:
            raise InvalidArgumentError(f"analytic d-band needs L >= 6, got {self.L}")
        if not 1 <= self.n0 <= self.L:
            raise InvalidArgumentError(f"n0={self.n0} outside 1..{self.L}")

    def site(self, n):
        """Wrap a possibly out-of-range site label onto 1..L."""
        return (n - 1) % self.L + 1

    def level(self, N):
        """Energy of N isolated excitations on ordinary sites."""
        return N * self.epsilon - N * self.J * self.Delta

    @property
    def defects(self):
        return (self.n0, self.site(self.n0 + 1))

    def chain_spec(self):
        return ChainSpec(
            L=self.L, J=self.J, Delta=self.Delta, epsilon=self.epsilon, d=self.d,
            defect_sites=self.defects,
        )


@dataclass(frozen=True)
class BetaRoot:
    beta: float
    residual: float


@dataclass(frozen=True)
class DBandGroundState:
    state: SectorState
    energy: float
    c_max: float
    beta: float
    overlap_sum: float
    norm_sq: float
    n_roots: int


@dataclass(frozen=True)
class RabiResult:
    p_first: np.ndarray
    p_second: np.ndarray
    e_plus: float
    e_minus: float

    @property
    def period(self):
        return 2 * np.pi / (self.e_plus - self.e_minus)


def _state(model, N, coeffs):
    """Normalised sector state from a ``{sites tuple: amplitude}`` mapping."""
    basis = enumerate_sector(model.L, N)
    amps = np.zeros(len(basis), dtype=complex)
    for sites, c in coeffs.items():
        amps[basis.index_of[register_from_sites(model.L, [model.site(n) for n in sites])]] += c
    norm = np.linalg.norm(amps)
    return SectorState(basis, amps / norm)


def one_excitation_defect_states(model):
    """The two Bell states ``[phi(n0) +- phi(n0+1)]/sqrt(2)`` and their energies.

    Returned in the order (symmetric, antisymmetric); the symmetric one sits
    at ``eps1 + d + J/2``.
    """
    n0 = model.n0
    base = model.level(1) + model.d
    out = []
    for sign in (+1, -1):
        state = _state(model, 1, {(n0,): 1.0, (n0 + 1,): sign})
        out.append((state, base + sign * model.J / 2))
    return out


def _ordinary_sites(model):
    return range(model.n0 + 2, model.n0 + model.L)


def dband_states_delta0(model):
    """All ``2(L-2)`` product states of the defect band at ``Delta = 0``.

    Returns a list of ``(state, energy, (k1, k2))`` ordered by k1 then k2.
    """
    if model.Delta != 0:
        raise InvalidArgumentError("product d-band states are exact only for Delta = 0")
    n0, L, J = model.n0, model.L, model.J
    out = []
    for k1 in (1, 2):
        sign = (-1) ** (k1 + 1)
        for k2 in range(1, L - 1):
            coeffs = {}
            for m in _ordinary_sites(model):
                envelope = np.sin(np.pi * k2 * (m - n0 - 1) / (L - 1))
                coeffs[(n0, m)] = envelope
                coeffs[(n0 + 1, m)] = sign * envelope
            energy = (
                model.level(2) + model.d
                + J * np.cos(np.pi * k1 / 3) + J * np.cos(np.pi * k2 / (L - 1))
            )
            out.append((_state(model, 2, coeffs), energy, (k1, k2)))
    return out


def beta_residual(beta, L, Delta):
    return 2 * Delta * np.sin(beta * (L - 2)) - np.sin(beta * (L - 1))


def solve_beta(L, Delta):
    """Real roots in (0, pi) of ``2 Delta sin(beta (L-2)) = sin(beta (L-1))``.

    Sign changes are located on a grid of ``100 L`` interior points and then
    polished with Brent's method. Complex (bound-state) roots are not sought,
    so fewer than ``L - 2`` roots may come back.
    """
    if Delta <= 0:
        raise InvalidArgumentError(f"Delta must be positive, got {Delta}")
    f = lambda b: beta_residual(b, L, Delta)
    grid = np.linspace(0.0, np.pi, 100 * L + 2)[1:-1]
    values = f(grid)
    roots = []
    for i in range(len(grid)):
        if values[i] == 0.0:
            roots.append(grid[i])
        elif i + 1 < len(grid) and values[i] * values[i + 1] < 0:
            roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    out = [BetaRoot(float(b), float(f(b))) for b in roots]
    bad = [r for r in out if abs(r.residual) > BETA_TOL]
    if bad:
        raise DegradedResultError("beta root polishing failed", {"roots": bad})
    if len(out) < L - 2:
        log.info("solve_beta(L=%d, Delta=%g): %d real roots of %d", L, Delta, len(out), L - 2)
    return out


def shape_S(x, beta, Delta):
    return 2 * Delta * np.sin(beta * (np.asarray(x) - 1)) - np.sin(beta * np.asarray(x))


def dband_ground_state(model):
    """Approximate lowest state of the defect band for ``0 < Delta < d/J``.

    The concurrence estimate is ``2 |A|^2 |s|``, written in the equivalent
    square-root form; ``s`` is negative for the k1 = 2 branch so its modulus
    is taken.
    """
    L, n0, Delta = model.L, model.n0, model.Delta
    if not 0 < Delta < model.d / model.J:
        raise InvalidArgumentError(f"need 0 < Delta < d/J = {model.d / model.J}, got {Delta}")
    roots = solve_beta(L, Delta)
    if not roots:
        raise DegradedResultError(
            "no real beta root", {"L": L, "Delta": Delta, "n_roots": 0}
        )
    beta = max(r.beta for r in roots)
    coeffs = {}
    for m in _ordinary_sites(model):
        coeffs[(n0, m)] = shape_S(n0 + L - m, beta, Delta)
        coeffs[(n0 + 1, m)] = shape_S(m - n0 - 1, beta, Delta)
    x = np.arange(1, L - 1)
    S = shape_S(x, beta, Delta)
    norm_sq = 1.0 / (2 * np.sum(S**2))
    s = float(np.sum(shape_S(L - 1 - x, beta, Delta) * S))
    q = norm_sq * abs(s)
    c_max = np.sqrt(q**2 + q + 0.25) - np.sqrt(q**2 - q + 0.25)
    energy = model.level(2) + model.d - model.J / 2 + model.J * np.cos(beta)
    return DBandGroundState(
        state=_state(model, 2, coeffs), energy=float(energy), c_max=float(c_max),
        beta=beta, overlap_sum=s, norm_sq=float(norm_sq), n_roots=len(roots),
    )


def cluster_bell_states(L, N, n0, k1, k2):
    """Bell state of the defects with ``N - 1`` excitations bound in a far cluster.

    The cluster's first site ``m1`` runs over ``n0+4 .. n0+L-N-1`` with a
    standing-wave envelope, keeping two empty sites on either side of the
    defect pair.
    """
    room = L - N - 4
    if N < 2 or room < 1:
        raise InvalidArgumentError(
            f"cluster of N-1={N - 1} excitations needs L - N - 4 >= 1, got L={L}, N={N}"
        )
    if k1 not in (1, 2):
        raise InvalidArgumentError(f"k1 must be 1 or 2, got {k1}")
    if not 1 <= k2 <= room:
        raise InvalidArgumentError(f"k2 must be in 1..{room}, got {k2}")
    model = DBandModel(L=L, n0=n0)
    sign = (-1) ** (k1 + 1)
    coeffs = {}
    for m1 in range(n0 + 4, n0 + L - N):
        envelope = np.sin(np.pi * k2 * (m1 - n0 - 3) / (L - N - 3))
        cluster = tuple(range(m1, m1 + N - 1))
        coeffs[(n0,) + cluster] = envelope
        coeffs[(n0 + 1,) + cluster] = sign * envelope
    return _state(model, N, coeffs)


def cluster_bell_family(L, N, n0=1):
    """Every ``(k1, k2)`` cluster Bell state, as rows of an amplitude matrix."""
    states = [
        cluster_bell_states(L, N, n0, k1, k2)
        for k1 in (1, 2) for k2 in range(1, L - N - 3)
    ]
    return states[0].basis, np.array([s.amplitudes for s in states])


def rabi_dynamics(model, cluster_sites, t):
    """Two-level defect dynamics with a frozen cluster, starting on ``n0``.

    ``E+-`` is the shared diagonal energy of the two registers ``phi(n0, cluster)``
    and ``phi(n0+1, cluster)`` plus or minus ``J/2``.
    """
    cluster = sorted(model.site(n) for n in cluster_sites)
    n0 = model.n0
    forbidden = {model.site(n0 + k) for k in (-1, 0, 1, 2)}
    if forbidden & set(cluster):
        raise InvalidArgumentError(
            f"cluster {cluster} must keep one empty site around defects {model.defects}"
        )
    bound_bonds = sum(model.site(n + 1) in cluster for n in cluster)
    N = len(cluster) + 1
    centre = model.level(N) + model.d + bound_bonds * model.J * model.Delta
    e_plus, e_minus = centre + model.J / 2, centre - model.J / 2
    t = np.asarray(t, dtype=float)
    c = np.cos((e_plus - e_minus) * t)
    return RabiResult((1 + c) / 2, (1 - c) / 2, e_plus, e_minus)


def bell_instants(count, J=1.0):
    """First ``count`` times k pi / 2J, k odd."""
    k = 2 * np.arange(count) + 1
    return k * np.pi / (2 * J)


def dband_mask(basis, vectors, pair):
    """Eigenvectors with more than half their weight on one defect excitation.

    ``vectors`` holds eigenvectors as columns.
    """
    a, b = pair
    states = basis.states
    on_pair = ((states >> (a - 1)) & 1) + ((states >> (b - 1)) & 1)
    weight = np.sum(np.abs(vectors[on_pair == 1]) ** 2, axis=0)
    return weight > 0.5


def dband_block(sector_ham, pair):
    """Restriction of a sector Hamiltonian to registers with one defect excited.

    At ``Delta = 0`` and in the ``d -> infinity`` limit this is the decoupled
    two-open-chain problem whose spectrum :func:`dband_states_delta0` gives.
    """
    a, b = pair
    states = sector_ham.basis.states
    on_pair = ((states >> (a - 1)) & 1) + ((states >> (b - 1)) & 1)
    idx = np.nonzero(on_pair == 1)[0]
    return sector_ham.matrix[np.ix_(idx, idx)], idx
