"""Sweeps, register dynamics and validation runs behind the figures."""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import bethe
from .basis import enumerate_sector, register_from_sites, register_label, sector_sizes
from .entanglement import concurrence, eigenstate_concurrences, max_concurrence_over_eigenstates, reduced_density
from .errors import InvalidArgumentError, ResourceError
from .hamiltonian import full_hamiltonian, sector_hamiltonian
from .spectral import SectorState, eigh, evolve_state

BELL_THRESHOLD = 0.9
ORACLE_MAX_SITES = 10


@dataclass(frozen=True)
class SweepRow:
    delta: float
    L: int
    N: int
    defect_a: int
    defect_b: int
    c_max: float
    energy: float
    eig_index: int
    degenerate: bool


@dataclass(frozen=True)
class DynamicsRow:
    t: float
    register: str
    probability: float
    concurrence: float


def _pmap(fn, items, threads):
    threads = threads or os.cpu_count() or 1
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def sweep_cmax(spec, deltas, n_list, pair=None, threads=None):
    """Maximum eigenstate concurrence on a (Delta, N) grid, Delta-major order."""
    deltas = [float(x) for x in deltas]
    n_list = [int(n) for n in n_list]
    if not deltas or not n_list:
        raise InvalidArgumentError("sweep needs a nonempty Delta grid and N list")
    pair = tuple(spec.defect_sites if pair is None else pair)
    grid = [(delta, N) for delta in deltas for N in n_list]

    def point(item):
        delta, N = item
        best = max_concurrence_over_eigenstates(spec.with_(Delta=delta), N, pair)
        return SweepRow(delta, spec.L, N, pair[0], pair[1], best.c_max, best.energy,
                        best.index, best.degenerate)

    return _pmap(point, grid, threads)


@dataclass
class RegisterDynamics:
    """Array form of a dynamics run: ``probabilities[i, j]`` is register j at ``t[i]``."""

    t: np.ndarray
    registers: list
    probabilities: np.ndarray
    concurrence: np.ndarray

    def rows(self):
        labels = [register_label(r) for r in self.registers]
        return [
            DynamicsRow(float(t), label, float(p), float(c))
            for t, probs, c in zip(self.t, self.probabilities, self.concurrence)
            for label, p in zip(labels, probs)
        ]

    def probability_of(self, register):
        return self.probabilities[:, self.registers.index(register)]


def _as_register(L, reg):
    if isinstance(reg, (int, np.integer)):
        return int(reg)
    return register_from_sites(L, reg)


def register_dynamics(spec, initial, t, tracked=None, pair=None, chunk=512, decomp=None):
    """Evolve a register and record tracked probabilities and pair concurrence."""
    pair = tuple(spec.defect_sites if pair is None else pair)
    initial = _as_register(spec.L, initial)
    tracked = [initial] if tracked is None else [_as_register(spec.L, r) for r in tracked]
    N = bin(initial).count("1")
    sh = sector_hamiltonian(spec, N)
    if decomp is None:
        decomp = eigh(sh.matrix)
    basis = sh.basis
    psi0 = SectorState(basis, np.zeros(len(basis), dtype=complex))
    psi0.amplitudes[basis.rank(initial)] = 1.0
    cols = [basis.rank(r) for r in tracked]
    t = np.asarray(t, dtype=float)
    probs = np.empty((len(t), len(tracked)))
    conc = np.empty(len(t))
    for start in range(0, len(t), chunk):
        sl = slice(start, start + chunk)
        state = evolve_state(decomp, psi0, t[sl])
        probs[sl] = np.abs(state.amplitudes[:, cols]) ** 2
        conc[sl] = concurrence(reduced_density(state, pair))
    return RegisterDynamics(t, tracked, probs, conc)


def evolve_registers(spec, initial, t, tracked=None, pair=None):
    """Row form of :func:`register_dynamics`, one row per (t, tracked register)."""
    return register_dynamics(spec, initial, t, tracked, pair).rows()


def find_bell_instants(rows_or_t, conc=None, threshold=BELL_THRESHOLD, refine=True):
    """Times where the pair concurrence has a strict 3-point local maximum >= threshold.

    Accepts either a list of :class:`DynamicsRow` or arrays ``(t, concurrence)``.
    With ``refine`` each detected peak is moved to the vertex of the parabola
    through its three samples (uniform grids only).
    """
    if conc is None:
        seen = {}
        for row in rows_or_t:
            seen.setdefault(row.t, row.concurrence)
        t = np.array(list(seen))
        c = np.array(list(seen.values()))
    else:
        t, c = np.asarray(rows_or_t, dtype=float), np.asarray(conc, dtype=float)
    if len(c) < 3:
        return []
    mid = c[1:-1]
    peaks = np.nonzero((mid > c[:-2]) & (mid > c[2:]) & (mid >= threshold))[0] + 1
    out = []
    for i in peaks:
        ti = t[i]
        if refine:
            left, centre, right = c[i - 1], c[i], c[i + 1]
            h = (t[i + 1] - t[i - 1]) / 2
            ti += h * (left - right) / (2 * (left - 2 * centre + right))
        out.append(float(ti))
    return out


@dataclass(frozen=True)
class ComparisonRow:
    delta: float
    L: int
    numeric_c_max: float
    analytic_c_max: float
    numeric_energies: np.ndarray
    analytic_energies: np.ndarray
    ground_overlap: float

    @property
    def max_energy_deviation(self):
        """Largest distance from an analytic level to its nearest numeric d-band level."""
        if not len(self.analytic_energies) or not len(self.numeric_energies):
            return float("nan")
        diffs = np.abs(self.analytic_energies[:, None] - self.numeric_energies[None, :])
        return float(diffs.min(axis=1).max())


def _analytic_band(model):
    if model.Delta == 0:
        states = bethe.dband_states_delta0(model)
        ground_state, _, _ = min(states, key=lambda s: s[1])
        energies = np.sort([e for _, e, _ in states])
        rho = reduced_density(ground_state, model.defects)
        return energies, concurrence(rho), ground_state
    ground = bethe.dband_ground_state(model)
    betas = np.array([r.beta for r in bethe.solve_beta(model.L, model.Delta)])
    J = model.J
    energies = np.sort(np.concatenate([
        model.level(2) + model.d + J * np.cos(np.pi * k1 / 3) + J * np.cos(betas)
        for k1 in (1, 2)
    ]))
    return energies, ground.c_max, ground.state


def compare_numeric_analytic(L, deltas, d=10.0, J=1.0, epsilon=0.0, n0=1):
    """Two-excitation numerics against the analytic defect band, one row per Delta."""
    rows = []
    for delta in deltas:
        model = bethe.DBandModel(L=L, n0=n0, Delta=float(delta), J=J, d=d, epsilon=epsilon)
        pair = model.defects
        sh = sector_hamiltonian(model.chain_spec(), 2)
        decomp = eigh(sh.matrix)
        conc = eigenstate_concurrences(sh.basis, decomp, pair)
        in_band = bethe.dband_mask(sh.basis, decomp.vectors, pair)
        energies, analytic_c, analytic_state = _analytic_band(model)
        lowest = np.nonzero(in_band)[0][0]
        overlap = abs(np.vdot(decomp.vectors[:, lowest], analytic_state.amplitudes)) ** 2
        rows.append(ComparisonRow(
            delta=float(delta), L=L,
            numeric_c_max=float(conc.max()),
            analytic_c_max=float(analytic_c),
            numeric_energies=decomp.values[in_band],
            analytic_energies=energies,
            ground_overlap=float(overlap),
        ))
    return rows


@dataclass(frozen=True)
class OracleResult:
    discrepancy: float
    norm: float
    dimension: int

    @property
    def relative(self):
        return self.discrepancy / max(self.norm, 1.0)


def oracle_full_vs_sector(spec):
    """Compare the 2^L spectrum with the union of all sector spectra."""
    if spec.L > ORACLE_MAX_SITES:
        raise ResourceError(f"oracle limited to L <= {ORACLE_MAX_SITES}, got {spec.L}")
    H = full_hamiltonian(spec)
    full = np.linalg.eigvalsh(H)
    parts = [eigh(sector_hamiltonian(spec, N).matrix).values for N in range(spec.L + 1)]
    union = np.sort(np.concatenate(parts))
    assert len(union) == sum(sector_sizes(spec.L)) == H.shape[0]
    return OracleResult(
        discrepancy=float(np.max(np.abs(full - union))),
        norm=float(np.max(np.abs(full))),
        dimension=H.shape[0],
    )


def spectrum(spec, n_list):
    """Sector eigenvalues with degeneracy flags, as ``(N, values, flags)`` triples."""
    out = []
    for N in n_list:
        decomp = eigh(sector_hamiltonian(spec, N).matrix)
        out.append((N, decomp.values, decomp.degenerate_mask()))
    return out
