"""Entanglement between two detuned defect qubits in an XXZ spin ring."""
from .basis import (
    SectorBasis, enumerate_sector, occupied_sites, rank, register_from_sites,
    register_label, unrank,
)
from .bethe import (
    DBandModel, cluster_bell_states, dband_ground_state, dband_states_delta0,
    one_excitation_defect_states, rabi_dynamics, shape_S, solve_beta,
)
from .entanglement import (
    concurrence, entanglement_of_formation, max_concurrence_over_eigenstates,
    reduced_density, spin_flip,
)
from .errors import (
    ConfigError, DegradedResultError, InvalidArgumentError, NotFoundError,
    NumericError, ResourceError,
)
from .experiments import (
    compare_numeric_analytic, evolve_registers, find_bell_instants,
    oracle_full_vs_sector, register_dynamics, sweep_cmax,
)
from .hamiltonian import (
    ChainSpec, build_sector_hamiltonian, diagonal_energy, full_hamiltonian,
    sector_hamiltonian, site_fields,
)
from .spectral import (
    EigenDecomposition, SectorState, eigh, evolve_state, register_probability,
)

__version__ = "0.1.0"
