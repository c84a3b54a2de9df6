"""Entanglement monogamy and swapping for Rydberg atoms crossing leaky microwave cavities."""
from .dynamics import (
    CouplingParams,
    DissipationParams,
    IntegratorConfig,
    build_jc_hamiltonian,
    evolve_unitary,
    integrate_master_equation,
    lindblad_rhs,
    rabi_evolution_paper,
)
from .entanglement import CkwReport, ConcurrenceResult, ckw_check, concurrence, pure_bipartite_concurrence, spin_flip, tangle
from .hilbert import DensityMatrix, Ket, OperatorMatrix, SpaceSpec, Subsystem, atom, basis_ket, cavity, embed, partial_trace, tensor
from .scenarios import AlphaMode, AlphaSet, ScenarioRow, alpha_quadripartite, alpha_tripartite

__version__ = "0.1.0"
