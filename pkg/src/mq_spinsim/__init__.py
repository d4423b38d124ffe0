"""Exact simulation of multiple-quantum NMR coherences and pair entanglement
in dipolar-coupled spin-1/2 chains."""

__version__ = "0.1.0"

from .coherence import (
    CoherenceSpectrum,
    SignalParams,
    coherence_intensities,
    decompose_orders,
    signal,
)
from .coupling import CouplingModel, build_hmq, build_hmq_parts, coupling_matrix
from .entanglement import (
    ConcurrenceResult,
    ReducedState,
    concurrence,
    entanglement_of_formation,
    reduce_to_pair,
)
from .exceptions import ContractViolation, DimensionBudgetError, NumericalContractError
from .experiment import (
    ExperimentConfig,
    SweepResult,
    read_json,
    reproduce_figure,
    run_sweep,
    write_output,
)
from .propagator import EigenSystem, eigendecompose, evolve, propagator_at
from .spin_basis import embed, magnetization, single_site_ops, total_iz
from .thermal import ThermalConfig, equilibrium_state
