"""Quantum resource estimates for ground-state energy problems."""

from ._core import (
    ArchitectureConfig,
    BondDimensionFit,
    DmrgPoint,
    EnergyFit,
    ErrorBudget,
    InfeasibilityError,
    LogicalResourceEstimate,
    PhysicalResourceEstimate,
    ValidationError,
    assign_parameters,
    classical_cost,
    compute_shot_hw_tolerance,
    compute_shots,
    cpu_time_forecast,
    estimate_logical_catalog,
    fit_bond_dimension,
    fit_energy_extrapolation,
    hilbert_space_log10,
    load_architecture_config,
    load_catalog,
    norm_reduction_ratios,
    parse_catalog,
    quantum_share,
    search_configuration,
    split_budget,
)

__all__ = [name for name in dir() if not name.startswith("_")]
