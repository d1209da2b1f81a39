"""Qubit survival amplitude and hidden non-Markovianity tools."""

from ._core import (
    Coupling,
    HnmError,
    Model,
    Trace,
    amplitude,
    bound_state_check,
    channel_superoperator,
    choi_matrix,
    evolve,
    extract_rates,
    gkls_generator,
    hidden_horizon,
    phi,
    self_energy,
    semigroup_defect,
    spectral_density,
)

__all__ = [
    "Coupling",
    "HnmError",
    "Model",
    "Trace",
    "amplitude",
    "bound_state_check",
    "channel_superoperator",
    "choi_matrix",
    "evolve",
    "extract_rates",
    "gkls_generator",
    "hidden_horizon",
    "phi",
    "self_energy",
    "semigroup_defect",
    "spectral_density",
]
