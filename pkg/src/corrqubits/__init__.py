"""Two uncoupled qubits driven by correlated classical white noise.

Evolves the joint density matrix under the noise-averaged master equation,
tracks Wootters concurrence over time (sudden death, revival, branch
dominance), and cross-validates three independent dynamics routes:
closed-form propagators, deterministic RK4 integration, and a random-unitary
Monte Carlo unraveling.
"""

from ._kernels import active_backend
from .analytic import (XState, bell_phi_solution, bell_phi_xstate,
                       bell_psi_solution, bell_psi_xstate, crossover_xstate,
                       kappa, maximally_mixed_xstate, propagate_x,
                       propagate_x_full, propagate_x_full_series,
                       propagate_x_series, werner_xstate)
from .entanglement import (ConcurrencePoint, EsdEvent, concurrence,
                           concurrence_points, concurrence_x,
                           concurrence_x_arrays, death_times,
                           dominance_crossover, esd_time, spin_flip)
from .experiments import (BIG_GAMMA_GRID, CompareReport, ParameterError,
                          SweepResult, compare_methods, esd_table,
                          figure_dataset, sweep_concurrence)
from .integrate import (EvolutionSeries, NumericalFailureError,
                        PhysicalityScan, physicality_scan, rk4_evolve,
                        rk4_evolve_secular)
from .model import (GeneratorConvention, NoiseParams, PhysicalityReport,
                    delta_z_matrix, liouvillian_apply, liouvillian_apply_pm,
                    secular_rhs, validate)
from .trajectories import (IncrementStream, TrajectoryConfig,
                           ensemble_average, evolve_trajectory,
                           sample_increment, sample_increments)

__version__ = "0.1.0"

__all__ = [
    "BIG_GAMMA_GRID", "CompareReport", "ConcurrencePoint", "EsdEvent",
    "EvolutionSeries", "GeneratorConvention", "IncrementStream",
    "NoiseParams", "NumericalFailureError", "ParameterError",
    "PhysicalityReport", "PhysicalityScan", "SweepResult", "TrajectoryConfig",
    "XState", "active_backend", "bell_phi_solution", "bell_phi_xstate",
    "bell_psi_solution", "bell_psi_xstate", "compare_methods", "concurrence",
    "concurrence_points", "concurrence_x", "concurrence_x_arrays",
    "crossover_xstate", "death_times", "delta_z_matrix",
    "dominance_crossover", "ensemble_average", "esd_table", "esd_time",
    "evolve_trajectory", "figure_dataset", "kappa", "liouvillian_apply",
    "liouvillian_apply_pm", "maximally_mixed_xstate", "physicality_scan",
    "propagate_x", "propagate_x_full", "propagate_x_full_series",
    "propagate_x_series", "rk4_evolve", "rk4_evolve_secular",
    "sample_increment", "sample_increments", "secular_rhs", "spin_flip",
    "sweep_concurrence", "validate", "werner_xstate",
]
