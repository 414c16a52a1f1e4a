"""Parameter sweeps, three-way method comparisons and ESD tables.

The canonical figure presets share one geometry: gamma = 1, horizon 2/gamma on
a 2000-point grid, cross-correlation grid {0, 0.25, 0.5, 0.75, 1} * gamma.
The curves only depend on (big_gamma/gamma, gamma*t), which the test suite
asserts, so gamma = 1 loses nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import entanglement
from .analytic import (XState, bell_phi_xstate, bell_psi_xstate,
                       crossover_xstate, propagate_x_series)
from .integrate import rk4_evolve, rk4_evolve_secular
from .model import GeneratorConvention, NoiseParams
from .trajectories import TrajectoryConfig, ensemble_average

BIG_GAMMA_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_T_MAX = 2.0
DEFAULT_GRID_POINTS = 2000

METHODS = ("analytic", "secular-rk4", "full-rk4", "trajectories")

INITIAL_STATES = {
    "bell-phi": bell_phi_xstate,
    "bell-psi": bell_psi_xstate,
    "x-crossover": crossover_xstate,
}


class ParameterError(ValueError):
    """Invalid run parameters (maps to CLI exit code 2)."""


@dataclass
class SweepEntry:
    big_gamma: float
    states: np.ndarray           # (n, 4, 4) complex snapshots
    concurrence: np.ndarray
    branch_z: np.ndarray
    branch_w: np.ndarray


@dataclass
class SweepResult:
    initial_label: str
    gamma: float
    omega: float
    method: str
    convention: str
    times: np.ndarray
    entries: list[SweepEntry]
    provenance: dict = field(default_factory=dict)


def resolve_initial(initial) -> tuple[str, XState]:
    """Accept an XState or one of the named initial states."""
    if isinstance(initial, XState):
        return "x-state", initial
    if isinstance(initial, str):
        key = initial.strip().lower()
        if key in INITIAL_STATES:
            return key, INITIAL_STATES[key]()
        raise ParameterError(f"unknown initial state {initial!r}; "
                             f"expected one of {sorted(INITIAL_STATES)}")
    raise ParameterError("initial state must be an XState or a known name")


def _grid_spacing(t_grid: np.ndarray) -> float:
    diffs = np.diff(t_grid)
    if len(diffs) == 0 or np.any(diffs <= 0):
        raise ParameterError("t_grid must be strictly increasing")
    if np.max(np.abs(diffs - diffs[0])) > 1e-9 * diffs[0]:
        raise ParameterError("integrating methods require a uniform t_grid")
    return float(diffs[0])


def _x_projection(states: np.ndarray) -> np.ndarray:
    """(a, b, c, d, |z|, |w|) rows extracted from a stack of matrices."""
    out = np.empty((states.shape[0], 6))
    out[:, 0] = states[:, 0, 0].real
    out[:, 1] = states[:, 1, 1].real
    out[:, 2] = states[:, 2, 2].real
    out[:, 3] = states[:, 3, 3].real
    out[:, 4] = np.abs(states[:, 1, 2])
    out[:, 5] = np.abs(states[:, 0, 3])
    return out


def _xs_to_states(xs: np.ndarray) -> np.ndarray:
    n = xs.shape[0]
    states = np.zeros((n, 4, 4), dtype=np.complex128)
    states[:, 0, 0] = xs[:, 0]
    states[:, 1, 1] = xs[:, 1]
    states[:, 2, 2] = xs[:, 2]
    states[:, 3, 3] = xs[:, 3]
    states[:, 1, 2] = states[:, 2, 1] = xs[:, 4]
    states[:, 0, 3] = states[:, 3, 0] = xs[:, 5]
    return states


def _series_for_method(x0: XState, gamma: float, big_gamma: float,
                       t_grid: np.ndarray, method: str, *, omega: float,
                       convention: GeneratorConvention, dt: float,
                       n_traj: int, seed: int) -> np.ndarray:
    """Snapshot matrices of one (state, big_gamma, method) cell on t_grid."""
    if method == "analytic":
        return _xs_to_states(propagate_x_series(x0, gamma, big_gamma, t_grid))
    spacing = _grid_spacing(t_grid)
    substeps = max(1, int(np.ceil(spacing / dt - 1e-12)))
    eff_dt = spacing / substeps
    t_end = float(t_grid[-1])
    if abs(t_grid[0]) > 1e-12:
        raise ParameterError("integrating methods require t_grid starting at 0")
    if method == "secular-rk4":
        series = rk4_evolve_secular(x0, gamma, big_gamma, t_end, eff_dt,
                                    stride=substeps)
        return series.states
    p = NoiseParams(gamma_a=gamma, gamma_b=gamma, big_gamma=big_gamma,
                    omega=omega)
    if method == "full-rk4":
        series = rk4_evolve(x0.to_matrix(), p, convention, t_end, eff_dt,
                            stride=substeps, require_psd=False)
        return series.states
    if method == "trajectories":
        cfg = TrajectoryConfig(n_traj=n_traj, dt=eff_dt, t_end=t_end,
                               seed=seed, params=p, snapshot_stride=substeps)
        return ensemble_average(x0.to_matrix(), cfg).states
    raise ParameterError(f"unknown method {method!r}; expected one of {METHODS}")


def sweep_concurrence(initial, gamma: float, big_gamma_list, t_grid=None,
                      method: str = "analytic", *, omega: float = 0.0,
                      convention: GeneratorConvention = GeneratorConvention.CALIBRATED,
                      dt: float = 1e-3, n_traj: int = 2000, seed: int = 0,
                      allow_unphysical: bool = False) -> SweepResult:
    """Concurrence time series for each cross-correlation value.

    Raises ParameterError for big_gamma beyond sqrt(gamma_a*gamma_b) unless
    ``allow_unphysical`` is set.  Branch diagnostics come with every entry.
    """
    label, x0 = resolve_initial(initial)
    if gamma < 0:
        raise ParameterError("gamma must be non-negative")
    if t_grid is None:
        t_grid = np.linspace(0.0, DEFAULT_T_MAX / max(gamma, 1e-12),
                             DEFAULT_GRID_POINTS)
    t_grid = np.asarray(t_grid, dtype=np.float64)
    entries = []
    for bg in big_gamma_list:
        if abs(bg) > gamma + 1e-12 and not allow_unphysical:
            raise ParameterError(
                f"big_gamma={bg} exceeds gamma={gamma}; the noise covariance "
                "is not PSD (pass allow_unphysical to force)")
        states = _series_for_method(x0, gamma, float(bg), t_grid, method,
                                    omega=omega, convention=convention,
                                    dt=dt, n_traj=n_traj, seed=seed)
        c, bz, bw = entanglement.concurrence_x_arrays(_x_projection(states))
        entries.append(SweepEntry(big_gamma=float(bg), states=states,
                                  concurrence=c, branch_z=bz, branch_w=bw))
    prov = {"initial": label, "gamma": gamma, "omega": omega,
            "method": method, "convention": convention.value, "dt": dt,
            "n_traj": n_traj, "seed": seed,
            "big_gamma_list": [float(b) for b in big_gamma_list],
            "allow_unphysical": allow_unphysical,
            "x0": list(x0.as_array())}
    return SweepResult(initial_label=label, gamma=gamma, omega=omega,
                       method=method, convention=convention.value,
                       times=t_grid, entries=entries, provenance=prov)


@dataclass
class PairDeviation:
    method_pair: tuple[str, str]
    max_abs_deviation: float
    time_of_max: float


@dataclass
class CompareReport:
    times: np.ndarray
    methods: tuple[str, ...]
    pairs: list[PairDeviation]
    provenance: dict

    def worst(self) -> PairDeviation:
        return max(self.pairs, key=lambda p: p.max_abs_deviation)


def compare_methods(initial, params: NoiseParams, t_grid,
                    methods=("analytic", "secular-rk4", "full-rk4"), *,
                    convention: GeneratorConvention = GeneratorConvention.CALIBRATED,
                    dt: float = 1e-3, n_traj: int = 2000, seed: int = 0,
                    allow_unphysical: bool = False) -> CompareReport:
    """Pairwise deviations between dynamics routes on a shared grid.

    The comparison metric is the max absolute difference of the phase-robust
    X-sector vector (a, b, c, d, |rho23|, |rho14|): the full generator only
    adds a phase to rho14 at nonzero omega, and that phase is not contractual.
    """
    label, x0 = resolve_initial(initial)
    gamma = params.gamma_a
    if abs(params.gamma_a - params.gamma_b) > 1e-12:
        raise ParameterError("method comparison assumes gamma_a == gamma_b")
    if not params.is_physical and not allow_unphysical:
        raise ParameterError("unphysical big_gamma without allow_unphysical")
    t_grid = np.asarray(t_grid, dtype=np.float64)
    projections = {}
    for method in methods:
        states = _series_for_method(x0, gamma, params.big_gamma, t_grid,
                                    method, omega=params.omega,
                                    convention=convention, dt=dt,
                                    n_traj=n_traj, seed=seed)
        projections[method] = _x_projection(states)
    pairs = []
    names = list(methods)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            dev = np.max(np.abs(projections[names[i]] - projections[names[j]]),
                         axis=1)
            k = int(np.argmax(dev))
            pairs.append(PairDeviation(method_pair=(names[i], names[j]),
                                       max_abs_deviation=float(dev[k]),
                                       time_of_max=float(t_grid[k])))
    prov = {"initial": label, "gamma": gamma, "omega": params.omega,
            "big_gamma": params.big_gamma, "convention": convention.value,
            "dt": dt, "n_traj": n_traj, "seed": seed}
    return CompareReport(times=t_grid, methods=tuple(methods), pairs=pairs,
                         provenance=prov)


@dataclass
class EsdRow:
    big_gamma: float
    deaths: list[float]
    revivals: list[float]


def esd_table(initial, gamma: float, big_gamma_list, *, t_max: float = 2.0,
              grid: int = 2048, allow_unphysical: bool = False) -> list[EsdRow]:
    """Entanglement death/revival times per big_gamma, from the closed forms."""
    _, x0 = resolve_initial(initial)
    rows = []
    for bg in big_gamma_list:
        if abs(bg) > gamma + 1e-12 and not allow_unphysical:
            raise ParameterError(
                f"big_gamma={bg} exceeds gamma={gamma} (pass allow_unphysical)")
        if gamma == 0:
            rows.append(EsdRow(big_gamma=float(bg), deaths=[], revivals=[]))
            continue

        def curve(t, _bg=float(bg)):
            xs = propagate_x_series(x0, gamma, _bg, np.float64(t))
            return entanglement.concurrence_x_arrays(xs[None, :])[0][0]

        events = entanglement.esd_time(curve, t_max, grid=grid)
        rows.append(EsdRow(big_gamma=float(bg),
                           deaths=entanglement.death_times(events),
                           revivals=[e.t for e in events if e.kind == "revival"]))
    return rows


FIGURE_PRESETS = {
    2: ("bell-phi", "entanglement buildup with increasing cross-correlation"),
    3: ("bell-psi", "entanglement reduction with increasing cross-correlation"),
    4: ("x-crossover", "branch competition for a general X state"),
}


def figure_dataset(figure_id: int, *, method: str = "analytic",
                   gamma: float = 1.0, omega: float = 0.0, dt: float = 1e-3,
                   n_traj: int = 2000, seed: int = 0,
                   grid_points: int = DEFAULT_GRID_POINTS) -> SweepResult:
    """Concurrence sweep behind the bundled figure presets 2, 3 and 4."""
    if figure_id not in FIGURE_PRESETS:
        raise ParameterError(f"unknown figure id {figure_id}; expected 2, 3 or 4")
    initial, _ = FIGURE_PRESETS[figure_id]
    t_grid = np.linspace(0.0, DEFAULT_T_MAX / gamma, grid_points)
    result = sweep_concurrence(initial, gamma,
                               [g * gamma for g in BIG_GAMMA_GRID], t_grid,
                               method, omega=omega, dt=dt, n_traj=n_traj,
                               seed=seed)
    result.provenance["figure"] = figure_id
    result.provenance["description"] = FIGURE_PRESETS[figure_id][1]
    return result
