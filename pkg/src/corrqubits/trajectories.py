"""Random-unitary unraveling of the master equation.

Each trajectory applies per step the exact unitary

    U = exp(-i (H dt + sx_A dWa + sx_B dWb))

with (dWa, dWb) jointly Gaussian, mean zero, covariance
[[2*gamma_a, 2*big_gamma], [2*big_gamma, 2*gamma_b]] * dt drawn through the
2x2 Cholesky factor.  This is the Stratonovich-consistent reading of the
multiplicative noise; expanding the averaged step reproduces the CALIBRATED
generator: the double commutators come out as -2*gamma*(rho - sx rho sx) and
the cross term carries coefficient 2*big_gamma, which is the moment-matching
check pinned in the test suite.

Trajectories are embarrassingly parallel.  Work is split into fixed-size
chunks whose partial sums are written to per-chunk slots and combined in chunk
order, so the ensemble average is bit-identical for any thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, linalg
from .integrate import EvolutionSeries, NumericalFailureError, _diagnostics_full
from .model import NoiseParams

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class TrajectoryConfig:
    """Ensemble size, step size, horizon, master seed and noise parameters."""

    n_traj: int
    dt: float
    t_end: float
    seed: int
    params: NoiseParams
    snapshot_stride: int = 1
    chunk_size: int = 256

    def __post_init__(self):
        if self.n_traj < 1:
            raise ValueError("n_traj must be at least 1")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")
        if not self.params.is_physical:
            raise ValueError(
                "noise covariance is not PSD: |big_gamma| exceeds "
                "sqrt(gamma_a * gamma_b)")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


class IncrementStream:
    """Per-trajectory substream of correlated noise increments.

    Deterministically derived from (seed, trajectory index); each call to
    ``sample_increment`` consumes one counter slot.
    """

    def __init__(self, seed: int, traj_index: int = 0):
        self.key = _kernels.traj_key_py(seed & _MASK64, traj_index)
        self.counter = 0

    def next_normals(self) -> tuple[float, float]:
        n1, n2 = _kernels.normals_py(self.key, self.counter)
        self.counter += 1
        return n1, n2


def sample_increment(stream: IncrementStream, params: NoiseParams,
                     dt: float) -> tuple[float, float]:
    """One correlated pair (dWa, dWb) with covariance params.covariance()*dt."""
    if not params.is_physical:
        raise ValueError("noise covariance is not PSD")
    l11, l21, l22 = _kernels.increment_cholesky(
        params.gamma_a, params.gamma_b, params.big_gamma, dt)
    n1, n2 = stream.next_normals()
    return l11 * n1, l21 * n1 + l22 * n2


def sample_increments(seed: int, traj_index: int, n: int, params: NoiseParams,
                      dt: float) -> np.ndarray:
    """(n, 2) array of increments from one substream, for moment tests."""
    stream = IncrementStream(seed, traj_index)
    out = np.empty((n, 2))
    for i in range(n):
        out[i] = sample_increment(stream, params, dt)
    return out


def _as_pure_state(state: np.ndarray, tol: float = 1e-12) -> np.ndarray | None:
    """Return the normalized 4-vector if `state` is pure, else None."""
    state = np.asarray(state, dtype=np.complex128)
    if state.shape == (4,):
        nrm = np.linalg.norm(state)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError("initial state vector must be normalized")
        return state / nrm
    if state.shape == (4, 4):
        if abs(np.trace(state).real - 1.0) > 1e-8:
            raise ValueError("initial density matrix must have unit trace")
        vals, vecs = linalg.eig_hermitian(0.5 * (state + np.conj(state.T)),
                                          herm_tol=1e-8)
        if abs(vals[0] - 1.0) <= 1e-10 and np.all(np.abs(vals[1:]) <= tol):
            return vecs[:, 0]
        return None
    raise ValueError("initial state must be a 4-vector or a 4x4 matrix")


def evolve_trajectory(state0: np.ndarray, config: TrajectoryConfig,
                      traj_index: int = 0):
    """One random-unitary trajectory; returns (times, states).

    For a pure input, states is (n_snap, 4) and the norm is preserved to
    machine precision per step; for a mixed input the full matrix is
    conjugated and states is (n_snap, 4, 4).
    """
    p = config.params
    stride = config.snapshot_stride
    n_steps = config.n_steps
    if n_steps % stride != 0:
        raise ValueError("snapshot_stride must divide the number of steps")
    psi = _as_pure_state(state0)
    args = (config.seed & _MASK64, traj_index, p.gamma_a, p.gamma_b,
            p.big_gamma, p.omega, config.dt, n_steps, stride)
    if psi is not None:
        states = _kernels.trajectory_states_psi(
            args[0], args[1], np.ascontiguousarray(psi), *args[2:])
    else:
        rho = np.ascontiguousarray(np.asarray(state0, dtype=np.complex128))
        states = _kernels.trajectory_states_rho(args[0], args[1], rho, *args[2:])
    if not np.isfinite(states).all():
        raise NumericalFailureError("non-finite state in trajectory")
    times = config.dt * stride * np.arange(states.shape[0])
    return times, states


def ensemble_average(state0: np.ndarray, config: TrajectoryConfig) -> EvolutionSeries:
    """Mean of n_traj unitary trajectories on the snapshot grid.

    Deterministic for a fixed seed: per-trajectory noise is counter-based and
    chunk partial sums are combined in index order regardless of parallelism.
    Pure inputs evolve as state vectors; mixed inputs are conjugated as
    matrices (no initial-state sampling, so no extra Monte Carlo variance).
    """
    p = config.params
    stride = config.snapshot_stride
    n_steps = config.n_steps
    if n_steps % stride != 0:
        raise ValueError("snapshot_stride must divide the number of steps")
    n_chunks = (config.n_traj + config.chunk_size - 1) // config.chunk_size
    n_snap = n_steps // stride + 1
    out = np.zeros((n_chunks, n_snap, 4, 4), dtype=np.complex128)
    psi = _as_pure_state(state0)
    common = (p.gamma_a, p.gamma_b, p.big_gamma, p.omega, config.dt,
              n_steps, stride)
    if n_steps == 0:
        rho0 = (np.outer(psi, np.conj(psi)) if psi is not None
                else np.asarray(state0, dtype=np.complex128))
        states = rho0[None, :, :].copy()
    else:
        if psi is not None:
            _kernels.ensemble_chunk_sums_psi(
                config.seed & _MASK64, config.n_traj, config.chunk_size,
                np.ascontiguousarray(psi), *common, out)
        else:
            rho0 = np.ascontiguousarray(np.asarray(state0, dtype=np.complex128))
            _kernels.ensemble_chunk_sums_rho(
                config.seed & _MASK64, config.n_traj, config.chunk_size,
                rho0, *common, out)
        states = out.sum(axis=0) / config.n_traj
        if not np.isfinite(states).all():
            raise NumericalFailureError("non-finite ensemble average")
    times = config.dt * stride * np.arange(states.shape[0])
    trace_dev, herm, min_eig = _diagnostics_full(states)
    meta = {"method": "trajectories", "convention": "calibrated",
            "gamma_a": p.gamma_a, "gamma_b": p.gamma_b,
            "big_gamma": p.big_gamma, "omega": p.omega,
            "dt": config.dt, "stride": stride, "t_end": n_steps * config.dt,
            "n_traj": config.n_traj, "seed": config.seed,
            "chunk_size": config.chunk_size,
            "backend": _kernels.active_backend()}
    return EvolutionSeries(times=times, states=states, trace_dev=trace_dev,
                           herm_defect=herm, min_eig=min_eig, meta=meta)
