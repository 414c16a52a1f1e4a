"""Fixed-step RK4 integration of the master equation, with physicality checks.

Fixed step rather than adaptive: the system is 16-dimensional, smooth and
stiffness-free for physical parameters, and a deterministic grid makes the
step-halving accuracy checks and byte-stable outputs trivial.  The trace is
never renormalized mid-run; its drift is measured and reported instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, linalg
from .analytic import XState
from .model import GeneratorConvention, NoiseParams, secular_rhs


class NumericalFailureError(RuntimeError):
    """Raised when NaN/Inf shows up mid-run; carries the offending step."""


@dataclass
class EvolutionSeries:
    """Time grid plus per-time states and physicality diagnostics.

    ``states`` always holds the reconstructed 4x4 matrices; ``xs`` is the
    (n, 6) X-parameter view for runs produced on the X sector, else None.
    Immutable by convention once constructed.
    """

    times: np.ndarray
    states: np.ndarray
    trace_dev: np.ndarray
    herm_defect: np.ndarray
    min_eig: np.ndarray
    xs: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.times) == 0:
            raise ValueError("an evolution series needs at least one snapshot")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        n = len(self.times)
        for name in ("states", "trace_dev", "herm_defect", "min_eig"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have one entry per time")

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class PhysicalityScan:
    max_trace_dev: float
    max_herm_defect: float
    min_eigenvalue: float
    first_violation_time: float | None


def _diagnostics_full(states: np.ndarray):
    trace_dev = np.abs(np.einsum("nii->n", states) - 1.0).astype(np.float64)
    herm = np.max(np.abs(states - np.conj(np.transpose(states, (0, 2, 1)))),
                  axis=(1, 2)).astype(np.float64)
    hermitized = 0.5 * (states + np.conj(np.transpose(states, (0, 2, 1))))
    vals = _kernels.eigvals_hermitian_batch(np.ascontiguousarray(hermitized))
    return trace_dev, herm, vals[:, -1]


def _check_finite(states: np.ndarray, dt: float, stride: int) -> None:
    bad = ~np.isfinite(states).all(axis=tuple(range(1, states.ndim)))
    if bad.any():
        snap = int(np.argmax(bad))
        raise NumericalFailureError(
            f"non-finite state at step {snap * stride} (t = {snap * stride * dt:g})")


def validate_density_matrix(rho: np.ndarray, *, herm_tol: float = 1e-10,
                            trace_tol: float = 1e-10, psd_tol: float = 1e-10,
                            require_psd: bool = True) -> np.ndarray:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 density matrix")
    linalg.require_hermitian(rho, herm_tol, "rho0")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"rho0 trace {tr!r} differs from 1")
    if require_psd:
        vals = linalg.eigvals_hermitian(0.5 * (rho + np.conj(rho.T)))
        if vals[-1] < -psd_tol:
            raise ValueError(
                f"rho0 min eigenvalue {vals[-1]:.3e} below -{psd_tol:.1e}; "
                "pass require_psd=False to integrate a non-PSD Hermitian input")
    return rho


def rk4_evolve(rho0: np.ndarray, p: NoiseParams,
               convention: GeneratorConvention = GeneratorConvention.CALIBRATED,
               t_end: float = 1.0, dt: float = 1e-3, stride: int = 1,
               require_psd: bool = True) -> EvolutionSeries:
    """RK4 on the full 4x4 matrix ODE; snapshots every ``stride`` steps.

    Parameters
    ----------
    rho0 : valid density matrix (Hermitian, unit trace, PSD unless
        ``require_psd=False`` is passed explicitly).
    t_end, dt : horizon and fixed step; t_end is rounded to a whole number of
        steps and the effective value recorded in ``meta``.
    """
    rho0 = validate_density_matrix(rho0, require_psd=require_psd)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    n_steps = int(round(t_end / dt))
    if n_steps == 0:
        states = rho0[None, :, :].copy()
        times = np.array([0.0])
    else:
        if n_steps % stride != 0:
            raise ValueError("stride must divide the number of steps")
        states = _kernels.rk4_full_series(
            np.ascontiguousarray(rho0), p.gamma_a, p.gamma_b, p.big_gamma,
            p.omega, convention.cross_multiplier, dt, n_steps, stride)
        _check_finite(states, dt, stride)
        times = dt * stride * np.arange(states.shape[0])
    trace_dev, herm, min_eig = _diagnostics_full(states)
    meta = {"method": "full-rk4", "convention": convention.value,
            "gamma_a": p.gamma_a, "gamma_b": p.gamma_b,
            "big_gamma": p.big_gamma, "omega": p.omega,
            "dt": dt, "stride": stride, "t_end": n_steps * dt}
    return EvolutionSeries(times=times, states=states, trace_dev=trace_dev,
                           herm_defect=herm, min_eig=min_eig, meta=meta)


def _xs_to_states(xs: np.ndarray) -> np.ndarray:
    n = xs.shape[0]
    states = np.zeros((n, 4, 4), dtype=np.complex128)
    for i, idx in enumerate(((0, 0), (1, 1), (2, 2), (3, 3))):
        states[:, idx[0], idx[1]] = xs[:, i]
    states[:, 1, 2] = states[:, 2, 1] = xs[:, 4]
    states[:, 0, 3] = states[:, 3, 0] = xs[:, 5]
    return states


def _xs_min_eig(xs: np.ndarray) -> np.ndarray:
    outer = 0.5 * (xs[:, 0] + xs[:, 3]) - np.sqrt(
        0.25 * (xs[:, 0] - xs[:, 3]) ** 2 + xs[:, 5] ** 2)
    inner = 0.5 * (xs[:, 1] + xs[:, 2]) - np.sqrt(
        0.25 * (xs[:, 1] - xs[:, 2]) ** 2 + xs[:, 4] ** 2)
    return np.minimum(outer, inner)


def rk4_evolve_secular(x0: XState, gamma: float, big_gamma: float,
                       t_end: float, dt: float, stride: int = 1) -> EvolutionSeries:
    """RK4 on the reduced 6-dimensional real X-sector system."""
    x0.validate(trace_tol=1e-9)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be non-negative")
    n_steps = int(round(t_end / dt))
    y = x0.as_array()
    if n_steps == 0:
        xs = y[None, :].copy()
    else:
        if n_steps % stride != 0:
            raise ValueError("stride must divide the number of steps")
        xs = np.empty((n_steps // stride + 1, 6))
        xs[0] = y
        for j in range(n_steps):
            k1 = secular_rhs(y, gamma, big_gamma)
            k2 = secular_rhs(y + 0.5 * dt * k1, gamma, big_gamma)
            k3 = secular_rhs(y + 0.5 * dt * k2, gamma, big_gamma)
            k4 = secular_rhs(y + dt * k3, gamma, big_gamma)
            y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if (j + 1) % stride == 0:
                xs[(j + 1) // stride] = y
    if not np.isfinite(xs).all():
        bad = int(np.argmax(~np.isfinite(xs).all(axis=1)))
        raise NumericalFailureError(
            f"non-finite state at step {bad * stride} (t = {bad * stride * dt:g})")
    times = dt * stride * np.arange(xs.shape[0]) if n_steps else np.array([0.0])
    states = _xs_to_states(xs)
    trace_dev = np.abs(xs[:, :4].sum(axis=1) - 1.0)
    herm = np.zeros(xs.shape[0])  # real symmetric by construction
    meta = {"method": "secular-rk4", "convention": "calibrated",
            "gamma_a": gamma, "gamma_b": gamma, "big_gamma": big_gamma,
            "omega": 0.0, "dt": dt, "stride": stride, "t_end": n_steps * dt}
    return EvolutionSeries(times=times, states=states, trace_dev=trace_dev,
                           herm_defect=herm, min_eig=_xs_min_eig(xs), xs=xs,
                           meta=meta)


def physicality_scan(series: EvolutionSeries, tol: float = 1e-8) -> PhysicalityScan:
    """Worst-case trace/hermiticity/positivity diagnostics over a series."""
    if series is None or len(series.times) == 0:
        raise ValueError("empty series")
    min_idx = int(np.argmin(series.min_eig))
    violations = np.where(series.min_eig < -tol)[0]
    first = float(series.times[violations[0]]) if len(violations) else None
    return PhysicalityScan(
        max_trace_dev=float(np.max(series.trace_dev)),
        max_herm_defect=float(np.max(series.herm_defect)),
        min_eigenvalue=float(series.min_eig[min_idx]),
        first_violation_time=first)
