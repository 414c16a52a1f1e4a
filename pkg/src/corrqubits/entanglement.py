"""Concurrence, entanglement sudden death, and branch-dominance analysis.

The general route computes the eigenvalues of sqrt(rho) @ rho_tilde @ sqrt(rho)
(the Hermitian equivalent of rho @ rho_tilde, with identical spectrum) so the
Hermitian eigensolver can be reused throughout.  The eigenvalue combination is
the standard one, max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}, which is
the normalization under which the X-state fast path

    C = 2 max{0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33)}

holds verbatim and Bell states give exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import linalg
from .analytic import XState


class XConcurrence(NamedTuple):
    value: float
    branch_z: float
    branch_w: float


@dataclass(frozen=True)
class ConcurrencePoint:
    """Concurrence at one time, with both X-branch values exposed."""

    t: float
    value: float
    branch_z: float
    branch_w: float


@dataclass(frozen=True)
class EsdEvent:
    """A zero crossing of the concurrence: 'death' or 'revival'."""

    t: float
    kind: str


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """(sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    rho = np.asarray(rho, dtype=np.complex128)
    return linalg.SY_SY @ np.conj(rho) @ linalg.SY_SY


def concurrence(rho: np.ndarray, psd_tol: float = 1e-10) -> float:
    """Concurrence of an arbitrary two-qubit density matrix, in [0, 1]."""
    rho = np.asarray(rho, dtype=np.complex128)
    root = linalg.sqrt_psd(rho, psd_tol=psd_tol)
    m = root @ spin_flip(rho) @ root
    m = 0.5 * (m + np.conj(m.T))
    vals = linalg.eigvals_hermitian(m, herm_tol=1e-8)
    # tiny negatives are roundoff from the PSD product
    lams = np.sqrt(np.clip(vals, 0.0, None))
    c = lams[0] - lams[1] - lams[2] - lams[3]
    return float(min(max(c, 0.0), 1.0))


def concurrence_x(x: XState) -> XConcurrence:
    """Fast path for X states: branch values and 2*max{0, branches}."""
    bz = abs(x.z) - np.sqrt(max(x.a * x.d, 0.0))
    bw = abs(x.w) - np.sqrt(max(x.b * x.c, 0.0))
    return XConcurrence(value=float(2.0 * max(0.0, bz, bw)),
                        branch_z=float(bz), branch_w=float(bw))


def concurrence_x_arrays(xs: np.ndarray):
    """Vectorized branch/concurrence evaluation for an (n, 6) X series."""
    xs = np.asarray(xs, dtype=np.float64)
    bz = np.abs(xs[:, 4]) - np.sqrt(np.clip(xs[:, 0] * xs[:, 3], 0.0, None))
    bw = np.abs(xs[:, 5]) - np.sqrt(np.clip(xs[:, 1] * xs[:, 2], 0.0, None))
    c = 2.0 * np.maximum(0.0, np.maximum(bz, bw))
    return c, bz, bw


def concurrence_points(times, xs) -> list[ConcurrencePoint]:
    c, bz, bw = concurrence_x_arrays(xs)
    return [ConcurrencePoint(float(t), float(cv), float(z), float(w))
            for t, cv, z, w in zip(times, c, bz, bw)]


def esd_time(curve: Callable[[float], float], t_max: float, *,
             grid: int = 2048, refine_tol: float = 1e-8) -> list[EsdEvent]:
    """Zero crossings of a concurrence curve on [0, t_max].

    Scans a uniform grid for changes of the predicate C(t) > 0, then bisects
    each bracketing interval down to ``refine_tol``.  Bisection on the
    predicate (not on C itself) is deliberate: C has a kink at its zeros, so
    derivative-based refinement is unreliable there.  Deaths and revivals are
    returned interleaved in time order; an empty list means no crossing.
    """
    if grid < 400:
        raise ValueError("scan grid must have at least 400 points")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    ts = np.linspace(0.0, t_max, grid)
    alive = [curve(float(t)) > 0.0 for t in ts]
    events: list[EsdEvent] = []
    for i in range(1, grid):
        if alive[i] == alive[i - 1]:
            continue
        lo, hi = float(ts[i - 1]), float(ts[i])
        was_alive = alive[i - 1]
        while hi - lo > refine_tol:
            mid = 0.5 * (lo + hi)
            if (curve(mid) > 0.0) == was_alive:
                lo = mid
            else:
                hi = mid
        events.append(EsdEvent(t=0.5 * (lo + hi),
                               kind="death" if was_alive else "revival"))
    return events


def death_times(events: Sequence[EsdEvent]) -> list[float]:
    return [e.t for e in events if e.kind == "death"]


def dominance_crossover(points: Sequence[ConcurrencePoint]) -> list[float]:
    """Times where the dominant branch (argmax of branch_z, branch_w) switches.

    Exact ties resolve to the z branch, so a state whose branches start equal
    and immediately separate registers a switch at the first grid step.  Only
    switches with positive concurrence on at least one side are reported; the
    crossing time is refined by linear interpolation of branch_z - branch_w.
    """
    if len(points) < 2:
        return []
    out: list[float] = []
    prev_dom = 0 if points[0].branch_z >= points[0].branch_w else 1
    for i in range(1, len(points)):
        p = points[i]
        diff = p.branch_z - p.branch_w
        dom = prev_dom if diff == 0.0 else (0 if diff > 0.0 else 1)
        if dom != prev_dom and (p.value > 0.0 or points[i - 1].value > 0.0):
            d0 = points[i - 1].branch_z - points[i - 1].branch_w
            d1 = diff
            if d1 != d0:
                frac = d0 / (d0 - d1)
            else:
                frac = 0.5
            out.append(points[i - 1].t + frac * (p.t - points[i - 1].t))
        if diff != 0.0:
            prev_dom = dom
    return out
