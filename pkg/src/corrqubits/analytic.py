"""Closed-form time evolution for X-shaped two-qubit states.

For identical coupling strengths (gamma_a = gamma_b = gamma) the populations
(a, b, c, d), the inner coherence z = rho23 and the anti-diagonal coherence
w = rho14 close on themselves.  Two solution families are implemented:

* ``propagate_x`` - the secular (rotating-frame) dynamics.  With
  D = a - b - c + d and kappa = sqrt(4*gamma^2 + 32*Gamma^2):

      q(t) = (a - d) e^{-4 gamma t},     r(t) = (b - c) e^{-4 gamma t}
      D(t) = e^{-6 gamma t} [ D cosh(kappa t) + (16 Gamma z - 2 gamma D) sinh(kappa t)/kappa ]
      z(t) = e^{-6 gamma t} [ z cosh(kappa t) + 2 (Gamma D + gamma z) sinh(kappa t)/kappa ]
      w(t) = w e^{-4 gamma t}

  The kappa-dependent pieces are the e^{-(6 gamma -+ kappa) t} relaxation of
  the population/coherence sector.

* ``propagate_x_full`` - the lab-frame solution of the unreduced sigma_x
  generator at omega = 0, where z + w is a conserved quantity and the
  (D, z - w) pair relaxes at rates 8*(gamma -+ Gamma).  This is the exact
  ensemble limit of the random-unitary trajectories at omega = 0.

All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class XState:
    """Six real parameters of an X-form density matrix.

    a, b, c, d are the populations (in basis |++>, |+->, |-+>, |-->), z the
    inner coherence rho23 and w the anti-diagonal coherence rho14.  Signed
    values are allowed for z and w; matrices with a complex rho14 are handled
    by storing its magnitude, which is all concurrence ever sees.
    """

    a: float
    b: float
    c: float
    d: float
    z: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d, self.z, self.w])

    def __array__(self, dtype=None):
        arr = self.as_array()
        return arr.astype(dtype) if dtype is not None else arr

    @property
    def trace(self) -> float:
        return self.a + self.b + self.c + self.d

    def validate(self, trace_tol: float = 1e-12, neg_tol: float = 1e-12) -> None:
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("X-state parameters must be finite")
        if abs(self.trace - 1.0) > trace_tol:
            raise ValueError(f"X-state trace {self.trace!r} differs from 1")
        if min(self.a, self.b, self.c, self.d) < -neg_tol:
            raise ValueError("X-state populations must be non-negative")

    def is_psd(self, tol: float = 1e-12) -> bool:
        return (abs(self.z) <= np.sqrt(max(self.b * self.c, 0.0)) + tol
                and abs(self.w) <= np.sqrt(max(self.a * self.d, 0.0)) + tol)

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the reconstructed matrix, in closed form."""
        outer = 0.5 * (self.a + self.d) - np.sqrt(0.25 * (self.a - self.d) ** 2 + self.w ** 2)
        inner = 0.5 * (self.b + self.c) - np.sqrt(0.25 * (self.b - self.c) ** 2 + self.z ** 2)
        return float(min(outer, inner))

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=np.complex128)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.a, self.b, self.c, self.d
        m[1, 2] = m[2, 1] = self.z
        m[0, 3] = m[3, 0] = self.w
        return m

    @staticmethod
    def from_matrix(rho: np.ndarray, tol: float = 1e-9) -> "XState":
        """Extract X parameters from a matrix that is X-shaped within tol.

        rho23 must be real within tol (the closed forms are derived for real
        z); rho14 may carry a phase, only its magnitude is kept.
        """
        rho = np.asarray(rho, dtype=np.complex128)
        off = rho.copy()
        for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (0, 3), (3, 0)):
            off[i, j] = 0.0
        worst = float(np.max(np.abs(off)))
        if worst > tol:
            raise ValueError(f"matrix is not X-shaped: off-pattern entry {worst:.3e}")
        if abs(rho[1, 2].imag) > tol:
            raise ValueError("rho23 must be real for the X parametrization; "
                             "route complex-z states through the integrator")
        return XState(a=float(rho[0, 0].real), b=float(rho[1, 1].real),
                      c=float(rho[2, 2].real), d=float(rho[3, 3].real),
                      z=float(rho[1, 2].real), w=float(abs(rho[0, 3])))


def bell_phi_xstate() -> XState:
    """(|++> + |-->)/sqrt(2): populations on the outer corners, w = 1/2."""
    return XState(0.5, 0.0, 0.0, 0.5, 0.0, 0.5)


def bell_psi_xstate() -> XState:
    """(|+-> + |-+>)/sqrt(2): populations in the inner block, z = 1/2."""
    return XState(0.0, 0.5, 0.5, 0.0, 0.5, 0.0)


def werner_xstate(p: float) -> XState:
    """p * |bell_phi><bell_phi| + (1 - p) * I/4."""
    return XState(p / 2 + (1 - p) / 4, (1 - p) / 4, (1 - p) / 4,
                  p / 2 + (1 - p) / 4, 0.0, p / 2)


def crossover_xstate() -> XState:
    """The X state used for the branch-competition demonstration.

    Both concurrence branches start equal at 1/6.  Note its reconstructed
    matrix is not PSD (smallest eigenvalue -1/3): the anti-diagonal coherence
    w = 1/2 exceeds sqrt(a*d) = 1/6.  The X dynamics and the fast concurrence
    formula remain well defined; the general eigenvalue route does not apply.
    """
    return XState(1 / 6, 1 / 3, 1 / 3, 1 / 6, 1 / 3, 1 / 2)


def maximally_mixed_xstate() -> XState:
    return XState(0.25, 0.25, 0.25, 0.25, 0.0, 0.0)


def kappa(gamma: float, big_gamma: float) -> float:
    """Composite relaxation rate sqrt(4*gamma^2 + 32*big_gamma^2)."""
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    return float(np.sqrt(4.0 * gamma * gamma + 32.0 * big_gamma * big_gamma))


def _sector_factors(gamma, big_gamma, t):
    """e^{-6 gamma t} cosh(kappa t)  and  e^{-6 gamma t} sinh(kappa t)/kappa.

    Evaluated through e^{-(6 gamma -+ kappa) t} so nothing overflows, with a
    series fallback for kappa*t -> 0 where sinh/kappa is 0/0.
    """
    k = kappa(gamma, big_gamma)
    t = np.asarray(t, dtype=np.float64)
    ep = np.exp(-(6.0 * gamma - k) * t)
    em = np.exp(-(6.0 * gamma + k) * t)
    c6 = 0.5 * (ep + em)
    kt = k * t
    small = kt < 1e-6
    with np.errstate(divide="ignore", invalid="ignore"):
        s6 = np.where(small,
                      t * np.exp(-6.0 * gamma * t) * (1.0 + kt * kt / 6.0),
                      (ep - em) / np.where(small, 1.0, 2.0 * k))
    return c6, s6


def propagate_x_series(x0: XState, gamma: float, big_gamma: float,
                       times) -> np.ndarray:
    """Secular closed forms evaluated on an array of times; returns (n, 6)."""
    times = np.asarray(times, dtype=np.float64)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    a, b, c, d, z, w = x0.a, x0.b, x0.c, x0.d, x0.z, x0.w
    d0 = a - b - c + d
    c6, s6 = _sector_factors(gamma, big_gamma, times)
    big_d = d0 * c6 + (16.0 * big_gamma * z - 2.0 * gamma * d0) * s6
    zt = z * c6 + 2.0 * (big_gamma * d0 + gamma * z) * s6
    e4 = np.exp(-4.0 * gamma * times)
    q = (a - d) * e4
    r = (b - c) * e4
    wt = w * e4
    out = np.empty(times.shape + (6,), dtype=np.float64)
    out[..., 0] = 0.25 * (1.0 + big_d) + 0.5 * q
    out[..., 1] = 0.25 * (1.0 - big_d) + 0.5 * r
    out[..., 2] = 0.25 * (1.0 - big_d) - 0.5 * r
    out[..., 3] = 0.25 * (1.0 + big_d) - 0.5 * q
    out[..., 4] = zt
    out[..., 5] = wt
    return out


def propagate_x(x0: XState, gamma: float, big_gamma: float, t: float) -> XState:
    """Secular closed-form propagation of an X state by time t >= 0."""
    if t < 0:
        raise ValueError("t must be non-negative")
    vec = propagate_x_series(x0, gamma, big_gamma, np.float64(t))
    return XState(*(float(v) for v in vec))


def propagate_x_full_series(x0: XState, gamma: float, big_gamma: float,
                            times) -> np.ndarray:
    """Lab-frame (omega = 0) closed forms of the unreduced generator, (n, 6).

    z + w is conserved; (D, z - w) relax at 8*(gamma - Gamma) and
    8*(gamma + Gamma).  This is the n -> infinity limit of the trajectory
    ensemble at omega = 0.
    """
    times = np.asarray(times, dtype=np.float64)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    a, b, c, d, z, w = x0.a, x0.b, x0.c, x0.d, x0.z, x0.w
    d0 = a - b - c + d
    u0 = z - w
    s = z + w
    eslow = np.exp(-8.0 * (gamma - big_gamma) * times)
    efast = np.exp(-8.0 * (gamma + big_gamma) * times)
    ch = 0.5 * (eslow + efast)
    sh = 0.5 * (eslow - efast)
    big_d = d0 * ch + 2.0 * u0 * sh
    u = u0 * ch + 0.5 * d0 * sh
    e4 = np.exp(-4.0 * gamma * times)
    q = (a - d) * e4
    r = (b - c) * e4
    out = np.empty(times.shape + (6,), dtype=np.float64)
    out[..., 0] = 0.25 * (1.0 + big_d) + 0.5 * q
    out[..., 1] = 0.25 * (1.0 - big_d) + 0.5 * r
    out[..., 2] = 0.25 * (1.0 - big_d) - 0.5 * r
    out[..., 3] = 0.25 * (1.0 + big_d) - 0.5 * q
    out[..., 4] = 0.5 * (s + u)
    out[..., 5] = 0.5 * (s - u)
    return out


def propagate_x_full(x0: XState, gamma: float, big_gamma: float, t: float) -> XState:
    if t < 0:
        raise ValueError("t must be non-negative")
    vec = propagate_x_full_series(x0, gamma, big_gamma, np.float64(t))
    return XState(*(float(v) for v in vec))


def bell_phi_solution(gamma: float, big_gamma: float, t: float) -> XState:
    """Time-evolved (|++> + |-->)/sqrt(2) initial state, written out directly.

    rho11 = 1/4 + e^{-6 gamma t}[kappa cosh(kappa t) - 2 gamma sinh(kappa t)]/(4 kappa),
    rho23 = 2 Gamma e^{-6 gamma t} sinh(kappa t)/kappa,  rho14 = e^{-4 gamma t}/2,
    with rho22 mirroring rho11 about 1/4 and rho33 = rho22, rho44 = rho11.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    c6, s6 = _sector_factors(gamma, big_gamma, np.float64(t))
    big_d = float(c6 - 2.0 * gamma * s6)
    a = 0.25 * (1.0 + big_d)
    b = 0.25 * (1.0 - big_d)
    z = float(2.0 * big_gamma * s6)
    w = 0.5 * np.exp(-4.0 * gamma * t)
    return XState(a, b, b, a, z, float(w))


def bell_psi_solution(gamma: float, big_gamma: float, t: float) -> XState:
    """Time-evolved (|+-> + |-+>)/sqrt(2) initial state.

    The raw solution family for this state comes out with twice the physical
    trace; see ``bell_psi_solution_raw``.  Here the overall factor 1/2 is
    applied, after which the result coincides with ``propagate_x`` of the
    corresponding X state:

    rho22 = 1/4 + e^{-6 gamma t}[kappa cosh - (2 gamma + 8 Gamma) sinh]/(4 kappa),
    rho23 = e^{-6 gamma t}[cosh/2 + (gamma - 2 Gamma) sinh/kappa],
    rho11 mirroring rho22 about 1/4, rho14 = 0.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    c6, s6 = _sector_factors(gamma, big_gamma, np.float64(t))
    big_d = float(-c6 + (2.0 * gamma + 8.0 * big_gamma) * s6)
    a = 0.25 * (1.0 + big_d)
    b = 0.25 * (1.0 - big_d)
    z = float(0.5 * c6 + (gamma - 2.0 * big_gamma) * s6)
    return XState(a, b, b, a, z, 0.0)


def bell_psi_solution_raw(gamma: float, big_gamma: float, t: float) -> np.ndarray:
    """Unnormalized variant of the psi-family solution, (rho11, rho22, rho23).

    Kept as a conformance record: it starts at trace 2 (rho22(0) = 1 rather
    than 1/2) and equals exactly twice the normalized solution.  Not used by
    any dynamics path.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    k = kappa(gamma, big_gamma)
    em = np.exp(-(6.0 * gamma + k) * t)
    e2k = np.exp(2.0 * k * t)
    pref = em / (4.0 * k) if k > 0 else np.nan
    rho11 = pref * (-(2.0 * gamma + 8.0 * big_gamma) * (1.0 - e2k)
                    - k * (1.0 + e2k - 2.0 * np.exp((6.0 * gamma + k) * t)))
    rho22 = pref * ((2.0 * gamma + 8.0 * big_gamma) * (1.0 - e2k)
                    + k * (1.0 + e2k + 2.0 * np.exp((6.0 * gamma + k) * t)))
    rho23 = pref * (-(4.0 * gamma - 8.0 * big_gamma) * (1.0 - e2k)
                    + 2.0 * k * (1.0 + e2k))
    return np.array([rho11, rho22, rho23])
