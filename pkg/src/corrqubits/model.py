"""Noise parameters and the two-qubit master-equation generator.

The dynamics being modeled: two uncoupled qubits with splitting omega, each
kicked along sigma_x by a classical white noise; the two noises have
self-correlations 2*gamma_a, 2*gamma_b and cross-correlation 2*big_gamma per
unit time.  Averaging the random unitaries gives

    d(rho)/dt = -i[H, rho]
                - 2 gamma_a (rho - sxA rho sxA) - 2 gamma_b (rho - sxB rho sxB)
                - k big_gamma (sxA sxB rho + rho sxA sxB - sxA rho sxB - sxB rho sxA)

with k = 2 for the noise-calibrated generator.  The variant with k = 4
(DOUBLED_CROSS) is retained for conformance experiments only: it is not
completely positive once big_gamma exceeds gamma/2 and does not match the
closed-form solutions.

``secular_rhs`` is the rotating-wave reduction of the calibrated generator on
the X sector: the couplings between the rho14 coherence and the
(populations, rho23) sector oscillate at twice the qubit splitting in the
rotating frame and are dropped.  That reduced system is what the closed forms
in `analytic` solve, and the full generator relaxes onto it as omega grows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import SX_A, SX_B, kron


class GeneratorConvention(enum.Enum):
    """Cross-term coefficient convention: noise-calibrated 2*Gamma, or the
    doubled 4*Gamma variant kept for fidelity-to-source experiments."""

    CALIBRATED = "calibrated"
    DOUBLED_CROSS = "doubled-cross"

    @property
    def cross_multiplier(self) -> float:
        return 2.0 if self is GeneratorConvention.CALIBRATED else 4.0


@dataclass(frozen=True)
class NoiseParams:
    """Noise strengths, cross-correlation and qubit splitting (units 1/time)."""

    gamma_a: float
    gamma_b: float
    big_gamma: float
    omega: float = 0.0

    def __post_init__(self):
        vals = (self.gamma_a, self.gamma_b, self.big_gamma, self.omega)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError("noise parameters must be finite")
        if self.gamma_a < 0 or self.gamma_b < 0:
            raise ValueError("gamma_a and gamma_b must be non-negative")

    @property
    def correlation_bound(self) -> float:
        """Largest |big_gamma| compatible with a PSD noise covariance."""
        return float(np.sqrt(self.gamma_a * self.gamma_b))

    @property
    def is_physical(self) -> bool:
        return abs(self.big_gamma) <= self.correlation_bound + 1e-12

    def covariance(self) -> np.ndarray:
        """Noise increment covariance per unit time [[2ga, 2G], [2G, 2gb]]."""
        return np.array([[2.0 * self.gamma_a, 2.0 * self.big_gamma],
                         [2.0 * self.big_gamma, 2.0 * self.gamma_b]])


@dataclass(frozen=True)
class PhysicalityReport:
    physical: bool
    correlation_bound: float
    covariance: np.ndarray = field(repr=False)
    covariance_psd: bool
    min_covariance_eig: float


def validate(p: NoiseParams) -> PhysicalityReport:
    """Check |big_gamma| <= sqrt(gamma_a * gamma_b) and the covariance PSD status."""
    if p.gamma_a < 0 or p.gamma_b < 0:
        raise ValueError("gamma_a and gamma_b must be non-negative")
    cov = p.covariance()
    tr = cov[0, 0] + cov[1, 1]
    det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
    min_eig = 0.5 * (tr - np.sqrt(max(tr * tr - 4.0 * det, 0.0)))
    psd = min_eig >= -1e-12
    return PhysicalityReport(physical=p.is_physical,
                             correlation_bound=p.correlation_bound,
                             covariance=cov,
                             covariance_psd=bool(psd),
                             min_covariance_eig=float(min_eig))


def hamiltonian(omega: float) -> np.ndarray:
    return 0.5 * omega * (kron(linalg.SIGMA_Z, linalg.ID2)
                          + kron(linalg.ID2, linalg.SIGMA_Z))


def liouvillian_apply(p: NoiseParams, rho: np.ndarray,
                      convention: GeneratorConvention = GeneratorConvention.CALIBRATED,
                      herm_tol: float = 1e-10) -> np.ndarray:
    """d(rho)/dt under the sigma_x-sandwich form of the generator.

    Output is traceless and Hermitian for Hermitian input.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    linalg.require_hermitian(rho, herm_tol, "rho")
    h = hamiltonian(p.omega)
    out = -1j * (h @ rho - rho @ h)
    out -= 2.0 * p.gamma_a * (rho - SX_A @ rho @ SX_A)
    out -= 2.0 * p.gamma_b * (rho - SX_B @ rho @ SX_B)
    k = convention.cross_multiplier
    xx = SX_A @ SX_B
    out -= k * p.big_gamma * (xx @ rho + rho @ xx
                              - SX_A @ rho @ SX_B - SX_B @ rho @ SX_A)
    return out


_PA = kron(linalg.SIGMA_PLUS, linalg.ID2)
_MA = kron(linalg.SIGMA_MINUS, linalg.ID2)
_PB = kron(linalg.ID2, linalg.SIGMA_PLUS)
_MB = kron(linalg.ID2, linalg.SIGMA_MINUS)


def liouvillian_apply_pm(p: NoiseParams, rho: np.ndarray,
                         counter_rotating: bool = True,
                         herm_tol: float = 1e-10) -> np.ndarray:
    """The generator written through sigma_+/- ladder operators.

    With ``counter_rotating=True`` (default) the expansion is complete and the
    map equals ``liouvillian_apply`` with the CALIBRATED convention exactly.
    With ``counter_rotating=False`` only the excitation-conserving terms are
    kept (the +H.c. groups with single coefficients gamma_a, gamma_b,
    big_gamma); that truncation is the rotating-wave generator whose X-sector
    restriction is ``secular_rhs``.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    linalg.require_hermitian(rho, herm_tol, "rho")
    h = hamiltonian(p.omega)
    out = -1j * (h @ rho - rho @ h)
    t = np.zeros((4, 4), dtype=np.complex128)
    t -= p.gamma_a * (_PA @ _MA @ rho - _MA @ rho @ _PA
                      - _PA @ rho @ _MA + rho @ _MA @ _PA)
    t -= p.gamma_b * (_PB @ _MB @ rho - _MB @ rho @ _PB
                      - _PB @ rho @ _MB + rho @ _MB @ _PB)
    t -= p.big_gamma * (_PA @ _MB @ rho - _MB @ rho @ _PA
                        - _PA @ rho @ _MB + rho @ _MB @ _PA)
    t -= p.big_gamma * (_PB @ _MA @ rho - _MA @ rho @ _PB
                        - _PB @ rho @ _MA + rho @ _MA @ _PB)
    out += t + np.conj(t.T)
    if counter_rotating:
        cr = np.zeros((4, 4), dtype=np.complex128)
        cr += 2.0 * p.gamma_a * (_PA @ rho @ _PA + _MA @ rho @ _MA)
        cr += 2.0 * p.gamma_b * (_PB @ rho @ _PB + _MB @ rho @ _MB)
        s2 = _PA @ _PB + _MA @ _MB
        cr -= 2.0 * p.big_gamma * (s2 @ rho + rho @ s2
                                   - _PA @ rho @ _PB - _MA @ rho @ _MB
                                   - _PB @ rho @ _PA - _MB @ rho @ _MA)
        out += cr
    return out


def secular_rhs(x, gamma: float, big_gamma: float) -> np.ndarray:
    """Right-hand side of the reduced 6-dimensional X-sector system.

    Valid for identical qubits (gamma_a = gamma_b = gamma).  Accepts an XState
    or any length-6 array-like (a, b, c, d, z, w); the trace of the derivative
    vanishes identically.
    """
    a, b, c, d, z, w = np.asarray(x, dtype=np.float64)
    delta = a - b - c + d
    return np.array([
        -4.0 * gamma * a + 2.0 * gamma * (b + c) + 4.0 * big_gamma * z,
        -4.0 * gamma * b + 2.0 * gamma * (a + d) - 4.0 * big_gamma * z,
        -4.0 * gamma * c + 2.0 * gamma * (a + d) - 4.0 * big_gamma * z,
        -4.0 * gamma * d + 2.0 * gamma * (b + c) + 4.0 * big_gamma * z,
        -4.0 * gamma * z + 2.0 * big_gamma * delta,
        -4.0 * gamma * w,
    ])


def delta_z_matrix(gamma: float, big_gamma: float) -> np.ndarray:
    """Coefficient matrix of the closed (delta, z) subsystem of secular_rhs,
    delta = a - b - c + d.  Its eigenvalues are -6*gamma +- kappa."""
    return np.array([[-8.0 * gamma, 16.0 * big_gamma],
                     [2.0 * big_gamma, -4.0 * gamma]])
