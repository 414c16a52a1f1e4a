"""Minimal complex 2x2 / 4x4 matrix kernel.

Pauli operators, Kronecker products, a cyclic-Jacobi Hermitian eigensolver and
a PSD matrix square root.  Everything operates on plain numpy arrays and is a
pure function of its inputs, so concurrent use needs no locking.
"""

from __future__ import annotations

import numpy as np

from ._kernels import jacobi_eigh

ID2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with qubit A as the left (slow) index."""
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))


# two-qubit operators in the basis |1>=|++>, |2>=|+->, |3>=|-+>, |4>=|-->
SX_A = kron(SIGMA_X, ID2)
SX_B = kron(ID2, SIGMA_X)
SY_SY = kron(SIGMA_Y, SIGMA_Y)
ID4 = np.eye(4, dtype=np.complex128)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m.T)


def hermiticity_defect(m: np.ndarray) -> float:
    """max |M[i,j] - conj(M[j,i])| over all entries."""
    return float(np.max(np.abs(m - np.conj(m.T))))


def require_hermitian(m: np.ndarray, tol: float, what: str = "matrix") -> None:
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(
            f"{what} is not Hermitian: defect {defect:.3e} exceeds tolerance {tol:.1e}")


def eig_hermitian(m: np.ndarray, herm_tol: float = 1e-9):
    """Eigenvalues (descending) and orthonormal eigenvector columns of a
    Hermitian matrix, via cyclic Jacobi rotations.

    Degenerate eigenvalues carry no particular eigenvector choice; only the
    spectrum and the spanned subspaces are contractual.
    """
    m = np.asarray(m, dtype=np.complex128)
    require_hermitian(m, herm_tol)
    h = 0.5 * (m + np.conj(m.T))
    return jacobi_eigh(np.ascontiguousarray(h))


def eigvals_hermitian(m: np.ndarray, herm_tol: float = 1e-9) -> np.ndarray:
    return eig_hermitian(m, herm_tol)[0]


def sqrt_psd(m: np.ndarray, psd_tol: float = 1e-10) -> np.ndarray:
    """Hermitian PSD square root R with R @ R = M.

    Eigenvalues in [-psd_tol, 0) are clamped to zero; anything below -psd_tol
    is a genuine PSD violation and is rejected.
    """
    vals, vecs = eig_hermitian(m)
    if vals[-1] < -psd_tol:
        raise ValueError(
            f"matrix is not PSD: min eigenvalue {vals[-1]:.3e} below -{psd_tol:.1e}")
    root = np.sqrt(np.clip(vals, 0.0, None))
    r = (vecs * root) @ np.conj(vecs.T)
    return 0.5 * (r + np.conj(r.T))
