import numpy as np
import pytest

from corrqubits import linalg
from corrqubits.linalg import (ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, eig_hermitian,
                               hermiticity_defect, kron, sqrt_psd)

from conftest import rand_hermitian


def test_kron_identity():
    assert np.array_equal(kron(ID2, ID2), np.eye(4))


def test_kron_sz_left_factor():
    assert np.allclose(kron(SIGMA_Z, ID2), np.diag([1, 1, -1, -1]))


def test_kron_sx_sx_antidiagonal():
    expected = np.zeros((4, 4))
    for i in range(4):
        expected[i, 3 - i] = 1.0
    assert np.allclose(kron(SIGMA_X, SIGMA_X), expected)


def test_kron_layout_convention():
    # (A x B)[2i+k, 2j+l] = A[i, j] * B[k, l]
    rng = np.random.default_rng(5)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = kron(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for ll in range(2):
                    assert m[2 * i + k, 2 * j + ll] == pytest.approx(a[i, j] * b[k, ll])


def test_kron_bilinear_and_mixed_product(rng):
    for _ in range(50):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                      for _ in range(4))
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12
        s = rng.normal()
        assert np.max(np.abs(kron(s * a + c, b) - s * kron(a, b) - kron(c, b))) <= 1e-12


def test_eig_diagonal():
    w, v = eig_hermitian(np.diag([3.0, 1.0, -1.0, 0.0]).astype(complex))
    assert np.allclose(w, [3.0, 1.0, 0.0, -1.0])
    assert np.max(np.abs(v.conj().T @ v - np.eye(4))) <= 1e-12


def test_eig_involution_spectrum():
    w, _ = eig_hermitian(kron(SIGMA_X, SIGMA_X))
    assert np.allclose(w, [1.0, 1.0, -1.0, -1.0], atol=1e-14)


def _char_poly_coeffs(m):
    """Faddeev-LeVerrier: coefficients of det(lambda I - M), no eigensolver."""
    n = m.shape[0]
    coeffs = [1.0]
    mk = np.zeros_like(m)
    ck = 1.0
    for k in range(1, n + 1):
        mk = m @ mk + ck * np.eye(n)
        ck = -np.trace(m @ mk).real / k
        coeffs.append(ck)
    return np.array(coeffs)  # p(x) = x^4 + c1 x^3 + c2 x^2 + c3 x + c4


def _roots_by_bisection(coeffs, radius):
    def p(x):
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    xs = np.linspace(-radius, radius, 20001)
    vals = np.array([p(x) for x in xs])
    roots = []
    for i in range(len(xs) - 1):
        if vals[i] == 0.0:
            roots.append(xs[i])
        elif vals[i] * vals[i + 1] < 0:
            lo, hi = xs[i], xs[i + 1]
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if p(lo) * p(mid) <= 0:
                    hi = mid
                else:
                    lo = mid
            roots.append(0.5 * (lo + hi))
    return np.array(sorted(roots, reverse=True))


def test_eig_matches_characteristic_polynomial_roots(rng):
    for _ in range(10):
        m = rand_hermitian(rng)
        w, _ = eig_hermitian(m)
        coeffs = _char_poly_coeffs(m)
        radius = float(np.max(np.sum(np.abs(m), axis=1))) + 1.0
        roots = _roots_by_bisection(coeffs, radius)
        assert len(roots) == 4
        assert np.max(np.abs(w - roots)) <= 1e-9


def test_eig_reconstruction_bulk(rng):
    worst = 0.0
    for _ in range(1000):
        m = rand_hermitian(rng)
        w, v = eig_hermitian(m)
        worst = max(worst, float(np.max(np.abs((v * w) @ v.conj().T - m))))
        assert np.all(np.diff(w) <= 1e-13)
    assert worst <= 1e-11


def test_eig_eigen_equation_and_orthonormality(rng):
    for _ in range(100):
        m = rand_hermitian(rng)
        w, v = eig_hermitian(m)
        scale = np.max(np.abs(w)) + 1e-30
        assert np.max(np.abs(m @ v - v * w)) <= 1e-12 * max(scale, 1.0)
        assert np.max(np.abs(v.conj().T @ v - np.eye(4))) <= 1e-12


def test_eig_rejects_non_hermitian():
    m = np.eye(4, dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(ValueError, match="Hermitian"):
        eig_hermitian(m)


def test_sqrt_psd_identity_and_diagonal():
    assert np.allclose(sqrt_psd(np.eye(4, dtype=complex)), np.eye(4))
    assert np.allclose(sqrt_psd(np.diag([4.0, 1.0, 0.0, 0.0]).astype(complex)),
                       np.diag([2.0, 1.0, 0.0, 0.0]))


def test_sqrt_psd_projector_fixed_point(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = v / np.linalg.norm(v)
    p = np.outer(v, v.conj())
    r = sqrt_psd(p)
    # zero modes reenter as sqrt(eps): P itself is only sqrt-roundoff close,
    # while the defining relation R @ R = P holds to full precision
    assert np.max(np.abs(r - p)) <= 1e-7
    assert np.max(np.abs(r @ r - p)) <= 1e-12


def test_sqrt_psd_bulk(rng):
    worst = 0.0
    for _ in range(1000):
        g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        m = g.conj().T @ g
        r = sqrt_psd(m)
        worst = max(worst, float(np.max(np.abs(r @ r - m))))
        assert hermiticity_defect(r) <= 1e-13
    assert worst <= 1e-10


def test_sqrt_psd_clamps_tiny_negative():
    m = np.diag([1.0, 1.0, 1.0, -5e-11]).astype(complex)
    r = sqrt_psd(m)
    assert np.all(np.isfinite(r))


def test_sqrt_psd_rejects_genuinely_negative():
    with pytest.raises(ValueError, match="not PSD"):
        sqrt_psd(np.diag([1.0, 1.0, 1.0, -1e-6]).astype(complex))


def test_hermiticity_defect_value():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0 + 1.0j
    m[1, 0] = 1.0 - 1.0j
    assert hermiticity_defect(m) == 0.0
    m[2, 3] = 0.5j
    assert hermiticity_defect(m) == pytest.approx(0.5)


def test_jacobi_degenerate_subspace(rng):
    # only the eigenvalue list and subspace projectors are contractual
    w, v = eig_hermitian(np.eye(4, dtype=complex) * 2.0)
    assert np.allclose(w, 2.0)
    assert np.max(np.abs(v.conj().T @ v - np.eye(4))) <= 1e-12


def test_jacobi_lanes_agree(rng):
    from corrqubits import _kernels_numpy
    try:
        from corrqubits import _kernels_numba
    except ImportError:
        pytest.skip("numba unavailable")
    for _ in range(100):
        m = np.ascontiguousarray(rand_hermitian(rng))
        wa, va = _kernels_numba.jacobi_eigh(m)
        wb, vb = _kernels_numpy.jacobi_eigh(m)
        assert np.max(np.abs(wa - wb)) <= 1e-13
        assert np.max(np.abs((va * wa) @ va.conj().T
                             - (vb * wb) @ vb.conj().T)) <= 1e-13
