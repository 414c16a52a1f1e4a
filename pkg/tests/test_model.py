import numpy as np
import pytest

from corrqubits import (GeneratorConvention, NoiseParams, XState,
                        bell_phi_xstate, delta_z_matrix, kappa,
                        liouvillian_apply, liouvillian_apply_pm, secular_rhs,
                        validate)
from corrqubits.linalg import ID2, SIGMA_X, SIGMA_Z, hermiticity_defect, kron

from conftest import rand_hermitian, rand_xstate


def test_validate_maximal_correlation_is_physical():
    rep = validate(NoiseParams(1.0, 1.0, 1.0))
    assert rep.physical
    assert rep.covariance_psd
    assert rep.correlation_bound == pytest.approx(1.0)


def test_validate_super_unit_correlation_unphysical():
    rep = validate(NoiseParams(1.0, 1.0, 1.2))
    assert not rep.physical
    assert not rep.covariance_psd
    assert rep.min_covariance_eig < 0
    assert np.allclose(rep.covariance, [[2.0, 2.4], [2.4, 2.0]])


def test_validate_degenerate_covariance():
    rep = validate(NoiseParams(1.0, 0.0, 0.0))
    assert rep.physical
    assert rep.covariance_psd
    assert rep.min_covariance_eig == pytest.approx(0.0, abs=1e-14)


def test_negative_gamma_rejected():
    with pytest.raises(ValueError):
        NoiseParams(-1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        NoiseParams(1.0, -0.5, 0.0)


def test_liouvillian_maximally_mixed_stationary():
    p = NoiseParams(1.3, 0.7, 0.6, omega=2.0)
    out = liouvillian_apply(p, np.eye(4, dtype=complex) / 4)
    assert np.max(np.abs(out)) <= 1e-15
    assert np.max(np.abs(liouvillian_apply_pm(p, np.eye(4, dtype=complex) / 4))) <= 1e-15


def test_liouvillian_bell_phi_outer_coherence_rate():
    # d(rho14)/dt at t=0 equals -4*gamma*w for the corner Bell state
    p = NoiseParams(1.0, 1.0, 0.0)
    out = liouvillian_apply(p, bell_phi_xstate().to_matrix())
    assert out[0, 3] == pytest.approx(-2.0, abs=1e-14)


def test_liouvillian_traceless_hermitian(rng):
    for _ in range(100):
        rho = rand_hermitian(rng)
        p = NoiseParams(rng.random(), rng.random(), rng.random() - 0.3,
                        omega=3 * rng.random())
        for conv in GeneratorConvention:
            out = liouvillian_apply(p, rho, conv, herm_tol=1e9)
            assert abs(np.trace(out)) <= 1e-13
            assert hermiticity_defect(out) <= 1e-13


def test_liouvillian_rejects_non_hermitian():
    m = np.eye(4, dtype=complex)
    m[0, 1] = 1e-3
    with pytest.raises(ValueError, match="Hermitian"):
        liouvillian_apply(NoiseParams(1, 1, 0), m)


def test_pm_form_equals_sigma_x_form(rng):
    for _ in range(200):
        rho = rand_hermitian(rng)
        p = NoiseParams(rng.random(), rng.random(), rng.random() - 0.4,
                        omega=2 * rng.random())
        lhs = liouvillian_apply_pm(p, rho, herm_tol=1e9)
        rhs = liouvillian_apply(p, rho, GeneratorConvention.CALIBRATED,
                                herm_tol=1e9)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_pm_form_bell_phi_no_cross_terms():
    p = NoiseParams(1.0, 1.0, 0.0)
    rho = bell_phi_xstate().to_matrix()
    assert np.max(np.abs(liouvillian_apply_pm(p, rho)
                         - liouvillian_apply(p, rho))) <= 1e-14


def test_pm_without_counter_rotating_is_the_secular_generator(rng):
    # dropping the ++/-- products leaves exactly the reduced X-sector system
    for _ in range(50):
        x = rand_xstate(rng)
        x = XState(x.a, x.b, x.c, x.d, x.z, 0.0)
        g, big_g = 1.0 + rng.random(), rng.random()
        p = NoiseParams(g, g, big_g)
        lhs = liouvillian_apply_pm(p, x.to_matrix(), counter_rotating=False)
        rhs = secular_rhs(x, g, big_g)
        vec = np.array([lhs[0, 0].real, lhs[1, 1].real, lhs[2, 2].real,
                        lhs[3, 3].real, lhs[1, 2].real, lhs[0, 3].real])
        assert np.max(np.abs(vec - rhs)) <= 1e-12
        # and differs from the complete generator on w-carrying states
    phi = bell_phi_xstate().to_matrix()
    p = NoiseParams(1.0, 1.0, 0.0)
    rwa = liouvillian_apply_pm(p, phi, counter_rotating=False)
    full = liouvillian_apply(p, phi)
    assert np.max(np.abs(rwa - full)) > 1.0  # the z<->w coupling is missing


def test_secular_rhs_stationary_mixed():
    assert np.allclose(secular_rhs([0.25, 0.25, 0.25, 0.25, 0.0, 0.0], 1.0, 0.7),
                       0.0)


def test_secular_rhs_bell_phi_rates():
    deriv = secular_rhs(bell_phi_xstate(), 1.0, 0.5)
    assert deriv[4] == pytest.approx(1.0)
    assert deriv[5] == pytest.approx(-2.0)


def test_secular_rhs_traceless(rng):
    for _ in range(50):
        x = rand_xstate(rng, psd=False)
        deriv = secular_rhs(x, 0.8, 0.3)
        assert abs(deriv[:4].sum()) <= 1e-14


def test_delta_z_eigenvalues_are_minus_six_gamma_pm_kappa(rng):
    for _ in range(100):
        g = 0.1 + 3 * rng.random()
        big_g = g * rng.random()
        ev = np.sort(np.linalg.eigvals(delta_z_matrix(g, big_g)).real)
        k = kappa(g, big_g)
        assert abs(ev[0] - (-6 * g - k)) <= 1e-10
        assert abs(ev[1] - (-6 * g + k)) <= 1e-10


def _single_qubit_generator(rho1, gamma, omega):
    h = 0.5 * omega * SIGMA_Z
    return (-1j * (h @ rho1 - rho1 @ h)
            - 2.0 * gamma * (rho1 - SIGMA_X @ rho1 @ SIGMA_X))


def test_uncorrelated_generator_is_sum_of_single_qubit_parts(rng):
    # tensor-structured oracle: apply the 2x2 generator to each factor index
    for _ in range(50):
        rho = rand_hermitian(rng)
        g_a, g_b, om = rng.random(), rng.random(), 2 * rng.random()
        p = NoiseParams(g_a, g_b, 0.0, omega=om)
        got = liouvillian_apply(p, rho, herm_tol=1e9)
        t = rho.reshape(2, 2, 2, 2)
        la = np.zeros_like(t)
        lb = np.zeros_like(t)
        for k in range(2):
            for ll in range(2):
                la[:, k, :, ll] += _single_qubit_generator(t[:, k, :, ll], g_a, om)
                lb[k, :, ll, :] += _single_qubit_generator(t[k, :, ll, :], g_b, om)
        oracle = (la + lb).reshape(4, 4)
        assert np.max(np.abs(got - oracle)) <= 1e-12


def test_conventions_differ_and_only_calibrated_matches_reduced_system(rng):
    g, big_g = 1.0, 0.5
    p = NoiseParams(g, g, big_g)
    for _ in range(20):
        x = rand_xstate(rng)
        x = XState(x.a, x.b, x.c, x.d, x.z, 0.0)
        rho = x.to_matrix()
        cal = liouvillian_apply(p, rho, GeneratorConvention.CALIBRATED)
        dbl = liouvillian_apply(p, rho, GeneratorConvention.DOUBLED_CROSS)
        ref = secular_rhs(x, g, big_g)
        vec_cal = np.array([cal[0, 0].real, cal[1, 1].real, cal[2, 2].real,
                            cal[3, 3].real, cal[1, 2].real])
        vec_dbl = np.array([dbl[0, 0].real, dbl[1, 1].real, dbl[2, 2].real,
                            dbl[3, 3].real, dbl[1, 2].real])
        assert np.max(np.abs(vec_cal - ref[:5])) <= 1e-13
        if abs(x.z) > 1e-3 or abs(x.a - x.b - x.c + x.d) > 1e-3:
            assert np.max(np.abs(vec_dbl - ref[:5])) > 1e-4


def test_doubled_cross_is_not_completely_positive():
    # Choi matrix of the short-time map: PSD for the calibrated generator,
    # genuinely negative for the doubled-cross variant at big_gamma = gamma
    from scipy.linalg import expm

    def superop(conv):
        p = NoiseParams(1.0, 1.0, 1.0)
        s = np.zeros((16, 16), dtype=complex)
        for i in range(4):
            for j in range(4):
                e = np.zeros((4, 4), dtype=complex)
                e[i, j] = 1.0
                s[:, 4 * i + j] = liouvillian_apply(p, e, conv, herm_tol=1e9).reshape(-1)
        return s

    for conv, expect_cp in ((GeneratorConvention.CALIBRATED, True),
                            (GeneratorConvention.DOUBLED_CROSS, False)):
        prop = expm(superop(conv) * 0.01)
        choi = np.zeros((16, 16), dtype=complex)
        for i in range(4):
            for j in range(4):
                e = np.zeros((4, 4), dtype=complex)
                e[i, j] = 1.0
                choi[4 * i:4 * i + 4, 4 * j:4 * j + 4] = \
                    (prop @ e.reshape(-1)).reshape(4, 4)
        min_eig = np.linalg.eigvalsh(0.5 * (choi + choi.conj().T)).min()
        if expect_cp:
            assert min_eig >= -1e-10
        else:
            assert min_eig < -1e-3


def test_covariance_matrix_contents():
    p = NoiseParams(1.5, 0.5, 0.4)
    assert np.allclose(p.covariance(), [[3.0, 0.8], [0.8, 1.0]])
    assert kron(ID2, ID2).shape == (4, 4)
