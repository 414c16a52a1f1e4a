"""numba-accelerated hot kernels.

Same contracts and the same counter-based RNG as `_kernels_numpy`; the scalar
step math is written out explicitly so numba compiles tight loops.  Chunk
partial sums land in per-chunk output slots, which keeps the ensemble average
bit-identical for any number of threads.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from ._kernels_numpy import GOLD, MIX1, MIX2

_GOLD = np.uint64(GOLD)
_MIX1 = np.uint64(MIX1)
_MIX2 = np.uint64(MIX2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_TWO53_INV = 2.0 ** -53
_TWO_PI = 2.0 * math.pi

_PA = np.array([2, 3, 0, 1], dtype=np.int64)
_PB = np.array([1, 0, 3, 2], dtype=np.int64)
_PC = np.array([3, 2, 1, 0], dtype=np.int64)
_H4 = np.array([1.0, 0.0, 0.0, -1.0])


@njit(cache=True, inline="always")
def _fin(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, inline="always")
def _normals(key, j_u):
    rr1 = _fin(key + (_TWO * j_u + _ONE) * _GOLD)
    rr2 = _fin(key + (_TWO * j_u + _TWO) * _GOLD)
    u1 = ((rr1 >> _S11) + _ONE) * _TWO53_INV
    u2 = (rr2 >> _S11) * _TWO53_INV
    rad = math.sqrt(-2.0 * math.log(u1))
    ang = _TWO_PI * u2
    return rad * math.cos(ang), rad * math.sin(ang)


@njit(cache=True, inline="always")
def _u2_entries(alpha, dw):
    theta = math.sqrt(alpha * alpha + dw * dw)
    if theta > 0.0:
        snc = math.sin(theta) / theta
    else:
        snc = 1.0
    ct = math.cos(theta)
    u00 = complex(ct, -snc * alpha)
    u01 = complex(0.0, -snc * dw)
    u11 = complex(ct, snc * alpha)
    return u00, u01, u11


@njit(cache=True, inline="always")
def _cholesky(gamma_a, gamma_b, big_gamma, dt):
    v11 = 2.0 * gamma_a * dt
    v22 = 2.0 * gamma_b * dt
    v12 = 2.0 * big_gamma * dt
    l11 = math.sqrt(v11)
    l21 = v12 / l11 if l11 > 0.0 else 0.0
    rem = v22 - l21 * l21
    l22 = math.sqrt(rem) if rem > 0.0 else 0.0
    return l11, l21, l22


@njit(cache=True, parallel=True)
def ensemble_chunk_sums_psi(seed, n_traj, chunk_size, psi0, gamma_a, gamma_b,
                            big_gamma, omega, dt, n_steps, stride, out):
    l11, l21, l22 = _cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    seed_u = np.uint64(seed)
    n_chunks = out.shape[0]
    for ci in prange(n_chunks):
        lo = ci * chunk_size
        hi = min(lo + chunk_size, n_traj)
        ps = np.empty(4, dtype=np.complex128)
        for ti in range(lo, hi):
            key = _fin(seed_u + (np.uint64(ti) + _ONE) * _GOLD)
            for m in range(4):
                ps[m] = psi0[m]
            for m in range(4):
                for n in range(4):
                    out[ci, 0, m, n] += ps[m] * ps[n].conjugate()
            for j in range(n_steps):
                n1, n2 = _normals(key, np.uint64(j))
                dwa = l11 * n1
                dwb = l21 * n1 + l22 * n2
                a00, a01, a11 = _u2_entries(alpha, dwa)
                b00, b01, b11 = _u2_entries(alpha, dwb)
                q00 = ps[0]
                q01 = ps[1]
                q10 = ps[2]
                q11 = ps[3]
                r0 = b00 * q00 + b01 * q01
                r1 = b01 * q00 + b11 * q01
                s0 = b00 * q10 + b01 * q11
                s1 = b01 * q10 + b11 * q11
                ps[0] = a00 * r0 + a01 * s0
                ps[1] = a00 * r1 + a01 * s1
                ps[2] = a01 * r0 + a11 * s0
                ps[3] = a01 * r1 + a11 * s1
                if (j + 1) % stride == 0:
                    si = (j + 1) // stride
                    for m in range(4):
                        for n in range(4):
                            out[ci, si, m, n] += ps[m] * ps[n].conjugate()


@njit(cache=True, parallel=True)
def ensemble_chunk_sums_rho(seed, n_traj, chunk_size, rho0, gamma_a, gamma_b,
                            big_gamma, omega, dt, n_steps, stride, out):
    l11, l21, l22 = _cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    seed_u = np.uint64(seed)
    n_chunks = out.shape[0]
    for ci in prange(n_chunks):
        lo = ci * chunk_size
        hi = min(lo + chunk_size, n_traj)
        rho = np.empty((4, 4), dtype=np.complex128)
        u4 = np.empty((4, 4), dtype=np.complex128)
        tmp = np.empty((4, 4), dtype=np.complex128)
        ua = np.empty((2, 2), dtype=np.complex128)
        ub = np.empty((2, 2), dtype=np.complex128)
        for ti in range(lo, hi):
            key = _fin(seed_u + (np.uint64(ti) + _ONE) * _GOLD)
            for m in range(4):
                for n in range(4):
                    rho[m, n] = rho0[m, n]
                    out[ci, 0, m, n] += rho0[m, n]
            for j in range(n_steps):
                n1, n2 = _normals(key, np.uint64(j))
                dwa = l11 * n1
                dwb = l21 * n1 + l22 * n2
                a00, a01, a11 = _u2_entries(alpha, dwa)
                b00, b01, b11 = _u2_entries(alpha, dwb)
                ua[0, 0] = a00
                ua[0, 1] = a01
                ua[1, 0] = a01
                ua[1, 1] = a11
                ub[0, 0] = b00
                ub[0, 1] = b01
                ub[1, 0] = b01
                ub[1, 1] = b11
                for i2 in range(2):
                    for j2 in range(2):
                        for k2 in range(2):
                            for l2 in range(2):
                                u4[2 * i2 + k2, 2 * j2 + l2] = ua[i2, j2] * ub[k2, l2]
                for m in range(4):
                    for n in range(4):
                        acc = 0.0 + 0.0j
                        for k in range(4):
                            acc += u4[m, k] * rho[k, n]
                        tmp[m, n] = acc
                for m in range(4):
                    for n in range(4):
                        acc = 0.0 + 0.0j
                        for k in range(4):
                            acc += tmp[m, k] * u4[n, k].conjugate()
                        rho[m, n] = acc
                if (j + 1) % stride == 0:
                    si = (j + 1) // stride
                    for m in range(4):
                        for n in range(4):
                            out[ci, si, m, n] += rho[m, n]


@njit(cache=True)
def trajectory_states_psi(seed, traj_index, psi0, gamma_a, gamma_b, big_gamma,
                          omega, dt, n_steps, stride):
    l11, l21, l22 = _cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    key = _fin(np.uint64(seed) + (np.uint64(traj_index) + _ONE) * _GOLD)
    n_snap = n_steps // stride + 1
    states = np.empty((n_snap, 4), dtype=np.complex128)
    ps = np.empty(4, dtype=np.complex128)
    for m in range(4):
        ps[m] = psi0[m]
        states[0, m] = psi0[m]
    for j in range(n_steps):
        n1, n2 = _normals(key, np.uint64(j))
        dwa = l11 * n1
        dwb = l21 * n1 + l22 * n2
        a00, a01, a11 = _u2_entries(alpha, dwa)
        b00, b01, b11 = _u2_entries(alpha, dwb)
        q00 = ps[0]
        q01 = ps[1]
        q10 = ps[2]
        q11 = ps[3]
        r0 = b00 * q00 + b01 * q01
        r1 = b01 * q00 + b11 * q01
        s0 = b00 * q10 + b01 * q11
        s1 = b01 * q10 + b11 * q11
        ps[0] = a00 * r0 + a01 * s0
        ps[1] = a00 * r1 + a01 * s1
        ps[2] = a01 * r0 + a11 * s0
        ps[3] = a01 * r1 + a11 * s1
        if (j + 1) % stride == 0:
            for m in range(4):
                states[(j + 1) // stride, m] = ps[m]
    return states


def trajectory_states_rho(seed, traj_index, rho0, gamma_a, gamma_b, big_gamma,
                          omega, dt, n_steps, stride):
    # single-trajectory density path is cheap enough to share the numpy code
    from . import _kernels_numpy
    return _kernels_numpy.trajectory_states_rho(
        seed, traj_index, rho0, gamma_a, gamma_b, big_gamma, omega, dt,
        n_steps, stride)


@njit(cache=True, inline="always")
def _rhs_full(rho, out, gamma_a, gamma_b, k_big_gamma, omega):
    for i in range(4):
        for j in range(4):
            val = -1j * (omega * (_H4[i] - _H4[j])) * rho[i, j]
            val -= 2.0 * gamma_a * (rho[i, j] - rho[_PA[i], _PA[j]])
            val -= 2.0 * gamma_b * (rho[i, j] - rho[_PB[i], _PB[j]])
            val -= k_big_gamma * (rho[_PC[i], j] + rho[i, _PC[j]]
                                  - rho[_PA[i], _PB[j]] - rho[_PB[i], _PA[j]])
            out[i, j] = val


@njit(cache=True)
def rk4_full_series(rho0, gamma_a, gamma_b, big_gamma, omega, k_cross, dt,
                    n_steps, stride):
    kG = k_cross * big_gamma
    n_snap = n_steps // stride + 1
    states = np.empty((n_snap, 4, 4), dtype=np.complex128)
    rho = rho0.copy()
    y = np.empty((4, 4), dtype=np.complex128)
    k1 = np.empty((4, 4), dtype=np.complex128)
    k2 = np.empty((4, 4), dtype=np.complex128)
    k3 = np.empty((4, 4), dtype=np.complex128)
    k4 = np.empty((4, 4), dtype=np.complex128)
    for m in range(4):
        for n in range(4):
            states[0, m, n] = rho[m, n]
    for j in range(n_steps):
        _rhs_full(rho, k1, gamma_a, gamma_b, kG, omega)
        for m in range(4):
            for n in range(4):
                y[m, n] = rho[m, n] + 0.5 * dt * k1[m, n]
        _rhs_full(y, k2, gamma_a, gamma_b, kG, omega)
        for m in range(4):
            for n in range(4):
                y[m, n] = rho[m, n] + 0.5 * dt * k2[m, n]
        _rhs_full(y, k3, gamma_a, gamma_b, kG, omega)
        for m in range(4):
            for n in range(4):
                y[m, n] = rho[m, n] + dt * k3[m, n]
        _rhs_full(y, k4, gamma_a, gamma_b, kG, omega)
        for m in range(4):
            for n in range(4):
                rho[m, n] = rho[m, n] + (dt / 6.0) * (
                    k1[m, n] + 2.0 * k2[m, n] + 2.0 * k3[m, n] + k4[m, n])
        if (j + 1) % stride == 0:
            si = (j + 1) // stride
            for m in range(4):
                for n in range(4):
                    states[si, m, n] = rho[m, n]
    return states


@njit(cache=True)
def jacobi_eigh(a):
    """Cyclic-Jacobi eigendecomposition of a complex Hermitian matrix.

    Same rotation scheme as `_kernels_numpy.jacobi_eigh_core`; defined here
    (rather than njit-wrapping the fallback source) so numba's on-disk cache
    is keyed to this file and survives edits of the fallback module.
    """
    n = a.shape[0]
    a = a.copy()
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0 + 0.0j
    scale = 0.0
    for i in range(n):
        for j in range(n):
            m = abs(a[i, j])
            if m > scale:
                scale = m
    if scale == 0.0:
        scale = 1.0
    for _ in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                m = abs(a[p, q])
                if m > off:
                    off = m
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                ab = abs(apq)
                if ab <= 1e-18 * scale:
                    continue
                phi = apq / ab
                alpha = a[p, p].real
                delta = a[q, q].real
                tau = (delta - alpha) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rqp = -s * np.conj(phi)
                rqq = c * np.conj(phi)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * c + akq * rqp
                    a[k, q] = akp * s + akq * rqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk + np.conj(rqp) * aqk
                    a[q, k] = s * apk + np.conj(rqq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * c + vkq * rqp
                    v[k, q] = vkp * s + vkq * rqq
    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    order = np.argsort(-w)
    w_sorted = np.empty(n, dtype=np.float64)
    v_sorted = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        w_sorted[i] = w[order[i]]
        for k in range(n):
            v_sorted[k, i] = v[k, order[i]]
    return w_sorted, v_sorted


@njit(cache=True)
def _eigvals_batch_impl(mats, out):
    for i in range(mats.shape[0]):
        w, _ = jacobi_eigh(mats[i])
        for k in range(mats.shape[1]):
            out[i, k] = w[k]


def eigvals_hermitian_batch(mats):
    out = np.empty((mats.shape[0], mats.shape[1]), dtype=np.float64)
    _eigvals_batch_impl(np.ascontiguousarray(mats), out)
    return out
