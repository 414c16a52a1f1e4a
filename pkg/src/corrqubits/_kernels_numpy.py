"""Pure-numpy implementations of the hot kernels.

This module is the fallback lane used when numba is unavailable or when
``CORRQUBITS_BACKEND=numpy`` is set; it is also the reference the numba lane
is cross-checked against.  The random-number scheme is counter based so that
every trajectory is reproducible in isolation:

    key_i = fin(seed + (i + 1) * GOLD)            per-trajectory substream
    r1    = fin(key_i + (2j + 1) * GOLD)          step j, first draw
    r2    = fin(key_i + (2j + 2) * GOLD)          step j, second draw

with ``fin`` the splitmix64 output permutation.  The pair (r1, r2) feeds a
Box-Muller transform; the resulting standard normals are colored by the
Cholesky factor of the increment covariance  [[2*ga, 2*G], [2*G, 2*gb]]*dt.

Each step applies the exact one-step unitary exp(-i(H dt + sx_A dWa + sx_B dWb)).
Because the A and B parts commute, the exponential factorizes into two 2x2
rotations, so single trajectories stay unitary to machine precision.
"""

from __future__ import annotations

import numpy as np

GOLD = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1
_TWO53_INV = 2.0 ** -53

_U = np.uint64


# ---------------------------------------------------------------------------
# splitmix64, three times: python ints (scalar API), numpy arrays (this lane)
# ---------------------------------------------------------------------------

def fin_py(x: int) -> int:
    """splitmix64 output permutation on a python int (mod 2^64)."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * MIX1) & _MASK
    z = ((z ^ (z >> 27)) * MIX2) & _MASK
    return z ^ (z >> 31)


def traj_key_py(seed: int, traj_index: int) -> int:
    return fin_py((seed + (traj_index + 1) * GOLD) & _MASK)


def normals_py(key: int, step: int) -> tuple[float, float]:
    """The two standard normals consumed by step `step` of one trajectory."""
    r1 = fin_py((key + (2 * step + 1) * GOLD) & _MASK)
    r2 = fin_py((key + (2 * step + 2) * GOLD) & _MASK)
    u1 = ((r1 >> 11) + 1) * _TWO53_INV
    u2 = (r2 >> 11) * _TWO53_INV
    rad = np.sqrt(-2.0 * np.log(u1))
    return rad * np.cos(2.0 * np.pi * u2), rad * np.sin(2.0 * np.pi * u2)


def _fin_np(x: np.ndarray) -> np.ndarray:
    z = x
    z = (z ^ (z >> _U(30))) * _U(MIX1)
    z = (z ^ (z >> _U(27))) * _U(MIX2)
    return z ^ (z >> _U(31))


def _traj_keys_np(seed: int, indices: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):  # mod-2^64 wrap is the point
        return _fin_np(_U(seed & _MASK) + (indices + _U(1)) * _U(GOLD))


def _normals_np(keys: np.ndarray, step: int) -> tuple[np.ndarray, np.ndarray]:
    with np.errstate(over="ignore"):
        j = _U(step)
        r1 = _fin_np(keys + (_U(2) * j + _U(1)) * _U(GOLD))
        r2 = _fin_np(keys + (_U(2) * j + _U(2)) * _U(GOLD))
    u1 = ((r1 >> _U(11)) + _U(1)).astype(np.float64) * _TWO53_INV
    u2 = (r2 >> _U(11)).astype(np.float64) * _TWO53_INV
    rad = np.sqrt(-2.0 * np.log(u1))
    ang = 2.0 * np.pi * u2
    return rad * np.cos(ang), rad * np.sin(ang)


def increment_cholesky(gamma_a: float, gamma_b: float, big_gamma: float,
                       dt: float) -> tuple[float, float, float]:
    """Lower Cholesky factor (l11, l21, l22) of [[2ga,2G],[2G,2gb]]*dt.

    The caller is responsible for rejecting non-PSD covariances; tiny negative
    remainders from roundoff are clamped.
    """
    v11 = 2.0 * gamma_a * dt
    v22 = 2.0 * gamma_b * dt
    v12 = 2.0 * big_gamma * dt
    l11 = np.sqrt(v11)
    l21 = v12 / l11 if l11 > 0.0 else 0.0
    l22 = np.sqrt(max(v22 - l21 * l21, 0.0))
    return float(l11), float(l21), float(l22)


# ---------------------------------------------------------------------------
# one-step 2x2 unitaries
# ---------------------------------------------------------------------------

def _qubit_unitaries(alpha: float, dw: np.ndarray):
    """exp(-i(alpha*sz + dw*sx)) entries for a batch of kicks dw (m,)."""
    theta = np.sqrt(alpha * alpha + dw * dw)
    snc = np.where(theta > 1e-300, np.sin(theta) / np.where(theta > 0, theta, 1.0), 1.0)
    ct = np.cos(theta)
    u00 = ct - 1j * snc * alpha
    u01 = -1j * snc * dw
    u11 = ct + 1j * snc * alpha
    return u00, u01, u11


def _batch_u2(alpha: float, dw: np.ndarray) -> np.ndarray:
    u00, u01, u11 = _qubit_unitaries(alpha, dw)
    m = dw.shape[0]
    u = np.empty((m, 2, 2), dtype=np.complex128)
    u[:, 0, 0] = u00
    u[:, 0, 1] = u01
    u[:, 1, 0] = u01
    u[:, 1, 1] = u11
    return u


# ---------------------------------------------------------------------------
# trajectory ensembles (chunked, deterministic accumulation)
# ---------------------------------------------------------------------------

def ensemble_chunk_sums_psi(seed, n_traj, chunk_size, psi0, gamma_a, gamma_b,
                            big_gamma, omega, dt, n_steps, stride, out):
    """Accumulate sum over trajectories of |psi><psi| at each snapshot.

    out: (n_chunks, n_snap, 4, 4) complex, pre-zeroed.  Chunk boundaries are a
    pure function of chunk_size, so the result is independent of how chunks
    are scheduled.
    """
    l11, l21, l22 = increment_cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    n_chunks = out.shape[0]
    for ci in range(n_chunks):
        lo = ci * chunk_size
        hi = min(lo + chunk_size, n_traj)
        m = hi - lo
        keys = _traj_keys_np(seed, np.arange(lo, hi, dtype=np.uint64))
        psi = np.tile(np.asarray(psi0, dtype=np.complex128), (m, 1)).reshape(m, 2, 2)
        v = psi.reshape(m, 4)
        out[ci, 0] += v.T @ v.conj()
        for j in range(n_steps):
            n1, n2 = _normals_np(keys, j)
            dwa = l11 * n1
            dwb = l21 * n1 + l22 * n2
            ua = _batch_u2(alpha, dwa)
            ub = _batch_u2(alpha, dwb)
            psi = ua @ psi @ np.transpose(ub, (0, 2, 1))
            if (j + 1) % stride == 0:
                v = psi.reshape(m, 4)
                out[ci, (j + 1) // stride] += v.T @ v.conj()


def ensemble_chunk_sums_rho(seed, n_traj, chunk_size, rho0, gamma_a, gamma_b,
                            big_gamma, omega, dt, n_steps, stride, out):
    """Same as the psi variant but conjugating a (possibly mixed) 4x4 state."""
    l11, l21, l22 = increment_cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    n_chunks = out.shape[0]
    for ci in range(n_chunks):
        lo = ci * chunk_size
        hi = min(lo + chunk_size, n_traj)
        m = hi - lo
        keys = _traj_keys_np(seed, np.arange(lo, hi, dtype=np.uint64))
        rho = np.tile(np.asarray(rho0, dtype=np.complex128), (m, 1, 1))
        out[ci, 0] += rho.sum(axis=0)
        for j in range(n_steps):
            n1, n2 = _normals_np(keys, j)
            dwa = l11 * n1
            dwb = l21 * n1 + l22 * n2
            ua = _batch_u2(alpha, dwa)
            ub = _batch_u2(alpha, dwb)
            u4 = np.einsum("mij,mkl->mikjl", ua, ub).reshape(m, 4, 4)
            rho = u4 @ rho @ np.conj(np.transpose(u4, (0, 2, 1)))
            if (j + 1) % stride == 0:
                out[ci, (j + 1) // stride] += rho.sum(axis=0)


def trajectory_states_psi(seed, traj_index, psi0, gamma_a, gamma_b, big_gamma,
                          omega, dt, n_steps, stride):
    """Record a single trajectory's state vector at every snapshot."""
    l11, l21, l22 = increment_cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    key = np.array([traj_key_py(seed, traj_index)], dtype=np.uint64)
    psi = np.asarray(psi0, dtype=np.complex128).reshape(1, 2, 2).copy()
    n_snap = n_steps // stride + 1
    states = np.empty((n_snap, 4), dtype=np.complex128)
    states[0] = psi.reshape(4)
    for j in range(n_steps):
        n1, n2 = _normals_np(key, j)
        dwa = l11 * n1
        dwb = l21 * n1 + l22 * n2
        ua = _batch_u2(alpha, dwa)
        ub = _batch_u2(alpha, dwb)
        psi = ua @ psi @ np.transpose(ub, (0, 2, 1))
        if (j + 1) % stride == 0:
            states[(j + 1) // stride] = psi.reshape(4)
    return states


def trajectory_states_rho(seed, traj_index, rho0, gamma_a, gamma_b, big_gamma,
                          omega, dt, n_steps, stride):
    l11, l21, l22 = increment_cholesky(gamma_a, gamma_b, big_gamma, dt)
    alpha = 0.5 * omega * dt
    key = np.array([traj_key_py(seed, traj_index)], dtype=np.uint64)
    rho = np.asarray(rho0, dtype=np.complex128).reshape(1, 4, 4).copy()
    n_snap = n_steps // stride + 1
    states = np.empty((n_snap, 4, 4), dtype=np.complex128)
    states[0] = rho[0]
    for j in range(n_steps):
        n1, n2 = _normals_np(key, j)
        dwa = l11 * n1
        dwb = l21 * n1 + l22 * n2
        ua = _batch_u2(alpha, dwa)
        ub = _batch_u2(alpha, dwb)
        u4 = np.einsum("mij,mkl->mikjl", ua, ub).reshape(1, 4, 4)
        rho = u4 @ rho @ np.conj(np.transpose(u4, (0, 2, 1)))
        if (j + 1) % stride == 0:
            states[(j + 1) // stride] = rho[0]
    return states


# ---------------------------------------------------------------------------
# RK4 on the full sigma_x generator
# ---------------------------------------------------------------------------

_PA = np.array([2, 3, 0, 1])  # sx on qubit A permutes basis 1<->3, 2<->4
_PB = np.array([1, 0, 3, 2])  # sx on qubit B
_PC = np.array([3, 2, 1, 0])  # sx_A sx_B


def generator_apply(rho, gamma_a, gamma_b, big_gamma, omega, k_cross):
    """d(rho)/dt for the sigma_x-coupling master equation.

    k_cross is the multiplier of big_gamma in the cross term (2 for the
    noise-calibrated generator, 4 for the doubled-cross variant).
    """
    h = np.array([omega, 0.0, 0.0, -omega])
    out = -1j * (h[:, None] - h[None, :]) * rho
    out -= 2.0 * gamma_a * (rho - rho[np.ix_(_PA, _PA)])
    out -= 2.0 * gamma_b * (rho - rho[np.ix_(_PB, _PB)])
    out -= k_cross * big_gamma * (rho[_PC, :] + rho[:, _PC]
                                  - rho[np.ix_(_PA, _PB)] - rho[np.ix_(_PB, _PA)])
    return out


def rk4_full_series(rho0, gamma_a, gamma_b, big_gamma, omega, k_cross, dt,
                    n_steps, stride):
    """Classical fixed-step RK4 on the 4x4 matrix ODE; snapshots every stride."""
    rho = np.asarray(rho0, dtype=np.complex128).copy()
    n_snap = n_steps // stride + 1
    states = np.empty((n_snap, 4, 4), dtype=np.complex128)
    states[0] = rho
    args = (gamma_a, gamma_b, big_gamma, omega, k_cross)
    for j in range(n_steps):
        k1 = generator_apply(rho, *args)
        k2 = generator_apply(rho + 0.5 * dt * k1, *args)
        k3 = generator_apply(rho + 0.5 * dt * k2, *args)
        k4 = generator_apply(rho + dt * k3, *args)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (j + 1) % stride == 0:
            states[(j + 1) // stride] = rho
    return states


# ---------------------------------------------------------------------------
# cyclic Jacobi eigensolver for 4x4 complex Hermitian matrices
# ---------------------------------------------------------------------------

def jacobi_eigh_core(a):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.

    Returns (values descending, vectors as columns).  Written against the
    numba-supported numpy subset so the accelerated lane can compile the same
    source.
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
                # R = [[c, s], [-s*conj(phi), c*conj(phi)]] on the (p, q) plane
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


jacobi_eigh = jacobi_eigh_core


def eigvals_hermitian_batch(mats):
    """Descending eigenvalues for a stack of Hermitian matrices (n, 4, 4)."""
    n = mats.shape[0]
    out = np.empty((n, mats.shape[1]), dtype=np.float64)
    for i in range(n):
        out[i], _ = jacobi_eigh(mats[i])
    return out
