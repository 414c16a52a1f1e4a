#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the trajectory-ensemble kernel, the full-generator RK4 loop and the
Jacobi eigensolver on both lanes, reports wall times and the worst
disagreement between them.  The lanes share one RNG and one step rule, so the
outputs must agree to accumulation roundoff (~1e-12) independent of timing.

    python3 benchmarks/bench_backends.py [--n-traj 8000] [--steps 500]
"""

import argparse
import time

import numpy as np

from corrqubits import _kernels_numpy

try:
    from corrqubits import _kernels_numba
    HAS_NUMBA = True
except ImportError:
    _kernels_numba = None
    HAS_NUMBA = False


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_ensemble(n_traj, steps):
    psi0 = np.array([2 ** -0.5, 0, 0, 2 ** -0.5], dtype=complex)
    chunk = 256
    n_chunks = (n_traj + chunk - 1) // chunk
    n_snap = steps // 10 + 1
    args = (12345, n_traj, chunk, psi0, 1.0, 1.0, 0.5, 0.0, 1e-3, steps, 10)

    def run(impl):
        out = np.zeros((n_chunks, n_snap, 4, 4), dtype=np.complex128)
        impl.ensemble_chunk_sums_psi(*args, out)
        return out.sum(axis=0) / n_traj

    rows = []
    t_np, rho_np = timed(run, _kernels_numpy)
    rows.append(("numpy", t_np))
    if HAS_NUMBA:
        run(_kernels_numba)  # compile
        t_nb, rho_nb = timed(run, _kernels_numba)
        rows.append(("numba", t_nb))
        dev = float(np.max(np.abs(rho_nb - rho_np)))
    else:
        dev = float("nan")
    return rows, dev


def bench_rk4(steps):
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = rho0[3, 3] = rho0[0, 3] = rho0[3, 0] = 0.5
    args = (rho0, 1.0, 1.0, 0.5, 5.0, 2.0, 1e-4, steps, steps)
    rows = []
    t_np, s_np = timed(_kernels_numpy.rk4_full_series, *args)
    rows.append(("numpy", t_np))
    if HAS_NUMBA:
        _kernels_numba.rk4_full_series(*args)
        t_nb, s_nb = timed(_kernels_numba.rk4_full_series, *args)
        rows.append(("numba", t_nb))
        dev = float(np.max(np.abs(s_nb - s_np)))
    else:
        dev = float("nan")
    return rows, dev


def bench_jacobi(n_mats):
    rng = np.random.default_rng(0)
    mats = rng.normal(size=(n_mats, 4, 4)) + 1j * rng.normal(size=(n_mats, 4, 4))
    mats = mats + np.conj(np.transpose(mats, (0, 2, 1)))
    rows = []
    t_np, w_np = timed(_kernels_numpy.eigvals_hermitian_batch, mats, repeat=1)
    rows.append(("numpy", t_np))
    if HAS_NUMBA:
        _kernels_numba.eigvals_hermitian_batch(mats[:2])
        t_nb, w_nb = timed(_kernels_numba.eigvals_hermitian_batch, mats)
        rows.append(("numba", t_nb))
        dev = float(np.max(np.abs(w_nb - w_np)))
    else:
        dev = float("nan")
    return rows, dev


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-traj", type=int, default=8000)
    ap.add_argument("--steps", type=int, default=500)
    ap.add_argument("--rk4-steps", type=int, default=20000)
    ap.add_argument("--n-mats", type=int, default=5000)
    args = ap.parse_args()

    print(f"{'kernel':<22}{'lane':<8}{'best wall (s)':>14}")
    for name, (rows, dev) in (
        (f"ensemble {args.n_traj}x{args.steps}", bench_ensemble(args.n_traj, args.steps)),
        (f"rk4 full {args.rk4_steps}", bench_rk4(args.rk4_steps)),
        (f"jacobi {args.n_mats}x4x4", bench_jacobi(args.n_mats)),
    ):
        for lane, t in rows:
            print(f"{name:<22}{lane:<8}{t:>14.4f}")
        if len(rows) == 2:
            speedup = rows[0][1] / rows[1][1]
            print(f"{'':<22}{'':<8}  numba speedup {speedup:>6.1f}x, "
                  f"max |numba - numpy| = {dev:.2e}")
    if not HAS_NUMBA:
        print("numba unavailable: numpy lane only")


if __name__ == "__main__":
    main()
