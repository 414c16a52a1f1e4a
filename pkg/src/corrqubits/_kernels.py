"""Backend dispatch for the hot kernels.

The accelerated (numba) lane is the default when numba imports cleanly; set
``CORRQUBITS_BACKEND=numpy`` to force the pure-numpy fallback, or
``CORRQUBITS_BACKEND=numba`` to fail loudly if numba is missing.
"""

from __future__ import annotations

import os

from ._kernels_numpy import (  # noqa: F401  (shared, backend-independent)
    GOLD,
    fin_py,
    increment_cholesky,
    normals_py,
    traj_key_py,
)

_ENV_VAR = "CORRQUBITS_BACKEND"
_requested = os.environ.get(_ENV_VAR, "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"{_ENV_VAR}={_requested!r} not understood; use auto, numba or numpy")

_using_numba = False
if _requested in ("auto", "numba"):
    try:
        from . import _kernels_numba as _impl
        _using_numba = True
    except ImportError:
        if _requested == "numba":
            raise
        from . import _kernels_numpy as _impl
else:
    from . import _kernels_numpy as _impl


def active_backend() -> str:
    """Name of the kernel lane in use: 'numba' or 'numpy'."""
    return "numba" if _using_numba else "numpy"


ensemble_chunk_sums_psi = _impl.ensemble_chunk_sums_psi
ensemble_chunk_sums_rho = _impl.ensemble_chunk_sums_rho
trajectory_states_psi = _impl.trajectory_states_psi
trajectory_states_rho = _impl.trajectory_states_rho
rk4_full_series = _impl.rk4_full_series
jacobi_eigh = _impl.jacobi_eigh
eigvals_hermitian_batch = _impl.eigvals_hermitian_batch
