import numpy as np
import pytest

from corrqubits import XState


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def rand_hermitian(rng, scale=1.0):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return scale * (g + g.conj().T)


def rand_density(rng):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def rand_xstate(rng, psd=True):
    pops = rng.random(4) + 0.05
    pops = pops / pops.sum()
    a, b, c, d = pops
    if psd:
        z = (2 * rng.random() - 1) * np.sqrt(b * c)
        w = (2 * rng.random() - 1) * np.sqrt(a * d)
    else:
        z = 2 * rng.random() - 1
        w = 2 * rng.random() - 1
    return XState(float(a), float(b), float(c), float(d), float(z), float(w))


def x_projection(states):
    """(a, b, c, d, |z|, |w|) rows from a stack of 4x4 matrices."""
    out = np.empty((states.shape[0], 6))
    out[:, 0] = states[:, 0, 0].real
    out[:, 1] = states[:, 1, 1].real
    out[:, 2] = states[:, 2, 2].real
    out[:, 3] = states[:, 3, 3].real
    out[:, 4] = np.abs(states[:, 1, 2])
    out[:, 5] = np.abs(states[:, 0, 3])
    return out
