"""
Largest quantum value of E(Z2,Z3) + E(X1,X2) over three-qubit pure states.

Splitting the amplitudes a_1..a_8 (|+++>, |++->, ..., |--->) into r1 = (a1, a4, a5, a8) and
r2 = (a7, a6, a3, a2) gives |r1|^2 - |r2|^2 + 2 Re(r1* . r2), i.e. cos(2 theta) + sin(2 theta) cos(phi)
with |r1| = cos(theta), |r2| = sin(theta), whose maximum sqrt(2) sits at theta = pi/8, phi = 0.
"""
import logging

import numpy as np
import torch

from global_config import SEED
from hilbert import PAULI_X, PAULI_Z, StateVector, embed_operator

__all__ = ['correlation_operator', 'reduced_correlation_form', 'reduced_form_grid_max', 'correlation_split',
           'ascend_restarts', 'max_corr_search']

logger = logging.getLogger(__name__)

_R1 = [0, 3, 4, 7]
_R2 = [6, 5, 2, 1]


def correlation_operator():
    dims = (2, 2, 2)
    return (embed_operator(np.kron(PAULI_Z, PAULI_Z), (2, 3), dims)
            + embed_operator(np.kron(PAULI_X, PAULI_X), (1, 2), dims)).real


def reduced_correlation_form(theta, phi):
    return np.cos(2 * theta) + np.sin(2 * theta) * np.cos(phi)


def reduced_form_grid_max(n=801):
    """Maximum of the reduced form on theta in [0, pi/2] x phi in [0, 2 pi) with n points per axis"""
    theta = np.linspace(0.0, np.pi / 2, n)
    phi = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return float(np.max(reduced_correlation_form(theta[:, None], phi[None, :])))


def correlation_split(amplitudes):
    """(r1, r2, |r1|^2 - |r2|^2 + 2 Re(r1* . r2)) of a normalized three-qubit amplitude vector"""
    a = np.asarray(amplitudes, dtype=complex)
    r1, r2 = a[_R1], a[_R2]
    value = np.vdot(r1, r1).real - np.vdot(r2, r2).real + 2 * np.vdot(r1, r2).real
    return r1, r2, float(value)


def ascend_restarts(restarts, seed, max_iter=200):
    """
    Local ascent of the Rayleigh quotient from `restarts` random starts, all optimized as one batch.

    :return: per-restart values and the (restarts, 8) complex amplitudes
    """
    assert restarts >= 1, "at least one restart is required"
    generator = torch.Generator().manual_seed(int(seed) & 0x7FFF_FFFF_FFFF_FFFF)
    operator = torch.as_tensor(correlation_operator(), dtype=torch.float64)
    params = torch.randn(restarts, 16, generator=generator, dtype=torch.float64).requires_grad_()
    optimizer = torch.optim.LBFGS([params], lr=1.0, max_iter=max_iter, tolerance_grad=1e-12,
                                  tolerance_change=1e-15, history_size=20, line_search_fn='strong_wolfe')

    def values():
        re, im = params[:, :8], params[:, 8:]
        # operator is real symmetric, so <a|O|a> = re.O.re + im.O.im
        num = torch.einsum('ka,ab,kb->k', re, operator, re) + torch.einsum('ka,ab,kb->k', im, operator, im)
        return num / (re.pow(2).sum(dim=1) + im.pow(2).sum(dim=1))

    def closure():
        optimizer.zero_grad()
        loss = -values().sum()
        loss.backward()
        return loss

    optimizer.step(closure)
    with torch.no_grad():
        found = values().numpy().copy()
        raw = params.detach().numpy()
    amplitudes = raw[:, :8] + 1j * raw[:, 8:]
    amplitudes /= np.linalg.norm(amplitudes, axis=1, keepdims=True)
    logger.debug("ascent over %d restarts: best %.12f worst %.12f", restarts, found.max(), found.min())
    return found, amplitudes


def max_corr_search(restarts=50, seed=SEED):
    """
    :return: best value and its three-qubit state
    """
    found, amplitudes = ascend_restarts(restarts, seed)
    best = int(np.argmax(found))
    state = StateVector((2, 2, 2), amplitudes[best])
    _, _, value = correlation_split(state.amplitudes)
    return value, state
