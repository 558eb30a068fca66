"""
Seeded samplers. Every function derives its own generator from the seed, so draws are reproducible
and independent of call order.
"""
from math import prod

import numpy as np
from scipy.stats import unitary_group

from hilbert.states import StateVector

__all__ = ['make_rng', 'random_state', 'random_state_batch', 'random_hermitian', 'random_unitary']

_SEED_MASK = (1 << 64) - 1


def make_rng(seed):
    return np.random.default_rng(int(seed) & _SEED_MASK)


def _complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_state(dims, seed):
    dims = tuple(np.atleast_1d(dims))
    amplitudes = _complex_gaussian(make_rng(seed), prod(dims))
    return StateVector(dims, amplitudes / np.linalg.norm(amplitudes))


def random_state_batch(count, dim, seed):
    """count normalized amplitude rows of length dim"""
    amplitudes = _complex_gaussian(make_rng(seed), (count, dim))
    return amplitudes / np.linalg.norm(amplitudes, axis=1, keepdims=True)


def random_hermitian(dim, seed):
    g = _complex_gaussian(make_rng(seed), (dim, dim))
    return (g + g.conj().T) / 2


def random_unitary(dim, seed):
    # Haar distributed
    return unitary_group.rvs(dim, random_state=make_rng(seed))
