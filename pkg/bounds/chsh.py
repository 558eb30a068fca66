"""
CHSH operators on particle pairs (2, 3) and (1, 2) of a three-qubit scenario, their MDR bound, and the
quantum monogamy relation <B23>^2 + <B12>^2 <= 8.
"""
from dataclasses import dataclass

import numpy as np

from base.errors import NotQubit
from bounds.scenario import correlation
from hilbert import PAULI_X, PAULI_Z, embed_operator, pauli_along, random_state_batch

__all__ = ['ChshSettings', 'ChshReport', 'chsh_bound', 'chsh_operators', 'chsh_pair_sum',
           'correlation_quadruple', 'monogamy_sample', 'MONOGAMY_LIMIT']

MONOGAMY_LIMIT = 8.0
_QUBITS = (2, 2, 2)


@dataclass(frozen=True)
class ChshSettings:
    """Directions in the z-x plane as (x, y, z) triples"""
    a: tuple = (0.0, 0.0, 1.0)
    b: tuple = (1.0, 0.0, 0.0)
    c: tuple = (1 / np.sqrt(2), 0.0, 1 / np.sqrt(2))
    d: tuple = (1 / np.sqrt(2), 0.0, -1 / np.sqrt(2))

    def __post_init__(self):
        for name in ('a', 'b', 'c', 'd'):
            norm = np.linalg.norm(getattr(self, name))
            if abs(norm - 1.0) > 1e-12:
                raise ValueError("Direction {} has norm {}".format(name, norm))

    def operators(self):
        return tuple(pauli_along(getattr(self, name)) for name in ('a', 'b', 'c', 'd'))


@dataclass(frozen=True)
class ChshReport:
    b23: float
    b12: float
    quadruple: float

    @property
    def total(self):
        return self.b23 + self.b12

    @property
    def square_sum(self):
        return self.b23 ** 2 + self.b12 ** 2


def chsh_bound(gamma):
    return 2.0 * np.sqrt(2.0) * (2.0 - gamma / 2.0)


def _pair(x, i, y, j):
    return embed_operator(np.kron(x, y), (i, j), _QUBITS)


def chsh_operators(settings=None):
    """
    B23 = a2 c3 - a2 d3 + b2 c3 + b2 d3 and B12 = b1 c2 + b1 d2 + a1 c2 - a1 d2 as 8x8 matrices
    """
    a, b, c, d = (settings or ChshSettings()).operators()
    b23 = _pair(a, 2, c, 3) - _pair(a, 2, d, 3) + _pair(b, 2, c, 3) + _pair(b, 2, d, 3)
    b12 = _pair(b, 1, c, 2) + _pair(b, 1, d, 2) + _pair(a, 1, c, 2) - _pair(a, 1, d, 2)
    return b23, b12


def correlation_quadruple(state):
    """E(Z2,Z3) + E(X1,X2) + E(X2,X3) + E(Z1,Z2)"""
    return (correlation(state, PAULI_Z, 2, PAULI_Z, 3) + correlation(state, PAULI_X, 1, PAULI_X, 2)
            + correlation(state, PAULI_X, 2, PAULI_X, 3) + correlation(state, PAULI_Z, 1, PAULI_Z, 2))


def chsh_pair_sum(scenario, settings=None):
    if tuple(scenario.dims) != _QUBITS:
        raise NotQubit("CHSH operators need three qubits, got dims {}".format(scenario.dims))
    psi = scenario.psi123.amplitudes
    b23, b12 = chsh_operators(settings)
    return ChshReport(b23=float(np.vdot(psi, b23 @ psi).real),
                      b12=float(np.vdot(psi, b12 @ psi).real),
                      quadruple=correlation_quadruple(scenario.psi123))


def monogamy_sample(count, seed, settings=None):
    """<B23>^2 + <B12>^2 for count random three-qubit states"""
    states = random_state_batch(count, 8, seed)
    b23, b12 = chsh_operators(settings)
    e23 = np.einsum('ka,ab,kb->k', states.conj(), b23, states).real
    e12 = np.einsum('ka,ab,kb->k', states.conj(), b12, states).real
    return e23 ** 2 + e12 ** 2
