"""
Three-particle scenarios: the entangled pair (particles 1, 2) from the entangler, a meter (particle 3),
and an interaction acting on particles 1 and 3.
"""
from dataclasses import dataclass, field

import numpy as np

from base.errors import DimensionMismatch, IdentityViolation, NonHermitianObservable
from entangler import ObservablePair, build_nonfactorable
from hilbert import (PAULI_X, PAULI_Z, TOL_IDENTITY, StateVector, as_matrix, embed_operator, expectation,
                     require_unitary, tensor)
from measurement import CNOT

__all__ = ['TripartiteScenario', 'qubit_meter_state', 'bell_source', 'qubit_scenario', 'correlation',
           'local_second_moment', 'qm_correlation_sum']


@dataclass(frozen=True, eq=False)
class TripartiteScenario:
    """
    psi123 = U13 (psi12 x phi3), with the interaction given as a matrix on (particle 1) x (particle 3)
    """
    source: object
    meter_state: StateVector
    interaction: np.ndarray
    psi123: StateVector = field(init=False)

    def __post_init__(self):
        interaction = np.array(require_unitary(self.interaction, 'U13'))
        n, m = self.source.dim, self.meter_state.dim
        if m != n:
            raise DimensionMismatch("The meter must match the system dimension {} to read out A, got {}".format(n, m))
        if interaction.shape[0] != n * m:
            raise DimensionMismatch("U13 of dim {} for particles of dims ({}, {})".format(interaction.shape[0], n, m))
        interaction.setflags(write=False)
        dims = (n, n, m)
        joint = tensor(self.source.psi12, StateVector((m,), self.meter_state.amplitudes))
        psi123 = embed_operator(interaction, (1, 3), dims) @ joint.amplitudes
        object.__setattr__(self, 'interaction', interaction)
        object.__setattr__(self, 'psi123', StateVector(dims, psi123))

    @property
    def dims(self):
        return self.psi123.dims


def qubit_meter_state(theta3):
    """cos(theta3)|+> + sin(theta3)|->"""
    return StateVector((2,), [np.cos(theta3), np.sin(theta3)])


def bell_source():
    """(|++> + |-->)/sqrt(2) from A = Z, B = X with V = I, so A' = Z and B' = X"""
    return build_nonfactorable(ObservablePair(PAULI_Z, PAULI_X))


def qubit_scenario(theta3, source=None):
    """Bell pair with particle 1 controlling a CNOT onto the meter qubit"""
    return TripartiteScenario(bell_source() if source is None else source, qubit_meter_state(theta3), CNOT)


def correlation(state, x, i, y, j):
    """E(X_i, Y_j) = <X_i (x) Y_j> with 1-based particle numbers"""
    if i == j:
        raise DimensionMismatch("A correlation needs two different particles, got {} twice".format(i))
    product = embed_operator(np.kron(as_matrix(x), as_matrix(y)), (i, j), state.dims)
    value = np.vdot(state.amplitudes, product @ state.amplitudes)
    if abs(value.imag) > TOL_IDENTITY:
        raise NonHermitianObservable("Correlation has imaginary part {:.3e}".format(value.imag))
    return float(value.real)


def local_second_moment(state, x, i):
    x = as_matrix(x)
    return expectation(state, embed_operator(x @ x, (i,), state.dims))


def qm_correlation_sum(theta3):
    """
    E(Z_2, Z_3) + E(X_1, X_2) of the qubit scenario by simulation, checked against cos(2 theta3) + sin(2 theta3)
    """
    state = qubit_scenario(theta3).psi123
    value = correlation(state, PAULI_Z, 2, PAULI_Z, 3) + correlation(state, PAULI_X, 1, PAULI_X, 2)
    expected = np.cos(2 * theta3) + np.sin(2 * theta3)
    if abs(value - expected) > TOL_IDENTITY:
        raise IdentityViolation("Simulated correlation sum {} differs from {} at theta3 = {}"
                                .format(value, expected, theta3))
    return value
